//! Stolz angles, their dual arcs on the circle, and exact arc-union measure.
//!
//! For a point `z` in the disk and an aperture `α`, the set of vertices
//! `e^{iθ}` whose Stolz angle contains `z` is an open arc `I_z` centered at
//! `z/|z|`. Everything here is computed from the one inequality
//! `|e^{iθ} - z| < (1 + α)(1 - |z|)`, so point-side and arc-side tests agree.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reduce an angle to `[0, 2π)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Signed angular offset `theta - center` reduced to `(-π, π]`.
pub fn angular_offset(theta: f64, center: f64) -> f64 {
    let d = (theta - center).rem_euclid(TAU);
    if d > PI {
        d - TAU
    } else {
        d
    }
}

#[derive(Debug, Deserialize)]
struct RawPoint {
    re: f64,
    im: f64,
}

/// A point of the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPoint")]
pub struct DiskPoint {
    re: f64,
    im: f64,
}

impl TryFrom<RawPoint> for DiskPoint {
    type Error = Error;

    fn try_from(raw: RawPoint) -> Result<Self> {
        DiskPoint::new(raw.re, raw.im)
    }
}

impl DiskPoint {
    pub const ORIGIN: DiskPoint = DiskPoint { re: 0.0, im: 0.0 };

    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !(re.is_finite() && im.is_finite()) || re.hypot(im) >= 1.0 {
            return Err(Error::OutsideDisk { re, im });
        }
        Ok(DiskPoint { re, im })
    }

    pub fn from_polar(radius: f64, angle: f64) -> Result<Self> {
        let (s, c) = angle.sin_cos();
        DiskPoint::new(radius * c, radius * s)
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        DiskPoint::new(z.re, z.im)
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn modulus(&self) -> f64 {
        self.re.hypot(self.im)
    }

    /// Argument in `[0, 2π)`; zero for the origin.
    pub fn argument(&self) -> f64 {
        normalize_angle(self.im.atan2(self.re))
    }

    /// Distance to the boundary, `1 - |z|`.
    pub fn depth(&self) -> f64 {
        1.0 - self.modulus()
    }

    /// The weight `1 - |z|²` that the point carries in the measure `μ`.
    pub fn weight(&self) -> f64 {
        let r = self.modulus();
        (1.0 - r) * (1.0 + r)
    }
}

/// Aperture `α > 0` of the Stolz angles `Γ_α`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Aperture(f64);

impl Aperture {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && alpha > 0.0 {
            Ok(Aperture(alpha))
        } else {
            Err(Error::InvalidAperture(alpha))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Aperture {
    type Error = Error;

    fn try_from(alpha: f64) -> Result<Self> {
        Aperture::new(alpha)
    }
}

impl From<Aperture> for f64 {
    fn from(a: Aperture) -> f64 {
        a.0
    }
}

#[derive(Debug, Deserialize)]
struct RawArc {
    center: f64,
    half_width: f64,
}

/// An arc of the unit circle. `half_width = π` is the whole circle and
/// `half_width = 0` the empty arc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawArc")]
pub struct Arc {
    center: f64,
    half_width: f64,
}

impl TryFrom<RawArc> for Arc {
    type Error = Error;

    fn try_from(raw: RawArc) -> Result<Self> {
        Arc::new(raw.center, raw.half_width)
    }
}

impl Arc {
    pub fn new(center: f64, half_width: f64) -> Result<Self> {
        if !center.is_finite() || !half_width.is_finite() {
            return Err(Error::InvalidArc(format!(
                "non-finite arc ({center}, {half_width})"
            )));
        }
        if !(0.0..=PI).contains(&half_width) {
            return Err(Error::InvalidArc(format!(
                "half width {half_width} outside [0, pi]"
            )));
        }
        Ok(Arc {
            center: normalize_angle(center),
            half_width,
        })
    }

    /// The arc running counterclockwise from `start` to `end`. Lengths are
    /// clamped to `[0, 2π]`.
    pub fn from_endpoints(start: f64, end: f64) -> Result<Self> {
        let len = (end - start).clamp(0.0, TAU);
        Arc::new(start + 0.5 * len, 0.5 * len)
    }

    pub fn full() -> Self {
        Arc {
            center: 0.0,
            half_width: PI,
        }
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn start(&self) -> f64 {
        self.center - self.half_width
    }

    pub fn end(&self) -> f64 {
        self.center + self.half_width
    }

    pub fn measure(&self) -> f64 {
        2.0 * self.half_width
    }

    pub fn is_full(&self) -> bool {
        self.half_width >= PI
    }

    pub fn is_empty(&self) -> bool {
        self.half_width <= 0.0
    }

    /// Membership in the open arc.
    pub fn contains(&self, theta: f64) -> bool {
        if self.is_full() {
            return true;
        }
        angular_offset(theta, self.center).abs() < self.half_width
    }

    /// The arc as at most two intervals of `[0, 2π]`, sorted by start.
    pub fn intervals(&self) -> Vec<(f64, f64)> {
        if self.is_empty() {
            return Vec::new();
        }
        if self.is_full() {
            return vec![(0.0, TAU)];
        }
        let (s, e) = (self.start(), self.end());
        if s < 0.0 {
            vec![(0.0, e), (s + TAU, TAU)]
        } else if e > TAU {
            vec![(0.0, e - TAU), (s, TAU)]
        } else {
            vec![(s, e)]
        }
    }
}

/// Sort intervals of `[0, 2π]` and merge the overlapping or touching ones.
pub(crate) fn merge_intervals(mut intervals: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    intervals.retain(|&(s, e)| e > s);
    intervals.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let mut merged: Vec<(f64, f64)> = Vec::with_capacity(intervals.len());
    for (s, e) in intervals {
        match merged.last_mut() {
            Some(last) if s <= last.1 => last.1 = last.1.max(e),
            _ => merged.push((s, e)),
        }
    }
    merged
}

/// A finite union of arcs kept in merged canonical form.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ArcSet {
    intervals: Vec<(f64, f64)>,
}

impl ArcSet {
    pub fn empty() -> Self {
        ArcSet::default()
    }

    pub fn full() -> Self {
        ArcSet {
            intervals: vec![(0.0, TAU)],
        }
    }

    pub fn from_arcs<I: IntoIterator<Item = Arc>>(arcs: I) -> Self {
        let raw = arcs.into_iter().flat_map(|a| a.intervals()).collect();
        ArcSet {
            intervals: merge_intervals(raw),
        }
    }

    pub fn single(arc: Arc) -> Self {
        ArcSet::from_arcs([arc])
    }

    /// Disjoint sorted intervals of `[0, 2π]`.
    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    /// Canonical arcs; an interval touching `2π` is rejoined with one starting
    /// at `0`.
    pub fn arcs(&self) -> Vec<Arc> {
        let iv = &self.intervals;
        if iv.is_empty() {
            return Vec::new();
        }
        if iv.len() == 1 && iv[0].0 <= 0.0 && iv[0].1 >= TAU {
            return vec![Arc::full()];
        }
        let wraps = iv.len() > 1 && iv[0].0 <= 0.0 && iv[iv.len() - 1].1 >= TAU;
        let mut out = Vec::with_capacity(iv.len());
        let inner = if wraps { &iv[1..iv.len() - 1] } else { &iv[..] };
        if wraps {
            let (s, _) = iv[iv.len() - 1];
            let (_, e) = iv[0];
            out.push(Arc::from_endpoints(s - TAU, e).expect("finite endpoints"));
        }
        for &(s, e) in inner {
            out.push(Arc::from_endpoints(s, e).expect("finite endpoints"));
        }
        out
    }

    pub fn measure(&self) -> f64 {
        self.intervals
            .iter()
            .fold(0.0, |acc, (s, e)| acc + (e - s))
            .min(TAU)
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Membership with half-open `[start, end)` intervals.
    pub fn contains(&self, theta: f64) -> bool {
        let t = normalize_angle(theta);
        self.intervals.iter().any(|&(s, e)| s <= t && t < e)
    }

    /// True when the arc meets the set in positive measure.
    pub fn intersects(&self, arc: &Arc) -> bool {
        arc.intervals().iter().any(|&(s2, e2)| {
            self.intervals
                .iter()
                .any(|&(s1, e1)| s1 < e2 && s2 < e1)
        })
    }

    /// The complement `∂𝔻 ∖ A`.
    pub fn complement(&self) -> ArcSet {
        let mut out = Vec::new();
        let mut cursor = 0.0;
        for &(s, e) in &self.intervals {
            if s > cursor {
                out.push((cursor, s));
            }
            cursor = e;
        }
        if cursor < TAU {
            out.push((cursor, TAU));
        }
        ArcSet { intervals: out }
    }
}

impl Serialize for ArcSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.arcs().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ArcSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let arcs = Vec::<Arc>::deserialize(d)?;
        Ok(ArcSet::from_arcs(arcs))
    }
}

/// `|e^{iθ} - z| < (1 + α)(1 - |z|)`.
pub fn in_stolz_angle(z: &DiskPoint, theta: f64, alpha: Aperture) -> bool {
    let (s, c) = theta.sin_cos();
    let dist = (c - z.re).hypot(s - z.im);
    dist < (1.0 + alpha.value()) * (1.0 - z.modulus())
}

/// The arc `I_z = {θ : z ∈ Γ_α(e^{iθ})}`.
///
/// With `ρ = |z|` the Stolz inequality reads `1 - cos(θ - arg z) < d` where
/// `d = (1 - ρ)² α(2 + α) / (2ρ)`, so the half width is `2 asin(sqrt(d/2))`,
/// or the whole circle once `d ≥ 2`.
pub fn stolz_arc(z: &DiskPoint, alpha: Aperture) -> Arc {
    let rho = z.modulus();
    if rho == 0.0 {
        return Arc::full();
    }
    let a = alpha.value();
    let depth = 1.0 - rho;
    let d = depth * depth * a * (2.0 + a) / (2.0 * rho);
    if d >= 2.0 {
        return Arc::full();
    }
    let half_width = 2.0 * (0.5 * d).sqrt().asin();
    Arc {
        center: z.argument(),
        half_width: half_width.min(PI),
    }
}

/// Lebesgue measure of a union of arcs.
pub fn arc_union_measure(arcs: &[Arc]) -> f64 {
    ArcSet::from_arcs(arcs.iter().copied()).measure()
}

/// True when `z` lies in no Stolz angle with vertex in `A`.
pub fn outside_stolz_star(z: &DiskPoint, set: &ArcSet, alpha: Aperture) -> bool {
    !set.intersects(&stolz_arc(z, alpha))
}

/// Parse an angle like `1.5`, `pi`, `-pi/2`, `3pi/4` or `2*pi`.
pub fn parse_angle(text: &str) -> Result<f64> {
    let t = text.trim().to_ascii_lowercase().replace(['*', ' '], "");
    let bad = || Error::InvalidArc(format!("cannot parse angle {text:?}"));
    if let Ok(v) = t.parse::<f64>() {
        return Ok(v);
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, d.parse::<f64>().map_err(|_| bad())?),
        None => (t.as_str(), 1.0),
    };
    let coef = match num.strip_suffix("pi") {
        Some("") | Some("+") => 1.0,
        Some("-") => -1.0,
        Some(c) => c.parse::<f64>().map_err(|_| bad())?,
        None => return Err(bad()),
    };
    Ok(coef * PI / den)
}

/// Parse `start:end[,start:end...]` into an [`ArcSet`].
pub fn parse_arc_list(text: &str) -> Result<ArcSet> {
    let mut arcs = Vec::new();
    for piece in text.split(',').filter(|p| !p.trim().is_empty()) {
        let (s, e) = piece
            .split_once(':')
            .ok_or_else(|| Error::InvalidArc(format!("expected start:end, got {piece:?}")))?;
        arcs.push(Arc::from_endpoints(parse_angle(s)?, parse_angle(e)?)?);
    }
    Ok(ArcSet::from_arcs(arcs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(a: f64) -> Aperture {
        Aperture::new(a).unwrap()
    }

    fn pt(re: f64, im: f64) -> DiskPoint {
        DiskPoint::new(re, im).unwrap()
    }

    #[test]
    fn rejects_points_on_or_outside_circle() {
        assert!(DiskPoint::new(1.0, 0.0).is_err());
        assert!(DiskPoint::new(0.8, 0.6).is_err());
        assert!(DiskPoint::new(f64::NAN, 0.0).is_err());
        assert!(DiskPoint::new(0.7, 0.7).is_ok());
    }

    #[test]
    fn stolz_membership_examples() {
        let o = DiskPoint::ORIGIN;
        for k in 0..16 {
            assert!(in_stolz_angle(&o, k as f64 * 0.4, alpha(1.0)));
        }
        assert!(in_stolz_angle(&pt(0.5, 0.0), 0.0, alpha(1.0)));
        assert!(!in_stolz_angle(&pt(0.5, 0.0), PI, alpha(1.0)));
    }

    #[test]
    fn origin_arc_is_full_circle() {
        let arc = stolz_arc(&DiskPoint::ORIGIN, alpha(1.0));
        assert!(arc.is_full());
        assert_eq!(arc.measure(), TAU);
    }

    #[test]
    fn half_radius_arc_matches_theta_scan() {
        let z = pt(0.5, 0.0);
        let arc = stolz_arc(&z, alpha(1.0));
        assert!((arc.half_width() - 0.25f64.acos()).abs() < 1e-14);
        assert!((arc.measure() - 2.636_24).abs() < 1e-5);

        // brute force: fraction of a 10^-6 theta grid inside the Stolz angle
        let step = 1e-6;
        let n = (TAU / step) as usize;
        let inside = (0..n)
            .filter(|&j| in_stolz_angle(&z, j as f64 * step, alpha(1.0)))
            .count();
        assert!((inside as f64 * step - arc.measure()).abs() < 1e-5);
    }

    #[test]
    fn arc_length_scales_with_depth() {
        let a = alpha(1.0);
        let ratios: Vec<f64> = (5..=20)
            .map(|k| {
                let depth = (0.5f64).powi(k);
                let arc = stolz_arc(&pt(1.0 - depth, 0.0), a);
                arc.measure() / depth
            })
            .collect();
        // limit 2 sqrt(α(2+α))
        let limit = 2.0 * 3f64.sqrt();
        assert!((ratios.last().unwrap() - limit).abs() < 1e-5);
        for w in ratios.windows(2) {
            assert!((w[1] - limit).abs() <= (w[0] - limit).abs() + 1e-12);
        }
    }

    #[test]
    fn union_measure_examples() {
        assert_eq!(arc_union_measure(&[]), 0.0);
        let a = Arc::new(1.0, 0.5).unwrap();
        let b = Arc::new(4.0, 0.5).unwrap();
        assert!((arc_union_measure(&[a, b]) - 2.0).abs() < 1e-15);
        assert!((arc_union_measure(&[a, a]) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn wrapping_arc_splits_and_rejoins() {
        let arc = Arc::new(0.1, 0.3).unwrap();
        assert_eq!(arc.intervals().len(), 2);
        let set = ArcSet::single(arc);
        assert!((set.measure() - 0.6).abs() < 1e-15);
        let back = set.arcs();
        assert_eq!(back.len(), 1);
        assert!((back[0].center() - 0.1).abs() < 1e-15);
        assert!((back[0].half_width() - 0.3).abs() < 1e-15);
        assert!(set.contains(TAU - 0.1));
        assert!(set.contains(0.35));
        assert!(!set.contains(0.45));
    }

    #[test]
    fn stolz_star_examples() {
        let a = alpha(1.0);
        let upper = ArcSet::single(Arc::new(PI / 2.0, PI / 2.0).unwrap());
        let z = pt(-0.5, 0.3);
        assert!(outside_stolz_star(&z, &ArcSet::empty(), a));
        assert!(!outside_stolz_star(&z, &ArcSet::full(), a));
        // I_z for z = -0.99 is a short arc centered at π, so it reaches into (0, π)
        assert!(!outside_stolz_star(&pt(-0.99, 0.0), &upper, a));
        assert!(outside_stolz_star(&pt(0.0, -0.99), &upper, a));
    }

    #[test]
    fn complement_of_upper_half() {
        let upper = ArcSet::single(Arc::new(PI / 2.0, PI / 2.0).unwrap());
        let lower = upper.complement();
        assert!((lower.measure() - PI).abs() < 1e-15);
        assert!(lower.contains(1.5 * PI));
        assert!(!lower.contains(0.5 * PI));
    }

    #[test]
    fn parses_angles_and_arc_lists() {
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert_eq!(parse_angle("-pi/2").unwrap(), -PI / 2.0);
        assert_eq!(parse_angle("3pi/2").unwrap(), 1.5 * PI);
        assert_eq!(parse_angle("2*pi").unwrap(), TAU);
        assert_eq!(parse_angle("0.25").unwrap(), 0.25);
        assert!(parse_angle("tau").is_err());
        let set = parse_arc_list("0:pi").unwrap();
        assert!((set.measure() - PI).abs() < 1e-15);
        assert!(parse_arc_list("0-pi").is_err());
    }
}
