//! Integration on the unit circle: boundary data, the Herglotz and Poisson
//! transforms, normalized `L^p` means, and log-integrals over circles.
//!
//! Integrals here are normalized by `dθ/2π` unless a name says otherwise.

use std::f64::consts::{PI, TAU};
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::FunctionSpec;
use crate::geometry::{normalize_angle, Arc, ArcSet, DiskPoint};

/// Default number of equispaced nodes for sampled boundary integrals.
pub const DEFAULT_GRID: usize = 1 << 12;

/// Neumaier's compensated summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Sum in the given order with compensation.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    values.into_iter().collect::<CompensatedSum>().value()
}

/// An exponent `p ∈ (0, ∞]`. Serialized as a number, or `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Exponent(f64);

impl Exponent {
    pub const INFINITY: Exponent = Exponent(f64::INFINITY);

    pub fn new(p: f64) -> Result<Self> {
        if p > 0.0 && !p.is_nan() {
            Ok(Exponent(p))
        } else {
            Err(Error::InvalidExponent(p))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl std::str::FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(Exponent::INFINITY),
            other => {
                let p = other
                    .parse::<f64>()
                    .map_err(|_| Error::Config(format!("cannot parse exponent {s:?}")))?;
                Exponent::new(p)
            }
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(p) => Exponent::new(p).map_err(serde::de::Error::custom),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Equispaced nodes `θ_j = 2πj/size`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CircleGrid {
    size: usize,
}

impl CircleGrid {
    pub fn new(size: usize) -> Result<Self> {
        if size < 8 {
            return Err(Error::InvalidBoundaryData(format!(
                "circle grid needs at least 8 nodes, got {size}"
            )));
        }
        Ok(CircleGrid { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn node(&self, j: usize) -> f64 {
        TAU * j as f64 / self.size as f64
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.size).map(|j| self.node(j))
    }
}

/// Guards for quadrature of sampled data near the boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureGuard {
    /// Points with `1 - |z|` below this are rejected outright.
    pub min_depth: f64,
    /// Beyond `|z| > 0.99`, require `size ≥ nodes_per_width / (1 - |z|)`.
    pub nodes_per_width: f64,
}

impl Default for QuadratureGuard {
    fn default() -> Self {
        QuadratureGuard {
            min_depth: 1e-12,
            nodes_per_width: 32.0,
        }
    }
}

impl QuadratureGuard {
    fn check(&self, size: usize, z: &DiskPoint) -> Result<()> {
        let rho = z.modulus();
        let depth = 1.0 - rho;
        if depth < self.min_depth {
            return Err(Error::TooCloseToBoundary(rho));
        }
        if rho > 0.99 {
            let required = (self.nodes_per_width / depth).ceil() as usize;
            if size < required {
                return Err(Error::GridTooCoarse {
                    size,
                    modulus: rho,
                    required,
                });
            }
        }
        Ok(())
    }
}

/// One arc of a piecewise-constant function together with its level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelArc {
    pub center: f64,
    pub half_width: f64,
    pub level: f64,
}

impl LevelArc {
    pub fn new(arc: Arc, level: f64) -> Self {
        LevelArc {
            center: arc.center(),
            half_width: arc.half_width(),
            level,
        }
    }

    pub fn arc(&self) -> Arc {
        Arc::new(self.center, self.half_width).expect("validated level arc")
    }
}

/// `background + Σ (level_i - background) 𝟙_{arc_i}` over disjoint arcs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseConstant {
    pub arcs: Vec<LevelArc>,
    pub background: f64,
}

/// Real values on a [`CircleGrid`], linearly interpolated in between.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledData {
    pub grid_size: usize,
    pub values: Vec<f64>,
}

/// Real boundary data: piecewise constant over arcs, or sampled on a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum BoundaryData {
    Piecewise(PiecewiseConstant),
    Sampled(SampledData),
}

impl<'de> Deserialize<'de> for BoundaryData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Piecewise(PiecewiseConstant),
            Sampled(SampledData),
        }
        let data = match Raw::deserialize(d)? {
            Raw::Piecewise(p) => BoundaryData::Piecewise(p),
            Raw::Sampled(s) => BoundaryData::Sampled(s),
        };
        data.validate().map_err(serde::de::Error::custom)?;
        Ok(data)
    }
}

impl PiecewiseConstant {
    fn level_at(&self, theta: f64) -> f64 {
        let t = normalize_angle(theta);
        for la in &self.arcs {
            if la.half_width >= PI {
                return la.level;
            }
            let offset = (t - (la.center - la.half_width)).rem_euclid(TAU);
            if offset < 2.0 * la.half_width {
                return la.level;
            }
        }
        self.background
    }

    fn covered(&self) -> f64 {
        self.arcs.iter().map(|a| 2.0 * a.half_width).sum::<f64>()
    }

    fn breakpoints(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(2 * self.arcs.len());
        for la in &self.arcs {
            if la.half_width > 0.0 && la.half_width < PI {
                out.push(normalize_angle(la.center - la.half_width));
                out.push(normalize_angle(la.center + la.half_width));
            }
        }
        out
    }
}

impl SampledData {
    fn value_at(&self, theta: f64) -> f64 {
        let n = self.values.len();
        let x = normalize_angle(theta) / TAU * n as f64;
        let j = (x.floor() as usize).min(n - 1);
        let frac = x - j as f64;
        let a = self.values[j];
        let b = self.values[(j + 1) % n];
        a + frac * (b - a)
    }

    fn resample(&self, size: usize) -> SampledData {
        if size == self.grid_size {
            return self.clone();
        }
        let grid = CircleGrid { size };
        SampledData {
            grid_size: size,
            values: grid.nodes().map(|t| self.value_at(t)).collect(),
        }
    }
}

impl BoundaryData {
    pub fn constant(level: f64) -> Self {
        BoundaryData::Piecewise(PiecewiseConstant {
            arcs: Vec::new(),
            background: level,
        })
    }

    /// `inside` on the set, `outside` elsewhere.
    pub fn indicator(set: &ArcSet, inside: f64, outside: f64) -> Self {
        BoundaryData::Piecewise(PiecewiseConstant {
            arcs: set.arcs().into_iter().map(|a| LevelArc::new(a, inside)).collect(),
            background: outside,
        })
    }

    pub fn piecewise(arcs: Vec<(Arc, f64)>, background: f64) -> Result<Self> {
        let data = BoundaryData::Piecewise(PiecewiseConstant {
            arcs: arcs.into_iter().map(|(a, l)| LevelArc::new(a, l)).collect(),
            background,
        });
        data.validate()?;
        Ok(data)
    }

    pub fn sampled(values: Vec<f64>) -> Result<Self> {
        let data = BoundaryData::Sampled(SampledData {
            grid_size: values.len(),
            values,
        });
        data.validate()?;
        Ok(data)
    }

    /// Sample `u(θ)` at the nodes of a grid of the given size.
    pub fn from_fn(size: usize, u: impl Fn(f64) -> f64) -> Result<Self> {
        let grid = CircleGrid::new(size)?;
        BoundaryData::sampled(grid.nodes().map(u).collect())
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            BoundaryData::Piecewise(p) => {
                if !p.background.is_finite() {
                    return Err(Error::InvalidBoundaryData("non-finite background".into()));
                }
                for la in &p.arcs {
                    Arc::new(la.center, la.half_width)?;
                    if !la.level.is_finite() {
                        return Err(Error::InvalidBoundaryData("non-finite level".into()));
                    }
                }
                let union = ArcSet::from_arcs(p.arcs.iter().map(|a| a.arc())).measure();
                if p.covered() - union > 1e-12 {
                    return Err(Error::InvalidBoundaryData(
                        "arcs of piecewise-constant data must be disjoint".into(),
                    ));
                }
                Ok(())
            }
            BoundaryData::Sampled(s) => {
                CircleGrid::new(s.values.len())?;
                if s.grid_size != s.values.len() {
                    return Err(Error::InvalidBoundaryData(format!(
                        "grid_size {} does not match {} values",
                        s.grid_size,
                        s.values.len()
                    )));
                }
                if s.values.iter().any(|v| !v.is_finite()) {
                    return Err(Error::InvalidBoundaryData("non-finite sample".into()));
                }
                Ok(())
            }
        }
    }

    pub fn is_piecewise(&self) -> bool {
        matches!(self, BoundaryData::Piecewise(_))
    }

    /// `u(θ)`; piecewise data is right-continuous at arc endpoints.
    pub fn value_at(&self, theta: f64) -> f64 {
        match self {
            BoundaryData::Piecewise(p) => p.level_at(theta),
            BoundaryData::Sampled(s) => s.value_at(theta),
        }
    }

    /// Apply `f` to every level or sample.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> BoundaryData {
        match self {
            BoundaryData::Piecewise(p) => BoundaryData::Piecewise(PiecewiseConstant {
                arcs: p
                    .arcs
                    .iter()
                    .map(|la| LevelArc {
                        level: f(la.level),
                        ..*la
                    })
                    .collect(),
                background: f(p.background),
            }),
            BoundaryData::Sampled(s) => BoundaryData::Sampled(SampledData {
                grid_size: s.grid_size,
                values: s.values.iter().map(|&v| f(v)).collect(),
            }),
        }
    }

    pub fn scale(&self, k: f64) -> BoundaryData {
        self.map(|v| k * v)
    }

    /// Pointwise sum. Two piecewise inputs stay piecewise on their common
    /// refinement; anything sampled is combined on the finer grid.
    pub fn add(&self, other: &BoundaryData) -> BoundaryData {
        match (self, other) {
            (BoundaryData::Piecewise(a), BoundaryData::Piecewise(b)) => {
                BoundaryData::Piecewise(refine_sum(a, b))
            }
            (BoundaryData::Sampled(a), BoundaryData::Sampled(b)) => {
                let size = a.grid_size.max(b.grid_size);
                let (a, b) = (a.resample(size), b.resample(size));
                BoundaryData::Sampled(SampledData {
                    grid_size: size,
                    values: a.values.iter().zip(&b.values).map(|(x, y)| x + y).collect(),
                })
            }
            (BoundaryData::Sampled(s), p @ BoundaryData::Piecewise(_))
            | (p @ BoundaryData::Piecewise(_), BoundaryData::Sampled(s)) => {
                let grid = CircleGrid { size: s.grid_size };
                BoundaryData::Sampled(SampledData {
                    grid_size: s.grid_size,
                    values: grid
                        .nodes()
                        .zip(&s.values)
                        .map(|(t, v)| v + p.value_at(t))
                        .collect(),
                })
            }
        }
    }

    /// `∫ f(u(θ)) dθ/2π`: exact for piecewise data, trapezoid for samples.
    pub fn mean_of(&self, f: impl Fn(f64) -> f64) -> f64 {
        match self {
            BoundaryData::Piecewise(p) => {
                let covered = p.covered().min(TAU);
                let mut acc = CompensatedSum::new();
                for la in &p.arcs {
                    acc.add(2.0 * la.half_width * f(la.level));
                }
                if covered < TAU {
                    acc.add((TAU - covered) * f(p.background));
                }
                acc.value() / TAU
            }
            BoundaryData::Sampled(s) => {
                compensated_sum(s.values.iter().map(|&v| f(v))) / s.values.len() as f64
            }
        }
    }

    /// `∫_A f(u(θ)) dθ/2π` over a set of arcs.
    pub fn mean_over(&self, set: &ArcSet, f: impl Fn(f64) -> f64) -> f64 {
        match self {
            BoundaryData::Piecewise(p) => {
                let restricted = BoundaryData::indicator(set, 1.0, 0.0);
                let BoundaryData::Piecewise(mask) = restricted else {
                    unreachable!()
                };
                let joint = refine_pairs(p, &mask);
                let mut acc = CompensatedSum::new();
                for (len, level, m) in joint {
                    if m > 0.5 {
                        acc.add(len * f(level));
                    }
                }
                acc.value() / TAU
            }
            BoundaryData::Sampled(s) => {
                let grid = CircleGrid { size: s.grid_size };
                compensated_sum(
                    grid.nodes()
                        .zip(&s.values)
                        .map(|(t, &v)| if set.contains(t) { f(v) } else { 0.0 }),
                ) / s.grid_size as f64
            }
        }
    }

    /// Essential supremum.
    pub fn ess_sup(&self) -> f64 {
        match self {
            BoundaryData::Piecewise(p) => {
                let mut best = f64::NEG_INFINITY;
                for la in &p.arcs {
                    if la.half_width > 0.0 {
                        best = best.max(la.level);
                    }
                }
                if p.covered() < TAU - 1e-14 {
                    best = best.max(p.background);
                }
                best
            }
            BoundaryData::Sampled(s) => s.values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        }
    }
}

/// Elementary intervals of the common refinement of two piecewise functions:
/// `(length, level of a, level of b)`, covering the whole circle.
fn refine_pairs(a: &PiecewiseConstant, b: &PiecewiseConstant) -> Vec<(f64, f64, f64)> {
    let mut cuts: Vec<f64> = a.breakpoints();
    cuts.extend(b.breakpoints());
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|x, y| (*x - *y).abs() < 1e-14);
    if cuts.len() > 1 && TAU - cuts[cuts.len() - 1] + cuts[0] < 1e-14 {
        cuts.pop();
    }
    if cuts.is_empty() {
        let la = a.level_at(0.0);
        let lb = b.level_at(0.0);
        return vec![(TAU, la, lb)];
    }
    let n = cuts.len();
    (0..n)
        .map(|i| {
            let s = cuts[i];
            let e = if i + 1 < n { cuts[i + 1] } else { cuts[0] + TAU };
            let mid = 0.5 * (s + e);
            (e - s, a.level_at(mid), b.level_at(mid))
        })
        .collect()
}

fn refine_sum(a: &PiecewiseConstant, b: &PiecewiseConstant) -> PiecewiseConstant {
    let background = a.background + b.background;
    let mut cuts: Vec<f64> = a.breakpoints();
    cuts.extend(b.breakpoints());
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|x, y| (*x - *y).abs() < 1e-14);
    if cuts.len() > 1 && TAU - cuts[cuts.len() - 1] + cuts[0] < 1e-14 {
        cuts.pop();
    }
    if cuts.is_empty() {
        return PiecewiseConstant {
            arcs: Vec::new(),
            background: a.level_at(0.0) + b.level_at(0.0),
        };
    }
    let n = cuts.len();
    let mut pieces: Vec<(f64, f64, f64)> = Vec::with_capacity(n);
    for i in 0..n {
        let s = cuts[i];
        let e = if i + 1 < n { cuts[i + 1] } else { cuts[0] + TAU };
        let mid = 0.5 * (s + e);
        let level = a.level_at(mid) + b.level_at(mid);
        match pieces.last_mut() {
            Some(last) if last.2 == level && last.1 == s => last.1 = e,
            _ => pieces.push((s, e, level)),
        }
    }
    let arcs = pieces
        .into_iter()
        .filter(|&(_, _, level)| level != background)
        .map(|(s, e, level)| LevelArc::new(Arc::from_endpoints(s, e).expect("finite"), level))
        .collect();
    PiecewiseConstant { arcs, background }
}

/// `∫_arc (e^{iθ}+z)/(e^{iθ}-z) dθ/2π` through the antiderivative
/// `F(θ) = θ - 2i Log(1 - z e^{-iθ})`; the principal branch is continuous
/// because `Re(1 - z e^{-iθ}) ≥ 1 - |z| > 0`.
pub fn herglotz_arc_closed_form(arc: &Arc, z: &DiskPoint) -> Complex64 {
    if arc.is_full() {
        return Complex64::new(1.0, 0.0);
    }
    if arc.is_empty() {
        return Complex64::new(0.0, 0.0);
    }
    let zc = z.to_complex();
    let f = |theta: f64| {
        let w = Complex64::new(1.0, 0.0) - zc * Complex64::from_polar(1.0, -theta);
        Complex64::new(theta, 0.0) - Complex64::new(0.0, 2.0) * w.ln()
    };
    (f(arc.end()) - f(arc.start())) / TAU
}

/// The same arc integral by equispaced quadrature: the trapezoid rule with
/// `nodes` points applied after the periodizing substitution
/// `θ = θ₁ + L (t - sin(2πt)/2π)`, which flattens the integrand at both arc
/// endpoints. The full circle uses the plain periodic trapezoid.
pub fn herglotz_arc_quadrature(arc: &Arc, z: &DiskPoint, nodes: usize) -> Complex64 {
    let zc = z.to_complex();
    let kernel = |theta: f64| {
        let w = Complex64::from_polar(1.0, theta);
        (w + zc) / (w - zc)
    };
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    if arc.is_full() {
        for j in 0..nodes {
            let k = kernel(TAU * j as f64 / nodes as f64);
            re.add(k.re);
            im.add(k.im);
        }
        return Complex64::new(re.value(), im.value()) / nodes as f64;
    }
    let (start, len) = (arc.start(), arc.measure());
    for j in 1..nodes {
        let t = j as f64 / nodes as f64;
        let (s, c) = (TAU * t).sin_cos();
        let theta = start + len * (t - s / TAU);
        let k = kernel(theta) * (len * (1.0 - c));
        re.add(k.re);
        im.add(k.im);
    }
    Complex64::new(re.value(), im.value()) / (nodes as f64 * TAU)
}

/// Real part of [`herglotz_arc_closed_form`]: the harmonic measure of the arc
/// seen from `z`.
pub fn poisson_arc_closed_form(arc: &Arc, z: &DiskPoint) -> f64 {
    if arc.is_full() {
        return 1.0;
    }
    if arc.is_empty() {
        return 0.0;
    }
    let zc = z.to_complex();
    let arg = |theta: f64| (Complex64::new(1.0, 0.0) - zc * Complex64::from_polar(1.0, -theta)).arg();
    (arc.measure() + 2.0 * (arg(arc.end()) - arg(arc.start()))) / TAU
}

/// `d/dz ∫_arc (e^{iθ}+z)/(e^{iθ}-z) dθ/2π`, from the antiderivative
/// `2i/(e^{iθ} - z)` of the differentiated kernel `2e^{iθ}/(e^{iθ}-z)²`.
pub fn herglotz_arc_derivative(arc: &Arc, z: &DiskPoint) -> Complex64 {
    if arc.is_full() || arc.is_empty() {
        return Complex64::new(0.0, 0.0);
    }
    let zc = z.to_complex();
    let g = |theta: f64| Complex64::new(0.0, 2.0) / (Complex64::from_polar(1.0, theta) - zc);
    (g(arc.end()) - g(arc.start())) / TAU
}

fn sampled_kernel_sum(
    s: &SampledData,
    z: &DiskPoint,
    kernel: impl Fn(Complex64, Complex64) -> Complex64,
) -> Complex64 {
    let grid = CircleGrid { size: s.grid_size };
    let zc = z.to_complex();
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    for (t, &u) in grid.nodes().zip(&s.values) {
        let k = kernel(Complex64::from_polar(1.0, t), zc) * u;
        re.add(k.re);
        im.add(k.im);
    }
    Complex64::new(re.value(), im.value()) / s.grid_size as f64
}

/// `∫ (e^{iθ}+z)/(e^{iθ}-z) u(θ) dθ/2π` with the default guard.
pub fn herglotz_transform(u: &BoundaryData, z: &DiskPoint) -> Result<Complex64> {
    herglotz_transform_with(u, z, &QuadratureGuard::default())
}

pub fn herglotz_transform_with(
    u: &BoundaryData,
    z: &DiskPoint,
    guard: &QuadratureGuard,
) -> Result<Complex64> {
    match u {
        BoundaryData::Piecewise(p) => {
            let mut acc = Complex64::new(p.background, 0.0);
            for la in &p.arcs {
                acc += herglotz_arc_closed_form(&la.arc(), z) * (la.level - p.background);
            }
            Ok(acc)
        }
        BoundaryData::Sampled(s) => {
            guard.check(s.grid_size, z)?;
            Ok(sampled_kernel_sum(s, z, |w, zc| (w + zc) / (w - zc)))
        }
    }
}

/// `d/dz` of the Herglotz transform.
pub fn herglotz_derivative(u: &BoundaryData, z: &DiskPoint) -> Result<Complex64> {
    match u {
        BoundaryData::Piecewise(p) => {
            let mut acc = Complex64::new(0.0, 0.0);
            for la in &p.arcs {
                acc += herglotz_arc_derivative(&la.arc(), z) * (la.level - p.background);
            }
            Ok(acc)
        }
        BoundaryData::Sampled(s) => {
            QuadratureGuard::default().check(s.grid_size, z)?;
            Ok(sampled_kernel_sum(s, z, |w, zc| {
                let d = w - zc;
                w * 2.0 / (d * d)
            }))
        }
    }
}

/// The harmonic (Poisson) extension of `u` evaluated at `z`.
pub fn poisson_extension(u: &BoundaryData, z: &DiskPoint) -> Result<f64> {
    match u {
        BoundaryData::Piecewise(p) => {
            let mut acc = p.background;
            for la in &p.arcs {
                acc += poisson_arc_closed_form(&la.arc(), z) * (la.level - p.background);
            }
            Ok(acc)
        }
        BoundaryData::Sampled(_) => Ok(herglotz_transform(u, z)?.re),
    }
}

/// Normalized `L^p` mean of nonnegative samples; the maximum for `p = ∞`.
pub fn lp_mean(values: &[f64], p: Exponent) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    if p.is_infinite() {
        return values.iter().copied().fold(0.0, f64::max);
    }
    let q = p.value();
    let mean = compensated_sum(values.iter().map(|v| v.powf(q))) / values.len() as f64;
    mean.powf(1.0 / q)
}

/// `∫ log|f(re^{iθ})| dθ/2π` by the periodic trapezoid rule on a grid sized
/// for the function's features at radius `r`.
pub fn log_integral(f: &FunctionSpec, r: f64) -> Result<f64> {
    log_integral_with_grid(f, r, f.circle_nodes(r))
}

pub fn log_integral_with_grid(f: &FunctionSpec, r: f64, size: usize) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Precondition(format!("radius {r} not in (0, 1)")));
    }
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let grid = CircleGrid::new(size)?;
    let logs: Vec<f64> = (0..grid.size())
        .into_par_iter()
        .map(|j| {
            let z = DiskPoint::from_polar(r, grid.node(j))?;
            f.log_abs(&z)
        })
        .collect::<Result<_>>()?;
    if logs.contains(&f64::NEG_INFINITY) {
        return Err(Error::ZeroOnCircle(r));
    }
    Ok(compensated_sum(logs) / size as f64)
}
