//! The sampling functionals: restricted maximal functions `M_a` and `M_{a,p}`,
//! the `μ`-norm, sampling ratios, the arc identity behind the comparison of
//! the two sampling notions, and nontangential coverage.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boundary::{compensated_sum, CircleGrid, CompensatedSum, Exponent};
use crate::error::{Error, Result};
use crate::function::FunctionSpec;
use crate::geometry::{arc_union_measure, in_stolz_angle, stolz_arc, Aperture, DiskPoint};
use crate::points::PointSet;

/// `|f(z)|` for every point of the set, in set order.
pub fn moduli(f: &FunctionSpec, a: &PointSet) -> Result<Vec<f64>> {
    let pts: Vec<DiskPoint> = a.iter().copied().collect();
    pts.par_iter().map(|z| f.modulus(z)).collect()
}

/// `sup |f|` over `Γ_α(e^{iθ}) ∩ a`; zero when the intersection is empty.
pub fn m_a(f: &FunctionSpec, a: &PointSet, theta: f64, alpha: Aperture) -> Result<f64> {
    let mut best = 0.0f64;
    for z in a.iter() {
        if in_stolz_angle(z, theta, alpha) {
            best = best.max(f.modulus(z)?);
        }
    }
    Ok(best)
}

/// `(Σ_{z ∈ Γ_α(e^{iθ}) ∩ a} |f(z)|^p)^{1/p}`.
pub fn m_a_p(f: &FunctionSpec, a: &PointSet, theta: f64, alpha: Aperture, p: Exponent) -> Result<f64> {
    if p.is_infinite() {
        return m_a(f, a, theta, alpha);
    }
    let q = p.value();
    let mut acc = CompensatedSum::new();
    for z in a.iter() {
        if in_stolz_angle(z, theta, alpha) {
            acc.add(f.modulus(z)?.powf(q));
        }
    }
    Ok(acc.value().powf(1.0 / q))
}

/// `Σ_{z ∈ a} (1 - |z|²)|f(z)|^p`, summed in set order.
pub fn mu_mass(f: &FunctionSpec, a: &PointSet, p: Exponent) -> Result<f64> {
    if p.is_infinite() {
        return Err(Error::InvalidExponent(p.value()));
    }
    let values = moduli(f, a)?;
    let q = p.value();
    Ok(compensated_sum(
        values.iter().enumerate().map(|(i, v)| a.weight(i) * v.powf(q)),
    ))
}

/// `‖f‖_{L^p(μ)} = (Σ (1 - |z|²)|f(z)|^p)^{1/p}`.
pub fn mu_norm(f: &FunctionSpec, a: &PointSet, p: Exponent) -> Result<f64> {
    Ok(mu_mass(f, a, p)?.powf(1.0 / p.value()))
}

#[derive(Clone, Copy, PartialEq)]
struct HeapEntry(f64, usize);

impl Eq for HeapEntry {}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0).then(self.1.cmp(&other.1))
    }
}

#[derive(Debug, Clone, Copy)]
struct Event {
    pos: f64,
    start: bool,
    interval: usize,
}

/// Sorted arc endpoints of `{I_z : z ∈ a}`, reusable across functions.
///
/// Each point contributes its value on the exact arc `I_z`; sweeping the
/// sorted endpoints gives `θ ↦ M_a f(θ)` as an exact step function.
#[derive(Debug, Clone)]
pub struct ArcSweep {
    /// Owning point of each `[start, end)` interval.
    owner: Vec<usize>,
    events: Vec<Event>,
    point_count: usize,
}

impl ArcSweep {
    pub fn new(a: &PointSet, alpha: Aperture) -> Self {
        let arcs: Vec<_> = a
            .iter()
            .copied()
            .collect::<Vec<_>>()
            .par_iter()
            .map(|z| stolz_arc(z, alpha).intervals())
            .collect();
        let mut owner = Vec::new();
        let mut events = Vec::new();
        for (i, ivs) in arcs.into_iter().enumerate() {
            for (s, e) in ivs {
                let id = owner.len();
                owner.push(i);
                events.push(Event {
                    pos: s,
                    start: true,
                    interval: id,
                });
                events.push(Event {
                    pos: e,
                    start: false,
                    interval: id,
                });
            }
        }
        events.par_sort_by(|x, y| {
            x.pos
                .total_cmp(&y.pos)
                .then(x.start.cmp(&y.start))
                .then(x.interval.cmp(&y.interval))
        });
        ArcSweep {
            owner,
            events,
            point_count: a.len(),
        }
    }

    fn check_len(&self, values: &[f64]) -> Result<()> {
        if values.len() != self.point_count {
            return Err(Error::InvalidPointSet(format!(
                "{} values for {} points",
                values.len(),
                self.point_count
            )));
        }
        Ok(())
    }

    /// Step function `θ ↦ max{values[i] : θ ∈ I_{z_i}}` (zero when no arc
    /// covers `θ`).
    pub fn max_profile(&self, values: &[f64]) -> Result<StepProfile> {
        self.check_len(values)?;
        let mut active = vec![false; self.owner.len()];
        let mut heap: BinaryHeap<HeapEntry> = BinaryHeap::new();
        let mut segments: Vec<(f64, f64)> = Vec::new();
        let mut prev = 0.0;
        let push = |segments: &mut Vec<(f64, f64)>, len: f64, v: f64| match segments.last_mut() {
            Some(last) if last.1 == v => last.0 += len,
            _ => segments.push((len, v)),
        };
        for ev in &self.events {
            if ev.pos > prev {
                while let Some(top) = heap.peek() {
                    if active[top.1] {
                        break;
                    }
                    heap.pop();
                }
                let cur = heap.peek().map_or(0.0, |t| t.0);
                push(&mut segments, ev.pos - prev, cur);
                prev = ev.pos;
            }
            if ev.start {
                active[ev.interval] = true;
                heap.push(HeapEntry(values[self.owner[ev.interval]], ev.interval));
            } else {
                active[ev.interval] = false;
            }
        }
        if prev < TAU {
            push(&mut segments, TAU - prev, 0.0);
        }
        Ok(StepProfile { segments })
    }

    /// `∫_0^{2π} Σ_{i : θ ∈ I_{z_i}} values[i] dθ`, unnormalized.
    pub fn sum_integral(&self, values: &[f64]) -> Result<f64> {
        self.check_len(values)?;
        let mut running = CompensatedSum::new();
        let mut active = 0usize;
        let mut total = CompensatedSum::new();
        let mut prev = 0.0;
        for ev in &self.events {
            if ev.pos > prev {
                if active > 0 {
                    total.add((ev.pos - prev) * running.value());
                }
                prev = ev.pos;
            }
            let v = values[self.owner[ev.interval]];
            if ev.start {
                running.add(v);
                active += 1;
            } else {
                running.add(-v);
                active -= 1;
                if active == 0 {
                    running = CompensatedSum::new();
                }
            }
        }
        Ok(total.value())
    }
}

/// A nonnegative step function on the circle, as `(length, value)` pieces
/// that together cover `[0, 2π)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepProfile {
    pub segments: Vec<(f64, f64)>,
}

impl StepProfile {
    /// Normalized `L^p(dθ/2π)` norm; essential supremum for `p = ∞`.
    pub fn lp_norm(&self, p: Exponent) -> f64 {
        if p.is_infinite() {
            return self
                .segments
                .iter()
                .filter(|s| s.0 > 0.0)
                .map(|s| s.1)
                .fold(0.0, f64::max);
        }
        let q = p.value();
        let integral = compensated_sum(self.segments.iter().map(|&(len, v)| len * v.powf(q)));
        (integral / TAU).powf(1.0 / q)
    }

    /// `x ↦ x^k` applied to every level.
    pub fn powi(&self, k: i32) -> StepProfile {
        StepProfile {
            segments: self.segments.iter().map(|&(l, v)| (l, v.powi(k))).collect(),
        }
    }
}

/// `‖M_a f‖_{L^p(dθ/2π)}` by the exact arc sweep.
pub fn m_a_lp_norm(f: &FunctionSpec, a: &PointSet, p: Exponent, alpha: Aperture) -> Result<f64> {
    let sweep = ArcSweep::new(a, alpha);
    Ok(sweep.max_profile(&moduli(f, a)?)?.lp_norm(p))
}

/// The same norm from `M_a f` sampled on an equispaced θ-grid; a validation
/// oracle for [`m_a_lp_norm`].
pub fn m_a_lp_norm_grid(
    f: &FunctionSpec,
    a: &PointSet,
    p: Exponent,
    alpha: Aperture,
    grid_size: usize,
) -> Result<f64> {
    let grid = CircleGrid::new(grid_size)?;
    let values = moduli(f, a)?;
    let pts: Vec<DiskPoint> = a.iter().copied().collect();
    let maxima: Vec<f64> = (0..grid.size())
        .into_par_iter()
        .map(|j| {
            let t = grid.node(j);
            pts.iter()
                .zip(&values)
                .filter(|(z, _)| in_stolz_angle(z, t, alpha))
                .map(|(_, &v)| v)
                .fold(0.0, f64::max)
        })
        .collect();
    Ok(crate::boundary::lp_mean(&maxima, p))
}

/// Outcome of comparing `‖M_a f‖_p` with `‖f‖_p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplingReport {
    pub p: Exponent,
    pub alpha: Aperture,
    /// `None` when the exact sweep was used.
    pub grid_size: Option<usize>,
    pub hp_norm: f64,
    pub ma_norm: f64,
    pub ratio: f64,
    pub ceiling: f64,
    pub within_ceiling: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<StepProfile>,
}

/// Default ceiling for `‖M_a f‖_p / ‖f‖_p`.
pub const DEFAULT_RATIO_CEILING: f64 = 16.0;

pub fn sampling_ratio(
    f: &FunctionSpec,
    a: &PointSet,
    p: Exponent,
    alpha: Aperture,
    ceiling: f64,
) -> Result<SamplingReport> {
    let sweep = ArcSweep::new(a, alpha);
    sampling_ratio_with(f, a, &sweep, p, alpha, ceiling, false)
}

/// [`sampling_ratio`] with a prebuilt sweep, for runs over many functions.
pub fn sampling_ratio_with(
    f: &FunctionSpec,
    a: &PointSet,
    sweep: &ArcSweep,
    p: Exponent,
    alpha: Aperture,
    ceiling: f64,
    keep_profile: bool,
) -> Result<SamplingReport> {
    let hp = f.hp_norm(p);
    if f.is_zero() || hp <= 0.0 {
        return Err(Error::ZeroFunction);
    }
    let profile = sweep.max_profile(&moduli(f, a)?)?;
    let ma = profile.lp_norm(p);
    let ratio = ma / hp;
    Ok(SamplingReport {
        p,
        alpha,
        grid_size: None,
        hp_norm: hp,
        ma_norm: ma,
        ratio,
        ceiling,
        within_ceiling: ratio <= ceiling,
        profile: keep_profile.then_some(profile),
    })
}

/// Both sides of `∫ M_{a,p}(f)^p dθ = Σ |f(z)|^p |I_z|` (unnormalized).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub relative_error: f64,
}

/// Left side by sweeping the step function `θ ↦ M_{a,p}(f)(θ)^p`; right side
/// as a per-point sum of `|f(z)|^p` times the exact arc length.
pub fn lemma1_identity_check(
    f: &FunctionSpec,
    a: &PointSet,
    p: Exponent,
    alpha: Aperture,
) -> Result<IdentityCheck> {
    if p.is_infinite() {
        return Err(Error::InvalidExponent(p.value()));
    }
    let q = p.value();
    let powered: Vec<f64> = moduli(f, a)?.into_iter().map(|v| v.powf(q)).collect();
    let lhs = ArcSweep::new(a, alpha).sum_integral(&powered)?;
    let rhs = compensated_sum(
        a.iter()
            .zip(&powered)
            .map(|(z, v)| v * stolz_arc(z, alpha).measure()),
    );
    let scale = lhs.abs().max(rhs.abs());
    let relative_error = if scale == 0.0 { 0.0 } else { (lhs - rhs).abs() / scale };
    Ok(IdentityCheck {
        lhs,
        rhs,
        relative_error,
    })
}

/// Measure of `{θ : ∃ z ∈ a, |z| ≥ 1 - 1/N, z ∈ Γ_α(e^{iθ})}`.
///
/// Radii within a few ulps of the threshold count as qualifying, since
/// `|z|` is only known to rounding.
pub fn nt_coverage(a: &PointSet, alpha: Aperture, depth: u32) -> Result<f64> {
    if depth == 0 {
        return Err(Error::Precondition("coverage depth N must be >= 1".into()));
    }
    let threshold = 1.0 - 1.0 / depth as f64 - 4.0 * f64::EPSILON;
    let arcs: Vec<_> = a
        .iter()
        .filter(|z| z.modulus() >= threshold)
        .map(|z| stolz_arc(z, alpha))
        .collect();
    Ok(arc_union_measure(&arcs))
}
