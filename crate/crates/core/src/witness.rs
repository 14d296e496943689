//! Explicit constructions: the gap outer function `ω_A` and the witnesses
//! `z^n ω_A^n`, the harmonic-measure floor off the Stolz star, the
//! accumulating sequence with its Chebyshev certificate, and clusters around
//! Blaschke zeros.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boundary::{compensated_sum, log_integral, BoundaryData};
use crate::error::{Error, Result};
use crate::function::FunctionSpec;
use crate::geometry::{outside_stolz_star, Aperture, ArcSet, DiskPoint};
use crate::points::PointSet;

/// Arc sets this close to empty or to the full circle count as degenerate.
const DEGENERATE_MEASURE: f64 = 1e-12;

/// `ω_A = exp(-H[1 - 𝟙_A])`: boundary modulus 1 on `A` and `e^{-1}` off it.
pub fn outer_from_gap(a: &ArcSet) -> Result<FunctionSpec> {
    let m = a.measure();
    if m <= DEGENERATE_MEASURE || m >= TAU - DEGENERATE_MEASURE {
        return Err(Error::InvalidArc(format!(
            "gap set must have measure strictly between 0 and 2pi, got {m}"
        )));
    }
    FunctionSpec::outer(BoundaryData::indicator(a, 0.0, -1.0))
}

/// `f_n = z^n ω_A^n`.
pub fn gap_witness_family(a: &ArcSet, n: u32) -> Result<FunctionSpec> {
    if n == 0 {
        return Err(Error::Precondition("witness index n must be >= 1".into()));
    }
    Ok(FunctionSpec::monomial(n).times(outer_from_gap(a)?.pow(n)?))
}

/// Empirical lower bound for `-log|ω_A|` off the Stolz star of `A`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FloorEstimate {
    pub floor: f64,
    pub argmin: DiskPoint,
    /// Samples that fell outside the star and entered the minimum.
    pub accepted: usize,
    pub attempted: usize,
    pub strata: u32,
}

/// Number of depth strata `1 - |z| = 2^{-k}`, `k = 1..=STRATA`.
pub const FLOOR_STRATA: u32 = 20;

/// Minimum of `-log|ω_A(z)|` over seeded random `z` outside the Stolz star,
/// stratified by depth `1 - |z| = 2^{-k}`.
pub fn harmonic_measure_floor(
    a: &ArcSet,
    alpha: Aperture,
    sample_budget: usize,
    seed: u64,
) -> Result<FloorEstimate> {
    let omega = outer_from_gap(a)?;
    let per_stratum = sample_budget.div_ceil(FLOOR_STRATA as usize).max(1);
    let max_attempts = 1000 * per_stratum;
    let mut rng = crate::rng(seed);
    let mut accepted = Vec::new();
    let mut attempted = 0usize;
    for k in 1..=FLOOR_STRATA {
        let radius = 1.0 - 0.5f64.powi(k as i32);
        let mut got = 0usize;
        let mut tries = 0usize;
        while got < per_stratum && tries < max_attempts {
            tries += 1;
            let z = DiskPoint::from_polar(radius, TAU * rng.gen::<f64>())?;
            if outside_stolz_star(&z, a, alpha) {
                accepted.push(z);
                got += 1;
            }
        }
        attempted += tries;
    }
    if accepted.is_empty() {
        return Err(Error::Precondition(
            "no samples outside the Stolz star; the gap set leaves no room".into(),
        ));
    }
    let values: Vec<f64> = accepted
        .par_iter()
        .map(|z| omega.log_abs(z).map(|v| -v))
        .collect::<Result<_>>()?;
    let (i, floor) = values
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::INFINITY), |best, (i, v)| if v < best.1 { (i, v) } else { best });
    Ok(FloorEstimate {
        floor,
        argmin: accepted[i],
        accepted: accepted.len(),
        attempted,
        strata: FLOOR_STRATA,
    })
}

#[derive(Deserialize)]
struct RawProp3Params {
    n_min: u32,
    schedule: Vec<u64>,
}

/// A finite truncation `n = n_min..=n_max` of the schedule `p_n`, with
/// `γ_n = 2ⁿ/(2p_n)`, `ℓ_n = p_n^{-1}|log γ_n|^{-1/2}` and
/// `r_n = (1 - 2^{-n})^{1/2}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawProp3Params")]
pub struct Prop3Params {
    n_min: u32,
    /// `schedule[i] = p_{n_min + i}`.
    schedule: Vec<u64>,
}

impl TryFrom<RawProp3Params> for Prop3Params {
    type Error = Error;

    fn try_from(raw: RawProp3Params) -> Result<Self> {
        Prop3Params::with_schedule(raw.n_min, raw.schedule)
    }
}

/// Largest generation accepted; keeps the rings representable and the
/// point counts at desk scale.
pub const PROP3_MAX_GENERATION: u32 = 24;

impl Prop3Params {
    /// The default schedule `p_n = n·2ⁿ`, so `γ_n = 1/(2n)`.
    pub fn n_two_n(n_min: u32, n_max: u32) -> Result<Self> {
        if n_min == 0 || n_max < n_min || n_max > PROP3_MAX_GENERATION {
            return Err(Error::InvalidSchedule(format!(
                "generations {n_min}..={n_max} must satisfy 1 <= n_min <= n_max <= {PROP3_MAX_GENERATION}"
            )));
        }
        Self::with_schedule(n_min, (n_min..=n_max).map(|n| n as u64 * (1u64 << n)).collect())
    }

    pub fn with_schedule(n_min: u32, schedule: Vec<u64>) -> Result<Self> {
        if n_min == 0 || schedule.is_empty() {
            return Err(Error::InvalidSchedule("need n_min >= 1 and a nonempty schedule".into()));
        }
        let n_max = n_min as u64 + schedule.len() as u64 - 1;
        if n_max > PROP3_MAX_GENERATION as u64 {
            return Err(Error::InvalidSchedule(format!(
                "generation {n_max} exceeds {PROP3_MAX_GENERATION}"
            )));
        }
        let params = Prop3Params { n_min, schedule };
        let mut prev_ratio = 0.0;
        for n in params.generations() {
            let p = params.p(n);
            if p == 0 {
                return Err(Error::InvalidSchedule(format!("p_{n} must be positive")));
            }
            let ratio = p as f64 / 2f64.powi(n as i32);
            if ratio <= prev_ratio {
                return Err(Error::InvalidSchedule(format!(
                    "2^-n p_n must increase strictly, fails at n = {n}"
                )));
            }
            prev_ratio = ratio;
            if params.gamma(n) >= 1.0 {
                return Err(Error::InvalidSchedule(format!("gamma_{n} = {} is not < 1", params.gamma(n))));
            }
            if params.span(n) > TAU {
                return Err(Error::InvalidSchedule(format!("span of generation {n} exceeds 2pi")));
            }
        }
        Ok(params)
    }

    pub fn n_min(&self) -> u32 {
        self.n_min
    }

    pub fn n_max(&self) -> u32 {
        self.n_min + self.schedule.len() as u32 - 1
    }

    pub fn generations(&self) -> std::ops::RangeInclusive<u32> {
        self.n_min..=self.n_max()
    }

    pub fn contains(&self, n: u32) -> bool {
        self.generations().contains(&n)
    }

    pub fn p(&self, n: u32) -> u64 {
        self.schedule[(n - self.n_min) as usize]
    }

    pub fn gamma(&self, n: u32) -> f64 {
        2f64.powi(n as i32) / (2.0 * self.p(n) as f64)
    }

    pub fn ell(&self, n: u32) -> f64 {
        1.0 / (self.p(n) as f64 * self.gamma(n).ln().abs().sqrt())
    }

    pub fn radius(&self, n: u32) -> f64 {
        (1.0 - 0.5f64.powi(n as i32)).sqrt()
    }

    /// `p_n ℓ_n = |log γ_n|^{-1/2}`.
    pub fn span(&self, n: u32) -> f64 {
        self.p(n) as f64 * self.ell(n)
    }

    /// `a_{n,k} = r_n e^{ikℓ_n}`.
    pub fn point(&self, n: u32, k: u64) -> Result<DiskPoint> {
        DiskPoint::from_polar(self.radius(n), k as f64 * self.ell(n))
    }
}

/// Points `a_{n,k}`, `k = 0..=p_n`, labeled by generation, with the exact
/// weight `2^{-n}`.
pub fn prop3_pointset(params: &Prop3Params) -> Result<PointSet> {
    let mut set = PointSet::default();
    for n in params.generations() {
        let weight = 0.5f64.powi(n as i32);
        for k in 0..=params.p(n) {
            set.push_weighted(params.point(n, k)?, Some(n), weight)?;
        }
    }
    Ok(set)
}

/// For each zero `b_n`, `q_n` points equispaced on the circle of radius
/// `(1 - |b_n|²)²/(2q_n)` about `b_n`.
pub fn cluster_pointset(zeros: &[DiskPoint], q: &[u32]) -> Result<PointSet> {
    if zeros.len() != q.len() {
        return Err(Error::InvalidPointSet(format!(
            "{} zeros but {} cluster sizes",
            zeros.len(),
            q.len()
        )));
    }
    let mut set = PointSet::default();
    for (i, (b, &qn)) in zeros.iter().zip(q).enumerate() {
        if qn == 0 {
            return Err(Error::InvalidPointSet("cluster sizes must be >= 1".into()));
        }
        let w = b.weight();
        let radius = w * w / (2.0 * qn as f64);
        if b.modulus() + radius >= 1.0 {
            return Err(Error::InvalidPointSet(format!(
                "cluster around zero {i} would leave the disk"
            )));
        }
        for j in 0..qn {
            let offset = Complex64::from_polar(radius, TAU * j as f64 / qn as f64);
            set.push(DiskPoint::from_complex(b.to_complex() + offset)?, Some(i as u32 + 1));
        }
    }
    Ok(set)
}

/// `g / sup|g*|` when the boundary bound exceeds one; the scale is returned.
pub fn normalize_bounded(g: &FunctionSpec) -> Result<(FunctionSpec, f64)> {
    let sup = g.sup_bound();
    if !sup.is_finite() || sup <= 0.0 {
        return Err(Error::InvalidFunction(format!("boundary bound {sup} is not usable")));
    }
    if sup <= 1.0 {
        return Ok((g.clone(), 1.0));
    }
    let scale = 1.0 / sup;
    Ok((
        g.clone().times(FunctionSpec::constant(Complex64::new(scale, 0.0))?),
        scale,
    ))
}

/// The Chebyshev step for one generation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub n: u32,
    pub p_n: u64,
    pub gamma: f64,
    pub ell: f64,
    pub radius: f64,
    /// `2^{-n} Σ_{k=1}^{p_n} |g(a_{n,k})|`.
    pub s_n: f64,
    /// `#A_n = #{k ∈ 1..=p_n : |g(a_{n,k})| ≥ γ_n}`, counted.
    pub count: u64,
    /// `2ⁿ s_n / γ_n`.
    pub chebyshev_count_bound: f64,
    /// `s_n ≤ 1/4`.
    pub premise: bool,
    /// `#A'_n · ℓ_n`, the length of the `J`-arcs over small values.
    pub covered_measure: f64,
    /// `log(γ_n + 2·2ⁿℓ_n)`.
    pub per_point_log_bound: f64,
    /// `covered_measure · min(per_point_log_bound, 0) / 2π`, comparable with
    /// the normalized log-integral; absent when the premise fails.
    pub integral_upper_bound: Option<f64>,
    /// `-|log γ_n|^{1/2}`.
    pub target_rate: f64,
}

/// Premise threshold on `s_n`.
pub const PREMISE_THRESHOLD: f64 = 0.25;

/// Constant in the arc smoothness bound `|g(r_n e^{iθ}) - g(a_{n,k})| ≤ C 2ⁿ ℓ_n`.
pub const SMOOTHNESS_CONSTANT: f64 = 2.0;

/// Certificate for generation `n`. `g` must satisfy `sup |g| ≤ 1`; see
/// [`normalize_bounded`].
pub fn chebyshev_certificate(g: &FunctionSpec, params: &Prop3Params, n: u32) -> Result<CertificateRecord> {
    if !params.contains(n) {
        return Err(Error::Precondition(format!("generation {n} is outside the truncation")));
    }
    let sup = g.sup_bound();
    if sup > 1.0 + 1e-12 {
        return Err(Error::Precondition(format!("sup |g| = {sup} exceeds 1")));
    }
    let p_n = params.p(n);
    let gamma = params.gamma(n);
    let ell = params.ell(n);
    let values: Vec<f64> = (1..=p_n)
        .into_par_iter()
        .map(|k| g.modulus(&params.point(n, k)?))
        .collect::<Result<_>>()?;
    let two_n = 2f64.powi(n as i32);
    let s_n = compensated_sum(values.iter().copied()) / two_n;
    let count = values.iter().filter(|&&v| v >= gamma).count() as u64;
    let premise = s_n <= PREMISE_THRESHOLD;
    let covered_measure = (p_n - count) as f64 * ell;
    let per_point_log_bound = (gamma + SMOOTHNESS_CONSTANT * two_n * ell).ln();
    let integral_upper_bound =
        premise.then(|| covered_measure * per_point_log_bound.min(0.0) / TAU);
    Ok(CertificateRecord {
        n,
        p_n,
        gamma,
        ell,
        radius: params.radius(n),
        s_n,
        count,
        chebyshev_count_bound: two_n * s_n / gamma,
        premise,
        covered_measure,
        per_point_log_bound,
        integral_upper_bound,
        target_rate: -gamma.ln().abs().sqrt(),
    })
}

/// Largest deviation of `g` on the circle of radius `r_n` over
/// `J(a_{n,k}) = ((k - 1/2)ℓ_n, (k + 1/2)ℓ_n)` from its value at `a_{n,k}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArcSmoothness {
    pub n: u32,
    pub k: u64,
    pub max_deviation: f64,
    pub bound: f64,
}

pub fn arc_smoothness(
    g: &FunctionSpec,
    params: &Prop3Params,
    n: u32,
    k: u64,
    scan: usize,
) -> Result<ArcSmoothness> {
    if !params.contains(n) || k == 0 || k > params.p(n) || scan < 2 {
        return Err(Error::Precondition(format!("no J-arc for n = {n}, k = {k}")));
    }
    let ell = params.ell(n);
    let r = params.radius(n);
    let center = g.eval(&params.point(n, k)?)?;
    let mut max_deviation = 0.0f64;
    for j in 0..=scan {
        let t = (k as f64 - 0.5 + j as f64 / scan as f64) * ell;
        let v = g.eval(&DiskPoint::from_polar(r, t)?)?;
        max_deviation = max_deviation.max((v - center).norm());
    }
    Ok(ArcSmoothness {
        n,
        k,
        max_deviation,
        bound: SMOOTHNESS_CONSTANT * 2f64.powi(n as i32) * ell,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivergenceRow {
    pub certificate: CertificateRecord,
    /// `∫ log|g(r_n e^{iθ})| dθ/2π`.
    pub measured_log_integral: f64,
}

impl DivergenceRow {
    /// The measured integral respects the certificate, or the premise fails.
    pub fn is_sound(&self, tolerance: f64) -> bool {
        match self.certificate.integral_upper_bound {
            Some(bound) => self.measured_log_integral <= bound + tolerance,
            None => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivergenceReport {
    pub rows: Vec<DivergenceRow>,
    pub tolerance: f64,
    /// Every row with the premise satisfies its certificate.
    pub sound: bool,
    /// `s_n` strictly decreasing across the truncation, the finite sign of
    /// a summable sequence.
    pub summable: bool,
}

/// Certificates and measured log-integrals for every generation.
pub fn divergence_report(g: &FunctionSpec, params: &Prop3Params, tolerance: f64) -> Result<DivergenceReport> {
    let mut rows = Vec::new();
    for n in params.generations() {
        let certificate = chebyshev_certificate(g, params, n)?;
        let measured_log_integral = log_integral(g, certificate.radius)?;
        rows.push(DivergenceRow {
            certificate,
            measured_log_integral,
        });
    }
    let sound = rows.iter().all(|r| r.is_sound(tolerance));
    let summable = rows
        .windows(2)
        .all(|w| w[1].certificate.s_n < w[0].certificate.s_n);
    Ok(DivergenceReport {
        rows,
        tolerance,
        sound,
        summable,
    })
}
