//! Structured Hardy-space functions: finite products of monomials, Blaschke
//! products, outer functions, point-mass singular inner functions and
//! constants, each raised to a positive integer power.
//!
//! The boundary modulus of every factor is known exactly, so `H^p` norms are
//! computed from boundary data rather than from radial limits.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::boundary::{
    compensated_sum, herglotz_derivative, herglotz_transform, poisson_extension, BoundaryData,
    Exponent, DEFAULT_GRID,
};
use crate::error::{Error, Result};
use crate::geometry::DiskPoint;

const MAX_CIRCLE_NODES: usize = 1 << 22;

/// One canonical factor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Factor {
    /// `z^degree`.
    Monomial { degree: u32 },
    /// `Π (|a|/a)(a - z)/(1 - āz)`, with `z` for a zero at the origin.
    Blaschke { zeros: Vec<DiskPoint> },
    /// `exp(∫ (e^{iθ}+z)/(e^{iθ}-z) u(θ) dθ/2π)`; boundary log-modulus `u`.
    Outer { data: BoundaryData },
    /// `exp(-mass (ζ+z)/(ζ-z))` with `ζ = e^{i angle}`.
    SingularInner { angle: f64, mass: f64 },
    /// A nonzero constant.
    Constant { re: f64, im: f64 },
}

impl Factor {
    /// Monomials, Blaschke products and singular inner factors.
    pub fn is_inner(&self) -> bool {
        matches!(
            self,
            Factor::Monomial { .. } | Factor::Blaschke { .. } | Factor::SingularInner { .. }
        )
    }

    fn validate(&self) -> Result<()> {
        match self {
            Factor::Monomial { .. } | Factor::Blaschke { .. } => Ok(()),
            Factor::Outer { data } => data.validate(),
            Factor::SingularInner { angle, mass } => {
                if !angle.is_finite() || !(mass.is_finite() && *mass > 0.0) {
                    return Err(Error::InvalidFunction(format!(
                        "singular inner factor needs finite angle and mass > 0, got ({angle}, {mass})"
                    )));
                }
                Ok(())
            }
            Factor::Constant { re, im } => {
                let c = Complex64::new(*re, *im);
                if !(c.re.is_finite() && c.im.is_finite()) || c.norm() == 0.0 {
                    return Err(Error::InvalidFunction(
                        "constant factor must be finite and nonzero".into(),
                    ));
                }
                Ok(())
            }
        }
    }
}

fn one() -> u32 {
    1
}

/// A factor raised to an integer power `≥ 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoweredFactor {
    #[serde(flatten)]
    pub factor: Factor,
    #[serde(default = "one")]
    pub power: u32,
}

#[derive(Deserialize)]
struct RawSpec {
    factors: Vec<PoweredFactor>,
}

/// A finite product of powered canonical factors. The empty product is `1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpec")]
pub struct FunctionSpec {
    factors: Vec<PoweredFactor>,
}

impl TryFrom<RawSpec> for FunctionSpec {
    type Error = Error;

    fn try_from(raw: RawSpec) -> Result<Self> {
        FunctionSpec::new(raw.factors)
    }
}

/// Per-factor value, derivative and multiplicity for the product rule.
struct Elementary {
    value: Complex64,
    derivative: Complex64,
    power: u32,
}

impl FunctionSpec {
    pub fn new(factors: Vec<PoweredFactor>) -> Result<Self> {
        for pf in &factors {
            if pf.power == 0 {
                return Err(Error::InvalidFunction("factor powers must be >= 1".into()));
            }
            pf.factor.validate()?;
        }
        Ok(FunctionSpec { factors })
    }

    pub fn one() -> Self {
        FunctionSpec {
            factors: Vec::new(),
        }
    }

    fn single(factor: Factor) -> Result<Self> {
        FunctionSpec::new(vec![PoweredFactor { factor, power: 1 }])
    }

    pub fn monomial(degree: u32) -> Self {
        FunctionSpec::single(Factor::Monomial { degree }).expect("valid monomial")
    }

    pub fn blaschke(zeros: Vec<DiskPoint>) -> Self {
        FunctionSpec::single(Factor::Blaschke { zeros }).expect("valid Blaschke product")
    }

    pub fn outer(data: BoundaryData) -> Result<Self> {
        FunctionSpec::single(Factor::Outer { data })
    }

    pub fn singular_inner(angle: f64, mass: f64) -> Result<Self> {
        FunctionSpec::single(Factor::SingularInner { angle, mass })
    }

    pub fn constant(c: Complex64) -> Result<Self> {
        FunctionSpec::single(Factor::Constant { re: c.re, im: c.im })
    }

    pub fn factors(&self) -> &[PoweredFactor] {
        &self.factors
    }

    /// Product of two specs (factor lists are concatenated).
    pub fn times(mut self, other: FunctionSpec) -> Self {
        self.factors.extend(other.factors);
        self
    }

    /// Raise to an integer power `k ≥ 1` by scaling every factor's power.
    pub fn pow(mut self, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidFunction("power must be >= 1".into()));
        }
        for pf in &mut self.factors {
            pf.power *= k;
        }
        Ok(self)
    }

    /// Structured factors never vanish identically.
    pub fn is_zero(&self) -> bool {
        false
    }

    /// Short human label, e.g. `z^3*B[2]*O^2`.
    pub fn label(&self) -> String {
        if self.factors.is_empty() {
            return "1".into();
        }
        self.factors
            .iter()
            .map(|pf| {
                let base = match &pf.factor {
                    Factor::Monomial { degree } => format!("z{degree}"),
                    Factor::Blaschke { zeros } => format!("B[{}]", zeros.len()),
                    Factor::Outer { data } if data.is_piecewise() => "O".to_string(),
                    Factor::Outer { .. } => "Os".to_string(),
                    Factor::SingularInner { mass, .. } => format!("S[{mass}]"),
                    Factor::Constant { re, im } => format!("c[{}]", Complex64::new(*re, *im).norm()),
                };
                if pf.power == 1 {
                    base
                } else {
                    format!("{base}^{}", pf.power)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// `f(z)`, assembled as `exp(Σ power · log factor)` so that large powers
    /// neither overflow nor lose relative accuracy; exact zero at zeros.
    pub fn eval(&self, z: &DiskPoint) -> Result<Complex64> {
        let zc = z.to_complex();
        let mut log_sum = Complex64::new(0.0, 0.0);
        for pf in &self.factors {
            let k = pf.power as f64;
            match &pf.factor {
                Factor::Monomial { degree } => {
                    if *degree == 0 {
                        continue;
                    }
                    if zc.norm() == 0.0 {
                        return Ok(Complex64::new(0.0, 0.0));
                    }
                    log_sum += zc.ln() * (k * *degree as f64);
                }
                Factor::Blaschke { zeros } => {
                    for a in zeros {
                        let b = blaschke_factor(a, zc);
                        if b.norm() == 0.0 {
                            return Ok(Complex64::new(0.0, 0.0));
                        }
                        log_sum += b.ln() * k;
                    }
                }
                Factor::Outer { data } => log_sum += herglotz_transform(data, z)? * k,
                Factor::SingularInner { angle, mass } => {
                    let zeta = Complex64::from_polar(1.0, *angle);
                    log_sum += -(zeta + zc) / (zeta - zc) * (*mass * k);
                }
                Factor::Constant { re, im } => log_sum += Complex64::new(*re, *im).ln() * k,
            }
        }
        Ok(log_sum.exp())
    }

    /// `log|f(z)|`, `-∞` exactly at zeros. Outer factors contribute their
    /// Poisson integral directly.
    pub fn log_abs(&self, z: &DiskPoint) -> Result<f64> {
        let zc = z.to_complex();
        let w = z.weight();
        let mut acc = 0.0;
        for pf in &self.factors {
            let k = pf.power as f64;
            match &pf.factor {
                Factor::Monomial { degree } => {
                    if *degree > 0 {
                        acc += k * *degree as f64 * zc.norm().ln();
                    }
                }
                Factor::Blaschke { zeros } => {
                    for a in zeros {
                        let ac = a.to_complex();
                        let denom = (Complex64::new(1.0, 0.0) - ac.conj() * zc).norm_sqr();
                        // |b_a(z)|² = 1 - (1-|a|²)(1-|z|²)/|1-āz|²
                        let t = a.weight() * w / denom;
                        acc += if t >= 1.0 {
                            f64::NEG_INFINITY
                        } else {
                            0.5 * k * (-t).ln_1p()
                        };
                    }
                }
                Factor::Outer { data } => acc += k * poisson_extension(data, z)?,
                Factor::SingularInner { angle, mass } => {
                    let zeta = Complex64::from_polar(1.0, *angle);
                    acc -= k * mass * w / (zeta - zc).norm_sqr();
                }
                Factor::Constant { re, im } => acc += k * Complex64::new(*re, *im).norm().ln(),
            }
        }
        Ok(acc)
    }

    /// `|f(z)|` through [`FunctionSpec::log_abs`].
    pub fn modulus(&self, z: &DiskPoint) -> Result<f64> {
        Ok(self.log_abs(z)?.exp())
    }

    /// Total boundary log-modulus: outer data and constants; inner factors
    /// are unimodular almost everywhere.
    pub fn boundary_log_data(&self) -> BoundaryData {
        let mut constant = 0.0;
        let mut outer: Option<BoundaryData> = None;
        for pf in &self.factors {
            let k = pf.power as f64;
            match &pf.factor {
                Factor::Outer { data } => {
                    let scaled = data.scale(k);
                    outer = Some(match outer {
                        Some(acc) => acc.add(&scaled),
                        None => scaled,
                    });
                }
                Factor::Constant { re, im } => constant += k * Complex64::new(*re, *im).norm().ln(),
                _ => {}
            }
        }
        match outer {
            Some(data) => data.add(&BoundaryData::constant(constant)),
            None => BoundaryData::constant(constant),
        }
    }

    /// `log|f*(e^{iθ})|` at almost every boundary point.
    pub fn boundary_log_abs(&self, theta: f64) -> f64 {
        self.factors
            .iter()
            .map(|pf| {
                let k = pf.power as f64;
                match &pf.factor {
                    Factor::Outer { data } => k * data.value_at(theta),
                    Factor::Constant { re, im } => k * Complex64::new(*re, *im).norm().ln(),
                    _ => 0.0,
                }
            })
            .sum()
    }

    /// `‖f‖_p` from the exact boundary modulus.
    pub fn hp_norm(&self, p: Exponent) -> f64 {
        let data = self.boundary_log_data();
        if p.is_infinite() {
            return data.ess_sup().exp();
        }
        let q = p.value();
        data.mean_of(|v| (q * v).exp()).powf(1.0 / q)
    }

    /// Upper bound for `sup |f|` on the disk: `exp(ess sup log|f*|)`.
    pub fn sup_bound(&self) -> f64 {
        self.hp_norm(Exponent::INFINITY)
    }

    fn elementary(&self, z: &DiskPoint) -> Result<Vec<Elementary>> {
        let zc = z.to_complex();
        let mut out = Vec::new();
        for pf in &self.factors {
            match &pf.factor {
                Factor::Monomial { degree } => {
                    if *degree > 0 {
                        out.push(Elementary {
                            value: zc,
                            derivative: Complex64::new(1.0, 0.0),
                            power: pf.power * degree,
                        });
                    }
                }
                Factor::Blaschke { zeros } => {
                    for a in zeros {
                        out.push(Elementary {
                            value: blaschke_factor(a, zc),
                            derivative: blaschke_factor_derivative(a, zc),
                            power: pf.power,
                        });
                    }
                }
                Factor::Outer { data } => {
                    let value = herglotz_transform(data, z)?.exp();
                    out.push(Elementary {
                        value,
                        derivative: value * herglotz_derivative(data, z)?,
                        power: pf.power,
                    });
                }
                Factor::SingularInner { angle, mass } => {
                    let zeta = Complex64::from_polar(1.0, *angle);
                    let value = (-(zeta + zc) / (zeta - zc) * *mass).exp();
                    let d = zeta - zc;
                    out.push(Elementary {
                        value,
                        derivative: value * (-2.0 * *mass) * zeta / (d * d),
                        power: pf.power,
                    });
                }
                Factor::Constant { re, im } => out.push(Elementary {
                    value: Complex64::new(*re, *im),
                    derivative: Complex64::new(0.0, 0.0),
                    power: pf.power,
                }),
            }
        }
        Ok(out)
    }

    /// `f'(z)` by per-factor derivatives and the product rule; zeros are
    /// handled without logarithmic differentiation.
    pub fn eval_derivative(&self, z: &DiskPoint) -> Result<Complex64> {
        let parts = self.elementary(z)?;
        let n = parts.len();
        let powered: Vec<Complex64> = parts
            .iter()
            .map(|e| e.value.powu(e.power))
            .collect();
        let mut prefix = vec![Complex64::new(1.0, 0.0); n + 1];
        for i in 0..n {
            prefix[i + 1] = prefix[i] * powered[i];
        }
        let mut suffix = vec![Complex64::new(1.0, 0.0); n + 1];
        for i in (0..n).rev() {
            suffix[i] = suffix[i + 1] * powered[i];
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, e) in parts.iter().enumerate() {
            if e.derivative.norm() == 0.0 {
                continue;
            }
            let local = e.value.powu(e.power - 1) * e.derivative * e.power as f64;
            acc += local * prefix[i] * suffix[i + 1];
        }
        Ok(acc)
    }

    /// Number of equispaced nodes that resolves `f` on the circle of radius
    /// `r`: features of width `~(1 - r)` near boundary singularities, and of
    /// width `~|r - |a||` near zeros.
    pub fn circle_nodes(&self, r: f64) -> usize {
        let mut need = DEFAULT_GRID as f64;
        for pf in &self.factors {
            match &pf.factor {
                Factor::Outer { data } if data.is_piecewise() => need = need.max(32.0 / (1.0 - r)),
                Factor::Outer { data: BoundaryData::Sampled(s) } => {
                    need = need.max(s.grid_size as f64)
                }
                Factor::SingularInner { .. } => need = need.max(32.0 / (1.0 - r)),
                Factor::Blaschke { zeros } => {
                    for a in zeros {
                        let d = (r - a.modulus()).abs();
                        if d > 0.0 {
                            need = need.max(32.0 / d);
                        }
                    }
                }
                _ => {}
            }
        }
        let need = need.min(MAX_CIRCLE_NODES as f64).ceil() as usize;
        need.next_power_of_two()
    }

    /// Normalized `L^p` means of `|f|` on the circles `r_k = 1 - 2^{-k}`,
    /// the radial route to the norm that [`FunctionSpec::hp_norm`] computes on
    /// the boundary.
    pub fn radial_means(&self, p: Exponent, ks: &[u32]) -> Result<Vec<(f64, f64)>> {
        use rayon::prelude::*;
        ks.iter()
            .map(|&k| {
                let r = 1.0 - 0.5f64.powi(k as i32);
                let n = self.circle_nodes(r);
                let values: Vec<f64> = (0..n)
                    .into_par_iter()
                    .map(|j| self.modulus(&DiskPoint::from_polar(r, TAU * j as f64 / n as f64)?))
                    .collect::<Result<_>>()?;
                Ok((r, crate::boundary::lp_mean(&values, p)))
            })
            .collect()
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// `b_a(z) = (|a|/a)(a - z)/(1 - āz)`, and `b_0(z) = z`.
pub fn blaschke_factor(a: &DiskPoint, z: Complex64) -> Complex64 {
    let ac = a.to_complex();
    let r = ac.norm();
    if r == 0.0 {
        return z;
    }
    // |a|/a = ā/|a|
    (ac.conj() / r) * (ac - z) / (Complex64::new(1.0, 0.0) - ac.conj() * z)
}

/// `b_a'(z) = (|a|/a)(|a|² - 1)/(1 - āz)²`, and `1` for `a = 0`.
pub fn blaschke_factor_derivative(a: &DiskPoint, z: Complex64) -> Complex64 {
    let ac = a.to_complex();
    let r = ac.norm();
    if r == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    let d = Complex64::new(1.0, 0.0) - ac.conj() * z;
    (ac.conj() / r) * (r * r - 1.0) / (d * d)
}

/// `Σ (1 - |a_k|)`.
pub fn blaschke_condition_sum(zeros: &[DiskPoint]) -> f64 {
    compensated_sum(zeros.iter().map(|a| a.depth()))
}

/// Stable `log(1 + e^x)`.
fn softplus(x: f64) -> f64 {
    x.max(0.0) + (-x.abs()).exp().ln_1p()
}

/// Every stage of the transform taking `f ∈ H^p ∩ L^p(μ)` to a bounded `g`
/// with `Σ (1-|z|²)|g(z)| ≤ Σ (1-|z|²)|f(z)|^p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformRecord {
    pub input: FunctionSpec,
    pub p: Exponent,
    /// Boundary values `m = |f*|^p` of the least harmonic majorant.
    pub majorant_data: BoundaryData,
    /// Boundary log-modulus `log(1 + m)` of `e^H`.
    pub h_data: BoundaryData,
    /// `f₁ = e^{-H/p} f`.
    pub f1: FunctionSpec,
    /// `g = f₁` for `p ≤ 1`, else `B^{⌊p⌋+1} (e^h)^p`.
    pub g: FunctionSpec,
    pub inner_power: u32,
}

/// Build `f₁ = e^{-H/p} f` and `g`, with `H` the outer function whose
/// boundary log-modulus is `log(1 + |f*|^p)`.
///
/// For `p > 1` the factorization `f₁ = B e^h` is read off the structure: `B`
/// collects the inner factors (singular inner ones included), `e^h` the outer
/// factors and constants.
pub fn lemma2_transform(f: &FunctionSpec, p: Exponent) -> Result<TransformRecord> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    if p.is_infinite() {
        return Err(Error::InvalidExponent(p.value()));
    }
    let q = p.value();
    let log_data = f.boundary_log_data();
    let majorant_data = log_data.map(|v| (q * v).exp());
    let h_data = log_data.map(|v| softplus(q * v));
    let damping = FunctionSpec::outer(h_data.scale(-1.0 / q))?;
    let f1 = f.clone().times(damping);

    let (g, inner_power) = if q <= 1.0 {
        (f1.clone(), 1)
    } else {
        let k = q.floor() as u32 + 1;
        let mut factors = Vec::with_capacity(f1.factors.len());
        for pf in &f1.factors {
            let scale = q * pf.power as f64;
            let powered = match &pf.factor {
                inner if inner.is_inner() => PoweredFactor {
                    factor: inner.clone(),
                    power: pf.power * k,
                },
                Factor::Outer { data } => PoweredFactor {
                    factor: Factor::Outer {
                        data: data.scale(scale),
                    },
                    power: 1,
                },
                Factor::Constant { re, im } => {
                    let c = (Complex64::new(*re, *im).ln() * scale).exp();
                    PoweredFactor {
                        factor: Factor::Constant { re: c.re, im: c.im },
                        power: 1,
                    }
                }
                _ => unreachable!("inner factors handled above"),
            };
            factors.push(powered);
        }
        (FunctionSpec::new(factors)?, k)
    };

    Ok(TransformRecord {
        input: f.clone(),
        p,
        majorant_data,
        h_data,
        f1,
        g,
        inner_power,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Arc, ArcSet};
    use std::f64::consts::PI;

    fn pt(re: f64, im: f64) -> DiskPoint {
        DiskPoint::new(re, im).unwrap()
    }

    fn omega_upper() -> FunctionSpec {
        let a = ArcSet::single(Arc::new(PI / 2.0, PI / 2.0).unwrap());
        FunctionSpec::outer(BoundaryData::indicator(&a, 0.0, -1.0)).unwrap()
    }

    #[test]
    fn eval_examples() {
        let v = FunctionSpec::monomial(3).eval(&pt(0.5, 0.0)).unwrap();
        assert!((v - Complex64::new(0.125, 0.0)).norm() < 1e-15);
        let b = FunctionSpec::blaschke(vec![pt(0.5, 0.0)]);
        assert_eq!(b.eval(&pt(0.5, 0.0)).unwrap().norm(), 0.0);
        let o = FunctionSpec::outer(BoundaryData::constant(0.0)).unwrap();
        assert!((o.eval(&pt(-0.3, 0.8)).unwrap() - 1.0).norm() < 1e-15);
    }

    #[test]
    fn log_abs_examples() {
        let v = FunctionSpec::monomial(4).log_abs(&pt(0.6, 0.0)).unwrap();
        assert!((v - 4.0 * 0.6f64.ln()).abs() < 1e-15);
        let s = FunctionSpec::singular_inner(0.0, 1.0).unwrap();
        assert!((s.log_abs(&DiskPoint::ORIGIN).unwrap() + 1.0).abs() < 1e-15);
        assert!((omega_upper().log_abs(&DiskPoint::ORIGIN).unwrap() + 0.5).abs() < 1e-15);
        let b = FunctionSpec::blaschke(vec![pt(0.1, 0.2)]);
        assert_eq!(b.log_abs(&pt(0.1, 0.2)).unwrap(), f64::NEG_INFINITY);
    }

    #[test]
    fn boundary_modulus_examples() {
        let b = FunctionSpec::blaschke(vec![pt(0.1, 0.2), pt(-0.5, 0.0)]);
        assert_eq!(b.boundary_log_abs(1.234), 0.0);
        let w = omega_upper();
        assert_eq!(w.boundary_log_abs(PI / 2.0), 0.0);
        assert_eq!(w.boundary_log_abs(1.5 * PI), -1.0);
    }

    #[test]
    fn radial_limit_approaches_boundary_modulus() {
        let w = omega_upper();
        for (theta, target) in [(PI / 2.0, 0.0), (1.5 * PI, -1.0)] {
            let mut prev = f64::INFINITY;
            for k in [4, 8, 12, 16, 20] {
                let r = 1.0 - 0.5f64.powi(k);
                let v = w.log_abs(&DiskPoint::from_polar(r, theta).unwrap()).unwrap();
                let gap = (v - target).abs();
                assert!(gap <= prev);
                prev = gap;
            }
            assert!(prev < 1e-5);
        }
    }

    #[test]
    fn hp_norm_examples() {
        for p in [0.5, 1.0, 2.0, 3.0] {
            let p = Exponent::new(p).unwrap();
            assert!((FunctionSpec::monomial(5).hp_norm(p) - 1.0).abs() < 1e-15);
            let b = FunctionSpec::blaschke(vec![pt(0.3, 0.3), pt(0.0, -0.9)]);
            assert!((b.hp_norm(p) - 1.0).abs() < 1e-15);
        }
        let two = Exponent::new(2.0).unwrap();
        let expected = ((1.0 + (-2f64).exp()) / 2.0).sqrt();
        assert!((omega_upper().hp_norm(two) - expected).abs() < 1e-14);
        assert!((expected - 0.75344).abs() < 1e-5);
        assert!((omega_upper().hp_norm(Exponent::INFINITY) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn derivative_examples() {
        let z = pt(0.3, -0.4);
        let d = FunctionSpec::monomial(5).eval_derivative(&z).unwrap();
        assert!((d - z.to_complex().powu(4) * 5.0).norm() < 1e-14);
        let a = pt(0.4, 0.5);
        let b = FunctionSpec::blaschke(vec![a]);
        let d = b.eval_derivative(&a).unwrap();
        assert!((d.norm() - 1.0 / a.weight()).abs() < 1e-12);
    }

    #[test]
    fn derivative_matches_central_difference() {
        let f = FunctionSpec::monomial(2)
            .times(FunctionSpec::blaschke(vec![pt(0.2, 0.5), pt(-0.6, -0.1)]))
            .times(omega_upper().pow(3).unwrap())
            .times(FunctionSpec::singular_inner(1.0, 0.7).unwrap())
            .times(FunctionSpec::constant(Complex64::new(0.3, 0.4)).unwrap());
        let h = 1e-6;
        for z in [pt(0.1, 0.2), pt(-0.5, 0.4), pt(0.7, -0.3)] {
            let zc = z.to_complex();
            let fp = f.eval(&DiskPoint::from_complex(zc + h).unwrap()).unwrap();
            let fm = f.eval(&DiskPoint::from_complex(zc - h).unwrap()).unwrap();
            let fd = (fp - fm) / (2.0 * h);
            let d = f.eval_derivative(&z).unwrap();
            assert!((fd - d).norm() <= 1e-6 * d.norm(), "{fd} vs {d}");
        }
    }

    #[test]
    fn blaschke_sum_examples() {
        assert_eq!(blaschke_condition_sum(&[DiskPoint::ORIGIN]), 1.0);
        let zeros: Vec<DiskPoint> = (1..=20)
            .map(|n| pt(1.0 - 0.5f64.powi(n), 0.0))
            .collect();
        assert!((blaschke_condition_sum(&zeros) - (1.0 - 0.5f64.powi(20))).abs() < 1e-15);
        let harmonic: Vec<DiskPoint> = (2..=1000).map(|n| pt(1.0 - 1.0 / n as f64, 0.0)).collect();
        let direct: f64 = (2..=1000).map(|n| 1.0 / n as f64).sum();
        assert!((blaschke_condition_sum(&harmonic) - direct).abs() < 1e-12);
    }

    #[test]
    fn lemma2_single_factor_p1() {
        let b = FunctionSpec::blaschke(vec![pt(0.5, 0.0)]);
        let rec = lemma2_transform(&b, Exponent::new(1.0).unwrap()).unwrap();
        assert_eq!(rec.majorant_data.ess_sup(), 1.0);
        for z in [pt(0.1, 0.2), pt(-0.7, 0.1)] {
            let g = rec.g.eval(&z).unwrap();
            let expected = b.eval(&z).unwrap() / 2.0;
            assert!((g - expected).norm() < 1e-14);
        }
    }

    #[test]
    fn lemma2_single_factor_p2() {
        let b = FunctionSpec::blaschke(vec![pt(0.5, 0.0)]);
        let rec = lemma2_transform(&b, Exponent::new(2.0).unwrap()).unwrap();
        assert_eq!(rec.inner_power, 3);
        for z in [pt(0.1, 0.2), pt(-0.7, 0.1), pt(0.0, 0.95)] {
            let f1 = rec.f1.eval(&z).unwrap();
            assert!((f1 - b.eval(&z).unwrap() / 2f64.sqrt()).norm() < 1e-14);
            let g = rec.g.eval(&z).unwrap();
            assert!((g - b.eval(&z).unwrap().powu(3) / 2.0).norm() < 1e-14);
        }
    }

    #[test]
    fn lemma2_rejects_infinite_exponent() {
        let b = FunctionSpec::monomial(1);
        assert!(lemma2_transform(&b, Exponent::INFINITY).is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = FunctionSpec::monomial(2)
            .times(FunctionSpec::blaschke(vec![pt(0.25, -0.5)]))
            .times(omega_upper().pow(2).unwrap())
            .times(FunctionSpec::singular_inner(0.5, 2.0).unwrap())
            .times(FunctionSpec::constant(Complex64::new(0.1, -0.3)).unwrap());
        let text = serde_json::to_string(&f).unwrap();
        let back: FunctionSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
        let bad = r#"{"factors":[{"kind":"constant","re":0.0,"im":0.0}]}"#;
        assert!(serde_json::from_str::<FunctionSpec>(bad).is_err());
        let outside = r#"{"factors":[{"kind":"blaschke","zeros":[{"re":1.0,"im":0.0}]}]}"#;
        assert!(serde_json::from_str::<FunctionSpec>(outside).is_err());
    }
}
