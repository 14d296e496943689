//! Building functions from factors, evaluating them, and reading off norms.

use hardy_sampling::function::blaschke_condition_sum;
use hardy_sampling::geometry::DiskPoint;
use hardy_sampling::{Exponent, FunctionSpec};
use num_complex::Complex64;

fn main() -> hardy_sampling::Result<()> {
    let zeros = vec![DiskPoint::new(0.5, 0.0)?, DiskPoint::from_polar(0.9, 2.0)?];
    println!("Blaschke sum {:.4}", blaschke_condition_sum(&zeros));
    let f = FunctionSpec::blaschke(zeros)
        .times(FunctionSpec::monomial(3))
        .times(FunctionSpec::singular_inner(0.0, 0.5)?)
        .times(FunctionSpec::constant(Complex64::new(0.0, 2.0))?);
    println!("f = {}", f.label());
    println!("{}", serde_json::to_string(&f).expect("serializable"));

    let z = DiskPoint::new(0.3, -0.4)?;
    println!("f(z) = {:.6}, f'(z) = {:.6}", f.eval(&z)?, f.eval_derivative(&z)?);
    for p in [1.0, 2.0, f64::INFINITY] {
        println!("|f|_{p} = {:.6}", f.hp_norm(Exponent::new(p)?));
    }
    // radial means approach the boundary norm from below
    for (r, m) in f.radial_means(Exponent::new(2.0)?, &[1, 4, 8, 12])? {
        println!("r = {r:.6}  M_2(f, r) = {m:.6}");
    }
    Ok(())
}
