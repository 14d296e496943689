//! Closed-form Herglotz integral of an arc indicator against a periodized
//! trapezoid rule, and the outer function built from it.

use std::f64::consts::PI;

use hardy_sampling::boundary::{herglotz_arc_closed_form, herglotz_arc_quadrature, poisson_extension, BoundaryData};
use hardy_sampling::geometry::{Arc, ArcSet, DiskPoint};
use hardy_sampling::FunctionSpec;

fn main() -> hardy_sampling::Result<()> {
    let arc = Arc::new(PI / 3.0, 0.4)?;
    let z = DiskPoint::from_polar(0.8, 1.2)?;
    let exact = herglotz_arc_closed_form(&arc, &z);
    for nodes in [64, 256, 1024, 4096] {
        let q = herglotz_arc_quadrature(&arc, &z, nodes);
        println!("{nodes:>5} nodes: error {:.3e}", (q - exact).norm());
    }

    // |outer(z)| = exp(Poisson extension of the data)
    let data = BoundaryData::indicator(&ArcSet::single(arc), 0.0, -1.0);
    let outer = FunctionSpec::outer(data.clone())?;
    let u = poisson_extension(&data, &z)?;
    println!("log|F(z)| = {:.12}, P[u](z) = {u:.12}", outer.log_abs(&z)?);
    Ok(())
}
