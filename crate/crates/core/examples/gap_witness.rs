//! Outer functions that are 1 on an arc set and small elsewhere, and why
//! points inside the Stolz star of the gap cannot sample H^2.

use std::f64::consts::PI;

use hardy_sampling::geometry::{outside_stolz_star, parse_arc_list, Aperture};
use hardy_sampling::points::multi_ring;
use hardy_sampling::sampling::m_a_lp_norm;
use hardy_sampling::witness::{gap_witness_family, harmonic_measure_floor};
use hardy_sampling::Exponent;

fn main() -> hardy_sampling::Result<()> {
    let gap = parse_arc_list("0:pi")?;
    let alpha = Aperture::new(1.0)?;
    let floor = harmonic_measure_floor(&gap, alpha, 4000, 7)?;
    println!("-log|w| >= {:.4} off the star ({} samples)", floor.floor, floor.accepted);

    // rings restricted to the lower half plane, kept away from the boundary
    let points = multi_ring(1, 8, Some((PI, 2.0 * PI)))?;
    let shallow = points.iter().filter(|z| outside_stolz_star(z, &gap, alpha)).count();
    println!("{shallow} of {} points sit outside the star", points.len());

    let p = Exponent::new(2.0)?;
    for n in [1, 5, 20, 50] {
        let f = gap_witness_family(&gap, n)?;
        println!("n = {n:<3} |f|_2 = {:.4}  |M_a f|_2 = {:.3e}", f.hp_norm(p), m_a_lp_norm(&f, &points, p, alpha)?);
    }
    Ok(())
}
