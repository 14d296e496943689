//! Stolz arcs of a few points and the boundary they cover.

use hardy_sampling::geometry::{arc_union_measure, in_stolz_angle, stolz_arc, Aperture, DiskPoint};
use hardy_sampling::points::multi_ring;
use hardy_sampling::sampling::nt_coverage;

fn main() -> hardy_sampling::Result<()> {
    let alpha = Aperture::new(1.0)?;
    for r in [0.0, 0.5, 0.9, 0.99, 0.999] {
        let z = DiskPoint::from_polar(r, 1.0)?;
        let arc = stolz_arc(&z, alpha);
        println!(
            "|z| = {r:<6} arc center {:.4} half width {:.6} measure {:.6}",
            arc.center(),
            arc.half_width(),
            arc.measure()
        );
        // the edge of the arc is where the cone condition switches
        let inside = in_stolz_angle(&z, arc.start() + 1e-9, alpha);
        let outside = in_stolz_angle(&z, arc.start() - 1e-6, alpha);
        assert!(r == 0.0 || (inside && !outside));
    }

    let rings = multi_ring(1, 8, None)?;
    let arcs: Vec<_> = rings.iter().map(|z| stolz_arc(z, alpha)).collect();
    println!("{} ring points, union of arcs {:.6}", rings.len(), arc_union_measure(&arcs));
    for depth in [2, 16, 128, 256, 512] {
        println!("N = {depth:<4} coverage {:.6}", nt_coverage(&rings, alpha, depth)?);
    }
    Ok(())
}
