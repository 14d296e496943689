//! Chebyshev certificates bounding log-integrals on the circles through a
//! thin point set accumulating at 1.

use hardy_sampling::geometry::parse_arc_list;
use hardy_sampling::points::PointSet;
use hardy_sampling::witness::{divergence_report, normalize_bounded, outer_from_gap, prop3_pointset, Prop3Params};

fn main() -> hardy_sampling::Result<()> {
    let params = Prop3Params::n_two_n(4, 10)?;
    let set: PointSet = prop3_pointset(&params)?;
    println!("{} points in generations {:?}", set.len(), params.generations());

    let g = outer_from_gap(&parse_arc_list("1:5.783185307179586")?)?.pow(10)?;
    let (g, scale) = normalize_bounded(&g)?;
    let report = divergence_report(&g, &params, 1e-3)?;
    println!("scale {scale}, sound {}, s_n decreasing {}", report.sound, report.summable);
    for row in &report.rows {
        let c = &row.certificate;
        println!(
            "n = {:>2} s_n {:.4e} count {:>6} <= {:>10.1}  bound {:>9}  measured {:.4}",
            c.n,
            c.s_n,
            c.count,
            c.chebyshev_count_bound,
            c.integral_upper_bound.map_or("-".to_string(), |b| format!("{b:.4}")),
            row.measured_log_integral
        );
    }
    Ok(())
}
