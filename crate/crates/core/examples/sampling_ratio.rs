//! Nontangential maximal function over the dyadic covering rings compared
//! with the Hardy norm.

use hardy_sampling::experiments::forward_family;
use hardy_sampling::geometry::Aperture;
use hardy_sampling::points::multi_ring;
use hardy_sampling::sampling::{
    lemma1_identity_check, m_a_lp_norm_grid, sampling_ratio, sampling_ratio_with, ArcSweep, DEFAULT_RATIO_CEILING,
};
use hardy_sampling::Exponent;

fn main() -> hardy_sampling::Result<()> {
    let rings = multi_ring(1, 10, None)?;
    let alpha = Aperture::new(1.0)?;
    let p = Exponent::new(2.0)?;
    let sweep = ArcSweep::new(&rings, alpha);
    for f in forward_family() {
        let r = sampling_ratio_with(&f, &rings, &sweep, p, alpha, DEFAULT_RATIO_CEILING, false)?;
        println!("{:<28} |f|_2 {:.5}  |M_a f|_2 {:.5}  ratio {:.4}", f.label(), r.hp_norm, r.ma_norm, r.ratio);
    }

    // the grid evaluation is pointwise, so compare on fewer rings
    let rings = multi_ring(1, 5, None)?;
    let f = &forward_family()[4];
    let exact = sampling_ratio(f, &rings, p, alpha, DEFAULT_RATIO_CEILING)?.ma_norm;
    let gridded = m_a_lp_norm_grid(f, &rings, p, alpha, 1 << 14)?;
    println!("sweep {exact:.8} vs grid {gridded:.8}");

    let check = lemma1_identity_check(f, &rings, Exponent::new(1.0)?, alpha)?;
    println!("arc identity: {:.12} = {:.12} (rel {:.1e})", check.lhs, check.rhs, check.relative_error);
    Ok(())
}
