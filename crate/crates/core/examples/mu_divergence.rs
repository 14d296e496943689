//! The sampling measure of the covering rings has unbounded mass, while a
//! Blaschke product over a cluster sequence has a vanishing mu-norm.

use hardy_sampling::experiments::dominated_cluster;
use hardy_sampling::points::multi_ring;
use hardy_sampling::sampling::{mu_mass, mu_norm};
use hardy_sampling::witness::cluster_pointset;
use hardy_sampling::{Exponent, FunctionSpec};

fn main() -> hardy_sampling::Result<()> {
    let p = Exponent::new(2.0)?;
    let one = FunctionSpec::one();
    for m in 1..=10 {
        let rings = multi_ring(1, m, None)?;
        println!("rings 1..{m:<2} mass {:.4}", mu_mass(&one, &rings, p)?);
    }

    let (zeros, q) = dominated_cluster()?;
    let cluster = cluster_pointset(&zeros, &q)?;
    for n in [1, 3, 6, 10] {
        let f = FunctionSpec::blaschke(zeros[..n].to_vec());
        println!("B over {n:>2} zeros: mu-norm {:.4e}, |f|_2 {:.4}", mu_norm(&f, &cluster, p)?, f.hp_norm(p));
    }
    Ok(())
}
