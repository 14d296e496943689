//! Turning an H^p function into a bounded one whose mu-mass is no larger.

use hardy_sampling::experiments::lemma2_suite;
use hardy_sampling::function::lemma2_transform;
use hardy_sampling::points::random_disk;
use hardy_sampling::sampling::mu_mass;
use hardy_sampling::{rng, Exponent};

fn main() -> hardy_sampling::Result<()> {
    let set = random_disk(&mut rng(11), 300, 0.999)?;
    let one = Exponent::new(1.0)?;
    for p in [0.5, 2.0, 3.0] {
        let p = Exponent::new(p)?;
        for f in lemma2_suite().into_iter().take(4) {
            let t = lemma2_transform(&f, p)?;
            println!(
                "p = {:<3} {:<24} sup|g| <= {:.4}  mass f^p {:.4}  mass g {:.4}",
                p.value(),
                f.label(),
                t.g.sup_bound(),
                mu_mass(&f, &set, p)?,
                mu_mass(&t.g, &set, one)?
            );
        }
    }
    Ok(())
}
