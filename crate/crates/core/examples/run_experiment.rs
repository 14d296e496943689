//! Run an experiment from code, with a smaller ladder, and write the report.
//!
//!     cargo run --release --example run_experiment -- theorem2 /tmp/out

use hardy_sampling::{experiments, ExperimentConfig, ExperimentName};

fn main() -> hardy_sampling::Result<()> {
    let mut args = std::env::args().skip(1);
    let name: ExperimentName = args.next().unwrap_or_else(|| "theorem2".into()).parse()?;
    let mut config = ExperimentConfig::new(name);
    config.seed = 3;
    let report = experiments::run(&config)?;
    print!("{}", report.summary());
    if let Some(dir) = args.next() {
        for path in report.write(std::path::Path::new(&dir))? {
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}
