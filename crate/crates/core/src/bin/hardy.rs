use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::json;

use hardy_sampling::config::ExperimentConfig;
use hardy_sampling::error::{Error, Result};
use hardy_sampling::experiments;
use hardy_sampling::geometry::{parse_arc_list, Aperture, DiskPoint};
use hardy_sampling::sampling::{self, DEFAULT_RATIO_CEILING};
use hardy_sampling::schema::SCHEMA_HELP;
use hardy_sampling::witness::{self, Prop3Params};
use hardy_sampling::{Exponent, ExperimentName, FunctionSpec, PointSet};

#[derive(Parser)]
#[command(name = "hardy", version, about = "Sampling sets and maximal functions in Hardy spaces of the disk")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Random seed for experiments and sampling.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Grid size for quadrature or grid-based maximal norms.
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Stolz apertures, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    alpha: Vec<f64>,
    /// Exponents, comma separated; `inf` allowed where meaningful.
    #[arg(long, global = true, value_delimiter = ',')]
    p: Vec<String>,
    /// Worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// H^p norm, and with --points the mu-norm and restricted maximal norm.
    Norm {
        /// FunctionSpec JSON, inline or a path.
        #[arg(long)]
        function: String,
        /// PointSet JSON, inline or a path.
        #[arg(long)]
        points: Option<String>,
    },
    /// Value, modulus and derivative at points given as `re,im`.
    Eval {
        #[arg(long)]
        function: String,
        #[arg(long = "z", required = true)]
        z: Vec<String>,
    },
    /// Emit a constructed function or point set as JSON.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Nontangential coverage of a point set for depths N.
    Coverage {
        #[arg(long)]
        points: String,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        depth: Vec<u32>,
    },
    /// Sampling ratio of a function on a point set.
    SampleCheck {
        #[arg(long)]
        function: String,
        #[arg(long)]
        points: String,
        /// Fail (exit 2) below this ratio.
        #[arg(long)]
        c_min: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_RATIO_CEILING)]
        ceiling: f64,
    },
    /// Both sides of the arc identity for the p-sum maximal function.
    IdentityCheck {
        #[arg(long)]
        points: String,
        /// Defaults to the constant 1.
        #[arg(long)]
        function: Option<String>,
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
    },
    /// Run a named experiment and write its report.
    Experiment {
        name: String,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output directory; overrides the config.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Describe the JSON input formats.
    Schema,
}

#[derive(Subcommand)]
enum Construct {
    /// The gap outer function with modulus 1 on the arcs, e^{-1} off them.
    Omega {
        #[arg(long)]
        arcs: String,
    },
    /// The witness z^n omega^n.
    Witness {
        #[arg(long)]
        arcs: String,
        #[arg(long)]
        n: u32,
    },
    /// The accumulating point set with schedule p_n = n 2^n.
    Prop3 {
        #[arg(long, default_value_t = 4)]
        n_min: u32,
        #[arg(long, default_value_t = 12)]
        n_max: u32,
    },
    /// Clusters of q points around each zero.
    Cluster {
        /// Zeros as `re,im;re,im;...`.
        #[arg(long)]
        zeros: String,
        #[arg(long, value_delimiter = ',')]
        q: Vec<u32>,
    },
}

enum Outcome {
    Pass,
    VerdictFailed,
}

fn read_json_arg<T: serde::de::DeserializeOwned>(arg: &str) -> Result<T> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg)?
    };
    Ok(serde_json::from_str(&text)?)
}

fn parse_point(text: &str) -> Result<DiskPoint> {
    let (re, im) = text
        .split_once(',')
        .ok_or_else(|| Error::Config(format!("expected re,im, got {text:?}")))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| Error::Config(format!("bad number {s:?}")))
    };
    DiskPoint::new(parse(re)?, parse(im)?)
}

impl Global {
    fn exponents(&self, default: &[&str]) -> Result<Vec<Exponent>> {
        let list: Vec<&str> = if self.p.is_empty() {
            default.to_vec()
        } else {
            self.p.iter().map(String::as_str).collect()
        };
        list.iter().map(|s| s.parse()).collect()
    }

    fn apertures(&self) -> Result<Vec<Aperture>> {
        if self.alpha.is_empty() {
            return Ok(vec![Aperture::new(1.0)?]);
        }
        self.alpha.iter().map(|&a| Aperture::new(a)).collect()
    }
}

fn print(value: &serde_json::Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn run(cli: Cli) -> Result<Outcome> {
    let g = &cli.global;
    if let Some(t) = g.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Error::Config(e.to_string()))?;
    }
    match cli.command {
        Command::Norm { function, points } => {
            let f: FunctionSpec = read_json_arg(&function)?;
            let set: Option<PointSet> = points.as_deref().map(read_json_arg).transpose()?;
            let mut rows = Vec::new();
            for p in g.exponents(&["2"])? {
                let mut row = json!({"p": p, "hp_norm": f.hp_norm(p)});
                if let Some(a) = &set {
                    if !p.is_infinite() {
                        row["mu_norm"] = json!(sampling::mu_norm(&f, a, p)?);
                    }
                    for alpha in g.apertures()? {
                        let mut entry = json!({
                            "alpha": alpha,
                            "ma_norm": sampling::m_a_lp_norm(&f, a, p, alpha)?,
                        });
                        if let Some(grid) = g.grid {
                            entry["ma_norm_grid"] = json!(sampling::m_a_lp_norm_grid(&f, a, p, alpha, grid)?);
                        }
                        row.as_object_mut()
                            .expect("object")
                            .entry("maximal")
                            .or_insert_with(|| json!([]))
                            .as_array_mut()
                            .expect("array")
                            .push(entry);
                    }
                }
                rows.push(row);
            }
            print(&json!({"function": f.label(), "norms": rows}))?;
        }
        Command::Eval { function, z } => {
            let f: FunctionSpec = read_json_arg(&function)?;
            let mut rows = Vec::new();
            for text in &z {
                let point = parse_point(text)?;
                let v: Complex64 = f.eval(&point)?;
                let d = f.eval_derivative(&point)?;
                rows.push(json!({
                    "z": point,
                    "value": {"re": v.re, "im": v.im},
                    "modulus": f.modulus(&point)?,
                    "derivative": {"re": d.re, "im": d.im},
                }));
            }
            print(&json!(rows))?;
        }
        Command::Construct { what } => match what {
            Construct::Omega { arcs } => print(&json!(witness::outer_from_gap(&parse_arc_list(&arcs)?)?))?,
            Construct::Witness { arcs, n } => {
                print(&json!(witness::gap_witness_family(&parse_arc_list(&arcs)?, n)?))?
            }
            Construct::Prop3 { n_min, n_max } => {
                let params = Prop3Params::n_two_n(n_min, n_max)?;
                print(&json!(witness::prop3_pointset(&params)?))?
            }
            Construct::Cluster { zeros, q } => {
                let zeros: Vec<DiskPoint> = zeros
                    .split(';')
                    .filter(|s| !s.trim().is_empty())
                    .map(parse_point)
                    .collect::<Result<_>>()?;
                print(&json!(witness::cluster_pointset(&zeros, &q)?))?
            }
        },
        Command::Coverage { points, depth } => {
            let a: PointSet = read_json_arg(&points)?;
            let mut rows = Vec::new();
            for alpha in g.apertures()? {
                for &n in &depth {
                    rows.push(json!({"alpha": alpha, "depth": n, "coverage": sampling::nt_coverage(&a, alpha, n)?}));
                }
            }
            print(&json!(rows))?;
        }
        Command::SampleCheck {
            function,
            points,
            c_min,
            ceiling,
        } => {
            let f: FunctionSpec = read_json_arg(&function)?;
            let a: PointSet = read_json_arg(&points)?;
            let mut ok = true;
            let mut reports = Vec::new();
            for alpha in g.apertures()? {
                for p in g.exponents(&["2"])? {
                    let mut r = sampling::sampling_ratio(&f, &a, p, alpha, ceiling)?;
                    if let Some(grid) = g.grid {
                        r.grid_size = Some(grid);
                        r.ma_norm = sampling::m_a_lp_norm_grid(&f, &a, p, alpha, grid)?;
                        r.ratio = r.ma_norm / r.hp_norm;
                        r.within_ceiling = r.ratio <= ceiling;
                    }
                    ok &= r.within_ceiling && c_min.is_none_or(|c| r.ratio >= c);
                    reports.push(r);
                }
            }
            print(&json!(reports))?;
            if !ok {
                return Ok(Outcome::VerdictFailed);
            }
        }
        Command::IdentityCheck {
            points,
            function,
            tolerance,
        } => {
            let a: PointSet = read_json_arg(&points)?;
            let f: FunctionSpec = match function {
                Some(text) => read_json_arg(&text)?,
                None => FunctionSpec::one(),
            };
            let mut ok = true;
            let mut rows = Vec::new();
            for alpha in g.apertures()? {
                for p in g.exponents(&["1"])? {
                    let c = sampling::lemma1_identity_check(&f, &a, p, alpha)?;
                    ok &= c.relative_error <= tolerance;
                    rows.push(json!({
                        "alpha": alpha,
                        "p": p,
                        "lhs": c.lhs,
                        "rhs": c.rhs,
                        "relative_error": c.relative_error,
                    }));
                }
            }
            print(&json!(rows))?;
            if !ok {
                return Ok(Outcome::VerdictFailed);
            }
        }
        Command::Experiment { name, config, out } => {
            let name: ExperimentName = name.parse()?;
            let mut cfg = match config {
                Some(path) => ExperimentConfig::load(&path)?,
                None => ExperimentConfig::new(name),
            };
            if cfg.experiment != name {
                return Err(Error::Config(format!(
                    "config is for {}, not {name}",
                    cfg.experiment
                )));
            }
            if let Some(seed) = g.seed {
                cfg.seed = seed;
            }
            if let Some(grid) = g.grid {
                cfg.grid = Some(grid);
            }
            if !g.alpha.is_empty() {
                cfg.alpha = Some(g.apertures()?);
            }
            if !g.p.is_empty() {
                cfg.p = Some(g.exponents(&[])?);
            }
            if let Some(dir) = out {
                cfg.output = Some(dir.to_string_lossy().into_owned());
            }
            cfg.validate()?;
            let report = experiments::run(&cfg)?;
            match &cfg.output {
                Some(dir) => {
                    for path in report.write(std::path::Path::new(dir))? {
                        eprintln!("wrote {}", path.display());
                    }
                }
                None => print!("{}", report.to_json()?),
            }
            eprint!("{}", report.summary());
            if !report.passed() {
                return Ok(Outcome::VerdictFailed);
            }
        }
        Command::Schema => print!("{SCHEMA_HELP}"),
    }
    Ok(Outcome::Pass)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            if informational {
                return ExitCode::SUCCESS;
            }
            eprintln!("\n{SCHEMA_HELP}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::VerdictFailed) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
