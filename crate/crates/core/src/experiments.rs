//! Experiment runners. Each one builds tables of raw results; verdicts are a
//! pure function of the configuration and the tables, so any emitted report
//! can be rechecked without rerunning it.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use crate::boundary::{BoundaryData, CircleGrid, Exponent};
use crate::config::{ExperimentConfig, ExperimentName, PointGenerator, PointSource};
use crate::error::{Error, Result};
use crate::function::{lemma2_transform, FunctionSpec};
use crate::geometry::{outside_stolz_star, Arc, ArcSet, DiskPoint};
use crate::points::{random_disk, PointSet};
use crate::report::{find_table, Cell, Report, Table};
use crate::sampling::{moduli, mu_mass, nt_coverage, ArcSweep};
use crate::witness::{
    arc_smoothness, cluster_pointset, divergence_report, gap_witness_family, normalize_bounded,
    outer_from_gap,
};

/// Run the configured experiment on the configured number of threads.
pub fn run(config: &ExperimentConfig) -> Result<Report> {
    let mut cfg = config.clone();
    cfg.resolve();
    cfg.validate()?;
    match cfg.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?
            .install(|| dispatch(&cfg)),
        None => dispatch(&cfg),
    }
}

fn dispatch(cfg: &ExperimentConfig) -> Result<Report> {
    match cfg.experiment {
        ExperimentName::Theorem1Forward => run_theorem1_forward(cfg),
        ExperimentName::Theorem1Converse => run_theorem1_converse(cfg),
        ExperimentName::Theorem2 => run_theorem2_experiments(cfg),
        ExperimentName::Prop3 => run_prop3(cfg),
        ExperimentName::Lemma2 => run_lemma2(cfg),
    }
}

fn upper_semicircle() -> ArcSet {
    ArcSet::single(Arc::new(PI / 2.0, PI / 2.0).expect("fixed arc"))
}

fn polar(r: f64, t: f64) -> DiskPoint {
    DiskPoint::from_polar(r, t).expect("fixed point")
}

/// Twelve test functions for the sampling inequality: monomials, Blaschke
/// products, the semicircle gap function and their products.
pub fn forward_family() -> Vec<FunctionSpec> {
    let omega = outer_from_gap(&upper_semicircle()).expect("fixed arc");
    let b1 = FunctionSpec::blaschke(vec![polar(0.5, 0.0)]);
    let b3 = FunctionSpec::blaschke(vec![polar(0.3, 1.0), polar(0.6, 2.5), polar(0.8, 4.0)]);
    let b5 = FunctionSpec::blaschke((0..5).map(|j| polar(0.9, 0.3 + 1.2 * j as f64)).collect());
    vec![
        FunctionSpec::monomial(1),
        FunctionSpec::monomial(4),
        FunctionSpec::monomial(16),
        FunctionSpec::monomial(64),
        b1.clone(),
        b3,
        b5,
        omega.clone(),
        FunctionSpec::monomial(8).times(omega.clone()),
        omega.clone().pow(2).expect("power"),
        b1.times(omega),
        FunctionSpec::singular_inner(0.0, 1.0).expect("fixed mass"),
    ]
}

/// Twenty structured functions mixing Blaschke, outer, singular inner,
/// monomial and constant factors, some with `sup |f| > 1`.
pub fn lemma2_suite() -> Vec<FunctionSpec> {
    let upper = upper_semicircle();
    let omega = outer_from_gap(&upper).expect("fixed arc");
    let outer = |arcs: Vec<(f64, f64, f64)>, background: f64| {
        let pieces = arcs
            .into_iter()
            .map(|(c, h, l)| (Arc::new(c, h).expect("fixed arc"), l))
            .collect();
        FunctionSpec::outer(BoundaryData::piecewise(pieces, background).expect("fixed data")).expect("outer")
    };
    let c = |v: f64| FunctionSpec::constant(Complex64::new(v, 0.0)).expect("constant");
    let b1 = FunctionSpec::blaschke(vec![polar(0.5, 0.0)]);
    let b3 = FunctionSpec::blaschke(vec![polar(0.3, 1.0), polar(0.6, 2.5), polar(0.8, 4.0)]);
    let b5 = FunctionSpec::blaschke((0..5).map(|j| polar(0.95, 0.7 + 1.1 * j as f64)).collect());
    let s = |m: f64| FunctionSpec::singular_inner(1.0, m).expect("singular");
    vec![
        FunctionSpec::monomial(1),
        FunctionSpec::monomial(3),
        b1.clone(),
        b3.clone(),
        omega.clone(),
        c(3.0).times(omega.clone()),
        outer(vec![(PI / 2.0, PI / 2.0, 1.0)], -0.5),
        FunctionSpec::monomial(2).times(outer(vec![(1.0, 0.4, 2.0)], -1.0)),
        b3.clone().times(outer(vec![(4.0, 1.0, 0.7)], 0.0)),
        s(0.5),
        c(0.2),
        c(5.0).times(FunctionSpec::monomial(1)),
        FunctionSpec::blaschke(vec![polar(0.9, PI / 2.0)]).pow(2).expect("power").times(omega.clone()),
        outer(vec![(0.5, 0.3, 1.5), (2.0, 0.5, -2.0), (4.5, 0.8, 0.8)], 0.1),
        FunctionSpec::monomial(1).times(s(2.0)),
        b5,
        c(4.0).times(b3).times(FunctionSpec::monomial(1)),
        outer(vec![(3.0, 0.05, 2.0)], 0.0),
        c(2.0).times(omega.pow(3).expect("power")),
        FunctionSpec::blaschke(vec![polar(0.3, PI)]).times(outer(vec![(PI, PI / 2.0, -0.7)], 0.0)),
    ]
}

fn exponent_cell(p: Exponent) -> Cell {
    Cell::num(p.value())
}

/// Coverage over the depth ladder, then sampling ratios for every function.
pub fn run_theorem1_forward(cfg: &ExperimentConfig) -> Result<Report> {
    let a = cfg.point_set()?;
    let family = cfg.function_list()?.unwrap_or_else(forward_family);
    let top = cfg.limits.coverage_log2.unwrap_or(10);
    let mut coverage = Table::new("coverage", &["alpha", "depth", "coverage"]);
    let mut ratios = Table::new("ratios", &["function", "p", "alpha", "hp_norm", "ma_norm", "ratio"]);
    for &alpha in cfg.alpha_ladder() {
        for k in 0..=top {
            let depth = 1u32 << k;
            coverage.push(vec![alpha.value().into(), depth.into(), nt_coverage(&a, alpha, depth)?.into()]);
        }
        let sweep = ArcSweep::new(&a, alpha);
        for f in &family {
            let profile = sweep.max_profile(&moduli(f, &a)?)?;
            for &p in cfg.p_ladder() {
                let hp = f.hp_norm(p);
                let ma = profile.lp_norm(p);
                ratios.push(vec![
                    f.label().into(),
                    exponent_cell(p),
                    alpha.value().into(),
                    hp.into(),
                    ma.into(),
                    (ma / hp).into(),
                ]);
            }
        }
    }
    Report::new(cfg.clone(), vec![coverage, ratios])
}

/// `|f_n| = |z ω_A(z)|^n` on a set in the star complement (or shallow).
pub fn run_theorem1_converse(cfg: &ExperimentConfig) -> Result<Report> {
    let gap = cfg.arc_set()?;
    outer_from_gap(&gap)?;
    let a = cfg.point_set()?;
    let star_depth = cfg.limits.star_depth.unwrap_or(256);
    let shallow_radius = 1.0 - 1.0 / star_depth as f64 + 4.0 * f64::EPSILON;
    let mut pre = Table::new("precondition", &["alpha", "points", "outside_star", "shallow"]);
    for &alpha in cfg.alpha_ladder() {
        let (mut outside, mut shallow) = (0usize, 0usize);
        for z in a.iter() {
            if outside_stolz_star(z, &gap, alpha) {
                outside += 1;
            } else if z.modulus() <= shallow_radius {
                shallow += 1;
            } else {
                return Err(Error::Precondition(format!(
                    "point ({}, {}) is inside the Stolz star below depth 1/{star_depth}",
                    z.re(),
                    z.im()
                )));
            }
        }
        pre.push(vec![alpha.value().into(), a.len().into(), outside.into(), shallow.into()]);
    }

    let base = moduli(&gap_witness_family(&gap, 1)?, &a)?;
    let max_base = base.iter().copied().fold(0.0, f64::max);
    let mut pointwise = Table::new("pointwise", &["points", "max_base", "violations"]);
    pointwise.push(vec![
        a.len().into(),
        max_base.into(),
        base.iter().filter(|&&b| b > 1.0).count().into(),
    ]);

    let n_max = cfg.limits.witness_max.unwrap_or(200);
    let mut rows = Table::new("witness", &["p", "alpha", "n", "hp_norm", "hp_norm_pow", "ma_norm"]);
    for &alpha in cfg.alpha_ladder() {
        // sup of x^n is (sup x)^n for x ≥ 0, so one sweep serves every n
        let profile = ArcSweep::new(&a, alpha).max_profile(&base)?;
        for &p in cfg.p_ladder() {
            for n in 1..=n_max {
                let hp = gap_witness_family(&gap, n)?.hp_norm(p);
                rows.push(vec![
                    exponent_cell(p),
                    alpha.value().into(),
                    n.into(),
                    hp.into(),
                    hp.powf(p.value()).into(),
                    profile.powi(n as i32).lp_norm(p).into(),
                ]);
            }
        }
    }
    Report::new(cfg.clone(), vec![pre, pointwise, rows])
}

fn dyadic_generation(set: &PointSet, i: usize) -> u32 {
    set.generation(i).unwrap_or_else(|| {
        let z = set.iter().nth(i).expect("index in range");
        ((-(1.0 - z.modulus()).log2() + 1e-9).floor() as u32).max(1)
    })
}

/// Cluster configuration for the dominated-convergence run: zeros
/// `b_n = (1 - 2^{-n}) e^{-iπ/2}` with 100 points each.
pub fn dominated_cluster() -> Result<(Vec<DiskPoint>, Vec<u32>)> {
    let zeros: Vec<DiskPoint> = (1..=10)
        .map(|n| DiskPoint::from_polar(1.0 - 0.5f64.powi(n), 1.5 * PI))
        .collect::<Result<_>>()?;
    Ok((zeros, vec![100; 10]))
}

/// Divergence of cumulative `μ`-sums ring by ring, and `‖B f_n‖` in `L^p(μ)`
/// against `H^p` on a cluster set.
pub fn run_theorem2_experiments(cfg: &ExperimentConfig) -> Result<Report> {
    let a = cfg.point_set()?;
    let f = match cfg.function_list()? {
        Some(list) => list[0].clone(),
        None => FunctionSpec::one(),
    };
    let gens: Vec<u32> = (0..a.len()).map(|i| dyadic_generation(&a, i)).collect();
    let mut ring_ids: Vec<u32> = gens.clone();
    ring_ids.sort_unstable();
    ring_ids.dedup();
    let values = moduli(&f, &a)?;
    let mut partial = Table::new("partial_sums", &["p", "m", "ring_points", "ring_mass", "partial_sum"]);
    for &p in cfg.p_ladder() {
        if p.is_infinite() {
            return Err(Error::InvalidExponent(p.value()));
        }
        let q = p.value();
        let mut running = crate::boundary::CompensatedSum::new();
        for &m in &ring_ids {
            let mut mass = crate::boundary::CompensatedSum::new();
            let mut count = 0usize;
            for (i, &g) in gens.iter().enumerate() {
                if g == m {
                    mass.add(a.weight(i) * values[i].powf(q));
                    count += 1;
                }
            }
            running.add(mass.value());
            partial.push(vec![
                exponent_cell(p),
                m.into(),
                count.into(),
                mass.value().into(),
                running.value().into(),
            ]);
        }
    }

    let gap = cfg.arc_set()?;
    let (zeros, q) = dominated_cluster()?;
    let cluster = cluster_pointset(&zeros, &q)?;
    let blaschke = FunctionSpec::blaschke(zeros);
    let b_values = moduli(&blaschke, &cluster)?;
    let base = moduli(&gap_witness_family(&gap, 1)?, &cluster)?;
    let n_max = cfg.limits.witness_max.unwrap_or(100);
    let mut dominated = Table::new("dominated", &["p", "n", "mu_norm", "hp_norm", "hp_lower_bound"]);
    for &p in cfg.p_ladder() {
        let q = p.value();
        let lower = blaschke
            .boundary_log_data()
            .mean_over(&gap, |v| (q * v).exp())
            .powf(1.0 / q);
        for n in 1..=n_max {
            let mass = crate::boundary::compensated_sum(
                (0..cluster.len()).map(|i| cluster.weight(i) * (b_values[i] * base[i].powi(n as i32)).powf(q)),
            );
            let hp = blaschke.clone().times(gap_witness_family(&gap, n)?).hp_norm(p);
            dominated.push(vec![
                exponent_cell(p),
                n.into(),
                mass.powf(1.0 / q).into(),
                hp.into(),
                lower.into(),
            ]);
        }
    }
    // the monotone decrease in n relies on mu_mass of B·f_n; cross-check one row
    let check = mu_mass(&blaschke.clone().times(gap_witness_family(&gap, 1)?), &cluster, cfg.p_ladder()[0])?;
    let first = dominated.numbers("mu_norm")?[0].powf(cfg.p_ladder()[0].value());
    if (check - first).abs() > 1e-9 * check.abs().max(1e-300) {
        return Err(Error::Precondition("cluster mu-norm paths disagree".into()));
    }
    Report::new(cfg.clone(), vec![partial, dominated])
}

/// Certificates for the accumulating sequence and its accumulation check.
pub fn run_prop3(cfg: &ExperimentConfig) -> Result<Report> {
    let params = cfg
        .limits
        .prop3
        .clone()
        .ok_or_else(|| Error::Config("no schedule".into()))?;
    let g = match cfg.function_list()? {
        Some(list) => list[0].clone(),
        None => outer_from_gap(&cfg.arc_set()?)?.pow(cfg.limits.witness_max.unwrap_or(10))?,
    };
    let (g, scale) = normalize_bounded(&g)?;
    let report = divergence_report(&g, &params, cfg.tolerances.certificate)?;
    let mut cert = Table::new(
        "certificate",
        &[
            "n",
            "p_n",
            "gamma",
            "ell",
            "s_n",
            "count",
            "chebyshev_count_bound",
            "premise",
            "covered_measure",
            "per_point_log_bound",
            "integral_upper_bound",
            "measured_log_integral",
            "target_rate",
        ],
    );
    for row in &report.rows {
        let c = &row.certificate;
        cert.push(vec![
            c.n.into(),
            c.p_n.into(),
            c.gamma.into(),
            c.ell.into(),
            c.s_n.into(),
            c.count.into(),
            c.chebyshev_count_bound.into(),
            c.premise.into(),
            c.covered_measure.into(),
            c.per_point_log_bound.into(),
            Cell::opt(c.integral_upper_bound),
            row.measured_log_integral.into(),
            c.target_rate.into(),
        ]);
    }

    let mut spans = Table::new("spans", &["n", "span", "max_distance_to_one"]);
    for n in params.generations() {
        let dist = (0..=params.p(n))
            .into_par_iter()
            .map(|k| params.point(n, k).map(|z| (z.to_complex() - 1.0).norm()))
            .collect::<Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        spans.push(vec![n.into(), params.span(n).into(), dist.into()]);
    }

    let mut rng = crate::rng(cfg.seed);
    let mut smooth = Table::new("smoothness", &["n", "k", "max_deviation", "bound"]);
    let picks: Vec<(u32, u64)> = (0..20)
        .map(|_| {
            let n = rng.gen_range(params.n_min()..=params.n_max());
            (n, rng.gen_range(1..=params.p(n)))
        })
        .collect();
    let checks: Vec<_> = picks
        .par_iter()
        .map(|&(n, k)| arc_smoothness(&g, &params, n, k, 256))
        .collect::<Result<_>>()?;
    for s in checks {
        smooth.push(vec![s.n.into(), s.k.into(), s.max_deviation.into(), s.bound.into()]);
    }

    let mut summary = Table::new("summary", &["scale", "summable", "premise_generations"]);
    summary.push(vec![
        scale.into(),
        report.summable.into(),
        report.rows.iter().filter(|r| r.certificate.premise).count().into(),
    ]);
    Report::new(cfg.clone(), vec![cert, spans, smooth, summary])
}

fn probe_points(seed: u64, count: usize, grid: usize) -> Result<Vec<DiskPoint>> {
    let circle = CircleGrid::new(grid)?;
    let mut radii: Vec<f64> = (0..=16).map(|i| 0.999 * i as f64 / 16.0).collect();
    radii.extend([0.99, 0.995, 0.998]);
    let mut pts = vec![DiskPoint::ORIGIN];
    for &r in radii.iter().filter(|&&r| r > 0.0) {
        for t in circle.nodes() {
            pts.push(DiskPoint::from_polar(r, t)?);
        }
    }
    let random = random_disk(&mut crate::rng(seed ^ 0x005e_ed0f_9e0b), count, 0.999)?;
    pts.extend(random.iter().copied());
    Ok(pts)
}

/// The bounded transform on every (function, p), with pointwise and `μ`-norm
/// checks.
pub fn run_lemma2(cfg: &ExperimentConfig) -> Result<Report> {
    let suite = cfg.function_list()?.unwrap_or_else(lemma2_suite);
    let probes = probe_points(
        cfg.seed,
        cfg.limits.probe_count.unwrap_or(10_000),
        cfg.grid.unwrap_or(256),
    )?;
    let sets: Vec<PointSet> = match &cfg.points {
        Some(PointSource::Generator(PointGenerator::Random { .. })) => (0..cfg.limits.point_sets.unwrap_or(10))
            .map(|i| {
                cfg.points
                    .as_ref()
                    .expect("matched above")
                    .load(cfg.seed.wrapping_add(i as u64))
            })
            .collect::<Result<_>>()?,
        _ => vec![cfg.point_set()?],
    };
    let slack = cfg.tolerances.identity;
    let mut transform = Table::new(
        "transform",
        &["function", "p", "inner_power", "g_probe_max", "f1_violations", "g_violations"],
    );
    let mut mu = Table::new("mu", &["function", "p", "set", "f_mu_pow", "g_mu"]);
    for f in &suite {
        for &p in cfg.p_ladder() {
            let rec = lemma2_transform(f, p)?;
            let q = p.value();
            let triples: Vec<(f64, f64, f64)> = probes
                .par_iter()
                .map(|z| Ok((f.modulus(z)?, rec.f1.modulus(z)?, rec.g.modulus(z)?)))
                .collect::<Result<_>>()?;
            let g_max = triples.iter().map(|t| t.2).fold(0.0, f64::max);
            let f1_bad = triples
                .iter()
                .filter(|(fv, f1, _)| *f1 > fv.min(1.0) * (1.0 + slack))
                .count();
            let g_bad = triples
                .iter()
                .filter(|(_, f1, g)| *g > f1.powf(q) * (1.0 + slack))
                .count();
            transform.push(vec![
                f.label().into(),
                exponent_cell(p),
                rec.inner_power.into(),
                g_max.into(),
                f1_bad.into(),
                g_bad.into(),
            ]);
            for (i, set) in sets.iter().enumerate() {
                mu.push(vec![
                    f.label().into(),
                    exponent_cell(p),
                    i.into(),
                    mu_mass(f, set, p)?.into(),
                    mu_mass(&rec.g, set, Exponent::new(1.0)?)?.into(),
                ]);
            }
        }
    }
    Report::new(cfg.clone(), vec![transform, mu])
}

/// Rows grouped by the values of `keys`, in order of first appearance.
fn groups<'a>(table: &'a Table, keys: &[&str]) -> Result<Vec<Vec<&'a Vec<Cell>>>> {
    let idx: Vec<usize> = keys.iter().map(|k| table.column_index(k)).collect::<Result<_>>()?;
    let mut out: Vec<(Vec<String>, Vec<&Vec<Cell>>)> = Vec::new();
    for row in &table.rows {
        let key: Vec<String> = idx.iter().map(|&i| row[i].csv()).collect();
        match out.iter_mut().find(|(k, _)| *k == key) {
            Some((_, rows)) => rows.push(row),
            None => out.push((key, vec![row])),
        }
    }
    Ok(out.into_iter().map(|(_, rows)| rows).collect())
}

fn num(row: &[Cell], table: &Table, column: &str) -> Result<f64> {
    row[table.column_index(column)?]
        .as_f64()
        .ok_or_else(|| Error::Config(format!("column {column} has a non-numeric cell")))
}

/// Verdicts as a pure function of configuration and result tables.
pub fn verdicts_from_tables(cfg: &ExperimentConfig, tables: &[Table]) -> Result<BTreeMap<String, bool>> {
    let tol = &cfg.tolerances;
    let mut v = BTreeMap::new();
    match cfg.experiment {
        ExperimentName::Theorem1Forward => {
            let cov = find_table(tables, "coverage")?;
            let mut full = true;
            let mut monotone = true;
            for rows in groups(cov, &["alpha"])? {
                let values: Vec<f64> = rows.iter().map(|r| num(r, cov, "coverage")).collect::<Result<_>>()?;
                full &= values.last().is_some_and(|&c| c >= TAU - tol.norm);
                monotone &= values.windows(2).all(|w| w[1] <= w[0] + tol.norm);
            }
            v.insert("coverage_full_at_top".into(), full);
            v.insert("coverage_nonincreasing".into(), monotone);
            let ratios = find_table(tables, "ratios")?.numbers("ratio")?;
            v.insert("ratio_at_least_c_min".into(), ratios.iter().all(|&r| r >= tol.c_min));
            v.insert("ratio_within_ceiling".into(), ratios.iter().all(|&r| r <= tol.ratio_ceiling));
        }
        ExperimentName::Theorem1Converse => {
            let floor = cfg.arc_set()?.measure() / TAU;
            let w = find_table(tables, "witness")?;
            v.insert(
                "witness_norm_floor".into(),
                w.numbers("hp_norm_pow")?.iter().all(|&x| x >= floor - tol.norm),
            );
            let mut decreasing = true;
            let mut small = true;
            for rows in groups(w, &["p", "alpha"])? {
                let ma: Vec<f64> = rows.iter().map(|r| num(r, w, "ma_norm")).collect::<Result<_>>()?;
                decreasing &= ma.windows(2).all(|x| x[1] < x[0]);
                small &= ma.last().is_some_and(|&x| x <= tol.epsilon_target);
            }
            v.insert("maximal_norm_strictly_decreasing".into(), decreasing);
            v.insert("maximal_norm_final_below_target".into(), small);
            let pw = find_table(tables, "pointwise")?;
            v.insert(
                "pointwise_monotone".into(),
                pw.numbers("violations")?.iter().all(|&x| x == 0.0),
            );
        }
        ExperimentName::Theorem2 => {
            let ps = find_table(tables, "partial_sums")?;
            let from = cfg.limits.growth_from.unwrap_or(5) as f64;
            let mut grows = true;
            for rows in groups(ps, &["p"])? {
                let mut prev: Option<f64> = None;
                for r in rows {
                    let s = num(r, ps, "partial_sum")?;
                    if let Some(p) = prev {
                        if num(r, ps, "m")? >= from {
                            grows &= s > 0.0 && s >= tol.growth * p;
                        }
                    }
                    prev = Some(s);
                }
            }
            v.insert("partial_sums_grow".into(), grows);
            let d = find_table(tables, "dominated")?;
            let mut decreasing = true;
            let mut vanishing = true;
            let mut bounded = true;
            for rows in groups(d, &["p"])? {
                let mu: Vec<f64> = rows.iter().map(|r| num(r, d, "mu_norm")).collect::<Result<_>>()?;
                decreasing &= mu.windows(2).all(|x| x[1] <= x[0]);
                vanishing &= mu.last().is_some_and(|&x| x <= tol.epsilon_target);
                for r in rows {
                    bounded &= num(r, d, "hp_norm")? >= num(r, d, "hp_lower_bound")? - tol.norm;
                }
            }
            v.insert("dominated_mu_norm_nonincreasing".into(), decreasing);
            v.insert("dominated_mu_norm_vanishes".into(), vanishing);
            v.insert("dominated_hp_norm_bounded_below".into(), bounded);
        }
        ExperimentName::Prop3 => {
            let c = find_table(tables, "certificate")?;
            let mut counts = true;
            let mut sound = true;
            for r in &c.rows {
                counts &= num(r, c, "count")? <= num(r, c, "chebyshev_count_bound")?;
                if let Some(bound) = r[c.column_index("integral_upper_bound")?].as_f64() {
                    sound &= num(r, c, "measured_log_integral")? <= bound + tol.certificate;
                }
            }
            v.insert("count_bound_respected".into(), counts);
            v.insert("certificate_sound".into(), sound);
            let s = find_table(tables, "spans")?;
            let spans = s.numbers("span")?;
            v.insert("spans_strictly_decreasing".into(), spans.windows(2).all(|w| w[1] < w[0]));
            let mut near = true;
            for r in &s.rows {
                let n = num(r, s, "n")? as i32;
                near &= num(r, s, "max_distance_to_one")? <= num(r, s, "span")? + 0.5f64.powi(n);
            }
            v.insert("accumulates_at_one".into(), near);
            let sm = find_table(tables, "smoothness")?;
            let mut smooth = true;
            for r in &sm.rows {
                smooth &= num(r, sm, "max_deviation")? <= num(r, sm, "bound")?;
            }
            v.insert("arc_smoothness".into(), smooth);
        }
        ExperimentName::Lemma2 => {
            let t = find_table(tables, "transform")?;
            v.insert(
                "g_bounded".into(),
                t.numbers("g_probe_max")?.iter().all(|&x| x <= 1.0 + tol.sup),
            );
            let bad = t.numbers("f1_violations")?.iter().sum::<f64>() + t.numbers("g_violations")?.iter().sum::<f64>();
            v.insert("no_pointwise_violations".into(), bad == 0.0);
            let mu = find_table(tables, "mu")?;
            let mut contract = true;
            for r in &mu.rows {
                let f = num(r, mu, "f_mu_pow")?;
                contract &= num(r, mu, "g_mu")? <= f * (1.0 + tol.identity);
            }
            v.insert("mu_contract".into(), contract);
        }
    }
    Ok(v)
}

/// Verdicts recomputed from a report's own configuration and tables.
pub fn recompute_verdicts(report: &Report) -> Result<BTreeMap<String, bool>> {
    verdicts_from_tables(&report.config, &report.tables)
}
