//! Experiment configuration (JSON, `"schema": 1`).
//!
//! Every optional field has a per-experiment default; [`ExperimentConfig::resolve`]
//! fills them in so that a report echoes the complete configuration it ran.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::boundary::Exponent;
use crate::error::{Error, Result};
use crate::function::FunctionSpec;
use crate::geometry::{parse_arc_list, Aperture, ArcSet, DiskPoint};
use crate::points::{multi_ring, random_disk, PointSet};
use crate::witness::{cluster_pointset, prop3_pointset, Prop3Params};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentName {
    Theorem1Forward,
    Theorem1Converse,
    Theorem2,
    Prop3,
    Lemma2,
}

impl ExperimentName {
    pub const ALL: [ExperimentName; 5] = [
        ExperimentName::Theorem1Forward,
        ExperimentName::Theorem1Converse,
        ExperimentName::Theorem2,
        ExperimentName::Prop3,
        ExperimentName::Lemma2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ExperimentName::Theorem1Forward => "theorem1-forward",
            ExperimentName::Theorem1Converse => "theorem1-converse",
            ExperimentName::Theorem2 => "theorem2",
            ExperimentName::Prop3 => "prop3",
            ExperimentName::Lemma2 => "lemma2",
        }
    }
}

impl std::fmt::Display for ExperimentName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ExperimentName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExperimentName::ALL
            .into_iter()
            .find(|e| e.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown experiment {s:?}")))
    }
}

/// Slack and thresholds that verdicts are judged with.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Absolute slack for norm comparisons.
    pub norm: f64,
    /// Slack for the certified log-integral bound.
    pub certificate: f64,
    /// Relative slack for identities between two exact code paths.
    pub identity: f64,
    /// Absolute slack for bounds of the form `sup |g| ≤ 1`.
    pub sup: f64,
    /// Smallest acceptable sampling ratio.
    pub c_min: f64,
    /// Largest acceptable sampling ratio.
    pub ratio_ceiling: f64,
    /// Required growth factor of consecutive partial sums.
    pub growth: f64,
    /// Target for the last maximal-function norm of a vanishing family.
    pub epsilon_target: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            norm: 1e-6,
            certificate: 1e-3,
            identity: 1e-10,
            sup: 1e-8,
            c_min: 0.5,
            ratio_ceiling: crate::sampling::DEFAULT_RATIO_CEILING,
            growth: 2.0,
            epsilon_target: 0.05,
        }
    }
}

/// Truncation parameters; `None` means the experiment default.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Limits {
    /// Largest witness index `n` in `z^n ω_A^n`.
    pub witness_max: Option<u32>,
    /// Coverage depths `N = 2^k` for `k = 0..=coverage_log2`.
    pub coverage_log2: Option<u32>,
    /// Points deeper than `1 - 1/N` must lie outside the Stolz star.
    pub star_depth: Option<u32>,
    /// First ring that must at least multiply the partial sum by `growth`.
    pub growth_from: Option<u32>,
    /// Random evaluation points for pointwise checks.
    pub probe_count: Option<usize>,
    /// Random point sets for norm comparisons, and their size.
    pub point_sets: Option<usize>,
    pub set_size: Option<usize>,
    /// Schedule for the accumulating sequence.
    pub prop3: Option<Prop3Params>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FunctionSource {
    Path { path: String },
    Inline(FunctionSpec),
}

impl FunctionSource {
    pub fn load(&self) -> Result<FunctionSpec> {
        match self {
            FunctionSource::Path { path } => Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?),
            FunctionSource::Inline(f) => Ok(f.clone()),
        }
    }
}

/// Deterministic point-set generators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PointGenerator {
    MultiRing {
        n_min: u32,
        n_max: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sector: Option<[f64; 2]>,
    },
    Prop3 {
        params: Prop3Params,
    },
    Cluster {
        zeros: Vec<DiskPoint>,
        q: Vec<u32>,
    },
    /// Uniform in `|z| < max_radius`, from the configuration seed.
    Random {
        count: usize,
        max_radius: f64,
    },
}

impl PointGenerator {
    pub fn generate(&self, seed: u64) -> Result<PointSet> {
        match self {
            PointGenerator::MultiRing { n_min, n_max, sector } => {
                multi_ring(*n_min, *n_max, sector.map(|s| (s[0], s[1])))
            }
            PointGenerator::Prop3 { params } => prop3_pointset(params),
            PointGenerator::Cluster { zeros, q } => cluster_pointset(zeros, q),
            PointGenerator::Random { count, max_radius } => {
                if !(*max_radius > 0.0 && *max_radius < 1.0) {
                    return Err(Error::Config(format!("max_radius {max_radius} must be in (0, 1)")));
                }
                random_disk(&mut crate::rng(seed), *count, *max_radius)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointSource {
    Path { path: String },
    Generator(PointGenerator),
    Inline(PointSet),
}

impl PointSource {
    pub fn load(&self, seed: u64) -> Result<PointSet> {
        match self {
            PointSource::Path { path } => Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?),
            PointSource::Generator(g) => g.generate(seed),
            PointSource::Inline(set) => Ok(set.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub schema: u32,
    pub experiment: ExperimentName,
    #[serde(default)]
    pub seed: u64,
    /// Worker threads; results do not depend on it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub functions: Option<Vec<FunctionSource>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<PointSource>,
    /// Arc list such as `"0:pi"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arcs: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Vec<Exponent>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<Aperture>>,
    /// Minimum quadrature or probe grid size.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
    #[serde(default)]
    pub limits: Limits,
    #[serde(default)]
    pub tolerances: Tolerances,
    /// Directory for `report.json` and the CSV tables.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

fn ladder<T: Copy>(values: &[f64], make: impl Fn(f64) -> Result<T>) -> Vec<T> {
    values.iter().map(|&v| make(v).expect("default ladder")).collect()
}

impl ExperimentConfig {
    /// A fully resolved default configuration.
    pub fn new(experiment: ExperimentName) -> Self {
        let mut cfg = ExperimentConfig {
            schema: SCHEMA_VERSION,
            experiment,
            seed: 0,
            threads: None,
            functions: None,
            points: None,
            arcs: None,
            p: None,
            alpha: None,
            grid: None,
            limits: Limits::default(),
            tolerances: Tolerances::default(),
            output: None,
        };
        cfg.resolve();
        cfg
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let mut cfg: ExperimentConfig = serde_json::from_str(text)?;
        cfg.resolve();
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Fill every unset field with the experiment default.
    pub fn resolve(&mut self) {
        use ExperimentName::*;
        let e = self.experiment;
        let l = &mut self.limits;
        if self.points.is_none() {
            self.points = Some(PointSource::Generator(match e {
                Theorem1Forward | Theorem2 => PointGenerator::MultiRing {
                    n_min: 1,
                    n_max: 10,
                    sector: None,
                },
                Theorem1Converse => PointGenerator::MultiRing {
                    n_min: 1,
                    n_max: 8,
                    sector: Some([std::f64::consts::PI, std::f64::consts::TAU]),
                },
                Prop3 => PointGenerator::Prop3 {
                    params: Prop3Params::n_two_n(4, 12).expect("default schedule"),
                },
                Lemma2 => PointGenerator::Random {
                    count: 200,
                    max_radius: 0.999,
                },
            }));
        }
        if self.arcs.is_none() {
            self.arcs = Some(
                match e {
                    // gap around the accumulation point 1
                    Prop3 => "1:5.783185307179586",
                    _ => "0:pi",
                }
                .to_string(),
            );
        }
        if self.p.is_none() {
            self.p = Some(ladder(
                match e {
                    Theorem1Forward => &[1.0, 2.0][..],
                    Lemma2 => &[0.5, 1.0, 2.0, 3.0][..],
                    Theorem2 | Theorem1Converse | Prop3 => &[2.0][..],
                },
                Exponent::new,
            ));
        }
        if self.alpha.is_none() {
            self.alpha = Some(ladder(&[1.0], Aperture::new));
        }
        if self.grid.is_none() {
            self.grid = Some(match e {
                Lemma2 => 256,
                _ => crate::boundary::DEFAULT_GRID,
            });
        }
        l.witness_max.get_or_insert(match e {
            Theorem2 => 100,
            Prop3 => 10,
            _ => 200,
        });
        l.coverage_log2.get_or_insert(10);
        l.star_depth.get_or_insert(256);
        l.growth_from.get_or_insert(5);
        l.probe_count.get_or_insert(10_000);
        l.point_sets.get_or_insert(10);
        l.set_size.get_or_insert(200);
        if l.prop3.is_none() {
            l.prop3 = Some(Prop3Params::n_two_n(4, 12).expect("default schedule"));
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema != SCHEMA_VERSION {
            return Err(Error::Config(format!(
                "schema {} is not supported (expected {SCHEMA_VERSION})",
                self.schema
            )));
        }
        if self.p.as_ref().is_some_and(|v| v.is_empty()) {
            return Err(Error::Config("p ladder is empty".into()));
        }
        if self.alpha.as_ref().is_some_and(|v| v.is_empty()) {
            return Err(Error::Config("alpha ladder is empty".into()));
        }
        if self.functions.as_ref().is_some_and(|v| v.is_empty()) {
            return Err(Error::Config("function list is empty".into()));
        }
        if self.threads == Some(0) {
            return Err(Error::Config("threads must be >= 1".into()));
        }
        if self.grid.is_some_and(|g| g < 8) {
            return Err(Error::Config("grid must have at least 8 nodes".into()));
        }
        if self.limits.witness_max == Some(0) || self.limits.star_depth == Some(0) {
            return Err(Error::Config("witness_max and star_depth must be >= 1".into()));
        }
        if let Some(arcs) = &self.arcs {
            parse_arc_list(arcs)?;
        }
        Ok(())
    }

    pub fn p_ladder(&self) -> &[Exponent] {
        self.p.as_deref().unwrap_or_default()
    }

    pub fn alpha_ladder(&self) -> &[Aperture] {
        self.alpha.as_deref().unwrap_or_default()
    }

    pub fn arc_set(&self) -> Result<ArcSet> {
        parse_arc_list(self.arcs.as_deref().unwrap_or("0:pi"))
    }

    pub fn point_set(&self) -> Result<PointSet> {
        self.points
            .as_ref()
            .ok_or_else(|| Error::Config("no point set".into()))?
            .load(self.seed)
    }

    /// Configured functions, or `None` for the experiment's built-in family.
    pub fn function_list(&self) -> Result<Option<Vec<FunctionSpec>>> {
        self.functions
            .as_ref()
            .map(|list| list.iter().map(FunctionSource::load).collect())
            .transpose()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_resolves() {
        let cfg = ExperimentConfig::from_json(r#"{"schema":1,"experiment":"theorem1-converse"}"#).unwrap();
        assert_eq!(cfg, ExperimentConfig::new(ExperimentName::Theorem1Converse));
        assert_eq!(cfg.limits.witness_max, Some(200));
        assert_eq!(cfg.arc_set().unwrap().measure(), std::f64::consts::PI);
    }

    #[test]
    fn validation_errors() {
        assert!(ExperimentConfig::from_json(r#"{"schema":2,"experiment":"prop3"}"#).is_err());
        assert!(ExperimentConfig::from_json(r#"{"schema":1,"experiment":"nope"}"#).is_err());
        assert!(ExperimentConfig::from_json(r#"{"schema":1,"experiment":"prop3","p":[]}"#).is_err());
        assert!(ExperimentConfig::from_json(r#"{"schema":1,"experiment":"prop3","bogus":1}"#).is_err());
        assert!(ExperimentConfig::from_json(r#"{"schema":1,"experiment":"prop3","arcs":"0:"}"#).is_err());
    }

    #[test]
    fn sources_parse() {
        let text = r#"{"schema":1,"experiment":"lemma2","seed":3,
            "functions":[{"factors":[{"kind":"monomial","degree":2}]},{"path":"f.json"}],
            "points":{"kind":"multi_ring","n_min":1,"n_max":2},
            "p":[0.5,"inf"],"alpha":[2]}"#;
        let cfg = ExperimentConfig::from_json(text).unwrap();
        assert!(matches!(cfg.functions.as_ref().unwrap()[1], FunctionSource::Path { .. }));
        assert_eq!(cfg.point_set().unwrap().len(), 20);
        assert!(cfg.p_ladder()[1].is_infinite());
        let inline = r#"{"schema":1,"experiment":"lemma2","points":{"points":[{"re":0.1,"im":0.2}]}}"#;
        assert_eq!(ExperimentConfig::from_json(inline).unwrap().point_set().unwrap().len(), 1);
    }

    #[test]
    fn echo_round_trips() {
        for e in ExperimentName::ALL {
            let cfg = ExperimentConfig::new(e);
            let back = ExperimentConfig::from_json(&cfg.to_json().unwrap()).unwrap();
            assert_eq!(back, cfg);
            assert_eq!(e.as_str().parse::<ExperimentName>().unwrap(), e);
        }
    }
}
