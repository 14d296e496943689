//! Human-readable description of the JSON inputs, printed by `hardy schema`
//! and on usage errors.

pub const SCHEMA_HELP: &str = r#"JSON inputs (schema version 1)

FunctionSpec
  {"factors": [FACTOR, ...]}            product of factors; [] is the constant 1
  FACTOR (each accepts an optional "power": k >= 1)
    {"kind": "monomial", "degree": n}
    {"kind": "blaschke", "zeros": [{"re": x, "im": y}, ...]}
    {"kind": "outer", "data": DATA}      boundary log-modulus DATA
    {"kind": "singular_inner", "angle": t, "mass": m}
    {"kind": "constant", "re": x, "im": y}
  DATA
    {"arcs": [{"center": t, "half_width": h, "level": v}, ...], "background": v}
    {"grid_size": n, "values": [v0, ..., v(n-1)]}

PointSet
  {"points": [{"re": x, "im": y, "gen": n, "weight": w}, ...]}
  "gen" and "weight" are optional; a weight must equal 1-|z|^2.

Arc lists (flags and "arcs" config field)
  "start:end,start:end"  angles as numbers or multiples of pi, e.g. "0:pi,3pi/2:2pi"

ExperimentConfig
  {
    "schema": 1,
    "experiment": "theorem1-forward" | "theorem1-converse" | "theorem2" | "prop3" | "lemma2",
    "seed": 0,
    "threads": 4,                                   optional
    "functions": [FunctionSpec | {"path": "f.json"}],
    "points": PointSet | {"path": "a.json"} | GENERATOR,
    "arcs": "0:pi",
    "p": [1, 2, "inf"],
    "alpha": [1.0],
    "grid": 4096,
    "limits": {"witness_max", "coverage_log2", "star_depth", "growth_from",
               "probe_count", "point_sets", "set_size",
               "prop3": {"n_min": 4, "schedule": [p_4, p_5, ...]}},
    "tolerances": {"norm": 1e-6, "certificate": 1e-3, "identity": 1e-10, "sup": 1e-8,
                   "c_min": 0.5, "ratio_ceiling": 16, "growth": 2, "epsilon_target": 0.05},
    "output": "out/dir"
  }
  GENERATOR
    {"kind": "multi_ring", "n_min": 1, "n_max": 10, "sector": [lo, hi]}
    {"kind": "prop3", "params": {"n_min": 4, "schedule": [...]}}
    {"kind": "cluster", "zeros": [{"re": x, "im": y}, ...], "q": [100, ...]}
    {"kind": "random", "count": 200, "max_radius": 0.999}
  Unset fields take per-experiment defaults; reports echo the resolved config.

Exit codes: 0 success, 1 invalid input, 2 a verdict failed.
"#;
