//! Numerical laboratory for sampling sets and thickness in Hardy spaces of
//! the unit disk.
//!
//! The crate evaluates structured analytic functions (Blaschke products,
//! outer functions with piecewise boundary data, singular inner factors),
//! computes nontangential maximal functions restricted to finite point sets
//! exactly by sweeping Stolz-angle arcs, and runs the constructions that
//! separate sampling sets from `H^p`-thick ones.

pub mod boundary;
pub mod config;
pub mod error;
pub mod experiments;
pub mod function;
pub mod geometry;
pub mod points;
pub mod report;
pub mod sampling;
pub mod schema;
pub mod witness;

pub use boundary::{BoundaryData, Exponent};
pub use config::{ExperimentConfig, ExperimentName};
pub use error::{Error, Result};
pub use function::{FunctionSpec, TransformRecord};
pub use geometry::{Aperture, Arc, ArcSet, DiskPoint};
pub use points::PointSet;
pub use report::Report;

/// The seeded generator behind every random choice in the crate.
pub fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}
