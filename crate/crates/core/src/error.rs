use thiserror::Error;

/// Everything that can go wrong in the laboratory.
#[derive(Debug, Error)]
pub enum Error {
    #[error("point ({re}, {im}) is not in the open unit disk")]
    OutsideDisk { re: f64, im: f64 },

    #[error("Stolz aperture must be positive and finite, got {0}")]
    InvalidAperture(f64),

    #[error("exponent must be in (0, inf], got {0}")]
    InvalidExponent(f64),

    #[error("invalid arc: {0}")]
    InvalidArc(String),

    #[error("invalid boundary data: {0}")]
    InvalidBoundaryData(String),

    #[error("circle grid too coarse: {size} nodes for |z| = {modulus}, need at least {required}")]
    GridTooCoarse {
        size: usize,
        modulus: f64,
        required: usize,
    },

    #[error("evaluation point with |z| = {0} is too close to the boundary for sampled data")]
    TooCloseToBoundary(f64),

    #[error("invalid function: {0}")]
    InvalidFunction(String),

    #[error("function is identically zero")]
    ZeroFunction,

    #[error("function vanishes on the circle of radius {0}")]
    ZeroOnCircle(f64),

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("invalid point set: {0}")]
    InvalidPointSet(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
