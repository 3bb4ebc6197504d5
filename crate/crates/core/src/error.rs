use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty window")]
    EmptyWindow,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(
        "quadrature failed to converge after {doublings} doublings (last delta {last_delta:.3e})"
    )]
    QuadratureFailure { doublings: u32, last_delta: f64 },

    #[error("grids too coarse to certify separation > 0 (refined distance {refined:.3e}, margin {margin:.3e})")]
    GridTooCoarse { refined: f64, margin: f64 },

    #[error("map is not in the positive class: first violation at {witness}")]
    NotPositiveClass { witness: String },

    #[error("sampled-norm ladder is non-monotone beyond tolerance (step {step}: {previous} -> {current}); the map is likely not continuous up to |w| = 1 at this truncation")]
    LadderNonMonotone {
        step: usize,
        previous: f64,
        current: f64,
    },

    #[error("refusing to certify: series truncation tail {tail:.3e} is not below margin/10 = {budget:.3e}")]
    RefuseCertify { tail: f64, budget: f64 },

    #[error("upper-bound series stays above 1 up to the overflow guard R = {guard}")]
    NoUpperRoot { guard: f64 },

    #[error("unknown condenser id `{0}`")]
    UnknownCondenser(String),

    #[error("self-intersecting polygon (edges {0} and {1} cross)")]
    SelfIntersecting(usize, usize),

    #[error("oracle failure: {0}")]
    OracleFailure(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
