use alloc::string::String;

/// Error type shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A conformal factor stopped being strictly positive.
    #[error("positivity violation: {0}")]
    Positivity(String),

    /// Newton iteration did not reach the residual tolerance.
    #[error("newton failure at t = {time}: residual {residual:.3e} after {iterations} iterations")]
    NewtonFailure {
        time: f64,
        residual: f64,
        iterations: usize,
    },

    /// Mollifier width below the grid resolution requirement.
    #[error("under-resolved mollifier: width {width} < 3h = {minimum}")]
    UnderResolved { width: f64, minimum: f64 },

    #[error("insufficient states: {0}")]
    InsufficientStates(String),

    #[error("out of domain: {0}")]
    OutOfDomain(String),

    /// Defensive: cannot occur on rectangular grids.
    #[error("graph disconnected: no path from node {from} to node {to}")]
    Disconnected { from: usize, to: usize },

    /// A metric ball reached the window boundary.
    #[error("ball truncated: B(node {center}, {radius}) touches the grid window boundary")]
    BallTruncated { center: usize, radius: f64 },

    #[error("margin violation: {0}")]
    MarginViolation(String),

    #[error("dimension too small: need n >= {needed}, got {got}")]
    DimensionTooSmall { needed: usize, got: usize },

    /// A claimed degenerate 2-plane fails its invariants.
    #[error("degeneracy violation: {0}")]
    Degeneracy(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
