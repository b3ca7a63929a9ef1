use thiserror::Error;

/// Errors raised by the geometric and numerical routines of this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("form is degenerate: {0}")]
    Nondegeneracy(String),

    #[error("gauge factor vanishes at {location}")]
    Gauge { location: String },

    #[error("density weight {weight} outside [0, {dim}]")]
    WeightRange { weight: f64, dim: usize },

    #[error("dimension {0} not supported here (need n >= 3)")]
    Dimension(usize),

    #[error("fields live on different grids")]
    GridMismatch,

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("singular point reached at {location}")]
    Singularity { location: String },

    #[error("positivity violated at {location}")]
    Positivity { location: String },

    #[error("function is not radial: {0}")]
    Symmetry(String),

    #[error("unsupported form: {0}")]
    UnsupportedForm(String),

    #[error("boundary term does not vanish: {0}")]
    Boundary(String),

    #[error("integral does not converge: {0}")]
    Divergence(String),

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("negative discriminant: e^2 > m^2 has no horizons")]
    Discriminant,

    #[error("test function support invalid: {0}")]
    Support(String),

    #[error("solution blew up at t = {t}, r = {r}")]
    BlowUp { t: f64, r: f64 },

    #[error("no critical point on the integration range")]
    NoSignChange,

    #[error("{count} critical points found where one was expected")]
    Uniqueness { count: usize },

    #[error("linear solve failed: {0}")]
    Solve(String),

    #[error("step failed: {0}")]
    Step(String),
}

pub type Result<T> = std::result::Result<T, Error>;
