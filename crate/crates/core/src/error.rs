use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument is outside the range an operation supports.
    #[error("{what} = {value} is outside the supported range {range}")]
    Range {
        what: &'static str,
        value: f64,
        range: &'static str,
    },

    /// A point was passed to a function defined only on a bounded set.
    #[error("point {point:?} lies outside the domain ({detail})")]
    OutsideDomain { point: Vec<f64>, detail: String },

    #[error("invalid domain specification: {0}")]
    InvalidDomain(String),

    #[error("grid spacing h = {h} is too coarse (must be below {limit})")]
    TooCoarse { h: f64, limit: f64 },

    #[error("grid has no interior nodes")]
    EmptyGrid,

    #[error("unsupported domain for {operation}: {detail}")]
    Unsupported { operation: &'static str, detail: String },

    #[error("coefficient bound violated: {0}")]
    CoefficientBounds(String),

    /// Iteration failed to converge; carries the best residuals reached.
    #[error("{what} did not converge after {iterations} iterations (best residuals {residuals:?})")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
        residuals: Vec<f64>,
    },

    /// Root bracket could not be established or refined.
    #[error("root finding failed for {what}: bracket [{lo}, {hi}]")]
    Bracket { what: String, lo: f64, hi: f64 },

    #[error("factorization failed: {0}")]
    Factorization(String),

    #[error("insufficient eigenvalues: need {need}, have {have}")]
    InsufficientEigenvalues { need: usize, have: usize },

    #[error("degenerate spectrum: {0}")]
    DegenerateSpectrum(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True for failures of a numerical method, as opposed to bad input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. }
                | Error::Bracket { .. }
                | Error::Factorization(_)
                | Error::DegenerateSpectrum(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
