use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("hypothesis violated ({hypothesis}): {detail}")]
    Hypothesis {
        hypothesis: &'static str,
        detail: String,
    },

    #[error("profile has not been validated")]
    Unvalidated,

    #[error("r = {r} lies outside the tabulated range [{lo}, {hi}]")]
    OutOfRange { r: f64, lo: f64, hi: f64 },

    #[error("profile is not radially symmetric")]
    NotRadial,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("no admissible radial majorant: {0}")]
    Headroom(String),

    #[error("norm radius s = {s} exceeds grid extent r_max = {r_max}")]
    Coverage { s: f64, r_max: f64 },

    #[error("eigenvalue not converged: {0}")]
    Convergence(String),

    #[error("computational domain too small: {0}")]
    DomainSize(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("config error{}: {message}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Config { line: Option<usize>, message: String },

    #[error("incompatible runs: {0}")]
    Incompatible(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(line: Option<usize>, msg: impl Into<String>) -> Self {
        Error::Config {
            line,
            message: msg.into(),
        }
    }

    /// True for failures of the numerical solve (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Convergence(_) | Error::DomainSize(_))
    }
}
