use num_complex::Complex64;
use thiserror::Error;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole: argument {at} is within the guard band of a singular point")]
    Pole { at: Complex64 },

    #[error("no convergence in {what} after {iterations} iterations")]
    NoConvergence { what: &'static str, iterations: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("branch point: angle {theta} is too close to a jump of the closed form")]
    BranchPoint { theta: f64 },

    #[error("degenerate region: triangle area {area:e} is below the minimum")]
    DegenerateRegion { area: f64 },

    #[error("overflow: {0} is not representable as a finite value")]
    Overflow(&'static str),

    #[error("precision loss in {what}: estimated relative error {rel_err:e}")]
    PrecisionLoss { what: &'static str, rel_err: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// True for the two failure classes the CLI reports as numerical (exit status 2).
    pub fn is_numerical(&self) -> bool {
        !matches!(self, Error::InvalidInput(_) | Error::Domain(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn finite(value: Complex64, what: &'static str) -> Result<Complex64> {
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow(what))
    }
}
