//! Scalar special functions.

mod bessel;
mod cosint;
mod gamma;
mod product;

pub use bessel::{bessel_j, bessel_j_with, bessel_pair, bessel_pair_log, BesselValue, LogValue, MAX_ARGUMENT};
pub use cosint::{cosine_integral, EULER_GAMMA};
pub use gamma::{gamma_complex, ln_gamma};
pub use product::bessel_product_integral;


use crate::error::{Error, Result};

/// Truncation control for power series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    pub max_terms: usize,
    /// Stop once three consecutive terms fall below `tol` times the running sum.
    pub tol: f64,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig { max_terms: 400, tol: 1e-14 }
    }
}

impl SeriesConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_terms == 0 {
            return Err(Error::InvalidInput("max_terms must be at least 1".into()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidInput("series tol must be positive".into()));
        }
        Ok(())
    }
}
