//! Generalized Anger and Bessel functions, Lerche-Newberger harmonic sums and
//! their closed forms, with brute-force oracles for every identity.

pub mod complex;
mod dd;
pub mod error;
pub mod kernels;
pub mod quadrature;

pub use complex::ComplexScalar;
pub use error::{Error, Result};
pub use kernels::SeriesConfig;
pub use quadrature::{QuadratureSpec, TriangleRegion};
pub mod anger;
pub mod appendix;
pub mod calibrate;
pub mod lnsum;
pub mod qubit;
pub mod tail;
pub use anger::ModulationCoefficients;
pub use tail::TruncationSpec;
