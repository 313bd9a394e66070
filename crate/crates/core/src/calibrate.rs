//! One-scalar least-squares calibration of a closed-form prefactor against
//! oracle values, and identification of the constant as a rational multiple
//! of pi.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RationalPi {
    pub p: i64,
    pub q: i64,
    /// `|c - p pi / q|`.
    pub distance: f64,
}

impl RationalPi {
    pub fn value(&self) -> f64 {
        self.p as f64 * PI / self.q as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Calibration {
    pub constant: Complex64,
    /// Largest misfit `|c x_i - y_i|`, relative where `|y_i| > 1`.
    pub residual: f64,
    pub nearest: RationalPi,
}

/// Fits `y_i ~ c x_i`.
pub fn fit_scalar(basis: &[Complex64], target: &[Complex64]) -> Result<Calibration> {
    if basis.len() != target.len() || basis.is_empty() {
        return Err(Error::InvalidInput("calibration needs equally many nonzero samples".into()));
    }
    let num: Complex64 = basis.iter().zip(target).map(|(x, y)| x.conj() * y).sum();
    let den: f64 = basis.iter().map(|x| x.norm_sqr()).sum();
    if den == 0.0 {
        return Err(Error::InvalidInput("calibration basis is identically zero".into()));
    }
    let c = num / den;
    let residual = basis
        .iter()
        .zip(target)
        .map(|(x, y)| (c * x - y).norm() / y.norm().max(1.0))
        .fold(0.0, f64::max);
    Ok(Calibration { constant: c, residual, nearest: nearest_rational_pi(c, 64) })
}

/// Closest `p pi / q` with `1 <= q <= max_q`; ties go to the smaller `q`.
pub fn nearest_rational_pi(c: Complex64, max_q: i64) -> RationalPi {
    let mut best = RationalPi { p: 0, q: 1, distance: f64::INFINITY };
    for q in 1..=max_q {
        let p = (c.re * q as f64 / PI).round() as i64;
        let d = (c - Complex64::new(p as f64 * PI / q as f64, 0.0)).norm();
        if d < best.distance - 1e-15 {
            best = RationalPi { p, q, distance: d };
        }
    }
    best
}
