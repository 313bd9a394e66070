//! `J_a(z) J_b(z)` through the integral
//! `(2/pi) int_0^{pi/2} J_{a+b}(2z cos t) cos((a-b) t) dt`.
//!
//! Near `t = pi/2` the integrand behaves like `(pi/2 - t)^{a+b}`, which is not
//! smooth for non-integer orders. That end is handled by substituting
//! `s = pi/2 - t`, peeling off the leading power analytically and integrating
//! the remainder on geometrically graded panels.

use super::bessel::{bessel_j, normalized_series};
use super::gamma::ln_rgamma;
use super::SeriesConfig;
use crate::complex::CompensatedSum;
use crate::error::{finite, Error, Result};
use crate::quadrature::{panel_integral_1d_est, GaussRule, QuadratureSpec};
use num_complex::Complex64;
use std::cell::RefCell;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

const GRADED_LEVELS: usize = 60;

pub fn bessel_product_integral(
    alpha: Complex64,
    beta: Complex64,
    z: Complex64,
    quad: &QuadratureSpec,
) -> Result<Complex64> {
    quad.validate()?;
    let a = alpha + beta;
    let b = alpha - beta;
    if !(a.re > -1.0) {
        return Err(Error::Domain(format!("product integral needs Re(alpha + beta) > -1, got {}", a.re)));
    }
    let cfg = SeriesConfig::default();
    let two_z = z * 2.0;

    // Interior piece on [0, pi/4].
    let first_err = RefCell::new(None);
    let inner = panel_integral_1d_est(
        |t| match bessel_j(a, two_z * t.cos()) {
            Ok(j) => j * (b * t).cos(),
            Err(e) => {
                first_err.borrow_mut().get_or_insert(e);
                Complex64::new(0.0, 0.0)
            }
        },
        0.0,
        FRAC_PI_4,
        quad,
    )?;
    if let Some(e) = first_err.into_inner() {
        return Err(e);
    }

    // Endpoint piece: z^a int_0^{pi/4} s^a H(s) ds with H smooth.
    let Some(lrg) = ln_rgamma(a + 1.0) else {
        return Err(Error::Domain("order sum is a pole of the gamma function".into()));
    };
    let rgamma = lrg.exp();
    let h = |s: f64| -> Result<Complex64> {
        let ratio = if s == 0.0 { 1.0 } else { s.sin() / s };
        let r = normalized_series(a, two_z * s.sin(), &cfg)?;
        Ok(Complex64::new(ratio, 0.0).powc(a) * r * rgamma * (b * (FRAC_PI_2 - s)).cos())
    };
    let h0 = h(0.0)?;
    let l = FRAC_PI_4;
    let lead = h0 * Complex64::new(l, 0.0).powc(a + 1.0) / (a + 1.0);
    let graded = |order: usize| -> Result<Complex64> {
        let rule = GaussRule::new(order);
        let mut acc = CompensatedSum::new();
        let mut hi = l;
        for _ in 0..GRADED_LEVELS {
            let lo = hi * 0.5;
            for (s, w) in rule.mapped(lo, hi) {
                acc.add(Complex64::new(s, 0.0).powc(a) * (h(s)? - h0) * w);
            }
            hi = lo;
        }
        Ok(acc.value())
    };
    let g1 = graded(16)?;
    let g2 = graded(32)?;
    let scale = (lead + g2).norm().max(1.0);
    if (g1 - g2).norm() > quad.tol * scale {
        return Err(Error::NoConvergence { what: "product integral endpoint", iterations: 32 * GRADED_LEVELS });
    }
    let zpow = if a == Complex64::new(0.0, 0.0) { Complex64::new(1.0, 0.0) } else { z.powc(a) };
    let endpoint = zpow * (lead + g2);
    finite((inner.value + endpoint) * (2.0 / PI), "product integral")
}
