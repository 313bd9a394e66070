//! Bessel J of complex order.
//!
//! The ascending series is summed in double-double as
//! `J_nu(z) = (z/2)^nu / Gamma(nu+1) * R_nu(z)` with
//! `R_nu(z) = sum_k (-z^2/4)^k / (k! (nu+1)_k)`, keeping the prefactor in log
//! form so that orders with large imaginary part do not overflow. Integer
//! orders at larger argument use Miller's backward recurrence instead, since
//! the series there cancels beyond what double-double can absorb.

use super::gamma::ln_rgamma;
use super::SeriesConfig;
use crate::complex::{as_integer, CompensatedSum};
use crate::dd::{CDd, Dd};
use crate::error::{finite, Error, Result};
use num_complex::Complex64;

/// Largest `|z|` accepted by the Bessel routines.
pub const MAX_ARGUMENT: f64 = 100.0;

const MILLER_THRESHOLD: f64 = 12.0;
const MAX_GROWTH: f64 = 1e23;
const DD_EPS: f64 = 4.93e-32;

/// A value carried as `mant * exp(ln)`, for quantities whose magnitude would
/// overflow `f64` before they are combined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogValue {
    pub ln: Complex64,
    pub mant: Complex64,
}

impl LogValue {
    pub const ZERO: LogValue = LogValue {
        ln: Complex64 { re: 0.0, im: 0.0 },
        mant: Complex64 { re: 0.0, im: 0.0 },
    };

    pub fn value(&self) -> Result<Complex64> {
        if self.mant == Complex64::new(0.0, 0.0) {
            return Ok(self.mant);
        }
        finite(self.mant * self.ln.exp(), "log-scaled value")
    }

    pub fn mul(self, other: LogValue) -> LogValue {
        LogValue { ln: self.ln + other.ln, mant: self.mant * other.mant }
    }
}

/// Full report of one Bessel evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselValue {
    pub value: Complex64,
    /// `z` lies on the negative real axis with a non-integer order, so the
    /// principal branch of `(z/2)^nu` was used on its cut.
    pub branch_cut: bool,
    pub est_rel_err: f64,
    pub terms: usize,
}

#[derive(Debug, Clone, Copy)]
struct Parts {
    // value = (z/2)^power * exp(ln_coef) * mant; ln_coef None means exactly zero
    power: Complex64,
    ln_coef: Option<Complex64>,
    mant: Complex64,
    rel_err: f64,
    terms: usize,
    branch_cut: bool,
}

fn check_inputs(nu: Complex64, z: Complex64) -> Result<()> {
    if !(nu.re.is_finite() && nu.im.is_finite() && z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidInput("bessel arguments must be finite".into()));
    }
    if z.norm() > MAX_ARGUMENT {
        return Err(Error::Domain(format!(
            "bessel argument |z| = {} exceeds the supported range {MAX_ARGUMENT}",
            z.norm()
        )));
    }
    Ok(())
}

fn ln_half(z: Complex64) -> Complex64 {
    // Treat a signed zero imaginary part as +0 so the cut is approached from above.
    let w = Complex64::new(z.re * 0.5, if z.im == 0.0 { 0.0 } else { z.im * 0.5 });
    w.ln()
}

fn parts(nu: Complex64, z: Complex64, cfg: &SeriesConfig) -> Result<Parts> {
    check_inputs(nu, z)?;
    if let Some(n) = as_integer(nu) {
        let sign = if n < 0 && n % 2 != 0 { -1.0 } else { 1.0 };
        let m = n.unsigned_abs();
        if z.norm() > MILLER_THRESHOLD && m < 100_000 {
            let v = miller(m as usize, z)?;
            return Ok(Parts {
                power: Complex64::new(0.0, 0.0),
                ln_coef: Some(Complex64::new(0.0, 0.0)),
                mant: v * sign,
                rel_err: 1e-14,
                terms: 0,
                branch_cut: false,
            });
        }
        let mut p = series(Complex64::new(m as f64, 0.0), z, cfg)?;
        p.mant *= sign;
        return Ok(p);
    }
    let mut p = series(nu, z, cfg)?;
    p.branch_cut = z.im == 0.0 && z.re < 0.0;
    Ok(p)
}

fn series(nu: Complex64, z: Complex64, cfg: &SeriesConfig) -> Result<Parts> {
    let ln_coef = ln_rgamma(nu + 1.0);
    let zd = CDd::from_c64(z);
    let q = (zd * zd).scale(Dd::new(-0.25));
    let nu_dd = CDd::from_c64(nu);
    let mut sum = CDd::ONE;
    let mut term = CDd::ONE;
    let mut max_term: f64 = 1.0;
    let mut small_run = 0usize;
    let z2 = z.norm_sqr() * 0.25;
    let past_poles = (-nu.re).ceil().max(0.0) as usize + 1;
    for k in 1..=cfg.max_terms {
        let kd = Dd::new(k as f64);
        // (nu + k) exactly in double-double, so near-integer orders keep their offset.
        let den = CDd { re: nu_dd.re + kd, im: nu_dd.im }.scale(kd);
        if den.norm_f64() == 0.0 {
            // 1/Gamma(nu+1) vanishes for these orders; the remaining tail is the
            // continuation handled by reflection, which never reaches here.
            return Err(Error::Pole { at: nu });
        }
        term = term * q / den;
        sum = sum + term;
        let t = term.norm_f64();
        max_term = max_term.max(t);
        let s = sum.norm_f64();
        let small = t <= cfg.tol * s.max(f64::MIN_POSITIVE);
        let converging = small
            && (k as f64) * (nu + k as f64).norm() > z2
            && (k >= past_poles || poles_ahead_negligible(nu, z2, k, t / s.max(f64::MIN_POSITIVE), cfg.tol));
        if converging {
            small_run += 1;
            if small_run >= 3 {
                let s = sum.to_c64();
                let growth = if s.norm() > 0.0 { max_term / s.norm() } else { f64::INFINITY };
                if growth > MAX_GROWTH {
                    return Err(Error::PrecisionLoss {
                        what: "bessel series",
                        rel_err: growth * DD_EPS,
                    });
                }
                return Ok(Parts {
                    power: nu,
                    ln_coef,
                    mant: s,
                    rel_err: growth * DD_EPS + (k as f64) * 1e-17 + 1e-16,
                    terms: k,
                    branch_cut: false,
                });
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::NoConvergence { what: "bessel series", iterations: cfg.max_terms })
}

// For large negative orders the factors (nu + j) pass close to zero far
// beyond the point where the terms became negligible. Bound the product of the
// remaining term ratios instead of summing all the way through.
fn poles_ahead_negligible(nu: Complex64, z2: f64, k: usize, rel_term: f64, tol: f64) -> bool {
    if z2 == 0.0 || rel_term == 0.0 {
        return true;
    }
    let kp = (-nu.re).ceil() as usize + 1;
    let d = crate::complex::integer_distance(nu).max(f64::MIN_POSITIVE);
    let target = tol.ln() - 10.0;
    let ln_z2 = z2.ln();
    let mut b = rel_term.ln();
    for j in k + 1..=kp {
        b += ln_z2 - (j as f64).ln() - (nu + j as f64).norm().ln();
        // Ratios above one occur only where |nu + j| < z2 / j.
        let climbs = (2.0 * z2 / j as f64 + 1.0) * (ln_z2 - (j as f64 * d).ln()).max(0.0);
        if b + climbs < target {
            return true;
        }
    }
    false
}

/// Miller backward recurrence for `J_n(z)`, `n >= 0`.
fn miller(n: usize, z: Complex64) -> Result<Complex64> {
    let big = (n as f64).max(z.norm());
    let mut m = (big + 30.0 + 8.0 * big.sqrt()).ceil() as usize;
    m += m % 2;
    let use_cos = z.im.abs() >= 1.0;
    let two_over_z = Complex64::new(2.0, 0.0) / z;
    let mut v = vec![Complex64::new(0.0, 0.0); m + 2];
    v[m] = Complex64::new(1e-30, 0.0);
    for k in (1..=m).rev() {
        v[k - 1] = v[k] * two_over_z * (k as f64) - v[k + 1];
        if v[k - 1].norm() > 1e250 {
            for x in v[k - 1..].iter_mut() {
                *x *= 1e-250;
            }
        }
    }
    let mut acc = CompensatedSum::new();
    acc.add(v[0]);
    for j in 1..=m / 2 {
        let w = if use_cos && j % 2 == 1 { -2.0 } else { 2.0 };
        acc.add(v[2 * j] * w);
    }
    let norm = if use_cos { z.cos() / acc.value() } else { Complex64::new(1.0, 0.0) / acc.value() };
    finite(v[n] * norm, "bessel recurrence")
}

fn assemble(power: Complex64, ln_coef: Option<Complex64>, mant: Complex64, z: Complex64) -> Result<LogValue> {
    let Some(ln_coef) = ln_coef else {
        return Ok(LogValue::ZERO);
    };
    if power == Complex64::new(0.0, 0.0) {
        return Ok(LogValue { ln: ln_coef, mant });
    }
    if z == Complex64::new(0.0, 0.0) {
        if power.re > 0.0 {
            return Ok(LogValue::ZERO);
        }
        return Err(Error::Domain(format!("J at z = 0 is unbounded for order sum {power}")));
    }
    Ok(LogValue { ln: power * ln_half(z) + ln_coef, mant })
}

/// `R_nu(w) = sum_k (-w^2/4)^k / (k! (nu+1)_k)`, the entire part of `J_nu`.
pub(crate) fn normalized_series(nu: Complex64, w: Complex64, cfg: &SeriesConfig) -> Result<Complex64> {
    check_inputs(nu, w)?;
    Ok(series(nu, w, cfg)?.mant)
}

/// `J_nu(z)` with the default series configuration.
pub fn bessel_j(nu: Complex64, z: Complex64) -> Result<Complex64> {
    Ok(bessel_j_with(nu, z, &SeriesConfig::default())?.value)
}

/// `J_nu(z)` with diagnostics.
pub fn bessel_j_with(nu: Complex64, z: Complex64, cfg: &SeriesConfig) -> Result<BesselValue> {
    cfg.validate()?;
    let p = parts(nu, z, cfg)?;
    let value = assemble(p.power, p.ln_coef, p.mant, z)?.value()?;
    Ok(BesselValue { value, branch_cut: p.branch_cut, est_rel_err: p.rel_err, terms: p.terms })
}

/// `J_a(z) J_b(z)` in log-scaled form. The two powers of `z/2` are merged
/// before exponentiating, which keeps the product finite at `z = 0` when
/// `a + b = 0` and when the factors individually overflow.
pub fn bessel_pair_log(a: Complex64, b: Complex64, z: Complex64, cfg: &SeriesConfig) -> Result<(LogValue, f64)> {
    cfg.validate()?;
    let pa = parts(a, z, cfg)?;
    let pb = parts(b, z, cfg)?;
    let ln_coef = match (pa.ln_coef, pb.ln_coef) {
        (Some(x), Some(y)) => Some(x + y),
        _ => None,
    };
    let lv = assemble(pa.power + pb.power, ln_coef, pa.mant * pb.mant, z)?;
    Ok((lv, pa.rel_err + pb.rel_err))
}

/// `J_a(z) J_b(z)`.
pub fn bessel_pair(a: Complex64, b: Complex64, z: Complex64) -> Result<Complex64> {
    bessel_pair_log(a, b, z, &SeriesConfig::default())?.0.value()
}
