//! Symmetric truncated sums `sum_{|n| <= N} T_n` with an optional asymptotic
//! tail model.
//!
//! Terms that decay only algebraically (every Lerche-Newberger sum with
//! non-integer orders) cannot be truncated to 1e-8 at any reasonable `N`.
//! When the caller knows the oscillation frequencies `w` and the decay
//! exponent `p` of the remainder, the partial sums are fitted by least squares
//! to `S + sum_w e^{i w N} sum_j c_{w,j} N^{-p-j}` and `S` is reported.

use crate::complex::CompensatedSum;
use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Truncation control for brute-force sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationSpec {
    /// Largest index summed before giving up or switching to extrapolation.
    pub n_max: usize,
    pub tail_tol: f64,
    /// Consecutive small terms required to declare convergence.
    pub stall_count: usize,
    /// Fit the tail of algebraically decaying sums instead of failing at `n_max`.
    pub extrapolate: bool,
    /// Hard cap on the index used for the tail fit.
    pub fit_cap: usize,
}

impl Default for TruncationSpec {
    fn default() -> Self {
        TruncationSpec { n_max: 500, tail_tol: 1e-12, stall_count: 10, extrapolate: true, fit_cap: 200_000 }
    }
}

impl TruncationSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_max < 10 {
            return Err(Error::InvalidInput(format!("n_max = {} is below 10", self.n_max)));
        }
        if !(self.tail_tol > 0.0 && self.tail_tol.is_finite()) {
            return Err(Error::InvalidInput("tail_tol must be positive".into()));
        }
        if self.stall_count == 0 {
            return Err(Error::InvalidInput("stall_count must be at least 1".into()));
        }
        if self.fit_cap < self.n_max {
            return Err(Error::InvalidInput("fit_cap must not be below n_max".into()));
        }
        Ok(())
    }
}

/// How a sum was finished.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumMethod {
    Truncated,
    Extrapolated,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumOutcome {
    pub value: Complex64,
    pub est_error: f64,
    /// Largest `|n|` included.
    pub n_used: usize,
    pub method: SumMethod,
}

/// Asymptotic shape of the remainder `S - S_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct TailModel {
    /// Oscillation frequencies in `(-pi, pi]`; duplicates are merged.
    pub freqs: Vec<f64>,
    /// Leading decay exponent `p` of the remainder.
    pub exponent: Complex64,
    /// Number of powers `N^{-p-j}` per frequency.
    pub orders: usize,
    /// Suggested last index for the fit window.
    pub n_end: usize,
}

impl TailModel {
    pub fn new(freqs: &[f64], exponent: Complex64, orders: usize, base_end: usize) -> TailModel {
        let mut fs: Vec<f64> = Vec::new();
        for &w in freqs {
            let w = wrap(w);
            if !fs.iter().any(|&v| circle_dist(v, w) < 1e-12) {
                fs.push(w);
            }
        }
        let mut gap = f64::INFINITY;
        for i in 0..fs.len() {
            for j in i + 1..fs.len() {
                gap = gap.min(circle_dist(fs[i], fs[j]));
            }
        }
        let by_gap = if gap.is_finite() { (60.0 / gap).ceil() as usize } else { 0 };
        TailModel { freqs: fs, exponent, orders, n_end: base_end.max(by_gap).max(2000) }
    }
}

fn wrap(w: f64) -> f64 {
    let mut r = w.rem_euclid(2.0 * PI);
    if r > PI {
        r -= 2.0 * PI;
    }
    r
}

fn circle_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

const CHUNK: usize = 256;

fn pairs<F>(term: &F, from: usize, to: usize) -> Result<Vec<Complex64>>
where
    F: Fn(i64) -> Result<Complex64> + Sync,
{
    (from..to)
        .into_par_iter()
        .map(|n| {
            if n == 0 {
                term(0)
            } else {
                let n = n as i64;
                Ok(term(n)? + term(-n)?)
            }
        })
        .collect()
}

/// Sum `T_n` over `|n| <= N`, stopping on `stall_count` consecutive small
/// pair terms, or extrapolating the tail when a model is given.
pub fn symmetric_sum<F>(term: F, trunc: &TruncationSpec, tail: Option<&TailModel>, what: &'static str) -> Result<SumOutcome>
where
    F: Fn(i64) -> Result<Complex64> + Sync,
{
    trunc.validate()?;
    let mut acc = CompensatedSum::new();
    let mut partial = Vec::with_capacity(trunc.n_max + 1);
    let mut run = 0usize;
    let mut next = 0usize;
    while next <= trunc.n_max {
        let end = (next + CHUNK).min(trunc.n_max + 1);
        let chunk = pairs(&term, next, end)?;
        for (i, p) in chunk.into_iter().enumerate() {
            let n = next + i;
            acc.add(p);
            let s = acc.value();
            partial.push(s);
            // With an algebraic tail the remainder is roughly n |T_n|.
            let weight = if tail.is_some() { n.max(1) as f64 } else { 1.0 };
            let measure = p.norm() * weight;
            if n > 0 && measure <= trunc.tail_tol * s.norm().max(1.0) {
                run += 1;
                if run >= trunc.stall_count {
                    return Ok(SumOutcome { value: s, est_error: measure, n_used: n, method: SumMethod::Truncated });
                }
            } else {
                run = 0;
            }
        }
        next = end;
    }
    let Some(model) = tail.filter(|_| trunc.extrapolate) else {
        return Err(Error::NoConvergence { what, iterations: trunc.n_max });
    };
    let n_end = model.n_end.clamp(trunc.n_max, trunc.fit_cap);
    let mut next = trunc.n_max + 1;
    while next <= n_end {
        let end = (next + 16 * CHUNK).min(n_end + 1);
        for p in pairs(&term, next, end)? {
            acc.add(p);
            partial.push(acc.value());
        }
        next = end;
    }
    let s1 = fit_limit(&partial, n_end / 2, n_end, model)?;
    let s2 = fit_limit(&partial, n_end / 4, n_end / 2, model)?;
    let est = (s1 - s2).norm();
    Ok(SumOutcome { value: s1, est_error: est, n_used: n_end, method: SumMethod::Extrapolated })
}

fn fit_limit(partial: &[Complex64], lo: usize, hi: usize, model: &TailModel) -> Result<Complex64> {
    let lo = lo.max(1);
    let rows = hi - lo + 1;
    let cols = 1 + model.freqs.len() * model.orders;
    if rows < 2 * cols {
        return Err(Error::InvalidInput("tail fit window is too short".into()));
    }
    let h = hi as f64;
    let mut a = DMatrix::<Complex64>::zeros(rows, cols);
    let mut b = DVector::<Complex64>::zeros(rows);
    for (r, n) in (lo..=hi).enumerate() {
        let x = n as f64 / h;
        let lnx = x.ln();
        a[(r, 0)] = Complex64::new(1.0, 0.0);
        let mut c = 1;
        for &w in &model.freqs {
            let phase = Complex64::new(0.0, w * n as f64).exp();
            for j in 0..model.orders {
                let p = model.exponent + j as f64;
                a[(r, c)] = phase * (-p * lnx).exp();
                c += 1;
            }
        }
        b[r] = partial[n];
    }
    let svd = a.svd(true, true);
    let sol = svd
        .solve(&b, 1e-13)
        .map_err(|_| Error::NoConvergence { what: "tail fit", iterations: rows })?;
    Ok(sol[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_decay_truncates() {
        let out = symmetric_sum(
            |n| Ok(Complex64::new((-(n as f64).powi(2)).exp(), 0.0)),
            &TruncationSpec::default(),
            None,
            "gauss sum",
        )
        .unwrap();
        assert_eq!(out.method, SumMethod::Truncated);
        // sum_n e^{-n^2} = theta_3(0, 1/e)
        assert!((out.value.re - 1.7726372048266521).abs() < 1e-14);
    }

    #[test]
    fn algebraic_tail_is_extrapolated() {
        // sum_n (-1)^n / (n + mu) = pi / sin(pi mu)
        let mu = 0.3;
        let model = TailModel::new(&[PI], Complex64::new(1.0, 0.0), 6, 2000);
        let out = symmetric_sum(
            |n| {
                let s = if n % 2 == 0 { 1.0 } else { -1.0 };
                Ok(Complex64::new(s / (n as f64 + mu), 0.0))
            },
            &TruncationSpec::default(),
            Some(&model),
            "alternating",
        )
        .unwrap();
        assert_eq!(out.method, SumMethod::Extrapolated);
        assert!((out.value.re - PI / (PI * mu).sin()).abs() < 1e-11);
        assert!(out.est_error < 1e-9);
    }

    #[test]
    fn no_model_no_extrapolation() {
        let r = symmetric_sum(
            |n| Ok(Complex64::new(1.0 / (1.0 + (n as f64).powi(2)), 0.0)),
            &TruncationSpec::default(),
            None,
            "lorentz",
        );
        assert!(matches!(r, Err(Error::NoConvergence { .. })));
    }

    #[test]
    fn frequencies_are_merged() {
        let m = TailModel::new(&[PI, -PI, 0.5, 0.5 + 2.0 * PI], Complex64::new(2.0, 0.0), 4, 100);
        assert_eq!(m.freqs.len(), 2);
    }
}
