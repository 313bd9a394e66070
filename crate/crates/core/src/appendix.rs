//! Numerical checks for the global-maximum argument behind the classical sum:
//! partial sums of the log-cosine series, the extrema of
//! `f(t) = sum_{k<=2n} (-1)^k cos(kt)/k + log(2 cos(t/2))`, and the
//! `pi^2 / (32 n^3)` asymptotic of the gap `f(t_2) - f(t_0)`.
//!
//! Every sum here is compensated; the pieces are `O(log n)` and cancel.

use crate::complex::KahanSum;
use crate::error::{Error, Result};
use crate::kernels::{cosine_integral, EULER_GAMMA};
use rayon::prelude::*;
use std::f64::consts::PI;

/// Closest a grid point may come to `+-pi`.
pub const POLE_GUARD: f64 = 1e-6;

fn sign(k: usize) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn check_open(theta: f64) -> Result<()> {
    if !(theta.abs() < PI) {
        return Err(Error::Domain(format!("theta = {theta} is outside (-pi, pi)")));
    }
    Ok(())
}

/// `sum_{k=1}^n (-1)^k cos(k theta) / k`.
pub fn log_partial_sum(n: usize, theta: f64) -> f64 {
    (1..=n).map(|k| sign(k) * (k as f64 * theta).cos() / k as f64).collect::<KahanSum>().value()
}

/// Pointwise limit `-log(cos(theta/2)) - log 2` of [`log_partial_sum`].
pub fn log_series_limit(theta: f64) -> f64 {
    -(theta / 2.0).cos().ln() - 2f64.ln()
}

/// `count` evenly spaced points on `[-pi + guard, pi - guard]`.
pub fn theta_grid(count: usize, guard: f64) -> Vec<f64> {
    let (a, b) = (-PI + guard, PI - guard);
    if count < 2 {
        return vec![0.0; count];
    }
    (0..count).map(|i| a + (b - a) * i as f64 / (count - 1) as f64).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundCheck {
    /// Smallest value of `|limit| + M - |s_n|`; nonnegative means the bound holds.
    pub margin: f64,
    /// Partial-sum order at the worst point.
    pub n: usize,
    pub theta: f64,
}

/// Tests `|s_n(theta)| <= |limit(theta)| + M` for all `n <= n_max` on the grid.
pub fn bound_check(n_max: usize, theta_grid: &[f64], m: f64) -> Result<BoundCheck> {
    if n_max == 0 || theta_grid.is_empty() {
        return Err(Error::InvalidInput("bound check needs n_max >= 1 and a nonempty grid".into()));
    }
    if let Some(t) = theta_grid.iter().find(|t| !(t.abs() <= PI - POLE_GUARD)) {
        return Err(Error::InvalidInput(format!("grid point {t} is within {POLE_GUARD} of +-pi")));
    }
    let worst = theta_grid
        .par_iter()
        .map(|&t| {
            let envelope = 0.5 * ((1.0 + t.cos()).ln() + 2f64.ln()).abs() + m;
            let mut s = KahanSum::new();
            let mut best = BoundCheck { margin: f64::INFINITY, n: 0, theta: t };
            for k in 1..=n_max {
                s.add(sign(k) * (k as f64 * t).cos() / k as f64);
                let margin = envelope - s.value().abs();
                if margin < best.margin {
                    best = BoundCheck { margin, n: k, theta: t };
                }
            }
            best
        })
        .collect::<Vec<_>>();
    Ok(worst.into_iter().fold(BoundCheck { margin: f64::INFINITY, n: 0, theta: 0.0 }, |a, b| {
        if b.margin < a.margin {
            b
        } else {
            a
        }
    }))
}

/// `sum_{k=1}^{2n} (-1)^k cos(k theta) / k + log(2 cos(theta/2))`.
pub fn f_appendix(n: usize, theta: f64) -> Result<f64> {
    check_open(theta)?;
    let mut s: KahanSum = (1..=2 * n).map(|k| sign(k) * (k as f64 * theta).cos() / k as f64).collect();
    s.add((2.0 * (theta / 2.0).cos()).ln());
    Ok(s.value())
}

/// `-sin((4n+1) theta / 2) / (2 cos(theta / 2))`.
pub fn f_appendix_derivative(n: usize, theta: f64) -> Result<f64> {
    check_open(theta)?;
    Ok(-((4 * n + 1) as f64 * theta / 2.0).sin() / (2.0 * (theta / 2.0).cos()))
}

/// Derivative of [`f_appendix`] summed term by term,
/// `-sum (-1)^k sin(k theta) - tan(theta/2) / 2`.
pub fn f_appendix_derivative_sum(n: usize, theta: f64) -> Result<f64> {
    check_open(theta)?;
    let mut s: KahanSum = (1..=2 * n).map(|k| -sign(k) * (k as f64 * theta).sin()).collect();
    s.add(-(theta / 2.0).tan() / 2.0);
    Ok(s.value())
}

/// Extremum `theta_k = 2 pi k / (4n + 1)`.
pub fn extremum(n: usize, k: usize) -> f64 {
    2.0 * PI * k as f64 / (4 * n + 1) as f64
}

fn check_omega(t: f64, k: usize, n: usize) -> Result<()> {
    if !(1 <= k && k < n) {
        return Err(Error::Domain(format!("k = {k} is outside 1..={}", n.saturating_sub(1))));
    }
    if !(t > 0.0 && t <= PI) {
        return Err(Error::Domain(format!("t = {t} is outside (0, pi]")));
    }
    Ok(())
}

/// Difference of adjacent maxima increments, shifted by `t`; vanishes at `t = 0`.
pub fn omega(t: f64, k: usize, n: usize) -> Result<f64> {
    check_omega(t, k, n)?;
    let big = (4 * n + 1) as f64;
    let hi = 4.0 * PI * (k as f64 + 0.5) / big;
    let lo = 4.0 * PI * (k as f64 - 0.5) / big;
    let s = 2.0 * t / big;
    Ok((f_appendix(n, hi + s)? - f_appendix(n, lo + s)?) - (f_appendix(n, hi - s)? - f_appendix(n, lo - s)?))
}

/// `omega'(t) = (4 sin t sin(pi/N) / N) [sin a+ / (cos 2a+ + cos(2pi/N)) - (a+ -> a-)]`
/// with `N = 4n + 1` and `a+- = (2 pi k +- t) / N`.
pub fn omega_prime(t: f64, k: usize, n: usize) -> Result<f64> {
    check_omega(t, k, n)?;
    let big = (4 * n + 1) as f64;
    let c = (2.0 * PI / big).cos();
    let frac = |a: f64| a.sin() / ((2.0 * a).cos() + c);
    let ap = (2.0 * PI * k as f64 + t) / big;
    let am = (2.0 * PI * k as f64 - t) / big;
    Ok(4.0 * t.sin() * (PI / big).sin() / big * (frac(ap) - frac(am)))
}

/// Whether consecutive differences of the maxima `f(theta_{2k})` increase.
pub fn maxima_increments_increasing(n: usize) -> Result<bool> {
    let vals = (0..=n).map(|k| f_appendix(n, extremum(n, 2 * k))).collect::<Result<Vec<_>>>()?;
    Ok(vals.windows(3).all(|w| w[2] - w[1] > w[1] - w[0]))
}

/// Index `k` of the largest maximum `f(theta_{2k})`, `0 <= k <= n`.
pub fn global_max_index(n: usize) -> Result<usize> {
    let mut best = (0, f64::NEG_INFINITY);
    for k in 0..=n {
        let v = f_appendix(n, extremum(n, 2 * k))?;
        if v > best.1 {
            best = (k, v);
        }
    }
    Ok(best.0)
}

/// `f(theta_2) - f(theta_0)` in the form
/// `-2 sum_{k<=2n} (-1)^k sin^2(2 pi k / N) / k + log cos(2 pi / N)`.
pub fn gap_asymptotic(n: usize) -> f64 {
    let big = (4 * n + 1) as f64;
    let mut s: KahanSum = (1..=2 * n)
        .map(|k| {
            let v = (2.0 * PI * k as f64 / big).sin();
            -2.0 * sign(k) * v * v / k as f64
        })
        .collect();
    s.add((2.0 * PI / big).cos().ln());
    s.value()
}

/// Leading coefficient of the gap.
pub const GAP_COEFFICIENT: f64 = PI * PI / 32.0;

/// `2 r(2n) - r(n)` with `r(n) = n^3 gap(n)`, removing the `1/n` correction.
pub fn gap_coefficient_richardson(n: usize) -> f64 {
    let r = |m: usize| (m as f64).powi(3) * gap_asymptotic(m);
    2.0 * r(2 * n) - r(n)
}

/// `pi x / 2` with `x = (gamma_E + log 2 pi - Ci(2 pi)) / (2 pi)`, the common
/// limit of the even and odd sums.
pub fn riemann_limit() -> Result<f64> {
    let x = (-cosine_integral(2.0 * PI)? + EULER_GAMMA + (2.0 * PI).ln()) / (2.0 * PI);
    Ok(PI * x / 2.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiemannDefects {
    /// `n^2 (S_even - pi x / 2)`, tends to `-pi^2 / 24`.
    pub even: f64,
    /// `n^2 (S_odd - pi x / 2)`, tends to `pi^2 / 48`.
    pub odd: f64,
    /// `n^2 log cos(2 pi / N)`, tends to `-pi^2 / 8`.
    pub log_leading: f64,
    /// `n^3 (log cos(2 pi / N) + pi^2 / (8 n^2))`, tends to `pi^2 / 16`.
    pub log_next: f64,
}

/// Scaled defects of the even and odd halves of the gap sum and of its
/// logarithm term.
pub fn riemann_expansion_check(n: usize) -> Result<RiemannDefects> {
    if n < 100 {
        return Err(Error::InvalidInput(format!("n = {n} is below 100")));
    }
    let big = (4 * n + 1) as f64;
    let even: KahanSum = (1..=n)
        .map(|k| {
            let v = (4.0 * PI * k as f64 / big).sin();
            v * v / (2 * k) as f64
        })
        .collect();
    let odd: KahanSum = (1..=n)
        .map(|k| {
            let j = (2 * k - 1) as f64;
            let v = (2.0 * PI * j / big).sin();
            v * v / j
        })
        .collect();
    let lim = riemann_limit()?;
    let nf = n as f64;
    let lc = (2.0 * PI / big).cos().ln();
    Ok(RiemannDefects {
        even: nf * nf * (even.value() - lim),
        odd: nf * nf * (odd.value() - lim),
        log_leading: nf * nf * lc,
        log_next: nf.powi(3) * (lc + PI * PI / (8.0 * nf * nf)),
    })
}

/// `sum_{k<=n} cos(k pi / (2n+1)) / k - [H_n - sum_{k<=n} 2 sin^2(pi k / (4n+2)) / k]`,
/// zero up to rounding.
pub fn harmonic_decomposition_residual(n: usize) -> f64 {
    let big = (2 * n + 1) as f64;
    let lhs: KahanSum = (1..=n).map(|k| (PI * k as f64 / big).cos() / k as f64).collect();
    let mut rhs: KahanSum = (1..=n).map(|k| 1.0 / k as f64).collect();
    for k in 1..=n {
        let v = (PI * k as f64 / (2.0 * big)).sin();
        rhs.add(-2.0 * v * v / k as f64);
    }
    lhs.value() - rhs.value()
}
