//! Generalized Anger functions
//! `A_a(x, y) = (1/2pi) int_{-pi}^{pi} exp(i(a t - sum_k (x_k sin kt + y_k cos kt))) dt`,
//! the (1,2) generalized Bessel function, and the closed forms of the
//! harmonic exponential sums `sum (+-1)^n e^{int} / (n + mu)`.

use crate::complex::{integer_distance, sin_pi, sinc_pi, CompensatedSum, I};
use crate::error::{finite, Error, Result};
use crate::kernels::{bessel_j, SeriesConfig};
use crate::quadrature::{panel_integral_1d_est, periodic_trapezoid_est, Integral, QuadratureSpec};
use num_complex::Complex64;
use std::f64::consts::PI;

pub const MAX_TONES: usize = 16;
pub const MAX_AMPLITUDE_SUM: f64 = 100.0;
/// Guard band around integer `mu`.
pub const MU_GUARD: f64 = 1e-8;
/// Guard band around the jumps of the harmonic closed forms.
pub const BRANCH_GUARD: f64 = 1e-9;

/// Tone amplitudes: `x_k` multiplies `sin(k t)`, `y_k` multiplies `cos(k t)`.
/// Empty lists are the unmodulated case.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ModulationCoefficients {
    x: Vec<Complex64>,
    y: Vec<Complex64>,
}

impl ModulationCoefficients {
    pub fn new(x: Vec<Complex64>, y: Vec<Complex64>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::InvalidInput(format!(
                "tone lists differ in length ({} vs {})",
                x.len(),
                y.len()
            )));
        }
        if x.len() > MAX_TONES {
            return Err(Error::InvalidInput(format!("{} tones exceed the cap of {MAX_TONES}", x.len())));
        }
        if x.iter().chain(&y).any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::InvalidInput("tone amplitudes must be finite".into()));
        }
        let m = ModulationCoefficients { x, y };
        if m.l1() > MAX_AMPLITUDE_SUM {
            return Err(Error::InvalidInput(format!(
                "sum of tone magnitudes {} exceeds {MAX_AMPLITUDE_SUM}",
                m.l1()
            )));
        }
        Ok(m)
    }

    /// Builds from lists of possibly unequal length by padding with zeros.
    pub fn padded(mut x: Vec<Complex64>, mut y: Vec<Complex64>) -> Result<Self> {
        let m = x.len().max(y.len());
        x.resize(m, Complex64::new(0.0, 0.0));
        y.resize(m, Complex64::new(0.0, 0.0));
        Self::new(x, y)
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(x: Complex64) -> Self {
        ModulationCoefficients { x: vec![x], y: vec![Complex64::new(0.0, 0.0)] }
    }

    pub fn x(&self) -> &[Complex64] {
        &self.x
    }

    pub fn y(&self) -> &[Complex64] {
        &self.y
    }

    pub fn tones(&self) -> usize {
        self.x.len()
    }

    pub fn is_real(&self) -> bool {
        self.x.iter().chain(&self.y).all(|v| v.im == 0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.iter().chain(&self.y).all(|v| *v == Complex64::new(0.0, 0.0))
    }

    /// `sum_k |x_k| + |y_k|`.
    pub fn l1(&self) -> f64 {
        self.x.iter().chain(&self.y).map(|v| v.norm()).sum()
    }

    /// `sum_k k (|x_k| + |y_k|)`, the effective bandwidth of the phase.
    pub fn bandwidth(&self) -> f64 {
        self.x
            .iter()
            .zip(&self.y)
            .enumerate()
            .map(|(k, (a, b))| (k + 1) as f64 * (a.norm() + b.norm()))
            .sum()
    }

    /// `sum_k y_k`, the phase at `t = 0`.
    pub fn y_sum(&self) -> Complex64 {
        self.y.iter().sum()
    }

    /// `sum_k x_k sin kt + y_k cos kt`.
    pub fn phase(&self, t: f64) -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for (k, (a, b)) in self.x.iter().zip(&self.y).enumerate() {
            let kt = (k + 1) as f64 * t;
            s += a * kt.sin() + b * kt.cos();
        }
        s
    }

    pub fn conj(&self) -> Self {
        ModulationCoefficients {
            x: self.x.iter().map(|v| v.conj()).collect(),
            y: self.y.iter().map(|v| v.conj()).collect(),
        }
    }

    /// Index beyond which integer-order coefficients are below 1e-12.
    pub fn decay_index(&self) -> usize {
        self.bandwidth().ceil() as usize + 60
    }
}

/// `p_a(t) = exp(i(a t - phase(t)))`.
pub fn phase_integrand(alpha: Complex64, theta: f64, mods: &ModulationCoefficients) -> Complex64 {
    (I * (alpha * theta - mods.phase(theta))).exp()
}

/// Generalized Anger function of order `alpha`.
pub fn anger(alpha: Complex64, mods: &ModulationCoefficients, spec: &QuadratureSpec) -> Result<Complex64> {
    Ok(anger_est(alpha, mods, spec)?.value)
}

pub fn anger_est(alpha: Complex64, mods: &ModulationCoefficients, spec: &QuadratureSpec) -> Result<Integral> {
    if !(alpha.re.is_finite() && alpha.im.is_finite()) {
        return Err(Error::InvalidInput("anger order must be finite".into()));
    }
    let f = |t: f64| phase_integrand(alpha, t, mods);
    let integral = if crate::complex::as_integer(alpha).is_some() {
        periodic_trapezoid_est(f, spec)?
    } else {
        panel_integral_1d_est(f, -PI, PI, spec)?
    };
    let scale = 1.0 / (2.0 * PI);
    Ok(Integral { value: finite(integral.value * scale, "anger")?, est_error: integral.est_error * scale })
}

/// `J_n(x, y) = sum_k J_{n-2k}(x) J_k(y)`.
pub fn gbf_12(n: i64, x: Complex64, y: Complex64, cfg: &SeriesConfig) -> Result<Complex64> {
    cfg.validate()?;
    if x.norm() > 20.0 || y.norm() > 20.0 {
        return Err(Error::Domain("gbf_12 supports |x|, |y| <= 20".into()));
    }
    let term = |k: i64| -> Result<Complex64> {
        let a = bessel_j(Complex64::new((n - 2 * k) as f64, 0.0), x)?;
        let b = bessel_j(Complex64::new(k as f64, 0.0), y)?;
        Ok(a * b)
    };
    let mut acc = CompensatedSum::new();
    acc.add(term(0)?);
    // A side is done once both Bessel orders are past their arguments and
    // three consecutive terms are negligible.
    let k_y = y.norm() + 1.0;
    let mut done = [false, false];
    let mut runs = [0usize, 0usize];
    for k in 1..=cfg.max_terms as i64 {
        for (side, sign) in [(0usize, 1i64), (1, -1)] {
            if done[side] {
                continue;
            }
            let kk = sign * k;
            let t = term(kk)?;
            acc.add(t);
            let past = (kk.abs() as f64) > k_y && ((n - 2 * kk).abs() as f64) > x.norm() + 1.0;
            if past && t.norm() <= cfg.tol * acc.value().norm().max(1e-300) {
                runs[side] += 1;
                if runs[side] >= 3 {
                    done[side] = true;
                }
            } else {
                runs[side] = 0;
            }
        }
        if done[0] && done[1] {
            return finite(acc.value(), "gbf_12");
        }
    }
    Err(Error::NoConvergence { what: "gbf_12 convolution", iterations: cfg.max_terms })
}

fn check_mu(mu: Complex64) -> Result<()> {
    if !(mu.re.is_finite() && mu.im.is_finite()) {
        return Err(Error::InvalidInput("mu must be finite".into()));
    }
    if integer_distance(mu) < MU_GUARD {
        return Err(Error::Pole { at: mu });
    }
    Ok(())
}

/// `pi / sin(pi mu)`.
pub(crate) fn pi_over_sin(mu: Complex64) -> Result<Complex64> {
    check_mu(mu)?;
    finite(PI / sin_pi(mu), "pi / sin(pi mu)")
}

/// Closed form of `sum_n (-1)^n e^{int} / (n + mu)`, which equals
/// `pi/sin(pi mu) e^{-i mu t}` on `(-pi, pi)` and repeats with period `2pi`.
pub fn alt_harmonic_closed(mu: Complex64, theta: f64) -> Result<Complex64> {
    let pre = pi_over_sin(mu)?;
    let shift = alt_shift(theta)?;
    finite(pre * (-I * mu * (theta - shift)).exp(), "alternating harmonic closed form")
}

// Period shift for the alternating form, as an explicit table.
fn alt_shift(theta: f64) -> Result<f64> {
    check_theta(theta)?;
    for jump in [-3.0 * PI, -PI, PI, 3.0 * PI] {
        if (theta - jump).abs() < BRANCH_GUARD {
            return Err(Error::BranchPoint { theta });
        }
    }
    Ok(if theta < -PI {
        -2.0 * PI
    } else if theta < PI {
        0.0
    } else {
        2.0 * PI
    })
}

/// Closed form of `sum_n e^{int} / (n + mu)`:
/// `pi/sin(pi mu) e^{i mu pi} e^{-i mu t}` on `(0, 2pi)` and
/// `pi/sin(pi mu) e^{-i mu pi} e^{-i mu t}` on `(-2pi, 0)`.
pub fn plain_harmonic_closed(mu: Complex64, theta: f64) -> Result<Complex64> {
    let pre = pi_over_sin(mu)?;
    check_theta(theta)?;
    for jump in [-2.0 * PI, 0.0, 2.0 * PI] {
        if (theta - jump).abs() < BRANCH_GUARD {
            return Err(Error::BranchPoint { theta });
        }
    }
    // (phase of e^{i mu pi}, period shift)
    let (side, shift) = if theta < -2.0 * PI {
        (-1.0, -2.0 * PI)
    } else if theta < 0.0 {
        (-1.0, 0.0)
    } else if theta < 2.0 * PI {
        (1.0, 0.0)
    } else {
        (1.0, 2.0 * PI)
    };
    finite(pre * (I * mu * (side * PI - (theta - shift))).exp(), "plain harmonic closed form")
}

fn check_theta(theta: f64) -> Result<()> {
    if !(theta.is_finite() && theta.abs() < 3.0 * PI) {
        return Err(Error::Domain(format!("theta = {theta} is outside (-3pi, 3pi)")));
    }
    Ok(())
}

/// `(sum (-1)^n cos(nt) / (n + mu), sum (-1)^n sin(nt) / (n + mu))`
/// `= (pi cos(mu t) / sin(pi mu), -pi sin(mu t) / sin(pi mu))` on `[-pi, pi]`.
pub fn cos_sin_fourier_pair(mu: Complex64, theta: f64) -> Result<(Complex64, Complex64)> {
    let pre = pi_over_sin(mu)?;
    if !(theta.is_finite() && theta.abs() <= PI) {
        return Err(Error::Domain(format!("theta = {theta} is outside [-pi, pi]")));
    }
    let w = mu * theta;
    Ok((finite(pre * w.cos(), "cosine series")?, finite(-pre * w.sin(), "sine series")?))
}

/// De la Vallee-Poussin mean of the symmetric partial sums of
/// `sum_n s^n e^{int} / (n + mu)` with `s = -1` (alternating) or `s = 1`:
/// the average of `S_k` over `k` in `[N/2, N]`. Converges like `N^{-2}` away
/// from the jumps, where raw truncation only gives `N^{-1}`.
pub fn averaged_harmonic_sum(mu: Complex64, theta: f64, alternating: bool, n: usize) -> Complex64 {
    let n = n.max(2);
    let mut s = CompensatedSum::new();
    s.add(1.0 / mu);
    let mut avg = CompensatedSum::new();
    let lo = n / 2;
    for k in 1..=n {
        let sign = if alternating && k % 2 == 1 { -1.0 } else { 1.0 };
        let e = Complex64::new(0.0, k as f64 * theta).exp();
        s.add(sign * (e / (mu + k as f64) + e.conj() / (mu - k as f64)));
        if k >= lo {
            avg.add(s.value());
        }
    }
    avg.value() / (n - lo + 1) as f64
}

/// Integer-order Anger coefficients `A_j(x, y)` for `|j| <= J`, from one
/// discrete Fourier transform of `exp(-i phase)`. Non-integer orders follow
/// from the band-limited interpolation
/// `A_a = sum_j A_j sinc(a - j) = sin(pi a)/pi sum_j (-1)^j A_j / (a - j)`.
#[derive(Debug, Clone)]
pub struct FourierTable {
    j_max: i64,
    coeffs: Vec<Complex64>,
}

impl FourierTable {
    pub fn new(mods: &ModulationCoefficients) -> FourierTable {
        let j_max = (mods.l1().ceil() as i64).max(mods.decay_index() as i64);
        let mut m = 64usize;
        while (m as i64) < 4 * j_max {
            m *= 2;
        }
        let h = 2.0 * PI / m as f64;
        let samples: Vec<Complex64> = (0..m).map(|k| (-I * mods.phase(-PI + h * k as f64)).exp()).collect();
        let coeffs = (-j_max..=j_max)
            .map(|j| {
                let mut s = CompensatedSum::new();
                for (k, v) in samples.iter().enumerate() {
                    let t = -PI + h * k as f64;
                    s.add(v * Complex64::new(0.0, j as f64 * t).exp());
                }
                s.value() / m as f64
            })
            .collect();
        FourierTable { j_max, coeffs }
    }

    pub fn j_max(&self) -> i64 {
        self.j_max
    }

    /// `A_j` for integer `j`; zero outside the table.
    pub fn integer(&self, j: i64) -> Complex64 {
        if j.abs() > self.j_max {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(j + self.j_max) as usize]
        }
    }

    pub fn order(&self, a: Complex64) -> Complex64 {
        let s = sin_pi(a) / PI;
        let mut acc = CompensatedSum::new();
        for (idx, c) in self.coeffs.iter().enumerate() {
            let j = idx as i64 - self.j_max;
            let d = a - j as f64;
            if d.norm() < 1e-3 {
                acc.add(c * sinc_pi(d));
            } else {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                acc.add(c * (s * sign / d));
            }
        }
        acc.value()
    }
}
