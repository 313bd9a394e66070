//! Transition rate of a periodically driven two-level system.
//!
//! Single tone, `x = A / omega`:
//! `W = (Delta^2 / 2) sum_n Gamma J_n(x)^2 / ((eps - omega n)^2 + Gamma^2)`.
//! Splitting the Lorentzian into partial fractions and applying the classical
//! sum with `gamma = 1` gives
//! `W = (i pi Delta^2 / 4 omega) [J_{m+} J_{-m+} / sin(pi m+) - (m+ -> m-)]`
//! with `m+- = (eps +- i Gamma) / omega`.
//!
//! With several tones `J_n(x)^2` becomes `A_n(x, y)^2`, `x_k = A_k / omega`,
//! `y_k = B_k / omega`, and the sum is rewritten through the squared-GBF
//! closed form. When any `B_k` is nonzero the coefficients are complex, so
//! the multi-tone rate is complex in general.

use crate::anger::{FourierTable, ModulationCoefficients};
use crate::complex::{ln_sin_pi, I};
use crate::error::{finite, Error, Result};
use crate::kernels::{bessel_j, bessel_pair_log, LogValue, SeriesConfig};
use crate::lnsum::gbf_square_closed;
use crate::quadrature::QuadratureSpec;
use crate::tail::{symmetric_sum, TruncationSpec};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Multiplier of [`rate_closed_basis`] in the closed rate. Fixed by
/// calibration against the direct sum.
pub const QUBIT_RATE_CONSTANT: f64 = PI;

/// Relative size of the imaginary residue tolerated in real closed-form rates.
pub const IMAG_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct QubitParams {
    /// Tunnel coupling.
    pub delta: f64,
    /// Dephasing rate.
    pub gamma2: f64,
    /// Static detuning.
    pub epsilon: f64,
    /// Drive frequency.
    pub omega: f64,
    /// Amplitudes of the `sin(k omega t)` drive components.
    pub a_tones: Vec<f64>,
    /// Amplitudes of the `cos(k omega t)` drive components; empty means zero.
    pub b_tones: Vec<f64>,
}

impl QubitParams {
    pub fn single(delta: f64, gamma2: f64, epsilon: f64, omega: f64, amplitude: f64) -> QubitParams {
        QubitParams { delta, gamma2, epsilon, omega, a_tones: vec![amplitude], b_tones: Vec::new() }
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.delta, self.gamma2, self.epsilon, self.omega];
        if all.iter().chain(&self.a_tones).chain(&self.b_tones).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("qubit parameters must be finite".into()));
        }
        if !(self.delta > 0.0) {
            return Err(Error::InvalidInput(format!("delta = {} must be positive", self.delta)));
        }
        if !(self.gamma2 > 0.0) {
            return Err(Error::InvalidInput(format!("gamma2 = {} must be positive", self.gamma2)));
        }
        if !(self.omega > 0.0) {
            return Err(Error::InvalidInput(format!("omega = {} must be positive", self.omega)));
        }
        if self.a_tones.is_empty() {
            return Err(Error::InvalidInput("at least one drive tone is required".into()));
        }
        if self.b_tones.len() > self.a_tones.len() {
            return Err(Error::InvalidInput(format!(
                "{} cosine amplitudes for {} tones",
                self.b_tones.len(),
                self.a_tones.len()
            )));
        }
        Ok(())
    }

    pub fn is_single_tone(&self) -> bool {
        self.a_tones.len() == 1 && self.b_tones.iter().all(|&b| b == 0.0)
    }

    /// `A / omega` of a single-tone drive.
    pub fn x(&self) -> f64 {
        self.a_tones[0] / self.omega
    }

    pub fn modulation(&self) -> Result<ModulationCoefficients> {
        let w = self.omega;
        ModulationCoefficients::padded(
            self.a_tones.iter().map(|a| Complex64::new(a / w, 0.0)).collect(),
            self.b_tones.iter().map(|b| Complex64::new(b / w, 0.0)).collect(),
        )
    }

    /// `(m+, m-)`.
    pub fn mu_pm(&self) -> (Complex64, Complex64) {
        let w = self.omega;
        (Complex64::new(self.epsilon / w, self.gamma2 / w), Complex64::new(self.epsilon / w, -self.gamma2 / w))
    }

    /// The undriven rate `(Delta^2/2) Gamma / (eps^2 + Gamma^2)`.
    pub fn lorentzian(&self) -> f64 {
        0.5 * self.delta * self.delta * self.gamma2 / (self.epsilon * self.epsilon + self.gamma2 * self.gamma2)
    }

    fn lorentz_weight(&self, n: i64) -> f64 {
        let d = self.epsilon - self.omega * n as f64;
        self.gamma2 / (d * d + self.gamma2 * self.gamma2)
    }

    fn require_single(&self) -> Result<()> {
        self.validate()?;
        if !self.is_single_tone() {
            return Err(Error::InvalidInput("this rate needs a single sine tone; use the multi-tone form".into()));
        }
        Ok(())
    }
}

/// Truncated Lorentzian-weighted sum over photon numbers.
pub fn rate_direct(q: &QubitParams, trunc: &TruncationSpec) -> Result<f64> {
    q.require_single()?;
    let x = Complex64::new(q.x(), 0.0);
    let out = symmetric_sum(
        |n| {
            let j = bessel_j(Complex64::new(n as f64, 0.0), x)?;
            Ok(j * j * q.lorentz_weight(n))
        },
        trunc,
        None,
        "qubit rate sum",
    )?;
    Ok(0.5 * q.delta * q.delta * out.value.re)
}

/// `(i Delta^2 / 4 omega) [J_{m+} J_{-m+} / sin(pi m+) - (m+ -> m-)]`.
pub fn rate_closed_basis(q: &QubitParams) -> Result<Complex64> {
    q.require_single()?;
    let (mp, mm) = q.mu_pm();
    let x = Complex64::new(q.x(), 0.0);
    let cfg = SeriesConfig::default();
    let term = |mu: Complex64| -> Result<Complex64> {
        let (pair, _) = bessel_pair_log(mu, -mu, x, &cfg)?;
        LogValue { ln: -ln_sin_pi(mu), mant: Complex64::new(1.0, 0.0) }.mul(pair).value()
    };
    let pre = I * (q.delta * q.delta / (4.0 * q.omega));
    finite(pre * (term(mp)? - term(mm)?), "closed qubit rate")
}

/// Closed-form rate before discarding the imaginary residue.
pub fn rate_closed_complex(q: &QubitParams) -> Result<Complex64> {
    Ok(rate_closed_basis(q)? * QUBIT_RATE_CONSTANT)
}

/// Closed-form rate; fails if the imaginary residue exceeds [`IMAG_TOLERANCE`].
pub fn rate_closed(q: &QubitParams) -> Result<f64> {
    let w = rate_closed_complex(q)?;
    if w.im.abs() > IMAG_TOLERANCE * w.re.abs() {
        return Err(Error::PrecisionLoss { what: "closed qubit rate", rel_err: w.im.abs() / w.re.abs() });
    }
    Ok(w.re)
}

/// `(Delta^2 / 2) sum_n Gamma A_n^2 / ((eps - omega n)^2 + Gamma^2)`.
pub fn rate_multitone_direct(q: &QubitParams, trunc: &TruncationSpec) -> Result<Complex64> {
    q.validate()?;
    let table = FourierTable::new(&q.modulation()?);
    let out = symmetric_sum(
        |n| {
            let a = table.integer(n);
            Ok(a * a * q.lorentz_weight(n))
        },
        trunc,
        None,
        "multi-tone rate sum",
    )?;
    Ok(out.value * (0.5 * q.delta * q.delta))
}

/// `-(i Delta^2 / 4 omega) [S(-m+) - S(-m-)]` with `S` the squared-GBF closed form.
pub fn rate_multitone(q: &QubitParams, spec: &QuadratureSpec) -> Result<Complex64> {
    q.validate()?;
    let mods = q.modulation()?;
    let (mp, mm) = q.mu_pm();
    let sp = gbf_square_closed(&mods, -mp, spec)?;
    let sm = gbf_square_closed(&mods, -mm, spec)?;
    finite(-I * (q.delta * q.delta / (4.0 * q.omega)) * (sp - sm), "multi-tone rate")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParameter {
    Epsilon,
    Amplitude,
    Omega,
}

impl SweepParameter {
    pub fn name(self) -> &'static str {
        match self {
            SweepParameter::Epsilon => "epsilon",
            SweepParameter::Amplitude => "A",
            SweepParameter::Omega => "omega",
        }
    }

    fn apply(self, q: &mut QubitParams, v: f64) {
        match self {
            SweepParameter::Epsilon => q.epsilon = v,
            SweepParameter::Amplitude => q.a_tones[0] = v,
            SweepParameter::Omega => q.omega = v,
        }
    }
}

impl std::str::FromStr for SweepParameter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "epsilon" => Ok(SweepParameter::Epsilon),
            "A" | "a" | "amplitude" => Ok(SweepParameter::Amplitude),
            "omega" => Ok(SweepParameter::Omega),
            _ => Err(Error::InvalidInput(format!("unknown sweep parameter `{s}` (expected epsilon, A or omega)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return Err(Error::InvalidInput("sweep bounds must be finite".into()));
        }
        if !(self.start < self.stop) {
            return Err(Error::InvalidInput(format!("sweep start {} is not below stop {}", self.start, self.stop)));
        }
        if self.count < 2 {
            return Err(Error::InvalidInput(format!("sweep count {} is below 2", self.count)));
        }
        Ok(())
    }

    /// Evenly spaced values; the last one is exactly `stop`.
    pub fn values(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| if i + 1 == self.count { self.stop } else { self.start + (self.stop - self.start) * (i as f64 / last) })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Direct,
    Closed,
}

#[derive(Debug)]
pub struct SweepRow {
    pub value: f64,
    pub rate: Result<f64>,
}

/// Rates along a parameter scan, in ascending parameter order. Failed points
/// keep their error instead of aborting the scan.
pub fn sweep(q: &QubitParams, s: &SweepSpec, method: Method, trunc: &TruncationSpec) -> Result<Vec<SweepRow>> {
    s.validate()?;
    q.require_single()?;
    Ok(s.values()
        .into_par_iter()
        .map(|v| {
            let mut p = q.clone();
            s.parameter.apply(&mut p, v);
            let rate = match method {
                Method::Direct => rate_direct(&p, trunc),
                Method::Closed => rate_closed(&p),
            };
            SweepRow { value: v, rate }
        })
        .collect())
}
