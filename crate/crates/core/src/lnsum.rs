//! Lerche-Newberger sums and their closed forms.
//!
//! Classical form, for `Re(alpha + beta) > -1` and `gamma` in `(0, 1]`:
//! `sum_n (-1)^n J_{alpha-gamma n}(z) J_{beta+gamma n}(z) / (n + mu)
//!   = pi / sin(pi mu) J_{alpha+gamma mu}(z) J_{beta-gamma mu}(z)`.
//!
//! The generalized form replaces `J` by Anger functions `A(x, y)`. It holds
//! as written for `gamma <= 1/2`; above that, two corner triangles of the
//! period box contribute
//! `(i / 2pi) [e^{i pi mu} I_+ - e^{-i pi mu} I_-]`, with `I_pm` the integrals
//! of `p_{alpha+gamma mu}(t) p_{beta-gamma mu}(s)` over the corners.
//!
//! The squared-GBF sum is
//! `sum_n A_n^2 / (n + mu) = pi (cot(pi mu) A_{-mu}^2 + i B_{-mu})`, where
//! `4 pi^2 B_{-mu}` is the integral of `p_{-mu}(t) p_{-mu}(s) sgn(t + s)`
//! over the box.

use crate::anger::{anger, phase_integrand, pi_over_sin, FourierTable, ModulationCoefficients, MU_GUARD};
use crate::complex::{integer_distance, ln_sin_pi, sin_pi, I};
use crate::error::{finite, Error, Result};
use crate::kernels::{bessel_pair_log, LogValue, SeriesConfig};
use crate::quadrature::{sign_split_integral, triangle_integral, QuadratureSpec, TriangleRegion};
use crate::tail::{symmetric_sum, SumOutcome, TailModel, TruncationSpec};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Prefactor of the corner-triangle correction, as multiplier of
/// [`CorrectedParts::basis`]. Fixed by calibration against the oracle.
pub const CORRECTION_CONSTANT: f64 = PI;

/// Leading constant of the squared-GBF closed form. Fixed by calibration
/// against the oracle.
pub const GBF_SQUARE_CONSTANT: f64 = PI;

/// Parameters of the classical and generalized sums. `z` is used only by the
/// Bessel (one-variable) form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LNParams {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: f64,
    pub mu: Complex64,
    pub z: Complex64,
}

impl LNParams {
    pub fn new(alpha: Complex64, beta: Complex64, gamma: f64, mu: Complex64, z: Complex64) -> Result<LNParams> {
        let p = LNParams { alpha, beta, gamma, mu, z };
        p.validate_common()?;
        Ok(p)
    }

    fn validate_common(&self) -> Result<()> {
        for v in [self.alpha, self.beta, self.mu, self.z] {
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::InvalidInput("parameters must be finite".into()));
            }
        }
        if !(self.gamma > 0.0 && self.gamma <= 1.0) {
            return Err(Error::Domain(format!("gamma = {} is outside (0, 1]", self.gamma)));
        }
        if integer_distance(self.mu) < MU_GUARD {
            return Err(Error::Pole { at: self.mu });
        }
        Ok(())
    }

    fn validate_1d(&self) -> Result<()> {
        self.validate_common()?;
        if !((self.alpha + self.beta).re > -1.0) {
            return Err(Error::Domain(format!(
                "the classical sum needs Re(alpha + beta) > -1, got {}",
                (self.alpha + self.beta).re
            )));
        }
        Ok(())
    }
}

fn sign(n: i64) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn classical_tail(p: &LNParams) -> TailModel {
    let w = PI * (1.0 - p.gamma);
    let freqs: &[f64] = if p.gamma == 1.0 { &[0.0] } else { &[w, -w] };
    let base = 40.0 * (p.z.norm_sqr() / 4.0 + 2.0) / p.gamma;
    TailModel::new(freqs, 1.0 + p.alpha + p.beta, 6, base.ceil() as usize)
}

/// Brute-force classical sum with its diagnostics.
pub fn ln1d_oracle_outcome(p: &LNParams, trunc: &TruncationSpec) -> Result<SumOutcome> {
    p.validate_1d()?;
    let cfg = SeriesConfig::default();
    let tail = classical_tail(p);
    symmetric_sum(
        |n| {
            let nf = n as f64;
            let (pair, _) = bessel_pair_log(p.alpha - p.gamma * nf, p.beta + p.gamma * nf, p.z, &cfg)?;
            Ok(pair.value()? * (sign(n) / (p.mu + nf)))
        },
        trunc,
        Some(&tail),
        "classical Lerche-Newberger sum",
    )
}

pub fn ln1d_oracle(p: &LNParams, trunc: &TruncationSpec) -> Result<Complex64> {
    Ok(ln1d_oracle_outcome(p, trunc)?.value)
}

/// `pi / sin(pi mu) J_{alpha+gamma mu}(z) J_{beta-gamma mu}(z)`.
pub fn ln1d_closed(p: &LNParams) -> Result<Complex64> {
    p.validate_1d()?;
    let (pair, _) = bessel_pair_log(
        p.alpha + p.gamma * p.mu,
        p.beta - p.gamma * p.mu,
        p.z,
        &SeriesConfig::default(),
    )?;
    let pre = LogValue { ln: Complex64::new(PI.ln(), 0.0) - ln_sin_pi(p.mu), mant: Complex64::new(1.0, 0.0) };
    pre.mul(pair).value()
}

fn generalized_tail(gamma: f64, table: &FourierTable) -> TailModel {
    let w = PI * (1.0 - 2.0 * gamma);
    let base = 20.0 * table.j_max() as f64 / gamma;
    TailModel::new(&[PI, w, -w], Complex64::new(2.0, 0.0), 6, base.ceil() as usize)
}

fn check_generalized(alpha: Complex64, beta: Complex64, gamma: f64, mu: Complex64) -> Result<()> {
    LNParams { alpha, beta, gamma, mu, z: Complex64::new(0.0, 0.0) }.validate_common()
}

/// Brute-force generalized sum. The Anger functions come from the
/// band-limited interpolation of one Fourier table, independent of the
/// quadrature used by the closed forms.
pub fn anger_ln_oracle_outcome(
    alpha: Complex64,
    beta: Complex64,
    gamma: f64,
    mu: Complex64,
    mods: &ModulationCoefficients,
    trunc: &TruncationSpec,
) -> Result<SumOutcome> {
    check_generalized(alpha, beta, gamma, mu)?;
    let table = FourierTable::new(mods);
    let tail = generalized_tail(gamma, &table);
    symmetric_sum(
        |n| {
            let nf = n as f64;
            let a = table.order(alpha - gamma * nf);
            let b = table.order(beta + gamma * nf);
            finite(a * b * (sign(n) / (mu + nf)), "generalized sum term")
        },
        trunc,
        Some(&tail),
        "generalized Lerche-Newberger sum",
    )
}

pub fn anger_ln_oracle(
    alpha: Complex64,
    beta: Complex64,
    gamma: f64,
    mu: Complex64,
    mods: &ModulationCoefficients,
    trunc: &TruncationSpec,
) -> Result<Complex64> {
    Ok(anger_ln_oracle_outcome(alpha, beta, gamma, mu, mods, trunc)?.value)
}

/// `pi / sin(pi mu) A_{alpha+gamma mu} A_{beta-gamma mu}`, valid for `gamma <= 1/2`.
pub fn anger_ln_closed(
    alpha: Complex64,
    beta: Complex64,
    gamma: f64,
    mu: Complex64,
    mods: &ModulationCoefficients,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    check_generalized(alpha, beta, gamma, mu)?;
    if gamma > 0.5 {
        return Err(Error::Domain(format!(
            "gamma = {gamma} > 1/2 needs the corner correction (anger_ln_corrected)"
        )));
    }
    product_term(alpha, beta, gamma, mu, mods, spec)
}

fn product_term(
    alpha: Complex64,
    beta: Complex64,
    gamma: f64,
    mu: Complex64,
    mods: &ModulationCoefficients,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    let a = anger(alpha + gamma * mu, mods, spec)?;
    let b = anger(beta - gamma * mu, mods, spec)?;
    finite(pi_over_sin(mu)? * a * b, "anger product")
}

/// Pieces of the corrected generalized closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrectedParts {
    pub main: Complex64,
    /// Integral over the upper-left corner triangle.
    pub plus: Complex64,
    /// Integral over the lower-right corner triangle.
    pub minus: Complex64,
    /// `(i / 2pi^2) [e^{i pi mu} plus - e^{-i pi mu} minus]`; the correction is
    /// a real multiple of this.
    pub basis: Complex64,
}

impl CorrectedParts {
    pub fn total(&self, constant: f64) -> Complex64 {
        self.main + self.basis * constant
    }
}

pub fn anger_ln_corrected_parts(
    alpha: i64,
    beta: i64,
    gamma: f64,
    mu: Complex64,
    mods: &ModulationCoefficients,
    spec: &QuadratureSpec,
) -> Result<CorrectedParts> {
    let (a, b) = (Complex64::new(alpha as f64, 0.0), Complex64::new(beta as f64, 0.0));
    check_generalized(a, b, gamma, mu)?;
    if gamma <= 0.5 {
        return Err(Error::Domain(format!("gamma = {gamma} <= 1/2 has no corner correction")));
    }
    let main = product_term(a, b, gamma, mu, mods, spec)?;
    let oa = a + gamma * mu;
    let ob = b - gamma * mu;
    let f = |t: f64, s: f64| phase_integrand(oa, t, mods) * phase_integrand(ob, s, mods);
    let over = |region: Option<TriangleRegion>| -> Result<Complex64> {
        match region {
            Some(r) => triangle_integral(f, &r, spec),
            None => Ok(Complex64::new(0.0, 0.0)),
        }
    };
    let plus = over(TriangleRegion::delta_plus(gamma))?;
    let minus = over(TriangleRegion::delta_minus(gamma))?;
    let e = (I * PI * mu).exp();
    let basis = I / (2.0 * PI * PI) * (e * plus - minus / e);
    Ok(CorrectedParts { main, plus, minus, basis: finite(basis, "corner correction")? })
}

/// Generalized closed form for `gamma` in `(1/2, 1]` and integer `alpha`, `beta`.
pub fn anger_ln_corrected(
    alpha: i64,
    beta: i64,
    gamma: f64,
    mu: Complex64,
    mods: &ModulationCoefficients,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    Ok(anger_ln_corrected_parts(alpha, beta, gamma, mu, mods, spec)?.total(CORRECTION_CONSTANT))
}

/// `sum_n A_n^2 / (n + mu)` with `A_n` from quadrature.
pub fn gbf_square_oracle_outcome(
    mods: &ModulationCoefficients,
    mu: Complex64,
    trunc: &TruncationSpec,
    spec: &QuadratureSpec,
) -> Result<SumOutcome> {
    check_generalized(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), 1.0, mu)?;
    symmetric_sum(
        |n| {
            let a = anger(Complex64::new(n as f64, 0.0), mods, spec)?;
            finite(a * a / (mu + n as f64), "squared GBF term")
        },
        trunc,
        None,
        "squared GBF sum",
    )
}

pub fn gbf_square_oracle(mods: &ModulationCoefficients, mu: Complex64, trunc: &TruncationSpec) -> Result<Complex64> {
    Ok(gbf_square_oracle_outcome(mods, mu, trunc, &QuadratureSpec::default())?.value)
}

/// Pieces of the squared-GBF closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GbfSquareParts {
    /// `A_{-mu}^2`.
    pub a_sq: Complex64,
    /// `B_{-mu}`.
    pub b: Complex64,
    /// `cot(pi mu) A_{-mu}^2 + i B_{-mu}`; the sum is a real multiple of this.
    pub basis: Complex64,
    /// `(|cot(pi mu) A^2| + |B|) / |basis|`. Large `|Im mu|` makes both pieces
    /// grow like `e^{2 pi |Im mu|}` while the sum stays `O(1 / |mu|)`.
    pub cancellation: f64,
}

/// Relative accuracy of the two pieces of the squared-GBF closed form.
pub const GBF_SQUARE_PIECE_ACCURACY: f64 = 1e-13;

pub fn gbf_square_parts(mods: &ModulationCoefficients, mu: Complex64, spec: &QuadratureSpec) -> Result<GbfSquareParts> {
    check_generalized(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), 1.0, mu)?;
    let order = -mu;
    let a = anger(order, mods, spec)?;
    let a_sq = a * a;
    let split = sign_split_integral(
        |t, s| phase_integrand(order, t, mods) * phase_integrand(order, s, mods),
        spec,
    )?;
    let b = split / (4.0 * PI * PI);
    let cot = crate::complex::cos_pi(mu) / sin_pi(mu);
    let basis = finite(cot * a_sq + I * b, "squared GBF closed form")?;
    let cancellation = ((cot * a_sq).norm() + b.norm()) / basis.norm();
    Ok(GbfSquareParts { a_sq, b, basis, cancellation })
}

/// `pi (cot(pi mu) A_{-mu}^2 + i B_{-mu})`. Fails with `PrecisionLoss` when
/// cancellation between the pieces leaves less than 1e-8 relative accuracy.
pub fn gbf_square_closed(mods: &ModulationCoefficients, mu: Complex64, spec: &QuadratureSpec) -> Result<Complex64> {
    let p = gbf_square_parts(mods, mu, spec)?;
    let rel_err = p.cancellation * GBF_SQUARE_PIECE_ACCURACY;
    if rel_err > 1e-8 {
        return Err(Error::PrecisionLoss { what: "squared GBF closed form", rel_err });
    }
    Ok(p.basis * GBF_SQUARE_CONSTANT)
}

/// Both sides of the region-union identity: the integrals of
/// `p_{-mu}(t) p_{-mu}(s)` over the two box halves, and `4 pi^2 A_{-mu}^2`.
pub fn union_identity(mods: &ModulationCoefficients, mu: Complex64, spec: &QuadratureSpec) -> Result<(Complex64, Complex64)> {
    let order = -mu;
    let f = |t: f64, s: f64| phase_integrand(order, t, mods) * phase_integrand(order, s, mods);
    let halves = triangle_integral(f, &TriangleRegion::tilde_plus(), spec)?
        + triangle_integral(f, &TriangleRegion::tilde_minus(), spec)?;
    let a = anger(order, mods, spec)?;
    Ok((halves, a * a * (4.0 * PI * PI)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{c, mixed_error};

    fn tr() -> TruncationSpec {
        TruncationSpec::default()
    }

    #[test]
    fn classical_at_origin() {
        let p = LNParams::new(c(0.0, 0.0), c(0.0, 0.0), 1.0, c(0.5, 0.0), c(0.0, 0.0)).unwrap();
        assert!((ln1d_oracle(&p, &tr()).unwrap() - c(2.0, 0.0)).norm() < 1e-14);
        assert!((ln1d_closed(&p).unwrap() - c(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn classical_identity_sample() {
        let p = LNParams::new(c(0.3, 0.0), c(0.45, 0.0), 0.7, c(0.25, 0.1), c(1.5, 0.0)).unwrap();
        let o = ln1d_oracle_outcome(&p, &tr()).unwrap();
        let cl = ln1d_closed(&p).unwrap();
        assert!(mixed_error(o.value, cl) < 1e-8, "{} vs {cl}, est {}", o.value, o.est_error);
    }

    #[test]
    fn classical_reindex_symmetry() {
        let p = LNParams::new(c(0.3, 0.1), c(0.45, 0.0), 0.7, c(0.25, 0.1), c(1.5, 0.2)).unwrap();
        let q = LNParams { alpha: p.beta, beta: p.alpha, mu: -p.mu, ..p };
        let a = ln1d_oracle(&p, &tr()).unwrap();
        let b = ln1d_oracle(&q, &tr()).unwrap();
        assert!((a + b).norm() < 1e-10);
    }

    #[test]
    fn classical_closed_shift() {
        let p = LNParams::new(c(0.3, 0.1), c(0.45, 0.0), 0.7, c(0.25, 0.1), c(1.5, 0.2)).unwrap();
        let q = LNParams { alpha: p.alpha - p.gamma, beta: p.beta + p.gamma, mu: p.mu + 1.0, ..p };
        let a = ln1d_closed(&p).unwrap();
        let b = ln1d_closed(&q).unwrap();
        assert!((a + b).norm() < 1e-12 * a.norm());
    }

    #[test]
    fn classical_domain() {
        let p = LNParams::new(c(-0.6, 0.0), c(-0.6, 0.0), 0.5, c(0.3, 0.0), c(1.0, 0.0)).unwrap();
        assert!(matches!(ln1d_closed(&p), Err(Error::Domain(_))));
        assert!(matches!(LNParams::new(c(0.0, 0.0), c(0.0, 0.0), 1.0, c(3.0, 0.0), c(1.0, 0.0)), Err(Error::Pole { .. })));
    }

    #[test]
    fn generalized_sinc_case() {
        let z = ModulationCoefficients::zero();
        let q = QuadratureSpec::default();
        let closed = anger_ln_closed(c(0.0, 0.0), c(0.0, 0.0), 0.4, c(0.3, 0.0), &z, &q).unwrap();
        let s = (0.12 * PI).sin() / (0.12 * PI);
        assert!((closed - c(PI / (0.3 * PI).sin() * s * s, 0.0)).norm() < 1e-13);
        let o = anger_ln_oracle(c(0.0, 0.0), c(0.0, 0.0), 0.4, c(0.3, 0.0), &z, &tr()).unwrap();
        assert!(mixed_error(o, closed) < 1e-8, "{o} vs {closed}");
    }

    #[test]
    fn generalized_reduces_to_classical() {
        let m = ModulationCoefficients::single(c(1.3, 0.0));
        let g = anger_ln_oracle(c(1.0, 0.0), c(-2.0, 0.0), 1.0, c(0.35, 0.1), &m, &tr()).unwrap();
        // Re(alpha + beta) = -1 is outside the classical closed form, so compare with the raw sum.
        let direct: Complex64 = (-60i64..=60)
            .map(|n| {
                let a = crate::kernels::bessel_j(c(1.0 - n as f64, 0.0), c(1.3, 0.0)).unwrap();
                let b = crate::kernels::bessel_j(c(-2.0 + n as f64, 0.0), c(1.3, 0.0)).unwrap();
                a * b * sign(n) / (c(0.35, 0.1) + n as f64)
            })
            .sum();
        assert!((g - direct).norm() < 1e-10);
    }

    #[test]
    fn corrected_requires_upper_gamma() {
        let z = ModulationCoefficients::zero();
        let q = QuadratureSpec::default();
        assert!(matches!(anger_ln_corrected(0, 0, 0.4, c(0.3, 0.0), &z, &q), Err(Error::Domain(_))));
        assert!(matches!(anger_ln_closed(c(0.0, 0.0), c(0.0, 0.0), 0.8, c(0.3, 0.0), &z, &q), Err(Error::Domain(_))));
    }

    #[test]
    fn corrected_sinc_case() {
        let z = ModulationCoefficients::zero();
        let q = QuadratureSpec::default();
        let cl = anger_ln_corrected(0, 0, 0.8, c(0.3, 0.0), &z, &q).unwrap();
        let o = anger_ln_oracle(c(0.0, 0.0), c(0.0, 0.0), 0.8, c(0.3, 0.0), &z, &tr()).unwrap();
        assert!(mixed_error(o, cl) < 1e-8, "{o} vs {cl}");
    }

    #[test]
    fn gbf_square_unmodulated() {
        let z = ModulationCoefficients::zero();
        let q = QuadratureSpec::default();
        let mu = c(0.37, 0.0);
        assert!((gbf_square_oracle(&z, mu, &tr()).unwrap() - 1.0 / mu).norm() < 1e-14);
        assert!((gbf_square_closed(&z, mu, &q).unwrap() - 1.0 / mu).norm() < 1e-9);
    }
}
