//! Complex scalar helpers used across the crate.

use num_complex::Complex64;
use std::f64::consts::PI;

/// The numeric currency of the crate. Public operations never return a
/// non-finite component; they fail with [`crate::Error::Overflow`] instead.
pub type ComplexScalar = Complex64;

pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
pub fn real(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Exactly an integer (zero imaginary part, integral real part).
#[inline]
pub fn as_integer(z: Complex64) -> Option<i64> {
    if z.im == 0.0 && z.re == z.re.round() && z.re.abs() < 9.0e15 {
        Some(z.re as i64)
    } else {
        None
    }
}

/// Distance from `z` to the nearest integer.
#[inline]
pub fn integer_distance(z: Complex64) -> f64 {
    (z - z.re.round()).norm()
}

/// `sin(pi z)` with the argument reduced by the nearest integer first, so that
/// near-integer arguments keep their relative accuracy.
pub fn sin_pi(z: Complex64) -> Complex64 {
    let k = z.re.round();
    let r = Complex64::new(z.re - k, z.im);
    let s = (r * PI).sin();
    if (k as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

pub fn cos_pi(z: Complex64) -> Complex64 {
    let k = z.re.round();
    let r = Complex64::new(z.re - k, z.im);
    let s = (r * PI).cos();
    if (k as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

/// A logarithm of `sin(pi z)` that stays finite when `|Im z|` is large enough
/// for `sin` itself to overflow. The imaginary part is a phase on an
/// unspecified branch.
pub fn ln_sin_pi(z: Complex64) -> Complex64 {
    let k = z.re.round();
    let r = Complex64::new(z.re - k, z.im);
    let sign_shift = if (k as i64) % 2 == 0 { 0.0 } else { PI };
    let w = r * PI;
    let body = if w.im.abs() < 20.0 {
        w.sin().ln()
    } else if w.im > 0.0 {
        // sin w = (i/2) e^{-iw} (1 - e^{2iw})
        (I * 0.5).ln() - I * w + (Complex64::new(1.0, 0.0) - (I * w * 2.0).exp()).ln()
    } else {
        // sin w = (-i/2) e^{iw} (1 - e^{-2iw})
        (-I * 0.5).ln() + I * w + (Complex64::new(1.0, 0.0) - (-I * w * 2.0).exp()).ln()
    };
    body + Complex64::new(0.0, sign_shift)
}

/// Normalized sinc, `sin(pi w) / (pi w)`.
pub fn sinc_pi(w: Complex64) -> Complex64 {
    if w.norm() < 1e-4 {
        let x2 = (w * PI) * (w * PI);
        Complex64::new(1.0, 0.0) - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        sin_pi(w) / (w * PI)
    }
}

/// Neumaier-compensated running sum of complex terms.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: Complex64,
    comp: Complex64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: Complex64) {
        let (re, cre) = neumaier(self.sum.re, self.comp.re, x.re);
        let (im, cim) = neumaier(self.sum.im, self.comp.im, x.im);
        self.sum = Complex64::new(re, im);
        self.comp = Complex64::new(cre, cim);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

/// Kahan-Babuska (Neumaier) compensated real sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let (s, c) = neumaier(self.sum, self.comp, x);
        self.sum = s;
        self.comp = c;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for KahanSum {
    fn from_iter<T: IntoIterator<Item = f64>>(iter: T) -> Self {
        let mut s = KahanSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

#[inline]
fn neumaier(sum: f64, comp: f64, x: f64) -> (f64, f64) {
    let t = sum + x;
    let c = if sum.abs() >= x.abs() {
        (sum - t) + x
    } else {
        (x - t) + sum
    };
    (t, comp + c)
}

/// Absolute difference when the reference is below one in magnitude,
/// relative difference otherwise.
pub fn mixed_error(value: Complex64, reference: Complex64) -> f64 {
    let d = (value - reference).norm();
    let r = reference.norm();
    if r < 1.0 {
        d
    } else {
        d / r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sin_pi_near_integer_is_relative_accurate() {
        let d = 2f64.powi(-40);
        let s = sin_pi(c(7.0 + d, 0.0));
        assert!((s.re + PI * d).abs() < 1e-15 * PI * d);
    }

    #[test]
    fn ln_sin_pi_matches_direct_log_in_overlap() {
        for &z in &[c(0.3, 0.7), c(-2.4, 3.0), c(5.1, -6.0), c(0.25, 10.0)] {
            let direct = sin_pi(z);
            let via_log = ln_sin_pi(z).exp();
            assert!((direct - via_log).norm() < 1e-12 * direct.norm(), "{z}");
        }
    }

    #[test]
    fn ln_sin_pi_large_imaginary_part() {
        let z = c(30.0, 143.0);
        let l = ln_sin_pi(z);
        // |sin(pi z)| ~ e^{pi |Im z|} / 2
        assert!((l.re - (PI * 143.0 - 2f64.ln())).abs() < 1e-10);
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut s = KahanSum::new();
        s.add(1e16);
        for _ in 0..1000 {
            s.add(1.0);
        }
        s.add(-1e16);
        assert_eq!(s.value(), 1000.0);
    }
}
