use crate::complex::{integer_distance, ln_sin_pi, sin_pi};
use crate::error::{finite, Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

const G: f64 = 5.242_187_5;
const SER0: f64 = 0.999_999_999_999_997_092;
const SQRT_2PI: f64 = 2.506_628_274_631_000_5;
const COF: [f64; 14] = [
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_494e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];

pub(crate) const POLE_BAND: f64 = 1e-12;

fn is_pole(z: Complex64) -> bool {
    z.re < 0.5 && z.re.round() <= 0.0 && integer_distance(z) < POLE_BAND
}

fn lanczos_ln(z: Complex64) -> Complex64 {
    let tmp = z + G;
    let tmp = (z + 0.5) * tmp.ln() - tmp;
    let mut ser = Complex64::new(SER0, 0.0);
    let mut y = z;
    for &c in &COF {
        y += 1.0;
        ser += c / y;
    }
    tmp + (ser * SQRT_2PI / z).ln()
}

/// `ln Γ(z)` on some branch; only `exp` of the result is meaningful.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if is_pole(z) {
        return Err(Error::Pole { at: z });
    }
    if z.re < 0.5 {
        Ok(Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - lanczos_ln(1.0 - z))
    } else {
        Ok(lanczos_ln(z))
    }
}

/// `ln(1/Γ(z))`, or `None` where `1/Γ` vanishes exactly (nonpositive integers).
pub(crate) fn ln_rgamma(z: Complex64) -> Option<Complex64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return None;
    }
    if z.re < 0.5 {
        Some(ln_sin_pi(z) - PI.ln() + lanczos_ln(1.0 - z))
    } else {
        Some(-lanczos_ln(z))
    }
}

/// Complex gamma function.
pub fn gamma_complex(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidInput(format!("gamma argument {z} is not finite")));
    }
    if is_pole(z) {
        return Err(Error::Pole { at: z });
    }
    if z.re < 0.5 {
        // Direct reflection keeps more digits than exp(ln) when Γ(1-z) is moderate.
        if z.re > -20.0 && z.im.abs() < 20.0 {
            let s = sin_pi(z);
            let g = lanczos_ln(1.0 - z).exp();
            return finite(PI / (s * g), "gamma");
        }
        return finite(ln_gamma(z)?.exp(), "gamma");
    }
    finite(lanczos_ln(z).exp(), "gamma")
}
