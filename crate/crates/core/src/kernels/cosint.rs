use crate::dd::Dd;
use crate::error::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const EULER_GAMMA_LO: f64 = -4.942_915_152_430_645e-18;

// Below this the alternating series is summed in double-double; above it the
// auxiliary-function asymptotics are accurate to rounding.
const SERIES_LIMIT: f64 = 40.0;

/// Cosine integral `Ci(x)` for `x > 0`.
pub fn cosine_integral(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("cosine integral needs x > 0, got {x}")));
    }
    if x <= SERIES_LIMIT {
        Ok(series(x))
    } else {
        Ok(asymptotic(x))
    }
}

fn series(x: f64) -> f64 {
    let q = -(Dd::new(x) * Dd::new(x));
    let mut term = Dd::ONE;
    let mut sum = Dd::ZERO;
    for k in 1..400 {
        let k2 = (2 * k) as f64;
        term = term * q / Dd::new(k2 * (k2 - 1.0));
        let add = term / Dd::new(k2);
        sum = sum + add;
        if add.to_f64().abs() < 1e-34 * sum.to_f64().abs().max(1e-300) && (k2 > x) {
            break;
        }
    }
    let ln = Dd::new(x.ln());
    (Dd { hi: EULER_GAMMA, lo: EULER_GAMMA_LO } + ln + sum).to_f64()
}

fn asymptotic(x: f64) -> f64 {
    let inv2 = 1.0 / (x * x);
    let (mut f, mut g) = (1.0, 1.0);
    let mut tf = 1.0;
    let mut tg = 1.0;
    let mut k = 1.0;
    loop {
        // f ~ 1/x (1 - 2!/x^2 + 4!/x^4 ...), g ~ 1/x^2 (1 - 3!/x^2 + 5!/x^4 ...)
        let nf = -tf * (2.0 * k - 1.0) * (2.0 * k) * inv2;
        let ng = -tg * (2.0 * k) * (2.0 * k + 1.0) * inv2;
        if nf.abs() > tf.abs() || nf.abs() < 1e-18 {
            break;
        }
        tf = nf;
        tg = ng;
        f += tf;
        g += tg;
        k += 1.0;
    }
    let f = f / x;
    let g = g * inv2;
    f * x.sin() - g * x.cos()
}
