use besselsum::anger::ModulationCoefficients;
use besselsum::complex::{c, mixed_error};
use besselsum::lnsum::*;
use besselsum::{QuadratureSpec, TruncationSpec};
use num_complex::Complex64;
use proptest::prelude::*;

fn params() -> impl Strategy<Value = LNParams> {
    (
        -0.4f64..1.5,
        -0.4f64..1.5,
        -0.3f64..0.3,
        0.05f64..=1.0,
        0.05f64..0.95,
        -1.5f64..1.5,
        (0.0f64..4.0, -1.2f64..1.2),
    )
        .prop_map(|(ar, br, im, gamma, mr, mi, (zr, za))| {
            LNParams::new(c(ar, im), c(br, -im), gamma, c(mr, mi), Complex64::from_polar(zr, za)).unwrap()
        })
}

fn complex_mods() -> impl Strategy<Value = ModulationCoefficients> {
    (1usize..=3)
        .prop_flat_map(|m| {
            let amp = (-1.5f64..1.5, -0.4f64..0.4).prop_map(|(r, i)| c(r, i));
            (prop::collection::vec(amp.clone(), m), prop::collection::vec(amp, m))
        })
        .prop_map(|(x, y)| ModulationCoefficients::new(x, y).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn oracle_swap_symmetry(p in params()) {
        let q = LNParams { alpha: p.beta, beta: p.alpha, mu: -p.mu, ..p };
        let tr = TruncationSpec::default();
        let a = ln1d_oracle(&p, &tr).unwrap();
        let b = ln1d_oracle(&q, &tr).unwrap();
        prop_assert!((a + b).norm() <= 1e-9 * a.norm().max(1.0));
    }

    #[test]
    fn closed_index_shift(p in params()) {
        let q = LNParams { alpha: p.alpha - p.gamma, beta: p.beta + p.gamma, mu: p.mu + 1.0, ..p };
        prop_assume!((q.alpha + q.beta).re > -1.0);
        let a = ln1d_closed(&p).unwrap();
        let b = ln1d_closed(&q).unwrap();
        prop_assert!((a + b).norm() <= 1e-12 * a.norm().max(1e-300));
    }

    #[test]
    fn union_of_halves(mods in complex_mods(), mr in 0.05f64..1.95, mi in -0.5f64..0.5) {
        prop_assume!((mr - 1.0).abs() > 1e-3);
        let (halves, full) = union_identity(&mods, c(mr, mi), &QuadratureSpec::default()).unwrap();
        prop_assert!(mixed_error(halves, full) <= 1e-8, "{halves} vs {full}");
    }
}

#[test]
fn near_integer_blowup_is_shared() {
    let tr = TruncationSpec::default();
    for (k, d) in [(0.0, 1e-4), (0.0, -1e-4), (1.0, 1e-4), (0.0, 1e-3)] {
        let p = LNParams::new(c(0.3, 0.0), c(0.45, 0.0), 0.7, c(k + d, 0.0), c(1.5, 0.0)).unwrap();
        let ratio = ln1d_oracle(&p, &tr).unwrap() / ln1d_closed(&p).unwrap();
        assert!((ratio - 1.0).norm() <= 1e-6, "mu = {}: ratio {ratio}", k + d);
    }
}
