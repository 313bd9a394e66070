use besselsum::anger::{alt_harmonic_closed, anger, gbf_12, plain_harmonic_closed, ModulationCoefficients};
use besselsum::complex::c;
use besselsum::{QuadratureSpec, SeriesConfig};
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

fn real_mods() -> impl Strategy<Value = ModulationCoefficients> {
    (1usize..=3)
        .prop_flat_map(|m| (prop::collection::vec(-3.0f64..3.0, m), prop::collection::vec(-3.0f64..3.0, m)))
        .prop_map(|(x, y)| {
            ModulationCoefficients::new(x.into_iter().map(|v| c(v, 0.0)).collect(), y.into_iter().map(|v| c(v, 0.0)).collect())
                .unwrap()
        })
}

fn coefficients(mods: &ModulationCoefficients, n: i64) -> Vec<Complex64> {
    let q = QuadratureSpec::default();
    (-n..=n).map(|j| anger(c(j as f64, 0.0), mods, &q).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn integer_orders_match_gbf(x1 in -4.0f64..4.0, x2 in -3.0f64..3.0, n in -10i64..=10) {
        let mods = ModulationCoefficients::new(vec![c(x1, 0.0), c(x2, 0.0)], vec![c(0.0, 0.0); 2]).unwrap();
        let a = anger(c(n as f64, 0.0), &mods, &QuadratureSpec::default()).unwrap();
        let g = gbf_12(n, c(x1, 0.0), c(x2, 0.0), &SeriesConfig::default()).unwrap();
        prop_assert!((a - g).norm() <= 1e-10, "{a} vs {g}");
    }

    #[test]
    fn parseval_and_generating_value(mods in real_mods()) {
        let n = mods.l1().ceil() as i64 + 40;
        let a = coefficients(&mods, n);
        let energy: f64 = a.iter().map(|v| v.norm_sqr()).sum();
        prop_assert!(energy >= 1.0 - 1e-10 && energy <= 1.0 + 1e-10, "{energy}");
        // Harmonic tones spread the coefficients out to the bandwidth, so the
        // plain sum needs the longer window.
        let s: Complex64 = coefficients(&mods, mods.decay_index() as i64).iter().sum();
        let want = (-Complex64::i() * mods.y_sum()).exp();
        prop_assert!((s - want).norm() <= 1e-10);
    }

    #[test]
    fn coefficients_decay(mods in real_mods()) {
        let q = QuadratureSpec::default();
        let start = mods.decay_index() as i64;
        for n in [start, start + 1, start + 7, -start, -start - 3] {
            let a = anger(c(n as f64, 0.0), &mods, &q).unwrap();
            prop_assert!(a.norm() <= 1e-12, "|A_{n}| = {:e}", a.norm());
        }
    }

    #[test]
    fn plain_is_shifted_alternating(
        mr in 0.01f64..0.99, mi in -1.0f64..1.0,
        theta in prop_oneof![(-2.0 * PI + 1e-3)..(-1e-3), 1e-3..(2.0 * PI - 1e-3)],
    ) {
        let mu = c(mr, mi);
        let plain = plain_harmonic_closed(mu, theta).unwrap();
        let alt = alt_harmonic_closed(mu, theta - PI).unwrap();
        prop_assert!((plain - alt).norm() <= 1e-12 * alt.norm().max(1.0));
    }
}
