use besselsum::complex::{c, integer_distance, sin_pi};
use besselsum::kernels::{bessel_j, bessel_product_integral, gamma_complex};
use besselsum::QuadratureSpec;
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

fn z_in_disk(r: f64) -> impl Strategy<Value = Complex64> {
    (0.0..r, -PI..PI).prop_map(|(m, a)| Complex64::from_polar(m, a))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn integer_order_reflection(n in 0i64..=10, z in z_in_disk(10.0)) {
        let neg = bessel_j(c(-n as f64, 0.0), z).unwrap();
        let pos = bessel_j(c(n as f64, 0.0), z).unwrap();
        let s = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((neg - pos * s).norm() <= 1e-10, "{neg} vs {}", pos * s);
    }

    #[test]
    fn gamma_reflection(z in z_in_disk(10.0)) {
        prop_assume!(integer_distance(z) > 1e-3);
        let want = PI / sin_pi(z);
        let got = gamma_complex(z).unwrap() * gamma_complex(Complex64::new(1.0, 0.0) - z).unwrap();
        prop_assert!((got - want).norm() <= 1e-9 * want.norm(), "{got} vs {want}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn product_integral_matches_product(
        ar in -0.45f64..2.0, ai in -0.5f64..0.5,
        br in -0.45f64..2.0, bi in -0.5f64..0.5,
        z in (0.0f64..5.0, -1.4f64..1.4).prop_map(|(m, a)| Complex64::from_polar(m, a)),
    ) {
        let (a, b) = (c(ar, ai), c(br, bi));
        let got = bessel_product_integral(a, b, z, &QuadratureSpec::default()).unwrap();
        let want = bessel_j(a, z).unwrap() * bessel_j(b, z).unwrap();
        prop_assert!((got - want).norm() <= 1e-8, "{a} {b} {z}: {got} vs {want}");
    }
}
