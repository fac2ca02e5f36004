//! Property tests of transform and expansion invariants against closed
//! forms computed here.

use hardyx::analysis::proj_norms_direct;
use hardyx::special::{bessel_ratio_integral, bessel_ratio_series, hermite_phi_all};
use hardyx::transforms::{fourier, hankel, FunctionSpec, RadialProfile};
use hardyx::C64;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hermite_parity(k in 0usize..60, x in -12.0f64..12.0) {
        let a = hermite_phi_all(k, x).unwrap()[k];
        let b = hermite_phi_all(k, -x).unwrap()[k];
        let s = if k % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((a - s * b).abs() <= 1e-14 * (1.0 + a.abs()));
    }

    #[test]
    fn fourier_of_gaussian(b in 0.3f64..1.5, xi in -4.0f64..4.0) {
        let f = FunctionSpec::parse(&format!("gaussian:b={b}"), 1).unwrap();
        let got = fourier(&f, &[0], &[xi]).unwrap();
        let want = (-xi * xi / (2.0 * b)).exp() / b.sqrt();
        prop_assert!((got - want).norm() < 1e-9, "{got} vs {want}");
    }

    #[test]
    fn parseval_on_levels(b in 0.3f64..1.0) {
        let f = FunctionSpec::parse(&format!("gaussian:b={b}"), 1).unwrap();
        let t = proj_norms_direct(&f, 60).unwrap();
        let energy: f64 = t.entries.iter().map(|e| e.value * e.value).sum();
        let want = (std::f64::consts::PI / b).sqrt();
        // the tail beyond k = 60 is ((1-b)/(1+b))^60 small
        prop_assert!((energy / want - 1.0).abs() < 1e-9, "{energy} vs {want}");
    }

    #[test]
    fn hankel_of_gaussian(b in 0.3f64..2.0, delta in prop::sample::select(vec![0.0, 0.5, 1.0, 2.5]), r in 0.0f64..6.0) {
        let g = RadialProfile::gaussian(b).unwrap();
        let got = hankel(&g, delta, r).unwrap();
        let want = (2.0 * b).powf(-(delta + 1.0)) * (-r * r / (4.0 * b)).exp();
        prop_assert!((got - want).norm() < 1e-10, "{got} vs {want}");
    }

    #[test]
    fn bessel_ratio_routes_agree(delta in 0.0f64..3.0, re in -6.0f64..6.0, im in -3.0f64..3.0) {
        let w = C64::new(re, im);
        let a = bessel_ratio_series(delta, w).unwrap();
        let b = bessel_ratio_integral(delta, w).unwrap();
        prop_assert!((a - b).norm() <= 1e-12 * (1.0 + a.norm()), "{a} vs {b}");
    }
}
