//! Property tests: identities of the kernel functions, bijectivity of the
//! parameter chart, reflection symmetry and bound bracketing.

use capax_core::bounds::bounds_report;
use capax_core::capacity::{capacity_exact, param_from_intervals, intervals_from_param, IntervalPair};
use capax_core::elliptic::{complete_k, EllipticPair, Modulus};
use capax_core::jacobi::jacobi_sncndn;
use proptest::prelude::*;

/// Strategy for a well-separated valid pair.
fn interval_pair() -> impl Strategy<Value = IntervalPair<f64>> {
    (-0.99f64..0.97, 0.001f64..1.0).prop_map(|(alpha, frac)| {
        let beta = alpha + (0.99 - alpha) * frac.max(1e-3);
        IntervalPair::new(alpha, beta.min(0.99)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn jacobi_identities_hold(k in 1e-3f64..0.999, frac in 0.0f64..1.0) {
        let m = Modulus::new(k).unwrap();
        let u = frac * complete_k(m);
        let t = jacobi_sncndn(u, m);
        prop_assert!(t.pythagorean_residual().abs() < 1e-13);
        prop_assert!(t.delta_residual(m).abs() < 1e-13);
        prop_assert!(t.dn >= m.k_prime() - 1e-13 && t.dn <= 1.0 + 1e-13);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn legendre_relation_holds(k in 1e-4f64..0.9999) {
        let pair = EllipticPair::for_modulus(Modulus::new(k).unwrap());
        prop_assert!(pair.legendre_residual().abs() < 1e-12);
    }

    #[test]
    fn chart_is_a_bijection(ip in interval_pair()) {
        let p = param_from_intervals(ip);
        prop_assert!(p.lambda > 0.0 && p.lambda < 1.0);
        let back = intervals_from_param(p).unwrap();
        prop_assert!((back.alpha() - ip.alpha()).abs() < 1e-10);
        prop_assert!((back.beta() - ip.beta()).abs() < 1e-10);
    }

    #[test]
    fn capacity_is_reflection_symmetric(ip in interval_pair()) {
        let direct = capacity_exact(ip).cap;
        let mirrored = capacity_exact(ip.reflected()).cap;
        prop_assert!((direct - mirrored).abs() <= 1e-12 * direct.max(1.0));
        prop_assert!(direct > 0.0 && direct < 0.5);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn bounds_bracket_capacity(ip in interval_pair()) {
        let cap = capacity_exact(ip).cap;
        let report = bounds_report(ip);
        prop_assert!(report.max_lower() <= cap + 1e-12);
        prop_assert!(cap <= report.min_upper() + 1e-12);
    }
}
