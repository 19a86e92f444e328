//! The numerics are generic over the scalar; exercise the `f32`
//! instantiation at tolerances appropriate for single precision.

use capax_core::capacity::{capacity_exact, IntervalPair};
use capax_core::elliptic::{complete_k, EllipticPair, Modulus};
use capax_core::jacobi::jacobi_sncndn;
use capax_core::theta::theta_quad;

#[test]
fn f32_complete_k_matches_f64() {
    for &k in &[0.2f32, 0.5, 0.9] {
        let k32 = complete_k(Modulus::<f32>::new(k).unwrap());
        let k64 = complete_k(Modulus::<f64>::new(k as f64).unwrap());
        assert!((k32 as f64 - k64).abs() < 1e-5, "K mismatch at k = {k}");
    }
}

#[test]
fn f32_jacobi_identities() {
    let m = Modulus::<f32>::new(0.7f32).unwrap();
    let u = 0.6f32 * complete_k(m);
    let t = jacobi_sncndn(u, m);
    assert!(t.pythagorean_residual().abs() < 1e-5);
    assert!(t.delta_residual(m).abs() < 1e-5);
}

#[test]
fn f32_legendre_relation() {
    let pair = EllipticPair::for_modulus(Modulus::<f32>::new(0.3f32).unwrap());
    assert!(pair.legendre_residual().abs() < 1e-5);
}

#[test]
fn f32_symmetric_capacity() {
    let ip = IntervalPair::<f32>::new(-0.6, 0.6).unwrap();
    let cap = capacity_exact(ip).cap;
    assert!((cap - 0.4).abs() < 1e-4, "cap = {cap}");
}

#[test]
fn f32_theta_constant_identity() {
    let m = Modulus::<f32>::new(0.5f32).unwrap();
    let kp = m.k_prime();
    let big_k = complete_k(m);
    let theta0 = theta_quad(0.0f32, m).theta;
    let pi2 = std::f32::consts::PI * std::f32::consts::PI;
    let expected = (4.0 * kp * kp * big_k * big_k / pi2).powf(0.25);
    assert!((theta0 - expected).abs() < 1e-5);
}
