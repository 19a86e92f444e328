//! Jacobi theta functions in the classical two-period notation, plus the
//! zeta function `zn` and the incomplete second-kind integral.
//!
//! The four functions are evaluated in the variable `z = pi u / (2K)` with
//! nome `q = exp(-pi K'/K)`:
//!
//! ```text
//! H(u)       = 2 sum (-1)^n q^((n+1/2)^2) sin((2n+1)z)
//! H_1(u)     = 2 sum        q^((n+1/2)^2) cos((2n+1)z)
//! Theta_1(u) = 1 + 2 sum        q^(n^2) cos(2nz)
//! Theta(u)   = 1 + 2 sum (-1)^n q^(n^2) cos(2nz)
//! ```
//!
//! This correspondence reproduces the closed forms `Theta(K/2) =
//! Theta_1(K/2) = (2(1+k')K^2 sqrt(k')/pi^2)^(1/4)` and `H(K/2) = H_1(K/2) =
//! (2(1-k')K^2 sqrt(k')/pi^2)^(1/4)`, which pins the normalization.
//!
//! For `q > 1/2` the series converges slowly, so the evaluation switches to
//! the image under the Jacobi imaginary transformation, written as a lattice
//! sum of Gaussians in `t = K'/K`:
//!
//! ```text
//! Theta(u)   = t^(-1/2) sum_n        exp(-(z - (n+1/2)pi)^2 / (pi t))
//! H(u)       = t^(-1/2) sum_n (-1)^n exp(-(z - (n+1/2)pi)^2 / (pi t))
//! Theta_1(u) = t^(-1/2) sum_n        exp(-(z - n pi)^2 / (pi t))
//! H_1(u)     = t^(-1/2) sum_n (-1)^n exp(-(z - n pi)^2 / (pi t))
//! ```
//!
//! Every exponent is non-positive for real `z`, so the sums cannot
//! overflow, and they converge in a handful of terms for `t < 0.23`.

use crate::elliptic::{complete_ke, Modulus};
use crate::real::Real;

/// Default relative truncation threshold for the series.
const SERIES_TOL: f64 = 1e-16;

/// Nome threshold for switching to the transformed (lattice) evaluation.
const Q_SWITCH: f64 = 0.5;

/// Hard cap on series terms; at q = 1/2 the envelope is below 1e-19 by
/// n = 9, so this is never reached in practice.
const MAX_TERMS: usize = 64;

/// Lattice image range; terms beyond |n| = 2 are below 1e-24 for t < 0.23.
const LATTICE_RANGE: i32 = 8;

/// Values of the four theta functions at a common argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaQuad<F> {
    /// Theta(u)
    pub theta: F,
    /// H(u)
    pub h: F,
    /// H_1(u)
    pub h1: F,
    /// Theta_1(u)
    pub theta1: F,
    /// Nome q = exp(-pi K'/K).
    pub q: F,
}

/// Evaluates the four theta functions at `u` for the given modulus.
pub fn theta_quad<F: Real>(u: F, modulus: Modulus<F>) -> ThetaQuad<F> {
    theta_quad_tol(u, modulus, F::of(SERIES_TOL))
}

/// Like [`theta_quad`], with an explicit series truncation threshold.
pub fn theta_quad_tol<F: Real>(u: F, modulus: Modulus<F>, tol: F) -> ThetaQuad<F> {
    let geom = NomeGeometry::for_modulus(modulus);
    let z = geom.z(u);
    let (theta, h, h1, theta1) = if geom.q > F::of(Q_SWITCH) {
        theta_lattice(z, geom.t)
    } else {
        theta_series(z, geom.q, tol)
    };
    ThetaQuad {
        theta,
        h,
        h1,
        theta1,
        q: geom.q,
    }
}

/// Jacobi's zeta function `zn(u) = Theta'(u) / Theta(u)`.
///
/// Evaluated through the term-wise differentiated series (or its lattice
/// image), never by quadrature; `zn(0) = zn(K) = 0`.
pub fn jacobi_zn<F: Real>(u: F, modulus: Modulus<F>) -> F {
    let geom = NomeGeometry::for_modulus(modulus);
    let z = geom.z(u);
    let tol = F::of(SERIES_TOL);
    let ratio = if geom.q > F::of(Q_SWITCH) {
        theta4_log_derivative_lattice(z, geom.t)
    } else {
        theta4_log_derivative_series(z, geom.q, tol)
    };
    F::FRAC_PI_2() / geom.big_k * ratio
}

/// Incomplete elliptic integral of the second kind along the real axis,
/// `E(u) = int_0^u dn^2(v) dv = zn(u) + u E/K`.
pub fn jacobi_epsilon<F: Real>(u: F, modulus: Modulus<F>) -> F {
    let (big_k, big_e) = complete_ke(modulus);
    jacobi_zn(u, modulus) + u * big_e / big_k
}

/// Shared per-modulus quantities: K, period ratio t = K'/K and nome.
struct NomeGeometry<F> {
    big_k: F,
    t: F,
    q: F,
}

impl<F: Real> NomeGeometry<F> {
    fn for_modulus(modulus: Modulus<F>) -> Self {
        let (big_k, _) = complete_ke(modulus);
        let (big_k_prime, _) = complete_ke(modulus.complementary());
        let t = big_k_prime / big_k;
        let q = (-F::PI() * t).exp();
        NomeGeometry { big_k, t, q }
    }

    #[inline]
    fn z(&self, u: F) -> F {
        F::FRAC_PI_2() * (u / self.big_k)
    }
}

/// Direct q-series for all four functions; used for q <= 1/2.
fn theta_series<F: Real>(z: F, q: F, tol: F) -> (F, F, F, F) {
    let two = F::of(2.0);
    let q2 = q * q;

    // Integer-exponent family: 1 + 2 sum (+-1)^n q^(n^2) cos(2nz).
    let mut theta_big = F::one();
    let mut theta1_big = F::one();
    let mut qpow = q; // q^(n^2)
    let mut qstep = q * q2; // q^(2n+1)
    let mut n = 1usize;
    loop {
        let envelope = two * qpow;
        let term = envelope * (two * F::of(n as f64) * z).cos();
        if n.is_multiple_of(2) {
            theta_big = theta_big + term;
        } else {
            theta_big = theta_big - term;
        }
        theta1_big = theta1_big + term;
        if envelope < tol * theta_big.abs().min(theta1_big.abs()) || n >= MAX_TERMS {
            break;
        }
        qpow = qpow * qstep;
        qstep = qstep * q2;
        n += 1;
    }

    // Half-exponent family: 2 sum (+-1)^n q^((n+1/2)^2) trig((2n+1)z),
    // with q^((n+1/2)^2) = q^(1/4) q^(n(n+1)).
    let qq = q.sqrt().sqrt();
    let mut h_big = F::zero();
    let mut h1_big = F::zero();
    let mut weight = two * qq; // 2 q^((n+1/2)^2)
    let mut n = 0usize;
    loop {
        let angle = F::of((2 * n + 1) as f64) * z;
        let (s, c) = (angle.sin(), angle.cos());
        if n.is_multiple_of(2) {
            h_big = h_big + weight * s;
        } else {
            h_big = h_big - weight * s;
        }
        h1_big = h1_big + weight * c;
        // The envelope bounds both oscillating sums; compare against the
        // leading weight so a zero of sin/cos cannot stall termination.
        if weight < tol * (two * qq) || n >= MAX_TERMS {
            break;
        }
        weight = weight * q2.powi(n as i32 + 1);
        n += 1;
    }

    (theta_big, h_big, h1_big, theta1_big)
}

/// `Theta'/Theta` in the variable z (the caller rescales by pi/2K):
/// `-4 sum (-1)^n n q^(n^2) sin(2nz) / Theta(z)`.
fn theta4_log_derivative_series<F: Real>(z: F, q: F, tol: F) -> F {
    let two = F::of(2.0);
    let q2 = q * q;
    let mut den = F::one();
    let mut num = F::zero();
    let mut qpow = q;
    let mut qstep = q * q2;
    let mut n = 1usize;
    loop {
        let nf = F::of(n as f64);
        let angle = two * nf * z;
        let envelope = two * qpow;
        let sign = if n.is_multiple_of(2) { F::one() } else { -F::one() };
        den = den + sign * envelope * angle.cos();
        num = num - two * sign * nf * envelope * angle.sin();
        if envelope * nf < tol * den.abs() || n >= MAX_TERMS {
            break;
        }
        qpow = qpow * qstep;
        qstep = qstep * q2;
        n += 1;
    }
    num / den
}

/// Lattice (transformed) evaluation for large nome; `t = K'/K`.
fn theta_lattice<F: Real>(z: F, t: F) -> (F, F, F, F) {
    let inv_sqrt_t = F::one() / t.sqrt();
    let pt = F::PI() * t;
    let gauss = |center: F| -> F {
        let d = z - center;
        (-(d * d) / pt).exp()
    };
    let mut theta_big = F::zero();
    let mut h_big = F::zero();
    let mut theta1_big = F::zero();
    let mut h1_big = F::zero();
    for n in (-LATTICE_RANGE..=LATTICE_RANGE).rev() {
        let nf = F::of(n as f64);
        let sign = if n.rem_euclid(2) == 0 {
            F::one()
        } else {
            -F::one()
        };
        let g_half = gauss((nf + F::of(0.5)) * F::PI());
        let g_int = gauss(nf * F::PI());
        theta_big = theta_big + g_half;
        h_big = h_big + sign * g_half;
        theta1_big = theta1_big + g_int;
        h1_big = h1_big + sign * g_int;
    }
    (
        inv_sqrt_t * theta_big,
        inv_sqrt_t * h_big,
        inv_sqrt_t * h1_big,
        inv_sqrt_t * theta1_big,
    )
}

/// Log-derivative of Theta in the lattice form.
fn theta4_log_derivative_lattice<F: Real>(z: F, t: F) -> F {
    let pt = F::PI() * t;
    let mut num = F::zero();
    let mut den = F::zero();
    for n in -LATTICE_RANGE..=LATTICE_RANGE {
        let center = (F::of(n as f64) + F::of(0.5)) * F::PI();
        let d = z - center;
        let g = (-(d * d) / pt).exp();
        den = den + g;
        num = num - F::of(2.0) * d / pt * g;
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::{complete_k, complete_ke, Modulus};
    use crate::jacobi::jacobi_sncndn;
    use approx::assert_relative_eq;

    fn m64(k: f64) -> Modulus<f64> {
        Modulus::new(k).unwrap()
    }

    /// Adaptive Simpson quadrature of dn^2 minus the secular term; the
    /// independent oracle for zn.
    fn zn_quadrature_oracle(u: f64, m: Modulus<f64>) -> f64 {
        fn dn2(v: f64, m: Modulus<f64>) -> f64 {
            let t = jacobi_sncndn(v, m);
            t.dn * t.dn
        }
        fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64, m: Modulus<f64>, eps: f64) -> f64 {
            let mid = 0.5 * (a + b);
            let lm = 0.5 * (a + mid);
            let rm = 0.5 * (mid + b);
            let flm = dn2(lm, m);
            let frm = dn2(rm, m);
            let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
            let left = (mid - a) / 6.0 * (fa + 4.0 * flm + fm);
            let right = (b - mid) / 6.0 * (fm + 4.0 * frm + fb);
            if (left + right - whole).abs() < 15.0 * eps {
                left + right + (left + right - whole) / 15.0
            } else {
                simpson(a, mid, fa, flm, fm, m, eps / 2.0)
                    + simpson(mid, b, fm, frm, fb, m, eps / 2.0)
            }
        }
        let (big_k, big_e) = complete_ke(m);
        let integral = simpson(0.0, u, dn2(0.0, m), dn2(0.5 * u, m), dn2(u, m), m, 1e-13);
        integral - u * big_e / big_k
    }

    #[test]
    fn theta_tends_to_one_for_small_modulus() {
        let m = m64(1e-9);
        for &u in &[0.0, 0.4, 1.2] {
            let tq = theta_quad(u, m);
            assert_relative_eq!(tq.theta, 1.0, max_relative = 1e-14);
            assert_relative_eq!(tq.theta1, 1.0, max_relative = 1e-14);
        }
    }

    #[test]
    fn lemma1_closed_forms_at_half_k() {
        for &k in &[0.1, 0.3, 0.5, 0.8, 0.95, 0.999] {
            let m = m64(k);
            let kp = m.k_prime();
            let big_k = complete_k(m);
            let tq = theta_quad(0.5 * big_k, m);
            let pi2 = std::f64::consts::PI * std::f64::consts::PI;
            let theta_closed = (2.0 * (1.0 + kp) * big_k * big_k * kp.sqrt() / pi2).powf(0.25);
            let h_closed = (2.0 * (1.0 - kp) * big_k * big_k * kp.sqrt() / pi2).powf(0.25);
            assert_relative_eq!(tq.theta, theta_closed, max_relative = 1e-11);
            assert_relative_eq!(tq.theta1, theta_closed, max_relative = 1e-11);
            assert_relative_eq!(tq.h, h_closed, max_relative = 1e-11);
            assert_relative_eq!(tq.h1, h_closed, max_relative = 1e-11);
        }
    }

    #[test]
    fn theta_constant_identities() {
        for &k in &[0.05, 0.4, 0.75, 0.99] {
            let m = m64(k);
            let kp = m.k_prime();
            let big_k = complete_k(m);
            let at0 = theta_quad(0.0, m);
            let atk = theta_quad(big_k, m);
            let pi2 = std::f64::consts::PI * std::f64::consts::PI;
            // Theta(0)^4 = 4 k'^2 K^2 / pi^2
            assert_relative_eq!(
                at0.theta.powi(4),
                4.0 * kp * kp * big_k * big_k / pi2,
                max_relative = 1e-11
            );
            // Theta(0) = sqrt(k') Theta(K)
            assert_relative_eq!(at0.theta, kp.sqrt() * atk.theta, max_relative = 1e-12);
        }
    }

    #[test]
    fn duplication_identities() {
        for &k in &[0.2, 0.6, 0.9] {
            let m = m64(k);
            let big_k = complete_k(m);
            for &frac in &[0.13, 0.25, 0.41] {
                let u = frac * big_k;
                let at0 = theta_quad(0.0, m);
                let atu = theta_quad(u, m);
                let at2u = theta_quad(2.0 * u, m);
                // Theta(2u) Theta^3(0) = Theta^4(u) - H^4(u)
                assert_relative_eq!(
                    at2u.theta * at0.theta.powi(3),
                    atu.theta.powi(4) - atu.h.powi(4),
                    max_relative = 1e-11
                );
                // H(2u) Theta(0) H_1(0) Theta_1(0) = 2 H(u) Theta(u) H_1(u) Theta_1(u)
                assert_relative_eq!(
                    at2u.h * at0.theta * at0.h1 * at0.theta1,
                    2.0 * atu.h * atu.theta * atu.h1 * atu.theta1,
                    max_relative = 1e-11
                );
            }
        }
    }

    #[test]
    fn series_and_lattice_branches_agree() {
        // q straddling the switch; evaluate both branches on identical input.
        for &t in &[0.19, 0.2206, 0.25] {
            let q = (-std::f64::consts::PI * t).exp();
            for &z in &[0.0, 0.3, std::f64::consts::FRAC_PI_2] {
                let series = theta_series(z, q, 1e-16);
                let lattice = theta_lattice(z, t);
                assert_relative_eq!(series.0, lattice.0, max_relative = 1e-13);
                assert_relative_eq!(series.2, lattice.2, max_relative = 1e-13);
                assert_relative_eq!(series.3, lattice.3, max_relative = 1e-13);
                if z > 0.0 {
                    assert_relative_eq!(series.1, lattice.1, max_relative = 1e-12);
                }
                let d_series = theta4_log_derivative_series(z, q, 1e-16);
                let d_lattice = theta4_log_derivative_lattice(z, t);
                assert!((d_series - d_lattice).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn zn_vanishes_at_zero_and_quarter_period() {
        for &k in &[0.3, 0.8, 0.999, 0.999999] {
            let m = m64(k);
            assert!(jacobi_zn(0.0, m).abs() < 1e-12);
            assert!(jacobi_zn(complete_k(m), m).abs() < 1e-12);
        }
    }

    #[test]
    fn zn_pinned_against_quadrature() {
        let m = m64(0.8);
        let half_k = 0.5 * complete_k(m);
        let oracle = zn_quadrature_oracle(half_k, m);
        // zn(K/2) = (1 - k')/2; frozen from the quadrature oracle.
        assert!((oracle - 0.2).abs() < 1e-10, "oracle drifted: {oracle}");
        let zn = jacobi_zn(half_k, m);
        assert!((zn - oracle).abs() < 1e-10);
        assert!((zn - 0.2).abs() < 1e-12);
    }

    #[test]
    fn zn_matches_quadrature_on_grid() {
        for &k in &[0.2, 0.6, 0.95] {
            let m = m64(k);
            let big_k = complete_k(m);
            for i in 1..8 {
                let u = big_k * (i as f64) / 8.0;
                let oracle = zn_quadrature_oracle(u, m);
                let zn = jacobi_zn(u, m);
                assert!(
                    (zn - oracle).abs() < 1e-10,
                    "zn mismatch at k={k}, u={u}: {zn} vs {oracle}"
                );
            }
        }
    }

    #[test]
    fn epsilon_endpoints_and_zn_consistency() {
        let m = m64(0.7);
        let (big_k, big_e) = complete_ke(m);
        assert_eq!(jacobi_epsilon(0.0, m), 0.0);
        assert_relative_eq!(jacobi_epsilon(big_k, m), big_e, max_relative = 1e-12);
        let u = 0.5;
        let lhs = jacobi_epsilon(u, m) - u * big_e / big_k;
        assert!((lhs - jacobi_zn(u, m)).abs() < 1e-11);
    }
}
