//! Jacobi elliptic functions sn, cn, dn by the descending Landen recursion.

use crate::elliptic::{Modulus, DEGENERATE_MODULUS};
use crate::real::Real;

/// Values of the three Jacobi elliptic functions at a common argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiTriple<F> {
    pub sn: F,
    pub cn: F,
    pub dn: F,
}

impl<F: Real> JacobiTriple<F> {
    /// Residual of `sn^2 + cn^2 - 1`.
    pub fn pythagorean_residual(&self) -> F {
        self.sn * self.sn + self.cn * self.cn - F::one()
    }

    /// Residual of `dn^2 + k^2 sn^2 - 1`.
    pub fn delta_residual(&self, modulus: Modulus<F>) -> F {
        self.dn * self.dn + modulus.m() * self.sn * self.sn - F::one()
    }
}

/// sn(u, k), cn(u, k), dn(u, k) for real `u`.
///
/// Descending Landen ladder truncated at relative gap 1e-8, which puts the
/// function error near 1e-16 (the error goes as the square of the gap).
/// Accuracy is specified for `u` in `[0, 2K]`; the recursion itself is
/// valid for any real argument.
pub fn jacobi_sncndn<F: Real>(u: F, modulus: Modulus<F>) -> JacobiTriple<F> {
    let k = modulus.k();
    let kp = modulus.k_prime();

    // Series limits at the degenerate ends, matching the elliptic module.
    if k < F::of(DEGENERATE_MODULUS) {
        let (s, c) = (u.sin(), u.cos());
        let dn = (F::one() - modulus.m() * s * s).sqrt();
        return JacobiTriple { sn: s, cn: c, dn };
    }
    if kp < F::of(DEGENERATE_MODULUS) {
        let c = F::one() / u.cosh();
        return JacobiTriple {
            sn: u.tanh(),
            cn: c,
            dn: c,
        };
    }

    const LADDER: usize = 16;
    let gap_tol = F::of(1e-8);

    let mut a_scale = [F::zero(); LADDER];
    let mut g_scale = [F::zero(); LADDER];
    let mut rungs = 0usize;
    let mut a = F::one();
    let mut emc = modulus.mc();
    let mut c = a;
    for i in 0..LADDER {
        let g = emc.sqrt();
        a_scale[i] = a;
        g_scale[i] = g;
        rungs = i + 1;
        c = F::of(0.5) * (a + g);
        if (a - g).abs() <= gap_tol * a {
            break;
        }
        emc = g * a;
        a = c;
    }

    let scaled = u * c;
    let mut sn = scaled.sin();
    let cn = scaled.cos();
    let mut dn = F::one();
    if sn == F::zero() {
        return JacobiTriple {
            sn,
            cn: F::one(),
            dn: F::one(),
        };
    }

    let mut ratio = cn / sn;
    let mut cc = c * ratio;
    for i in (0..rungs).rev() {
        let b = a_scale[i];
        ratio = ratio * cc;
        cc = cc * dn;
        dn = (g_scale[i] + ratio) / (b + ratio);
        ratio = cc / b;
    }
    let magnitude = F::one() / (cc * cc + F::one()).sqrt();
    sn = if sn >= F::zero() { magnitude } else { -magnitude };
    let cn = cc * sn;
    JacobiTriple { sn, cn, dn }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::{complete_k, Modulus};
    use approx::assert_relative_eq;

    fn m64(k: f64) -> Modulus<f64> {
        Modulus::new(k).unwrap()
    }

    /// Independent oracle: RK4 integration of the defining system
    /// sn' = cn dn, cn' = -sn dn, dn' = -k^2 sn cn from u = 0.
    fn ode_oracle(u: f64, k: f64, steps: usize) -> JacobiTriple<f64> {
        let m = k * k;
        let rhs = |y: [f64; 3]| [y[1] * y[2], -y[0] * y[2], -m * y[0] * y[1]];
        let mut y = [0.0_f64, 1.0, 1.0];
        let h = u / steps as f64;
        for _ in 0..steps {
            let k1 = rhs(y);
            let y2 = [
                y[0] + 0.5 * h * k1[0],
                y[1] + 0.5 * h * k1[1],
                y[2] + 0.5 * h * k1[2],
            ];
            let k2 = rhs(y2);
            let y3 = [
                y[0] + 0.5 * h * k2[0],
                y[1] + 0.5 * h * k2[1],
                y[2] + 0.5 * h * k2[2],
            ];
            let k3 = rhs(y3);
            let y4 = [y[0] + h * k3[0], y[1] + h * k3[1], y[2] + h * k3[2]];
            let k4 = rhs(y4);
            for j in 0..3 {
                y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
            }
        }
        JacobiTriple {
            sn: y[0],
            cn: y[1],
            dn: y[2],
        }
    }

    #[test]
    fn trigonometric_degeneration() {
        let t = jacobi_sncndn(0.5, m64(1e-12));
        assert_relative_eq!(t.sn, 0.5_f64.sin(), max_relative = 1e-14);
        assert_relative_eq!(t.cn, 0.5_f64.cos(), max_relative = 1e-14);
        assert_relative_eq!(t.dn, 1.0, max_relative = 1e-14);
    }

    #[test]
    fn dn_at_half_k_is_sqrt_k_prime() {
        for &k in &[0.2, 0.5, 0.8, 0.95] {
            let m = m64(k);
            let half_k = 0.5 * complete_k(m);
            let t = jacobi_sncndn(half_k, m);
            assert_relative_eq!(t.dn, m.k_prime().sqrt(), max_relative = 1e-13);
        }
    }

    #[test]
    fn values_at_full_quarter_period() {
        for &k in &[0.3, 0.7, 0.99] {
            let m = m64(k);
            let t = jacobi_sncndn(complete_k(m), m);
            assert!((t.sn - 1.0).abs() < 1e-13, "sn(K) at k = {k}");
            assert!(t.cn.abs() < 1e-13, "cn(K) at k = {k}");
            assert_relative_eq!(t.dn, m.k_prime(), max_relative = 1e-12);
        }
    }

    #[test]
    fn pinned_triple_from_ode_integration() {
        let fine = ode_oracle(0.8, 0.6, 20_000);
        // Frozen from the RK4 oracle above (converged to ~1e-15).
        assert_relative_eq!(fine.sn, 0.6983857213789643, max_relative = 1e-12);
        assert_relative_eq!(fine.cn, 0.7157215828616486, max_relative = 1e-12);
        assert_relative_eq!(fine.dn, 0.9079717277000612, max_relative = 1e-12);

        let t = jacobi_sncndn(0.8, m64(0.6));
        assert_relative_eq!(t.sn, 0.6983857213789643, max_relative = 1e-13);
        assert_relative_eq!(t.cn, 0.7157215828616486, max_relative = 1e-13);
        assert_relative_eq!(t.dn, 0.9079717277000612, max_relative = 1e-13);
    }

    #[test]
    fn pythagorean_identities_random_grid() {
        // 500 deterministic pseudo-random (u, k) pairs with u in (0, K).
        let mut state = 0x9e3779b97f4a7c15_u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..500 {
            let k = 1e-3 + (1.0 - 2e-3) * next();
            let m = m64(k);
            let u = next() * complete_k(m);
            let t = jacobi_sncndn(u, m);
            assert!(
                t.pythagorean_residual().abs() < 1e-13,
                "sn^2+cn^2 residual at u={u}, k={k}"
            );
            assert!(
                t.delta_residual(m).abs() < 1e-13,
                "dn^2+k^2 sn^2 residual at u={u}, k={k}"
            );
        }
    }
}
