//! Complete and incomplete elliptic integrals and the modulus type.
//!
//! The complete integrals use the arithmetic-geometric mean:
//!
//! ```text
//! K(k) = pi / (2 agm(1, k'))
//! E(k) = K(k) (1 - sum_{n>=0} 2^(n-1) c_n^2),   c_0 = k, c_{n+1} = (a_n - b_n)/2
//! ```
//!
//! The incomplete integral of the first kind goes through Carlson's
//! symmetric form `R_F`, which also provides the inverse elliptic sine.
//!
//! # References
//!
//! * Abramowitz M, Stegun IA (1972) Handbook of Mathematical Functions,
//!   sections 17.6 (AGM) and 17.2.
//! * Carlson BC (1977) Elliptic Integrals of the First Kind, SIAM J. Math.
//!   Anal. 8, 231-242.

use crate::error::{Error, Result};
use crate::real::Real;

/// AGM iteration cap. Convergence is quadratic; 40 is a hard safety bound.
const AGM_MAX_ITER: usize = 40;

/// Moduli below this (or with complement below this) take the series limit
/// instead of the general path.
pub(crate) const DEGENERATE_MODULUS: f64 = 1e-8;

/// Elliptic modulus `k` with its complement `k' = sqrt(1 - k^2)`.
///
/// Both values are stored so that callers who know `k'^2` to full accuracy
/// (e.g. from the interval chart) never lose it to the cancellation in
/// `1 - k^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Modulus<F> {
    k: F,
    k_prime: F,
    m: F,
}

impl<F: Real> Modulus<F> {
    /// Builds a modulus from `k` in (0, 1); endpoints are rejected.
    pub fn new(k: F) -> Result<Self> {
        if !(k > F::zero() && k < F::one()) {
            return Err(Error::ModulusRange(k.as_f64()));
        }
        let k_prime = ((F::one() - k) * (F::one() + k)).sqrt();
        Ok(Modulus {
            k,
            k_prime,
            m: k * k,
        })
    }

    /// Builds a modulus from `m = k^2` and `mc = k'^2` known independently.
    ///
    /// The two squares must agree with `m + mc = 1` to a few ulp.
    pub fn from_squares(m: F, mc: F) -> Result<Self> {
        if !(m > F::zero() && m < F::one()) {
            return Err(Error::ModulusRange(m.sqrt().as_f64()));
        }
        let sum = m + mc;
        if (sum - F::one()).abs() > F::of(4.0) * F::epsilon() {
            return Err(Error::ModulusInconsistent(sum.as_f64()));
        }
        Ok(Modulus {
            k: m.sqrt(),
            k_prime: mc.sqrt(),
            m,
        })
    }

    /// The modulus `k`.
    #[inline]
    pub fn k(&self) -> F {
        self.k
    }

    /// The complementary modulus `k'`.
    #[inline]
    pub fn k_prime(&self) -> F {
        self.k_prime
    }

    /// `m = k^2`.
    #[inline]
    pub fn m(&self) -> F {
        self.m
    }

    /// `k'^2`, computed from the stored complement.
    #[inline]
    pub fn mc(&self) -> F {
        self.k_prime * self.k_prime
    }

    /// The complementary modulus as a `Modulus` (swaps `k` and `k'`).
    pub fn complementary(&self) -> Self {
        Modulus {
            k: self.k_prime,
            k_prime: self.k,
            m: self.k_prime * self.k_prime,
        }
    }
}

/// Complete elliptic integrals of both kinds for `k` and `k'`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticPair<F> {
    /// K(k)
    pub big_k: F,
    /// K(k') = K'(k)
    pub big_k_prime: F,
    /// E(k)
    pub big_e: F,
    /// E(k') = E'(k)
    pub big_e_prime: F,
}

impl<F: Real> EllipticPair<F> {
    /// Evaluates K, K', E, E' for the given modulus.
    pub fn for_modulus(modulus: Modulus<F>) -> Self {
        let (big_k, big_e) = complete_ke(modulus);
        let (big_k_prime, big_e_prime) = complete_ke(modulus.complementary());
        EllipticPair {
            big_k,
            big_k_prime,
            big_e,
            big_e_prime,
        }
    }

    /// Residual of the Legendre relation `E K' + E' K - K K' - pi/2`.
    pub fn legendre_residual(&self) -> F {
        self.big_e * self.big_k_prime + self.big_e_prime * self.big_k
            - self.big_k * self.big_k_prime
            - F::FRAC_PI_2()
    }
}

/// K(k) and E(k) in one AGM run.
pub fn complete_ke<F: Real>(modulus: Modulus<F>) -> (F, F) {
    let k = modulus.k();
    let kp = modulus.k_prime();
    let half_pi = F::FRAC_PI_2();

    // Series limits near the endpoints, where the general path would round
    // 1 - k^2 to 1 (or lose k'^2 entirely).
    if k < F::of(DEGENERATE_MODULUS) {
        let m = modulus.m();
        let big_k = half_pi * (F::one() + m * F::of(0.25));
        let big_e = half_pi * (F::one() - m * F::of(0.25));
        return (big_k, big_e);
    }
    if kp < F::of(DEGENERATE_MODULUS) {
        let mc = modulus.mc();
        let log4kp = (F::of(4.0) / kp).ln();
        let big_k = log4kp + mc * F::of(0.25) * (log4kp - F::one());
        let big_e = F::one() + mc * F::of(0.5) * (log4kp - F::of(0.5));
        return (big_k, big_e);
    }

    let mut a = F::one();
    let mut b = kp;
    let mut sum = F::of(0.5) * k * k;
    let mut pow2 = F::of(0.5);
    let tol = F::of(1e-16);
    let mut prev_gap = F::infinity();
    for _ in 0..AGM_MAX_ITER {
        let gap = (a - b).abs();
        // Quadratic convergence stalls at the rounding floor; stop there
        // so late iterations cannot feed 2^n-weighted noise into the sum.
        if gap < tol * a || gap >= prev_gap {
            break;
        }
        prev_gap = gap;
        let an = (a + b) * F::of(0.5);
        let bn = (a * b).sqrt();
        let c = (a - b) * F::of(0.5);
        a = an;
        b = bn;
        pow2 = pow2 + pow2;
        sum = sum + pow2 * c * c;
    }
    let big_k = half_pi / a;
    let big_e = big_k * (F::one() - sum);
    (big_k, big_e)
}

/// Complete elliptic integral of the first kind K(k).
///
/// Relative error stays below 1e-14 in `f64`.
pub fn complete_k<F: Real>(modulus: Modulus<F>) -> F {
    complete_ke(modulus).0
}

/// Complete elliptic integral of the second kind E(k).
pub fn complete_e<F: Real>(modulus: Modulus<F>) -> F {
    complete_ke(modulus).1
}

/// Carlson's symmetric integral R_F(x, y, z).
///
/// Arguments must be non-negative and at most one may be zero. The error
/// tolerance 0.0025 yields full double precision.
pub(crate) fn carlson_rf<F: Real>(x: F, y: F, z: F) -> F {
    const ERR_TOL: f64 = 0.0025;
    let third = F::one() / F::of(3.0);
    let c1 = F::one() / F::of(24.0);
    let c2 = F::of(0.1);
    let c3 = F::of(3.0) / F::of(44.0);
    let c4 = F::one() / F::of(14.0);

    let mut xt = x;
    let mut yt = y;
    let mut zt = z;
    let (mut ave, mut dx, mut dy, mut dz);
    loop {
        let sx = xt.sqrt();
        let sy = yt.sqrt();
        let sz = zt.sqrt();
        let lam = sx * (sy + sz) + sy * sz;
        xt = F::of(0.25) * (xt + lam);
        yt = F::of(0.25) * (yt + lam);
        zt = F::of(0.25) * (zt + lam);
        ave = third * (xt + yt + zt);
        dx = (ave - xt) / ave;
        dy = (ave - yt) / ave;
        dz = (ave - zt) / ave;
        if dx.abs().max(dy.abs()).max(dz.abs()) < F::of(ERR_TOL) {
            break;
        }
    }
    let e2 = dx * dy - dz * dz;
    let e3 = dx * dy * dz;
    (F::one() + (c1 * e2 - c2 - c3 * e3) * e2 + c4 * e3) / ave.sqrt()
}

/// Incomplete elliptic integral of the first kind F(phi, k) for
/// `0 <= phi <= pi/2`.
///
/// `F(pi/2, k) = K(k)`; strictly increasing in `phi`.
pub fn incomplete_f<F: Real>(phi: F, modulus: Modulus<F>) -> Result<F> {
    if !(phi >= F::zero() && phi <= F::FRAC_PI_2()) {
        return Err(Error::AmplitudeRange(phi.as_f64()));
    }
    if phi == F::zero() {
        return Ok(F::zero());
    }
    let s = phi.sin();
    let c = phi.cos();
    let ks = modulus.k() * s;
    Ok(s * carlson_rf(c * c, (F::one() - ks) * (F::one() + ks), F::one()))
}

/// Inverse of the elliptic sine on [0, 1]: returns `u` in `[0, K]` with
/// `sn(u, k) = x`.
pub fn inverse_sn<F: Real>(x: F, modulus: Modulus<F>) -> Result<F> {
    if !(x >= F::zero() && x <= F::one()) {
        return Err(Error::InverseSnRange(x.as_f64()));
    }
    incomplete_f(x.asin(), modulus)
}
