//! The (alpha, beta) <-> (k, lambda) parameter chart and the exact
//! capacity of `[-1, alpha] u [beta, 1]`.
//!
//! The chart is
//!
//! ```text
//! k^2  = 2(beta - alpha) / ((1 - alpha)(1 + beta))
//! k'^2 = (1 + alpha)(1 - beta) / ((1 - alpha)(1 + beta))
//! sn^2(lambda K) = (1 - alpha)/2
//! ```
//!
//! and the capacity is
//!
//! ```text
//! CAP = Theta^4(0) / (2 dn^2(lambda K) Theta^4(lambda K))
//!     = 2 k'^2 K^2 / (pi^2 dn^2(lambda K) Theta^4(lambda K)),
//! ```
//!
//! evaluated at argument `min(lambda, 1 - lambda) K`, which is legitimate
//! because replacing `lambda` by `1 - lambda` mirrors the pair and leaves
//! the capacity unchanged.

use crate::elliptic::{complete_k, inverse_sn, Modulus};
use crate::error::{Error, Result};
use crate::jacobi::jacobi_sncndn;
use crate::real::Real;
use crate::theta::{theta_quad_tol, ThetaQuad};

/// Margin inside which endpoints count as degenerate and are rejected.
const DEGENERACY_MARGIN: f64 = 1e-12;

/// Default theta-series truncation used by [`capacity_exact`].
const DEFAULT_TOL: f64 = 1e-16;

/// The two intervals `[-1, alpha] u [beta, 1]` with
/// `-1 < alpha < beta < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalPair<F> {
    alpha: F,
    beta: F,
}

impl<F: Real> IntervalPair<F> {
    /// Validates `-1 < alpha < beta < 1`, rejecting near-degenerate input
    /// (a gap or an outer endpoint within 1e-12 of its limit) with a
    /// dedicated error; the limiting configurations are exercised by
    /// tests, never silently evaluated.
    pub fn new(alpha: F, beta: F) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() || alpha >= beta {
            return Err(Error::IntervalOrder {
                alpha: alpha.as_f64(),
                beta: beta.as_f64(),
            });
        }
        if alpha <= -F::one() || beta >= F::one() {
            return Err(Error::IntervalRange {
                alpha: alpha.as_f64(),
                beta: beta.as_f64(),
            });
        }
        let margin = F::of(DEGENERACY_MARGIN);
        if beta - alpha < margin || alpha <= -F::one() + margin || beta >= F::one() - margin {
            return Err(Error::DegenerateIntervals {
                alpha: alpha.as_f64(),
                beta: beta.as_f64(),
            });
        }
        Ok(IntervalPair { alpha, beta })
    }

    /// Left gap endpoint `alpha`.
    #[inline]
    pub fn alpha(&self) -> F {
        self.alpha
    }

    /// Right gap endpoint `beta`.
    #[inline]
    pub fn beta(&self) -> F {
        self.beta
    }

    /// The mirrored pair `(-beta, -alpha)`; same capacity.
    pub fn reflected(&self) -> Self {
        IntervalPair {
            alpha: -self.beta,
            beta: -self.alpha,
        }
    }

    /// Mirrors the pair so that `alpha + beta >= 0`; returns the canonical
    /// pair and whether a reflection happened.
    pub fn canonical(&self) -> (Self, bool) {
        if self.alpha + self.beta < F::zero() {
            (self.reflected(), true)
        } else {
            (*self, false)
        }
    }
}

/// The (k, lambda) chart; one-to-one with [`IntervalPair`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulusParam<F> {
    /// Elliptic modulus from the interval geometry.
    pub modulus: Modulus<F>,
    /// Fraction of the quarter period, in (0, 1).
    pub lambda: F,
}

impl<F: Real> ModulusParam<F> {
    /// Validates `lambda` in (0, 1).
    pub fn new(modulus: Modulus<F>, lambda: F) -> Result<Self> {
        if !(lambda > F::zero() && lambda < F::one()) {
            return Err(Error::LambdaRange(lambda.as_f64()));
        }
        Ok(ModulusParam { modulus, lambda })
    }
}

/// Which form of the capacity formula was evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// Direct form, argument `lambda K` (lambda <= 1/2).
    Direct,
    /// Mirrored form, argument `(1 - lambda) K` (lambda > 1/2).
    Reflected,
}

/// Exact capacity together with the chart it was computed in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityResult<F> {
    /// The logarithmic capacity, in (0, 1/2).
    pub cap: F,
    /// The (k, lambda) chart of the input pair.
    pub param: ModulusParam<F>,
    /// Which formula branch produced the value.
    pub branch_used: Branch,
}

/// Maps an interval pair to its (k, lambda) chart.
pub fn param_from_intervals<F: Real>(ip: IntervalPair<F>) -> ModulusParam<F> {
    let (alpha, beta) = (ip.alpha(), ip.beta());
    let denom = (F::one() - alpha) * (F::one() + beta);
    let m = F::of(2.0) * (beta - alpha) / denom;
    let mc = (F::one() + alpha) * (F::one() - beta) / denom;
    let modulus =
        Modulus::from_squares(m, mc).expect("valid interval pair yields a valid modulus");
    let x = ((F::one() - alpha) * F::of(0.5)).sqrt();
    let u = inverse_sn(x, modulus).expect("(1-alpha)/2 lies in [0,1]");
    let lambda = u / complete_k(modulus);
    ModulusParam { modulus, lambda }
}

/// Raw endpoint coordinates of a chart: `alpha = 1 - 2 sn^2(lambda K)`,
/// `beta = 2 cn^2 / dn^2 - 1`, without pair validation. Useful near the
/// degenerate limits where the pair itself would be rejected.
pub fn interval_coordinates<F: Real>(p: ModulusParam<F>) -> (F, F) {
    let big_k = complete_k(p.modulus);
    let t = jacobi_sncndn(p.lambda * big_k, p.modulus);
    let alpha = F::one() - F::of(2.0) * t.sn * t.sn;
    let beta = F::of(2.0) * (t.cn * t.cn) / (t.dn * t.dn) - F::one();
    (alpha, beta)
}

/// Maps a (k, lambda) chart back to its interval pair. Charts whose pair
/// falls within the degeneracy margin are rejected.
pub fn intervals_from_param<F: Real>(p: ModulusParam<F>) -> Result<IntervalPair<F>> {
    let (alpha, beta) = interval_coordinates(p);
    IntervalPair::new(alpha, beta)
}

/// Exact logarithmic capacity of the pair (Achieser's formula).
///
/// ```
/// use capax_core::capacity::{capacity_exact, IntervalPair};
///
/// let ip = IntervalPair::new(-0.6, 0.6)?;
/// let result = capacity_exact(ip);
/// assert!((result.cap - 0.4).abs() < 1e-12);
/// # Ok::<(), capax_core::Error>(())
/// ```
pub fn capacity_exact<F: Real>(ip: IntervalPair<F>) -> CapacityResult<F> {
    capacity_exact_tol(ip, F::of(DEFAULT_TOL))
}

/// Like [`capacity_exact`], with an explicit theta truncation threshold.
pub fn capacity_exact_tol<F: Real>(ip: IntervalPair<F>, tol: F) -> CapacityResult<F> {
    let param = param_from_intervals(ip);
    let lambda = param.lambda;
    let (arg_fraction, branch_used) = if lambda <= F::of(0.5) {
        (lambda, Branch::Direct)
    } else {
        (F::one() - lambda, Branch::Reflected)
    };
    let big_k = complete_k(param.modulus);
    let u = arg_fraction * big_k;
    let dn = jacobi_sncndn(u, param.modulus).dn;
    let tq: ThetaQuad<F> = theta_quad_tol(u, param.modulus, tol);
    let pi2 = F::PI() * F::PI();
    let cap = F::of(2.0) * param.modulus.mc() * big_k * big_k
        / (pi2 * dn * dn * tq.theta.powi(4));
    CapacityResult {
        cap,
        param,
        branch_used,
    }
}

/// Affine normalization of `[a, b] u [c, d]` onto `[-1, alpha] u [beta, 1]`.
///
/// Returns the normalized pair together with `scale = (d - a)/2` and
/// `shift = -(a + d)/2`, so that `y = (x + shift) / scale` maps the input
/// onto `[-1, 1]` and the original capacity is `scale` times the
/// normalized one.
pub fn normalize_intervals<F: Real>(
    a: F,
    b: F,
    c: F,
    d: F,
) -> Result<(IntervalPair<F>, F, F)> {
    if !(a < b && b < c && c < d) {
        return Err(Error::EndpointOrder);
    }
    let scale = (d - a) * F::of(0.5);
    let shift = -(a + d) * F::of(0.5);
    let alpha = (b + shift) / scale;
    let beta = (c + shift) / scale;
    let pair = IntervalPair::new(alpha, beta)?;
    Ok((pair, scale, shift))
}

/// Capacity of the circular-arc set that projects onto the pair
/// (Robinson): `CAP(A) = sqrt(2 CAP(C))`.
pub fn robinson_arc_capacity<F: Real>(ip: IntervalPair<F>) -> F {
    (F::of(2.0) * capacity_exact(ip).cap).sqrt()
}
