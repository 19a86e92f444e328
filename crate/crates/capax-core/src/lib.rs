//! Logarithmic capacity of two real intervals `[-1, alpha] u [beta, 1]`.
//!
//! The crate evaluates the exact capacity through Jacobi's elliptic and
//! theta functions, every analytic lower and upper bound that goes with it,
//! and an independent transfinite-diameter (Leja) estimator used for
//! cross-validation. All numerics are generic over the scalar type; the
//! aliases at the crate root fix `f64`, which is what the stated accuracy
//! contracts refer to.

pub mod bounds;
pub mod capacity;
pub mod elliptic;
pub mod error;
pub mod jacobi;
pub mod lemmas;
pub mod oracle;
pub mod real;
pub mod theta;

pub use error::{Error, Result};
pub use real::Real;

/// Elliptic modulus over `f64`.
pub type Modulus64 = elliptic::Modulus<f64>;
/// Complete elliptic integrals K, K', E, E' over `f64`.
pub type EllipticPair64 = elliptic::EllipticPair<f64>;
/// Jacobi sn/cn/dn triple over `f64`.
pub type JacobiTriple64 = jacobi::JacobiTriple<f64>;
/// Four theta values over `f64`.
pub type ThetaQuad64 = theta::ThetaQuad<f64>;
/// Two-interval geometry over `f64`.
pub type IntervalPair64 = capacity::IntervalPair<f64>;
/// The (k, lambda) chart over `f64`.
pub type ModulusParam64 = capacity::ModulusParam<f64>;
/// Capacity value plus the chart it was computed in, over `f64`.
pub type CapacityResult64 = capacity::CapacityResult<f64>;
/// Angle chart (phi, psi) over `f64`.
pub type AngleChart64 = bounds::AngleChart<f64>;
/// All bound values for one pair, over `f64`.
pub type BoundsReport64 = bounds::BoundsReport<f64>;
/// Elementary sandwich bounds for K and E, over `f64`.
pub type KeBounds64 = bounds::KeBounds<f64>;
/// Greedy Leja configuration over `f64`.
pub type LejaSequence64 = oracle::LejaSequence<f64>;
