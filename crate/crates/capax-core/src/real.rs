//! Generic floating-point scalar used throughout the crate.

use std::fmt;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar: `f32` or `f64`.
///
/// Everything in this crate is generic over [`Real`]; the concrete aliases
/// at the crate root fix `f64`, which is the precision the documented
/// accuracy contracts refer to.
pub trait Real:
    Float + FloatConst + FromPrimitive + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal must convert to the scalar type")
    }

    /// Lossy conversion to `f64`, for diagnostics.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar must convert to f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}
