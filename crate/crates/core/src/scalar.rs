//! Floating-point scalar abstraction.
//!
//! Every bound in this crate is a closed-form or numerically optimised
//! expression over real gains, so the math is written once against
//! [`Scalar`] and instantiated for `f32` and `f64`.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar used for gains, rates and correlations.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` literal. Panics only if the target cannot hold a finite value,
    /// which never happens for `f32`/`f64`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    /// Converts a relay or index count.
    #[inline]
    fn count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    /// Lossy view as `f64`, used for error messages and reporting.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// `0.5 * log2(1 + x)`: the capacity in bits of a real Gaussian channel with SNR `x`.
    #[inline]
    fn half_log2_1p(self) -> Self {
        self.ln_1p() / (Self::LN_2() + Self::LN_2())
    }

    /// `log2(1 + x)` computed through `ln_1p` so tiny SNRs keep full relative precision.
    #[inline]
    fn log2_1p(self) -> Self {
        self.ln_1p() / Self::LN_2()
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
