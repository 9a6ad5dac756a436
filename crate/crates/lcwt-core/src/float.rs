//! Scalar abstraction for the transform engine.
//!
//! All core math is generic over [`LcFloat`], which bundles the arithmetic,
//! constant, and FFT bounds the engine needs. `f32` and `f64` are the two
//! instantiations; concrete type aliases live at the crate root.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};
use rustfft::FftNum;

/// Floating-point scalar usable by every module in this crate.
pub trait LcFloat:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + FftNum
    + Sum
    + Display
    + LowerExp
    + Debug
{
    /// Tolerance for the unit-determinant check at matrix construction.
    fn det_tol() -> Self;

    /// Threshold below which a matrix `B` entry is treated as zero and the
    /// degenerate LCT branch applies.
    fn b_zero_tol() -> Self;

    /// Shorthand for lossless-enough conversion from `f64` literals.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// Conversion to `f64` for diagnostics and reports.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl LcFloat for f64 {
    fn det_tol() -> Self {
        1e-12
    }

    fn b_zero_tol() -> Self {
        1e-14
    }
}

impl LcFloat for f32 {
    // f32 rounding in a 2x2 determinant already eats ~1e-7; the published
    // tolerances assume f64 and are relaxed proportionally here.
    fn det_tol() -> Self {
        1e-5
    }

    fn b_zero_tol() -> Self {
        1e-7
    }
}
