//! Exact scalars: Gaussian integers and rationals, square roots, radicals.

mod gaussian;
mod radical;
mod sqrt;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use gaussian::Gaussian;
pub use radical::{radical_mul, RadicalSum, RadicalValue};
pub use sqrt::{exact_isqrt, gauss_sqrt, is_gauss_square, is_square, isqrt, squarefree_decompose};

use crate::{GaussF64, GaussInt, GaussRat};

/// Commutative ring operations needed to form squares and defects.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn sq(&self) -> Self {
        self.clone() * self.clone()
    }
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Add<Output = Self>
        + Sub<Output = Self>
        + Mul<Output = Self>
        + Neg<Output = Self>
{
}

/// Scalars able to hold sibling roots: closed under `·i` and halving.
pub trait RootScalar: Ring + Send + Sync {
    fn mul_i(&self) -> Self;
    fn half(&self) -> Self;
    /// `Some` when the value is exactly a Gaussian integer.
    fn as_gauss_int(&self) -> Option<GaussInt>;
    fn approx(&self) -> GaussF64;
    /// Zero test; exact for exact scalars, relative to `scale` for floats.
    fn is_negligible(&self, scale: f64) -> bool;
}

impl RootScalar for GaussRat {
    fn mul_i(&self) -> Self {
        Gaussian::mul_i(self)
    }
    fn half(&self) -> Self {
        Gaussian::<num_rational::BigRational>::half(self)
    }
    fn as_gauss_int(&self) -> Option<GaussInt> {
        self.to_integer()
    }
    fn approx(&self) -> GaussF64 {
        self.to_f64()
    }
    fn is_negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }
}

impl RootScalar for RadicalSum {
    fn mul_i(&self) -> Self {
        RadicalSum::mul_i(self)
    }
    fn half(&self) -> Self {
        RadicalSum::half(self)
    }
    fn as_gauss_int(&self) -> Option<GaussInt> {
        self.to_gauss_int()
    }
    fn approx(&self) -> GaussF64 {
        self.to_f64()
    }
    fn is_negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }
}

/// Relative tolerance of the floating backend.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

impl RootScalar for GaussF64 {
    fn mul_i(&self) -> Self {
        Gaussian::mul_i(self)
    }
    fn half(&self) -> Self {
        Gaussian::new(self.re / 2.0, self.im / 2.0)
    }
    fn as_gauss_int(&self) -> Option<GaussInt> {
        None
    }
    fn approx(&self) -> GaussF64 {
        *self
    }
    fn is_negligible(&self, scale: f64) -> bool {
        self.abs() <= FLOAT_TOLERANCE * scale.max(1.0)
    }
}

/// Lossless widening of a rational integer.
pub fn gauss_from_int(n: &BigInt) -> GaussInt {
    GaussInt::real(n.clone())
}
