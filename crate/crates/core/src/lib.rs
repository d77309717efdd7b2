//! Arithmetic triplets of Gaussian squares and their Pythagorean
//! correspondence.
//!
//! Every Gaussian Pythagorean triple `α² + β² + γ² = 0` yields three
//! arithmetic triplets of squares, one per choice of hypotenuse. A 3×3 slant
//! grid of squares carries eight such triplets, and each of them has an older
//! and a younger sibling, so a grid brings 24 triplets with it. The crate
//! computes all of this exactly, reports how near-miss magic squares fail,
//! measures the error term of pseudo-grids formed by siblings, and searches
//! for slant grids with many square entries.
//!
//! Scalars are generic: [`Gaussian<T>`] works over `BigInt`, `BigRational`
//! and `f64`, with the aliases below for the concrete rings in use.

pub mod arith;
pub mod correspondence;
pub mod error;
pub mod fixtures;
pub mod grid;
pub mod json;
pub mod search;
pub mod siblings;
pub mod svg;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use arith::{Gaussian, RadicalSum, RadicalValue, Ring, RootScalar};
pub use error::{Error, Result};

/// Gaussian integer, ℤ[i].
pub type GaussInt = Gaussian<BigInt>;
/// Gaussian rational, ℚ(i).
pub type GaussRat = Gaussian<BigRational>;
/// Floating complex value used by the plotting and fallback backend.
pub type GaussF64 = Gaussian<f64>;
