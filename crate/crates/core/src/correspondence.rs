//! The arithmetic-triplet ⇄ Pythagorean-triple maps.
//!
//! Over ℤ a triple `A² + B² = C²` folds into the progression
//! `(A−B)², C², (A+B)²` and back. Over ℤ[i] the triple is written
//! `α² + β² + γ² = 0` and each component can play the hypotenuse, so one triple
//! unfolds into three triplets.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::{exact_isqrt, Ring, RootScalar};
use crate::error::{Error, Result};
use crate::{GaussInt, GaussRat};

/// `A² + B² = C²`, over any ring (rational or Gaussian integers).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegTriple<T> {
    a: T,
    b: T,
    c: T,
}

impl<T: Ring> LegTriple<T> {
    pub fn new(a: T, b: T, c: T) -> Result<Self> {
        if a.sq() + b.sq() != c.sq() {
            return Err(Error::NotPythagorean(format!("{a:?}² + {b:?}² ≠ {c:?}²")));
        }
        Ok(LegTriple { a, b, c })
    }

    pub fn legs(&self) -> (&T, &T) {
        (&self.a, &self.b)
    }

    pub fn hypotenuse(&self) -> &T {
        &self.c
    }
}

impl LegTriple<BigInt> {
    pub fn to_gaussian(&self) -> LegTriple<GaussInt> {
        LegTriple {
            a: GaussInt::real(self.a.clone()),
            b: GaussInt::real(self.b.clone()),
            c: GaussInt::real(self.c.clone()),
        }
    }

    /// Same triple up to leg order and signs.
    pub fn equivalent(&self, other: &Self) -> bool {
        let legs = |t: &Self| {
            let mut v = [t.a.abs(), t.b.abs()];
            v.sort();
            v
        };
        legs(self) == legs(other) && self.c.abs() == other.c.abs()
    }
}

/// A Gaussian Pythagorean triple in zero-sum form, `α² + β² + γ² = 0`, with
/// nonzero sign-normalized components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZeroSumTriple {
    alpha: GaussInt,
    beta: GaussInt,
    gamma: GaussInt,
}

impl ZeroSumTriple {
    pub fn new(alpha: GaussInt, beta: GaussInt, gamma: GaussInt) -> Result<Self> {
        if !(alpha.square() + beta.square() + gamma.square()).is_zero() {
            return Err(Error::NotPythagorean(format!("({alpha})² + ({beta})² + ({gamma})² ≠ 0")));
        }
        if alpha.is_zero() || beta.is_zero() || gamma.is_zero() {
            return Err(Error::TrivialTriple(format!("({alpha}, {beta}, {gamma})")));
        }
        Ok(ZeroSumTriple {
            alpha: alpha.normalize_sign(),
            beta: beta.normalize_sign(),
            gamma: gamma.normalize_sign(),
        })
    }

    pub fn components(&self) -> [&GaussInt; 3] {
        [&self.alpha, &self.beta, &self.gamma]
    }

    pub fn conj(&self) -> Self {
        ZeroSumTriple {
            alpha: self.alpha.conj().normalize_sign(),
            beta: self.beta.conj().normalize_sign(),
            gamma: self.gamma.conj().normalize_sign(),
        }
    }

    /// Components sorted; identifies the triple up to order and signs.
    pub fn order_key(&self) -> [GaussInt; 3] {
        let mut v = [self.alpha.clone(), self.beta.clone(), self.gamma.clone()];
        v.sort();
        v
    }

    /// Identifies the triple up to order, signs and componentwise conjugation.
    pub fn class_key(&self) -> [GaussInt; 3] {
        self.order_key().min(self.conj().order_key())
    }

    /// Mean of the three squares; zero for every triple.
    pub fn centroid_of_squares(&self) -> GaussRat {
        let sum = self.alpha.square() + self.beta.square() + self.gamma.square();
        let three = num_rational::BigRational::from_integer(BigInt::from(3));
        sum.to_rational().map(|x| x / three.clone())
    }
}

impl fmt::Display for ZeroSumTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.alpha, self.beta, self.gamma)
    }
}

/// Three roots whose squares are meant to be evenly spaced.
///
/// `defect = left² + right² − 2·center²`, zero exactly for a true triplet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArithTriplet<S> {
    left: S,
    center: S,
    right: S,
    defect: S,
}

impl<S: Ring> ArithTriplet<S> {
    pub fn new(left: S, center: S, right: S) -> Self {
        let two = S::one() + S::one();
        let defect = left.sq() + right.sq() - two * center.sq();
        ArithTriplet { left, center, right, defect }
    }

    pub fn left(&self) -> &S {
        &self.left
    }

    pub fn center(&self) -> &S {
        &self.center
    }

    pub fn right(&self) -> &S {
        &self.right
    }

    pub fn roots(&self) -> [&S; 3] {
        [&self.left, &self.center, &self.right]
    }

    /// The progression terms `left², center², right²`.
    pub fn values(&self) -> [S; 3] {
        [self.left.sq(), self.center.sq(), self.right.sq()]
    }

    pub fn defect(&self) -> &S {
        &self.defect
    }

    pub fn is_arithmetic(&self) -> bool {
        self.defect.is_zero()
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&S) -> U) -> ArithTriplet<U> {
        ArithTriplet::new(f(&self.left), f(&self.center), f(&self.right))
    }
}

impl<S: RootScalar> ArithTriplet<S> {
    /// Whether all three roots are Gaussian integers.
    pub fn is_integral(&self) -> bool {
        self.roots().iter().all(|r| r.as_gauss_int().is_some())
    }
}

impl ArithTriplet<GaussInt> {
    /// Sign-normalized center with sorted sign-normalized endpoints; equal
    /// keys mean equal triplets up to root signs and reversal.
    pub fn order_key(&self) -> [GaussInt; 3] {
        let mut ends = [self.left.normalize_sign(), self.right.normalize_sign()];
        ends.sort();
        let [lo, hi] = ends;
        [self.center.normalize_sign(), lo, hi]
    }

    /// As [`Self::order_key`], also identifying componentwise conjugates.
    pub fn class_key(&self) -> [GaussInt; 3] {
        let conj = self.map(|z| z.conj());
        self.order_key().min(conj.order_key())
    }

    pub fn to_rational(&self) -> ArithTriplet<GaussRat> {
        self.map(|z| z.to_rational())
    }
}

impl<S: fmt::Display> fmt::Display for ArithTriplet<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}) defect {}", self.left, self.center, self.right, self.defect)
    }
}

/// Integer fold: `(A, B, C) ↦ roots (|A−B|, C, |A+B|)`.
pub fn pyth_to_triplet_int(t: &LegTriple<BigInt>) -> ArithTriplet<BigInt> {
    let (a, b) = t.legs();
    ArithTriplet::new((a - b).abs(), t.hypotenuse().abs(), (a + b).abs())
}

/// Integer unfold: progression values `L², C², R²` ↦ `((L+R)/2, |L−R|/2, C)`.
///
/// The halves are integral because `L² + R² = 2C²` forces `L ≡ R (mod 2)`.
pub fn triplet_to_pyth_int(l2: &BigInt, c2: &BigInt, r2: &BigInt) -> Result<LegTriple<BigInt>> {
    let defect: BigInt = l2 + r2 - c2 * 2;
    if !defect.is_zero() {
        return Err(Error::NotArithmetic(defect.to_string()));
    }
    let root = |v: &BigInt| exact_isqrt(v).ok_or_else(|| Error::NotSquare(v.to_string()));
    let (l, c, r) = (root(l2)?, root(c2)?, root(r2)?);
    let a: BigInt = (&l + &r) / 2;
    let b: BigInt = (&l - &r).abs() / 2;
    LegTriple::new(a, b, c)
}

/// `(A, B, C) ↦ (C, iA, iB)`, sign-normalized.
pub fn to_zero_sum(t: &LegTriple<GaussInt>) -> Result<ZeroSumTriple> {
    let (a, b) = t.legs();
    let (alpha, beta, gamma) = (t.hypotenuse().clone(), a.mul_i(), b.mul_i());
    if alpha.is_zero() || beta.is_zero() || gamma.is_zero() {
        return Err(Error::TrivialTriple(format!("({a}, {b}, {})", t.hypotenuse())));
    }
    ZeroSumTriple::new(alpha, beta, gamma)
}

/// The three triplets of a zero-sum triple, with `α`, `β`, `γ` taking the
/// hypotenuse role in that order. For hypotenuse `h` and legs `p`, `q` the
/// roots are `(i(p−q), h, i(p+q))`, sign-normalized.
pub fn triplets_from_triple(z: &ZeroSumTriple) -> [ArithTriplet<GaussInt>; 3] {
    let [a, b, c] = z.components();
    let one = |h: &GaussInt, p: &GaussInt, q: &GaussInt| {
        let left = (p.clone() - q.clone()).mul_i().normalize_sign();
        let right = (p.clone() + q.clone()).mul_i().normalize_sign();
        ArithTriplet::new(left, h.clone(), right)
    };
    [one(a, b, c), one(b, a, c), one(c, a, b)]
}

/// The zero-sum triple whose `α`-triplet is `t`, before normalization:
/// `(Z, −i(L+R)/2, i(L−R)/2)`.
fn generator(t: &ArithTriplet<GaussInt>) -> Result<[GaussRat; 3]> {
    if !t.is_arithmetic() {
        return Err(Error::NotArithmetic(t.defect().to_string()));
    }
    let (l, r) = (t.left().to_rational(), t.right().to_rational());
    let beta = (l.clone() + r.clone()).half().mul_i().normalize_sign();
    let gamma = (l - r).half().mul_i().normalize_sign();
    let alpha = t.center().to_rational().normalize_sign();
    if alpha.is_zero() || beta.is_zero() || gamma.is_zero() {
        return Err(Error::TrivialTriple(format!("{t}")));
    }
    Ok([alpha, beta, gamma])
}

/// Inverse of the 3-to-1 map: the triple that generates `t` with `t`'s center
/// as hypotenuse.
pub fn triplet_to_triple(t: &ArithTriplet<GaussInt>) -> Result<ZeroSumTriple> {
    let [alpha, beta, gamma] = generator(t)?;
    match (alpha.to_integer(), beta.to_integer(), gamma.to_integer()) {
        (Some(a), Some(b), Some(c)) => ZeroSumTriple::new(a, b, c),
        _ => Err(Error::GaussianParity(format!("{t}"))),
    }
}

/// Opt-in variant of [`triplet_to_triple`] returning the generator over ℚ(i)
/// when the halves `(L ± R)/2` are not Gaussian integers.
pub fn triplet_to_rational_triple(t: &ArithTriplet<GaussInt>) -> Result<([GaussRat; 3], bool)> {
    let g = generator(t)?;
    let integral = g.iter().all(|c| c.to_integer().is_some());
    Ok((g, integral))
}

/// An older and a younger sibling of one (possibly kinked) triplet.
#[derive(Clone, Debug, PartialEq)]
pub struct Siblings<S> {
    pub older: ArithTriplet<S>,
    pub younger: ArithTriplet<S>,
}

impl<S: RootScalar> Siblings<S> {
    /// Whether every sibling root is a Gaussian integer.
    pub fn is_integral(&self) -> bool {
        self.older.is_integral() && self.younger.is_integral()
    }
}

/// Siblings of the triplet with roots `(x, z, y)`.
///
/// The older sibling has the half-sum at its center,
/// `(z + i(x−y)/2, (x+y)/2, z − i(x−y)/2)`; the younger has the half-difference,
/// `(z + i(x+y)/2, (x−y)/2, z − i(x+y)/2)`. Both carry the negated defect of the
/// input.
pub fn siblings_of_triplet<S: RootScalar>(x: &S, z: &S, y: &S) -> Siblings<S> {
    let half_sum = (x.clone() + y.clone()).half();
    let half_diff = (x.clone() - y.clone()).half();
    let older = ArithTriplet::new(
        z.clone() + half_diff.mul_i(),
        half_sum.clone(),
        z.clone() - half_diff.mul_i(),
    );
    let younger = ArithTriplet::new(z.clone() + half_sum.mul_i(), half_diff, z.clone() - half_sum.mul_i());
    Siblings { older, younger }
}
