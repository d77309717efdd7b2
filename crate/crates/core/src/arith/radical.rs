//! Exact values involving square roots of rational integers.
//!
//! [`RadicalValue`] is `a + b·√n` for a single squarefree radicand `n`, the
//! shape of a near-miss cell root such as `√360721`. [`RadicalSum`] is a finite
//! sum `Σ cₖ·√nₖ` over distinct squarefree radicands; it is closed under the
//! ring operations, so sibling and pseudo-grid algebra stays exact even when a
//! line touches two different non-square cells.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::sqrt::{gauss_sqrt, squarefree_decompose};
use crate::error::Error;
use crate::{GaussF64, GaussInt, GaussRat};

/// `a + b·√n` with `n` squarefree; `b = 0` forces `n = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RadicalValue {
    a: GaussRat,
    b: GaussRat,
    n: BigInt,
}

impl RadicalValue {
    pub fn new(a: GaussRat, b: GaussRat, n: BigInt) -> Result<Self, Error> {
        if n.is_negative() {
            return Err(Error::NegativeInput(n.to_string()));
        }
        if n.is_zero() || b.is_zero() {
            return Ok(RadicalValue { a, b: GaussRat::zero(), n: BigInt::one() });
        }
        let (outer, core) = squarefree_decompose(&n);
        let b = b.scale(&num_rational::BigRational::from_integer(outer));
        if core.is_one() {
            Ok(RadicalValue { a: a + b, b: GaussRat::zero(), n: core })
        } else {
            Ok(RadicalValue { a, b, n: core })
        }
    }

    pub fn from_rational(a: GaussRat) -> Self {
        RadicalValue { a, b: GaussRat::zero(), n: BigInt::one() }
    }

    pub fn from_int(z: &GaussInt) -> Self {
        Self::from_rational(z.to_rational())
    }

    /// `√k` for a rational integer `k`; negative `k` gives `i·√|k|`.
    pub fn sqrt_of_integer(k: &BigInt) -> Self {
        let coeff = if k.is_negative() { GaussInt::i() } else { GaussInt::one() };
        Self::new(GaussRat::zero(), coeff.to_rational(), k.abs()).expect("radicand is nonnegative")
    }

    /// Exact root of a cell value: the sign-normalized Gaussian root when one
    /// exists, otherwise `√value` for real values, otherwise `None`.
    pub fn root_of(value: &GaussInt) -> Option<Self> {
        if let Some(root) = gauss_sqrt(value) {
            return Some(Self::from_int(&root));
        }
        value.is_real().then(|| Self::sqrt_of_integer(&value.re))
    }

    pub fn rational_part(&self) -> &GaussRat {
        &self.a
    }

    pub fn radical_part(&self) -> &GaussRat {
        &self.b
    }

    pub fn radicand(&self) -> &BigInt {
        &self.n
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_gauss_int(&self) -> Option<GaussInt> {
        if self.is_rational() { self.a.to_integer() } else { None }
    }

    pub fn to_sum(&self) -> RadicalSum {
        RadicalSum::from_terms([(BigInt::one(), self.a.clone()), (self.n.clone(), self.b.clone())])
    }

    pub fn to_f64(&self) -> GaussF64 {
        self.to_sum().to_f64()
    }

    pub fn square(&self) -> Self {
        radical_mul(self, self).expect("equal radicands")
    }

    fn common_radicand<'a>(&'a self, other: &'a Self) -> Result<&'a BigInt, Error> {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => Ok(&other.n),
            (_, true) => Ok(&self.n),
            _ if self.n == other.n => Ok(&self.n),
            _ => Err(Error::MixedRadicals(self.n.to_string(), other.n.to_string())),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, Error> {
        let n = self.common_radicand(other)?.clone();
        Self::new(self.a.clone() + other.a.clone(), self.b.clone() + other.b.clone(), n)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, Error> {
        self.checked_add(&-other.clone())
    }
}

impl Neg for RadicalValue {
    type Output = Self;
    fn neg(self) -> Self {
        RadicalValue { a: -self.a, b: -self.b, n: self.n }
    }
}

/// Exact product `(a₁a₂ + b₁b₂·n) + (a₁b₂ + a₂b₁)·√n`.
///
/// Fails with [`Error::MixedRadicals`] when both factors carry different
/// nontrivial radicands; [`RadicalSum`] handles that case.
pub fn radical_mul(x: &RadicalValue, y: &RadicalValue) -> Result<RadicalValue, Error> {
    let n = x.common_radicand(y)?.clone();
    let n_rat = GaussRat::real(num_rational::BigRational::from_integer(n.clone()));
    let a = x.a.clone() * y.a.clone() + x.b.clone() * y.b.clone() * n_rat;
    let b = x.a.clone() * y.b.clone() + y.a.clone() * x.b.clone();
    RadicalValue::new(a, b, n)
}

impl TryFrom<&RadicalSum> for RadicalValue {
    type Error = Error;

    fn try_from(sum: &RadicalSum) -> Result<Self, Error> {
        let mut a = GaussRat::zero();
        let mut radical: Option<(&BigInt, &GaussRat)> = None;
        for (n, c) in &sum.terms {
            if n.is_one() {
                a = c.clone();
            } else if let Some((first, _)) = radical {
                return Err(Error::MixedRadicals(first.to_string(), n.to_string()));
            } else {
                radical = Some((n, c));
            }
        }
        match radical {
            None => Ok(RadicalValue::from_rational(a)),
            Some((n, b)) => RadicalValue::new(a, b.clone(), n.clone()),
        }
    }
}

impl fmt::Display for RadicalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_sum().fmt(f)
    }
}

/// `Σ cₖ·√nₖ` with distinct squarefree `nₖ ≥ 1` and nonzero Gaussian-rational
/// coefficients. Square roots of distinct squarefree integers are linearly
/// independent over ℚ(i), so the representation is unique and zero iff empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RadicalSum {
    terms: BTreeMap<BigInt, GaussRat>,
}

impl RadicalSum {
    fn from_terms(terms: impl IntoIterator<Item = (BigInt, GaussRat)>) -> Self {
        let mut sum = RadicalSum::default();
        for (n, c) in terms {
            sum.add_term(n, c);
        }
        sum
    }

    fn add_term(&mut self, n: BigInt, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(n).or_insert_with(GaussRat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn from_rational(c: GaussRat) -> Self {
        Self::from_terms([(BigInt::one(), c)])
    }

    pub fn from_int(z: &GaussInt) -> Self {
        Self::from_rational(z.to_rational())
    }

    /// Iterates `(radicand, coefficient)` in increasing radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (&BigInt, &GaussRat)> {
        self.terms.iter()
    }

    pub fn radicand_count(&self) -> usize {
        self.terms.keys().filter(|n| !n.is_one()).count()
    }

    pub fn to_rational(&self) -> Option<GaussRat> {
        match self.terms.len() {
            0 => Some(GaussRat::zero()),
            1 => self.terms.get(&BigInt::one()).cloned(),
            _ => None,
        }
    }

    pub fn to_gauss_int(&self) -> Option<GaussInt> {
        self.to_rational()?.to_integer()
    }

    pub fn mul_i(&self) -> Self {
        RadicalSum { terms: self.terms.iter().map(|(n, c)| (n.clone(), c.mul_i())).collect() }
    }

    pub fn half(&self) -> Self {
        RadicalSum { terms: self.terms.iter().map(|(n, c)| (n.clone(), c.half())).collect() }
    }

    pub fn to_f64(&self) -> GaussF64 {
        let mut acc = GaussF64::new(0.0, 0.0);
        for (n, c) in &self.terms {
            let root = n.to_f64().unwrap_or(f64::INFINITY).sqrt();
            let c = c.to_f64();
            acc = acc + GaussF64::new(c.re * root, c.im * root);
        }
        acc
    }
}

impl From<GaussRat> for RadicalSum {
    fn from(c: GaussRat) -> Self {
        Self::from_rational(c)
    }
}

impl From<&RadicalValue> for RadicalSum {
    fn from(v: &RadicalValue) -> Self {
        v.to_sum()
    }
}

impl Add for RadicalSum {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (n, c) in rhs.terms {
            self.add_term(n, c);
        }
        self
    }
}

impl Sub for RadicalSum {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for RadicalSum {
    type Output = Self;
    fn neg(self) -> Self {
        RadicalSum { terms: self.terms.into_iter().map(|(n, c)| (n, -c)).collect() }
    }
}

impl Mul for RadicalSum {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = RadicalSum::default();
        for (n1, c1) in &self.terms {
            for (n2, c2) in &rhs.terms {
                // √n₁·√n₂ = g·√(n₁n₂/g²) with g = gcd(n₁, n₂), both squarefree
                let g = n1.gcd(n2);
                let n = (n1 / &g) * (n2 / &g);
                let c = (c1.clone() * c2.clone()).scale(&num_rational::BigRational::from_integer(g));
                out.add_term(n, c);
            }
        }
        out
    }
}

impl Zero for RadicalSum {
    fn zero() -> Self {
        RadicalSum::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for RadicalSum {
    fn one() -> Self {
        Self::from_rational(GaussRat::one())
    }
}

impl fmt::Display for RadicalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(n, c)| {
                let coeff = if c.re.is_zero() || c.im.is_zero() { c.to_string() } else { format!("({c})") };
                if n.is_one() {
                    coeff
                } else if c.is_one() {
                    format!("√{n}")
                } else {
                    format!("{coeff}·√{n}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
