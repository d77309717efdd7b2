//! Complex numbers over an arbitrary scalar ring.
//!
//! `Gaussian<BigInt>` is the ring of Gaussian integers, `Gaussian<BigRational>`
//! its field of fractions, and `Gaussian<f64>` the floating backend used for
//! plotting and for grids whose entries have no exact root.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// `re + im·i` over the scalar `T`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Gaussian<T> {
    pub re: T,
    pub im: T,
}

impl<T> Gaussian<T> {
    pub const fn new(re: T, im: T) -> Self {
        Gaussian { re, im }
    }
}

impl<T: Zero> Gaussian<T> {
    pub fn real(re: T) -> Self {
        Gaussian { re, im: T::zero() }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl<T: Zero + One> Gaussian<T> {
    pub fn i() -> Self {
        Gaussian { re: T::zero(), im: T::one() }
    }
}

impl<T> Gaussian<T>
where
    T: Clone + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>,
{
    /// `re² + im²`.
    pub fn norm(&self) -> T {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    pub fn conj(&self) -> Self {
        Gaussian { re: self.re.clone(), im: -self.im.clone() }
    }

    /// Multiplication by the imaginary unit: `(a + bi)·i = −b + ai`.
    pub fn mul_i(&self) -> Self {
        Gaussian { re: -self.im.clone(), im: self.re.clone() }
    }

    pub fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    pub fn scale(&self, k: &T) -> Self {
        Gaussian { re: self.re.clone() * k.clone(), im: self.im.clone() * k.clone() }
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Gaussian<U> {
        Gaussian { re: f(&self.re), im: f(&self.im) }
    }
}

impl<T: Signed + Clone> Gaussian<T> {
    /// Chooses between `z` and `−z`: positive real part, or zero real part and
    /// nonnegative imaginary part. Only `±1` are used since multiplying a root
    /// by `i` would negate its square.
    pub fn normalize_sign(&self) -> Self {
        let flip = self.re.is_negative() || (self.re.is_zero() && self.im.is_negative());
        if flip {
            Gaussian { re: -self.re.clone(), im: -self.im.clone() }
        } else {
            self.clone()
        }
    }
}

impl<T: Ord> Gaussian<T> {
    /// Lexicographic `(re, im)` comparison; a total order for canonical keys.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

impl<T: Ord> PartialOrd for Gaussian<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.lex_cmp(other))
    }
}

impl<T: Ord> Ord for Gaussian<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lex_cmp(other)
    }
}

impl<T: Add<Output = T>> Add for Gaussian<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Gaussian { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl<T: Clone + Add<Output = T>> AddAssign for Gaussian<T> {
    fn add_assign(&mut self, rhs: Self) {
        self.re = self.re.clone() + rhs.re;
        self.im = self.im.clone() + rhs.im;
    }
}

impl<T: Sub<Output = T>> Sub for Gaussian<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Gaussian { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl<T> Mul for Gaussian<T>
where
    T: Clone + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let re = self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone();
        let im = self.re * rhs.im + self.im * rhs.re;
        Gaussian { re, im }
    }
}

impl<T: Neg<Output = T>> Neg for Gaussian<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Gaussian { re: -self.re, im: -self.im }
    }
}

impl<T: Zero + Clone + Add<Output = T>> Zero for Gaussian<T> {
    fn zero() -> Self {
        Gaussian { re: T::zero(), im: T::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl<T> One for Gaussian<T>
where
    T: Zero + One + Clone + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    fn one() -> Self {
        Gaussian { re: T::one(), im: T::zero() }
    }
}

impl<T> fmt::Display for Gaussian<T>
where
    T: fmt::Display + Signed + Clone,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let mag = self.im.abs();
        let coeff = if mag.is_one() { String::new() } else { mag.to_string() };
        if self.re.is_zero() {
            let sign = if self.im.is_negative() { "-" } else { "" };
            write!(f, "{sign}{coeff}i")
        } else {
            let sign = if self.im.is_negative() { '-' } else { '+' };
            write!(f, "{}{sign}{coeff}i", self.re)
        }
    }
}

/// Accepts `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`; whitespace is ignored.
impl<T> FromStr for Gaussian<T>
where
    T: FromStr + Zero + One + Neg<Output = T>,
{
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("not a Gaussian integer: {s:?}"));
        if compact.is_empty() {
            return Err(bad());
        }
        let Some(body) = compact.strip_suffix('i') else {
            let re = compact.parse::<T>().map_err(|_| bad())?;
            return Ok(Gaussian { re, im: T::zero() });
        };
        // Split at the last sign that is not the leading character.
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(idx, _)| idx)
            .last();
        let (re_text, im_text) = match split {
            Some(idx) => (&body[..idx], &body[idx..]),
            None => ("", body),
        };
        let im = match im_text {
            "" | "+" => T::one(),
            "-" => -T::one(),
            text => text.trim_start_matches('+').parse::<T>().map_err(|_| bad())?,
        };
        let re = if re_text.is_empty() {
            T::zero()
        } else {
            re_text.parse::<T>().map_err(|_| bad())?
        };
        Ok(Gaussian { re, im })
    }
}

impl Gaussian<BigInt> {
    pub fn from_i64(re: i64, im: i64) -> Self {
        Gaussian { re: BigInt::from(re), im: BigInt::from(im) }
    }

    pub fn to_rational(&self) -> Gaussian<BigRational> {
        self.map(|x| BigRational::from_integer(x.clone()))
    }

    pub fn to_f64(&self) -> Gaussian<f64> {
        self.map(|x| x.to_f64().unwrap_or(f64::NAN))
    }

    /// Nearest-integer quotient, the division step of the Euclidean algorithm.
    pub fn div_round(&self, rhs: &Self) -> Self {
        let n = rhs.norm();
        let num = self.clone() * rhs.conj();
        let round = |x: &BigInt| -> BigInt {
            // floor((2x + n) / 2n)
            let two = BigInt::from(2);
            num_integer::Integer::div_floor(&(x * &two + &n), &(&n * &two))
        };
        Gaussian { re: round(&num.re), im: round(&num.im) }
    }

    /// Greatest common divisor, defined up to a unit; returned sign-normalized.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let q = a.div_round(&b);
            let r = a - q * b.clone();
            a = b;
            b = r;
        }
        a.normalize_sign()
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        let q = other.div_round(self);
        q * self.clone() == *other
    }

    /// Exact division; `None` when `rhs` does not divide `self`.
    pub fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let q = self.div_round(rhs);
        (q.clone() * rhs.clone() == *self).then_some(q)
    }
}

impl Gaussian<BigRational> {
    pub fn from_int(z: &Gaussian<BigInt>) -> Self {
        z.to_rational()
    }

    /// `Some` when both parts have denominator 1.
    pub fn to_integer(&self) -> Option<Gaussian<BigInt>> {
        (self.re.is_integer() && self.im.is_integer())
            .then(|| Gaussian { re: self.re.to_integer(), im: self.im.to_integer() })
    }

    pub fn half(&self) -> Self {
        let h = BigRational::new(BigInt::one(), BigInt::from(2));
        self.scale(&h)
    }

    pub fn to_f64(&self) -> Gaussian<f64> {
        self.map(|x| x.to_f64().unwrap_or(f64::NAN))
    }
}

impl Gaussian<f64> {
    pub fn abs(&self) -> f64 {
        self.re.hypot(self.im)
    }

    /// Principal square root: nonnegative real part, branch cut on the
    /// negative real axis taken to the upper half plane.
    pub fn sqrt_principal(&self) -> Self {
        let r = self.abs();
        let re = ((r + self.re) / 2.0).max(0.0).sqrt();
        let im_mag = ((r - self.re) / 2.0).max(0.0).sqrt();
        let im = if self.im < 0.0 { -im_mag } else { im_mag };
        Gaussian { re, im }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        let n = rhs.norm();
        let num = *self * rhs.conj();
        Gaussian { re: num.re / n, im: num.im / n }
    }
}

impl Copy for Gaussian<f64> {}
