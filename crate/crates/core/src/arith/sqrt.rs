use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::GaussInt;

/// `floor(√n)` together with whether it is exact.
pub fn isqrt(n: &BigInt) -> Result<(BigInt, bool), Error> {
    if n.is_negative() {
        return Err(Error::NegativeInput(n.to_string()));
    }
    let root = n.sqrt();
    let exact = &root * &root == *n;
    Ok((root, exact))
}

/// Integer square root of a nonnegative perfect square, else `None`.
pub fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    match isqrt(n) {
        Ok((root, true)) => Some(root),
        _ => None,
    }
}

pub fn is_square(n: &BigInt) -> bool {
    exact_isqrt(n).is_some()
}

/// Square root in ℤ[i], sign-normalized, or `None` when `z` is not a square.
///
/// With `s = √N(z)` exact, a root `x + yi` satisfies `x² = (s + re)/2` and
/// `y² = (s − re)/2` with `sign(2xy) = sign(im)`; the candidate is verified by
/// squaring.
pub fn gauss_sqrt(z: &GaussInt) -> Option<GaussInt> {
    let s = exact_isqrt(&z.norm())?;
    let two = BigInt::from(2);
    let (x2, rx) = (&s + &z.re).div_rem(&two);
    let (y2, ry) = (&s - &z.re).div_rem(&two);
    if !rx.is_zero() || !ry.is_zero() {
        return None;
    }
    let x = exact_isqrt(&x2)?;
    let mut y = exact_isqrt(&y2)?;
    if z.im.is_negative() {
        y = -y;
    }
    let candidate = GaussInt::new(x, y);
    (candidate.square() == *z).then(|| candidate.normalize_sign())
}

pub fn is_gauss_square(z: &GaussInt) -> bool {
    gauss_sqrt(z).is_some()
}

/// Writes `n > 0` as `s²·f` with `f` squarefree, returning `(s, f)`.
///
/// Trial division runs only while `p³ ≤ rest`: past that point the cofactor
/// has at most two prime factors, so it is either a perfect square or
/// squarefree.
pub fn squarefree_decompose(n: &BigInt) -> (BigInt, BigInt) {
    assert!(n.is_positive(), "squarefree_decompose needs a positive integer");
    let mut rest = n.clone();
    let mut outer = BigInt::one();
    let mut core = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p * &p <= rest {
        if (&rest % &p).is_zero() {
            let mut count = 0u32;
            while (&rest % &p).is_zero() {
                rest /= &p;
                count += 1;
            }
            for _ in 0..count / 2 {
                outer *= &p;
            }
            if count % 2 == 1 {
                core *= &p;
            }
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    match exact_isqrt(&rest) {
        Some(r) => outer *= r,
        None => core *= rest,
    }
    (outer, core)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(re: i64, im: i64) -> GaussInt {
        GaussInt::from_i64(re, im)
    }

    #[test]
    fn isqrt_examples() {
        assert_eq!(isqrt(&BigInt::from(49)).unwrap(), (BigInt::from(7), true));
        assert_eq!(isqrt(&BigInt::from(48)).unwrap(), (BigInt::from(6), false));
        assert_eq!(isqrt(&BigInt::from(360721)).unwrap(), (BigInt::from(600), false));
        assert_eq!(isqrt(&BigInt::from(0)).unwrap(), (BigInt::from(0), true));
        assert!(matches!(isqrt(&BigInt::from(-1)), Err(Error::NegativeInput(_))));
    }

    #[test]
    fn gauss_sqrt_examples() {
        assert_eq!(gauss_sqrt(&g(-48, 64)), Some(g(4, 8)));
        assert_eq!(gauss_sqrt(&g(0, 2)), Some(g(1, 1)));
        assert_eq!(gauss_sqrt(&g(5, 0)), None);
        assert_eq!(gauss_sqrt(&g(0, 0)), Some(g(0, 0)));
        assert_eq!(gauss_sqrt(&g(-1, 0)), Some(g(0, 1)));
        assert_eq!(gauss_sqrt(&g(2, 0)), None);
        assert_eq!(gauss_sqrt(&g(0, -2)), Some(g(1, -1)));
    }

    #[test]
    fn five_has_no_root_by_brute_force() {
        // every root g of 5 would have norm(g)² = 25
        for re in -5i64..=5 {
            for im in -5i64..=5 {
                assert_ne!(g(re, im).square(), g(5, 0));
            }
        }
    }

    #[test]
    fn squarefree_examples() {
        let d = |n: i64| {
            let (s, f) = squarefree_decompose(&BigInt::from(n));
            (s.try_into().unwrap(), f.try_into().unwrap())
        };
        let pairs: Vec<(i64, i64)> = vec![d(1), d(12), d(360721), d(222121), d(49), d(72), d(2 * 1009 * 1009)];
        assert_eq!(pairs, vec![(1, 1), (2, 3), (1, 360721), (1, 222121), (7, 1), (6, 2), (1009, 2)]);
    }

    fn brute_squarefree(n: u64) -> (u64, u64) {
        let mut s = 1;
        let mut k = 2;
        while k * k <= n {
            if n % (k * k) == 0 {
                s = k;
            }
            k += 1;
        }
        (s, n / (s * s))
    }

    proptest! {
        #[test]
        fn isqrt_brackets(n in 0u128..u128::MAX / 4) {
            let n = BigInt::from(n);
            let (root, exact) = isqrt(&n).unwrap();
            let next = &root + 1;
            prop_assert!(&root * &root <= n && n < &next * &next);
            prop_assert_eq!(exact, &root * &root == n);
        }

        #[test]
        fn squarefree_matches_brute_force(n in 1u64..200_000) {
            let (s, f) = squarefree_decompose(&BigInt::from(n));
            let (bs, bf) = brute_squarefree(n);
            prop_assert_eq!((s, f), (BigInt::from(bs), BigInt::from(bf)));
        }
    }
}
