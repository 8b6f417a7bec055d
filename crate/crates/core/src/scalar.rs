//! Scalar rings the algebraic types are generic over.
//!
//! Everything in this crate is exact. Fixed-width integers are used for
//! lattice points and counting; big rationals for points of the rational
//! octonions and for invariant-polynomial evaluation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, One, Zero};
use std::fmt::Debug;
use std::ops::Neg;

/// Arbitrary-precision rational.
pub type Rational = BigRational;

/// A commutative ring with exact, overflow-checked arithmetic.
pub trait Ring:
    Clone + PartialEq + Debug + Zero + One + Neg<Output = Self> + CheckedAdd + CheckedSub + CheckedMul
{
    fn from_int(v: i64) -> Self;
}

impl Ring for i64 {
    #[inline]
    fn from_int(v: i64) -> Self {
        v
    }
}

impl Ring for i128 {
    #[inline]
    fn from_int(v: i64) -> Self {
        v as i128
    }
}

impl Ring for BigInt {
    fn from_int(v: i64) -> Self {
        BigInt::from(v)
    }
}

impl Ring for BigRational {
    fn from_int(v: i64) -> Self {
        BigRational::from_i64(v).expect("i64 is representable")
    }
}

/// `p/q` as a big rational.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Exact `sum_{d | n} d^3`.
pub fn sigma3(n: u64) -> u64 {
    let mut total = 0u64;
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            total += d * d * d;
            let e = n / d;
            if e != d {
                total += e * e * e;
            }
        }
        d += 1;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma3_small_values() {
        assert_eq!(sigma3(1), 1);
        assert_eq!(sigma3(2), 9);
        assert_eq!(sigma3(3), 28);
        assert_eq!(sigma3(6), 252);
        assert_eq!(sigma3(0), 0);
    }

    #[test]
    fn sigma3_is_multiplicative_on_coprime_arguments() {
        for m in 1..30u64 {
            for n in 1..30u64 {
                if num_integer::gcd(m, n) == 1 {
                    assert_eq!(sigma3(m * n), sigma3(m) * sigma3(n));
                }
            }
        }
    }
}
