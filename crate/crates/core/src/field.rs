//! Coefficient fields.
//!
//! Every polynomial and rational-function type in this crate is generic over a
//! [`Field`]. Three instances are provided: [`ExactScalar`](crate::ExactScalar)
//! (rational functions in `u = q^{1/2}`), [`Rational`] (plain big rationals,
//! used for numeric evaluation) and [`SqrtExt`](crate::SqrtExt) (the field
//! `Q(sqrt p)`, used when `q` is specialized to a concrete prime).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub trait Field:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn from_i64(v: i64) -> Self;

    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// An exact square root inside the field, when one is recognised.
    ///
    /// Implementations may return `None` for squares they cannot detect; the
    /// only consequence is that a binomial is left unsplit.
    fn sqrt(&self) -> Option<Self> {
        None
    }

    /// Total order on representations, used to sort factor multisets.
    fn repr_cmp(&self, other: &Self) -> Ordering;

    fn pow(&self, k: i64) -> Option<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.clone() * &sq;
            }
        }
        Some(acc)
    }
}

pub(crate) fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &n * &n == *r.numer() && &d * &d == *r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

impl Field for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn sqrt(&self) -> Option<Self> {
        rational_sqrt(self)
    }

    fn repr_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
}

#[cfg(test)]
pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_pow_and_sqrt() {
        let r = rat(4, 9);
        assert_eq!(r.sqrt(), Some(rat(2, 3)));
        assert_eq!(rat(2, 1).sqrt(), None);
        assert_eq!(rat(-4, 1).sqrt(), None);
        assert_eq!(Field::pow(&rat(2, 3), -2), Some(rat(9, 4)));
        assert_eq!(Field::pow(&rat(0, 1), -1), None);
    }
}
