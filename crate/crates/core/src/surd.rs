//! The quadratic field `Q(sqrt d)` for a square-free integer `d`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::{rational_sqrt, Field};
use crate::scalar::fmt_rational;

/// `a + b sqrt(d)`.
///
/// The radicand is carried at runtime. A value with `b = 0` may have `d = 0`,
/// meaning "rational, radicand not yet fixed"; it adopts the radicand of
/// whatever it is combined with. Combining two irrational values with
/// different radicands is a logic error and panics.
#[derive(Clone)]
pub struct SqrtExt {
    a: BigRational,
    b: BigRational,
    d: i64,
}

impl SqrtExt {
    pub fn new(a: BigRational, b: BigRational, d: i64) -> Self {
        assert!(d != 0 || b.is_zero(), "irrational part needs a radicand");
        SqrtExt { a, b, d }
    }

    pub fn rational_in(a: BigRational, d: i64) -> Self {
        SqrtExt::new(a, BigRational::zero(), d)
    }

    pub fn from_int_in(a: i64, d: i64) -> Self {
        Self::rational_in(BigRational::from_integer(a.into()), d)
    }

    pub fn zero_in(d: i64) -> Self {
        Self::rational_in(BigRational::zero(), d)
    }

    /// `sqrt(d)` itself.
    pub fn root(d: i64) -> Self {
        SqrtExt::new(BigRational::zero(), BigRational::one(), d)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> i64 {
        self.d
    }

    fn join(&self, o: &Self) -> i64 {
        match (self.d, o.d) {
            (0, d) | (d, 0) => d,
            (x, y) if x == y => x,
            (x, y) => {
                if self.b.is_zero() {
                    y
                } else if o.b.is_zero() {
                    x
                } else {
                    panic!("mixing Q(sqrt {x}) and Q(sqrt {y})")
                }
            }
        }
    }

    fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(self.d.into())
    }
}

impl PartialEq for SqrtExt {
    fn eq(&self, o: &Self) -> bool {
        self.a == o.a && self.b == o.b && (self.b.is_zero() || self.d == o.d)
    }
}

impl Eq for SqrtExt {}

impl std::hash::Hash for SqrtExt {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.a.hash(h);
        self.b.hash(h);
        if !self.b.is_zero() {
            self.d.hash(h);
        }
    }
}

impl Zero for SqrtExt {
    fn zero() -> Self {
        Self::zero_in(0)
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for SqrtExt {
    fn one() -> Self {
        Self::rational_in(BigRational::one(), 0)
    }
}

impl Add<&SqrtExt> for SqrtExt {
    type Output = SqrtExt;
    fn add(self, o: &SqrtExt) -> SqrtExt {
        let d = self.join(o);
        SqrtExt::new(self.a + &o.a, self.b + &o.b, d)
    }
}

impl Add for SqrtExt {
    type Output = SqrtExt;
    fn add(self, o: SqrtExt) -> SqrtExt {
        self + &o
    }
}

impl Neg for SqrtExt {
    type Output = SqrtExt;
    fn neg(self) -> SqrtExt {
        SqrtExt::new(-self.a, -self.b, self.d)
    }
}

impl Sub<&SqrtExt> for SqrtExt {
    type Output = SqrtExt;
    fn sub(self, o: &SqrtExt) -> SqrtExt {
        self + &(-o.clone())
    }
}

impl Sub for SqrtExt {
    type Output = SqrtExt;
    fn sub(self, o: SqrtExt) -> SqrtExt {
        self - &o
    }
}

impl Mul<&SqrtExt> for SqrtExt {
    type Output = SqrtExt;
    fn mul(self, o: &SqrtExt) -> SqrtExt {
        let d = self.join(o);
        let dd = BigRational::from_integer(d.into());
        let a = &self.a * &o.a + &self.b * &o.b * dd;
        let b = &self.a * &o.b + &self.b * &o.a;
        SqrtExt::new(a, b, d)
    }
}

impl Mul for SqrtExt {
    type Output = SqrtExt;
    fn mul(self, o: SqrtExt) -> SqrtExt {
        self * &o
    }
}

impl Field for SqrtExt {
    fn from_i64(v: i64) -> Self {
        Self::rational_in(BigRational::from_integer(v.into()), 0)
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(SqrtExt::new(&self.a / &n, -&self.b / &n, self.d))
    }

    fn sqrt(&self) -> Option<Self> {
        if self.b.is_zero() {
            return rational_sqrt(&self.a).map(|r| SqrtExt::rational_in(r, self.d));
        }
        None
    }

    fn repr_cmp(&self, o: &Self) -> Ordering {
        self.b.cmp(&o.b).then_with(|| self.a.cmp(&o.a))
    }
}

impl fmt::Display for SqrtExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return f.write_str(&fmt_rational(&self.a));
        }
        let surd = format!("{}*sqrt({})", fmt_rational(&self.b), self.d);
        if self.a.is_zero() {
            f.write_str(&surd)
        } else {
            write!(f, "{} + {}", fmt_rational(&self.a), surd)
        }
    }
}

impl fmt::Debug for SqrtExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SqrtExt({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use proptest::prelude::*;

    #[test]
    fn root_squares_to_radicand() {
        let r = SqrtExt::root(3);
        assert_eq!(r.clone() * &r, SqrtExt::from_i64(3));
        let x = SqrtExt::new(rat(1, 1), rat(2, 1), 3);
        let xi = x.inv().unwrap();
        assert_eq!((x * &xi).rational_part(), &rat(1, 1));
    }

    #[test]
    fn rational_adopts_radicand() {
        let x = SqrtExt::from_i64(2) + &SqrtExt::root(5);
        assert_eq!(x.radicand(), 5);
    }

    proptest! {
        #[test]
        fn inverse_is_inverse(a in -20i64..20, b in -20i64..20, d in prop::sample::select(vec![2i64, 3, 5, 7])) {
            let x = SqrtExt::new(rat(a, 1), rat(b, 3), d);
            if let Some(xi) = x.inv() {
                let one = x * &xi;
                prop_assert_eq!(one.rational_part(), &rat(1, 1));
                prop_assert!(one.surd_part().is_zero());
            }
        }
    }
}
