//! Canonical binomial factors `X^m - c`.

use std::cmp::Ordering;
use std::fmt;

use crate::field::Field;
use crate::laurent::LaurentPolynomial;
use crate::monomial::Monomial;

/// The binomial `X^m - c` with `m != 0`, first nonzero entry of `m`
/// positive, and `c != 0`.
#[derive(Clone, PartialEq)]
pub struct BinomialFactor<C: Field> {
    m: Monomial,
    c: C,
}

/// `unit * X^mono * prod(factors)`, the normal form of `a X^m + b`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedBinomial<C: Field> {
    pub unit: C,
    pub mono: Monomial,
    pub factors: Vec<BinomialFactor<C>>,
}

impl<C: Field> BinomialFactor<C> {
    /// Builds `X^m - c`, panicking if the data is not canonical.
    pub fn new(m: Monomial, c: C) -> Self {
        assert!(m.leading_sign() > 0, "binomial exponent must be canonical");
        assert!(!c.is_zero(), "binomial constant must be nonzero");
        BinomialFactor { m, c }
    }

    pub fn monomial(&self) -> &Monomial {
        &self.m
    }

    /// The constant `c` in `X^m - c`.
    pub fn constant(&self) -> &C {
        &self.c
    }

    pub fn nvars(&self) -> usize {
        self.m.nvars()
    }

    pub fn to_poly(&self) -> LaurentPolynomial<C> {
        LaurentPolynomial::from_terms(
            self.nvars(),
            [
                (self.m.clone(), C::one()),
                (Monomial::one(self.nvars()), -self.c.clone()),
            ],
        )
    }

    pub fn eval(&self, point: &[C]) -> Option<C> {
        let mut v = C::one();
        for (x, &e) in point.iter().zip(self.m.exps()) {
            if e != 0 {
                v = v * &x.pow(e as i64)?;
            }
        }
        Some(v - &self.c)
    }

    pub fn repr_cmp(&self, o: &Self) -> Ordering {
        self.m.cmp(&o.m).then_with(|| self.c.repr_cmp(&o.c))
    }

    /// Normal form of `a X^m + b`. Returns `None` for the zero polynomial.
    ///
    /// The result is split as far as square roots of the constant allow:
    /// `X^{2k} - d^2 = (X^k - d)(X^k + d)`.
    pub fn normalize(a: C, m: Monomial, b: C) -> Option<NormalizedBinomial<C>> {
        let n = m.nvars();
        if m.is_one() {
            let s = a + &b;
            return (!s.is_zero()).then(|| NormalizedBinomial {
                unit: s,
                mono: Monomial::one(n),
                factors: Vec::new(),
            });
        }
        if a.is_zero() {
            return (!b.is_zero()).then(|| NormalizedBinomial {
                unit: b,
                mono: Monomial::one(n),
                factors: Vec::new(),
            });
        }
        if b.is_zero() {
            return Some(NormalizedBinomial {
                unit: a,
                mono: m,
                factors: Vec::new(),
            });
        }
        let c = -(b * &a.inv().expect("nonzero"));
        let (unit, mono, m, c) = if m.leading_sign() < 0 {
            // X^m - c = -c X^m (X^{-m} - 1/c)
            let ci = c.inv().expect("nonzero");
            (a * &-c, m.clone(), m.inv(), ci)
        } else {
            (a, Monomial::one(n), m, c)
        };
        let mut factors = Vec::new();
        split_squares(m, c, &mut factors);
        Some(NormalizedBinomial {
            unit,
            mono,
            factors,
        })
    }
}

fn split_squares<C: Field>(m: Monomial, c: C, out: &mut Vec<BinomialFactor<C>>) {
    if m.content() % 2 == 0 {
        if let Some(d) = c.sqrt() {
            let half = Monomial::from_exps(&m.exps().iter().map(|e| e / 2).collect::<Vec<_>>());
            split_squares(half.clone(), d.clone(), out);
            split_squares(half, -d, out);
            return;
        }
    }
    out.push(BinomialFactor::new(m, c));
}

impl<C: Field> fmt::Display for BinomialFactor<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

impl<C: Field> fmt::Debug for BinomialFactor<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ExactScalar;
    use num_traits::{One, Zero};

    fn mono(e: &[i32]) -> Monomial {
        Monomial::from_exps(e)
    }

    #[test]
    fn flips_negative_exponent() {
        // 1 - q^{-1} X^{-1} = -q^{-1} X^{-1} (X - q^{-1}) ... with the leading
        // sign convention: a = -q^{-1}, m = -e1, b = 1.
        let q1 = ExactScalar::q_pow(-1);
        let nb = BinomialFactor::normalize(-q1.clone(), mono(&[-1]), ExactScalar::one()).unwrap();
        assert_eq!(nb.mono, mono(&[-1]));
        assert_eq!(
            nb.factors,
            vec![BinomialFactor::new(mono(&[1]), q1.clone())]
        );
        assert_eq!(nb.unit, ExactScalar::one());
    }

    #[test]
    fn splits_squares() {
        // 1 - q^{-2} X^2 = -q^{-2} (X - q)(X + q)
        let nb = BinomialFactor::normalize(-ExactScalar::q_pow(-2), mono(&[2]), ExactScalar::one())
            .unwrap();
        assert_eq!(nb.factors.len(), 2);
        assert_eq!(nb.unit, -ExactScalar::q_pow(-2));
        let prod = nb
            .factors
            .iter()
            .fold(LaurentPolynomial::constant(1, nb.unit.clone()), |acc, f| {
                acc.mul(&f.to_poly())
            });
        let expect = LaurentPolynomial::from_terms(
            1,
            [
                (mono(&[2]), -ExactScalar::q_pow(-2)),
                (mono(&[0]), ExactScalar::one()),
            ],
        );
        assert_eq!(prod, expect);
        // X^2 - q does split over Q(u); X^2 - 2 does not.
        assert_eq!(
            BinomialFactor::normalize(ExactScalar::one(), mono(&[2]), -ExactScalar::q_pow(1))
                .unwrap()
                .factors
                .len(),
            2
        );
        assert_eq!(
            BinomialFactor::normalize(ExactScalar::one(), mono(&[2]), ExactScalar::from_int(-2))
                .unwrap()
                .factors
                .len(),
            1
        );
    }

    #[test]
    fn degenerate_cases() {
        let z = ExactScalar::zero;
        assert!(BinomialFactor::normalize(z(), mono(&[1]), z()).is_none());
        let nb =
            BinomialFactor::normalize(ExactScalar::one(), mono(&[0]), ExactScalar::one()).unwrap();
        assert_eq!(nb.unit, ExactScalar::from_int(2));
        assert!(nb.factors.is_empty());
    }
}
