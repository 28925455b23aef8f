//! Laurent monomials `X^m = X_1^{m_1} ... X_n^{m_n}`.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// An exponent vector. Ordered graded-lexicographically: first by total
/// degree, then lexicographically with `X_1 > X_2 > ...`.
///
/// The order is compatible with multiplication by any Laurent monomial,
/// which makes leading-term division well defined on Laurent polynomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[i32; 6]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exps(e: &[i32]) -> Self {
        Monomial(SmallVec::from_slice(e))
    }

    /// `X_i^k` (0-based `i`).
    pub fn var_pow(nvars: usize, i: usize, k: i32) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = k;
        m
    }

    pub fn exps(&self) -> &[i32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.nvars(), o.nvars());
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn div(&self, o: &Self) -> Self {
        debug_assert_eq!(self.nvars(), o.nvars());
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn inv(&self) -> Self {
        Monomial(self.0.iter().map(|a| -a).collect())
    }

    pub fn pow(&self, k: i32) -> Self {
        Monomial(self.0.iter().map(|a| a * k).collect())
    }

    /// Sign of the first nonzero exponent, `0` for the unit monomial.
    pub fn leading_sign(&self) -> i32 {
        self.0.iter().find(|&&e| e != 0).map_or(0, |e| e.signum())
    }

    /// Componentwise minimum.
    pub fn meet(&self, o: &Self) -> Self {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| *a.min(b)).collect())
    }

    /// Greatest common divisor of the exponents (always nonnegative).
    pub fn content(&self) -> i32 {
        self.0
            .iter()
            .fold(0i32, |g, &e| num_integer::Integer::gcd(&g, &e))
    }

    pub fn l1_norm(&self) -> i64 {
        self.0.iter().map(|&e| (e as i64).abs()).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree()
            .cmp(&o.degree())
            .then_with(|| self.0.as_slice().cmp(o.0.as_slice()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "X{}", i + 1)?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn graded_lex_order() {
        let a = Monomial::from_exps(&[1, 0]);
        let b = Monomial::from_exps(&[0, 1]);
        let c = Monomial::from_exps(&[2, -1]);
        let d = Monomial::from_exps(&[0, 0]);
        assert!(a > b);
        assert!(c > a);
        assert!(b > d);
        assert!(Monomial::from_exps(&[-1, 0]) < d);
        assert_eq!(c.to_string(), "X1^2*X2^-1");
        assert_eq!(c.leading_sign(), 1);
        assert_eq!(Monomial::from_exps(&[0, -2, 4]).content(), 2);
    }

    fn arb_mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(-5i32..6, 3).prop_map(|v| Monomial::from_exps(&v))
    }

    proptest! {
        #[test]
        fn order_is_shift_invariant(a in arb_mono(), b in arb_mono(), s in arb_mono()) {
            prop_assert_eq!(a.cmp(&b), a.mul(&s).cmp(&b.mul(&s)));
        }

        #[test]
        fn mul_div_inverse(a in arb_mono(), b in arb_mono()) {
            prop_assert_eq!(a.mul(&b).div(&b), a.clone());
            prop_assert!(a.mul(&a.inv()).is_one());
        }
    }
}
