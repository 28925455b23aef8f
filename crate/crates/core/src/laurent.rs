//! Sparse multivariate Laurent polynomials.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::AlgebraError;
use crate::field::Field;
use crate::monomial::Monomial;

/// A finite sum of `c_m X^m` with nonzero coefficients, keyed in graded-lex
/// order.
#[derive(Clone, PartialEq)]
pub struct LaurentPolynomial<C: Field> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Field> LaurentPolynomial<C> {
    pub fn zero(nvars: usize) -> Self {
        LaurentPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut p = Self::zero(m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// `X_i` (0-based `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Monomial::var_pow(nvars, i, 1), C::one())
    }

    /// Collects terms, summing repeated monomials and dropping zeros.
    pub fn from_terms(nvars: usize, it: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut acc: HashMap<Monomial, C> = HashMap::new();
        for (m, c) in it {
            debug_assert_eq!(m.nvars(), nvars);
            match acc.get_mut(&m) {
                Some(v) => *v = v.clone() + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        LaurentPolynomial {
            nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, C> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// `Some((m, c))` when the polynomial is the single term `c X^m`.
    pub fn as_term(&self) -> Option<(&Monomial, &C)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<C> {
        if self.is_zero() {
            return Some(C::zero());
        }
        match self.as_term() {
            Some((m, c)) if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    /// Componentwise minimum of all exponents.
    pub fn min_exps(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(self.nvars),
            Some(first) => it.fold(first.clone(), |acc, m| acc.meet(m)),
        }
    }

    fn check(&self, o: &Self) -> Result<(), AlgebraError> {
        if self.nvars == o.nvars {
            Ok(())
        } else {
            Err(AlgebraError::VarMismatch(self.nvars, o.nvars))
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o).expect("variable count");
        let mut terms = self.terms.clone();
        for (m, c) in &o.terms {
            let v = match terms.remove(m) {
                Some(v) => v + c,
                None => c.clone(),
            };
            if !v.is_zero() {
                terms.insert(m.clone(), v);
            }
        }
        LaurentPolynomial {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-C::one())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x.clone() * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, s: &Monomial) -> Self {
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(s), c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o).expect("variable count");
        if let Some((m, c)) = o.as_term() {
            return self.mul_monomial(m).scale(c);
        }
        if let Some((m, c)) = self.as_term() {
            return o.mul_monomial(m).scale(c);
        }
        let mut acc: HashMap<Monomial, C> = HashMap::with_capacity(self.len() * o.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m = m1.mul(m2);
                let c = c1.clone() * c2;
                match acc.get_mut(&m) {
                    Some(v) => *v = v.clone() + &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        LaurentPolynomial {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact quotient `self / d` in the Laurent ring, or `None` if `d` does
    /// not divide `self`.
    ///
    /// Both sides are shifted to honest polynomials (the divisor with no
    /// monomial content) and divided by leading terms. A single polynomial is
    /// a Groebner basis of its ideal, so the first leading term that is not
    /// divisible proves the remainder is nonzero.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        self.check(d).ok()?;
        let (lt, lc) = d.leading()?;
        if let Some((m, c)) = d.as_term() {
            return Some(self.mul_monomial(&m.inv()).scale(&c.inv()?));
        }
        let lc_inv = lc.inv()?;
        let t = d.min_exps();
        let s = self.min_exps();
        // A term X^a is divisible by the shifted leading term when
        // a - s >= lt - t componentwise.
        let need = lt.div(&t);
        let tail: Vec<(Monomial, C)> = d
            .terms
            .iter()
            .filter(|(m, _)| *m != lt)
            .map(|(m, c)| (m.div(lt), c.clone()))
            .collect();
        let mut rem = self.terms.clone();
        let mut quot = BTreeMap::new();
        while let Some((a, c)) = rem.pop_last() {
            let shifted = a.div(&s);
            if shifted.exps().iter().zip(need.exps()).any(|(x, y)| x < y) {
                return None;
            }
            let qm = a.div(lt);
            let qc = c * &lc_inv;
            for (dm, dc) in &tail {
                let m = qm.mul(dm).mul(lt);
                let v = dc.clone() * &qc;
                let nv = match rem.remove(&m) {
                    Some(old) => old - &v,
                    None => -v,
                };
                if !nv.is_zero() {
                    rem.insert(m, nv);
                }
            }
            quot.insert(qm, qc);
        }
        Some(LaurentPolynomial {
            nvars: self.nvars,
            terms: quot,
        })
    }

    /// Exact quotient `self / (X^m - c)`, or `None` if the binomial does not
    /// divide `self`.
    ///
    /// Exponents split into classes `r + k m`; on each class `self` is a
    /// one-variable Laurent polynomial in `Y = X^m`, divided by `Y - c`
    /// synthetically.
    pub fn exact_div_binomial(&self, m: &Monomial, c: &C) -> Option<Self> {
        let j = m.exps().iter().position(|&e| e != 0)?;
        let mj = m.exps()[j];
        let mut classes: BTreeMap<Monomial, BTreeMap<i32, C>> = BTreeMap::new();
        for (a, x) in &self.terms {
            let k = a.exps()[j].div_euclid(mj);
            classes
                .entry(a.div(&m.pow(k)))
                .or_default()
                .insert(k, x.clone());
        }
        let mut quot = BTreeMap::new();
        for (r, ys) in classes {
            let (&lo, _) = ys.first_key_value()?;
            let (&hi, _) = ys.last_key_value()?;
            if lo == hi {
                return None;
            }
            // q_{k-1} = y_k + c q_k, from the top down; y_lo + c q_lo is the
            // remainder
            let mut q = C::zero();
            for k in (lo + 1..=hi).rev() {
                let y = ys.get(&k).cloned().unwrap_or_else(C::zero);
                q = y + &(c.clone() * &q);
                if !q.is_zero() {
                    quot.insert(r.mul(&m.pow(k - 1)), q.clone());
                }
            }
            if !(ys[&lo].clone() + &(c.clone() * &q)).is_zero() {
                return None;
            }
        }
        Some(LaurentPolynomial {
            nvars: self.nvars,
            terms: quot,
        })
    }

    /// Applies an exponent map termwise, summing colliding images.
    pub fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> Self {
        let nvars = self
            .terms
            .keys()
            .next()
            .map_or(self.nvars, |m| f(m).nvars());
        Self::from_terms(nvars, self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> LaurentPolynomial<D> {
        LaurentPolynomial::from_terms(
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
        )
    }

    /// Value at `X = point`; `None` if a negative power hits a zero entry.
    pub fn eval(&self, point: &[C]) -> Option<C> {
        assert_eq!(point.len(), self.nvars);
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                if e != 0 {
                    t = t * &x.pow(e as i64)?;
                }
            }
            acc = acc + &t;
        }
        Some(acc)
    }
}

fn fmt_coeff<C: Field>(c: &C) -> (bool, String) {
    let s = c.to_string();
    if s.contains(' ') {
        return (false, format!("({s})"));
    }
    match s.strip_prefix('-') {
        Some(rest) => (true, rest.to_string()),
        None => (false, s),
    }
}

impl<C: Field> fmt::Display for LaurentPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, body) = fmt_coeff(c);
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&body)?;
            } else if body == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{body}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<C: Field> fmt::Debug for LaurentPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, Rational};
    use crate::ExactScalar;
    use num_traits::One;
    use proptest::prelude::*;

    type P = LaurentPolynomial<Rational>;

    fn x(i: usize) -> P {
        P::var(2, i)
    }

    fn c(v: i64) -> P {
        P::constant(2, rat(v, 1))
    }

    #[test]
    fn exact_division() {
        let a = x(0).sub(&c(1));
        let b = x(0).add(&x(1).mul_monomial(&Monomial::from_exps(&[0, -3])));
        let p = a.mul(&b);
        assert_eq!(p.exact_div(&a), Some(b.clone()));
        assert_eq!(p.exact_div(&b), Some(a.clone()));
        assert_eq!(p.add(&c(1)).exact_div(&a), None);
        // X1^2 - 1 is not divisible by X1 - X2
        assert_eq!(x(0).mul(&x(0)).sub(&c(1)).exact_div(&x(0).sub(&x(1))), None);
    }

    #[test]
    fn display() {
        let p = x(0).mul(&x(0)).sub(&x(1).scale(&rat(3, 2))).add(&c(-1));
        assert_eq!(p.to_string(), "X1^2 - 3/2*X2 - 1");
        let e = LaurentPolynomial::<ExactScalar>::var(1, 0)
            .scale(&(ExactScalar::one() - &ExactScalar::u_pow(-2)));
        assert_eq!(e.to_string(), "(1 - u^-2)*X1");
    }

    fn arb_poly() -> impl Strategy<Value = P> {
        proptest::collection::vec(((-3i32..4, -3i32..4), -3i64..4), 0..5).prop_map(|ts| {
            P::from_terms(
                2,
                ts.into_iter()
                    .map(|((a, b), c)| (Monomial::from_exps(&[a, b]), rat(c, 1))),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), d in arb_poly()) {
            prop_assert_eq!(a.mul(&b.add(&d)), a.mul(&b).add(&a.mul(&d)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
        }

        #[test]
        fn division_recovers_factor(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let p = a.mul(&b);
            prop_assert_eq!(p.exact_div(&b), Some(a));
        }

        #[test]
        fn binomial_division_agrees(
            a in arb_poly(),
            noise in arb_poly(),
            m in (0i32..3, -2i32..3),
            cv in -3i64..4,
        ) {
            let m = Monomial::from_exps(&[m.0, m.1]);
            prop_assume!(!m.is_one() && cv != 0);
            let b = P::from_terms(2, [(m.clone(), rat(1, 1)), (Monomial::one(2), rat(-cv, 1))]);
            let p = a.mul(&b);
            prop_assert_eq!(p.exact_div_binomial(&m, &rat(cv, 1)), Some(a));
            let q = p.add(&noise);
            prop_assert_eq!(q.exact_div_binomial(&m, &rat(cv, 1)), q.exact_div(&b));
        }
    }
}
