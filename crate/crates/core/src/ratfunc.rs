//! Rational functions with factorized binomial denominators.

use std::fmt;

use rayon::prelude::*;

use crate::binomial::{BinomialFactor, NormalizedBinomial};
use crate::error::AlgebraError;
use crate::field::Field;
use crate::laurent::LaurentPolynomial;
use crate::monomial::Monomial;

/// `numerator / prod(factor^mult)`.
///
/// The numerator is an expanded Laurent polynomial and the denominator a
/// sorted multiset of canonical binomials. After every operation each
/// denominator factor that divides the numerator is cancelled, and a zero
/// function has an empty denominator.
#[derive(Clone)]
pub struct FactorizedRatFunc<C: Field> {
    num: LaurentPolynomial<C>,
    den: Vec<(BinomialFactor<C>, u32)>,
}

/// The image `coeff * Y^mono` of one variable under a substitution.
#[derive(Clone, Debug, PartialEq)]
pub struct VarImage<C: Field> {
    pub coeff: C,
    pub mono: Monomial,
}

impl<C: Field> VarImage<C> {
    pub fn new(coeff: C, mono: Monomial) -> Self {
        VarImage { coeff, mono }
    }
}

pub(crate) fn merge_den<C: Field>(
    a: &[(BinomialFactor<C>, u32)],
    b: &[(BinomialFactor<C>, u32)],
    combine: impl Fn(u32, u32) -> u32,
) -> Vec<(BinomialFactor<C>, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ord = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => x.0.repr_cmp(&y.0),
            (Some(_), None) => std::cmp::Ordering::Less,
            _ => std::cmp::Ordering::Greater,
        };
        let (f, k) = match ord {
            std::cmp::Ordering::Less => {
                i += 1;
                (a[i - 1].0.clone(), combine(a[i - 1].1, 0))
            }
            std::cmp::Ordering::Greater => {
                j += 1;
                (b[j - 1].0.clone(), combine(0, b[j - 1].1))
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
                (a[i - 1].0.clone(), combine(a[i - 1].1, b[j - 1].1))
            }
        };
        if k > 0 {
            out.push((f, k));
        }
    }
    out
}

pub(crate) fn expand<C: Field>(
    nvars: usize,
    den: &[(BinomialFactor<C>, u32)],
) -> LaurentPolynomial<C> {
    let mut acc = LaurentPolynomial::one(nvars);
    for (f, k) in den {
        let p = f.to_poly();
        for _ in 0..*k {
            acc = acc.mul(&p);
        }
    }
    acc
}

/// Removes from `num` every factor of `den` that divides it.
fn cancel<C: Field>(
    mut num: LaurentPolynomial<C>,
    den: Vec<(BinomialFactor<C>, u32)>,
) -> (LaurentPolynomial<C>, Vec<(BinomialFactor<C>, u32)>) {
    if num.is_zero() {
        return (num, Vec::new());
    }
    let mut out = Vec::with_capacity(den.len());
    for (f, mut k) in den {
        while k > 0 {
            match num.exact_div_binomial(f.monomial(), f.constant()) {
                Some(q) => {
                    num = q;
                    k -= 1;
                }
                None => break,
            }
        }
        if k > 0 {
            out.push((f, k));
        }
    }
    (num, out)
}

impl<C: Field> FactorizedRatFunc<C> {
    /// Assembles and fully reduces `num / prod(den)`. The factor list may be
    /// unsorted and contain repeats.
    pub fn from_parts(num: LaurentPolynomial<C>, den: Vec<(BinomialFactor<C>, u32)>) -> Self {
        let mut den = den;
        den.sort_by(|a, b| a.0.repr_cmp(&b.0));
        let mut merged: Vec<(BinomialFactor<C>, u32)> = Vec::with_capacity(den.len());
        for (f, k) in den {
            match merged.last_mut() {
                Some(last) if last.0.repr_cmp(&f).is_eq() => last.1 += k,
                _ if k > 0 => merged.push((f, k)),
                _ => {}
            }
        }
        let (num, den) = cancel(num, merged);
        FactorizedRatFunc { num, den }
    }

    pub fn from_poly(p: LaurentPolynomial<C>) -> Self {
        FactorizedRatFunc {
            num: p,
            den: Vec::new(),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(LaurentPolynomial::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::from_poly(LaurentPolynomial::constant(nvars, c))
    }

    pub fn term(m: Monomial, c: C) -> Self {
        Self::from_poly(LaurentPolynomial::term(m, c))
    }

    /// `X_i` (0-based `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_poly(LaurentPolynomial::var(nvars, i))
    }

    /// The polynomial `a X^m + b`.
    pub fn binomial(a: C, m: Monomial, b: C) -> Self {
        let n = m.nvars();
        Self::from_poly(LaurentPolynomial::from_terms(
            n,
            [(m, a), (Monomial::one(n), b)],
        ))
    }

    /// `1 / (a X^m + b)`.
    pub fn binomial_recip(a: C, m: Monomial, b: C) -> Result<Self, AlgebraError> {
        let n = m.nvars();
        let nb = BinomialFactor::normalize(a, m, b).ok_or(AlgebraError::DivisionByZero)?;
        Ok(Self::recip_normalized(n, nb))
    }

    fn recip_normalized(n: usize, nb: NormalizedBinomial<C>) -> Self {
        let unit = nb.unit.inv().expect("normalized unit is nonzero");
        let num = LaurentPolynomial::term(nb.mono.inv(), unit);
        let _ = n;
        Self::from_parts(num, nb.factors.into_iter().map(|f| (f, 1)).collect())
    }

    /// `(a X^m + b) / (c X^k + d)`.
    pub fn binomial_quotient(
        a: C,
        m: Monomial,
        b: C,
        c: C,
        k: Monomial,
        d: C,
    ) -> Result<Self, AlgebraError> {
        Ok(Self::binomial(a, m, b).mul(&Self::binomial_recip(c, k, d)?))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numerator(&self) -> &LaurentPolynomial<C> {
        &self.num
    }

    pub fn denominator(&self) -> &[(BinomialFactor<C>, u32)] {
        &self.den
    }

    pub fn denominator_poly(&self) -> LaurentPolynomial<C> {
        expand(self.nvars(), &self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The Laurent polynomial this function equals, if it is one.
    pub fn as_poly(&self) -> Option<&LaurentPolynomial<C>> {
        self.den.is_empty().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<C> {
        self.as_poly()?.as_constant()
    }

    pub fn neg(&self) -> Self {
        FactorizedRatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        FactorizedRatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        FactorizedRatFunc {
            num: self.num.mul_monomial(m),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.nvars(), o.nvars(), "variable count mismatch");
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.nvars());
        }
        let (na, db) = cancel(self.num.clone(), o.den.clone());
        let (nb, da) = cancel(o.num.clone(), self.den.clone());
        FactorizedRatFunc {
            num: na.mul(&nb),
            den: merge_den(&da, &db, |x, y| x + y),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::sum(&[self.clone(), o.clone()])
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Sum over a common denominator, cancelled once at the end.
    pub fn sum(items: &[Self]) -> Self {
        assert!(!items.is_empty(), "empty sum");
        let n = items[0].nvars();
        let common = items
            .iter()
            .fold(Vec::new(), |acc, r| merge_den(&acc, &r.den, u32::max));
        let num = items
            .par_iter()
            .filter(|r| !r.is_zero())
            .map(|r| {
                let rest = merge_den(&common, &r.den, |x, y| x - y);
                r.num.mul(&expand(n, &rest))
            })
            .reduce(|| LaurentPolynomial::zero(n), |a, b| a.add(&b));
        Self::from_parts(num, common)
    }

    /// Inverse, when the numerator is a product of binomials.
    pub fn inv(&self) -> Result<Self, AlgebraError> {
        let n = self.nvars();
        let factored = factor_binomial(&self.num)?;
        let num = expand(n, &self.den);
        let mut den = Vec::new();
        let mut unit = C::one();
        let mut mono = Monomial::one(n);
        for nb in factored {
            unit = unit * &nb.unit;
            mono = mono.mul(&nb.mono);
            den.extend(nb.factors.into_iter().map(|f| (f, 1)));
        }
        let num = num
            .mul_monomial(&mono.inv())
            .scale(&unit.inv().ok_or(AlgebraError::DivisionByZero)?);
        Ok(Self::from_parts(num, den))
    }

    pub fn div(&self, o: &Self) -> Result<Self, AlgebraError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, k: i64) -> Result<Self, AlgebraError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let e = k.unsigned_abs() as u32;
        Ok(FactorizedRatFunc {
            num: base.num.pow(e),
            den: if e == 0 {
                Vec::new()
            } else {
                base.den.iter().map(|(f, m)| (f.clone(), m * e)).collect()
            },
        })
    }

    /// Mathematical equality, by cross-multiplying what the two
    /// denominators do not share.
    pub fn equals(&self, o: &Self) -> bool {
        if self.nvars() != o.nvars() {
            return false;
        }
        if self.den.len() == o.den.len()
            && self
                .den
                .iter()
                .zip(&o.den)
                .all(|(a, b)| a.1 == b.1 && a.0.repr_cmp(&b.0).is_eq())
        {
            return self.num == o.num;
        }
        let only_a = merge_den(&self.den, &o.den, |x, y| x.saturating_sub(y));
        let only_b = merge_den(&o.den, &self.den, |x, y| x.saturating_sub(y));
        let n = self.nvars();
        self.num.mul(&expand(n, &only_b)) == o.num.mul(&expand(n, &only_a))
    }

    /// Replaces `X_i` by `images[i]`, producing a function of the image
    /// variables. A denominator factor that maps to zero is an error.
    pub fn substitute(&self, images: &[VarImage<C>]) -> Result<Self, AlgebraError> {
        if images.len() != self.nvars() {
            return Err(AlgebraError::VarMismatch(images.len(), self.nvars()));
        }
        let m = images.first().map_or(0, |v| v.mono.nvars());
        let image_of = |e: &Monomial| -> Result<(C, Monomial), AlgebraError> {
            let mut c = C::one();
            let mut mono = Monomial::one(m);
            for (img, &k) in images.iter().zip(e.exps()) {
                if k != 0 {
                    c = c * &img
                        .coeff
                        .pow(k as i64)
                        .ok_or(AlgebraError::PoleUnderSpecialization(format!("{e}")))?;
                    mono = mono.mul(&img.mono.pow(k));
                }
            }
            Ok((c, mono))
        };
        let mut terms = Vec::with_capacity(self.num.len());
        for (e, c) in self.num.terms() {
            let (k, mono) = image_of(e)?;
            terms.push((mono, k * c));
        }
        let mut num = LaurentPolynomial::from_terms(m, terms);
        let mut den = Vec::new();
        for (f, mult) in &self.den {
            let (k, mono) = image_of(f.monomial())?;
            let nb = BinomialFactor::normalize(k, mono, -f.constant().clone())
                .ok_or_else(|| AlgebraError::PoleUnderSpecialization(f.to_string()))?;
            let ui = nb
                .unit
                .inv()
                .expect("nonzero")
                .pow(*mult as i64)
                .expect("nonzero");
            num = num
                .mul_monomial(&nb.mono.inv().pow(*mult as i32))
                .scale(&ui);
            den.extend(nb.factors.into_iter().map(|g| (g, *mult)));
        }
        Ok(Self::from_parts(num, den))
    }

    /// Applies a coefficient map, which must be a ring homomorphism for the
    /// result to be meaningful. `None` from `f` marks a pole.
    pub fn map_coeffs<D: Field>(
        &self,
        f: impl Fn(&C) -> Option<D>,
    ) -> Result<FactorizedRatFunc<D>, AlgebraError> {
        let n = self.nvars();
        let bad = |s: String| AlgebraError::PoleUnderSpecialization(s);
        let mut terms = Vec::with_capacity(self.num.len());
        for (m, c) in self.num.terms() {
            terms.push((m.clone(), f(c).ok_or_else(|| bad(format!("{c}")))?));
        }
        let mut num = LaurentPolynomial::from_terms(n, terms);
        let mut den = Vec::new();
        for (g, mult) in &self.den {
            let c = f(g.constant()).ok_or_else(|| bad(g.to_string()))?;
            let nb = BinomialFactor::normalize(D::one(), g.monomial().clone(), -c)
                .expect("monomial part is nonzero");
            let ui = nb
                .unit
                .inv()
                .expect("nonzero")
                .pow(*mult as i64)
                .expect("nonzero");
            num = num
                .mul_monomial(&nb.mono.inv().pow(*mult as i32))
                .scale(&ui);
            den.extend(nb.factors.into_iter().map(|h| (h, *mult)));
        }
        Ok(FactorizedRatFunc::from_parts(num, den))
    }

    /// Value at `X = point`.
    pub fn eval(&self, point: &[C]) -> Result<C, AlgebraError> {
        if point.len() != self.nvars() {
            return Err(AlgebraError::VarMismatch(point.len(), self.nvars()));
        }
        let pole = || AlgebraError::PoleAtPoint(format!("{point:?}"));
        let mut d = C::one();
        for (f, k) in &self.den {
            let v = f.eval(point).ok_or_else(pole)?;
            d = d * &v.pow(*k as i64).ok_or_else(pole)?;
        }
        let n = self.num.eval(point).ok_or_else(pole)?;
        Ok(n * &d.inv().ok_or_else(pole)?)
    }
}

/// Splits a polynomial into normalized binomials when it is visibly one: a
/// single term or two terms.
fn factor_binomial<C: Field>(
    p: &LaurentPolynomial<C>,
) -> Result<Vec<NormalizedBinomial<C>>, AlgebraError> {
    let n = p.nvars();
    let terms: Vec<_> = p.terms().iter().collect();
    match terms.as_slice() {
        [] => Err(AlgebraError::DivisionByZero),
        [(m, c)] => Ok(vec![NormalizedBinomial {
            unit: (*c).clone(),
            mono: (*m).clone(),
            factors: Vec::new(),
        }]),
        [(m0, c0), (m1, c1)] => {
            // c0 X^m0 + c1 X^m1 = X^m0 (c1 X^{m1-m0} + c0)
            let mut nb = BinomialFactor::normalize((*c1).clone(), m1.div(m0), (*c0).clone())
                .expect("two nonzero terms");
            nb.mono = nb.mono.mul(m0);
            Ok(vec![nb])
        }
        _ => {
            let _ = n;
            Err(AlgebraError::NotFactorizable(p.to_string()))
        }
    }
}

impl<C: Field> PartialEq for FactorizedRatFunc<C> {
    fn eq(&self, o: &Self) -> bool {
        self.equals(o)
    }
}

impl<C: Field> fmt::Display for FactorizedRatFunc<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        let single = self.num.len() == 1;
        if single {
            write!(f, "{} / ", self.num)?;
        } else {
            write!(f, "({}) / ", self.num)?;
        }
        let parts: Vec<String> = self
            .den
            .iter()
            .map(|(g, k)| {
                if *k == 1 {
                    format!("({g})")
                } else {
                    format!("({g})^{k}")
                }
            })
            .collect();
        if parts.len() == 1 {
            f.write_str(&parts[0])
        } else {
            write!(f, "({})", parts.join("*"))
        }
    }
}

impl<C: Field> fmt::Debug for FactorizedRatFunc<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FactorizedRatFunc({self})")
    }
}
