//! The coefficient field `Q(u)` with `u = q^{1/2}`.
//!
//! An [`ExactScalar`] is a quotient of two polynomials in `u` over the
//! rationals, kept with a monic denominator and coprime numerator. Almost all
//! scalars met in practice are Laurent polynomials in `u`, whose denominators
//! are pure powers `u^k`; those are reduced by stripping powers of `u` alone,
//! and the Euclidean gcd is only run for genuine denominators.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::{rational_sqrt, Field};
use crate::surd::SqrtExt;

/// Dense polynomial in `u` with rational coefficients, lowest degree first,
/// without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub(crate) struct UPoly(Vec<BigRational>);

impl UPoly {
    pub(crate) fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        UPoly(c)
    }

    fn zero() -> Self {
        UPoly(Vec::new())
    }

    fn constant(c: BigRational) -> Self {
        UPoly::new(vec![c])
    }

    fn monomial(c: BigRational, k: usize) -> Self {
        if c.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = c;
        UPoly(v)
    }

    pub(crate) fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &BigRational {
        self.0.last().expect("lead of zero polynomial")
    }

    fn low_order(&self) -> usize {
        self.0.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    fn is_monomial(&self) -> bool {
        !self.is_zero() && self.low_order() == self.deg()
    }

    fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return UPoly::zero();
        }
        UPoly(self.0.iter().map(|x| x * c).collect())
    }

    fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut v = vec![BigRational::zero(); k];
        v.extend(self.0.iter().cloned());
        UPoly(v)
    }

    fn shift_down(&self, k: usize) -> Self {
        UPoly(self.0[k.min(self.0.len())..].to_vec())
    }

    fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i);
            let b = o.0.get(i);
            v.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        UPoly::new(v)
    }

    fn neg(&self) -> Self {
        UPoly(self.0.iter().map(|c| -c).collect())
    }

    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        UPoly::new(v)
    }

    fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.0.clone();
        let dd = d.deg();
        let lead_inv = d.lead().recip();
        if self.is_zero() || self.deg() < dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); self.deg() - dd + 1];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.0.iter().enumerate() {
                r[k + j] -= &c * dj;
            }
            q[k] = c;
        }
        (UPoly::new(q), UPoly::new(r))
    }

    fn monic(&self) -> Self {
        let l = self.lead().recip();
        self.scale(&l)
    }

    /// Monic gcd. Coprime pairs, the common case, are settled by one
    /// Euclidean run modulo a large prime; the rest go through the primitive
    /// remainder sequence over the integers.
    fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return if b.is_zero() { b.clone() } else { b.monic() };
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.deg() == 0 || b.deg() == 0 || coprime_mod_p(a, b) {
            return UPoly::constant(BigRational::one());
        }
        let (mut a, mut b) = (a.primitive(), b.primitive());
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// The integer polynomial with coprime coefficients and positive
    /// leading coefficient proportional to `self`.
    fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.0.iter().map(|c| (c * &lcm).to_integer()).collect();
        let mut content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().is_some_and(|c| c.is_negative()) {
            content = -content;
        }
        UPoly(
            ints.into_iter()
                .map(|c| BigRational::from_integer(c / &content))
                .collect(),
        )
    }

    /// `lead(d)^{k} self mod d` with `k = deg self - deg d + 1`, computed
    /// without fractions for integer inputs.
    fn pseudo_rem(&self, d: &Self) -> Self {
        let mut r = self.0.clone();
        let dd = d.deg();
        let l = d.lead();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let c = r[top].clone();
            for x in r.iter_mut() {
                *x *= l;
            }
            let shift = top - dd;
            for (j, dj) in d.0.iter().enumerate() {
                r[shift + j] -= &c * dj;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        UPoly::new(r)
    }

    fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    fn cmp_repr(&self, o: &Self) -> Ordering {
        self.0.len().cmp(&o.0.len()).then_with(|| {
            for (a, b) in self.0.iter().zip(&o.0).rev() {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    other => return other,
                }
            }
            Ordering::Equal
        })
    }
}

const MOD_P: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MOD_P as u128) as u64
}

fn inv_mod(a: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a, MOD_P - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        e >>= 1;
    }
    acc
}

fn reduce_mod(c: &BigRational) -> Option<u64> {
    let p = BigInt::from(MOD_P);
    let n = c.numer().mod_floor(&p).to_u64()?;
    let d = c.denom().mod_floor(&p).to_u64()?;
    (d != 0).then(|| mul_mod(n, inv_mod(d)))
}

/// `true` only when `gcd(a, b) = 1` is certain: the images modulo a prime
/// keep their degrees and have a constant gcd.
fn coprime_mod_p(a: &UPoly, b: &UPoly) -> bool {
    let image = |x: &UPoly| -> Option<Vec<u64>> {
        let v: Vec<u64> = x.0.iter().map(reduce_mod).collect::<Option<_>>()?;
        (*v.last()? != 0).then_some(v)
    };
    let (Some(mut x), Some(mut y)) = (image(a), image(b)) else {
        return false;
    };
    while !y.is_empty() {
        // x mod y
        let li = inv_mod(*y.last().expect("nonempty"));
        while x.len() >= y.len() {
            let c = mul_mod(*x.last().expect("nonempty"), li);
            let shift = x.len() - y.len();
            for (j, &yj) in y.iter().enumerate() {
                x[shift + j] = (x[shift + j] + MOD_P - mul_mod(c, yj)) % MOD_P;
            }
            x.pop();
            while x.last() == Some(&0) {
                x.pop();
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
    x.len() == 1
}

/// An element of `Q(u)`, `u^2 = q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    num: UPoly,
    den: UPoly,
}

impl ExactScalar {
    fn from_parts(num: UPoly, den: UPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return ExactScalar::zero();
        }
        if den.is_monomial() {
            let k = den.deg();
            let g = k.min(num.low_order());
            let c = den.lead().recip();
            return ExactScalar {
                num: num.shift_down(g).scale(&c),
                den: UPoly::monomial(BigRational::one(), k - g),
            };
        }
        let g = UPoly::gcd(&num, &den);
        let (num, den) = if g.deg() > 0 {
            (num.divrem(&g).0, den.divrem(&g).0)
        } else {
            (num, den)
        };
        let c = den.lead().recip();
        ExactScalar {
            num: num.scale(&c),
            den: den.scale(&c),
        }
    }

    /// `num / den` for coprime `num` and `den`.
    fn from_coprime(num: UPoly, den: UPoly) -> Self {
        if den.is_monomial() {
            return Self::from_parts(num, den);
        }
        let c = den.lead().recip();
        ExactScalar {
            num: num.scale(&c),
            den: den.scale(&c),
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        ExactScalar {
            num: UPoly::constant(r),
            den: UPoly::constant(BigRational::one()),
        }
    }

    /// `u^k` for any integer `k`.
    pub fn u_pow(k: i64) -> Self {
        Self::u_monomial(BigRational::one(), k)
    }

    /// `q^k = u^{2k}`.
    pub fn q_pow(k: i64) -> Self {
        Self::u_pow(2 * k)
    }

    /// `c * u^k`.
    pub fn u_monomial(c: BigRational, k: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let one = BigRational::one();
        if k >= 0 {
            ExactScalar {
                num: UPoly::monomial(c, k as usize),
                den: UPoly::constant(one),
            }
        } else {
            ExactScalar {
                num: UPoly::constant(c),
                den: UPoly::monomial(one, k.unsigned_abs() as usize),
            }
        }
    }

    /// The Laurent polynomial `sum_j c_j u^{low + j}`.
    pub fn from_laurent(low: i64, coeffs: &[BigRational]) -> Self {
        let mut acc = Self::zero();
        for (j, c) in coeffs.iter().enumerate() {
            acc = acc + Self::u_monomial(c.clone(), low + j as i64);
        }
        acc
    }

    /// Builds `num(u)/den(u)` from little-endian coefficient lists.
    pub fn from_coeffs(num: Vec<BigRational>, den: Vec<BigRational>) -> Option<Self> {
        let den = UPoly::new(den);
        if den.is_zero() {
            return None;
        }
        Some(Self::from_parts(UPoly::new(num), den))
    }

    /// Little-endian numerator coefficients (the denominator is monic).
    pub fn num_coeffs(&self) -> &[BigRational] {
        self.num.coeffs()
    }

    pub fn den_coeffs(&self) -> &[BigRational] {
        self.den.coeffs()
    }

    /// `Some((c, k))` when the value is `c * u^k`.
    pub fn as_u_monomial(&self) -> Option<(BigRational, i64)> {
        if self.is_zero() || !self.num.is_monomial() || !self.den.is_monomial() {
            return None;
        }
        let k = self.num.deg() as i64 - self.den.deg() as i64;
        Some((self.num.lead().clone(), k))
    }

    /// `Some((low, coeffs))` with value `sum_j coeffs[j] u^{low+j}`, when the
    /// value is a Laurent polynomial in `u`.
    pub fn as_laurent(&self) -> Option<(i64, Vec<BigRational>)> {
        if !self.den.is_monomial() {
            return None;
        }
        if self.is_zero() {
            return Some((0, Vec::new()));
        }
        let lo = self.num.low_order();
        Some((
            lo as i64 - self.den.deg() as i64,
            self.num.coeffs()[lo..].to_vec(),
        ))
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        match self.as_laurent() {
            Some((0, c)) if c.len() == 1 => Some(c[0].clone()),
            _ => None,
        }
    }

    /// Value at `u = u0`, `None` at a pole.
    pub fn eval(&self, u0: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(u0);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(u0) / d)
    }

    /// Value at `u = sqrt(p)` in `Q(sqrt p)`, `None` at a pole.
    pub fn specialize(&self, p: i64) -> Option<SqrtExt> {
        let ev = |poly: &UPoly| {
            let mut acc = SqrtExt::zero_in(p);
            let root = SqrtExt::root(p);
            for c in poly.coeffs().iter().rev() {
                acc = acc * &root + &SqrtExt::rational_in(c.clone(), p);
            }
            acc
        };
        let d = ev(&self.den);
        let inv = d.inv()?;
        Some(ev(&self.num) * &inv)
    }

    /// The field automorphism `u -> 1/u`.
    pub fn invert_u(&self) -> Self {
        let flip = |p: &UPoly| {
            let mut c = p.coeffs().to_vec();
            c.reverse();
            UPoly::new(c)
        };
        let dn = self.num.deg() as i64;
        let dd = self.den.deg() as i64;
        if self.is_zero() {
            return Self::zero();
        }
        // num(1/u) = u^{-dn} rev(num)(u)
        Self::from_parts(flip(&self.num), flip(&self.den)) * Self::u_pow(dd - dn)
    }
}

impl Zero for ExactScalar {
    fn zero() -> Self {
        ExactScalar {
            num: UPoly::zero(),
            den: UPoly::constant(BigRational::one()),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for ExactScalar {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl Add<&ExactScalar> for ExactScalar {
    type Output = ExactScalar;
    fn add(self, o: &ExactScalar) -> ExactScalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self;
        }
        if self.den.is_monomial() && o.den.is_monomial() {
            let (k1, k2) = (self.den.deg(), o.den.deg());
            let k = k1.max(k2);
            let num = self.num.shift_up(k - k1).add(&o.num.shift_up(k - k2));
            return Self::from_parts(num, UPoly::monomial(BigRational::one(), k));
        }
        if self.den == o.den {
            return Self::from_parts(self.num.add(&o.num), self.den);
        }
        // with both sides reduced, only factors of gcd(den, den') can cancel
        let d1 = UPoly::gcd(&self.den, &o.den);
        let a = self.den.divrem(&d1).0;
        let b = o.den.divrem(&d1).0;
        let t = self.num.mul(&b).add(&o.num.mul(&a));
        if t.is_zero() {
            return Self::zero();
        }
        let d2 = UPoly::gcd(&t, &d1);
        Self::from_coprime(t.divrem(&d2).0, a.mul(&o.den.divrem(&d2).0))
    }
}

impl Add for ExactScalar {
    type Output = ExactScalar;
    fn add(self, o: ExactScalar) -> ExactScalar {
        self + &o
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            num: self.num.neg(),
            den: self.den,
        }
    }
}

impl Sub<&ExactScalar> for ExactScalar {
    type Output = ExactScalar;
    fn sub(self, o: &ExactScalar) -> ExactScalar {
        self + &(-o.clone())
    }
}

impl Sub for ExactScalar {
    type Output = ExactScalar;
    fn sub(self, o: ExactScalar) -> ExactScalar {
        self + &(-o)
    }
}

impl Mul<&ExactScalar> for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, o: &ExactScalar) -> ExactScalar {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_monomial() && o.den.is_monomial() {
            return Self::from_parts(self.num.mul(&o.num), self.den.mul(&o.den));
        }
        let g1 = UPoly::gcd(&self.num, &o.den);
        let g2 = UPoly::gcd(&o.num, &self.den);
        let num = self.num.divrem(&g1).0.mul(&o.num.divrem(&g2).0);
        let den = self.den.divrem(&g2).0.mul(&o.den.divrem(&g1).0);
        Self::from_coprime(num, den)
    }
}

impl Mul for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, o: ExactScalar) -> ExactScalar {
        self * &o
    }
}

impl Field for ExactScalar {
    fn from_i64(v: i64) -> Self {
        Self::from_int(v)
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::from_parts(self.den.clone(), self.num.clone()))
    }

    fn sqrt(&self) -> Option<Self> {
        // Recognises c * u^{2k} with c a rational square, which covers every
        // square that arises from binomials with monomial coefficients.
        let (c, k) = self.as_u_monomial()?;
        if k % 2 != 0 {
            return None;
        }
        Some(Self::u_monomial(rational_sqrt(&c)?, k / 2))
    }

    fn repr_cmp(&self, o: &Self) -> Ordering {
        self.den
            .cmp_repr(&o.den)
            .then_with(|| self.num.cmp_repr(&o.num))
    }

    fn pow(&self, k: i64) -> Option<Self> {
        if let Some((c, e)) = self.as_u_monomial() {
            let c = Field::pow(&c, k)?;
            return Some(Self::u_monomial(c, e * k));
        }
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..k.unsigned_abs() {
            acc = acc * &base;
        }
        Some(acc)
    }
}

pub(crate) fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Writes `sum_j c_j var^{low+j}` as text, highest power first.
pub(crate) fn fmt_laurent_in(low: i64, coeffs: &[BigRational], var: &str) -> String {
    let mut out = String::new();
    for (j, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let e = low + j as i64;
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let unit = a.is_one();
        if !unit || e == 0 {
            out.push_str(&fmt_rational(&a));
        }
        if e != 0 {
            if !unit {
                out.push('*');
            }
            out.push_str(var);
            if e != 1 {
                out.push_str(&format!("^{e}"));
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((low, c)) = self.as_laurent() {
            return f.write_str(&fmt_laurent_in(low, &c, "u"));
        }
        write!(
            f,
            "({})/({})",
            fmt_laurent_in(0, self.num.coeffs(), "u"),
            fmt_laurent_in(0, self.den.coeffs(), "u")
        )
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactScalar({self})")
    }
}

/// Small integer view of a rational, used by the renderers.
pub(crate) fn small_int(r: &BigRational) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn q() -> ExactScalar {
        ExactScalar::q_pow(1)
    }

    #[test]
    fn laurent_fast_path_reduces() {
        let a = ExactScalar::u_pow(-3) * &ExactScalar::u_pow(5);
        assert_eq!(a, ExactScalar::u_pow(2));
        assert_eq!(a.den_coeffs().len(), 1);
        let one_minus = ExactScalar::one() - &ExactScalar::q_pow(-1);
        assert_eq!(one_minus.to_string(), "1 - u^-2");
    }

    #[test]
    fn general_denominator_cancels() {
        // (q^2 - 1)/(q - 1) = q + 1
        let a = (q() * &q() - &ExactScalar::one()) * &(q() - &ExactScalar::one()).inv().unwrap();
        assert_eq!(a, q() + &ExactScalar::one());
        assert!(a.as_laurent().is_some());
    }

    #[test]
    fn eval_and_specialize() {
        let x = (ExactScalar::u_pow(1) + &ExactScalar::one())
            * &(ExactScalar::u_pow(2) + &ExactScalar::from_int(3))
                .inv()
                .unwrap();
        assert_eq!(x.eval(&rat(3, 1)), Some(rat(4, 12)));
        let s = ExactScalar::u_pow(3).specialize(5).unwrap();
        assert_eq!(s, SqrtExt::new(rat(0, 1), rat(5, 1), 5));
        let pole = (ExactScalar::q_pow(1) - &ExactScalar::from_int(5))
            .inv()
            .unwrap();
        assert_eq!(pole.specialize(5), None);
    }

    #[test]
    fn sqrt_and_pow() {
        let c = ExactScalar::u_monomial(rat(9, 4), -4);
        assert_eq!(c.sqrt(), Some(ExactScalar::u_monomial(rat(3, 2), -2)));
        assert_eq!(ExactScalar::u_pow(3).sqrt(), None);
        assert_eq!(Field::pow(&q(), -3), Some(ExactScalar::u_pow(-6)));
        let b = q() + &ExactScalar::one();
        assert_eq!(
            Field::pow(&b, 2).unwrap(),
            q() * &q() + &(q() * &ExactScalar::from_int(2)) + &ExactScalar::one()
        );
    }

    #[test]
    fn invert_u_is_involution() {
        let x = (ExactScalar::u_pow(3) - &ExactScalar::from_int(2))
            * &(ExactScalar::u_pow(1) + &ExactScalar::from_int(7))
                .inv()
                .unwrap();
        assert_eq!(x.invert_u().invert_u(), x);
        assert_eq!(ExactScalar::u_pow(5).invert_u(), ExactScalar::u_pow(-5));
    }

    fn arb_scalar() -> impl Strategy<Value = ExactScalar> {
        (
            proptest::collection::vec(-4i64..5, 1..4),
            proptest::collection::vec(-3i64..4, 0..3),
            -4i64..5,
        )
            .prop_map(|(n, d, low)| {
                let num = ExactScalar::from_laurent(
                    low,
                    &n.iter().map(|&c| rat(c, 1)).collect::<Vec<_>>(),
                );
                let mut dc: Vec<_> = d.iter().map(|&c| rat(c, 1)).collect();
                dc.push(rat(1, 1));
                let den = ExactScalar::from_coeffs(dc, vec![rat(1, 1)]).unwrap();
                num * &den.inv().unwrap_or_else(ExactScalar::one)
            })
    }

    /// Plain monic Euclid over the rationals.
    fn reference_gcd(a: &UPoly, b: &UPoly) -> UPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    fn arb_upoly() -> impl Strategy<Value = UPoly> {
        proptest::collection::vec((-5i64..6, 1i64..4), 0..5)
            .prop_map(|c| UPoly::new(c.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn gcd_matches_euclid(f in arb_upoly(), g in arb_upoly(), h in arb_upoly()) {
            let (a, b) = (f.mul(&g), f.mul(&h));
            prop_assert_eq!(UPoly::gcd(&a, &b), reference_gcd(&a, &b));
            prop_assert_eq!(UPoly::gcd(&g, &h), reference_gcd(&g, &h));
        }

        #[test]
        fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!((a.clone() + &b) * &c, a.clone() * &c + &(b.clone() * &c));
            prop_assert_eq!(a.clone() + &b, b.clone() + &a);
            prop_assert_eq!(a.clone() - &a, ExactScalar::zero());
            if let Some(ai) = a.inv() {
                prop_assert_eq!(a.clone() * &ai, ExactScalar::one());
            }
        }

        #[test]
        fn eval_is_homomorphism(a in arb_scalar(), b in arb_scalar(), n in 2i64..7) {
            let u0 = rat(n, 1);
            if let (Some(x), Some(y)) = (a.eval(&u0), b.eval(&u0)) {
                prop_assert_eq!((a.clone() * &b).eval(&u0), Some(&x * &y));
                prop_assert_eq!((a.clone() + &b).eval(&u0), Some(x + y));
            }
        }
    }
}
