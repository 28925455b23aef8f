//! Exact arithmetic in `Z[zeta_{p^M}]` and the brute-force rank-one Siegel
//! series.

use std::ops::{Add, Mul, Neg};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::quotient::pow_mod;
use crate::error::{Error, Result};
use crate::laurent::LaurentPolynomial;
use crate::monomial::Monomial;
use crate::{SqrtExt, SurdRatFunc};

/// An element of `Z[x] / Phi_{p^M}(x)` in the power basis
/// `1, x, ..., x^{phi(p^M) - 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicInt {
    p: i64,
    m: u32,
    coeffs: Vec<i64>,
}

impl CyclotomicInt {
    pub fn zero(p: i64, m: u32) -> Self {
        assert!(m >= 1, "need a nontrivial root of unity");
        let order = p.pow(m) as usize;
        let deg = order - order / p as usize;
        CyclotomicInt {
            p,
            m,
            coeffs: vec![0; deg],
        }
    }

    pub fn from_int(p: i64, m: u32, c: i64) -> Self {
        let mut z = Self::zero(p, m);
        z.coeffs[0] = c;
        z
    }

    /// `zeta^k` for `zeta = exp(2 pi i / p^M)`.
    pub fn zeta_pow(p: i64, m: u32, k: i64) -> Self {
        let order = p.pow(m);
        let mut full = vec![0; order as usize];
        full[k.rem_euclid(order) as usize] = 1;
        Self::reduce(p, m, full)
    }

    /// `sum_k c_k zeta^{exps_k}`, reduced once at the end.
    pub fn from_exponents(p: i64, m: u32, exps: impl IntoIterator<Item = i64>) -> Self {
        let order = p.pow(m);
        let mut full = vec![0; order as usize];
        for k in exps {
            full[k.rem_euclid(order) as usize] += 1;
        }
        Self::reduce(p, m, full)
    }

    /// Reduces a vector in `Z[x]/(x^{p^M} - 1)` modulo
    /// `Phi_{p^M}(x) = sum_{j<p} x^{j p^{M-1}}`.
    fn reduce(p: i64, m: u32, mut full: Vec<i64>) -> Self {
        let order = full.len();
        let step = order / p as usize;
        let deg = order - step;
        for k in (deg..order).rev() {
            let c = full[k];
            if c != 0 {
                full[k] = 0;
                let base = k - deg;
                for j in 0..p as usize - 1 {
                    full[base + j * step] -= c;
                }
            }
        }
        full.truncate(deg);
        CyclotomicInt { p, m, coeffs: full }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// `Some(c)` when the element is the rational integer `c`.
    pub fn as_integer(&self) -> Option<i64> {
        self.coeffs[1..]
            .iter()
            .all(|&c| c == 0)
            .then_some(self.coeffs[0])
    }

    fn check(&self, o: &Self) {
        assert!((self.p, self.m) == (o.p, o.m), "mixing cyclotomic rings");
    }
}

impl Add for CyclotomicInt {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        self.check(&o);
        for (a, b) in self.coeffs.iter_mut().zip(o.coeffs) {
            *a += b;
        }
        self
    }
}

impl Neg for CyclotomicInt {
    type Output = Self;
    fn neg(mut self) -> Self {
        self.coeffs.iter_mut().for_each(|c| *c = -*c);
        self
    }
}

impl Mul for CyclotomicInt {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.check(&o);
        let order = self.p.pow(self.m) as usize;
        let mut full = vec![0; order];
        for (i, &a) in self.coeffs.iter().enumerate().filter(|(_, a)| **a != 0) {
            for (j, &b) in o.coeffs.iter().enumerate() {
                full[(i + j) % order] += a * b;
            }
        }
        Self::reduce(self.p, self.m, full)
    }
}

/// `sum_{r in pi^{-e} O^x / O} psi(pi^lambda r)` for `k = Q_p` and the
/// standard character `psi(x) = exp(2 pi i {x})`, as an element of
/// `Z[zeta_{p^M}]`.
pub fn shell_sum(p: i64, m: u32, lambda: u32, e: u32) -> CyclotomicInt {
    let order = p.pow(m);
    let pe = p.pow(e);
    // psi(p^lambda a / p^e) = zeta_{p^M}^{a p^{lambda + M - e}}
    let shift = lambda as i64 + m as i64 - e as i64;
    assert!(shift >= 0, "shell e = {e} needs a larger cyclotomic order");
    let mult = if shift >= m as i64 {
        0
    } else {
        pow_mod(p, shift as u64, order)
    };
    CyclotomicInt::from_exponents(
        p,
        m,
        (0..pe).filter(|a| a % p != 0).map(|a| a * mult % order),
    )
}

/// Brute-force `b(pi^lambda; s) = int_k nu(R)^{-s} psi(pi^lambda R) dR` over
/// `k = Q_p` as a polynomial in `V = q^{-s/2}`: the shell `v(R) = -e` has
/// `nu(R)^{-s} = V^{2e}` and contributes its exact character sum. Shells
/// beyond `lambda + 1` vanish; the first of them is computed and checked.
pub fn oracle_siegel_n1(p: i64, lambda: u32) -> Result<SurdRatFunc> {
    if lambda > 3 {
        return Err(Error::InvalidInput(format!(
            "lambda = {lambda} exceeds the cyclotomic budget (lambda <= 3)"
        )));
    }
    super::quotient::OracleConfig::new(p, 1)?;
    let m = lambda + 2;
    let mut terms = vec![(Monomial::from_exps(&[0]), SqrtExt::from_int_in(1, p))];
    for e in 1..=lambda + 2 {
        let s = shell_sum(p, m, lambda, e);
        let c = s.as_integer().ok_or_else(|| {
            Error::Algebra(crate::AlgebraError::Malformed(format!(
                "shell {e} character sum is not rational: {:?}",
                s.coeffs()
            )))
        })?;
        if e == lambda + 2 {
            if c != 0 {
                return Err(Error::Algebra(crate::AlgebraError::Malformed(format!(
                    "shell {e} beyond lambda + 1 sums to {c}"
                ))));
            }
            continue;
        }
        terms.push((
            Monomial::from_exps(&[2 * e as i32]),
            SqrtExt::rational_in(BigRational::from_integer(BigInt::from(c)), p),
        ));
    }
    Ok(SurdRatFunc::from_poly(LaurentPolynomial::from_terms(
        1, terms,
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_unity() {
        let z = CyclotomicInt::zeta_pow(3, 2, 1);
        let mut acc = CyclotomicInt::from_int(3, 2, 1);
        for _ in 0..9 {
            acc = acc * z.clone();
        }
        assert_eq!(acc, CyclotomicInt::from_int(3, 2, 1));
        // 1 + zeta_3 + zeta_3^2 = 0 inside Z[zeta_9]
        let s = CyclotomicInt::from_exponents(3, 2, [0, 3, 6]);
        assert_eq!(s.as_integer(), Some(0));
        let w = CyclotomicInt::zeta_pow(5, 1, 2) + CyclotomicInt::zeta_pow(5, 1, 3);
        assert_eq!(w.as_integer(), None);
        assert_eq!((w.clone() + -w).as_integer(), Some(0));
    }

    #[test]
    fn ramanujan_sums() {
        // c_{p^e}(p^lambda) = phi(p^e) for e <= lambda, -p^lambda at e = lambda+1,
        // 0 beyond
        for p in [3i64, 5] {
            for lambda in 0..=2u32 {
                let m = lambda + 2;
                for e in 1..=lambda + 2 {
                    let s = shell_sum(p, m, lambda, e).as_integer().unwrap();
                    let expect = if e <= lambda {
                        p.pow(e) - p.pow(e - 1)
                    } else if e == lambda + 1 {
                        -p.pow(lambda)
                    } else {
                        0
                    };
                    assert_eq!(s, expect, "p={p} lambda={lambda} e={e}");
                }
            }
        }
    }

    #[test]
    fn siegel_oracle_small() {
        let one = |c: i64| SqrtExt::from_int_in(c, 3);
        let b0 = oracle_siegel_n1(3, 0).unwrap();
        let expect = LaurentPolynomial::from_terms(
            1,
            [
                (Monomial::from_exps(&[0]), one(1)),
                (Monomial::from_exps(&[2]), one(-1)),
            ],
        );
        assert!(b0.equals(&SurdRatFunc::from_poly(expect)));
        assert!(oracle_siegel_n1(3, 4).is_err());
        assert!(oracle_siegel_n1(4, 1).is_err());
    }
}
