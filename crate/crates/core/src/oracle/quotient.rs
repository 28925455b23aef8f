//! The residue ring `O_{k'} / pi^N` for `k' = Q_p(sqrt eps)` with `p` odd.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;

use crate::error::{Error, Result};

/// Default cap on the number of enumerated cells.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// `p`, the precision `N` and the non-residue `eps`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    p: i64,
    precision: u32,
    epsilon: i64,
    modulus: i64,
    budget: u128,
}

fn is_prime(p: i64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn check_p(p: i64) -> Result<()> {
    if p == 2 || p >= 1 << 31 || !is_prime(p) {
        return Err(Error::InvalidInput(format!(
            "p = {p} is not a supported odd prime"
        )));
    }
    Ok(())
}

/// `b^e mod m` for `m < 2^31`.
pub(crate) fn pow_mod(b: i64, mut e: u64, m: i64) -> i64 {
    let mut acc = 1 % m;
    let mut b = b.rem_euclid(m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Operands are reduced residues and `m < 2^31`, so products fit.
fn mul_mod(a: i64, b: i64, m: i64) -> i64 {
    (a * b).rem_euclid(m)
}

impl OracleConfig {
    /// Uses the smallest positive quadratic non-residue as `eps`.
    pub fn new(p: i64, precision: u32) -> Result<Self> {
        check_p(p)?;
        let eps = (2..p)
            .find(|&e| pow_mod(e, (p as u64 - 1) / 2, p) == p - 1)
            .expect("odd primes have non-residues");
        Self::with_epsilon(p, precision, eps)
    }

    pub fn with_epsilon(p: i64, precision: u32, epsilon: i64) -> Result<Self> {
        check_p(p)?;
        if precision == 0 {
            return Err(Error::InvalidInput("precision N must be at least 1".into()));
        }
        if pow_mod(epsilon, (p as u64 - 1) / 2, p) != p - 1 {
            return Err(Error::InvalidInput(format!(
                "{epsilon} is a square mod {p}"
            )));
        }
        let modulus = (p as i128)
            .checked_pow(precision)
            .filter(|&m| m < 1 << 31)
            .ok_or_else(|| Error::InvalidInput(format!("{p}^{precision} is too large")))?
            as i64;
        Ok(OracleConfig {
            p,
            precision,
            epsilon: epsilon.rem_euclid(modulus),
            modulus,
            budget: DEFAULT_BUDGET,
        })
    }

    /// Replaces the cell budget.
    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    /// The same configuration at precision `N + k`.
    pub fn lift(&self, k: u32) -> Result<Self> {
        Ok(
            Self::with_epsilon(self.p, self.precision + k, self.epsilon % self.p)?
                .with_budget(self.budget),
        )
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn epsilon(&self) -> i64 {
        self.epsilon
    }

    /// `p^N`.
    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn budget(&self) -> u128 {
        self.budget
    }

    /// The residue `r mod p^N` as a ring element.
    pub fn int(&self, r: i64) -> QuotientRingElem {
        QuotientRingElem::new(*self, r, 0)
    }

    /// `sqrt(eps)`.
    pub fn sqrt_eps(&self) -> QuotientRingElem {
        QuotientRingElem::new(*self, 0, 1)
    }

    /// `v_p` of a residue, saturating at `N` for zero.
    pub fn val(&self, r: i64) -> u32 {
        val_pair(r.rem_euclid(self.modulus), 0, self.modulus, self.p)
    }

    /// Inverse of a unit residue.
    pub fn inv_mod(&self, r: i64) -> Option<i64> {
        let g = r.rem_euclid(self.modulus).extended_gcd(&self.modulus);
        (g.gcd == 1).then(|| g.x.rem_euclid(self.modulus))
    }
}

/// `a + b sqrt(eps)` modulo `p^N`.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct QuotientRingElem {
    a: i64,
    b: i64,
    m: i64,
    eps: i64,
    p: i64,
}

impl QuotientRingElem {
    pub fn new(cfg: OracleConfig, a: i64, b: i64) -> Self {
        let m = cfg.modulus;
        QuotientRingElem {
            a: a.rem_euclid(m),
            b: b.rem_euclid(m),
            m,
            eps: cfg.epsilon,
            p: cfg.p,
        }
    }

    /// Same ring, residues already reduced into `[0, m)`.
    fn with(&self, a: i64, b: i64) -> Self {
        QuotientRingElem { a, b, ..*self }
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    /// The Galois conjugate `a - b sqrt(eps)`.
    pub fn conj(&self) -> Self {
        self.with(self.a, (self.m - self.b) % self.m)
    }

    /// `a^2 - eps b^2 mod p^N`.
    pub fn norm(&self) -> i64 {
        let m = self.m;
        (mul_mod(self.a, self.a, m) - mul_mod(self.eps, mul_mod(self.b, self.b, m), m))
            .rem_euclid(m)
    }

    /// `v_pi = min(v_p(a), v_p(b))`, saturating at `N`.
    pub fn val(&self) -> u32 {
        val_pair(self.a, self.b, self.m, self.p)
    }

    pub fn is_unit(&self) -> bool {
        self.val() == 0
    }

    pub fn inv(&self) -> Option<Self> {
        let g = self.norm().extended_gcd(&self.m);
        if g.gcd != 1 {
            return None;
        }
        let ni = g.x.rem_euclid(self.m);
        let c = self.conj();
        Some(self.with(mul_mod(c.a, ni, self.m), mul_mod(c.b, ni, self.m)))
    }
}

/// `min(v_p(a), v_p(b))` for residues modulo `m = p^N`, saturating at `N`.
pub(crate) fn val_pair(a: i64, b: i64, m: i64, p: i64) -> u32 {
    let mut g = a.gcd(&b).gcd(&m);
    let mut k = 0;
    while g > 1 {
        g /= p;
        k += 1;
    }
    k
}

impl Add for QuotientRingElem {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let m = self.m;
        self.with((self.a + o.a) % m, (self.b + o.b) % m)
    }
}

impl Sub for QuotientRingElem {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + -o
    }
}

impl Neg for QuotientRingElem {
    type Output = Self;
    fn neg(self) -> Self {
        let m = self.m;
        self.with((m - self.a) % m, (m - self.b) % m)
    }
}

impl Mul for QuotientRingElem {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let m = self.m;
        let a = (self.a * o.a + self.eps * (self.b * o.b % m)) % m;
        let b = (self.a * o.b + self.b * o.a) % m;
        self.with(a, b)
    }
}

impl fmt::Debug for QuotientRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + {}*sqrt({}) mod {}",
            self.a, self.b, self.eps, self.m
        )
    }
}
