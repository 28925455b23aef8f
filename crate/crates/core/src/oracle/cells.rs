//! Haar-weighted enumeration of `K_1 = K_{1,1} u K_{1,2}` modulo `pi^N` and
//! the brute-force rank-one spherical function.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::quotient::{val_pair, OracleConfig, QuotientRingElem};
use super::sqrt_p_pow;
use crate::error::{Error, Result};
use crate::laurent::LaurentPolynomial;
use crate::monomial::Monomial;
use crate::{SqrtExt, SurdRatFunc};

/// The two pieces of `K_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum K1Part {
    /// `[[a, a v/sqrt(eps)], [a*^{-1} u sqrt(eps), a*^{-1}(1 + uv)]]`.
    K11,
    /// `[[a pi u sqrt(eps), a(1 + pi uv)], [a*^{-1}, a*^{-1} v/sqrt(eps)]]`.
    K12,
}

/// One cell `(alpha, u, v)` of the parametrization, with `u, v` residues
/// modulo `p^N` and `alpha` a unit modulo `pi`.
#[derive(Clone, Copy, Debug)]
pub struct Cell {
    pub part: K1Part,
    pub alpha: QuotientRingElem,
    alpha_star_inv: QuotientRingElem,
    pub u: i64,
    pub v: i64,
}

impl Cell {
    /// The group element as a matrix over `O_{k'} / pi^N`.
    pub fn matrix(&self, cfg: &OracleConfig) -> [[QuotientRingElem; 2]; 2] {
        let (a, ai) = (self.alpha, self.alpha_star_inv);
        let r = cfg.sqrt_eps();
        let r_inv = r * cfg.int(cfg.inv_mod(cfg.epsilon()).expect("eps is a unit"));
        let (u, v) = (cfg.int(self.u), cfg.int(self.v));
        let one = cfg.int(1);
        match self.part {
            K1Part::K11 => [[a, a * v * r_inv], [ai * u * r, ai * (one + u * v)]],
            K1Part::K12 => {
                let pi = cfg.int(cfg.p());
                [
                    [a * pi * u * r, a * (one + pi * u * v)],
                    [ai, ai * v * r_inv],
                ]
            }
        }
    }

    /// `h x`.
    pub fn apply(&self, cfg: &OracleConfig, x: [QuotientRingElem; 2]) -> [QuotientRingElem; 2] {
        let h = self.matrix(cfg);
        [
            h[0][0] * x[0] + h[0][1] * x[1],
            h[1][0] * x[0] + h[1][1] * x[1],
        ]
    }
}

/// The cells of `K_1` at precision `N`, enumerated lazily.
#[derive(Clone, Debug)]
pub struct K1Cells {
    cfg: OracleConfig,
    alphas: Vec<(QuotientRingElem, QuotientRingElem)>,
    grid: u64,
}

impl K1Cells {
    pub fn config(&self) -> &OracleConfig {
        &self.cfg
    }

    /// Cells per part: `(q^2 - 1) p^{2N}`.
    pub fn per_part(&self) -> u64 {
        self.alphas.len() as u64 * self.grid * self.grid
    }

    pub fn count(&self) -> u64 {
        2 * self.per_part()
    }

    pub fn cell(&self, i: u64) -> Cell {
        let per = self.per_part();
        let part = if i < per { K1Part::K11 } else { K1Part::K12 };
        let j = i % per;
        let (ai, rest) = (j / (self.grid * self.grid), j % (self.grid * self.grid));
        let (alpha, alpha_star_inv) = self.alphas[ai as usize];
        Cell {
            part,
            alpha,
            alpha_star_inv,
            u: (rest / self.grid) as i64,
            v: (rest % self.grid) as i64,
        }
    }

    /// The Haar weight of every cell in `part`: the part's volume,
    /// `1/(1+q^{-1})` or `q^{-1}/(1+q^{-1})`, split evenly.
    pub fn weight(&self, part: K1Part) -> BigRational {
        let p = BigInt::from(self.cfg.p());
        let vol = match part {
            K1Part::K11 => BigRational::new(p.clone(), p + 1),
            K1Part::K12 => BigRational::new(BigInt::one(), p + 1),
        };
        vol / BigRational::from_integer(self.per_part().into())
    }

    pub fn par_iter(&self) -> impl ParallelIterator<Item = Cell> + '_ {
        (0..self.count()).into_par_iter().map(|i| self.cell(i))
    }

    /// Counts cells by `(part, key(cell))`, `key` taking small values.
    pub fn histogram<F>(&self, key: F) -> Result<[Vec<u64>; 2]>
    where
        F: Fn(&Cell) -> Result<usize> + Sync,
    {
        self.par_iter()
            .try_fold(
                || [Vec::new(), Vec::new()],
                |mut acc: [Vec<u64>; 2], c| {
                    let k = key(&c)?;
                    let slot = &mut acc[c.part as usize];
                    if slot.len() <= k {
                        slot.resize(k + 1, 0);
                    }
                    slot[k] += 1;
                    Ok::<_, Error>(acc)
                },
            )
            .try_reduce(
                || [Vec::new(), Vec::new()],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        if x.len() < y.len() {
                            x.resize(y.len(), 0);
                        }
                        for (s, t) in x.iter_mut().zip(y) {
                            *s += t;
                        }
                    }
                    Ok(a)
                },
            )
    }

    /// Haar measure of the cells with each key value.
    pub fn masses<F>(&self, key: F) -> Result<Vec<BigRational>>
    where
        F: Fn(&Cell) -> Result<usize> + Sync,
    {
        Ok(self.masses_of(self.histogram(key)?))
    }
}

impl K1Cells {
    /// Histogram of `v_pi((h x)_2)` over all cells by part, computed with a
    /// loop nest over `(alpha, u, v)` instead of per-cell matrices. A
    /// valuation that saturates at `N` is an error.
    pub fn second_coordinate_valuations(&self, x: [QuotientRingElem; 2]) -> Result<[Vec<u64>; 2]> {
        let cfg = &self.cfg;
        let (m, eps, p) = (cfg.modulus(), cfg.epsilon(), cfg.p());
        let eps_inv = cfg.inv_mod(eps).expect("eps is a unit");
        let n = cfg.precision();
        let grid = self.grid as i64;
        let (x0, x1) = (x[0], x[1]);
        // r x0 and r^{-1} x1 with r = sqrt(eps)
        let rx0 = (eps * x0.b() % m, x0.a());
        let rix1 = (x1.b(), eps_inv * x1.a() % m);
        let jobs = 2 * self.alphas.len() as u64 * self.grid;
        let hist = |acc: &mut Vec<u64>, w: (i64, i64), ai: &QuotientRingElem| -> Result<()> {
            let ya = (ai.a() * w.0 + eps * (ai.b() * w.1 % m)) % m;
            let yb = (ai.a() * w.1 + ai.b() * w.0) % m;
            let k = val_pair(ya, yb, m, p);
            if k >= n {
                return Err(Error::InsufficientPrecision {
                    precision: n,
                    required: n + 1,
                });
            }
            acc[k as usize] += 1;
            Ok(())
        };
        (0..jobs)
            .into_par_iter()
            .try_fold(
                || [vec![0u64; n as usize], vec![0u64; n as usize]],
                |mut acc, job| {
                    let part = (job / (jobs / 2)) as usize;
                    let rest = job % (jobs / 2);
                    let ai = self.alphas[(rest / self.grid) as usize].1;
                    let u = (rest % self.grid) as i64;
                    if part == 0 {
                        // y = a*^{-1} (u r x0 + (1 + uv) x1)
                        let ur = (u * rx0.0 % m, u * rx0.1 % m);
                        let mut s = 1 % m;
                        for _ in 0..grid {
                            let w = ((ur.0 + s * x1.a()) % m, (ur.1 + s * x1.b()) % m);
                            hist(&mut acc[0], w, &ai)?;
                            s = (s + u) % m;
                        }
                    } else {
                        // y = a*^{-1} (x0 + v r^{-1} x1)
                        let mut w = (x0.a(), x0.b());
                        for _ in 0..grid {
                            hist(&mut acc[1], w, &ai)?;
                            w = ((w.0 + rix1.0) % m, (w.1 + rix1.1) % m);
                        }
                    }
                    Ok::<_, Error>(acc)
                },
            )
            .try_reduce(
                || [vec![0u64; n as usize], vec![0u64; n as usize]],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        x.iter_mut().zip(y).for_each(|(s, t)| *s += t);
                    }
                    Ok(a)
                },
            )
    }

    /// Haar measure per key from a histogram.
    pub fn masses_of(&self, counts: [Vec<u64>; 2]) -> Vec<BigRational> {
        let len = counts.iter().map(Vec::len).max().unwrap_or(0);
        let mut out = vec![BigRational::zero(); len];
        for (part, slot) in [K1Part::K11, K1Part::K12].into_iter().zip(counts) {
            let w = self.weight(part);
            for (k, n) in slot.into_iter().enumerate() {
                out[k] += &w * BigRational::from_integer(n.into());
            }
        }
        out
    }
}

/// Enumerates `K_1` with `alpha` running over units modulo `pi` and `u, v`
/// over residues modulo `p^N`.
pub fn enumerate_k1_cells(cfg: &OracleConfig) -> Result<K1Cells> {
    let p = cfg.p();
    let grid = cfg.modulus() as u64;
    let required = 2 * (p * p - 1) as u128 * (grid as u128) * (grid as u128);
    if required > cfg.budget() {
        return Err(Error::BudgetExceeded {
            precision: cfg.precision(),
            required,
            budget: cfg.budget(),
        });
    }
    let mut alphas = Vec::with_capacity((p * p - 1) as usize);
    for a in 0..p {
        for b in 0..p {
            if (a, b) != (0, 0) {
                let alpha = QuotientRingElem::new(*cfg, a, b);
                let star_inv = alpha.conj().inv().expect("alpha is a unit");
                alphas.push((alpha, star_inv));
            }
        }
    }
    Ok(K1Cells {
        cfg: *cfg,
        alphas,
        grid,
    })
}

/// Brute-force `omega^{(1)}_T(x_e; s)` for `T = pi^lambda` and odd `p`, as a
/// Laurent polynomial in `X = q^s` over `Q(sqrt p)`:
/// `sum_cells weight * (-1)^val q^{-val (s - 1/2)}` with
/// `val = v_pi(f_1(h x_e))` and `f_1(x) = pi^{-lambda} N(x_2)`.
pub fn oracle_omega_n1(cfg: &OracleConfig, lambda: i64, e: i64) -> Result<SurdRatFunc> {
    if lambda < 0 || 2 * e > lambda {
        return Err(Error::InvalidInput(format!(
            "need 0 <= 2e <= lambda, got lambda={lambda}, e={e}"
        )));
    }
    let d = lambda - 2 * e;
    let required = d as u32 + 2;
    if cfg.precision() < required {
        return Err(Error::InsufficientPrecision {
            precision: cfg.precision(),
            required,
        });
    }
    let cells = enumerate_k1_cells(cfg)?;
    // x_e = pi^e (1, pi^d / 2); the factor pi^e is pulled out of f_1 as pi^{2e}
    let half = cfg.inv_mod(2).expect("p is odd");
    let x = [cfg.int(1), cfg.int(half) * cfg.int(cfg.p().pow(d as u32))];
    let counts = cells.second_coordinate_valuations(x)?;
    let p = cfg.p();
    let mut terms = Vec::new();
    for (vy, mass) in cells.masses_of(counts).into_iter().enumerate() {
        if mass.is_zero() {
            continue;
        }
        let val = 2 * e - lambda + 2 * vy as i64;
        let sign = if val.rem_euclid(2) == 0 { mass } else { -mass };
        let coeff = sqrt_p_pow(p, val) * SqrtExt::rational_in(sign, p);
        terms.push((Monomial::from_exps(&[-val as i32]), coeff));
    }
    Ok(SurdRatFunc::from_poly(LaurentPolynomial::from_terms(
        1, terms,
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use crate::oracle::compare_omega_n1;

    #[test]
    fn haar_masses() {
        let cfg = OracleConfig::new(3, 1).unwrap();
        let cells = enumerate_k1_cells(&cfg).unwrap();
        assert_eq!(cells.count(), 2 * 8 * 9);
        let by_part = cells.masses(|c| Ok(c.part as usize)).unwrap();
        assert_eq!(by_part, vec![rat(3, 4), rat(1, 4)]);
        let total = cells.masses(|_| Ok(0)).unwrap();
        assert_eq!(total, vec![rat(1, 1)]);
        assert!(cells.weight(K1Part::K11) > rat(0, 1));
    }

    #[test]
    fn budget_is_enforced() {
        let cfg = OracleConfig::new(3, 4).unwrap().with_budget(1000);
        match enumerate_k1_cells(&cfg) {
            Err(Error::BudgetExceeded {
                precision: 4,
                required,
                ..
            }) => {
                assert_eq!(required, 2 * 8 * 81 * 81)
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cells_preserve_hermitian_form() {
        // x_1^* x_2 + x_1 x_2^* is K_1-invariant
        let cfg = OracleConfig::new(5, 2).unwrap();
        let cells = enumerate_k1_cells(&cfg).unwrap();
        let form = |x: [QuotientRingElem; 2]| x[0].conj() * x[1] + x[0] * x[1].conj();
        let xs = [
            [cfg.int(1), cfg.int(7)],
            [
                QuotientRingElem::new(cfg, 3, 4),
                QuotientRingElem::new(cfg, 11, 2),
            ],
        ];
        for i in (0..cells.count()).step_by(97) {
            let c = cells.cell(i);
            for x in xs {
                assert_eq!(form(c.apply(&cfg, x)), form(x), "{c:?}");
            }
        }
    }

    #[test]
    fn kernel_matches_matrices() {
        for (p, n) in [(3, 2), (5, 2), (3, 3)] {
            let cfg = OracleConfig::new(p, n).unwrap();
            let cells = enumerate_k1_cells(&cfg).unwrap();
            for x in [
                [cfg.int(1), cfg.int(p / 2 + 1)],
                [cfg.int(1), cfg.int(p)],
                [
                    QuotientRingElem::new(cfg, p, 2),
                    QuotientRingElem::new(cfg, 1, p * p),
                ],
            ] {
                let fast = cells.second_coordinate_valuations(x).unwrap();
                let slow = cells
                    .histogram(|c| Ok(c.apply(&cfg, x)[1].val() as usize))
                    .unwrap();
                for (f, s) in fast.iter().zip(&slow) {
                    assert_eq!(f[..s.len()], s[..]);
                    assert!(f[s.len()..].iter().all(|&c| c == 0));
                }
            }
        }
    }

    #[test]
    fn precision_is_checked() {
        let cfg = OracleConfig::new(3, 2).unwrap();
        assert!(matches!(
            oracle_omega_n1(&cfg, 1, 0),
            Err(Error::InsufficientPrecision {
                precision: 2,
                required: 3
            })
        ));
        assert!(oracle_omega_n1(&cfg, 1, 1).is_err());
    }

    #[test]
    fn small_cases_match_closed_form() {
        // lambda = 0 gives 1
        let cfg = OracleConfig::new(3, 2).unwrap();
        let w = oracle_omega_n1(&cfg, 0, 0).unwrap();
        assert!(w.equals(&SurdRatFunc::one(1)));
        let cfg = OracleConfig::new(3, 3).unwrap();
        let c = compare_omega_n1(&cfg, 1, 0).unwrap();
        assert!(c.matches(), "{} vs {}", c.oracle, c.closed);
        let cfg = OracleConfig::new(5, 2).unwrap();
        assert!(compare_omega_n1(&cfg, 2, 1).unwrap().matches());
    }
}
