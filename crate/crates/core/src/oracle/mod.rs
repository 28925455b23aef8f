//! Brute-force evaluators over `p`-adic residue rings for odd `p`, used as
//! independent checks of the rank-one closed forms.

pub mod cells;
pub mod cyclotomic;
pub mod quotient;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::Result;
use crate::siegel::siegel_b_n1;
use crate::spherical::omega_n1_closed;
use crate::{SqrtExt, SurdRatFunc};

pub use cells::{enumerate_k1_cells, oracle_omega_n1, Cell, K1Cells, K1Part};
pub use cyclotomic::{oracle_siegel_n1, shell_sum, CyclotomicInt};
pub use quotient::{OracleConfig, QuotientRingElem, DEFAULT_BUDGET};

/// `p^{k/2}` in `Q(sqrt p)`.
pub fn sqrt_p_pow(p: i64, k: i64) -> SqrtExt {
    let half = k.div_euclid(2);
    let pp = BigRational::from_integer(BigInt::from(p));
    let r = if half >= 0 {
        num_traits::pow(pp, half as usize)
    } else {
        num_traits::pow(pp.recip(), half.unsigned_abs() as usize)
    };
    if k.rem_euclid(2) == 0 {
        SqrtExt::rational_in(r, p)
    } else {
        SqrtExt::new(BigRational::from_integer(0.into()), r, p)
    }
}

/// The oracle value next to the closed form it must equal.
#[derive(Clone, Debug)]
pub struct OracleComparison {
    pub oracle: SurdRatFunc,
    pub closed: SurdRatFunc,
}

impl OracleComparison {
    pub fn matches(&self) -> bool {
        self.oracle.equals(&self.closed)
    }
}

/// `omega_n1_closed(lambda, e, 0)` at `q = p`, in `X = q^s`.
pub fn omega_n1_closed_at(p: i64, lambda: i64, e: i64) -> Result<SurdRatFunc> {
    Ok(omega_n1_closed(lambda, e, 0)?.map_coeffs(|c| c.specialize(p))?)
}

/// `siegel_b_n1(lambda)` at `q = p`, in `V = q^{-s/2}`.
pub fn siegel_b_n1_at(p: i64, lambda: i64) -> Result<SurdRatFunc> {
    Ok(siegel_b_n1(lambda)?.map_coeffs(|c| c.specialize(p))?)
}

pub fn compare_omega_n1(cfg: &OracleConfig, lambda: i64, e: i64) -> Result<OracleComparison> {
    Ok(OracleComparison {
        oracle: oracle_omega_n1(cfg, lambda, e)?,
        closed: omega_n1_closed_at(cfg.p(), lambda, e)?,
    })
}

pub fn compare_siegel_n1(p: i64, lambda: u32) -> Result<OracleComparison> {
    Ok(OracleComparison {
        oracle: oracle_siegel_n1(p, lambda)?,
        closed: siegel_b_n1_at(p, lambda as i64)?,
    })
}

/// Recomputes the oracle one digit deeper and compares.
pub fn lift_independent(cfg: &OracleConfig, lambda: i64, e: i64) -> Result<bool> {
    let a = oracle_omega_n1(cfg, lambda, e)?;
    let b = oracle_omega_n1(&cfg.lift(1)?, lambda, e)?;
    Ok(a.equals(&b))
}

/// The `e` with `2e <= lambda` and `lambda - 2e <= 2`, i.e. the
/// representatives reachable at precision `N <= 4`.
pub fn admissible_e(lambda: i64) -> Vec<i64> {
    ((lambda - 1).div_euclid(2)..=lambda.div_euclid(2)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_powers() {
        assert_eq!(sqrt_p_pow(3, 2), SqrtExt::from_int_in(3, 3));
        assert_eq!(sqrt_p_pow(3, 1), SqrtExt::root(3));
        let x = sqrt_p_pow(5, -3);
        assert_eq!(x.clone() * sqrt_p_pow(5, 3), SqrtExt::from_int_in(1, 5));
    }

    #[test]
    fn e_ranges() {
        assert_eq!(admissible_e(0), vec![-1, 0]);
        assert_eq!(admissible_e(1), vec![0]);
        assert_eq!(admissible_e(2), vec![0, 1]);
    }

    #[test]
    fn representatives_give_distinct_values() {
        // same lambda, different e: the oracle separates the orbits
        for lambda in [0, 2] {
            let values: Vec<SurdRatFunc> = admissible_e(lambda)
                .into_iter()
                .map(|e| {
                    let cfg = OracleConfig::new(3, (lambda - 2 * e + 2) as u32).unwrap();
                    oracle_omega_n1(&cfg, lambda, e).unwrap()
                })
                .collect();
            assert_eq!(values.len(), 2);
            assert!(!values[0].equals(&values[1]), "lambda={lambda}");
        }
    }
}
