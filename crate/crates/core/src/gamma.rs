//! Gamma factors `Gamma_sigma(z)` of the Weyl-group functional equations
//! `omega(z) = Gamma_sigma(z) omega(sigma z)`.

use num_traits::One;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::weyl::{Root, RootKind, SimpleReflection, WeylElem};
use crate::{ExactScalar, RatFunc};

/// `Gamma_sigma` together with the data that produced it.
#[derive(Clone, Debug)]
pub struct GammaFactor {
    pub value: RatFunc,
    pub sigma: WeylElem,
    pub e0: u32,
}

/// The factor attached to a positive root `alpha`, `t = <alpha, z>`:
/// `(1 - q^{t-1}) / (q^t - q^{-1})` for short roots and `|2|^t = X_i^{-2 e0}`
/// for `alpha = 2 e_i`.
pub fn f_alpha(alpha: &Root, e0: u32) -> Result<RatFunc> {
    if !alpha.is_positive() {
        return Err(Error::InvalidInput(format!(
            "{alpha} is not a positive root"
        )));
    }
    let m = alpha.monomial();
    match alpha.kind() {
        RootKind::Long => Ok(RatFunc::term(m.pow(-(e0 as i32)), ExactScalar::one())),
        RootKind::Short => {
            let q1 = ExactScalar::q_pow(-1);
            Ok(RatFunc::binomial_quotient(
                -q1.clone(),
                m.clone(),
                ExactScalar::one(),
                ExactScalar::one(),
                m,
                -q1,
            )?)
        }
    }
}

/// Product of `f_alpha` over the inversion set of `sigma`.
pub fn gamma_product(sigma: &WeylElem, e0: u32) -> GammaFactor {
    let n = sigma.rank();
    let value = sigma
        .inversion_set()
        .iter()
        .map(|a| f_alpha(a, e0).expect("inversion sets hold positive roots"))
        .fold(RatFunc::one(n), |acc, f| acc.mul(&f));
    GammaFactor {
        value,
        sigma: sigma.clone(),
        e0,
    }
}

/// `Gamma` of the product of `word` (last letter acting first), assembled
/// letter by letter with `Gamma_{s2 s1}(z) = Gamma_{s2}(s1 z) Gamma_{s1}(z)`.
/// The word need not be reduced.
pub fn gamma_cocycle(n: usize, word: &[SimpleReflection], e0: u32) -> GammaFactor {
    let mut value = RatFunc::one(n);
    let mut cur = WeylElem::identity(n);
    for g in word.iter().rev() {
        let s = g.to_elem(n);
        let gs = gamma_product(&s, e0).value;
        value = cur.act_on_poly(&gs).mul(&value);
        cur = s.compose(&cur);
    }
    GammaFactor {
        value,
        sigma: cur,
        e0,
    }
}

/// `Gamma_rho` for `rho(z) = (-z_n, ..., -z_1)` in closed form:
/// `|2|^{2(z_1+...+z_n)} prod_{i<j} (1 - q^{z_i+z_j-1})/(q^{z_i+z_j} - q^{-1})`.
pub fn gamma_rho_closed(n: usize, e0: u32) -> RatFunc {
    let q1 = ExactScalar::q_pow(-1);
    let mut acc = RatFunc::term(
        Monomial::from_exps(&vec![-2 * e0 as i32; n]),
        ExactScalar::one(),
    );
    for i in 0..n {
        for j in i + 1..n {
            let m = Root::sum(n, i, j).monomial();
            let f = RatFunc::binomial_quotient(
                -q1.clone(),
                m.clone(),
                ExactScalar::one(),
                ExactScalar::one(),
                m,
                -q1.clone(),
            )
            .expect("nonzero binomial");
            acc = acc.mul(&f);
        }
    }
    acc
}

/// Checks `Gamma_{s2 s1}(z) = Gamma_{s2}(s1 z) Gamma_{s1}(z)` for one pair.
pub fn cocycle_holds(s2: &WeylElem, s1: &WeylElem, e0: u32) -> bool {
    let lhs = gamma_product(&s2.compose(s1), e0).value;
    let rhs = s1
        .act_on_poly(&gamma_product(s2, e0).value)
        .mul(&gamma_product(s1, e0).value);
    lhs.equals(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::enumerate_weyl;

    fn mono(e: &[i32]) -> Monomial {
        Monomial::from_exps(e)
    }

    #[test]
    fn root_factor_examples() {
        assert!(f_alpha(&Root::long(2, 1), 0)
            .unwrap()
            .equals(&RatFunc::one(2)));
        assert!(f_alpha(&Root::long(2, 1), 1)
            .unwrap()
            .equals(&RatFunc::term(mono(&[0, -2]), ExactScalar::one())));
        assert!(f_alpha(&Root::long(2, 1).neg(), 0).is_err());
        // f(t) f(-t) = 1 for a short root
        let a = Root::diff(2, 0, 1);
        let f = f_alpha(&a, 0).unwrap();
        let flipped = SimpleReflection::Swap(1).to_elem(2).act_on_poly(&f);
        assert!(f.mul(&flipped).equals(&RatFunc::one(2)));
    }

    #[test]
    fn simple_gammas() {
        let id = WeylElem::identity(2);
        assert!(gamma_product(&id, 1).value.equals(&RatFunc::one(2)));
        let t = SimpleReflection::Flip.to_elem(2);
        assert!(gamma_product(&t, 1)
            .value
            .equals(&RatFunc::term(mono(&[0, -2]), ExactScalar::one())));
        let s1 = SimpleReflection::Swap(1).to_elem(2);
        assert!(gamma_product(&s1, 0)
            .value
            .equals(&f_alpha(&Root::diff(2, 0, 1), 0).unwrap()));
    }

    #[test]
    fn cocycle_word_examples() {
        assert!(gamma_cocycle(2, &[], 1).value.equals(&RatFunc::one(2)));
        let tt = [SimpleReflection::Flip, SimpleReflection::Flip];
        let g = gamma_cocycle(2, &tt, 1);
        assert!(g.sigma.is_identity());
        assert!(g.value.equals(&RatFunc::one(2)));
        for e0 in [0, 1] {
            let w = WeylElem::rho(2).reduced_word();
            let g = gamma_cocycle(2, &w, e0);
            assert_eq!(g.sigma, WeylElem::rho(2));
            assert!(g.value.equals(&gamma_rho_closed(2, e0)));
        }
    }

    #[test]
    fn rho_closed_small() {
        assert!(gamma_rho_closed(1, 0).equals(&RatFunc::one(1)));
        assert!(gamma_rho_closed(1, 1).equals(&RatFunc::term(mono(&[-2]), ExactScalar::one())));
        for n in 1..=3 {
            for e0 in [0, 1] {
                assert!(gamma_rho_closed(n, e0).equals(&gamma_product(&WeylElem::rho(n), e0).value));
            }
        }
    }

    #[test]
    fn cocycle_all_pairs_rank2() {
        let w = enumerate_weyl(2).unwrap();
        for e0 in [0, 1] {
            for a in &w {
                for b in &w {
                    assert!(cocycle_holds(a, b, e0), "{a} {b} e0={e0}");
                }
            }
        }
    }

    #[test]
    fn reduced_word_independence() {
        // s1 t s1 t = t s1 t s1 = rho for n = 2
        use SimpleReflection::{Flip as T, Swap};
        let w1 = [Swap(1), T, Swap(1), T];
        let w2 = [T, Swap(1), T, Swap(1)];
        assert_eq!(WeylElem::from_word(2, &w1), WeylElem::from_word(2, &w2));
        for e0 in [0, 1] {
            assert!(gamma_cocycle(2, &w1, e0)
                .value
                .equals(&gamma_cocycle(2, &w2, e0).value));
        }
    }

    #[test]
    fn inverse_relation() {
        for s in enumerate_weyl(3).unwrap() {
            let g = gamma_product(&s, 1).value;
            let gi = s.act_on_poly(&gamma_product(&s.inverse(), 1).value);
            assert!(g.mul(&gi).equals(&RatFunc::one(3)), "{s}");
        }
    }
}
