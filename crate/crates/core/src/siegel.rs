//! Hermitian Siegel series identities in the single variable `V = q^{-s/2}`,
//! so `q^{-s} = V^2` and `s -> 2n - s` is `V -> q^{-n} V^{-1}`.

use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::error::{Error, Result};
use crate::gamma::gamma_rho_closed;
use crate::monomial::Monomial;
use crate::ratfunc::VarImage;
use crate::{ExactScalar, LaurentPoly, RatFunc};

/// A rational function of `V = q^{-s/2}` over `Q(q^{1/2})`.
pub type SVarFunc = RatFunc;

fn v(k: i32) -> Monomial {
    Monomial::from_exps(&[k])
}

fn sign(k: i64) -> ExactScalar {
    ExactScalar::from_int(if k.rem_euclid(2) == 0 { 1 } else { -1 })
}

/// `c V^k`.
fn v_term(c: ExactScalar, k: i32) -> SVarFunc {
    RatFunc::term(v(k), c)
}

/// `1 - c V^k`.
fn one_minus(c: ExactScalar, k: i32) -> SVarFunc {
    RatFunc::binomial(-c, v(k), ExactScalar::one())
}

/// `1 / (1 - c V^k)`.
fn recip_one_minus(c: ExactScalar, k: i32) -> SVarFunc {
    RatFunc::binomial_recip(-c, v(k), ExactScalar::one()).expect("nonzero binomial")
}

/// `|2|^{-ns + n^2} = q^{e0 n s - e0 n^2} = q^{-e0 n^2} V^{-2 e0 n}`.
fn two_power(n: usize, e0: u32) -> SVarFunc {
    let (n, e0) = (n as i64, e0 as i64);
    v_term(ExactScalar::q_pow(-e0 * n * n), (-2 * e0 * n) as i32)
}

/// Applies `s -> 2n - s`, i.e. `V -> q^{-n} V^{-1}`.
pub fn reflect_s(f: &SVarFunc, n: usize) -> SVarFunc {
    f.substitute(&[VarImage::new(ExactScalar::q_pow(-(n as i64)), v(-1))])
        .expect("monomial substitution has no poles")
}

/// The argument at which `zeta_n(k'; s')` is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZetaMode {
    AtS,
    AtHalfS,
    AtNMinusHalfS,
}

impl ZetaMode {
    /// `q^{-2s'}` as `c V^k`.
    fn q_minus_two_s(self, n: usize) -> (ExactScalar, i32) {
        match self {
            ZetaMode::AtS => (ExactScalar::one(), 4),
            ZetaMode::AtHalfS => (ExactScalar::one(), 2),
            ZetaMode::AtNMinusHalfS => (ExactScalar::q_pow(-2 * n as i64), -2),
        }
    }
}

impl FromStr for ZetaMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "at-s" => Ok(ZetaMode::AtS),
            "at-half-s" => Ok(ZetaMode::AtHalfS),
            "at-n-minus-half-s" => Ok(ZetaMode::AtNMinusHalfS),
            _ => Err(Error::InvalidInput(format!("unknown zeta mode {s:?}"))),
        }
    }
}

/// Parameters of a diagonal `T = Diag(pi^{lambda_1}, ..., pi^{lambda_n})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiegelParams {
    lambda: Vec<i64>,
    e0: u32,
}

impl SiegelParams {
    pub fn new(lambda: Vec<i64>, e0: u32) -> Result<Self> {
        if lambda.is_empty() {
            return Err(Error::InvalidInput("lambda must be nonempty".into()));
        }
        if let Some(l) = lambda.iter().find(|&&l| l < 0) {
            return Err(Error::InvalidInput(format!("lambda entry {l} is negative")));
        }
        Ok(SiegelParams { lambda, e0 })
    }

    pub fn n(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda(&self) -> &[i64] {
        &self.lambda
    }

    pub fn e0(&self) -> u32 {
        self.e0
    }
}

/// An identity `lhs = rhs` between two computed values.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub label: String,
    pub lhs: SVarFunc,
    pub rhs: SVarFunc,
}

impl IdentityCheck {
    pub fn new(label: impl Into<String>, lhs: SVarFunc, rhs: SVarFunc) -> Self {
        IdentityCheck {
            label: label.into(),
            lhs,
            rhs,
        }
    }

    pub fn holds(&self) -> bool {
        self.lhs.equals(&self.rhs)
    }
}

impl fmt::Display for IdentityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.holds() { "holds" } else { "FAILS" };
        write!(
            f,
            "{} {verdict}: lhs = {}, rhs = {}",
            self.label, self.lhs, self.rhs
        )
    }
}

/// `zeta_n(k'; s') = prod_{i=1}^n (1 - q^{-2i}) / (1 - q^{-2(s' - i + 1)})`.
pub fn zeta_matrix(n: usize, mode: ZetaMode) -> Result<SVarFunc> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let (c, k) = mode.q_minus_two_s(n);
    let mut acc = RatFunc::one(1);
    for i in 1..=n as i64 {
        let num = ExactScalar::one() - &ExactScalar::q_pow(-2 * i);
        let den = recip_one_minus(c.clone() * &ExactScalar::q_pow(2 * (i - 1)), k);
        acc = acc.mul(&den).scale(&num);
    }
    Ok(acc)
}

/// `zeta_n(k'; n - s/2) / zeta_n(k'; s/2)` against
/// `(-1)^n q^{-ns + n(n+1)} (1 - q^{-s}) / (1 - q^{-s+2n})`.
pub fn zeta_ratio(n: usize) -> Result<IdentityCheck> {
    let lhs = zeta_matrix(n, ZetaMode::AtNMinusHalfS)?.div(&zeta_matrix(n, ZetaMode::AtHalfS)?)?;
    let ni = n as i64;
    let rhs = v_term(sign(ni) * &ExactScalar::q_pow(ni * (ni + 1)), 2 * n as i32)
        .mul(&one_minus(ExactScalar::one(), 2))
        .mul(&recip_one_minus(ExactScalar::q_pow(2 * ni), 2));
    Ok(IdentityCheck::new(format!("zeta ratio n={n}"), lhs, rhs))
}

/// The substitution `X_i -> (-1)^{n-i+1} q^{i-1/2} V`, realizing
/// `q^{z*_i} = (-1)^{n-i+1} q^{i-1/2} q^{-s/2}`.
pub fn z_star(n: usize) -> Vec<VarImage<ExactScalar>> {
    (1..=n as i64)
        .map(|i| {
            VarImage::new(
                sign(n as i64 - i + 1) * &ExactScalar::u_pow(2 * i - 1),
                v(1),
            )
        })
        .collect()
}

/// The printed closed form
/// `F_n(s) = |2|^{-ns+n^2} prod_{i<j} (1 - (-1)^{i+j} q^{-s+i+j-2}) / ((-1)^{i+j} q^{-s+i+j-1} - q^{-1})`.
pub fn f_n_closed(n: usize, e0: u32) -> SVarFunc {
    let q1 = ExactScalar::q_pow(-1);
    let mut acc = two_power(n, e0);
    for i in 1..=n as i64 {
        for j in i + 1..=n as i64 {
            let sg = sign(i + j);
            let f = RatFunc::binomial_quotient(
                -(sg.clone() * &ExactScalar::q_pow(i + j - 2)),
                v(2),
                ExactScalar::one(),
                sg * &ExactScalar::q_pow(i + j - 1),
                v(2),
                -q1.clone(),
            )
            .expect("nonzero binomial");
            acc = acc.mul(&f);
        }
    }
    acc
}

/// `F_n(s) = Gamma_rho(z*)` computed by substitution, against the closed form.
pub fn f_n_from_gamma_rho(n: usize, e0: u32) -> Result<IdentityCheck> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let lhs = gamma_rho_closed(n, e0).substitute(&z_star(n))?;
    Ok(IdentityCheck::new(
        format!("F_n = Gamma_rho(z*) n={n} e0={e0}"),
        lhs,
        f_n_closed(n, e0),
    ))
}

/// `|2|^{-ns+n^2} prod_{i=0}^{n-1} (1 - (-1)^i q^{-s+i}) / (1 - (-1)^i q^{-(2n-s)+i})`.
fn chain_closed(n: usize, e0: u32) -> SVarFunc {
    let mut acc = two_power(n, e0);
    for i in 0..n as i64 {
        let sg = sign(i);
        acc = acc
            .mul(&one_minus(sg.clone() * &ExactScalar::q_pow(i), 2))
            .mul(&recip_one_minus(
                sg * &ExactScalar::q_pow(i - 2 * n as i64),
                -2,
            ));
    }
    acc
}

/// The final simplification of the functional-equation proof:
/// `F_n(s) * zeta ratio` with both factors computed, against the closed
/// product.
pub fn chain_identity(n: usize, e0: u32) -> Result<IdentityCheck> {
    let f = gamma_rho_closed(n, e0).substitute(&z_star(n))?;
    let ratio = zeta_ratio(n)?.lhs;
    Ok(IdentityCheck::new(
        format!("F_n * zeta ratio n={n} e0={e0}"),
        f.mul(&ratio),
        chain_closed(n, e0),
    ))
}

/// The rank-one Siegel series `b(pi^lambda; s)` as the shell sum
/// `1 + (1 - q^{-1}) sum_{e=1}^{lambda} q^{e(1-s)} - q^{lambda - (lambda+1)s}`.
pub fn siegel_b_n1(lambda: i64) -> Result<SVarFunc> {
    if lambda < 0 {
        return Err(Error::InvalidInput(format!(
            "lambda = {lambda} is negative"
        )));
    }
    let c = ExactScalar::one() - &ExactScalar::q_pow(-1);
    let mut terms = vec![(v(0), ExactScalar::one())];
    for e in 1..=lambda {
        terms.push((v(2 * e as i32), c.clone() * &ExactScalar::q_pow(e)));
    }
    terms.push((v(2 * (lambda as i32 + 1)), -ExactScalar::q_pow(lambda)));
    Ok(RatFunc::from_poly(LaurentPoly::from_terms(1, terms)))
}

/// The functional-equation multiplier
/// `chi(det T)^{n-1} |det(T/2)|^{s-n} prod_{i=0}^{n-1} (1 - (-1)^i q^{-s+i}) / (1 - (-1)^i q^{-(2n-s)+i})`
/// with `chi(det T)^{n-1} = (-1)^{(n-1) sum lambda}` and
/// `|det(T/2)|^{s-n} = q^{-(sum lambda + n e0)(s-n)}`.
pub fn fe_factor(params: &SiegelParams) -> SVarFunc {
    let n = params.n() as i64;
    let total: i64 = params.lambda().iter().sum();
    let a = total + n * params.e0() as i64;
    let mut acc = v_term(
        sign((n - 1) * total) * &ExactScalar::q_pow(a * n),
        (2 * a) as i32,
    );
    for i in 0..n {
        let sg = sign(i);
        acc = acc
            .mul(&one_minus(sg.clone() * &ExactScalar::q_pow(i), 2))
            .mul(&recip_one_minus(sg * &ExactScalar::q_pow(i - 2 * n), -2));
    }
    acc
}

/// `fe_factor(s) * fe_factor(2n - s) = 1`.
pub fn fe_involution(params: &SiegelParams) -> IdentityCheck {
    let f = fe_factor(params);
    let lhs = f.mul(&reflect_s(&f, params.n()));
    IdentityCheck::new(
        format!(
            "fe involution lambda={:?} e0={}",
            params.lambda(),
            params.e0()
        ),
        lhs,
        RatFunc::one(1),
    )
}

/// The rank-one functional equation
/// `b(s) / (1 - q^{-s}) = |T/2|^{s-1} b(2-s) / (1 - q^{-(2-s)})`, checked in
/// the equivalent form `b(s) = fe_factor(s) b(2-s)`.
pub fn verify_thm44_n1(lambda: i64, e0: u32) -> Result<IdentityCheck> {
    let b = siegel_b_n1(lambda)?;
    let fe = fe_factor(&SiegelParams::new(vec![lambda], e0)?);
    let rhs = fe.mul(&reflect_s(&b, 1));
    Ok(IdentityCheck::new(
        format!("b(s) = FE * b(2-s) lambda={lambda} e0={e0}"),
        b,
        rhs,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use crate::SqrtExt;

    fn q(k: i64) -> ExactScalar {
        ExactScalar::q_pow(k)
    }

    #[test]
    fn zeta_examples() {
        let at_s = zeta_matrix(1, ZetaMode::AtS).unwrap();
        let expect = recip_one_minus(ExactScalar::one(), 4).scale(&(ExactScalar::one() - &q(-2)));
        assert!(at_s.equals(&expect));
        let half = zeta_matrix(1, ZetaMode::AtHalfS).unwrap();
        let expect = recip_one_minus(ExactScalar::one(), 2).scale(&(ExactScalar::one() - &q(-2)));
        assert!(half.equals(&expect));
        assert!(zeta_matrix(0, ZetaMode::AtS).is_err());
        assert_eq!("at-half-s".parse::<ZetaMode>().unwrap(), ZetaMode::AtHalfS);
    }

    #[test]
    fn zeta_ratio_closed_forms() {
        for n in 1..=4 {
            let c = zeta_ratio(n).unwrap();
            assert!(c.holds(), "{c}");
        }
        // n = 1 at q = 3, q^{-s} = 1/9: -9 (8/9) / (1 - 9) = 1
        // q = 3, s = 2 (V = 1/3) is a pole: 1 - q^{-s+2} = 0
        let r = zeta_ratio(1).unwrap().lhs;
        let rq = r.map_coeffs(|c| c.specialize(3)).unwrap();
        assert!(rq.eval(&[SqrtExt::rational_in(rat(1, 3), 3)]).is_err());
        // s = 4 (V = 1/9): -(1/9)(80/81)/(1 - 1/9) = -10/81
        let val = rq.eval(&[SqrtExt::rational_in(rat(1, 9), 3)]).unwrap();
        assert_eq!(val, SqrtExt::rational_in(rat(-10, 81), 3));
    }

    #[test]
    fn f_n_examples() {
        // n = 1: |2|^{-s+1}
        assert!(f_n_closed(1, 0).equals(&RatFunc::one(1)));
        assert!(f_n_closed(1, 1).equals(&v_term(q(-1), -2)));
        // n = 2, e0 = 0: (1 + q^{-s+1}) / (-q^{-s+2} - q^{-1})
        let expect =
            RatFunc::binomial_quotient(q(1), v(2), ExactScalar::one(), -q(2), v(2), -q(-1))
                .unwrap();
        assert!(f_n_closed(2, 0).equals(&expect));
        for n in 1..=4 {
            for e0 in [0, 1] {
                let c = f_n_from_gamma_rho(n, e0).unwrap();
                assert!(c.holds(), "{c}");
            }
        }
    }

    #[test]
    fn chain_holds() {
        for n in 1..=4 {
            for e0 in [0, 1] {
                let c = chain_identity(n, e0).unwrap();
                assert!(c.holds(), "{c}");
            }
        }
    }

    #[test]
    fn siegel_n1_examples() {
        let b0 = siegel_b_n1(0).unwrap();
        assert!(b0.equals(&one_minus(ExactScalar::one(), 2)));
        let b1 = siegel_b_n1(1).unwrap();
        let expect = LaurentPoly::from_terms(
            1,
            [
                (v(0), ExactScalar::one()),
                (v(2), (ExactScalar::one() - &q(-1)) * &q(1)),
                (v(4), -q(1)),
            ],
        );
        assert!(b1.equals(&RatFunc::from_poly(expect)));
        // constant term in V is the measure of O_k
        for l in 0..5 {
            let b = siegel_b_n1(l).unwrap();
            assert_eq!(b.as_poly().unwrap().coeff(&v(0)), ExactScalar::one());
        }
        assert!(siegel_b_n1(-1).is_err());
    }

    #[test]
    fn rank_one_functional_equation() {
        for l in 0..=4 {
            let c = verify_thm44_n1(l, 0).unwrap();
            assert!(c.holds(), "{c}");
        }
        // the shell sum does not see |2|, so the e0 = 1 multiplier is off by
        // exactly q^{1-s} = |2|^{-(s-1)}
        for l in 0..=4 {
            let c = verify_thm44_n1(l, 1).unwrap();
            assert!(!c.holds());
            assert!(c.lhs.mul(&v_term(q(1), 2)).equals(&c.rhs), "{c}");
        }
    }

    #[test]
    fn fe_factor_examples() {
        let p = SiegelParams::new(vec![2], 1).unwrap();
        let expect = v_term(q(3), 6)
            .mul(&one_minus(ExactScalar::one(), 2))
            .mul(&recip_one_minus(q(-2), -2));
        assert!(fe_factor(&p).equals(&expect));
        let p = SiegelParams::new(vec![0, 0], 0).unwrap();
        let expect = one_minus(ExactScalar::one(), 2)
            .mul(&one_minus(-q(1), 2))
            .mul(&recip_one_minus(q(-4), -2))
            .mul(&recip_one_minus(-q(-3), -2));
        assert!(fe_factor(&p).equals(&expect));
        assert!(SiegelParams::new(vec![1, -1], 0).is_err());
    }

    #[test]
    fn fe_involution_small() {
        for n in 1..=3usize {
            for e0 in [0, 1] {
                for lam in [vec![0; n], vec![3; n], (0..n as i64).rev().collect()] {
                    let c = fe_involution(&SiegelParams::new(lam, e0).unwrap());
                    assert!(c.holds(), "{c}");
                }
            }
        }
    }

    #[test]
    fn reflect_is_involution() {
        let b = siegel_b_n1(3).unwrap();
        for n in 1..=3 {
            assert!(reflect_s(&reflect_s(&b, n), n).equals(&b));
        }
    }
}
