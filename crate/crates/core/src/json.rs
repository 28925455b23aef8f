//! The JSON interchange format for rational functions:
//!
//! ```text
//! { "nvars": n,
//!   "num": [ { "exps": [..], "coeff": { "num_u": [..], "den_u": [..] } }, .. ],
//!   "den": [ { "exps": [..], "coeffA": {..}, "coeffB": {..}, "mult": m }, .. ] }
//! ```
//!
//! A denominator entry stands for `coeffA X^exps + coeffB`. Coefficient
//! arrays are little-endian in `u = q^{1/2}`. Each rational entry is a JSON
//! integer when it is an integer that fits in 64 bits and a string `"a/b"`
//! (or a decimal string for a large integer) otherwise.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::binomial::BinomialFactor;
use crate::error::{AlgebraError, Result};
use crate::laurent::LaurentPolynomial;
use crate::monomial::Monomial;
use crate::scalar::small_int;
use crate::{ExactScalar, RatFunc, SqrtExt, SurdRatFunc};

fn bad(msg: impl Into<String>) -> AlgebraError {
    AlgebraError::Malformed(msg.into())
}

fn rational_to_json(r: &BigRational) -> Value {
    match small_int(r) {
        Some(i) => json!(i),
        None => Value::String(if r.is_integer() {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }),
    }
}

fn rational_from_json(v: &Value) -> Result<BigRational, AlgebraError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| BigRational::from_integer(i.into()))
            .ok_or_else(|| bad(format!("non-integer number {n}"))),
        Value::String(s) => {
            let parse = |t: &str| {
                t.trim()
                    .parse::<BigInt>()
                    .map_err(|_| bad(format!("bad rational {s:?}")))
            };
            match s.split_once('/') {
                Some((a, b)) => {
                    let d = parse(b)?;
                    if d.is_zero() {
                        return Err(bad(format!("zero denominator in {s:?}")));
                    }
                    Ok(BigRational::new(parse(a)?, d))
                }
                None => Ok(BigRational::from_integer(parse(s)?)),
            }
        }
        _ => Err(bad(format!("expected a rational, got {v}"))),
    }
}

pub fn scalar_to_json(c: &ExactScalar) -> Value {
    let arr = |cs: &[BigRational]| Value::Array(cs.iter().map(rational_to_json).collect());
    json!({ "num_u": arr(c.num_coeffs()), "den_u": arr(c.den_coeffs()) })
}

pub fn scalar_from_json(v: &Value) -> Result<ExactScalar, AlgebraError> {
    let arr = |k: &str| -> Result<Vec<BigRational>, AlgebraError> {
        v.get(k)
            .and_then(Value::as_array)
            .ok_or_else(|| bad(format!("missing array {k:?}")))?
            .iter()
            .map(rational_from_json)
            .collect()
    };
    ExactScalar::from_coeffs(arr("num_u")?, arr("den_u")?).ok_or_else(|| bad("zero den_u"))
}

fn exps_to_json(m: &Monomial) -> Value {
    json!(m.exps())
}

fn exps_from_json(v: Option<&Value>, nvars: usize) -> Result<Monomial, AlgebraError> {
    let e: Vec<i32> = v
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing exps"))?
        .iter()
        .map(|x| {
            x.as_i64()
                .and_then(|i| i32::try_from(i).ok())
                .ok_or_else(|| bad(format!("bad exponent {x}")))
        })
        .collect::<Result<_, _>>()?;
    if e.len() != nvars {
        return Err(AlgebraError::VarMismatch(e.len(), nvars));
    }
    Ok(Monomial::from_exps(&e))
}

/// Serializes `f`. The output is deterministic: numerator terms in
/// graded-lex order, denominator factors in their canonical order.
pub fn to_json(f: &RatFunc) -> Value {
    let num: Vec<Value> = f
        .numerator()
        .terms()
        .iter()
        .map(|(m, c)| json!({ "exps": exps_to_json(m), "coeff": scalar_to_json(c) }))
        .collect();
    let den: Vec<Value> = f
        .denominator()
        .iter()
        .map(|(b, k)| {
            let mut v = binomial_to_json(b);
            v["mult"] = json!(k);
            v
        })
        .collect();
    json!({ "nvars": f.nvars(), "num": num, "den": den })
}

/// Parses the interchange format. Denominator entries may carry any nonzero
/// `coeffA`; the result is renormalized.
pub fn from_json(v: &Value) -> Result<RatFunc, AlgebraError> {
    let nvars = v
        .get("nvars")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("missing nvars"))? as usize;
    let list = |k: &str| {
        v.get(k)
            .and_then(Value::as_array)
            .ok_or_else(|| bad(format!("missing array {k:?}")))
    };
    let mut terms = Vec::new();
    for t in list("num")? {
        let m = exps_from_json(t.get("exps"), nvars)?;
        let c = scalar_from_json(t.get("coeff").ok_or_else(|| bad("missing coeff"))?)?;
        terms.push((m, c));
    }
    let mut f = RatFunc::from_poly(LaurentPolynomial::from_terms(nvars, terms));
    for d in list("den")? {
        let m = exps_from_json(d.get("exps"), nvars)?;
        let a = scalar_from_json(d.get("coeffA").ok_or_else(|| bad("missing coeffA"))?)?;
        let b = scalar_from_json(d.get("coeffB").ok_or_else(|| bad("missing coeffB"))?)?;
        let k = d
            .get("mult")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing mult"))?;
        if a.is_zero() {
            return Err(bad("coeffA is zero"));
        }
        let r = RatFunc::binomial_recip(a, m, b)?;
        for _ in 0..k {
            f = f.mul(&r);
        }
    }
    Ok(f)
}

/// `a + b sqrt(p)` as `a + b u`, which is exact once `q = p`.
pub fn lift_surd(x: &SqrtExt) -> ExactScalar {
    ExactScalar::from_rational(x.rational_part().clone())
        + ExactScalar::u_monomial(x.surd_part().clone(), 1)
}

/// Serializes a function over `Q(sqrt p)` by writing `sqrt p` as `u`.
pub fn surd_to_json(f: &SurdRatFunc) -> Value {
    let lifted = f
        .map_coeffs(|c| Some(lift_surd(c)))
        .expect("lifting is a map of fields");
    to_json(&lifted)
}

/// `BinomialFactor` written as `coeffA X^m + coeffB`.
pub fn binomial_to_json(b: &BinomialFactor<ExactScalar>) -> Value {
    json!({
        "exps": exps_to_json(b.monomial()),
        "coeffA": scalar_to_json(&ExactScalar::one()),
        "coeffB": scalar_to_json(&-b.constant().clone()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use crate::gamma::gamma_product;
    use crate::weyl::SimpleReflection;
    use proptest::prelude::*;

    #[test]
    fn gamma_round_trip() {
        let s = SimpleReflection::Swap(1).to_elem(2);
        let g = gamma_product(&s, 0).value;
        let v = to_json(&g);
        assert_eq!(v["nvars"], json!(2));
        assert_eq!(v["den"][0]["exps"], json!([1, -1]));
        assert_eq!(
            v["den"][0]["coeffB"],
            json!({ "num_u": [-1], "den_u": [0, 0, 1] })
        );
        assert!(from_json(&v).unwrap().equals(&g));
        assert_eq!(to_json(&from_json(&v).unwrap()), v);
    }

    #[test]
    fn rational_encoding() {
        assert_eq!(rational_to_json(&rat(-3, 1)), json!(-3));
        assert_eq!(rational_to_json(&rat(3, 2)), json!("3/2"));
        let big = BigRational::from_integer(BigInt::from(10).pow(30));
        let v = rational_to_json(&big);
        assert!(v.is_string());
        assert_eq!(rational_from_json(&v).unwrap(), big);
        assert!(rational_from_json(&json!("1/0")).is_err());
        assert!(rational_from_json(&json!(1.5)).is_err());
    }

    #[test]
    fn malformed_inputs() {
        assert!(from_json(&json!({})).is_err());
        assert!(from_json(&json!({ "nvars": 1, "num": [{ "exps": [1, 2], "coeff": { "num_u": [1], "den_u": [1] } }], "den": [] })).is_err());
        let z = json!({ "num_u": [1], "den_u": [1] });
        let zero = json!({ "num_u": [], "den_u": [1] });
        assert!(from_json(&json!({ "nvars": 1, "num": [], "den": [{ "exps": [1], "coeffA": zero, "coeffB": z, "mult": 1 }] })).is_err());
    }

    #[test]
    fn surds_lift_to_u() {
        let f = SurdRatFunc::constant(1, SqrtExt::new(rat(1, 2), rat(3, 1), 5));
        let v = surd_to_json(&f);
        assert_eq!(
            v["num"][0]["coeff"],
            json!({ "num_u": ["1/2", 3], "den_u": [1] })
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn round_trip(
            terms in prop::collection::vec((-3i32..4, -3i32..4, -5i64..6, -3i64..4), 0..5),
            dens in prop::collection::vec((-2i32..3, -2i32..3, -3i64..3, 1i64..3), 0..3),
        ) {
            let mut f = RatFunc::from_poly(LaurentPolynomial::from_terms(
                2,
                terms.into_iter().map(|(a, b, c, k)| {
                    (Monomial::from_exps(&[a, b]), ExactScalar::u_monomial(rat(c, 1), k))
                }),
            ));
            for (a, b, k, d) in dens {
                if (a, b) == (0, 0) {
                    continue;
                }
                let r = RatFunc::binomial_recip(ExactScalar::one(), Monomial::from_exps(&[a, b]), ExactScalar::q_pow(k) * &ExactScalar::from_int(d)).unwrap();
                f = f.mul(&r);
            }
            let v = to_json(&f);
            let back = from_json(&v).unwrap();
            prop_assert!(back.equals(&f));
            prop_assert_eq!(to_json(&back), v);
        }
    }
}
