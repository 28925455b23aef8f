//! One-way LaTeX rendering of rational functions, with `u` written as
//! `q^{1/2}` and the variables as powers of `q`: `X_i` as `q^{z_i}` for
//! spectral parameters, or `V` as `q^{-s/2}` for Siegel series.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::monomial::Monomial;
use crate::{ExactScalar, LaurentPoly, RatFunc};

/// `k/2` as a LaTeX exponent fragment.
fn half(k: i64) -> String {
    if k % 2 == 0 {
        (k / 2).to_string()
    } else {
        format!("\\frac{{{k}}}{{2}}")
    }
}

/// How a variable reads as a power of `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variables {
    /// `X_i = q^{z_i}`.
    Spectral,
    /// The single variable `V = q^{-s/2}`.
    HalfS,
}

fn signed(out: &mut String, neg: bool, body: &str) {
    let sign = if neg {
        "-"
    } else if out.is_empty() {
        ""
    } else {
        "+"
    };
    out.push_str(sign);
    out.push_str(body);
}

/// The exponent of `q` in `u^k X^m`, e.g. `z_1-z_2-1` or `-s+1`.
fn exponent(m: &Monomial, k: i64, vars: Variables) -> String {
    let mut out = String::new();
    match vars {
        Variables::Spectral => {
            for (i, &e) in m.exps().iter().enumerate() {
                if e != 0 {
                    let mag = e.unsigned_abs();
                    let coeff = if mag == 1 {
                        String::new()
                    } else {
                        mag.to_string()
                    };
                    signed(&mut out, e < 0, &format!("{coeff}z_{}", i + 1));
                }
            }
        }
        Variables::HalfS => {
            // V^e = q^{-e s/2}
            let e = -(m.exps()[0] as i64);
            if e != 0 {
                let coeff = match half(e.abs()).as_str() {
                    "1" => String::new(),
                    h => h.to_string(),
                };
                signed(&mut out, e < 0, &format!("{coeff}s"));
            }
        }
    }
    if k != 0 {
        signed(&mut out, k < 0, &half(k.abs()));
    }
    out
}

/// `q^{e}`, with `q^{1}` written `q`.
fn q_to(e: &str) -> String {
    if e == "1" {
        "q".to_string()
    } else {
        format!("q^{{{e}}}")
    }
}

fn rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

/// A polynomial `sum c_j u^{low+j}` in `q^{1/2}`, highest power first.
fn u_poly(low: i64, coeffs: &[BigRational]) -> String {
    let mut out = String::new();
    for (j, c) in coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
    {
        let k = low + j as i64;
        let neg = c.is_negative();
        let mag = c.abs();
        let body = if k == 0 {
            rational(&mag)
        } else if mag.is_one() {
            q_to(&half(k))
        } else {
            format!("{} {}", rational(&mag), q_to(&half(k)))
        };
        match (out.is_empty(), neg) {
            (true, true) => out.push_str(&format!("-{body}")),
            (true, false) => out.push_str(&body),
            (false, true) => out.push_str(&format!(" - {body}")),
            (false, false) => out.push_str(&format!(" + {body}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Renders a scalar in `q^{1/2}`.
pub fn scalar_latex(c: &ExactScalar) -> String {
    if let Some((low, cs)) = c.as_laurent() {
        return u_poly(low, &cs);
    }
    format!(
        "\\frac{{{}}}{{{}}}",
        u_poly(0, c.num_coeffs()),
        u_poly(0, c.den_coeffs())
    )
}

/// One term `c X^m`, folding `c = ±q^{k/2}` into the exponent. Returns the
/// sign separately.
fn term(m: &Monomial, c: &ExactScalar, vars: Variables) -> (bool, String) {
    if let Some((r, k)) = c.as_u_monomial() {
        let e = exponent(m, k, vars);
        let power = if e.is_empty() { None } else { Some(q_to(&e)) };
        let mag = r.abs();
        let body = match (mag.is_one(), power) {
            (true, None) => "1".to_string(),
            (true, Some(p)) => p,
            (false, None) => rational(&mag),
            (false, Some(p)) => format!("{} {p}", rational(&mag)),
        };
        return (r.is_negative(), body);
    }
    let e = exponent(m, 0, vars);
    let s = scalar_latex(c);
    let body = if e.is_empty() {
        s
    } else {
        format!("\\left({s}\\right) {}", q_to(&e))
    };
    (false, body)
}

fn poly(p: &LaurentPoly, vars: Variables) -> String {
    let mut out = String::new();
    for (m, c) in p.terms() {
        let (neg, body) = term(m, c, vars);
        match (out.is_empty(), neg) {
            (true, true) => out.push_str(&format!("-{body}")),
            (true, false) => out.push_str(&body),
            (false, true) => out.push_str(&format!(" - {body}")),
            (false, false) => out.push_str(&format!(" + {body}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Renders `f` in the spectral variables `q^{z_i}`.
pub fn emit_latex(f: &RatFunc) -> String {
    emit_latex_in(f, Variables::Spectral)
}

/// Renders `f` as `\frac{num}{den}`, each denominator factor `X^m - c`
/// written as `q^{..} - c`.
pub fn emit_latex_in(f: &RatFunc, vars: Variables) -> String {
    let num = poly(f.numerator(), vars);
    let den = f.denominator();
    if den.is_empty() {
        return num;
    }
    let single = den.len() == 1 && den[0].1 == 1;
    let factors: Vec<String> = den
        .iter()
        .map(|(b, k)| {
            let (neg, c) = term(&Monomial::one(b.nvars()), &-b.constant().clone(), vars);
            let text = format!(
                "{} {} {c}",
                q_to(&exponent(b.monomial(), 0, vars)),
                if neg { "-" } else { "+" }
            );
            match (single, *k) {
                (true, _) => text,
                (false, 1) => format!("\\left({text}\\right)"),
                (false, k) => format!("\\left({text}\\right)^{{{k}}}"),
            }
        })
        .collect();
    format!("\\frac{{{num}}}{{{}}}", factors.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::gamma_product;
    use crate::weyl::{SimpleReflection, WeylElem};

    #[test]
    fn pinned_templates() {
        let id = gamma_product(&WeylElem::identity(2), 0).value;
        assert_eq!(emit_latex(&id), "1");
        let x = RatFunc::term(Monomial::from_exps(&[-2]), ExactScalar::one());
        assert_eq!(emit_latex(&x), "q^{-2z_1}");
        let g = gamma_product(&SimpleReflection::Swap(1).to_elem(2), 0).value;
        assert_eq!(
            emit_latex(&g),
            "\\frac{1 - q^{z_1-z_2-1}}{q^{z_1-z_2} - q^{-1}}"
        );
    }

    #[test]
    fn other_shapes() {
        let h = RatFunc::term(Monomial::from_exps(&[1, 0]), ExactScalar::u_pow(1));
        assert_eq!(emit_latex(&h), "q^{z_1+\\frac{1}{2}}");
        let c = ExactScalar::one() - &ExactScalar::q_pow(-1);
        assert_eq!(scalar_latex(&c), "1 - q^{-1}");
        let t = RatFunc::term(Monomial::from_exps(&[0, 1]), c);
        assert_eq!(emit_latex(&t), "\\left(1 - q^{-1}\\right) q^{z_2}");
        let r = RatFunc::binomial_recip(
            ExactScalar::one(),
            Monomial::from_exps(&[1]),
            -ExactScalar::one(),
        )
        .unwrap()
        .pow(2)
        .unwrap();
        assert_eq!(emit_latex(&r), "\\frac{1}{\\left(q^{z_1} - 1\\right)^{2}}");
        let q = RatFunc::constant(1, ExactScalar::q_pow(1) - &ExactScalar::one());
        assert_eq!(emit_latex(&q), "q - 1");
        let w = RatFunc::term(
            Monomial::from_exps(&[-1]),
            ExactScalar::u_monomial(crate::field::rat(-1, 4), 1),
        );
        assert_eq!(emit_latex(&w), "-\\frac{1}{4} q^{-z_1+\\frac{1}{2}}");
    }

    #[test]
    fn siegel_variable() {
        // 1 - q^{1-s} = 1 - u^2 V^2
        let f = RatFunc::binomial(
            -ExactScalar::q_pow(1),
            Monomial::from_exps(&[2]),
            ExactScalar::one(),
        );
        assert_eq!(emit_latex_in(&f, Variables::HalfS), "1 - q^{-s+1}");
        let v = RatFunc::term(Monomial::from_exps(&[-3]), ExactScalar::one());
        assert_eq!(emit_latex_in(&v, Variables::HalfS), "q^{\\frac{3}{2}s}");
    }
}
