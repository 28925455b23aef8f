//! The root system of type `C_n` and its Weyl group of signed permutations.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::Monomial;
use crate::ratfunc::{FactorizedRatFunc, VarImage};

/// Largest rank accepted by [`enumerate_weyl`].
pub const MAX_ENUMERATE_RANK: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootKind {
    Short,
    Long,
}

/// A root `±e_i ± e_j` (short) or `±2 e_i` (long).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(Vec<i32>);

impl Root {
    pub fn new(v: Vec<i32>) -> Result<Self> {
        let nz: Vec<i32> = v.iter().copied().filter(|&x| x != 0).collect();
        let ok = match nz.as_slice() {
            [a] => a.abs() == 2,
            [a, b] => a.abs() == 1 && b.abs() == 1,
            _ => false,
        };
        if ok {
            Ok(Root(v))
        } else {
            Err(Error::InvalidInput(format!(
                "{v:?} is not a root of type C"
            )))
        }
    }

    /// `e_i - e_j` (0-based).
    pub fn diff(n: usize, i: usize, j: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        v[j] = -1;
        Root(v)
    }

    /// `e_i + e_j` (0-based, `i != j`).
    pub fn sum(n: usize, i: usize, j: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        v[j] = 1;
        Root(v)
    }

    /// `2 e_i` (0-based).
    pub fn long(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 2;
        Root(v)
    }

    pub fn vec(&self) -> &[i32] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn kind(&self) -> RootKind {
        if self.0.iter().any(|x| x.abs() == 2) {
            RootKind::Long
        } else {
            RootKind::Short
        }
    }

    pub fn is_positive(&self) -> bool {
        self.monomial().leading_sign() > 0
    }

    pub fn neg(&self) -> Self {
        Root(self.0.iter().map(|x| -x).collect())
    }

    /// The monomial `X^alpha = q^{<alpha, z>}`.
    pub fn monomial(&self) -> Monomial {
        Monomial::from_exps(&self.0)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let coef = if c.abs() == 2 { "2" } else { "" };
            write!(f, "{sign}{coef}e{}", i + 1)?;
            first = false;
        }
        Ok(())
    }
}

/// The positive roots: `e_i - e_j`, `e_i + e_j` (`i < j`) and `2 e_i`.
pub fn positive_roots(n: usize) -> Vec<Root> {
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in i + 1..n {
            out.push(Root::diff(n, i, j));
            out.push(Root::sum(n, i, j));
        }
    }
    for i in 0..n {
        out.push(Root::long(n, i));
    }
    out
}

/// A simple reflection: `s_i` swaps `z_i, z_{i+1}` (simple root
/// `e_i - e_{i+1}`), `t` negates `z_n` (simple root `2 e_n`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SimpleReflection {
    /// 1-based index `i` with `1 <= i <= n - 1`.
    Swap(usize),
    Flip,
}

impl SimpleReflection {
    pub fn simple_root(&self, n: usize) -> Root {
        match *self {
            SimpleReflection::Swap(i) => Root::diff(n, i - 1, i),
            SimpleReflection::Flip => Root::long(n, n - 1),
        }
    }

    pub fn to_elem(&self, n: usize) -> WeylElem {
        let mut e = WeylElem::identity(n);
        match *self {
            SimpleReflection::Swap(i) => e.perm.swap(i - 1, i),
            SimpleReflection::Flip => e.signs[n - 1] = -1,
        }
        e
    }

    pub fn simple_reflections(n: usize) -> Vec<SimpleReflection> {
        let mut out: Vec<_> = (1..n).map(SimpleReflection::Swap).collect();
        out.push(SimpleReflection::Flip);
        out
    }

    fn check(&self, n: usize) -> Result<()> {
        match *self {
            SimpleReflection::Swap(i) if i == 0 || i >= n => Err(Error::InvalidInput(format!(
                "s{i} is not a simple reflection for n = {n}"
            ))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for SimpleReflection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleReflection::Swap(i) => write!(f, "s{i}"),
            SimpleReflection::Flip => f.write_str("t"),
        }
    }
}

impl FromStr for SimpleReflection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "t" {
            return Ok(SimpleReflection::Flip);
        }
        s.strip_prefix('s')
            .and_then(|r| r.parse::<usize>().ok())
            .filter(|&i| i >= 1)
            .map(SimpleReflection::Swap)
            .ok_or_else(|| Error::InvalidInput(format!("unknown generator {s:?}")))
    }
}

/// Parses a word such as `"s1 s2 t"` (commas also separate) and checks
/// every letter against the rank.
pub fn parse_word(s: &str, n: usize) -> Result<Vec<SimpleReflection>> {
    let word: Vec<SimpleReflection> = s
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect::<Result<_>>()?;
    for g in &word {
        g.check(n)?;
    }
    Ok(word)
}

pub fn format_word(w: &[SimpleReflection]) -> String {
    w.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// A signed permutation acting by `(sigma z)_i = signs_i * z_{perm(i)}`.
///
/// `perm` is stored 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElem {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl WeylElem {
    pub fn identity(n: usize) -> Self {
        WeylElem {
            perm: (0..n).collect(),
            signs: vec![1; n],
        }
    }

    /// From a 1-based permutation and a sign vector.
    pub fn new(perm1: &[usize], signs: &[i8]) -> Result<Self> {
        let n = perm1.len();
        let mut seen = vec![false; n];
        for &p in perm1 {
            if p == 0 || p > n || seen[p - 1] {
                return Err(Error::InvalidInput(format!(
                    "{perm1:?} is not a permutation"
                )));
            }
            seen[p - 1] = true;
        }
        if signs.len() != n || signs.iter().any(|s| s.abs() != 1) {
            return Err(Error::InvalidInput(format!("bad sign vector {signs:?}")));
        }
        Ok(WeylElem {
            perm: perm1.iter().map(|p| p - 1).collect(),
            signs: signs.to_vec(),
        })
    }

    /// The longest element `z -> (-z_n, ..., -z_1)`.
    pub fn rho(n: usize) -> Self {
        WeylElem {
            perm: (0..n).rev().collect(),
            signs: vec![-1; n],
        }
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    /// 0-based permutation.
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rank())
    }

    /// The composite `self ∘ o`, i.e. `z -> self(o(z))`.
    pub fn compose(&self, o: &Self) -> Self {
        let n = self.rank();
        assert_eq!(n, o.rank());
        let mut perm = vec![0; n];
        let mut signs = vec![1; n];
        for i in 0..n {
            let pa = self.perm[i];
            perm[i] = o.perm[pa];
            signs[i] = self.signs[i] * o.signs[pa];
        }
        WeylElem { perm, signs }
    }

    pub fn inverse(&self) -> Self {
        let n = self.rank();
        let mut perm = vec![0; n];
        let mut signs = vec![1; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        WeylElem { perm, signs }
    }

    /// Image of the vector `z`.
    pub fn apply(&self, z: &[i32]) -> Vec<i32> {
        (0..self.rank())
            .map(|i| self.signs[i] as i32 * z[self.perm[i]])
            .collect()
    }

    /// The root `sigma(alpha)`, characterized by
    /// `<sigma(alpha), z> = <alpha, sigma^{-1}(z)>`.
    pub fn act_on_root(&self, alpha: &Root) -> Root {
        Root(self.apply(alpha.vec()))
    }

    /// Positive roots sent to negative roots.
    pub fn inversion_set(&self) -> Vec<Root> {
        positive_roots(self.rank())
            .into_iter()
            .filter(|a| !self.act_on_root(a).is_positive())
            .collect()
    }

    pub fn length(&self) -> usize {
        self.inversion_set().len()
    }

    /// A reduced word `[w_1, ..., w_l]` with `self = w_1 ∘ w_2 ∘ ... ∘ w_l`,
    /// so the last letter acts first. Built by greedily stripping right
    /// descents.
    pub fn reduced_word(&self) -> Vec<SimpleReflection> {
        let n = self.rank();
        let gens = SimpleReflection::simple_reflections(n);
        let mut cur = self.clone();
        let mut word = Vec::new();
        'outer: while !cur.is_identity() {
            for g in &gens {
                if !cur.act_on_root(&g.simple_root(n)).is_positive() {
                    cur = cur.compose(&g.to_elem(n));
                    word.push(*g);
                    continue 'outer;
                }
            }
            unreachable!("a non-identity element has a right descent");
        }
        word.reverse();
        word
    }

    /// Product `w_1 ∘ ... ∘ w_l` of a word.
    pub fn from_word(n: usize, word: &[SimpleReflection]) -> Self {
        word.iter()
            .fold(Self::identity(n), |acc, g| acc.compose(&g.to_elem(n)))
    }

    /// Variable images realizing `f -> f(sigma z)`: the monomial `X^m` goes
    /// to `X^{m'}` with `<m', z> = <m, sigma(z)>`.
    pub fn var_images<C: Field>(&self) -> Vec<VarImage<C>> {
        let n = self.rank();
        (0..n)
            .map(|i| {
                VarImage::new(
                    C::one(),
                    Monomial::var_pow(n, self.perm[i], self.signs[i] as i32),
                )
            })
            .collect()
    }

    /// `f(sigma z)`.
    ///
    /// Note that this is a right action:
    /// `act(s2, act(s1, f)) = act(s1 ∘ s2, f)`.
    pub fn act_on_poly<C: Field>(&self, f: &FactorizedRatFunc<C>) -> FactorizedRatFunc<C> {
        f.substitute(&self.var_images())
            .expect("a signed permutation never sends a binomial to zero")
    }

    /// `<m', z> = <m, sigma(z)>`.
    pub fn act_on_monomial(&self, m: &Monomial) -> Monomial {
        let mut out = vec![0; self.rank()];
        for (i, &e) in m.exps().iter().enumerate() {
            out[self.perm[i]] += self.signs[i] as i32 * e;
        }
        Monomial::from_exps(&out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "perm": self.perm.iter().map(|p| p + 1).collect::<Vec<_>>(),
            "signs": self.signs,
        })
    }
}

impl fmt::Display for WeylElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..self.rank())
            .map(|i| {
                let s = if self.signs[i] < 0 { "-" } else { "" };
                format!("{s}z{}", self.perm[i] + 1)
            })
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// All `2^n n!` elements, identity first, ordered by permutation and then
/// by signs with `+1` before `-1`.
pub fn enumerate_weyl(n: usize) -> Result<Vec<WeylElem>> {
    if n == 0 || n > MAX_ENUMERATE_RANK {
        return Err(Error::InvalidInput(format!(
            "rank {n} outside 1..={MAX_ENUMERATE_RANK}"
        )));
    }
    let mut perms = Vec::new();
    permutations(&mut (0..n).collect(), 0, &mut perms);
    perms.sort();
    let mut out = Vec::with_capacity(perms.len() << n);
    for p in perms {
        for mask in 0..(1u32 << n) {
            // bit n-1-i set means sign -1 at position i, so that +1 sorts first
            let signs = (0..n)
                .map(|i| if mask >> (n - 1 - i) & 1 == 1 { -1 } else { 1 })
                .collect();
            out.push(WeylElem {
                perm: p.clone(),
                signs,
            });
        }
    }
    Ok(out)
}

fn permutations(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, out);
        v.swap(k, i);
    }
}
