//! Monomials in the standard grading and the term orders used to compare them.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An exponent vector, one entry per variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn new(exponents: Vec<u16>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        let mut e = vec![0; nvars];
        e[v] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&a| a as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn mul_var(&self, v: usize) -> Monomial {
        let mut e = self.0.clone();
        e[v] += 1;
        Monomial(e)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> MonomialDisplay<'a> {
        MonomialDisplay { m: self, names }
    }
}

pub struct MonomialDisplay<'a> {
    m: &'a Monomial,
    names: &'a [String],
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &a) in self.m.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.names[i])?;
            if a > 1 {
                write!(f, "^{a}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Grevlex,
    Lex,
}

/// A term order, optionally applied after relabelling the variables:
/// position `k` of the permuted exponent vector is `a[perm[k]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TermOrder {
    pub kind: OrderKind,
    pub perm: Option<Vec<usize>>,
}

impl Default for TermOrder {
    fn default() -> Self {
        TermOrder::grevlex()
    }
}

impl TermOrder {
    pub fn grevlex() -> Self {
        TermOrder { kind: OrderKind::Grevlex, perm: None }
    }

    pub fn lex() -> Self {
        TermOrder { kind: OrderKind::Lex, perm: None }
    }

    pub fn with_perm(kind: OrderKind, perm: Vec<usize>, nvars: usize) -> Result<Self> {
        let mut seen = vec![false; nvars];
        if perm.len() != nvars {
            return Err(Error::Config(format!(
                "permutation has {} entries for {} variables",
                perm.len(),
                nvars
            )));
        }
        for &k in &perm {
            if k >= nvars || seen[k] {
                return Err(Error::Config(format!("{perm:?} is not a permutation")));
            }
            seen[k] = true;
        }
        Ok(TermOrder { kind, perm: Some(perm) })
    }

    #[inline]
    fn exp(&self, m: &Monomial, k: usize) -> u16 {
        match &self.perm {
            Some(p) => m.0[p[k]],
            None => m.0[k],
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let n = a.0.len();
        match self.kind {
            OrderKind::Lex => {
                for k in 0..n {
                    let (x, y) = (self.exp(a, k), self.exp(b, k));
                    if x != y {
                        return x.cmp(&y);
                    }
                }
                Ordering::Equal
            }
            OrderKind::Grevlex => {
                let (da, db) = (a.degree(), b.degree());
                if da != db {
                    return da.cmp(&db);
                }
                for k in (0..n).rev() {
                    let (x, y) = (self.exp(a, k), self.exp(b, k));
                    if x != y {
                        // smaller power of the last variable wins
                        return y.cmp(&x);
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// A sort key whose lexicographic order agrees with `cmp`.
    pub fn key(&self, m: &Monomial) -> Vec<i32> {
        let n = m.0.len();
        match self.kind {
            OrderKind::Lex => (0..n).map(|k| self.exp(m, k) as i32).collect(),
            OrderKind::Grevlex => std::iter::once(m.degree() as i32)
                .chain((0..n).rev().map(|k| -(self.exp(m, k) as i32)))
                .collect(),
        }
    }

    pub fn name(&self) -> String {
        let base = match self.kind {
            OrderKind::Grevlex => "grevlex",
            OrderKind::Lex => "lex",
        };
        match &self.perm {
            Some(p) => {
                format!("{base}[{}]", p.iter().map(|k| (k + 1).to_string()).collect::<Vec<_>>().join(","))
            }
            None => base.to_string(),
        }
    }
}

/// All monomials of degree `d` in `nvars` variables, largest first under grevlex.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    let mut cur = vec![0u16; nvars];
    fill(&mut cur, 0, d, &mut out);
    let order = TermOrder::grevlex();
    out.sort_by(|a, b| order.cmp(b, a));
    out
}

fn fill(cur: &mut Vec<u16>, pos: usize, left: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == cur.len() {
        cur[pos] = left as u16;
        out.push(Monomial(cur.clone()));
        return;
    }
    for a in (0..=left).rev() {
        cur[pos] = a as u16;
        fill(cur, pos + 1, left - a, out);
    }
    cur[pos] = 0;
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(e: &[u16]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn degree_two_in_two_vars() {
        let ms = monomials_of_degree(2, 2);
        assert_eq!(ms, vec![mono(&[2, 0]), mono(&[1, 1]), mono(&[0, 2])]);
    }

    #[test]
    fn degree_zero_is_one() {
        assert_eq!(monomials_of_degree(4, 0), vec![Monomial::one(4)]);
    }

    #[test]
    fn count_matches_stars_and_bars() {
        // C(e+d-1, d) by independent enumeration of all exponent tuples
        for e in 1..=5usize {
            for d in 0..=5u32 {
                let mut brute = 0;
                let total = (d as usize + 1).pow(e as u32);
                for code in 0..total {
                    let mut c = code;
                    let mut s = 0;
                    for _ in 0..e {
                        s += c % (d as usize + 1);
                        c /= d as usize + 1;
                    }
                    if s == d as usize {
                        brute += 1;
                    }
                }
                assert_eq!(monomials_of_degree(e, d).len(), brute);
                assert_eq!(brute as u64, binomial((e as u64) + d as u64 - 1, d as u64));
            }
        }
        assert_eq!(monomials_of_degree(4, 3).len(), 20);
    }

    #[test]
    fn grevlex_and_lex_differ() {
        // x*z^? vs y^2 in three variables: lex puts x*z first, grevlex y^2 first
        let xz = mono(&[1, 0, 1]);
        let yy = mono(&[0, 2, 0]);
        assert_eq!(TermOrder::lex().cmp(&xz, &yy), Ordering::Greater);
        assert_eq!(TermOrder::grevlex().cmp(&xz, &yy), Ordering::Less);
    }

    #[test]
    fn permutation_relabels() {
        let ord = TermOrder::with_perm(OrderKind::Lex, vec![1, 0], 2).unwrap();
        assert_eq!(ord.cmp(&mono(&[0, 1]), &mono(&[1, 0])), Ordering::Greater);
        assert!(TermOrder::with_perm(OrderKind::Lex, vec![0, 0], 2).is_err());
        assert!(TermOrder::with_perm(OrderKind::Lex, vec![0], 2).is_err());
    }

    fn arb_mono() -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u16..4, 4).prop_map(Monomial::new)
    }

    fn arb_order() -> impl Strategy<Value = TermOrder> {
        (
            prop_oneof![Just(OrderKind::Grevlex), Just(OrderKind::Lex)],
            Just(vec![0usize, 1, 2, 3]).prop_shuffle(),
        )
            .prop_map(|(k, p)| TermOrder::with_perm(k, p, 4).unwrap())
    }

    proptest! {
        #[test]
        fn order_is_total_transitive_multiplicative(
            a in arb_mono(), b in arb_mono(), c in arb_mono(), m in arb_mono(), ord in arb_order()
        ) {
            // totality / antisymmetry
            let ab = ord.cmp(&a, &b);
            prop_assert_eq!(ab, ord.cmp(&b, &a).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            // transitivity
            if ab != Ordering::Greater && ord.cmp(&b, &c) != Ordering::Greater {
                prop_assert!(ord.cmp(&a, &c) != Ordering::Greater);
            }
            // compatible with multiplication
            if ab == Ordering::Less {
                prop_assert_eq!(ord.cmp(&m.mul(&a), &m.mul(&b)), Ordering::Less);
            }
            prop_assert_eq!(ord.key(&a).cmp(&ord.key(&b)), ab);
            // 1 is the smallest monomial
            prop_assert!(ord.cmp(&Monomial::one(4), &a) != Ordering::Greater);
        }
    }
}
