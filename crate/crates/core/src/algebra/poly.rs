//! Sparse multivariate polynomials over a prime field.

use std::collections::BTreeMap;
use std::fmt;

use super::field::PrimeField;
use super::monomial::{Monomial, TermOrder};
use crate::error::{Error, Result};

/// A polynomial with no stored zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: PrimeField,
    nvars: usize,
    terms: BTreeMap<Monomial, u32>,
}

impl Poly {
    pub fn zero(field: PrimeField, nvars: usize) -> Self {
        Poly { field, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: PrimeField, nvars: usize, c: u32) -> Self {
        let mut p = Poly::zero(field, nvars);
        if c % field.p() != 0 {
            p.terms.insert(Monomial::one(nvars), c % field.p());
        }
        p
    }

    pub fn one(field: PrimeField, nvars: usize) -> Self {
        Poly::constant(field, nvars, 1)
    }

    pub fn var(field: PrimeField, nvars: usize, v: usize) -> Self {
        Poly::from_terms(field, nvars, [(Monomial::var(nvars, v), 1)])
    }

    pub fn monomial(field: PrimeField, m: Monomial, c: u32) -> Self {
        let n = m.nvars();
        Poly::from_terms(field, n, [(m, c)])
    }

    /// Builds from (monomial, coefficient) pairs, merging repeats and
    /// dropping zeros.
    pub fn from_terms(
        field: PrimeField,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, u32)>,
    ) -> Self {
        let mut p = Poly::zero(field, nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity mismatch");
            p.add_term(m, c % field.p());
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: u32) {
        use std::collections::btree_map::Entry;
        if c == 0 {
            return;
        }
        let f = self.field;
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                let v = f.add(*e.get(), c);
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u32)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Terms sorted largest first under `order`.
    pub fn sorted_terms(&self, order: &TermOrder) -> Vec<(Monomial, u32)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, &c)| (m.clone(), c)).collect();
        v.sort_by(|a, b| order.cmp(&b.0, &a.0));
        v
    }

    pub fn leading_term(&self, order: &TermOrder) -> Option<(Monomial, u32)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0)).map(|(m, &c)| (m.clone(), c))
    }

    /// The common degree of all terms, if the polynomial is homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let d = it.next()?.degree();
        it.all(|m| m.degree() == d).then_some(d)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    fn check_compatible(&self, other: &Poly) -> Result<()> {
        if self.field != other.field || self.nvars != other.nvars {
            return Err(Error::Config(format!(
                "polynomials live in different rings (F_{}, {} vars) vs (F_{}, {} vars)",
                self.field.p(),
                self.nvars,
                other.field.p(),
                other.nvars
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut r = self.clone();
        for (m, &c) in &other.terms {
            r.add_term(m.clone(), c);
        }
        Ok(r)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        self.scale(self.field.neg(1))
    }

    pub fn scale(&self, c: u32) -> Poly {
        let f = self.field;
        Poly::from_terms(f, self.nvars, self.terms.iter().map(|(m, &a)| (m.clone(), f.mul(a, c))))
    }

    pub fn mul_monomial(&self, m: &Monomial, c: u32) -> Poly {
        let f = self.field;
        Poly::from_terms(f, self.nvars, self.terms.iter().map(|(t, &a)| (t.mul(m), f.mul(a, c))))
    }

    /// Exact product. Fails if the operands live over different rings.
    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let f = self.field;
        let mut r = Poly::zero(f, self.nvars);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                r.add_term(a.mul(b), f.mul(ca, cb));
            }
        }
        Ok(r)
    }

    /// Make the leading coefficient (under `order`) equal to one.
    pub fn monic(&self, order: &TermOrder) -> Poly {
        match self.leading_term(order) {
            Some((_, c)) => self.scale(self.field.inv(c)),
            None => self.clone(),
        }
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { p: self, names, order: TermOrder::grevlex() }
    }

    /// Display with terms listed largest first under `order`.
    pub fn display_ordered<'a>(&'a self, names: &'a [String], order: &TermOrder) -> PolyDisplay<'a> {
        PolyDisplay { p: self, names, order: order.clone() }
    }
}

pub struct PolyDisplay<'a> {
    p: &'a Poly,
    names: &'a [String],
    order: TermOrder,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return write!(f, "0");
        }
        let field = self.p.field;
        for (k, (m, c)) in self.p.sorted_terms(&self.order).into_iter().enumerate() {
            let s = field.signed(c);
            let (neg, a) = (s < 0, s.unsigned_abs());
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a == 1 {
                write!(f, "{}", m.display(self.names))?;
            } else {
                write!(f, "{a}*{}", m.display(self.names))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        ["x", "y", "z", "w"][..n].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn difference_of_squares() {
        let f = PrimeField::default();
        let x = Poly::var(f, 2, 0);
        let y = Poly::var(f, 2, 1);
        let prod = x.add(&y).unwrap().mul(&x.sub(&y).unwrap()).unwrap();
        assert_eq!(prod.display(&names(2)).to_string(), "x^2 - y^2");
        assert_eq!(prod.homogeneous_degree(), Some(2));
    }

    #[test]
    fn identity_is_neutral() {
        let f = PrimeField::default();
        let p = Poly::from_terms(
            f,
            3,
            [(Monomial::new(vec![2, 0, 1]), 5), (Monomial::new(vec![0, 1, 0]), 32002)],
        );
        assert_eq!(p.mul(&Poly::one(f, 3)).unwrap(), p);
        assert_eq!(p.homogeneous_degree(), None);
    }

    #[test]
    fn schoolbook_expansion() {
        // (x^2 - z^2)(x*y) in four variables, expanded by hand
        let f = PrimeField::default();
        let a = Poly::from_terms(
            f,
            4,
            [(Monomial::new(vec![2, 0, 0, 0]), 1), (Monomial::new(vec![0, 0, 2, 0]), f.neg(1))],
        );
        let b = Poly::monomial(f, Monomial::new(vec![1, 1, 0, 0]), 1);
        let expect = Poly::from_terms(
            f,
            4,
            [(Monomial::new(vec![3, 1, 0, 0]), 1), (Monomial::new(vec![1, 1, 2, 0]), f.neg(1))],
        );
        assert_eq!(a.mul(&b).unwrap(), expect);
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let f = PrimeField::default();
        let g = PrimeField::new(7).unwrap();
        assert!(matches!(Poly::var(f, 2, 0).mul(&Poly::var(f, 3, 0)), Err(Error::Config(_))));
        assert!(Poly::var(f, 2, 0).mul(&Poly::var(g, 2, 0)).is_err());
    }

    #[test]
    fn cancellation_drops_terms() {
        let f = PrimeField::new(5).unwrap();
        let x = Poly::var(f, 1, 0);
        assert!(x.sub(&x).unwrap().is_zero());
        assert!(x.scale(5).is_zero());
    }
}
