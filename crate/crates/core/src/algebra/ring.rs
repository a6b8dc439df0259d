//! Presentations `R = Q/I` and their graded pieces.

use std::collections::HashMap;
use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use super::field::PrimeField;
use super::monomial::{monomials_of_degree, Monomial};
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::exactla::{Echelon, SparseVec};

/// A polynomial ring over `F_p` together with a minimal homogeneous
/// generating set of an ideal contained in `Q_{>=2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSpec {
    field: PrimeField,
    vars: Vec<String>,
    gens: Vec<Poly>,
}

impl RingSpec {
    /// Validates the generators and reduces them to a minimal generating
    /// set, keeping the input order within each degree. Zero generators
    /// are dropped.
    pub fn new(field: PrimeField, vars: Vec<String>, gens: Vec<Poly>) -> Result<Self> {
        let n = vars.len();
        if n == 0 {
            return Err(Error::Config("at least one variable is required".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for v in &vars {
            if !seen.insert(v.as_str()) {
                return Err(Error::Config(format!("variable {v} listed twice")));
            }
        }
        let mut nonzero = Vec::new();
        for (k, f) in gens.into_iter().enumerate() {
            if f.field() != field || f.nvars() != n {
                return Err(Error::Config(format!("generator {} does not live in the ambient ring", k + 1)));
            }
            if f.is_zero() {
                continue;
            }
            match f.homogeneous_degree() {
                None => {
                    return Err(Error::Config(format!(
                        "generator {} ({}) is not homogeneous",
                        k + 1,
                        f.display(&vars)
                    )))
                }
                Some(d) if d < 2 => {
                    return Err(Error::Config(format!(
                        "generator {} ({}) has degree {d}; generators must have degree at least 2",
                        k + 1,
                        f.display(&vars)
                    )))
                }
                Some(_) => nonzero.push(f),
            }
        }
        let gens = minimalize(field, n, nonzero);
        Ok(RingSpec { field, vars, gens })
    }

    /// The polynomial ring itself (`I = 0`).
    pub fn polynomial_ring(field: PrimeField, vars: Vec<String>) -> Result<Self> {
        RingSpec::new(field, vars, Vec::new())
    }

    /// Variables named `x1..xn`.
    pub fn default_vars(n: usize) -> Vec<String> {
        (1..=n).map(|k| format!("x{k}")).collect()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Number of variables; equals the embedding dimension since `I ⊆ Q_{>=2}`.
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    /// Number of minimal generators.
    pub fn g(&self) -> usize {
        self.gens.len()
    }

    pub fn gen_degrees(&self) -> Vec<u32> {
        self.gens.iter().map(|f| f.homogeneous_degree().unwrap()).collect()
    }

    pub fn max_gen_degree(&self) -> u32 {
        self.gen_degrees().into_iter().max().unwrap_or(0)
    }

    pub fn is_quadratic(&self) -> bool {
        self.gen_degrees().iter().all(|&d| d == 2)
    }

    /// Ring file text that parses back to this spec.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "p = {}", self.p());
        let _ = writeln!(s, "vars = {}", self.vars.join(","));
        s.push_str("[ideal]\n");
        for f in &self.gens {
            let _ = writeln!(s, "{}", f.display(&self.vars));
        }
        s
    }

    /// Short content hash of the canonical text form.
    pub fn digest(&self) -> String {
        let h = Sha256::digest(self.to_text().as_bytes());
        hex::encode(&h[..8])
    }

    pub fn graded_basis_q(&self, d: u32) -> Vec<Monomial> {
        monomials_of_degree(self.nvars(), d)
    }

    /// Degree-`d` piece of `R`: a monomial basis of a complement of `I_d`
    /// and the normal-form map `Q_d -> R_d`.
    pub fn graded_basis_r(&self, d: u32) -> GradedPiece {
        GradedRing::new(self, d).pieces.pop().unwrap()
    }

    /// Same variables and prime, ideal generated by `gens`.
    pub fn with_gens(&self, gens: Vec<Poly>) -> Result<Self> {
        RingSpec::new(self.field, self.vars.clone(), gens)
    }
}

/// Coordinates of `f` in the monomial basis `index` of `Q_d`.
fn q_coords(f: &Poly, index: &HashMap<Monomial, usize>) -> SparseVec {
    SparseVec::from_unsorted(f.field(), f.terms().map(|(m, c)| (index[m], c)).collect())
}

fn index_of(basis: &[Monomial]) -> HashMap<Monomial, usize> {
    basis.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect()
}

/// Drops every generator lying in the ideal of the ones kept before it,
/// processing degrees in increasing order.
fn minimalize(field: PrimeField, n: usize, gens: Vec<Poly>) -> Vec<Poly> {
    let mut order: Vec<usize> = (0..gens.len()).collect();
    order.sort_by_key(|&k| gens[k].homogeneous_degree().unwrap());
    let mut kept: Vec<usize> = Vec::new();
    let mut k = 0;
    while k < order.len() {
        let d = gens[order[k]].homogeneous_degree().unwrap();
        let basis = monomials_of_degree(n, d);
        let index = index_of(&basis);
        let mut ech = Echelon::new(field, basis.len());
        for &t in &kept {
            let f = &gens[t];
            let df = f.homogeneous_degree().unwrap();
            for m in monomials_of_degree(n, d - df) {
                ech.insert(&q_coords(&f.mul_monomial(&m, 1), &index));
            }
        }
        while k < order.len() && gens[order[k]].homogeneous_degree().unwrap() == d {
            if ech.insert(&q_coords(&gens[order[k]], &index)) {
                kept.push(order[k]);
            }
            k += 1;
        }
    }
    kept.into_iter().map(|t| gens[t].clone()).collect()
}

/// One graded piece `R_d = Q_d / I_d`.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    degree: u32,
    q_basis: Vec<Monomial>,
    /// standard monomials, largest first under grevlex
    basis: Vec<Monomial>,
    /// normal form of each monomial of `Q_d` in `R_d` coordinates
    nf: Vec<SparseVec>,
    ideal_rank: usize,
    q_index: HashMap<Monomial, usize>,
}

impl GradedPiece {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn q_basis(&self) -> &[Monomial] {
        &self.q_basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `dim I_d`.
    pub fn ideal_rank(&self) -> usize {
        self.ideal_rank
    }

    pub fn q_index(&self, m: &Monomial) -> Option<usize> {
        self.q_index.get(m).copied()
    }

    pub fn nf_monomial(&self, m: &Monomial) -> &SparseVec {
        &self.nf[self.q_index[m]]
    }

    pub fn nf_q_index(&self, k: usize) -> &SparseVec {
        &self.nf[k]
    }

    /// Coordinates in `R_d` of a homogeneous degree-`d` polynomial.
    pub fn normal_form(&self, f: &Poly) -> Result<SparseVec> {
        let field = f.field();
        let mut acc = SparseVec::new();
        for (m, c) in f.terms() {
            let k = self.q_index.get(m).ok_or_else(|| {
                Error::Config(format!(
                    "term of degree {} in a degree-{} normal form",
                    m.degree(),
                    self.degree
                ))
            })?;
            acc = acc.axpy(field, c, &self.nf[*k]);
        }
        Ok(acc)
    }

    /// The polynomial with the given `R_d` coordinates.
    pub fn to_poly(&self, field: PrimeField, nvars: usize, v: &SparseVec) -> Poly {
        Poly::from_terms(field, nvars, v.iter().map(|(k, c)| (self.basis[k].clone(), c)))
    }
}

/// The graded pieces `R_0, ..., R_D` with multiplication tables.
#[derive(Clone, Debug)]
pub struct GradedRing {
    field: PrimeField,
    nvars: usize,
    pieces: Vec<GradedPiece>,
    /// `var_mul[d][k][v]`: normal form of `x_v * basis_d[k]` in `R_{d+1}`
    var_mul: Vec<Vec<Vec<SparseVec>>>,
}

impl GradedRing {
    /// Computes `I_d` for `d <= max_degree` as `x_v * I_{d-1}` plus the
    /// generators of degree `d`, then reads off standard monomials.
    pub fn new(spec: &RingSpec, max_degree: u32) -> Self {
        let field = spec.field();
        let n = spec.nvars();
        let mut pieces: Vec<GradedPiece> = Vec::new();
        let mut prev: Option<Echelon> = None;
        let mut prev_basis: Vec<Monomial> = Vec::new();
        for d in 0..=max_degree {
            let q_basis = monomials_of_degree(n, d);
            let q_index = index_of(&q_basis);
            let mut ech = Echelon::new(field, q_basis.len());
            if let Some(p) = &prev {
                for row in p.rows() {
                    for v in 0..n {
                        let shifted = SparseVec::from_unsorted(
                            field,
                            row.iter().map(|(k, c)| (q_index[&prev_basis[k].mul_var(v)], c)).collect(),
                        );
                        ech.insert(&shifted);
                    }
                }
            }
            for f in spec.gens() {
                if f.homogeneous_degree() == Some(d) {
                    ech.insert(&q_coords(f, &q_index));
                }
            }
            let mut r_of_q = vec![usize::MAX; q_basis.len()];
            let mut basis = Vec::new();
            for (k, m) in q_basis.iter().enumerate() {
                if !ech.is_pivot(k) {
                    r_of_q[k] = basis.len();
                    basis.push(m.clone());
                }
            }
            let nf = (0..q_basis.len())
                .map(|k| {
                    let res = ech.reduce(&SparseVec::unit(k));
                    SparseVec::from_sorted(res.iter().map(|(j, c)| (r_of_q[j], c)).collect())
                })
                .collect();
            pieces.push(GradedPiece {
                degree: d,
                q_basis: q_basis.clone(),
                basis,
                nf,
                ideal_rank: ech.rank(),
                q_index,
            });
            prev = Some(ech);
            prev_basis = q_basis;
        }
        let mut var_mul = Vec::new();
        for d in 0..max_degree as usize {
            let (lo, hi) = (&pieces[d], &pieces[d + 1]);
            var_mul.push(
                lo.basis
                    .iter()
                    .map(|m| (0..n).map(|v| hi.nf_monomial(&m.mul_var(v)).clone()).collect())
                    .collect(),
            );
        }
        GradedRing { field, nvars: n, pieces, var_mul }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn max_degree(&self) -> u32 {
        self.pieces.len() as u32 - 1
    }

    pub fn piece(&self, d: u32) -> &GradedPiece {
        &self.pieces[d as usize]
    }

    /// `dim R_d`, zero for negative degrees.
    pub fn dim(&self, d: i64) -> usize {
        if d < 0 {
            0
        } else {
            self.pieces[d as usize].dim()
        }
    }

    pub fn basis(&self, d: u32) -> &[Monomial] {
        &self.pieces[d as usize].basis
    }

    pub fn hilbert_function(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.dim()).collect()
    }

    /// `x_v * b` for the `k`-th basis monomial of `R_d`.
    pub fn mul_var(&self, d: u32, k: usize, v: usize) -> &SparseVec {
        &self.var_mul[d as usize][k][v]
    }

    /// Product of two basis monomials.
    pub fn mul_basis(&self, d1: u32, a: usize, d2: u32, b: usize) -> &SparseVec {
        let m = self.pieces[d1 as usize].basis[a].mul(&self.pieces[d2 as usize].basis[b]);
        self.pieces[(d1 + d2) as usize].nf_monomial(&m)
    }

    /// Product of homogeneous elements given in basis coordinates.
    pub fn mul(&self, d1: u32, x: &SparseVec, d2: u32, y: &SparseVec) -> SparseVec {
        let f = self.field;
        let mut acc = SparseVec::new();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                acc = acc.axpy(f, f.mul(ca, cb), self.mul_basis(d1, a, d2, b));
            }
        }
        acc
    }

    /// Multiply a degree-`d` element by a monomial of degree `dm`.
    pub fn mul_monomial(&self, m: &Monomial, d: u32, x: &SparseVec) -> SparseVec {
        let f = self.field;
        let dm = m.degree();
        let target = &self.pieces[(d + dm) as usize];
        let mut acc = SparseVec::new();
        for (a, c) in x.iter() {
            let prod = self.pieces[d as usize].basis[a].mul(m);
            acc = acc.axpy(f, c, target.nf_monomial(&prod));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{rank, GradedMatrixBlock};

    fn ring(n: usize, gens: &[&[(&[u16], i64)]]) -> RingSpec {
        let f = PrimeField::default();
        let polys = gens
            .iter()
            .map(|terms| {
                Poly::from_terms(f, n, terms.iter().map(|(e, c)| (Monomial::new(e.to_vec()), f.from_i64(*c))))
            })
            .collect();
        RingSpec::new(f, RingSpec::default_vars(n), polys).unwrap()
    }

    #[test]
    fn maximal_ideal_squared_kills_degree_two() {
        let r = ring(2, &[&[(&[2, 0], 1)], &[(&[1, 1], 1)], &[(&[0, 2], 1)]]);
        assert!(r.graded_basis_r(2).basis().is_empty());
    }

    #[test]
    fn linear_piece_is_untouched() {
        let r = ring(3, &[&[(&[2, 0, 0], 1)], &[(&[0, 2, 0], 1)], &[(&[1, 0, 1], 1)]]);
        let p = r.graded_basis_r(1);
        assert_eq!(p.basis(), r.graded_basis_q(1).as_slice());
    }

    #[test]
    fn three_quadrics_in_four_vars() {
        let r = ring(
            4,
            &[&[(&[2, 0, 0, 0], 1), (&[0, 0, 2, 0], -1)], &[(&[1, 1, 0, 0], 1)], &[(&[0, 0, 1, 1], 1)]],
        );
        let p = r.graded_basis_r(2);
        assert_eq!(p.dim(), 7);
        // independent count: rank of the three coefficient rows
        let rows: Vec<SparseVec> =
            r.gens().iter().map(|f| q_coords(f, &index_of(&r.graded_basis_q(2)))).collect();
        let m = GradedMatrixBlock::from_rows(r.field(), 10, rows);
        assert_eq!(10 - rank(&m), 7);
    }

    #[test]
    fn redundant_generators_are_dropped() {
        // x^2, x^2 + xy, xy, x^3: the last two are redundant
        let r = ring(2, &[&[(&[2, 0], 1)], &[(&[2, 0], 1), (&[1, 1], 1)], &[(&[1, 1], 1)], &[(&[3, 0], 5)]]);
        assert_eq!(r.g(), 2);
        assert_eq!(r.gen_degrees(), vec![2, 2]);
    }

    #[test]
    fn normal_form_vanishes_on_ideal() {
        let r = ring(3, &[&[(&[2, 0, 0], 1), (&[0, 1, 1], -1)], &[(&[0, 2, 0], 1)]]);
        let gr = GradedRing::new(&r, 4);
        for f in r.gens() {
            for m in monomials_of_degree(3, 2) {
                let g = f.mul_monomial(&m, 3);
                assert!(gr.piece(4).normal_form(&g).unwrap().is_zero());
            }
        }
        for d in 0..=4 {
            let p = gr.piece(d);
            assert_eq!(p.dim() + p.ideal_rank(), p.q_basis().len());
        }
    }

    #[test]
    fn non_homogeneous_and_linear_generators_rejected() {
        let f = PrimeField::default();
        let x = Poly::var(f, 2, 0);
        let xx = x.mul(&x).unwrap();
        let bad = xx.add(&x).unwrap();
        assert!(RingSpec::new(f, RingSpec::default_vars(2), vec![bad]).is_err());
        assert!(RingSpec::new(f, RingSpec::default_vars(2), vec![x]).is_err());
    }

    #[test]
    fn digest_is_stable_and_text_round_trips() {
        let r = ring(2, &[&[(&[2, 0], 1), (&[0, 2], -1)]]);
        assert_eq!(r.digest(), r.clone().digest());
        assert!(r.to_text().contains("x1^2 - x2^2"));
    }
}
