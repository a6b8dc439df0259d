//! The diagonal subalgebra `Δ(R) = ⊕ H_i(K^R)_{2i}` of Koszul homology for
//! rings defined by quadrics: its presentation as a quotient of the exterior
//! algebra on the quadrics, its dimensions computed from cycle products, and
//! the complete-intersection criterion.

use serde::Serialize;

use crate::algebra::{binomial, GradedRing, RingSpec};
use crate::error::{Error, Result};
use crate::exactla::{
    intersect, kernel_basis, rank, solve_in_span, span_basis, GradedMatrixBlock, SparseVec,
};
use crate::freeres::{koszul_check, KoszulVerdict};
use crate::groebner::initial_ideal;
use crate::koszulhom::{
    betti_table, default_window, shuffle_sign, subsets_by_size, BettiTable, KoszulComplex,
};

/// Linear syzygies of the quadrics and the spaces `L`, `M`, `V = L ∩ M`
/// inside `(Q_2)^g`; component `t` occupies the block at `t * dim Q_2`.
#[derive(Clone, Debug)]
pub struct SyzygySpaces {
    pub g: usize,
    pub dim_q2: usize,
    /// kernel of `(Q_1)^g -> Q_3`
    pub linear: Vec<SparseVec>,
    /// basis of `Q_1 * linear`
    pub l: Vec<SparseVec>,
    /// Koszul syzygies `f_i e_j - f_j e_i`, `i < j`, in lexicographic order
    pub m_span: Vec<SparseVec>,
    /// basis of `L ∩ M`
    pub v: Vec<SparseVec>,
}

impl SyzygySpaces {
    pub fn p(&self) -> usize {
        self.v.len()
    }
}

fn quadrics(spec: &RingSpec, q: &GradedRing) -> Result<Vec<SparseVec>> {
    spec.gens()
        .iter()
        .map(|f| {
            if f.homogeneous_degree() != Some(2) {
                return Err(Error::Unsupported(format!(
                    "generator {} is not quadratic",
                    f.display(spec.vars())
                )));
            }
            q.piece(2).normal_form(f)
        })
        .collect()
}

fn pairs(g: usize) -> Vec<(usize, usize)> {
    (0..g).flat_map(|i| (i + 1..g).map(move |j| (i, j))).collect()
}

pub fn syzygy_spaces(spec: &RingSpec) -> Result<SyzygySpaces> {
    let f = spec.field();
    let qspec = RingSpec::polynomial_ring(f, spec.vars().to_vec())?;
    let q = GradedRing::new(&qspec, 3);
    let fs = quadrics(spec, &q)?;
    let (g, e) = (fs.len(), spec.nvars());
    let (d1, d2) = (q.dim(1), q.dim(2));
    let mut cols = Vec::with_capacity(g * d1);
    for ft in &fs {
        for v in 0..d1 {
            cols.push(q.mul(1, &SparseVec::unit(v), 2, ft));
        }
    }
    let linear = kernel_basis(&GradedMatrixBlock::from_columns(f, q.dim(3), &cols));
    let mut l = Vec::new();
    for s in &linear {
        for w in 0..e {
            let mut acc = SparseVec::new();
            for t in 0..g {
                let comp: Vec<(usize, u32)> =
                    s.iter().filter(|&(k, _)| k / d1 == t).map(|(k, c)| (k % d1, c)).collect();
                if comp.is_empty() {
                    continue;
                }
                let lt = SparseVec::from_sorted(comp);
                let prod = q.mul(1, &SparseVec::unit(w), 1, &lt);
                acc = acc.axpy(f, 1, &prod.shifted(t * d2));
            }
            l.push(acc);
        }
    }
    let l = span_basis(f, g * d2, &l);
    let m_span: Vec<SparseVec> = pairs(g)
        .into_iter()
        .map(|(i, j)| fs[i].shifted(j * d2).axpy(f, f.neg(1), &fs[j].shifted(i * d2)))
        .collect();
    let v = intersect(f, g * d2, &l, &m_span);
    Ok(SyzygySpaces { g, dim_q2: d2, linear, l, m_span, v })
}

/// `Λ(x_1..x_g)` modulo quadratic relations `Σ c_{ij} x_i x_j`.
#[derive(Clone, Debug, Serialize)]
pub struct DiagonalPresentation {
    pub g: usize,
    /// per relation, the nonzero coefficients `(i, j, c)` with `i < j`
    pub relations: Vec<Vec<(usize, usize, u32)>>,
    /// `dim Δ_i` for `i = 0..=g`
    pub hilbert: Vec<usize>,
    /// the regularity hypothesis of the presentation was confirmed
    pub hypothesis_verified: bool,
    pub koszul_verdict: String,
}

impl DiagonalPresentation {
    pub fn to_records(&self) -> String {
        let mut out = String::new();
        for (h, rel) in self.relations.iter().enumerate() {
            for &(i, j, c) in rel {
                out.push_str(&format!("h={h} i={} j={} c={c}\n", i + 1, j + 1));
            }
        }
        let hs: Vec<String> = self.hilbert.iter().map(|d| d.to_string()).collect();
        out.push_str(&format!("hilbert = ({})\n", hs.join(",")));
        let flag = if self.hypothesis_verified { "verified" } else { "hypothesis unverified" };
        out.push_str(&format!("hypothesis: {flag} ({})\n", self.koszul_verdict));
        out
    }
}

/// Hilbert function of the exterior algebra on `g` generators modulo the
/// two-sided ideal of the given quadratic forms.
pub fn exterior_quotient_hilbert(
    field: crate::algebra::PrimeField,
    g: usize,
    relations: &[Vec<(usize, usize, u32)>],
) -> Vec<usize> {
    let subsets = subsets_by_size(g);
    let mut out = vec![1];
    for k in 1..=g {
        let mut sorted = subsets[k].clone();
        sorted.sort_unstable();
        let pos = |mask: u32| sorted.binary_search(&mask).unwrap();
        let mut rows = Vec::new();
        if k >= 2 {
            for rel in relations {
                for &m in &subsets[k - 2] {
                    let mut entries = Vec::new();
                    for &(i, j, c) in rel {
                        let a = (1u32 << i) | (1 << j);
                        if a & m != 0 {
                            continue;
                        }
                        let c = if shuffle_sign(a, m) { field.neg(c) } else { c };
                        entries.push((pos(a | m), c));
                    }
                    rows.push(SparseVec::from_unsorted(field, entries));
                }
            }
        }
        let dim = subsets[k].len();
        out.push(dim - span_basis(field, dim, &rows).len());
    }
    out
}

/// Relations from `V` in Koszul-syzygy coordinates, the quotient Hilbert
/// function, and whether `reg_{n+1}(k) = 0` with `n = pdim` was confirmed.
pub fn diagonal_presentation(spec: &RingSpec) -> Result<DiagonalPresentation> {
    syzygy_spaces(spec)?;
    let verdict = regularity_hypothesis(spec)?;
    diagonal_presentation_given(spec, &verdict)
}

/// As [`diagonal_presentation`] with the hypothesis verdict supplied.
pub fn diagonal_presentation_given(spec: &RingSpec, verdict: &KoszulVerdict) -> Result<DiagonalPresentation> {
    let f = spec.field();
    let sp = syzygy_spaces(spec)?;
    let dim = sp.g * sp.dim_q2;
    let prs = pairs(sp.g);
    let mut relations = Vec::new();
    for b in &sp.v {
        let c = solve_in_span(f, dim, &sp.m_span, b)
            .ok_or_else(|| Error::Internal("element of L ∩ M outside M".into()))?;
        let rel: Vec<(usize, usize, u32)> =
            prs.iter().zip(c).filter(|&(_, c)| c != 0).map(|(&(i, j), c)| (i, j, c)).collect();
        relations.push(rel);
    }
    let hilbert = exterior_quotient_hilbert(f, sp.g, &relations);
    Ok(DiagonalPresentation {
        g: sp.g,
        relations,
        hilbert,
        hypothesis_verified: verdict.is_koszul(),
        koszul_verdict: verdict.to_string(),
    })
}

/// `koszul_check` to depth `pdim + 1`.
pub fn regularity_hypothesis(spec: &RingSpec) -> Result<KoszulVerdict> {
    let (i, j) = default_window(spec);
    let pdim = betti_table(spec, i, j).pdim();
    koszul_check(spec, pdim + 1, None)
}

/// Dimensions of the image of `Λ^i H_{1,2} -> H_{i,2i}` and of `H_{i,2i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagonalDims {
    pub image: Vec<usize>,
    pub homology: Vec<usize>,
}

/// Products of cycle representatives of `H_1(K^R)_2`, degree by degree.
pub fn diagonal_dims_direct(spec: &RingSpec) -> Result<DiagonalDims> {
    let g = spec.gens().iter().filter(|f| f.homogeneous_degree() == Some(2)).count();
    let e = spec.nvars();
    let top = g.min(e);
    let kc = KoszulComplex::new(spec, 2 * top.max(1));
    let mut image = vec![0; g + 1];
    let mut homology = vec![0; g + 1];
    image[0] = 1;
    homology[0] = 1;
    if top == 0 {
        return Ok(DiagonalDims { image, homology });
    }
    let lin = kc.homology(1, 2);
    image[1] = lin.len();
    homology[1] = lin.len();
    let mut layer = lin.reps.clone();
    for i in 2..=top {
        let h = kc.homology(i, 2 * i);
        homology[i] = h.len();
        let mut next = Vec::new();
        let mut ech = crate::exactla::Echelon::new(spec.field(), h.len());
        for a in &lin.reps {
            for b in &layer {
                let w = kc.wedge((1, 2, a), (i - 1, 2 * i - 2, b));
                let c = h.coords(&w).expect("product of cycles is a cycle");
                let cv = SparseVec::from_dense(&c);
                if ech.insert(&cv) {
                    next.push(w);
                }
            }
        }
        image[i] = ech.rank();
        layer = next;
    }
    Ok(DiagonalDims { image, homology })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CiVerdict {
    /// the regularity hypothesis could not be confirmed
    Inapplicable,
    NotTriggered,
    /// triggered at `i` and `R` is a complete intersection
    Consistent {
        i: usize,
    },
    /// triggered at `i` but `g != codim I`
    Violation {
        i: usize,
        g: usize,
        codim: usize,
    },
}

/// If `β_{i,2i} >= C(g, i)` for some `2 <= i <= g`, `I` must be a complete
/// intersection; checked against the codimension of the initial ideal.
pub fn ci_criterion(spec: &RingSpec) -> Result<CiVerdict> {
    if !spec.is_quadratic() {
        return Ok(CiVerdict::Inapplicable);
    }
    let verified = regularity_hypothesis(spec)?.is_koszul();
    let (i_max, j_max) = default_window(spec);
    Ok(ci_criterion_given(spec, &betti_table(spec, i_max, j_max), verified))
}

/// As [`ci_criterion`] with the Betti table and hypothesis supplied.
pub fn ci_criterion_given(spec: &RingSpec, t: &BettiTable, hypothesis_verified: bool) -> CiVerdict {
    if !spec.is_quadratic() || !hypothesis_verified {
        return CiVerdict::Inapplicable;
    }
    let g = spec.g();
    let trigger = (2..=g).find(|&i| t.get(i, 2 * i) >= binomial(g as u64, i as u64));
    let Some(i) = trigger else {
        return CiVerdict::NotTriggered;
    };
    let (_, codim) = initial_ideal(spec).dimension();
    if codim == g {
        CiVerdict::Consistent { i }
    } else {
        CiVerdict::Violation { i, g, codim }
    }
}

/// Rank of the relation forms as vectors in `Λ^2`.
pub fn relation_rank(p: &DiagonalPresentation, field: crate::algebra::PrimeField) -> usize {
    let prs = pairs(p.g);
    let rows: Vec<SparseVec> = p
        .relations
        .iter()
        .map(|r| {
            SparseVec::from_unsorted(
                field,
                r.iter().map(|&(i, j, c)| (prs.iter().position(|&q| q == (i, j)).unwrap(), c)).collect(),
            )
        })
        .collect();
    rank(&GradedMatrixBlock::from_rows(field, prs.len(), rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_ring;

    fn spec(vars: &str, gens: &[&str]) -> RingSpec {
        parse_ring(&format!("vars = {vars}\n[ideal]\n{}\n", gens.join("\n")), None).unwrap()
    }

    #[test]
    fn complete_intersection() {
        let s = spec("x,y,z", &["x^2", "y^2", "z^2"]);
        let sp = syzygy_spaces(&s).unwrap();
        assert!(sp.linear.is_empty());
        assert_eq!(sp.p(), 0);
        let p = diagonal_presentation(&s).unwrap();
        assert_eq!(p.hilbert, vec![1, 3, 3, 1]);
        assert!(p.hypothesis_verified);
        assert_eq!(diagonal_dims_direct(&s).unwrap().image, vec![1, 3, 3, 1]);
        assert_eq!(ci_criterion(&s).unwrap(), CiVerdict::Consistent { i: 2 });
    }

    #[test]
    fn one_relation() {
        let s = spec("x,y,z", &["x^2", "y^2", "x*z"]);
        let p = diagonal_presentation(&s).unwrap();
        // x^2 e_3 - xz e_1 = x (x e_3 - z e_1) is the only Koszul syzygy in L
        assert_eq!(p.relations, vec![vec![(0, 2, 1)]]);
        assert_eq!(p.hilbert, vec![1, 3, 2, 0]);
        let d = diagonal_dims_direct(&s).unwrap();
        assert_eq!(d.image, vec![1, 3, 2, 0]);
        assert_eq!(d.homology, vec![1, 3, 2, 0]);
        assert_eq!(ci_criterion(&s).unwrap(), CiVerdict::NotTriggered);
    }

    #[test]
    fn cone_over_points() {
        let s = spec("x,y,z", &["x^2", "x*y", "x*z"]);
        let sp = syzygy_spaces(&s).unwrap();
        assert_eq!(sp.linear.len(), 3);
        assert_eq!(sp.p(), 3);
        assert_eq!(diagonal_presentation(&s).unwrap().hilbert, vec![1, 3, 0, 0]);
    }

    #[test]
    fn residual_example_is_flagged() {
        let s = spec("x1,x2,x3,x4", &["x1^2-x3^2", "x1*x2", "x3*x4"]);
        let p = diagonal_presentation(&s).unwrap();
        assert!(!p.hypothesis_verified);
        let d = diagonal_dims_direct(&s).unwrap();
        assert!(d.image[2] <= 3);
    }

    #[test]
    fn cubic_is_unsupported() {
        let s = spec("x,y", &["x^3"]);
        assert!(matches!(syzygy_spaces(&s), Err(Error::Unsupported(_))));
    }

    #[test]
    fn quotient_hilbert_of_a_single_relation() {
        let f = crate::algebra::PrimeField::default();
        // x1 x2 + x3 x4 in four variables: Λ^2 loses 1, Λ^3 loses 4, Λ^4 loses 1
        let h = exterior_quotient_hilbert(f, 4, &[vec![(0, 1, 1), (2, 3, 1)]]);
        assert_eq!(h, vec![1, 4, 5, 0, 0]);
    }
}
