//! The Koszul complex `K^R = R ⊗ Λ(e_1..e_n)` in bidegree blocks.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use super::table::BettiTable;
use crate::algebra::{GradedRing, RingSpec};
use crate::exactla::{kernel_basis, rank, GradedMatrixBlock, SparseVec, TrackedEchelon};
use crate::groebner::initial_ideal;

/// Subsets of `{0..n}` of each size as bitmasks, in lexicographic order of
/// their sorted elements.
pub(crate) fn subsets_by_size(n: usize) -> Vec<Vec<u32>> {
    let mut by_size = vec![Vec::new(); n + 1];
    fn rec(n: usize, start: usize, mask: u32, size: usize, out: &mut Vec<Vec<u32>>) {
        out[size].push(mask);
        for v in start..n {
            rec(n, v + 1, mask | 1 << v, size + 1, out);
        }
    }
    rec(n, 0, 0, 0, &mut by_size);
    by_size
}

/// `(-1)^{#{(s, t) : s in a, t in b, s > t}}`, the sign of `e_a ∧ e_b`.
pub(crate) fn shuffle_sign(a: u32, b: u32) -> bool {
    let mut inversions = 0;
    let mut bb = b;
    while bb != 0 {
        let t = bb.trailing_zeros();
        inversions += (a >> t >> 1).count_ones();
        bb &= bb - 1;
    }
    inversions % 2 == 1
}

/// A homology class given by a cycle in `K^R_{i,j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyClass {
    pub i: usize,
    pub j: usize,
    pub cycle: SparseVec,
}

/// Representatives of a basis of `H_i(K^R)_j` and the machinery to express
/// any cycle in that basis.
#[derive(Clone, Debug)]
pub struct HomologyClassSet {
    pub i: usize,
    pub j: usize,
    /// cycles independent modulo boundaries
    pub reps: Vec<SparseVec>,
    /// a basis of the boundaries
    pub boundary_basis: Vec<SparseVec>,
    tracker: TrackedEchelon,
}

impl HomologyClassSet {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn class(&self, k: usize) -> HomologyClass {
        HomologyClass { i: self.i, j: self.j, cycle: self.reps[k].clone() }
    }

    /// Coordinates of the class of a cycle; `None` when `v` is not a cycle.
    pub fn coords(&self, v: &SparseVec) -> Option<Vec<u32>> {
        self.tracker.express(v).map(|mut c| {
            c.truncate(self.reps.len());
            c
        })
    }
}

pub struct KoszulComplex {
    spec: RingSpec,
    ring: GradedRing,
    n: usize,
    subsets: Vec<Vec<u32>>,
    /// position of a mask inside its size class
    pos: Vec<usize>,
    j_max: usize,
    homology_cache: Mutex<HashMap<(usize, usize), Arc<HomologyClassSet>>>,
}

impl KoszulComplex {
    /// Blocks `K_{i,j}` for all `i` and `j <= j_max`.
    pub fn new(spec: &RingSpec, j_max: usize) -> Self {
        let n = spec.nvars();
        assert!(n < 24, "Koszul complexes are limited to fewer than 24 variables");
        let subsets = subsets_by_size(n);
        let mut pos = vec![0; 1 << n];
        for class in &subsets {
            for (k, &m) in class.iter().enumerate() {
                pos[m as usize] = k;
            }
        }
        KoszulComplex {
            spec: spec.clone(),
            ring: GradedRing::new(spec, j_max as u32),
            n,
            subsets,
            pos,
            j_max,
            homology_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn j_max(&self) -> usize {
        self.j_max
    }

    fn coeff_dim(&self, i: usize, j: usize) -> usize {
        if j < i {
            0
        } else {
            self.ring.dim((j - i) as i64)
        }
    }

    /// `dim K_{i,j} = C(n, i) * dim R_{j-i}`.
    pub fn dim(&self, i: usize, j: usize) -> usize {
        if i > self.n {
            return 0;
        }
        assert!(j <= self.j_max, "bidegree ({i},{j}) outside the complex");
        self.subsets[i].len() * self.coeff_dim(i, j)
    }

    /// Basis element `r ⊗ e_S` as `(S mask, r index)`.
    pub fn decode(&self, i: usize, j: usize, idx: usize) -> (u32, usize) {
        let cd = self.coeff_dim(i, j);
        (self.subsets[i][idx / cd], idx % cd)
    }

    pub fn encode(&self, i: usize, j: usize, mask: u32, r: usize) -> usize {
        self.pos[mask as usize] * self.coeff_dim(i, j) + r
    }

    /// Human-readable basis labels such as `x1*x2 e{1,3}`.
    pub fn labels(&self, i: usize, j: usize) -> Vec<String> {
        let names = self.spec.vars();
        (0..self.dim(i, j))
            .map(|idx| {
                let (mask, r) = self.decode(i, j, idx);
                let m = &self.ring.basis((j - i) as u32)[r];
                let set: Vec<String> =
                    (0..self.n).filter(|v| mask >> v & 1 == 1).map(|v| (v + 1).to_string()).collect();
                format!("{} e{{{}}}", m.display(names), set.join(","))
            })
            .collect()
    }

    /// `d: K_{i,j} -> K_{i-1,j}`, `d(r ⊗ e_S) = sum_t (-1)^(t-1) r x_{s_t} ⊗ e_{S \ s_t}`.
    pub fn differential(&self, i: usize, j: usize) -> GradedMatrixBlock {
        let f = self.spec.field();
        let (src, dst) = (self.dim(i, j), if i == 0 { 0 } else { self.dim(i - 1, j) });
        if i == 0 || src == 0 {
            return GradedMatrixBlock::zero(f, dst, src);
        }
        let c = (j - i) as u32;
        let mut columns = Vec::with_capacity(src);
        for &mask in &self.subsets[i] {
            for r in 0..self.coeff_dim(i, j) {
                let mut entries = Vec::new();
                let mut bits = mask;
                let mut t = 0;
                while bits != 0 {
                    let v = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    let rest = mask & !(1 << v);
                    let base = self.encode(i - 1, j, rest, 0);
                    for (k, a) in self.ring.mul_var(c, r, v).iter() {
                        entries.push((base + k, if t % 2 == 0 { a } else { f.neg(a) }));
                    }
                    t += 1;
                }
                columns.push(SparseVec::from_unsorted(f, entries));
            }
        }
        GradedMatrixBlock::from_columns(f, dst, &columns)
    }

    pub fn differential_labeled(&self, i: usize, j: usize) -> GradedMatrixBlock {
        let rows = if i == 0 { Vec::new() } else { self.labels(i - 1, j) };
        self.differential(i, j).with_labels(rows, self.labels(i, j))
    }

    /// `x ∧ y` for `x ∈ K_{i1,j1}`, `y ∈ K_{i2,j2}`.
    pub fn wedge(
        &self,
        (i1, j1, x): (usize, usize, &SparseVec),
        (i2, j2, y): (usize, usize, &SparseVec),
    ) -> SparseVec {
        let f = self.spec.field();
        let (i, j) = (i1 + i2, j1 + j2);
        if i > self.n || j > self.j_max {
            return SparseVec::new();
        }
        let mut acc = vec![0u32; self.dim(i, j)];
        let (c1, c2) = ((j1 - i1) as u32, (j2 - i2) as u32);
        for (a, ca) in x.iter() {
            let (s, r) = self.decode(i1, j1, a);
            for (b, cb) in y.iter() {
                let (t, q) = self.decode(i2, j2, b);
                if s & t != 0 {
                    continue;
                }
                let mut coef = f.mul(ca, cb);
                if shuffle_sign(s, t) {
                    coef = f.neg(coef);
                }
                let base = self.encode(i, j, s | t, 0);
                for (k, v) in self.ring.mul_basis(c1, r, c2, q).iter() {
                    acc[base + k] = f.add(acc[base + k], f.mul(coef, v));
                }
            }
        }
        SparseVec::from_dense(&acc)
    }

    /// Basis of `H_i(K^R)_j` with deterministic representatives: kernel
    /// basis vectors in order, kept when independent of the boundaries and
    /// of earlier choices.
    pub fn homology(&self, i: usize, j: usize) -> Arc<HomologyClassSet> {
        if let Some(h) = self.homology_cache.lock().unwrap().get(&(i, j)) {
            return h.clone();
        }
        let set = Arc::new(self.compute_homology(i, j));
        self.homology_cache.lock().unwrap().insert((i, j), set.clone());
        set
    }

    fn compute_homology(&self, i: usize, j: usize) -> HomologyClassSet {
        let f = self.spec.field();
        let dim = self.dim(i, j);
        let cycles = kernel_basis(&self.differential(i, j));
        let mut tracker = TrackedEchelon::new(f, dim, cycles.len());
        let mut boundary_basis = Vec::new();
        if i < self.n {
            let d = self.differential(i + 1, j).transpose();
            for r in 0..d.rows() {
                if tracker.insert(d.row(r), None) {
                    boundary_basis.push(d.row(r).clone());
                }
            }
        }
        let mut reps = Vec::new();
        for z in cycles {
            if tracker.insert(&z, Some(reps.len())) {
                reps.push(z);
            }
        }
        HomologyClassSet { i, j, reps, boundary_basis, tracker }
    }

    /// Class coordinates of the product of two homology classes.
    pub fn product(&self, a: &HomologyClass, b: &HomologyClass) -> Vec<u32> {
        let w = self.wedge((a.i, a.j, &a.cycle), (b.i, b.j, &b.cycle));
        let (i, j) = (a.i + b.i, a.j + b.j);
        if i > self.n || j > self.j_max {
            return Vec::new();
        }
        self.homology(i, j).coords(&w).expect("the product of cycles is a cycle")
    }

    /// Ranks of `d_{i,j}` for `1 <= i <= i_top`, `j <= j_max`, in parallel.
    fn ranks(&self, i_top: usize) -> HashMap<(usize, usize), usize> {
        let jobs: Vec<(usize, usize)> =
            (1..=i_top.min(self.n)).flat_map(|i| (i..=self.j_max).map(move |j| (i, j))).collect();
        jobs.par_iter().map(|&(i, j)| ((i, j), rank(&self.differential(i, j)))).collect()
    }

    /// `beta_{i,j} = dim ker d_{i,j} - rank d_{i+1,j}` on the window.
    pub fn betti_table(&self, i_max: usize) -> BettiTable {
        let ranks = self.ranks(i_max + 1);
        let r = |i: usize, j: usize| ranks.get(&(i, j)).copied().unwrap_or(0);
        let mut t = BettiTable::new(i_max, self.j_max, self.spec.p(), self.spec.digest());
        for i in 0..=i_max.min(self.n) {
            for j in i..=self.j_max {
                let b = self.dim(i, j) - r(i, j) - r(i + 1, j);
                t.set(i, j, b as u64);
            }
        }
        t
    }
}

/// A window certified to hold every nonzero Betti number: the homological
/// range and, per `i`, the largest internal degree allowed by the Taylor
/// resolution of the grevlex initial ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedWindow {
    pub degree_bounds: Vec<u32>,
}

impl CertifiedWindow {
    pub fn of(spec: &RingSpec) -> Self {
        let mut b = initial_ideal(spec).taylor_degree_bounds();
        b.truncate(spec.nvars() + 1);
        CertifiedWindow { degree_bounds: b }
    }

    pub fn i_top(&self) -> usize {
        self.degree_bounds.len() - 1
    }

    pub fn j_top(&self) -> usize {
        self.degree_bounds.iter().copied().max().unwrap_or(0) as usize
    }

    pub fn bound(&self, i: usize) -> Option<u32> {
        self.degree_bounds.get(i).copied()
    }

    pub fn covered_by(&self, i_max: usize, j_max: usize) -> bool {
        i_max >= self.i_top() && j_max >= self.j_top()
    }
}

/// Window used when the caller does not choose one: all homological
/// degrees and `j <= max(2n, certified bound)`.
pub fn default_window(spec: &RingSpec) -> (usize, usize) {
    let w = CertifiedWindow::of(spec);
    (spec.nvars(), (2 * spec.nvars()).max(w.j_top()))
}

pub fn koszul_differential_block(spec: &RingSpec, i: usize, j: usize) -> GradedMatrixBlock {
    KoszulComplex::new(spec, j).differential_labeled(i, j)
}

/// Graded Betti numbers of `R` over `Q` from Koszul homology.
pub fn betti_table(spec: &RingSpec, i_max: usize, j_max: usize) -> BettiTable {
    let i_max = i_max.min(spec.nvars());
    let kc = KoszulComplex::new(spec, j_max);
    let mut t = kc.betti_table(i_max);
    t.complete = CertifiedWindow::of(spec).covered_by(i_max, j_max);
    t
}

pub fn homology_classes(spec: &RingSpec, i: usize, j: usize) -> HomologyClassSet {
    (*KoszulComplex::new(spec, j).homology(i, j)).clone()
}

/// Class coordinates of `a * b` in the basis of `H_{i+i'}(K^R)_{j+j'}`.
pub fn homology_product(kc: &KoszulComplex, a: &HomologyClass, b: &HomologyClass) -> Vec<u32> {
    kc.product(a, b)
}

/// `dim K_{i,j}` summed with signs per internal degree equals the same
/// alternating sum of Betti numbers.
pub fn euler_characteristic_holds(kc: &KoszulComplex, t: &BettiTable) -> bool {
    let n = kc.n;
    (0..=kc.j_max).all(|j| {
        let chains: i64 = (0..=n)
            .map(|i| {
                let d = kc.dim(i, j) as i64;
                if i % 2 == 0 {
                    d
                } else {
                    -d
                }
            })
            .sum();
        let homology: i64 = (0..=n)
            .map(|i| {
                let b = t.get(i, j) as i64;
                if i % 2 == 0 {
                    b
                } else {
                    -b
                }
            })
            .sum();
        chains == homology
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_ring;
    use crate::exactla::GradedMatrixBlock;

    fn spec(vars: &str, gens: &[&str]) -> RingSpec {
        parse_ring(&format!("vars = {vars}\n[ideal]\n{}\n", gens.join("\n")), None).unwrap()
    }

    #[test]
    fn shuffle_signs() {
        assert!(!shuffle_sign(0b001, 0b010));
        assert!(shuffle_sign(0b010, 0b001));
        assert!(shuffle_sign(0b101, 0b010));
    }

    #[test]
    fn first_differential_is_identity_on_linear_forms() {
        let s = spec("x,y,z", &["x^2", "y^2", "x*z"]);
        let kc = KoszulComplex::new(&s, 3);
        let d = kc.differential(1, 1);
        assert_eq!(d.to_dense(), GradedMatrixBlock::identity(s.field(), 3).to_dense());
    }

    #[test]
    fn differential_squares_to_zero() {
        let s = spec("x,y,z,w", &["x^2 - z^2", "x*y", "z*w"]);
        let kc = KoszulComplex::new(&s, 7);
        for i in 2..=4 {
            for j in i..=7 {
                assert!(kc.differential(i - 1, j).compose(&kc.differential(i, j)).is_zero());
            }
        }
    }

    #[test]
    fn block_rank_matches_dense_oracle() {
        let s = spec("x,y,z", &["x^2", "y^2", "x*z"]);
        let d = KoszulComplex::new(&s, 3).differential(2, 3);
        assert_eq!(rank(&d), dense_rank(&d.to_dense(), s.field().p() as u64));
    }

    /// Plain Gaussian elimination on a dense copy.
    fn dense_rank(m: &[Vec<u32>], p: u64) -> usize {
        let mut a: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|&x| x as u64).collect()).collect();
        let (rows, cols) = (a.len(), a.first().map_or(0, |r| r.len()));
        let mut r = 0;
        for c in 0..cols {
            let Some(piv) = (r..rows).find(|&k| a[k][c] != 0) else { continue };
            a.swap(r, piv);
            let inv = modpow(a[r][c], p - 2, p);
            for k in 0..rows {
                if k != r && a[k][c] != 0 {
                    let fac = a[k][c] * inv % p;
                    for cc in 0..cols {
                        a[k][cc] = (a[k][cc] + p * p - fac * a[r][cc] % p) % p;
                    }
                }
            }
            r += 1;
        }
        r
    }

    fn modpow(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    }

    #[test]
    fn complete_intersection_table() {
        let s = spec("x,y,z", &["x^2", "y^2", "z^2"]);
        let t = betti_table(&s, 3, 6);
        assert_eq!(t.nonzero(), vec![(0, 0, 1), (1, 2, 3), (2, 4, 3), (3, 6, 1)]);
        assert!(t.complete);
    }

    #[test]
    fn empty_ideal_table() {
        let s = spec("x,y", &[]);
        let t = betti_table(&s, 2, 4);
        assert_eq!(t.nonzero(), vec![(0, 0, 1)]);
    }

    #[test]
    fn euler_characteristic() {
        let s = spec("x,y,z,w", &["x^2 - z^2", "x*y", "z*w"]);
        let kc = KoszulComplex::new(&s, 8);
        let t = kc.betti_table(4);
        assert!(euler_characteristic_holds(&kc, &t));
    }

    #[test]
    fn homology_products_in_a_complete_intersection() {
        let s = spec("x,y,z", &["x^2", "y^2", "z^2"]);
        let kc = KoszulComplex::new(&s, 6);
        let h1 = kc.homology(1, 2);
        assert_eq!(h1.len(), 3);
        assert_eq!(kc.homology(0, 0).len(), 1);
        let h2 = kc.homology(2, 4);
        assert_eq!(h2.len(), 3);
        // pairwise products span H_{2,4}
        let mut ech = crate::exactla::Echelon::new(s.field(), 3);
        for a in 0..3 {
            for b in a + 1..3 {
                let c = kc.product(&h1.class(a), &h1.class(b));
                ech.insert(&SparseVec::from_dense(&c));
            }
        }
        assert_eq!(ech.rank(), 3);
        // unit and odd squares
        let one = kc.homology(0, 0).class(0);
        let a = h1.class(0);
        let mut e0 = vec![0; 3];
        e0[0] = 1;
        assert_eq!(kc.product(&a, &one), e0);
        assert!(kc.product(&a, &a).iter().all(|&c| c == 0));
        // anticommutativity in odd degrees
        let f = s.field();
        let ab = kc.product(&h1.class(0), &h1.class(1));
        let ba = kc.product(&h1.class(1), &h1.class(0));
        assert!(ab.iter().zip(&ba).all(|(&x, &y)| f.add(x, y) == 0));
    }
}
