//! Minimal graded free resolutions over a graded ring, built one internal
//! degree at a time.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::GradedRing;
use crate::exactla::{kernel_basis, Echelon, GradedMatrixBlock, SparseVec};

/// One summand of an image: coefficient `c` on basis element `a` of
/// `A_{d_k - d_l}` in front of generator `l` of the target module.
pub type ImageTerm = (usize, usize, u32);

/// A free module `F_i = ⊕ A(-d_k)` with its differential `F_i -> F_{i-1}`
/// given by the images of the generators.
#[derive(Clone, Debug, Serialize)]
pub struct ResolutionStep {
    pub index: usize,
    /// generator degrees, nondecreasing
    pub degrees: Vec<u32>,
    #[serde(skip)]
    pub images: Vec<Vec<ImageTerm>>,
}

impl ResolutionStep {
    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    /// Number of generators of degree `j`.
    pub fn count(&self, j: u32) -> usize {
        self.degrees.iter().filter(|&&d| d == j).count()
    }
}

/// Offsets of the generators of degree `<= bound` inside `(F)_j`.
fn layout(ring: &GradedRing, degrees: &[u32], j: u32, bound: u32) -> (Vec<Option<usize>>, usize) {
    let mut offs = Vec::with_capacity(degrees.len());
    let mut total = 0;
    for &d in degrees {
        if d <= bound && d <= j {
            offs.push(Some(total));
            total += ring.dim((j - d) as i64);
        } else {
            offs.push(None);
        }
    }
    (offs, total)
}

/// Matrix of `F_i -> F_{i-1}` in degree `j`, using only generators of
/// degree `<= bound` on both sides.
fn block(
    ring: &GradedRing,
    src: &ResolutionStep,
    dst_degrees: &[u32],
    j: u32,
    bound: u32,
) -> GradedMatrixBlock {
    let f = ring.field();
    let (src_off, src_dim) = layout(ring, &src.degrees, j, bound);
    let (dst_off, dst_dim) = layout(ring, dst_degrees, j, bound);
    let mut columns = vec![SparseVec::new(); src_dim];
    for (k, &dk) in src.degrees.iter().enumerate() {
        let Some(off) = src_off[k] else { continue };
        let dm = j - dk;
        for m in 0..ring.dim(dm as i64) {
            let mut entries = Vec::new();
            for &(l, a, c) in &src.images[k] {
                let dl = dst_degrees[l];
                let base = dst_off[l].expect("image involves a generator of larger degree");
                for (t, v) in ring.mul_basis(dm, m, dk - dl, a).iter() {
                    entries.push((base + t, f.mul(c, v)));
                }
            }
            columns[off + m] = SparseVec::from_unsorted(f, entries);
        }
    }
    GradedMatrixBlock::from_columns(f, dst_dim, &columns)
}

/// Splits a vector of `(F)_j` into image terms.
fn to_terms(ring: &GradedRing, degrees: &[u32], j: u32, bound: u32, v: &SparseVec) -> Vec<ImageTerm> {
    let (offs, _) = layout(ring, degrees, j, bound);
    let mut out = Vec::new();
    for (idx, c) in v.iter() {
        let l = offs.iter().rposition(|o| o.is_some_and(|o| o <= idx)).unwrap();
        out.push((l, idx - offs[l].unwrap(), c));
    }
    out
}

/// Resolution data together with the window it is valid on.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub steps: Vec<ResolutionStep>,
    pub j_max: u32,
    /// bidegree where construction stopped early, if it did
    pub stopped_at: Option<(usize, u32)>,
    ring: GradedRing,
}

impl Resolution {
    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    /// Number of degree-`j` generators of `F_i`.
    pub fn tor(&self, i: usize, j: u32) -> usize {
        self.steps.get(i).map_or(0, |s| s.count(j))
    }

    /// Differential `F_i -> F_{i-1}` in internal degree `j`.
    pub fn block(&self, i: usize, j: u32) -> GradedMatrixBlock {
        block(&self.ring, &self.steps[i], &self.steps[i - 1].degrees, j, j)
    }

    /// Every entry of the differential lies in `A_{>=1}`.
    pub fn is_minimal(&self) -> bool {
        self.steps.iter().skip(1).all(|s| {
            s.images.iter().zip(&s.degrees).all(|(img, &dk)| {
                let prev = &self.steps[s.index - 1].degrees;
                img.iter().all(|&(l, _, _)| prev[l] < dk)
            })
        })
    }

    /// `d_{i-1} d_i = 0` in every degree of the window.
    pub fn is_complex(&self) -> bool {
        (2..self.steps.len())
            .all(|i| (0..=self.j_max).all(|j| self.block(i - 1, j).compose(&self.block(i, j)).is_zero()))
    }
}

/// Settings for [`resolve`].
pub struct EngineConfig<'a> {
    /// number of steps `F_1..F_n` to build
    pub steps: usize,
    pub j_max: u32,
    /// `cap(i)`: no generator of `F_i` can have degree above this
    pub cap: &'a (dyn Fn(usize) -> u32 + Sync),
    /// called after each internal degree; returning `true` stops the build
    pub stop: &'a (dyn Fn(&[ResolutionStep], u32) -> bool + Sync),
}

/// Builds `F_2, F_3, ...` from `F_0 = A` and the given `F_1`. The outer
/// loop runs over internal degrees; within one degree the steps are
/// independent (new generators in degree `j` never enter kernels in
/// degree `j`) and run in parallel.
pub fn resolve(ring: GradedRing, f1: ResolutionStep, cfg: &EngineConfig) -> Resolution {
    let f0 = ResolutionStep { index: 0, degrees: vec![0], images: vec![Vec::new()] };
    let mut steps = vec![f0, f1];
    for i in 2..=cfg.steps {
        steps.push(ResolutionStep { index: i, degrees: Vec::new(), images: Vec::new() });
    }
    let steps_total = cfg.steps.min(steps.len() - 1);
    steps.truncate(steps_total + 1);
    let mut stopped_at = None;
    for j in 0..=cfg.j_max {
        let found: Vec<(usize, Vec<Vec<ImageTerm>>)> = (2..=steps_total)
            .into_par_iter()
            .filter(|&i| j <= (cfg.cap)(i))
            .map(|i| (i, new_generators(&ring, &steps, i, j)))
            .collect();
        for (i, gens) in found {
            for img in gens {
                steps[i].degrees.push(j);
                steps[i].images.push(img);
            }
        }
        if (cfg.stop)(&steps, j) {
            stopped_at = Some((steps_total, j));
            break;
        }
    }
    Resolution { steps, j_max: cfg.j_max, stopped_at, ring }
}

/// Kernel of `F_{i-1} -> F_{i-2}` in degree `j` modulo the image of the
/// existing generators of `F_i`; a complement gives the new generators.
fn new_generators(ring: &GradedRing, steps: &[ResolutionStep], i: usize, j: u32) -> Vec<Vec<ImageTerm>> {
    if j == 0 {
        return Vec::new();
    }
    let old = j - 1;
    let (prev, prev2, cur) = (&steps[i - 1], &steps[i - 2], &steps[i]);
    let d_prev = block(ring, prev, &prev2.degrees, j, old);
    if d_prev.cols() == 0 {
        return Vec::new();
    }
    let kernel = kernel_basis(&d_prev);
    if kernel.is_empty() {
        return Vec::new();
    }
    let d_cur = block(ring, cur, &prev.degrees, j, old).transpose();
    let mut ech = Echelon::new(ring.field(), d_prev.cols());
    for r in 0..d_cur.rows() {
        ech.insert(d_cur.row(r));
    }
    kernel.into_iter().filter(|z| ech.insert(z)).map(|z| to_terms(ring, &prev.degrees, j, old, &z)).collect()
}
