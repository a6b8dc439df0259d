use rayon::prelude::*;

use super::echelon::{Echelon, TrackedEchelon};
use super::sparse::SparseVec;
use crate::algebra::PrimeField;

/// Above this fraction of nonzero entries elimination switches to dense rows.
pub const DENSE_THRESHOLD: f64 = 0.30;

/// Basis descriptors for the rows and columns of a block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockLabels {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
}

/// An exact matrix over `F_p`, stored by rows, acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMatrixBlock {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
    labels: Option<BlockLabels>,
}

impl GradedMatrixBlock {
    pub fn zero(field: PrimeField, rows: usize, cols: usize) -> Self {
        GradedMatrixBlock { field, rows, cols, data: vec![SparseVec::new(); rows], labels: None }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        GradedMatrixBlock {
            field,
            rows: n,
            cols: n,
            data: (0..n).map(SparseVec::unit).collect(),
            labels: None,
        }
    }

    pub fn from_rows(field: PrimeField, cols: usize, data: Vec<SparseVec>) -> Self {
        debug_assert!(data.iter().all(|r| r.entries().last().is_none_or(|e| e.0 < cols)));
        GradedMatrixBlock { field, rows: data.len(), cols, data, labels: None }
    }

    /// Builds the matrix whose `k`-th column is `columns[k]`.
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[SparseVec]) -> Self {
        let mut buckets: Vec<Vec<(usize, u32)>> = vec![Vec::new(); rows];
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col.iter() {
                buckets[r].push((c, v));
            }
        }
        GradedMatrixBlock {
            field,
            rows,
            cols: columns.len(),
            data: buckets.into_iter().map(SparseVec::from_sorted).collect(),
            labels: None,
        }
    }

    pub fn from_dense(field: PrimeField, dense: &[Vec<u32>], cols: usize) -> Self {
        GradedMatrixBlock::from_rows(
            field,
            cols,
            dense
                .iter()
                .map(|r| SparseVec::from_unsorted(field, r.iter().copied().enumerate().collect()))
                .collect(),
        )
    }

    pub fn with_labels(mut self, rows: Vec<String>, cols: Vec<String>) -> Self {
        assert_eq!(rows.len(), self.rows);
        assert_eq!(cols.len(), self.cols);
        self.labels = Some(BlockLabels { rows, cols });
        self
    }

    pub fn labels(&self) -> Option<&BlockLabels> {
        self.labels.as_ref()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r].get(c)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.nnz()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_zero())
    }

    pub fn density(&self) -> f64 {
        if self.rows == 0 || self.cols == 0 {
            return 0.0;
        }
        self.nnz() as f64 / (self.rows as f64 * self.cols as f64)
    }

    pub fn transpose(&self) -> GradedMatrixBlock {
        let mut t = GradedMatrixBlock::from_columns(self.field, self.cols, &self.data);
        if let Some(l) = &self.labels {
            t.labels = Some(BlockLabels { rows: l.cols.clone(), cols: l.rows.clone() });
        }
        t
    }

    pub fn to_dense(&self) -> Vec<Vec<u32>> {
        self.data.iter().map(|r| r.to_dense(self.cols)).collect()
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let entries = self
            .data
            .iter()
            .enumerate()
            .map(|(r, row)| (r, row.dot(self.field, v)))
            .filter(|e| e.1 != 0)
            .collect();
        SparseVec::from_sorted(entries)
    }

    /// `self * rhs`.
    pub fn compose(&self, rhs: &GradedMatrixBlock) -> GradedMatrixBlock {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in composition");
        let f = self.field;
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = SparseVec::new();
                for (k, a) in row.iter() {
                    acc = acc.axpy(f, a, &rhs.data[k]);
                }
                acc
            })
            .collect();
        GradedMatrixBlock::from_rows(f, rhs.cols, data)
    }

    fn row_echelon(&self) -> Echelon {
        if self.density() > DENSE_THRESHOLD {
            return dense_echelon(self.field, self.cols, self.to_dense());
        }
        let mut ech = Echelon::new(self.field, self.cols);
        // sparsest rows first, ties by index
        let mut order: Vec<usize> = (0..self.rows).collect();
        order.sort_by_key(|&r| (self.data[r].nnz(), r));
        let mut stored_nnz = 0usize;
        for (k, &r) in order.iter().enumerate() {
            if ech.insert(&self.data[r]) {
                stored_nnz += ech.rows().last().map_or(0, |row| row.nnz());
                let fill = stored_nnz as f64 / (ech.rank() * self.cols) as f64;
                if ech.rank() >= 16 && fill > DENSE_THRESHOLD && k + 1 < order.len() {
                    // fill-in got heavy: finish on dense rows
                    let mut dense: Vec<Vec<u32>> =
                        ech.rows().iter().map(|row| row.to_dense(self.cols)).collect();
                    dense.extend(order[k + 1..].iter().map(|&r| self.data[r].to_dense(self.cols)));
                    return dense_echelon(self.field, self.cols, dense);
                }
            }
        }
        ech
    }
}

/// Gauss-Jordan on dense rows, lowest available column as pivot.
fn dense_echelon(field: PrimeField, cols: usize, mut rows: Vec<Vec<u32>>) -> Echelon {
    let mut r = 0;
    for c in 0..cols {
        let Some(i) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, i);
        let inv = field.inv(rows[r][c]);
        for v in rows[r][c..].iter_mut() {
            *v = field.mul(*v, inv);
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, tail) = tail.split_first_mut().unwrap();
        for other in head.iter_mut().chain(tail.iter_mut()) {
            let a = other[c];
            if a != 0 {
                for (x, &y) in other[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x = field.sub_mul(*x, a, y);
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let mut ech = Echelon::new(field, cols);
    for row in rows.iter().take(r) {
        ech.insert(&SparseVec::from_dense(row));
    }
    ech
}

/// Exact rank over `F_p`.
pub fn rank(m: &GradedMatrixBlock) -> usize {
    m.row_echelon().rank()
}

/// Ranks of many independent blocks, computed concurrently.
pub fn rank_batch(blocks: &[GradedMatrixBlock]) -> Vec<usize> {
    blocks.par_iter().map(rank).collect()
}

/// Basis of `{ v : M v = 0 }`, one vector per non-pivot column of the
/// reduced row echelon form, in increasing column order.
pub fn kernel_basis(m: &GradedMatrixBlock) -> Vec<SparseVec> {
    let f = m.field;
    let rref = m.row_echelon().rref();
    let mut is_pivot = vec![false; m.cols];
    for (c, _) in &rref {
        is_pivot[*c] = true;
    }
    // column view of the non-pivot part of the rref
    let mut free_entries: Vec<Vec<(usize, u32)>> = vec![Vec::new(); m.cols];
    for (c, row) in &rref {
        for (j, v) in row.iter() {
            if j != *c {
                free_entries[j].push((*c, f.neg(v)));
            }
        }
    }
    (0..m.cols)
        .filter(|&j| !is_pivot[j])
        .map(|j| {
            let mut e = std::mem::take(&mut free_entries[j]);
            e.push((j, 1));
            SparseVec::from_unsorted(f, e)
        })
        .collect()
}

/// Basis of the span of `vectors`, chosen greedily among the inputs.
pub fn span_basis(field: PrimeField, dim: usize, vectors: &[SparseVec]) -> Vec<SparseVec> {
    let mut ech = Echelon::new(field, dim);
    vectors.iter().filter(|v| ech.insert(v)).cloned().collect()
}

/// Basis of `span(u) ∩ span(w)` in a common ambient space of dimension `dim`.
pub fn intersect(field: PrimeField, dim: usize, u: &[SparseVec], w: &[SparseVec]) -> Vec<SparseVec> {
    let u = span_basis(field, dim, u);
    let w = span_basis(field, dim, w);
    if u.is_empty() || w.is_empty() {
        return Vec::new();
    }
    // columns [u | -w]; a kernel vector (a, b) gives sum a_i u_i = sum b_j w_j
    let mut cols: Vec<SparseVec> = u.clone();
    cols.extend(w.iter().map(|v| v.scale(field, field.neg(1))));
    let m = GradedMatrixBlock::from_columns(field, dim, &cols);
    let ker = kernel_basis(&m);
    let elems: Vec<SparseVec> = ker
        .iter()
        .map(|k| {
            let mut acc = SparseVec::new();
            for (i, a) in k.iter().filter(|e| e.0 < u.len()) {
                acc = acc.axpy(field, a, &u[i]);
            }
            acc
        })
        .collect();
    span_basis(field, dim, &elems)
}

/// Coordinates `c` with `sum c_k vectors[k] = target`, or `None` when the
/// target is outside the span. With dependent inputs some solution is returned.
pub fn solve_in_span(
    field: PrimeField,
    dim: usize,
    vectors: &[SparseVec],
    target: &SparseVec,
) -> Option<Vec<u32>> {
    let mut t = TrackedEchelon::new(field, dim, vectors.len());
    for (k, v) in vectors.iter().enumerate() {
        t.insert(v, Some(k));
    }
    t.express(target)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> PrimeField {
        PrimeField::default()
    }

    #[test]
    fn trivial_ranks() {
        assert_eq!(rank(&GradedMatrixBlock::zero(f(), 3, 3)), 0);
        assert_eq!(rank(&GradedMatrixBlock::identity(f(), 4)), 4);
        assert!(kernel_basis(&GradedMatrixBlock::identity(f(), 4)).is_empty());
    }

    #[test]
    fn kernel_of_difference() {
        let m = GradedMatrixBlock::from_dense(f(), &[vec![1, f().neg(1)]], 2);
        let k = kernel_basis(&m);
        assert_eq!(k, vec![SparseVec::from_sorted(vec![(0, 1), (1, 1)])]);
    }

    #[test]
    fn intersection_edge_cases() {
        let u = vec![SparseVec::unit(0), SparseVec::unit(1)];
        let same = intersect(f(), 3, &u, &u);
        assert_eq!(same.len(), 2);
        let w = vec![SparseVec::unit(2)];
        assert!(intersect(f(), 3, &u, &w).is_empty());
    }

    #[test]
    fn solve_trivial_targets() {
        let vs = vec![SparseVec::from_sorted(vec![(0, 2), (1, 1)]), SparseVec::unit(1)];
        assert_eq!(solve_in_span(f(), 2, &vs, &vs[0]), Some(vec![1, 0]));
        assert_eq!(solve_in_span(f(), 2, &vs, &SparseVec::new()), Some(vec![0, 0]));
        assert_eq!(solve_in_span(f(), 3, &vs, &SparseVec::unit(2)), None);
    }

    #[test]
    fn dense_and_sparse_paths_agree() {
        // a 100% dense block forces the dense route; its transpose has the same rank
        let p = f();
        let dense: Vec<Vec<u32>> =
            (0..6).map(|i| (0..5).map(|j| ((i * 7 + j * 3) % 5 + 1) as u32).collect()).collect();
        let m = GradedMatrixBlock::from_dense(p, &dense, 5);
        assert!(m.density() > DENSE_THRESHOLD);
        assert_eq!(rank(&m), rank(&m.transpose()));
        for v in kernel_basis(&m) {
            assert!(m.mul_vec(&v).is_zero());
        }
    }
}
