//! Incremental row echelon forms over `F_p`.

use super::sparse::SparseVec;
use crate::algebra::PrimeField;

const NONE: u32 = u32::MAX;

/// A subspace of `F_p^dim` kept as normalized echelon rows. Each stored
/// row has leading coefficient one at its pivot column and is zero at
/// every pivot that existed when it was inserted.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: PrimeField,
    dim: usize,
    rows: Vec<SparseVec>,
    pivot_of: Vec<u32>,
}

impl Echelon {
    pub fn new(field: PrimeField, dim: usize) -> Self {
        Echelon { field, dim, rows: Vec::new(), pivot_of: vec![NONE; dim] }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of[col] != NONE
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim).filter(|&c| self.pivot_of[c] != NONE).collect()
    }

    /// Eliminate every pivot column from `acc` in one ascending pass. When
    /// `record` is given, the multipliers `(row, c)` with
    /// `acc_out = acc_in - sum c * row` are appended to it.
    fn reduce_acc(&self, acc: &mut [u32], start: usize, mut record: Option<&mut Vec<(usize, u32)>>) {
        let f = self.field;
        for c in start..self.dim {
            let a = acc[c];
            if a == 0 {
                continue;
            }
            let r = self.pivot_of[c];
            if r == NONE {
                continue;
            }
            let row = &self.rows[r as usize];
            for &(j, v) in row.entries() {
                acc[j] = f.sub_mul(acc[j], a, v);
            }
            debug_assert_eq!(acc[c], 0);
            if let Some(rec) = record.as_deref_mut() {
                rec.push((r as usize, a));
            }
        }
    }

    /// Residual of `v` after eliminating all pivot columns.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let Some((start, _)) = v.leading() else {
            return SparseVec::new();
        };
        let mut acc = v.to_dense(self.dim);
        self.reduce_acc(&mut acc, start, None);
        SparseVec::from_dense(&acc)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        self.push_reduced(r)
    }

    fn push_reduced(&mut self, r: SparseVec) -> bool {
        let Some((lead, c)) = r.leading() else {
            return false;
        };
        let row = r.scale(self.field, self.field.inv(c));
        self.pivot_of[lead] = self.rows.len() as u32;
        self.rows.push(row);
        true
    }

    /// The reduced row echelon form, rows ordered by pivot column.
    pub fn rref(&self) -> Vec<(usize, SparseVec)> {
        let f = self.field;
        let mut order: Vec<(usize, usize)> = (0..self.dim)
            .filter(|&c| self.pivot_of[c] != NONE)
            .map(|c| (c, self.pivot_of[c] as usize))
            .collect();
        order.sort_unstable();
        let mut reduced: Vec<Option<SparseVec>> = vec![None; self.dim];
        let mut acc = vec![0u32; self.dim];
        for &(c, r) in order.iter().rev() {
            for &(j, v) in self.rows[r].entries() {
                acc[j] = v;
            }
            for c2 in c + 1..self.dim {
                let a = acc[c2];
                if a == 0 {
                    continue;
                }
                if let Some(row) = &reduced[c2] {
                    for &(j, v) in row.entries() {
                        acc[j] = f.sub_mul(acc[j], a, v);
                    }
                }
            }
            let row = SparseVec::from_dense(&acc);
            acc.iter_mut().for_each(|a| *a = 0);
            reduced[c] = Some(row);
        }
        order.into_iter().map(|(c, _)| (c, reduced[c].take().unwrap())).collect()
    }
}

/// An echelon form whose rows remember how they were built from tagged
/// input vectors. Vectors inserted with `tag = None` count as zero in the
/// tag space (used for quotienting by boundaries).
#[derive(Clone, Debug)]
pub struct TrackedEchelon {
    ech: Echelon,
    ntags: usize,
    tags: Vec<SparseVec>,
}

impl TrackedEchelon {
    pub fn new(field: PrimeField, dim: usize, ntags: usize) -> Self {
        TrackedEchelon { ech: Echelon::new(field, dim), ntags, tags: Vec::new() }
    }

    pub fn echelon(&self) -> &Echelon {
        &self.ech
    }

    pub fn rank(&self) -> usize {
        self.ech.rank()
    }

    fn reduce_tracked(&self, v: &SparseVec) -> (SparseVec, Vec<u32>) {
        let f = self.ech.field;
        let mut tag = vec![0u32; self.ntags];
        let Some((start, _)) = v.leading() else {
            return (SparseVec::new(), tag);
        };
        let mut acc = v.to_dense(self.ech.dim);
        let mut rec = Vec::new();
        self.ech.reduce_acc(&mut acc, start, Some(&mut rec));
        for (r, c) in rec {
            for &(k, t) in self.tags[r].entries() {
                tag[k] = f.add(tag[k], f.mul(c, t));
            }
        }
        (SparseVec::from_dense(&acc), tag)
    }

    /// Inserts `v`; returns whether it was independent of what is already stored.
    pub fn insert(&mut self, v: &SparseVec, tag: Option<usize>) -> bool {
        let f = self.ech.field;
        let (r, used) = self.reduce_tracked(v);
        let Some((_, c)) = r.leading() else {
            return false;
        };
        // row = v - sum(...)  =>  tag(row) = e_tag - used
        let mut t: Vec<u32> = used.iter().map(|&u| f.neg(u)).collect();
        if let Some(k) = tag {
            t[k] = f.add(t[k], 1);
        }
        let inv = f.inv(c);
        let t = SparseVec::from_dense(&t).scale(f, inv);
        self.ech.push_reduced(r);
        self.tags.push(t);
        true
    }

    /// If `v` lies in the stored span, its coordinates in the tag space.
    pub fn express(&self, v: &SparseVec) -> Option<Vec<u32>> {
        let (r, tag) = self.reduce_tracked(v);
        r.is_zero().then_some(tag)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tracked_expression_recovers_combination() {
        let f = PrimeField::new(101).unwrap();
        let a = SparseVec::from_sorted(vec![(0, 1), (2, 3)]);
        let b = SparseVec::from_sorted(vec![(1, 4), (2, 1)]);
        let mut t = TrackedEchelon::new(f, 3, 2);
        assert!(t.insert(&a, Some(0)));
        assert!(t.insert(&b, Some(1)));
        let target = a.scale(f, 5).axpy(f, 7, &b);
        assert_eq!(t.express(&target), Some(vec![5, 7]));
        assert_eq!(t.express(&SparseVec::unit(0)), None);
    }

    #[test]
    fn rref_is_reduced() {
        let f = PrimeField::new(101).unwrap();
        let mut e = Echelon::new(f, 3);
        e.insert(&SparseVec::from_sorted(vec![(1, 2), (2, 1)]));
        e.insert(&SparseVec::from_sorted(vec![(0, 1), (1, 1), (2, 1)]));
        let r = e.rref();
        assert_eq!(r.len(), 2);
        assert_eq!(r[0].0, 0);
        assert_eq!(r[0].1.get(1), 0);
        assert_eq!(r[1].1.get(1), 1);
    }
}
