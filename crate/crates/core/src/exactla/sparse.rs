use std::fmt::Write as _;

use crate::algebra::PrimeField;

/// Sparse vector: strictly increasing indices, nonzero values.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, u32)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec::default()
    }

    /// Sorts, merges repeated indices and drops zeros.
    pub fn from_unsorted(field: PrimeField, mut entries: Vec<(usize, u32)>) -> Self {
        entries.sort_unstable_by_key(|e| e.0);
        let mut out: Vec<(usize, u32)> = Vec::with_capacity(entries.len());
        for (i, v) in entries {
            let v = v % field.p();
            match out.last_mut() {
                Some(last) if last.0 == i => last.1 = field.add(last.1, v),
                _ => out.push((i, v)),
            }
        }
        out.retain(|e| e.1 != 0);
        SparseVec { entries: out }
    }

    /// Caller guarantees sorted distinct indices and nonzero values.
    pub fn from_sorted(entries: Vec<(usize, u32)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|e| e.1 != 0));
        SparseVec { entries }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, 1)] }
    }

    pub fn from_dense(dense: &[u32]) -> Self {
        SparseVec { entries: dense.iter().enumerate().filter(|e| *e.1 != 0).map(|(i, &v)| (i, v)).collect() }
    }

    pub fn to_dense(&self, dim: usize) -> Vec<u32> {
        let mut d = vec![0; dim];
        for &(i, v) in &self.entries {
            d[i] = v;
        }
        d
    }

    pub fn entries(&self) -> &[(usize, u32)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.entries.iter().copied()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn leading(&self) -> Option<(usize, u32)> {
        self.entries.first().copied()
    }

    pub fn get(&self, i: usize) -> u32 {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.entries[k].1,
            Err(_) => 0,
        }
    }

    pub fn scale(&self, field: PrimeField, c: u32) -> SparseVec {
        if c == 0 {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|&(i, v)| (i, field.mul(v, c))).collect() }
    }

    /// `self + c * other`.
    pub fn axpy(&self, field: PrimeField, c: u32, other: &SparseVec) -> SparseVec {
        if c == 0 {
            return self.clone();
        }
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut x, mut y) = (0, 0);
        while x < a.len() || y < b.len() {
            if y == b.len() || (x < a.len() && a[x].0 < b[y].0) {
                out.push(a[x]);
                x += 1;
            } else if x == a.len() || b[y].0 < a[x].0 {
                out.push((b[y].0, field.mul(c, b[y].1)));
                y += 1;
            } else {
                let v = field.add(a[x].1, field.mul(c, b[y].1));
                if v != 0 {
                    out.push((a[x].0, v));
                }
                x += 1;
                y += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn dot(&self, field: PrimeField, other: &SparseVec) -> u32 {
        let (a, b) = (&self.entries, &other.entries);
        let (mut x, mut y, mut acc) = (0, 0, 0u32);
        while x < a.len() && y < b.len() {
            match a[x].0.cmp(&b[y].0) {
                std::cmp::Ordering::Less => x += 1,
                std::cmp::Ordering::Greater => y += 1,
                std::cmp::Ordering::Equal => {
                    acc = field.add(acc, field.mul(a[x].1, b[y].1));
                    x += 1;
                    y += 1;
                }
            }
        }
        acc
    }

    /// Reindex every entry, e.g. to embed into a larger coordinate space.
    pub fn shifted(&self, offset: usize) -> SparseVec {
        SparseVec { entries: self.entries.iter().map(|&(i, v)| (i + offset, v)).collect() }
    }

    pub fn debug_string(&self) -> String {
        let mut s = String::from("[");
        for (k, (i, v)) in self.iter().enumerate() {
            if k > 0 {
                s.push_str(", ");
            }
            let _ = write!(s, "{i}:{v}");
        }
        s.push(']');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_and_cancel() {
        let f = PrimeField::new(7).unwrap();
        let v = SparseVec::from_unsorted(f, vec![(3, 2), (1, 5), (3, 5), (0, 0)]);
        assert_eq!(v.entries(), &[(1, 5)]);
        let w = SparseVec::from_sorted(vec![(1, 2), (4, 1)]);
        assert_eq!(v.axpy(f, 1, &w).entries(), &[(4, 1)]);
        assert_eq!(v.dot(f, &w), 3);
    }
}
