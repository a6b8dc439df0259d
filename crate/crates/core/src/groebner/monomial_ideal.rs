//! Monomial ideals: minimal generators, dimension and Taylor bounds.

use serde::Serialize;

use crate::algebra::{binomial, Monomial, Poly, PrimeField, RingSpec};
use crate::error::Result;

/// Above this many generators the Taylor degree bound is estimated from
/// generator degrees instead of enumerating subsets.
const TAYLOR_ENUMERATION_LIMIT: usize = 14;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Keeps the minimal elements under divisibility, sorted.
    pub fn new(nvars: usize, gens: Vec<Monomial>) -> Self {
        let mut gens: Vec<Monomial> = gens;
        gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
        gens.dedup();
        let mut minimal: Vec<Monomial> = Vec::new();
        for m in gens {
            if !minimal.iter().any(|g| g.divides(&m)) {
                minimal.push(m);
            }
        }
        MonomialIdeal { nvars, gens: minimal }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn max_degree(&self) -> u32 {
        self.gens.iter().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Number of minimal generators of each degree.
    pub fn degree_counts(&self) -> Vec<usize> {
        let mut out = vec![0; self.max_degree() as usize + 1];
        for g in &self.gens {
            out[g.degree() as usize] += 1;
        }
        out
    }

    /// `Q/J` as a ring presentation over the given field and variables.
    pub fn to_spec(&self, field: PrimeField, vars: Vec<String>) -> Result<RingSpec> {
        let gens = self.gens.iter().map(|m| Poly::monomial(field, m.clone(), 1)).collect();
        RingSpec::new(field, vars, gens)
    }

    /// `(dim Q/J, codim J)`.
    pub fn dimension(&self) -> (usize, usize) {
        dimension(self, self.nvars)
    }

    /// `bounds[i]` is the largest internal degree that can carry a nonzero
    /// `beta_{i,j}(Q/J)`, read off the Taylor resolution (lcm degrees of
    /// `i`-subsets of generators). The vector stops at the last homological
    /// degree that can be nonzero, `min(#gens, nvars)`.
    pub fn taylor_degree_bounds(&self) -> Vec<u32> {
        let m = self.gens.len();
        let top = m.min(self.nvars);
        let mut bounds = vec![0u32; top + 1];
        if m <= TAYLOR_ENUMERATION_LIMIT {
            for mask in 1u32..(1u32 << m) {
                let size = mask.count_ones() as usize;
                if size > top {
                    continue;
                }
                let mut l = Monomial::one(self.nvars);
                for (k, g) in self.gens.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        l = l.lcm(g);
                    }
                }
                bounds[size] = bounds[size].max(l.degree());
            }
        } else {
            let mut degs: Vec<u32> = self.gens.iter().map(|g| g.degree()).collect();
            degs.sort_unstable_by(|a, b| b.cmp(a));
            let all = self.gens.iter().fold(Monomial::one(self.nvars), |l, g| l.lcm(g)).degree();
            for (i, b) in bounds.iter_mut().enumerate().skip(1) {
                *b = degs[..i].iter().sum::<u32>().min(all);
            }
        }
        bounds
    }

    /// `C(#gens, i)`, the rank of the `i`-th Taylor module.
    pub fn taylor_rank(&self, i: usize) -> u64 {
        binomial(self.gens.len() as u64, i as u64)
    }
}

/// `dim Q/J` is the largest size of a variable set containing no
/// generator's support; `codim = nvars - dim`.
pub fn dimension(j: &MonomialIdeal, nvars: usize) -> (usize, usize) {
    assert!(nvars < 32, "dimension search supports fewer than 32 variables");
    let supports: Vec<u32> =
        j.gens().iter().map(|g| g.support().iter().fold(0u32, |acc, &v| acc | 1 << v)).collect();
    let mut best = 0;
    for s in 0u32..(1u32 << nvars) {
        let size = s.count_ones() as usize;
        if size > best && supports.iter().all(|&g| g & !s != 0) {
            best = size;
        }
    }
    (best, nvars - best)
}
