//! Deviations `ε_{i,j}(R)` from the bigraded Poincaré series of `k`.

use serde::Serialize;

use super::resolve::{resolve_k_over_r, TorDegreeCap};
use crate::algebra::{GradedRing, RingSpec};
use crate::error::{Error, Result};
use crate::exactla::{kernel_basis, span_basis, GradedMatrixBlock, SparseVec};

pub const DEFAULT_DEVIATION_WINDOW: (usize, usize) = (5, 10);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeviationTable {
    pub i_max: usize,
    pub j_max: usize,
    /// `ε_{i,j}` indexed `[i][j]`
    pub entries: Vec<Vec<u64>>,
    /// `complete[i]`: no nonzero `ε_{i,j}` lies beyond `j_max`
    pub complete: Vec<bool>,
}

impl DeviationTable {
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(i).and_then(|r| r.get(j)).copied().unwrap_or(0)
    }

    pub fn total(&self, i: usize) -> u64 {
        self.entries.get(i).map_or(0, |r| r.iter().sum())
    }

    pub fn is_complete(&self, i: usize) -> bool {
        self.complete.get(i).copied().unwrap_or(false)
    }

    pub fn to_records(&self) -> String {
        let mut out = String::new();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    out.push_str(&format!("i={i} j={j} epsilon={v}\n"));
                }
            }
        }
        out
    }

    /// One line per `i` with the total and the nonzero internal degrees.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for i in 1..=self.i_max {
            let parts: Vec<String> = (0..=self.j_max)
                .filter(|&j| self.get(i, j) != 0)
                .map(|j| format!("{}@{j}", self.get(i, j)))
                .collect();
            let mark = if self.is_complete(i) { "" } else { " (window)" };
            out.push_str(&format!("eps{i} = {}{mark}", self.total(i)));
            if !parts.is_empty() {
                out.push_str(&format!("  [{}]", parts.join(" ")));
            }
            out.push('\n');
        }
        out
    }
}

/// Solves `P(s,t) = Π_{i odd} (1 + s^i t^j)^{ε_{i,j}} / Π_{i even} (1 - s^i t^j)^{ε_{i,j}}`
/// for `ε` on the window. `p[a][b]` is `dim Tor_a(k,k)_b`.
pub fn factor_poincare_series(p: &[Vec<u64>], i_max: usize, j_max: usize) -> Result<Vec<Vec<u64>>> {
    let coeff = |a: usize, b: usize| p.get(a).and_then(|r| r.get(b)).copied().unwrap_or(0) as i128;
    let mut cur = vec![vec![0i128; j_max + 1]; i_max + 1];
    cur[0][0] = 1;
    let mut eps = vec![vec![0u64; j_max + 1]; i_max + 1];
    for i in 1..=i_max {
        for j in 0..=j_max {
            let e = coeff(i, j) - cur[i][j];
            if e < 0 {
                return Err(Error::Internal(format!("negative deviation at ({i},{j}): {e}")));
            }
            eps[i][j] = e as u64;
        }
        for j in 0..=j_max {
            for _ in 0..eps[i][j] {
                if i % 2 == 1 {
                    for a in (i..=i_max).rev() {
                        for b in (j..=j_max).rev() {
                            cur[a][b] += cur[a - i][b - j];
                        }
                    }
                } else {
                    for a in i..=i_max {
                        for b in j..=j_max {
                            cur[a][b] += cur[a - i][b - j];
                        }
                    }
                }
            }
        }
    }
    Ok(eps)
}

/// `ε_{i,j}(R)` for `i <= i_max`, `j <= j_max`.
pub fn deviations(spec: &RingSpec, i_max: usize, j_max: usize) -> Result<DeviationTable> {
    let (_, rep) = resolve_k_over_r(spec, i_max.max(1), j_max.max(i_max))?;
    let entries = factor_poincare_series(&rep.tor, i_max, j_max)?;
    let cap = TorDegreeCap::of(spec);
    let complete = (0..=i_max).map(|i| cap.cap(i) as usize <= j_max).collect();
    Ok(DeviationTable { i_max, j_max, entries, complete })
}

/// `ε_{3,j}` as the number of degree-`j` minimal generators of the first
/// homology of the Koszul complex on `f_1..f_g` over `Q`:
/// `dim Z_1(j) - dim (B_1(j) + Q_1 Z_1(j-1))`.
pub fn eps3_via_koszul_h1(spec: &RingSpec, j_max: usize) -> Result<Vec<u64>> {
    let q = RingSpec::polynomial_ring(spec.field(), spec.vars().to_vec())?;
    let ring = GradedRing::new(&q, j_max as u32);
    let f = spec.field();
    let gens: Vec<(u32, SparseVec)> = spec
        .gens()
        .iter()
        .map(|p| {
            let d = p.homogeneous_degree().unwrap();
            let v = if d as usize <= j_max { ring.piece(d).normal_form(p)? } else { SparseVec::new() };
            Ok((d, v))
        })
        .collect::<Result<_>>()?;
    // offsets of the components of (⊕ Q(-d_t))_j
    let layout = |j: usize| -> (Vec<Option<usize>>, usize) {
        let mut offs = Vec::new();
        let mut total = 0;
        for (d, _) in &gens {
            if *d as usize <= j {
                offs.push(Some(total));
                total += ring.dim((j - *d as usize) as i64);
            } else {
                offs.push(None);
            }
        }
        (offs, total)
    };
    let mut out = vec![0u64; j_max + 1];
    let mut prev_cycles: Vec<SparseVec> = Vec::new();
    for j in 0..=j_max {
        let (offs, dim) = layout(j);
        let mut cols = vec![SparseVec::new(); dim];
        for (t, (d, ft)) in gens.iter().enumerate() {
            let Some(o) = offs[t] else { continue };
            let dm = (j - *d as usize) as u32;
            for m in 0..ring.dim(dm as i64) {
                cols[o + m] = ring.mul(dm, &SparseVec::unit(m), *d, ft);
            }
        }
        let dq = GradedMatrixBlock::from_columns(f, ring.dim(j as i64), &cols);
        let cycles = kernel_basis(&dq);
        let mut span: Vec<SparseVec> = Vec::new();
        // Koszul relations f_s e_t - f_t e_s
        for s in 0..gens.len() {
            for t in s + 1..gens.len() {
                let (ds, dt) = (gens[s].0 as usize, gens[t].0 as usize);
                if ds + dt > j {
                    continue;
                }
                let dm = (j - ds - dt) as u32;
                for m in 0..ring.dim(dm as i64) {
                    let u = SparseVec::unit(m);
                    let a = ring.mul(dm, &u, ds as u32, &gens[s].1).shifted(offs[t].unwrap());
                    let b = ring.mul(dm, &u, dt as u32, &gens[t].1).shifted(offs[s].unwrap());
                    span.push(a.axpy(f, f.neg(1), &b));
                }
            }
        }
        // variables times the cycles of degree j - 1
        if j > 0 {
            let (poffs, _) = layout(j - 1);
            for z in &prev_cycles {
                for v in 0..ring.nvars() {
                    let mut entries = Vec::new();
                    for (idx, c) in z.iter() {
                        let t = poffs.iter().rposition(|o| o.is_some_and(|o| o <= idx)).unwrap();
                        let dm = (j - 1 - gens[t].0 as usize) as u32;
                        let local = idx - poffs[t].unwrap();
                        for (r, w) in ring.mul_var(dm, local, v).iter() {
                            entries.push((offs[t].unwrap() + r, f.mul(c, w)));
                        }
                    }
                    span.push(SparseVec::from_unsorted(f, entries));
                }
            }
        }
        let generated = span_basis(f, dim, &span).len();
        out[j] = (cycles.len() - generated) as u64;
        prev_cycles = cycles;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_ring;

    fn spec(vars: &str, gens: &[&str]) -> RingSpec {
        parse_ring(&format!("vars = {vars}\n[ideal]\n{}\n", gens.join("\n")), None).unwrap()
    }

    #[test]
    fn series_of_a_polynomial_ring() {
        // Tor of k over k[x,y] is an exterior algebra: (1 + s t)^2
        let p = vec![vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 1]];
        let e = factor_poincare_series(&p, 2, 2).unwrap();
        assert_eq!(e[1][1], 2);
        assert_eq!(e[2], vec![0, 0, 0]);
    }

    #[test]
    fn inconsistent_series_is_an_error() {
        let p = vec![vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 0]];
        assert!(matches!(factor_poincare_series(&p, 2, 2), Err(Error::Internal(_))));
    }

    #[test]
    fn complete_intersection_deviations() {
        let s = spec("x,y,z", &["x^2", "y^2", "z^2"]);
        let d = deviations(&s, 5, 10).unwrap();
        assert_eq!(d.total(1), 3);
        assert_eq!(d.total(2), 3);
        for i in 3..=5 {
            assert_eq!(d.total(i), 0);
        }
        assert_eq!(eps3_via_koszul_h1(&s, 8).unwrap().iter().sum::<u64>(), 0);
    }

    #[test]
    fn residual_example_deviations() {
        let s = spec("x1,x2,x3,x4", &["x1^2-x3^2", "x1*x2", "x3*x4"]);
        let d = deviations(&s, 4, 7).unwrap();
        assert_eq!(d.total(3), 1);
        assert_eq!(d.total(4), 2);
        let h1 = eps3_via_koszul_h1(&s, 7).unwrap();
        assert_eq!(h1.iter().sum::<u64>(), 1);
        for j in 0..=7 {
            assert_eq!(h1[j], d.get(3, j));
        }
    }

    #[test]
    fn eps3_two_ways_for_the_square_of_the_maximal_ideal() {
        let s = spec("x,y", &["x^2", "x*y", "y^2"]);
        let d = deviations(&s, 3, 6).unwrap();
        let h1 = eps3_via_koszul_h1(&s, 6).unwrap();
        for j in 0..=6 {
            assert_eq!(h1[j], d.get(3, j), "j = {j}");
        }
        assert_eq!(d.total(3), 2);
    }
}
