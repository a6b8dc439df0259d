//! Does the linear strand `⊕ H_{i,i+1}` generate `H(K^R)` as an algebra?

use serde::Serialize;

use super::complex::{CertifiedWindow, KoszulComplex};
use crate::algebra::RingSpec;
use crate::error::{Error, Result};
use crate::exactla::{Echelon, SparseVec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrandVerdict {
    pub generated: bool,
    /// first bidegree, in `(i, j)` order, where the generated part is proper
    pub first_failure: Option<(usize, usize)>,
}

/// Builds the subalgebra `A` generated by `H_{i,i+1}` (`i >= 1`) degree by
/// degree, `A_{i,j} = sum_{i'} H_{i',i'+1} * A_{i-i',j-i'-1}`, and compares
/// it with `H_{i,j}` for every `i >= 1` in the window. The window must be
/// certified to contain all of `H`.
pub fn linear_strand_generation_check(spec: &RingSpec, i_max: usize, j_max: usize) -> Result<StrandVerdict> {
    let w = CertifiedWindow::of(spec);
    if !w.covered_by(i_max, j_max) {
        return Err(Error::WindowTooSmall(format!(
            "generation check needs i <= {} and j <= {}, got i <= {i_max}, j <= {j_max}",
            w.i_top(),
            w.j_top()
        )));
    }
    let n = spec.nvars();
    let i_max = i_max.min(n);
    let kc = KoszulComplex::new(spec, j_max);
    let t = kc.betti_table(i_max);
    // cycles spanning A_{i,j}, indexed [i][j]
    let mut gen: Vec<Vec<Vec<SparseVec>>> = vec![vec![Vec::new(); j_max + 1]; i_max + 1];
    for i in 1..=i_max {
        for j in i..=j_max {
            let beta = t.get(i, j) as usize;
            if beta == 0 {
                continue;
            }
            let h = kc.homology(i, j);
            let mut ech = Echelon::new(spec.field(), h.len());
            let mut keep = Vec::new();
            if j == i + 1 {
                keep = h.reps.clone();
            } else {
                'outer: for ip in 1..i {
                    let jp = ip + 1;
                    if j < jp {
                        continue;
                    }
                    let lin = kc.homology(ip, jp);
                    for a in &gen[i - ip][j - jp] {
                        for b in &lin.reps {
                            let w = kc.wedge((ip, jp, b), (i - ip, j - jp, a));
                            let c = h.coords(&w).expect("product of cycles");
                            if ech.insert(&SparseVec::from_dense(&c)) {
                                keep.push(w);
                                if ech.rank() == beta {
                                    break 'outer;
                                }
                            }
                        }
                    }
                }
            }
            let dim_a = if j == i + 1 { beta } else { ech.rank() };
            if dim_a < beta {
                return Ok(StrandVerdict { generated: false, first_failure: Some((i, j)) });
            }
            gen[i][j] = keep;
        }
    }
    Ok(StrandVerdict { generated: true, first_failure: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_ring;

    fn spec(vars: &str, gens: &[&str]) -> RingSpec {
        parse_ring(&format!("vars = {vars}\n[ideal]\n{}\n", gens.join("\n")), None).unwrap()
    }

    #[test]
    fn koszul_tables_are_generated() {
        for gens in [["x^2", "y^2", "z^2"], ["x^2", "y^2", "x*z"], ["x^2", "x*y", "x*z"]] {
            let s = spec("x,y,z", &gens);
            let v = linear_strand_generation_check(&s, 3, 6).unwrap();
            assert!(v.generated, "{gens:?}");
        }
    }

    #[test]
    fn cubic_generator_fails_in_degree_one() {
        let s = spec("x,y", &["x^3"]);
        let v = linear_strand_generation_check(&s, 2, 4).unwrap();
        assert_eq!(v.first_failure, Some((1, 3)));
    }

    #[test]
    fn small_window_is_an_error() {
        let s = spec("x,y,z", &["x^2", "y^2", "z^2"]);
        assert!(matches!(linear_strand_generation_check(&s, 3, 4), Err(Error::WindowTooSmall(_))));
    }
}
