//! Comparisons between the Betti tables of `R` and of `Q/J`.

use serde::Serialize;

use super::monomial_ideal::MonomialIdeal;
use crate::koszulhom::BettiTable;

/// `beta_i(Q/J) <= C(m, i)` for every `i`, with `m` the number of minimal
/// generators of `J`.
pub fn taylor_bound_check(j: &MonomialIdeal, table: &BettiTable) -> bool {
    (0..=table.i_max).all(|i| table.total(i) <= j.taylor_rank(i))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CancellationVerdict {
    pub feasible: bool,
    /// first bidegree where the cancellation system fails
    pub witness: Option<(usize, usize)>,
    /// nonzero cancellation counts `c_{i,j}` pairing `(i,j)` with `(i+1,j)`
    pub cancellations: Vec<(usize, usize, u64)>,
    /// bidegrees where `beta(R) > beta(Q/J)`
    pub semicontinuity_violations: Vec<(usize, usize)>,
}

/// Solves `beta_{i,j}(Q/J) = beta_{i,j}(R) + c_{i,j} + c_{i-1,j}` for
/// nonnegative `c`, per internal degree from `i = 0` upward. The last
/// cancellation in each column must vanish.
pub fn cancellation_check(t_r: &BettiTable, t_j: &BettiTable) -> CancellationVerdict {
    let i_max = t_r.i_max.max(t_j.i_max);
    let j_max = t_r.j_max.max(t_j.j_max);
    let mut witness = None;
    let mut cancellations = Vec::new();
    let mut violations = Vec::new();
    for i in 0..=i_max {
        for j in 0..=j_max {
            if t_r.get(i, j) > t_j.get(i, j) {
                violations.push((i, j));
            }
        }
    }
    for j in 0..=j_max {
        let mut prev: i64 = 0;
        for i in 0..=i_max + 1 {
            let (bj, br) = (t_j.get(i, j) as i64, t_r.get(i, j) as i64);
            let c = bj - br - prev;
            if c < 0 || (i == i_max + 1 && c != 0) {
                witness.get_or_insert((i, j));
                break;
            }
            if c > 0 {
                cancellations.push((i, j, c as u64));
            }
            prev = c;
        }
    }
    CancellationVerdict {
        feasible: witness.is_none(),
        witness,
        cancellations,
        semicontinuity_violations: violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Monomial;

    #[test]
    fn equal_tables_cancel_nothing() {
        let t = BettiTable::from_entries(&[(0, 0, 1), (1, 2, 3), (2, 4, 3), (3, 6, 1)]);
        let v = cancellation_check(&t, &t);
        assert!(v.feasible);
        assert!(v.cancellations.is_empty());
    }

    #[test]
    fn single_cancellation() {
        let r = BettiTable::from_entries(&[(0, 0, 1), (1, 2, 2), (2, 4, 1)]);
        let j = BettiTable::from_entries(&[(0, 0, 1), (1, 2, 2), (1, 3, 1), (2, 3, 1), (2, 4, 1)]);
        let v = cancellation_check(&r, &j);
        assert!(v.feasible);
        assert_eq!(v.cancellations, vec![(1, 3, 1)]);
        let bad = cancellation_check(&j, &r);
        assert!(!bad.feasible);
        assert_eq!(bad.semicontinuity_violations, vec![(1, 3), (2, 3)]);
    }

    #[test]
    fn taylor_examples() {
        let j = MonomialIdeal::new(2, vec![Monomial::new(vec![2, 0]), Monomial::new(vec![0, 2])]);
        let t = BettiTable::from_entries(&[(0, 0, 1), (1, 2, 2), (2, 4, 1)]);
        assert!(taylor_bound_check(&j, &t));
        let j = MonomialIdeal::new(2, vec![Monomial::new(vec![2, 0]), Monomial::new(vec![1, 1])]);
        let t = BettiTable::from_entries(&[(0, 0, 1), (1, 2, 2), (2, 3, 1)]);
        assert!(taylor_bound_check(&j, &t));
        let too_big = BettiTable::from_entries(&[(0, 0, 1), (1, 2, 2), (2, 3, 2)]);
        assert!(!taylor_bound_check(&j, &too_big));
    }
}
