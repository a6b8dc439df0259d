//! Betti tables of Koszul algebras with three quadratic relations, and the
//! classification check for such rings.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::corpus::random_quadratic_spec;
use crate::algebra::{PrimeField, RingSpec};
use crate::error::{Error, Result};
use crate::freeres::{koszul_check, resolve_k_over_r, KoszulVerdict};
use crate::koszulhom::{betti_table, default_window, linear_strand_generation_check, BettiTable};

type Entries = &'static [(usize, usize, u64)];

/// The four tables, in order: complete intersection; `(x², y², xz)`;
/// `(x, y)²` in two variables; linear resolution `(x², xy, xz)`.
pub const KOSZUL_G3_TABLES: [Entries; 4] = [
    &[(0, 0, 1), (1, 2, 3), (2, 4, 3), (3, 6, 1)],
    &[(0, 0, 1), (1, 2, 3), (2, 3, 1), (2, 4, 2), (3, 5, 1)],
    &[(0, 0, 1), (1, 2, 3), (2, 3, 2)],
    &[(0, 0, 1), (1, 2, 3), (2, 3, 3), (3, 4, 1)],
];

/// Table of the non-Koszul quadratic algebras with three relations in three
/// variables.
pub const NON_KOSZUL_TABLE: Entries = &[(0, 0, 1), (1, 2, 3), (2, 4, 4), (3, 5, 2)];

pub fn koszul_g3_table(k: usize) -> BettiTable {
    BettiTable::from_entries(KOSZUL_G3_TABLES[k])
}

/// Index (1-based) of the matching table, if any.
pub fn koszul_g3_match(t: &BettiTable) -> Option<usize> {
    let nz = t.nonzero();
    KOSZUL_G3_TABLES.iter().position(|e| nz == *e).map(|k| k + 1)
}

pub fn is_non_koszul_table(t: &BettiTable) -> bool {
    t.nonzero() == NON_KOSZUL_TABLE
}

#[derive(Clone, Debug, Serialize)]
pub struct G3Classification {
    pub table: BettiTable,
    pub koszul_table: Option<usize>,
    pub koszul_depth: usize,
    pub koszul: KoszulVerdict,
    pub strand_generated: bool,
    /// the three conditions agree
    pub agree: bool,
}

impl G3Classification {
    pub fn render(&self) -> String {
        let table = match self.koszul_table {
            Some(k) => format!("koszul table {k}"),
            None => "no koszul table match".into(),
        };
        format!(
            "{table}\nkoszul_check(n = {}): {}\nlinear strand generates: {}\nconditions agree: {}\n",
            self.koszul_depth, self.koszul, self.strand_generated, self.agree
        )
    }
}

/// Koszulness to depth `max(5, pdim + 1)`, membership in the four Koszul tables and
/// linear-strand generation for a ring defined by three quadrics.
pub fn classify_g3(spec: &RingSpec) -> Result<G3Classification> {
    if spec.g() != 3 || !spec.is_quadratic() {
        return Err(Error::Unsupported(format!(
            "classification needs three quadratic generators, got {} generators of degrees {:?}",
            spec.g(),
            spec.gen_degrees()
        )));
    }
    let (i_max, j_max) = default_window(spec);
    let table = betti_table(spec, i_max, j_max);
    let depth = 5.max(table.pdim() + 1);
    let koszul = koszul_check(spec, depth, None)?;
    let strand = linear_strand_generation_check(spec, i_max, j_max)?;
    let koszul_table = koszul_g3_match(&table);
    let k = koszul.is_koszul();
    let agree = k == koszul_table.is_some() && k == strand.generated;
    Ok(G3Classification {
        table,
        koszul_table,
        koszul_depth: depth,
        koszul,
        strand_generated: strand.generated,
        agree,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct NonKoszulHit {
    pub draw: usize,
    #[serde(skip)]
    pub spec: RingSpec,
    pub ring: String,
    pub reg4: i64,
    pub koszul: KoszulVerdict,
    pub strand_generated: bool,
}

/// Draws `budget` random quadratic ideals and keeps those with the
/// non-Koszul table, confirming `reg_4(k) > 0` and that the linear strand
/// does not generate.
pub fn nonkoszul_search(
    e: usize,
    g: usize,
    seed: u64,
    budget: usize,
    field: PrimeField,
) -> Result<Vec<NonKoszulHit>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = Vec::new();
    for draw in 0..budget {
        let spec = random_quadratic_spec(&mut rng, field, e, g);
        let (i_max, j_max) = default_window(&spec);
        let t = betti_table(&spec, i_max, j_max);
        if !is_non_koszul_table(&t) {
            continue;
        }
        let (_, rep) = resolve_k_over_r(&spec, 4, 7)?;
        let koszul = koszul_check(&spec, 5, None)?;
        let strand = linear_strand_generation_check(&spec, i_max, j_max)?;
        hits.push(NonKoszulHit {
            draw,
            ring: spec.to_text(),
            spec,
            reg4: rep.reg_n,
            koszul,
            strand_generated: strand.generated,
        });
    }
    Ok(hits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_ring;

    fn spec(vars: &str, gens: &[&str]) -> RingSpec {
        parse_ring(&format!("vars = {vars}\n[ideal]\n{}\n", gens.join("\n")), None).unwrap()
    }

    #[test]
    fn koszul_g3_instances() {
        let cases = [
            (spec("x,y,z", &["x^2", "y^2", "z^2"]), 1),
            (spec("x,y,z", &["x^2", "y^2", "x*z"]), 2),
            (spec("x,y", &["x^2", "x*y", "y^2"]), 3),
            (spec("x,y,z", &["x^2", "x*y", "x*z"]), 4),
        ];
        for (s, k) in cases {
            let c = classify_g3(&s).unwrap();
            assert_eq!(c.koszul_table, Some(k));
            assert!(c.koszul.is_koszul());
            assert!(c.strand_generated);
            assert!(c.agree);
        }
    }

    #[test]
    fn residual_ring_is_classified_non_koszul() {
        let s = spec("x1,x2,x3,x4", &["x1^2-x3^2", "x1*x2", "x3*x4"]);
        let c = classify_g3(&s).unwrap();
        assert!(is_non_koszul_table(&c.table));
        assert_eq!(c.koszul_table, None);
        assert!(c.koszul.fails());
        assert!(!c.strand_generated);
        assert!(c.agree);
    }

    #[test]
    fn wrong_shape_is_unsupported() {
        let s = spec("x,y", &["x^2", "y^2"]);
        assert!(matches!(classify_g3(&s), Err(Error::Unsupported(_))));
    }

    #[test]
    fn empty_budget() {
        assert!(nonkoszul_search(3, 3, 1, 0, PrimeField::default()).unwrap().is_empty());
    }
}
