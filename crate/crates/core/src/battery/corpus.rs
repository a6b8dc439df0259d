//! Curated instances and seeded random quadratic ideals.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{binomial, monomials_of_degree, parse_ring, Poly, PrimeField, RingSpec};
use crate::error::Result;

#[derive(Clone, Debug)]
pub struct CorpusInstance {
    pub name: String,
    pub spec: RingSpec,
}

/// Ring files shipped in `corpus/`, by name.
pub const CURATED_FILES: &[(&str, &str)] = &[
    ("koszul3-ci", include_str!("../../../../corpus/koszul3-ci.ring")),
    ("koszul3-mixed", include_str!("../../../../corpus/koszul3-mixed.ring")),
    ("koszul3-minors", include_str!("../../../../corpus/koszul3-minors.ring")),
    ("koszul3-linear", include_str!("../../../../corpus/koszul3-linear.ring")),
    ("residual", include_str!("../../../../corpus/residual.ring")),
    ("aci-edges", include_str!("../../../../corpus/aci-edges.ring")),
    ("aci-four", include_str!("../../../../corpus/aci-four.ring")),
    ("ci-two", include_str!("../../../../corpus/ci-two.ring")),
    ("cubic", include_str!("../../../../corpus/cubic.ring")),
    ("empty", include_str!("../../../../corpus/empty.ring")),
];

pub fn curated(p: Option<u64>) -> Result<Vec<CorpusInstance>> {
    CURATED_FILES
        .iter()
        .map(|(name, text)| Ok(CorpusInstance { name: name.to_string(), spec: parse_ring(text, p)? }))
        .collect()
}

/// A quadric with between one and four terms and nonzero uniform
/// coefficients.
fn random_quadric(rng: &mut ChaCha8Rng, field: PrimeField, e: usize) -> Poly {
    let monos = monomials_of_degree(e, 2);
    let terms = rng.random_range(1..=4.min(monos.len()));
    let picks = sample(rng, monos.len(), terms);
    let p = field.p();
    let terms: Vec<_> = picks.into_iter().map(|k| (monos[k].clone(), rng.random_range(1..p))).collect();
    Poly::from_terms(field, e, terms)
}

/// `g` random quadrics in `e` variables, redrawn until all `g` are
/// minimal generators.
pub fn random_quadratic_spec(rng: &mut ChaCha8Rng, field: PrimeField, e: usize, g: usize) -> RingSpec {
    loop {
        let gens = (0..g).map(|_| random_quadric(rng, field, e)).collect();
        if let Ok(spec) = RingSpec::new(field, RingSpec::default_vars(e), gens) {
            if spec.g() == g {
                return spec;
            }
        }
    }
}

/// `count` random instances with `e` drawn from `e_range` and
/// `1 <= g <= min(g_max, C(e+1, 2))`.
pub fn random_corpus(
    seed: u64,
    count: usize,
    e_range: std::ops::RangeInclusive<usize>,
    g_max: usize,
    field: PrimeField,
) -> Vec<CorpusInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let e = rng.random_range(e_range.clone());
            let top = g_max.min(binomial(e as u64 + 1, 2) as usize);
            let g = rng.random_range(1..=top);
            let spec = random_quadratic_spec(&mut rng, field, e, g);
            CorpusInstance { name: format!("random-{seed}-{k}"), spec }
        })
        .collect()
}

/// `count` random instances with fixed `e` and `g`.
pub fn random_fixed(seed: u64, count: usize, e: usize, g: usize, field: PrimeField) -> Vec<CorpusInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| CorpusInstance {
            name: format!("random-{seed}-e{e}-g{g}-{k}"),
            spec: random_quadratic_spec(&mut rng, field, e, g),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curated_files_parse() {
        let c = curated(None).unwrap();
        assert_eq!(c.len(), CURATED_FILES.len());
        assert_eq!(c.iter().find(|i| i.name == "empty").unwrap().spec.g(), 0);
    }

    #[test]
    fn random_corpus_is_reproducible() {
        let f = PrimeField::default();
        let a = random_corpus(7, 10, 2..=4, 4, f);
        let b = random_corpus(7, 10, 2..=4, 4, f);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.spec.to_text(), y.spec.to_text());
            assert!(x.spec.is_quadratic());
            assert!(x.spec.g() >= 1 && x.spec.g() <= 4);
        }
    }
}
