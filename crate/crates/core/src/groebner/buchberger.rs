//! Buchberger's algorithm with the normal selection strategy.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::monomial_ideal::MonomialIdeal;
use crate::algebra::{Monomial, Poly, PrimeField, RingSpec, TermOrder};

/// Terms keyed so that the map's last entry is the leading term.
#[derive(Clone, Debug)]
struct KPoly {
    terms: BTreeMap<Vec<i32>, (Monomial, u32)>,
}

impl KPoly {
    fn from_poly(f: &Poly, order: &TermOrder) -> Self {
        KPoly { terms: f.terms().map(|(m, c)| (order.key(m), (m.clone(), c))).collect() }
    }

    fn to_poly(&self, field: PrimeField, nvars: usize) -> Poly {
        Poly::from_terms(field, nvars, self.terms.values().cloned())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> Option<&(Monomial, u32)> {
        self.terms.values().next_back()
    }

    fn lead_monomial(&self) -> &Monomial {
        &self.lead().unwrap().0
    }

    /// `self - c * m * g`
    fn sub_mul(&mut self, f: PrimeField, c: u32, m: &Monomial, g: &KPoly, order: &TermOrder) {
        for (t, a) in g.terms.values() {
            let tm = t.mul(m);
            let key = order.key(&tm);
            let delta = f.neg(f.mul(c, *a));
            match self.terms.get_mut(&key) {
                Some(entry) => {
                    entry.1 = f.add(entry.1, delta);
                    if entry.1 == 0 {
                        self.terms.remove(&key);
                    }
                }
                None => {
                    self.terms.insert(key, (tm, delta));
                }
            }
        }
    }

    fn monic(&mut self, f: PrimeField) {
        if let Some(&(_, c)) = self.lead() {
            let inv = f.inv(c);
            for v in self.terms.values_mut() {
                v.1 = f.mul(v.1, inv);
            }
        }
    }
}

/// Full reduction of `p` by `basis` (every term, not only the head).
fn reduce_full(p: &KPoly, basis: &[KPoly], field: PrimeField, order: &TermOrder) -> KPoly {
    let mut rest = p.clone();
    let mut rem = KPoly { terms: BTreeMap::new() };
    while let Some((key, (m, c))) = rest.terms.pop_last() {
        let divisor = basis.iter().find(|g| g.lead_monomial().divides(&m));
        match divisor {
            Some(g) => {
                let (lm, lc) = g.lead().unwrap();
                let q = lm.quotient_of(&m).unwrap();
                let coef = field.mul(c, field.inv(*lc));
                // the head cancels against (m, c), which was already popped
                let mut tail = g.clone();
                tail.terms.pop_last();
                rest.sub_mul(field, coef, &q, &tail, order);
            }
            None => {
                rem.terms.insert(key, (m, c));
            }
        }
    }
    rem
}

fn s_poly(a: &KPoly, b: &KPoly, field: PrimeField, order: &TermOrder) -> KPoly {
    let (ma, ca) = a.lead().unwrap();
    let (mb, cb) = b.lead().unwrap();
    let l = ma.lcm(mb);
    let qa = ma.quotient_of(&l).unwrap();
    let qb = mb.quotient_of(&l).unwrap();
    let mut s = KPoly { terms: BTreeMap::new() };
    s.sub_mul(field, field.neg(field.inv(*ca)), &qa, a, order);
    s.sub_mul(field, field.inv(*cb), &qb, b, order);
    s
}

/// A reduced Gröbner basis together with its initial ideal.
#[derive(Clone, Debug, Serialize)]
pub struct GroebnerBasis {
    pub order: TermOrder,
    #[serde(skip)]
    pub basis: Vec<Poly>,
    pub initial: MonomialIdeal,
    /// S-pairs that went through reduction
    pub pairs_reduced: usize,
}

impl GroebnerBasis {
    /// Largest degree of a basis element (0 for the zero ideal).
    pub fn max_degree(&self) -> u32 {
        self.basis.iter().filter_map(|f| f.max_degree()).max().unwrap_or(0)
    }

    /// One polynomial per line, terms ordered by the basis' term order.
    pub fn render(&self, vars: &[String]) -> String {
        self.basis.iter().map(|f| format!("{}\n", f.display_ordered(vars, &self.order))).collect()
    }

    /// Remainder of `f` on division by the basis.
    pub fn reduce(&self, f: &Poly) -> Poly {
        if self.basis.is_empty() {
            return f.clone();
        }
        let field = f.field();
        let ks: Vec<KPoly> = self.basis.iter().map(|g| KPoly::from_poly(g, &self.order)).collect();
        reduce_full(&KPoly::from_poly(f, &self.order), &ks, field, &self.order).to_poly(field, f.nvars())
    }

    /// Buchberger's criterion, re-checked from scratch on the final basis.
    pub fn verify_s_pairs(&self) -> bool {
        let Some(first) = self.basis.first() else {
            return true;
        };
        let field = first.field();
        let ks: Vec<KPoly> = self.basis.iter().map(|g| KPoly::from_poly(g, &self.order)).collect();
        for a in 0..ks.len() {
            for b in a + 1..ks.len() {
                let s = s_poly(&ks[a], &ks[b], field, &self.order);
                if !reduce_full(&s, &ks, field, &self.order).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// No leading monomial divides a term of another element, all monic.
    pub fn is_reduced(&self) -> bool {
        for (a, f) in self.basis.iter().enumerate() {
            let (lm, lc) = f.leading_term(&self.order).unwrap();
            if lc != 1 {
                return false;
            }
            for (b, g) in self.basis.iter().enumerate() {
                if a != b && g.terms().any(|(m, _)| lm.divides(m)) {
                    return false;
                }
            }
        }
        true
    }
}

/// Reduced Gröbner basis of the ideal of `spec` under `order`.
pub fn buchberger(spec: &RingSpec, order: &TermOrder) -> GroebnerBasis {
    let field = spec.field();
    let n = spec.nvars();
    let mut g: Vec<KPoly> = Vec::new();
    for f in spec.gens() {
        let mut k = KPoly::from_poly(f, order);
        let r = reduce_full(&k, &g, field, order);
        k = r;
        if !k.is_zero() {
            k.monic(field);
            g.push(k);
        }
    }
    // pending pairs, selected by smallest lcm (normal strategy)
    let mut pending: BTreeSet<(Vec<i32>, usize, usize)> = BTreeSet::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    let lcm_key = |g: &[KPoly], a: usize, b: usize| -> Vec<i32> {
        order.key(&g[a].lead_monomial().lcm(g[b].lead_monomial()))
    };
    for b in 0..g.len() {
        for a in 0..b {
            pending.insert((lcm_key(&g, a, b), a, b));
        }
    }
    let mut pairs_reduced = 0;
    while let Some(entry) = pending.pop_first() {
        let (_, a, b) = entry;
        done.insert((a, b));
        let (la, lb) = (g[a].lead_monomial().clone(), g[b].lead_monomial().clone());
        // product criterion
        if la.coprime(&lb) {
            continue;
        }
        // chain criterion: some c with lm(c) | lcm and both other pairs settled
        let l = la.lcm(&lb);
        let chain = (0..g.len()).any(|c| {
            c != a
                && c != b
                && g[c].lead_monomial().divides(&l)
                && done.contains(&(a.min(c), a.max(c)))
                && done.contains(&(b.min(c), b.max(c)))
        });
        if chain {
            continue;
        }
        pairs_reduced += 1;
        let s = s_poly(&g[a], &g[b], field, order);
        let mut r = reduce_full(&s, &g, field, order);
        if r.is_zero() {
            continue;
        }
        r.monic(field);
        g.push(r);
        let c = g.len() - 1;
        for a in 0..c {
            pending.insert((lcm_key(&g, a, c), a, c));
        }
    }
    // minimal basis, then interreduce
    let mut minimal: Vec<KPoly> = Vec::new();
    for (a, f) in g.iter().enumerate() {
        let lm = f.lead_monomial();
        let redundant = g.iter().enumerate().any(|(b, h)| {
            let lh = h.lead_monomial();
            b != a && lh.divides(lm) && (lh != lm || b < a)
        });
        if !redundant {
            minimal.push(f.clone());
        }
    }
    let mut reduced: Vec<KPoly> = Vec::new();
    for a in 0..minimal.len() {
        let others: Vec<KPoly> =
            minimal.iter().enumerate().filter(|&(b, _)| b != a).map(|(_, h)| h.clone()).collect();
        let mut head = minimal[a].clone();
        let lead = head.terms.pop_last().unwrap();
        let mut tail = reduce_full(&head, &others, field, order);
        tail.terms.insert(lead.0, lead.1);
        tail.monic(field);
        reduced.push(tail);
    }
    reduced.sort_by(|x, y| order.cmp(x.lead_monomial(), y.lead_monomial()));
    let basis: Vec<Poly> = reduced.iter().map(|k| k.to_poly(field, n)).collect();
    let initial = MonomialIdeal::new(n, reduced.iter().map(|k| k.lead_monomial().clone()).collect());
    GroebnerBasis { order: order.clone(), basis, initial, pairs_reduced }
}
