//! Claim registry and per-instance verification reports.

use rayon::prelude::*;
use serde::Serialize;

use super::classify::classify_g3;
use super::corpus::CorpusInstance;
use crate::algebra::{binomial, RingSpec, TermOrder};
use crate::diagonal::{ci_criterion_given, diagonal_dims_direct, diagonal_presentation_given, CiVerdict};
use crate::error::Result;
use crate::freeres::{
    deviations, eps3_via_koszul_h1, koszul_check, resolve_over_q, KoszulVerdict, TorDegreeCap,
};
use crate::groebner::{buchberger, cancellation_check, taylor_bound_check, MonomialIdeal};
use crate::koszulhom::{betti_table, default_window, BettiTable};

/// Claim ids with a one-line statement of what is checked.
pub const CLAIMS: &[(&str, &str)] = &[
    ("binomial-betti-bound", "Koszul => beta_i <= C(g,i) and pdim <= g"),
    ("deviation-sandwich", "-eps3 <= C(beta1,2) - beta2 <= eps4 - eps3, with the equality clause"),
    ("aci-deviation-monotone", "almost complete intersection => eps3 <= eps4"),
    ("eps3-koszul-h1", "eps_{3,j} = minimal generators of H_1 of the Koszul complex on f in degree j"),
    ("diagonal-vanishing", "reg_{n+1}(k) = 0 => beta_{i,j} = 0 for j > 2i, i <= n"),
    ("diagonal-generated-in-degree-one", "reg_{n+1}(k) = 0 => Delta_i = Delta_1^i, i <= n"),
    ("diagonal-presentation", "reg_{n+1}(k) = 0, n = pdim => Delta = exterior algebra / quadratic relations"),
    ("diagonal-ci-criterion", "beta_{i,2i} >= C(g,i) for some i >= 2 => complete intersection"),
    ("initial-ideal-semicontinuity", "beta_{i,j}(R) <= beta_{i,j}(Q/J) via consecutive cancellations"),
    ("initial-ideal-taylor-bound", "beta_i(Q/J) <= C(#gens J, i)"),
    ("linear-strand-binomial", "beta_{i,i+1} <= C(n,i); equality at i = 2 => codim 1, linear of length n"),
    ("linear-strand-termination", "beta_{i,i+1} <= 2, i >= 2 => beta_{i+1,i+2} = 0"),
    ("quadratic-betti2-bound", "reg_3(k) = 0 => beta_2 <= 2 C(n,2)"),
    ("mixed-strand-bound", "beta_{2,3} + beta_{2,4} <= C(n+m,2), m = beta_{1,3}(Q/J)"),
    ("cubic-initial-bound", "beta_{2,3} + m <= C(n,2)"),
    ("three-quadrics-pdim", "three quadrics, sum_{j>=4} beta_{2,j} <= 2 => pdim <= 3"),
    (
        "three-quadrics-classification",
        "three quadrics: Koszul <=> one of the four Koszul tables <=> linear strand generates",
    ),
    ("koszul-three-relations-bound", "Koszul, g <= 3 => beta_i <= C(g,i)"),
    ("betti-dual-method", "Koszul homology and the resolution over Q give the same table"),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inapplicable,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inapplicable => "inapplicable",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimRecord {
    pub claim: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub digest: String,
    pub ring: String,
    pub koszul_depth: usize,
    pub koszul: String,
    pub table: BettiTable,
    /// `(ε₃, ε₄)` when both are complete
    pub eps34: Option<(u64, u64)>,
    pub records: Vec<ClaimRecord>,
}

impl VerificationReport {
    pub fn failures(&self) -> Vec<&ClaimRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail).collect()
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn status(&self, claim: &str) -> Option<Status> {
        self.records.iter().find(|r| r.claim == claim).map(|r| r.status)
    }

    pub fn to_records(&self) -> String {
        let mut out = format!("instance {} digest={}\n", self.name, self.digest);
        out.push_str(&format!("koszul n={} verdict={}\n", self.koszul_depth, self.koszul));
        if let Some((e3, e4)) = self.eps34 {
            out.push_str(&format!("eps3 = {e3}\neps4 = {e4}\n"));
        }
        for r in &self.records {
            out.push_str(&format!("claim={} status={} {}\n", r.claim, r.status, r.detail));
        }
        out
    }

    /// Ring text and Betti table of a failing instance.
    pub fn witness_dump(&self) -> String {
        let mut out = format!("--- witness {} ---\n{}", self.name, self.ring);
        out.push_str(&self.table.render());
        for r in self.failures() {
            out.push_str(&format!("FAIL {}: {}\n", r.claim, r.detail));
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct BatteryConfig {
    /// `None` uses `max(5, pdim + 1)`
    pub koszul_depth: Option<usize>,
    pub order: TermOrder,
    /// deviations are computed only when the certified degree bound for
    /// `Tor_4` stays at or below this
    pub max_deviation_degree: usize,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        BatteryConfig { koszul_depth: None, order: TermOrder::grevlex(), max_deviation_degree: 13 }
    }
}

struct Ctx<'a> {
    spec: &'a RingSpec,
    t: BettiTable,
    j_window: usize,
    depth: usize,
    koszul: KoszulVerdict,
    j: MonomialIdeal,
    t_j: BettiTable,
    codim: usize,
}

impl Ctx<'_> {
    fn g(&self) -> usize {
        self.spec.g()
    }

    /// `reg_n(k) = 0`, reusing the main verdict when it decides the question.
    fn reg_zero(&self, n: usize) -> Result<bool> {
        match self.koszul {
            KoszulVerdict::KoszulUpTo(m) if m >= n => Ok(true),
            KoszulVerdict::FailsAt(i, _) if i <= n => Ok(false),
            _ => Ok(koszul_check(self.spec, n, None)?.is_koszul()),
        }
    }
}

fn rec(claim: &'static str, status: Status, detail: impl Into<String>) -> ClaimRecord {
    ClaimRecord { claim, status, detail: detail.into() }
}

fn check(claim: &'static str, ok: bool, detail: impl Into<String>) -> ClaimRecord {
    rec(claim, if ok { Status::Pass } else { Status::Fail }, detail)
}

fn na(claim: &'static str, why: &str) -> ClaimRecord {
    rec(claim, Status::Inapplicable, why)
}

fn binom(n: usize, k: usize) -> u64 {
    binomial(n as u64, k as u64)
}

/// Runs every registered claim on one instance.
pub fn verify_instance(inst: &CorpusInstance, cfg: &BatteryConfig) -> Result<VerificationReport> {
    let spec = &inst.spec;
    let (i_max, j_window) = default_window(spec);
    let t = betti_table(spec, i_max, j_window);
    let depth = cfg.koszul_depth.unwrap_or(5.max(t.pdim() + 1));
    let koszul = koszul_check(spec, depth, None)?;
    let gb = buchberger(spec, &cfg.order);
    let j = gb.initial.clone();
    let jspec = j.to_spec(spec.field(), spec.vars().to_vec())?;
    let (ji, jj) = default_window(&jspec);
    let t_j = betti_table(&jspec, ji, jj);
    let (_, codim) = j.dimension();
    let ctx = Ctx { spec, t, j_window, depth, koszul, j, t_j, codim };
    let mut records = Vec::new();
    records.extend(question11(&ctx));
    let (dev, eps34) = deviation_claims(&ctx, cfg)?;
    records.extend(dev);
    records.extend(diagonal_claims(&ctx)?);
    records.extend(initial_ideal_claims(&ctx));
    records.extend(prop42(&ctx)?);
    records.extend(three_quadrics(&ctx)?);
    records.push(dual_method(&ctx)?);
    let order: Vec<&str> = CLAIMS.iter().map(|c| c.0).collect();
    records.sort_by_key(|r| order.iter().position(|c| *c == r.claim));
    Ok(VerificationReport {
        name: inst.name.clone(),
        digest: spec.digest(),
        ring: spec.to_text(),
        koszul_depth: depth,
        koszul: ctx.koszul.to_string(),
        table: ctx.t,
        eps34,
        records,
    })
}

/// Binomial bounds for Koszul rings.
fn question11(c: &Ctx) -> Vec<ClaimRecord> {
    let g = c.g();
    let bound_ok = |t: &BettiTable| {
        let bad: Vec<String> = (0..=t.i_max)
            .filter(|&i| t.total(i) > binom(g, i))
            .map(|i| format!("beta_{i}={} > C({g},{i})={}", t.total(i), binom(g, i)))
            .collect();
        (bad.is_empty() && t.pdim() <= g, bad)
    };
    let totals: Vec<String> = c.t.totals().iter().map(|v| v.to_string()).collect();
    let values = format!("betti=({}) g={g} pdim={}", totals.join(","), c.t.pdim());
    let mut out = Vec::new();
    if c.koszul.is_koszul() {
        let (ok, bad) = bound_ok(&c.t);
        out.push(check("binomial-betti-bound", ok, format!("{values} {}", bad.join(" "))));
        if g <= 3 {
            out.push(check("koszul-three-relations-bound", ok, values));
        } else {
            out.push(na("koszul-three-relations-bound", "more than three relations"));
        }
    } else {
        out.push(rec("binomial-betti-bound", Status::Inapplicable, format!("not koszul: {values}")));
        out.push(na("koszul-three-relations-bound", "not koszul"));
    }
    out
}

fn deviation_claims(c: &Ctx, cfg: &BatteryConfig) -> Result<(Vec<ClaimRecord>, Option<(u64, u64)>)> {
    let ids = ["deviation-sandwich", "aci-deviation-monotone", "eps3-koszul-h1"];
    let cap = TorDegreeCap::of(c.spec).cap(4) as usize;
    if cap > cfg.max_deviation_degree {
        let why = format!("Tor_4 degree bound {cap} exceeds {}", cfg.max_deviation_degree);
        return Ok((ids.iter().map(|id| na(id, &why)).collect(), None));
    }
    let d = deviations(c.spec, 4, cap)?;
    let (e3, e4) = (d.total(3), d.total(4));
    let mut out = Vec::new();
    let b1 = c.t.total(1) as i64;
    let b2 = c.t.total(2) as i64;
    let mid = binom(b1 as usize, 2) as i64 - b2;
    let (lo, hi) = (-(e3 as i64), e4 as i64 - e3 as i64);
    let mut ok = lo <= mid && mid <= hi;
    let mut detail = format!("{lo} <= {mid} <= {hi}");
    let linear = (1..=4).all(|i| (i + 1..=cap).all(|j| d.get(i, j) == 0));
    if linear {
        let eq = mid == hi;
        let b34 = c.t.get(3, 4);
        ok &= eq == (b34 == 0);
        detail.push_str(&format!(" equality={eq} beta_34={b34}"));
    }
    out.push(check("deviation-sandwich", ok, detail));
    if c.g() == c.codim + 1 {
        out.push(check("aci-deviation-monotone", e3 <= e4, format!("eps3={e3} eps4={e4} codim={}", c.codim)));
    } else {
        out.push(na("aci-deviation-monotone", "not an almost complete intersection"));
    }
    let h1 = eps3_via_koszul_h1(c.spec, cap)?;
    let series: Vec<u64> = (0..=cap).map(|j| d.get(3, j)).collect();
    out.push(check("eps3-koszul-h1", h1 == series, format!("h1={h1:?} series={series:?}")));
    Ok((out, Some((e3, e4))))
}

fn diagonal_claims(c: &Ctx) -> Result<Vec<ClaimRecord>> {
    let mut out = Vec::new();
    let n = c.depth - 1;
    let koszul = c.koszul.is_koszul();
    if koszul {
        let bad: Vec<(usize, usize, u64)> =
            c.t.nonzero().into_iter().filter(|&(i, j, _)| i <= n && j > 2 * i).collect();
        out.push(check("diagonal-vanishing", bad.is_empty(), format!("n={n} offending={bad:?}")));
    } else {
        out.push(na("diagonal-vanishing", "reg_{n+1}(k) = 0 not established"));
    }
    if !c.spec.is_quadratic() {
        for id in ["diagonal-generated-in-degree-one", "diagonal-presentation", "diagonal-ci-criterion"] {
            out.push(na(id, "non-quadratic generator"));
        }
        return Ok(out);
    }
    let dims = diagonal_dims_direct(c.spec)?;
    if koszul {
        let top = n.min(c.g());
        let ok = (0..=top).all(|i| dims.image[i] == dims.homology[i]);
        out.push(check(
            "diagonal-generated-in-degree-one",
            ok,
            format!("image={:?} homology={:?}", dims.image, dims.homology),
        ));
    } else {
        out.push(na("diagonal-generated-in-degree-one", "reg_{n+1}(k) = 0 not established"));
    }
    let pd = c.t.pdim();
    let hyp = c.reg_zero(pd + 1)?;
    if hyp {
        let verdict = KoszulVerdict::KoszulUpTo(pd + 1);
        let p = diagonal_presentation_given(c.spec, &verdict)?;
        let g = c.g();
        let rel_ok = g < 2 || p.relations.len() as u64 == binom(g, 2) - dims.image[2] as u64;
        let ok = p.hilbert == dims.image && p.hilbert == dims.homology && rel_ok;
        out.push(check(
            "diagonal-presentation",
            ok,
            format!("hilbert={:?} direct={:?} p={}", p.hilbert, dims.image, p.relations.len()),
        ));
    } else {
        out.push(na("diagonal-presentation", "reg_{pdim+1}(k) = 0 not established"));
    }
    out.push(match ci_criterion_given(c.spec, &c.t, hyp) {
        CiVerdict::Inapplicable => na("diagonal-ci-criterion", "hypothesis not established"),
        CiVerdict::NotTriggered => rec("diagonal-ci-criterion", Status::Pass, "not triggered"),
        CiVerdict::Consistent { i } => {
            rec("diagonal-ci-criterion", Status::Pass, format!("triggered at i={i}, complete intersection"))
        }
        CiVerdict::Violation { i, g, codim } => {
            rec("diagonal-ci-criterion", Status::Fail, format!("triggered at i={i} but g={g} codim={codim}"))
        }
    });
    Ok(out)
}

fn initial_ideal_claims(c: &Ctx) -> Vec<ClaimRecord> {
    let v = cancellation_check(&c.t, &c.t_j);
    let ok = v.feasible && v.semicontinuity_violations.is_empty();
    vec![
        check(
            "initial-ideal-semicontinuity",
            ok,
            format!(
                "cancellations={:?} violations={:?} witness={:?}",
                v.cancellations, v.semicontinuity_violations, v.witness
            ),
        ),
        check(
            "initial-ideal-taylor-bound",
            taylor_bound_check(&c.j, &c.t_j),
            format!("gens(J)={} betti(Q/J)={:?}", c.j.len(), c.t_j.totals()),
        ),
    ]
}

fn prop42(c: &Ctx) -> Result<Vec<ClaimRecord>> {
    let ids = [
        "linear-strand-binomial",
        "linear-strand-termination",
        "quadratic-betti2-bound",
        "mixed-strand-bound",
        "cubic-initial-bound",
    ];
    if !c.spec.is_quadratic() || c.g() == 0 {
        return Ok(ids.iter().map(|id| na(id, "needs quadratic generators")).collect());
    }
    let t = &c.t;
    let n = t.get(1, 2) as usize;
    let mut out = Vec::new();
    // (1)
    let bad: Vec<usize> = (1..=t.i_max).filter(|&i| t.get(i, i + 1) > binom(n, i)).collect();
    let mut ok = bad.is_empty();
    let mut detail = format!("n={n} over_bound_at={bad:?}");
    if n >= 2 && t.get(2, 3) == binom(n, 2) {
        let linear = t.nonzero().iter().all(|&(i, j, _)| i == 0 || j == i + 1);
        let eq_ok = c.codim == 1 && linear && t.pdim() == n;
        ok &= eq_ok;
        detail.push_str(&format!(" equality: codim={} linear={linear} pdim={}", c.codim, t.pdim()));
    }
    out.push(check(ids[0], ok, detail));
    // (2)
    let bad: Vec<usize> =
        (2..=t.i_max).filter(|&i| t.get(i, i + 1) <= 2 && t.get(i + 1, i + 2) != 0).collect();
    out.push(check(ids[1], bad.is_empty(), format!("offending_i={bad:?}")));
    // (3)
    if c.reg_zero(3)? {
        let b2 = t.total(2);
        out.push(check(ids[2], b2 <= 2 * binom(n, 2), format!("beta2={b2} bound={}", 2 * binom(n, 2))));
    } else {
        out.push(na(ids[2], "reg_3(k) != 0"));
    }
    // (4), (5)
    let m = c.j.degree_counts().get(3).copied().unwrap_or(0);
    let lhs = t.get(2, 3) + t.get(2, 4);
    out.push(check(
        ids[3],
        lhs <= binom(n + m, 2),
        format!("beta23+beta24={lhs} m={m} bound={}", binom(n + m, 2)),
    ));
    out.push(check(
        ids[4],
        t.get(2, 3) + m as u64 <= binom(n, 2),
        format!("beta23={} m={m} bound={}", t.get(2, 3), binom(n, 2)),
    ));
    Ok(out)
}

fn three_quadrics(c: &Ctx) -> Result<Vec<ClaimRecord>> {
    if c.g() != 3 || !c.spec.is_quadratic() {
        return Ok(vec![
            na("three-quadrics-pdim", "needs three quadrics"),
            na("three-quadrics-classification", "needs three quadrics"),
        ]);
    }
    let mut out = Vec::new();
    let tail: u64 = (4..=c.t.j_max).map(|j| c.t.get(2, j)).sum();
    if tail <= 2 {
        out.push(check(
            "three-quadrics-pdim",
            c.t.pdim() <= 3,
            format!("sum beta_2j(j>=4)={tail} pdim={}", c.t.pdim()),
        ));
    } else {
        out.push(na("three-quadrics-pdim", "sum beta_2j(j>=4) > 2"));
    }
    let cl = classify_g3(c.spec)?;
    out.push(check(
        "three-quadrics-classification",
        cl.agree,
        format!("table={:?} koszul={} strand={}", cl.koszul_table, cl.koszul, cl.strand_generated),
    ));
    Ok(out)
}

fn dual_method(c: &Ctx) -> Result<ClaimRecord> {
    let r = resolve_over_q(c.spec, c.j_window)?;
    let t = r.betti_table(c.spec);
    Ok(check(
        "betti-dual-method",
        t.same_entries(&c.t) && r.resolution.is_minimal(),
        format!("resolution={:?}", t.totals()),
    ))
}

/// Verifies every instance in parallel; reports keep the input order.
pub fn verify_corpus(instances: &[CorpusInstance], cfg: &BatteryConfig) -> Result<Vec<VerificationReport>> {
    instances.par_iter().map(|i| verify_instance(i, cfg)).collect()
}
