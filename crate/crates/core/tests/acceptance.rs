//! Acceptance suite: one pass/fail line per criterion.
//!
//! Runs without the libtest harness so the lines always reach stdout; the
//! process exits nonzero if any criterion fails.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use koszul_lab::algebra::{binomial, PrimeField, RingSpec};
use koszul_lab::battery::{
    classify_g3, curated, random_corpus, random_fixed, verify_corpus, BatteryConfig, CorpusInstance,
};
use koszul_lab::cli::run;
use koszul_lab::diagonal::{diagonal_dims_direct, diagonal_presentation};
use koszul_lab::freeres::{
    deviations, eps3_via_koszul_h1, koszul_check, resolve_over_q, tor_degree_bound, KoszulVerdict,
};
use koszul_lab::koszulhom::{betti_table, default_window};

// Pinned limits. Arithmetic is exact, so every comparison is exact equality.
const TABLE_LIMIT: Duration = Duration::from_secs(5);
const RESIDUAL_LIMIT: Duration = Duration::from_secs(30);
const DUAL_METHOD_LIMIT: Duration = Duration::from_secs(600);
const DUAL_METHOD_COUNT: usize = 200;
const DUAL_METHOD_SEED: u64 = 20240601;
const BATTERY_RANDOM_COUNT: usize = 200;
const BATTERY_SEED: u64 = 7;
const CLASSIFY_COUNT: usize = 100;
const CLASSIFY_SEED: u64 = 3;

/// Betti tables of the Koszul algebras with three quadratic relations, as printed (row = j - i).
const KOSZUL_G3_TABLES: [(&str, &str); 4] = [
    (
        "koszul3-ci",
        "        0  1  2  3\ntotal:  1  3  3  1\n    0:  1 -- -- --\n    1: --  3 -- --\n    2: -- --  3 --\n    3: -- -- --  1\n",
    ),
    (
        "koszul3-mixed",
        "        0  1  2  3\ntotal:  1  3  3  1\n    0:  1 -- -- --\n    1: --  3  1 --\n    2: -- --  2  1\n",
    ),
    ("koszul3-minors", "        0  1  2\ntotal:  1  3  2\n    0:  1 -- --\n    1: --  3  2\n"),
    ("koszul3-linear", "        0  1  2  3\ntotal:  1  3  3  1\n    0:  1 -- -- --\n    1: --  3  3  1\n"),
];

struct Line {
    ok: bool,
    text: String,
}

fn corpus_path(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(format!("{name}.ring"))
        .to_string_lossy()
        .into_owned()
}

fn field() -> PrimeField {
    PrimeField::default()
}

/// Curated files plus the seeded random sweep used by criteria 4, 5, 7, 8.
fn corpus() -> Vec<CorpusInstance> {
    let mut v = curated(None).unwrap();
    v.extend(random_corpus(BATTERY_SEED, BATTERY_RANDOM_COUNT, 1..=4, 4, field()));
    v
}

fn criterion_1() -> Line {
    let mut bad = Vec::new();
    let mut slowest = Duration::ZERO;
    for (name, expected) in KOSZUL_G3_TABLES {
        let t = Instant::now();
        let out = run(["koszul-lab", "betti", corpus_path(name).as_str()]);
        let dt = t.elapsed();
        slowest = slowest.max(dt);
        if out.code != 0 || out.stdout != expected || dt >= TABLE_LIMIT {
            bad.push(format!("{name} ({dt:?})"));
        }
    }
    Line {
        ok: bad.is_empty(),
        text: format!("Koszul three-quadric tables, 4 ideals, slowest {slowest:.2?} < {TABLE_LIMIT:?}; mismatches {bad:?}"),
    }
}

fn criterion_2() -> Line {
    let t = Instant::now();
    let out = run(["koszul-lab", "betti", corpus_path("residual").as_str(), "--format", "records"]);
    let table = koszul_lab::koszulhom::BettiTable::from_records(&out.stdout).unwrap();
    let spec = curated(None).unwrap().into_iter().find(|i| i.name == "residual").unwrap().spec;
    let d = deviations(&spec, 4, 10).unwrap();
    let dt = t.elapsed();
    let nz = table.nonzero();
    let ok = nz == [(0, 0, 1), (1, 2, 3), (2, 4, 4), (3, 5, 2)]
        && d.total(3) == 1
        && d.total(4) == 2
        && d.is_complete(3)
        && d.is_complete(4)
        && dt < RESIDUAL_LIMIT;
    Line {
        ok,
        text: format!(
            "residual ideal: betti {nz:?}, eps3 = {}, eps4 = {}, {dt:.2?} < {RESIDUAL_LIMIT:?}",
            d.total(3),
            d.total(4)
        ),
    }
}

fn criterion_3() -> Line {
    let t = Instant::now();
    let inst = random_corpus(DUAL_METHOD_SEED, DUAL_METHOD_COUNT, 1..=4, 4, field());
    let mut bad = Vec::new();
    for i in &inst {
        let (im, jm) = default_window(&i.spec);
        let a = betti_table(&i.spec, im, jm);
        let b = resolve_over_q(&i.spec, jm).unwrap().betti_table(&i.spec);
        if a.nonzero() != b.nonzero() {
            bad.push(i.name.clone());
        }
    }
    let dt = t.elapsed();
    Line {
        ok: bad.is_empty() && dt < DUAL_METHOD_LIMIT,
        text: format!(
            "Koszul homology vs minimal resolution on {} seeded instances (e <= 4, g <= 4), {dt:.2?} < {DUAL_METHOD_LIMIT:?}; mismatches {bad:?}",
            inst.len()
        ),
    }
}

fn criterion_4(corpus: &[CorpusInstance]) -> Line {
    let mut checked = 0;
    let mut bad = Vec::new();
    for i in corpus {
        let s = &i.spec;
        if s.g() == 0 || !s.is_quadratic() {
            continue;
        }
        if !koszul_check(s, s.nvars() + 1, None).unwrap().is_koszul() {
            continue;
        }
        checked += 1;
        let p = diagonal_presentation(s).unwrap();
        let d = diagonal_dims_direct(s).unwrap();
        let pad = |v: &[usize]| {
            let mut v = v.to_vec();
            v.resize(p.hilbert.len().max(v.len()), 0);
            v
        };
        let hil = pad(&p.hilbert);
        let count_ok = p.relations.len() as u64 + p.hilbert.get(2).copied().unwrap_or(0) as u64
            == binomial(s.g() as u64, 2);
        if hil != pad(&d.image) || hil != pad(&d.homology) || !count_ok {
            bad.push(i.name.clone());
        }
    }
    Line {
        ok: bad.is_empty() && checked > 0,
        text: format!(
            "diagonal presentation = direct products on {checked} Koszul instances; mismatches {bad:?}"
        ),
    }
}

fn criterion_5(corpus: &[CorpusInstance]) -> Line {
    let reports = verify_corpus(corpus, &BatteryConfig::default()).unwrap();
    let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).collect();
    for r in &failed {
        print!("{}", r.witness_dump());
    }
    let checks: usize = reports
        .iter()
        .map(|r| r.records.iter().filter(|c| c.status != koszul_lab::battery::Status::Inapplicable).count())
        .sum();
    Line {
        ok: failed.is_empty(),
        text: format!(
            "claim battery on {} instances, {checks} applicable checks, {} violating instances",
            reports.len(),
            failed.len()
        ),
    }
}

fn criterion_6() -> Line {
    let inst = random_fixed(CLASSIFY_SEED, CLASSIFY_COUNT, 3, 3, field());
    let mut bad = Vec::new();
    let mut non_koszul = 0;
    for i in &inst {
        let c = classify_g3(&i.spec).unwrap();
        let depth5 = koszul_check(&i.spec, 5, None).unwrap().is_koszul();
        let listed = c.koszul_table.is_some();
        if !c.koszul.is_koszul() {
            non_koszul += 1;
        }
        if !(depth5 == listed && listed == c.strand_generated) {
            bad.push(i.name.clone());
        }
    }
    Line {
        ok: bad.is_empty(),
        text: format!(
            "three-quadric classification on {} instances (e = 3), {non_koszul} non-Koszul; disagreements {bad:?}",
            inst.len()
        ),
    }
}

fn criterion_7(corpus: &[CorpusInstance]) -> Line {
    let mut checked = 0;
    let mut bad = Vec::new();
    for i in corpus {
        let s = &i.spec;
        let n = 5.max(s.nvars() + 1);
        if !matches!(koszul_check(s, n, None).unwrap(), KoszulVerdict::KoszulUpTo(_)) {
            continue;
        }
        checked += 1;
        let (im, jm) = default_window(s);
        let t = betti_table(s, im, jm);
        if t.nonzero().iter().any(|&(i, j, _)| j > 2 * i) {
            bad.push(i.name.clone());
        }
    }
    Line {
        ok: bad.is_empty() && checked > 0,
        text: format!("beta_ij = 0 for j > 2i on {checked} Koszul instances; violations {bad:?}"),
    }
}

fn criterion_8(corpus: &[CorpusInstance]) -> Line {
    let mut bad = Vec::new();
    let mut checked = 0;
    for i in corpus {
        let s: &RingSpec = &i.spec;
        let j = tor_degree_bound(s, 3).max(4);
        let d = deviations(s, 3, j).unwrap();
        let h1 = eps3_via_koszul_h1(s, j).unwrap();
        let series: Vec<u64> = (0..=j).map(|jj| d.get(3, jj)).collect();
        checked += 1;
        if !d.is_complete(3)
            || h1.iter().copied().chain(std::iter::repeat(0)).take(j + 1).ne(series.iter().copied())
        {
            bad.push(i.name.clone());
        }
    }
    Line {
        ok: bad.is_empty(),
        text: format!(
            "eps3 from Koszul H_1 = eps3 from the Poincare series on {checked} instances; mismatches {bad:?}"
        ),
    }
}

fn main() {
    let corpus = corpus();
    let steps: Vec<(usize, Box<dyn Fn() -> Line + '_>)> = vec![
        (1, Box::new(criterion_1)),
        (2, Box::new(criterion_2)),
        (3, Box::new(criterion_3)),
        (4, Box::new(|| criterion_4(&corpus))),
        (5, Box::new(|| criterion_5(&corpus))),
        (6, Box::new(criterion_6)),
        (7, Box::new(|| criterion_7(&corpus))),
        (8, Box::new(|| criterion_8(&corpus))),
    ];
    let mut failed = 0;
    for (k, f) in steps {
        let t = Instant::now();
        let line = f();
        if !line.ok {
            failed += 1;
        }
        println!(
            "criterion {k}: {} ({:.2?}) {}",
            if line.ok { "PASS" } else { "FAIL" },
            t.elapsed(),
            line.text
        );
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
