use std::path::PathBuf;

use koszul_lab::cli::{run, Outcome, EXIT_INAPPLICABLE, EXIT_OK, EXIT_USAGE};

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn ring(name: &str) -> String {
    corpus().join(format!("{name}.ring")).to_string_lossy().into_owned()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(corpus().join("golden").join(name)).unwrap()
}

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("koszul-lab").chain(args.iter().copied()))
}

#[test]
fn betti_matches_golden_for_every_corpus_file() {
    for name in [
        "aci-edges",
        "aci-four",
        "ci-two",
        "cubic",
        "empty",
        "koszul3-ci",
        "koszul3-linear",
        "koszul3-minors",
        "koszul3-mixed",
        "residual",
    ] {
        let out = cli(&["betti", &ring(name)]);
        assert_eq!(out.code, EXIT_OK, "{name}: {}", out.stderr);
        assert_eq!(out.stdout, golden(&format!("{name}.betti")), "{name}");
    }
}

#[test]
fn verify_residual_matches_golden() {
    let path = ring("residual");
    let out = cli(&["verify", &path]);
    assert_eq!(out.code, EXIT_OK);
    // the instance line carries the path given on the command line
    let expected = golden("residual.verify");
    let strip = |s: &str| s.lines().skip(1).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&out.stdout), strip(&expected));
    assert!(out.stdout.contains("eps3 = 1\neps4 = 2\n"));
}

#[test]
fn deviations_and_witness_match_golden() {
    let out = cli(&["deviations", &ring("residual")]);
    assert_eq!(out.stdout, golden("residual.deviations"));
    let out = cli(&["koszulcheck", &ring("cubic")]);
    assert_eq!(out.stdout, golden("cubic.koszulcheck"));
}

#[test]
fn records_round_trip_through_betti_table() {
    let out = cli(&["betti", &ring("residual"), "--format", "records"]);
    let t = koszul_lab::koszulhom::BettiTable::from_records(&out.stdout).unwrap();
    assert_eq!(t.render(), golden("residual.betti"));
}

#[test]
fn json_output_parses() {
    for verb in ["betti", "deviations", "koszulcheck", "classify3", "diagonal", "groebner", "resolve"] {
        let out = cli(&[verb, &ring("koszul3-mixed"), "--format", "json"]);
        assert_eq!(out.code, EXIT_OK, "{verb}: {}", out.stderr);
        serde_json::from_str::<serde_json::Value>(&out.stdout).unwrap_or_else(|e| panic!("{verb}: {e}"));
    }
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&["betti", "/nonexistent.ring"]).code, EXIT_USAGE);
    assert_eq!(cli(&["betti", "--no-such-flag"]).code, EXIT_USAGE);
    assert_eq!(cli(&["betti", &ring("residual"), "--imax", "1", "--jmax", "1"]).code, EXIT_OK);
    assert_eq!(cli(&["diagonal", &ring("cubic")]).code, EXIT_INAPPLICABLE);
    assert_eq!(cli(&["classify3", &ring("ci-two")]).code, EXIT_INAPPLICABLE);
    assert_eq!(cli(&["groebner", &ring("koszul3-ci"), "--perm", "1,1,2"]).code, EXIT_USAGE);
    assert_eq!(cli(&["groebner", &ring("koszul3-ci"), "--perm", "0,1,2"]).code, EXIT_USAGE);
    assert_eq!(cli(&["--help"]).code, EXIT_OK);
}

#[test]
fn parse_errors_report_position() {
    let dir = std::env::temp_dir().join("koszul-lab-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.ring");
    std::fs::write(&bad, "vars = x,y\n[ideal]\nx^2 + y\n").unwrap();
    let out = cli(&["betti", bad.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("line 3"), "{}", out.stderr);
}

#[test]
fn small_window_is_flagged() {
    let out = cli(&["betti", &ring("residual"), "--imax", "2", "--jmax", "3"]);
    assert!(out.stdout.contains("window does not cover"));
}

#[test]
fn groebner_with_permutation() {
    let out = cli(&["groebner", &ring("koszul3-mixed"), "--order", "lex", "--perm", "3,1,2"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.starts_with("# order lex[3,1,2]\n"));
}

#[test]
fn search_is_reproducible() {
    let a = cli(&["search-nonkoszul", "--seed", "1", "--budget", "30"]);
    let b = cli(&["search-nonkoszul", "--seed", "1", "--budget", "30"]);
    assert_eq!(a, b);
    assert!(a.stdout.contains("reg_4(k)=1"));
}
