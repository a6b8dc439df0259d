//! Command-line front end.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::{parse_ring, OrderKind, PrimeField, RingSpec, TermOrder, DEFAULT_PRIME};
use crate::battery::{
    classify_g3, curated, nonkoszul_search, random_corpus, verify_corpus, BatteryConfig, CorpusInstance,
};
use crate::diagonal::{diagonal_dims_direct, diagonal_presentation};
use crate::error::{Error, Result};
use crate::freeres::{
    deviations, koszul_check, resolve_k_over_r, resolve_over_q, tor_degree_bound, DEFAULT_DEVIATION_WINDOW,
};
use crate::groebner::buchberger;
use crate::koszulhom::{betti_table, default_window, CertifiedWindow};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INAPPLICABLE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "koszul-lab",
    version,
    about = "Betti tables, Koszul homology and deviations of graded algebras over F_p"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Format {
    #[default]
    Table,
    Records,
    Json,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Order {
    #[default]
    Grevlex,
    Lex,
}

#[derive(clap::Args, Debug)]
struct Common {
    /// ring file
    file: String,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    /// prime overriding the one in the file
    #[arg(long)]
    p: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Betti table of R over Q from Koszul homology
    Betti {
        #[command(flatten)]
        c: Common,
        #[arg(long)]
        imax: Option<usize>,
        #[arg(long)]
        jmax: Option<usize>,
    },
    /// Resolution of R over Q, and of k over R to --steps
    Resolve {
        #[command(flatten)]
        c: Common,
        #[arg(long, default_value_t = 4)]
        steps: usize,
        #[arg(long)]
        jmax: Option<usize>,
    },
    /// Linearity of the resolution of k over R to --steps
    Koszulcheck {
        #[command(flatten)]
        c: Common,
        #[arg(long, default_value_t = 5)]
        steps: usize,
        #[arg(long)]
        jmax: Option<usize>,
    },
    /// Deviations from the Poincaré series of k
    Deviations {
        #[command(flatten)]
        c: Common,
        #[arg(long)]
        imax: Option<usize>,
        #[arg(long)]
        jmax: Option<usize>,
    },
    /// Presentation and dimensions of the diagonal subalgebra
    Diagonal {
        #[command(flatten)]
        c: Common,
    },
    /// Reduced Gröbner basis and initial ideal
    Groebner {
        #[command(flatten)]
        c: Common,
        #[arg(long, value_enum, default_value_t)]
        order: Order,
        /// variable priority as 1-based indices, e.g. 3,1,2
        #[arg(long, value_delimiter = ',')]
        perm: Option<Vec<usize>>,
    },
    /// Classification of a ring defined by three quadrics
    Classify3 {
        #[command(flatten)]
        c: Common,
    },
    /// Claim battery on the given files, or on the curated and random corpus
    Verify {
        files: Vec<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, value_enum, default_value_t)]
        order: Order,
        #[arg(long, value_delimiter = ',')]
        perm: Option<Vec<usize>>,
        /// Koszul depth; default max(5, pdim + 1)
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// number of random instances added when no file is given
        #[arg(long, default_value_t = 50)]
        budget: usize,
    },
    /// Random search for the non-Koszul table
    SearchNonkoszul {
        #[arg(long, default_value_t = 3)]
        vars: usize,
        #[arg(long, default_value_t = 3)]
        gens: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        budget: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        p: Option<u64>,
    },
}

/// Exit code with captured standard output and error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Config(_) | Error::WindowTooSmall(_) => EXIT_USAGE,
        Error::Unsupported(_) => EXIT_INAPPLICABLE,
        Error::Internal(_) => EXIT_FAILURE,
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(cli.command) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => Outcome { code: error_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn load(path: &str, p: Option<u64>) -> Result<RingSpec> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {path}: {e}")))?;
    parse_ring(&text, p).map_err(|e| match e {
        Error::Parse { line, col, msg } => Error::Parse { line, col, msg: format!("{path}: {msg}") },
        other => other,
    })
}

fn term_order(order: Order, perm: Option<Vec<usize>>, nvars: usize) -> Result<TermOrder> {
    let kind = match order {
        Order::Grevlex => OrderKind::Grevlex,
        Order::Lex => OrderKind::Lex,
    };
    match perm {
        None => Ok(match kind {
            OrderKind::Grevlex => TermOrder::grevlex(),
            OrderKind::Lex => TermOrder::lex(),
        }),
        Some(p) => {
            if p.contains(&0) {
                return Err(Error::Config("--perm indices start at 1".into()));
            }
            TermOrder::with_perm(kind, p.iter().map(|k| k - 1).collect(), nvars)
        }
    }
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| Error::Internal(format!("serialization failed: {e}")))
}

fn field_of(p: Option<u64>) -> Result<PrimeField> {
    PrimeField::new(p.unwrap_or(DEFAULT_PRIME as u64))
}

fn dispatch(cmd: Command) -> Result<(i32, String)> {
    let mut out = String::new();
    match cmd {
        Command::Betti { c, imax, jmax } => {
            let spec = load(&c.file, c.p)?;
            let (di, dj) = default_window(&spec);
            let (i, j) = (imax.unwrap_or(di), jmax.unwrap_or(dj));
            let mut t = betti_table(&spec, i, j);
            t.complete = CertifiedWindow::of(&spec).covered_by(i, j);
            match c.format {
                Format::Table => {
                    out.push_str(&t.render());
                    if !t.complete {
                        out.push_str("(window does not cover every nonzero entry)\n");
                    }
                }
                Format::Records => out.push_str(&t.to_records()),
                Format::Json => out.push_str(&json(&t)?),
            }
        }
        Command::Resolve { c, steps, jmax } => {
            let spec = load(&c.file, c.p)?;
            let (_, dj) = default_window(&spec);
            let q = resolve_over_q(&spec, dj)?;
            let j = jmax.unwrap_or_else(|| tor_degree_bound(&spec, steps)).max(steps);
            let (_, rep) = resolve_k_over_r(&spec, steps, j)?;
            match c.format {
                Format::Table => {
                    out.push_str("resolution of R over Q\n");
                    for s in q.steps() {
                        let degs: Vec<String> = s.degrees.iter().map(|d| d.to_string()).collect();
                        let _ =
                            writeln!(out, "F_{}: rank {} degrees [{}]", s.index, s.rank(), degs.join(" "));
                    }
                    out.push_str("\nTor^R(k,k), row j - i\n");
                    out.push_str(&rep.render());
                    let _ = writeln!(out, "{}", rep.verdict_line());
                }
                Format::Records => {
                    for s in q.steps() {
                        for d in &s.degrees {
                            let _ = writeln!(out, "step={} degree={d}", s.index);
                        }
                    }
                    out.push_str(&rep.to_records());
                }
                Format::Json => {
                    #[derive(Serialize)]
                    struct Doc<'a> {
                        over_q: Vec<&'a crate::freeres::ResolutionStep>,
                        k_over_r: &'a crate::freeres::RegularityReport,
                    }
                    out.push_str(&json(&Doc { over_q: q.steps().iter().collect(), k_over_r: &rep })?);
                }
            }
        }
        Command::Koszulcheck { c, steps, jmax } => {
            let spec = load(&c.file, c.p)?;
            let v = koszul_check(&spec, steps, jmax)?;
            match c.format {
                Format::Json => out.push_str(&json(&v)?),
                _ => {
                    let _ = writeln!(out, "{v}");
                }
            }
        }
        Command::Deviations { c, imax, jmax } => {
            let spec = load(&c.file, c.p)?;
            let (i, j) =
                (imax.unwrap_or(DEFAULT_DEVIATION_WINDOW.0), jmax.unwrap_or(DEFAULT_DEVIATION_WINDOW.1));
            let d = deviations(&spec, i, j)?;
            match c.format {
                Format::Table => out.push_str(&d.render()),
                Format::Records => out.push_str(&d.to_records()),
                Format::Json => out.push_str(&json(&d)?),
            }
        }
        Command::Diagonal { c } => {
            let spec = load(&c.file, c.p)?;
            let p = diagonal_presentation(&spec)?;
            let d = diagonal_dims_direct(&spec)?;
            match c.format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Doc<'a> {
                        presentation: &'a crate::diagonal::DiagonalPresentation,
                        direct: &'a crate::diagonal::DiagonalDims,
                    }
                    out.push_str(&json(&Doc { presentation: &p, direct: &d })?);
                }
                Format::Records => {
                    out.push_str(&p.to_records());
                    let _ = writeln!(out, "image = {:?}\nhomology = {:?}", d.image, d.homology);
                }
                Format::Table => {
                    let _ = writeln!(out, "relations: {}", p.relations.len());
                    for rel in &p.relations {
                        let terms: Vec<String> = rel
                            .iter()
                            .map(|&(i, j, c)| format!("{}*X{}X{}", spec.field().signed(c), i + 1, j + 1))
                            .collect();
                        let _ = writeln!(out, "  {}", terms.join(" + "));
                    }
                    let _ = writeln!(out, "hilbert (presentation): {:?}", p.hilbert);
                    let _ = writeln!(out, "image of exterior powers: {:?}", d.image);
                    let _ = writeln!(out, "H_(i,2i) dimensions: {:?}", d.homology);
                    let flag = if p.hypothesis_verified { "verified" } else { "hypothesis unverified" };
                    let _ = writeln!(out, "regularity hypothesis: {flag} ({})", p.koszul_verdict);
                }
            }
        }
        Command::Groebner { c, order, perm } => {
            let spec = load(&c.file, c.p)?;
            let ord = term_order(order, perm, spec.nvars())?;
            let gb = buchberger(&spec, &ord);
            match c.format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Doc {
                        order: String,
                        basis: Vec<String>,
                        initial: Vec<String>,
                    }
                    out.push_str(&json(&Doc {
                        order: ord.name(),
                        basis: gb.render(spec.vars()).lines().map(String::from).collect(),
                        initial: gb
                            .initial
                            .gens()
                            .iter()
                            .map(|m| m.display(spec.vars()).to_string())
                            .collect(),
                    })?);
                }
                _ => {
                    let _ = writeln!(out, "# order {}", ord.name());
                    out.push_str(&gb.render(spec.vars()));
                    let init: Vec<String> =
                        gb.initial.gens().iter().map(|m| m.display(spec.vars()).to_string()).collect();
                    let _ = writeln!(out, "# initial ideal ({})", init.join(", "));
                }
            }
        }
        Command::Classify3 { c } => {
            let spec = load(&c.file, c.p)?;
            let cl = classify_g3(&spec)?;
            match c.format {
                Format::Json => out.push_str(&json(&cl)?),
                Format::Records => {
                    out.push_str(&cl.table.to_records());
                    out.push_str(&cl.render());
                }
                Format::Table => {
                    out.push_str(&cl.table.render());
                    out.push_str(&cl.render());
                }
            }
        }
        Command::Verify { files, format, p, order, perm, steps, seed, budget } => {
            let instances: Vec<CorpusInstance> = if files.is_empty() {
                let mut v = curated(p)?;
                v.extend(random_corpus(seed, budget, 2..=4, 4, field_of(p)?));
                v
            } else {
                files
                    .iter()
                    .map(|f| Ok(CorpusInstance { name: f.clone(), spec: load(f, p)? }))
                    .collect::<Result<_>>()?
            };
            let nv = instances.iter().map(|i| i.spec.nvars()).max().unwrap_or(0);
            if perm.is_some() {
                if let Some(inst) = instances.iter().find(|i| i.spec.nvars() != nv) {
                    return Err(Error::Config(format!(
                        "--perm needs every instance to have {nv} variables; {} has {}",
                        inst.name,
                        inst.spec.nvars()
                    )));
                }
            }
            let cfg = BatteryConfig {
                koszul_depth: steps,
                order: term_order(order, perm, nv)?,
                ..BatteryConfig::default()
            };
            let reports = verify_corpus(&instances, &cfg)?;
            let failed = reports.iter().any(|r| !r.passed());
            match format {
                Format::Json => out.push_str(&json(&reports)?),
                _ => {
                    for r in &reports {
                        out.push_str(&r.to_records());
                        if !r.passed() {
                            out.push_str(&r.witness_dump());
                        }
                    }
                    let nfail = reports.iter().filter(|r| !r.passed()).count();
                    let _ = writeln!(out, "summary instances={} failed={nfail}", reports.len());
                }
            }
            return Ok((if failed { EXIT_FAILURE } else { EXIT_OK }, out));
        }
        Command::SearchNonkoszul { vars, gens, seed, budget, format, p } => {
            let hits = nonkoszul_search(vars, gens, seed, budget, field_of(p)?)?;
            match format {
                Format::Json => out.push_str(&json(&hits)?),
                _ => {
                    for h in &hits {
                        let _ = writeln!(
                            out,
                            "hit draw={} reg_4(k)={} koszul={} strand_generates={}",
                            h.draw, h.reg4, h.koszul, h.strand_generated
                        );
                        out.push_str(&h.ring);
                    }
                    let _ = writeln!(out, "found {} of {budget}", hits.len());
                }
            }
        }
    }
    Ok((EXIT_OK, out))
}

/// Caps the rayon pool at `KOSZUL_THREADS` when that variable is set.
pub fn init_threads() {
    if let Some(n) = std::env::var("KOSZUL_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}
