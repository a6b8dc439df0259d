//! Resolutions of `R` over `Q` and of `k` over `R`, with the regularity and
//! Koszulness reports built on them.

use serde::Serialize;

use super::engine::{resolve, EngineConfig, ImageTerm, Resolution, ResolutionStep};
use crate::algebra::{GradedRing, Poly, RingSpec};
use crate::error::{Error, Result};
use crate::groebner::initial_ideal;
use crate::koszulhom::{BettiTable, CertifiedWindow};

/// Resolution of `R` over `Q` with the Betti data it yields.
#[derive(Clone, Debug)]
pub struct QResolution {
    pub resolution: Resolution,
    /// every nonzero Betti number lies in the window
    pub complete: bool,
}

impl QResolution {
    pub fn steps(&self) -> &[ResolutionStep] {
        &self.resolution.steps
    }

    /// Betti table read off from the generator degrees.
    pub fn betti_table(&self, spec: &RingSpec) -> BettiTable {
        let res = &self.resolution;
        let i_max = res.steps.len() - 1;
        let mut t = BettiTable::new(i_max, res.j_max as usize, spec.p(), spec.digest());
        for s in &res.steps {
            for &d in &s.degrees {
                if d <= res.j_max {
                    let v = t.get(s.index, d as usize);
                    t.set(s.index, d as usize, v + 1);
                }
            }
        }
        t.complete = self.complete;
        t
    }
}

fn first_step(ring: &GradedRing, gens: &[(u32, &Poly)]) -> Result<ResolutionStep> {
    let mut degrees = Vec::new();
    let mut images = Vec::new();
    for &(d, f) in gens {
        let nf = ring.piece(d).normal_form(f)?;
        let img: Vec<ImageTerm> = nf.iter().map(|(a, c)| (0, a, c)).collect();
        degrees.push(d);
        images.push(img);
    }
    Ok(ResolutionStep { index: 1, degrees, images })
}

/// Minimal free resolution of `R = Q/I` over `Q` in internal degrees
/// `<= j_max`. Generator degrees of `F_i` are pruned above the Taylor bound
/// of the grevlex initial ideal, which by semicontinuity is a hard bound.
pub fn resolve_over_q(spec: &RingSpec, j_max: usize) -> Result<QResolution> {
    resolve_over_q_with(spec, j_max, true)
}

/// As [`resolve_over_q`]; with `prune = false` no degree bound is used and
/// the construction runs one step past `e` to confirm termination.
pub fn resolve_over_q_with(spec: &RingSpec, j_max: usize, prune: bool) -> Result<QResolution> {
    if (j_max as u32) < spec.max_gen_degree() {
        return Err(Error::WindowTooSmall(format!(
            "j_max = {j_max} is below the largest generator degree {}",
            spec.max_gen_degree()
        )));
    }
    let q = RingSpec::polynomial_ring(spec.field(), spec.vars().to_vec())?;
    let ring = GradedRing::new(&q, j_max as u32);
    let mut gens: Vec<(u32, &Poly)> =
        spec.gens().iter().map(|f| (f.homogeneous_degree().unwrap(), f)).collect();
    gens.sort_by_key(|&(d, _)| d);
    let f1 = first_step(&ring, &gens)?;
    let window = CertifiedWindow::of(spec);
    let e = spec.nvars();
    let bounds = window.degree_bounds.clone();
    let cap = move |i: usize| -> u32 {
        if !prune {
            u32::MAX
        } else {
            bounds.get(i).copied().unwrap_or(0)
        }
    };
    let steps = if prune { window.i_top() } else { e + 1 };
    let stop = |_: &[ResolutionStep], _: u32| false;
    let mut resolution =
        resolve(ring, f1, &EngineConfig { steps: steps.max(1), j_max: j_max as u32, cap: &cap, stop: &stop });
    if !prune {
        if let Some(s) = resolution.steps.get(e + 1) {
            if s.rank() > 0 {
                return Err(Error::Internal(format!(
                    "resolution over a polynomial ring in {e} variables has a step {}",
                    e + 1
                )));
            }
            resolution.steps.truncate(e + 1);
        }
    }
    while resolution.steps.len() > 1 && resolution.steps.last().unwrap().rank() == 0 {
        resolution.steps.pop();
    }
    Ok(QResolution { resolution, complete: window.covered_by(e, j_max) })
}

/// Degree cap for `Tor^R_i(k,k)`: generators of `F_i` live in degrees
/// `<= 1 + (i-1)(D-1)`, `D` the top degree of a grevlex Gröbner basis
/// (rate bound for the monomial ring plus upper semicontinuity).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct TorDegreeCap {
    pub gb_degree: u32,
}

impl TorDegreeCap {
    pub fn of(spec: &RingSpec) -> Self {
        TorDegreeCap { gb_degree: initial_ideal(spec).max_degree().max(2) }
    }

    pub fn cap(&self, i: usize) -> u32 {
        if i == 0 {
            0
        } else {
            1 + (i as u32 - 1) * (self.gb_degree - 1)
        }
    }
}

/// `Tor^R_i(k,k)_j` for `i <= n`, `j <= j_max`, and the partial regularity.
#[derive(Clone, Debug, Serialize)]
pub struct RegularityReport {
    pub n: usize,
    pub j_max: usize,
    /// `max(j - i)` over the nonzero ranks
    pub reg_n: i64,
    /// ranks indexed `[i][j]`
    pub tor: Vec<Vec<u64>>,
    /// every nonzero rank with `i <= n` lies in the window
    pub certified: bool,
}

impl RegularityReport {
    pub fn tor(&self, i: usize, j: usize) -> u64 {
        self.tor.get(i).and_then(|r| r.get(j)).copied().unwrap_or(0)
    }

    pub fn verdict_line(&self) -> String {
        let tag = if self.certified { "certified" } else { "truncated" };
        format!("reg_{}(k) = {} {tag}", self.n, self.reg_n)
    }

    pub fn to_records(&self) -> String {
        let mut out = String::new();
        for (i, row) in self.tor.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    out.push_str(&format!("i={i} j={j} tor_rank={v}\n"));
                }
            }
        }
        out.push_str(&self.verdict_line());
        out.push('\n');
        out
    }

    /// Grid in the layout of a Betti table: row `j - i`, column `i`.
    pub fn render(&self) -> String {
        let mut t = BettiTable::new(self.n, self.j_max, 0, "-");
        for (i, row) in self.tor.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                t.set(i, j, v);
            }
        }
        t.render()
    }
}

fn report(res: &Resolution, n: usize, j_max: usize, cap: TorDegreeCap) -> RegularityReport {
    let mut tor = vec![vec![0u64; j_max + 1]; n + 1];
    let mut reg = 0i64;
    for s in res.steps.iter().take(n + 1) {
        for &d in &s.degrees {
            if (d as usize) <= j_max {
                tor[s.index][d as usize] += 1;
                reg = reg.max(d as i64 - s.index as i64);
            }
        }
    }
    let certified = (1..=n).all(|i| cap.cap(i) as usize <= j_max) && res.stopped_at.is_none();
    RegularityReport { n, j_max, reg_n: reg, tor, certified }
}

fn resolve_k(
    spec: &RingSpec,
    n: usize,
    j_max: usize,
    stop: &(dyn Fn(&[ResolutionStep], u32) -> bool + Sync),
) -> Result<(Resolution, TorDegreeCap)> {
    if n == 0 {
        return Err(Error::Config("resolution of k needs at least one step".into()));
    }
    if j_max < n {
        return Err(Error::WindowTooSmall(format!("j_max = {j_max} is below n = {n}")));
    }
    let cap = TorDegreeCap::of(spec);
    let ring = GradedRing::new(spec, j_max as u32);
    let vars: Vec<Poly> = (0..spec.nvars()).map(|v| Poly::var(spec.field(), spec.nvars(), v)).collect();
    let gens: Vec<(u32, &Poly)> = vars.iter().map(|x| (1, x)).collect();
    let f1 = first_step(&ring, &gens)?;
    let capf = move |i: usize| cap.cap(i);
    let res = resolve(ring, f1, &EngineConfig { steps: n, j_max: j_max as u32, cap: &capf, stop });
    Ok((res, cap))
}

/// First `n` steps of the minimal resolution of `k` over `R`, valid in
/// internal degrees `<= j_max`.
pub fn resolve_k_over_r(spec: &RingSpec, n: usize, j_max: usize) -> Result<(Resolution, RegularityReport)> {
    let (res, cap) = resolve_k(spec, n, j_max, &|_, _| false)?;
    let rep = report(&res, n, j_max, cap);
    Ok((res, rep))
}

/// Internal degree through which `Tor^R_{<=n}(k,k)` can be nonzero.
pub fn tor_degree_bound(spec: &RingSpec, n: usize) -> usize {
    TorDegreeCap::of(spec).cap(n) as usize
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum KoszulVerdict {
    /// `Tor^R_i(k,k)` is concentrated in degree `i` for all `i <= n`
    KoszulUpTo(usize),
    /// a minimal generator of `F_i` in degree `j != i`
    FailsAt(usize, usize),
    /// no witness in the window, but the window does not reach the cap
    Inconclusive { n: usize, j_max: usize },
}

impl KoszulVerdict {
    pub fn is_koszul(&self) -> bool {
        matches!(self, KoszulVerdict::KoszulUpTo(_))
    }

    pub fn fails(&self) -> bool {
        matches!(self, KoszulVerdict::FailsAt(..))
    }
}

impl std::fmt::Display for KoszulVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KoszulVerdict::KoszulUpTo(n) => write!(f, "koszul-up-to-{n}"),
            KoszulVerdict::FailsAt(i, j) => write!(f, "fails-at-({i},{j})"),
            KoszulVerdict::Inconclusive { n, j_max } => {
                write!(f, "inconclusive (n = {n}, j_max = {j_max})")
            }
        }
    }
}

/// Builds the resolution of `k` to `n` steps, stopping at the first
/// nonlinear generator. `j_max = None` uses [`tor_degree_bound`].
pub fn koszul_check(spec: &RingSpec, n: usize, j_max: Option<usize>) -> Result<KoszulVerdict> {
    let cap = TorDegreeCap::of(spec);
    let j_max = j_max.unwrap_or(cap.cap(n) as usize).max(n);
    let stop = |steps: &[ResolutionStep], _: u32| {
        steps.iter().any(|s| s.degrees.iter().any(|&d| d as usize != s.index))
    };
    let (res, _) = resolve_k(spec, n, j_max, &stop)?;
    let witness = res
        .steps
        .iter()
        .flat_map(|s| s.degrees.iter().map(move |&d| (d as usize, s.index)))
        .filter(|&(d, i)| d != i)
        .min();
    Ok(match witness {
        Some((j, i)) => KoszulVerdict::FailsAt(i, j),
        None if (1..=n).all(|i| cap.cap(i) as usize <= j_max) => KoszulVerdict::KoszulUpTo(n),
        None => KoszulVerdict::Inconclusive { n, j_max },
    })
}
