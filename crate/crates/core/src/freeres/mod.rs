//! Minimal graded free resolutions: of `R` over `Q`, and of `k` over `R`
//! truncated to a window, with partial regularity and deviations.

mod deviations;
mod engine;
mod resolve;

pub use deviations::{
    deviations, eps3_via_koszul_h1, factor_poincare_series, DeviationTable, DEFAULT_DEVIATION_WINDOW,
};
pub use engine::{ImageTerm, Resolution, ResolutionStep};
pub use resolve::{
    koszul_check, resolve_k_over_r, resolve_over_q, resolve_over_q_with, tor_degree_bound, KoszulVerdict,
    QResolution, RegularityReport, TorDegreeCap,
};
