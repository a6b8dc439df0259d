//! Claim batteries over curated and random instances, and the classifier
//! for rings defined by three quadrics.

mod claims;
mod classify;
mod corpus;

pub use claims::{
    verify_corpus, verify_instance, BatteryConfig, ClaimRecord, Status, VerificationReport, CLAIMS,
};
pub use classify::{
    classify_g3, is_non_koszul_table, koszul_g3_match, koszul_g3_table, nonkoszul_search, G3Classification,
    NonKoszulHit, KOSZUL_G3_TABLES, NON_KOSZUL_TABLE,
};
pub use corpus::{
    curated, random_corpus, random_fixed, random_quadratic_spec, CorpusInstance, CURATED_FILES,
};
