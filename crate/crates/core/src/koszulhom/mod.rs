//! Koszul complexes over `R`, their homology and products.

mod complex;
mod strand;
mod table;

pub use complex::{
    betti_table, default_window, euler_characteristic_holds, homology_classes, homology_product,
    koszul_differential_block, CertifiedWindow, HomologyClass, HomologyClassSet, KoszulComplex,
};
pub(crate) use complex::{shuffle_sign, subsets_by_size};
pub use strand::{linear_strand_generation_check, StrandVerdict};
pub use table::BettiTable;
