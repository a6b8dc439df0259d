//! Exact linear algebra over `F_p`.

mod echelon;
mod matrix;
mod sparse;

pub use echelon::{Echelon, TrackedEchelon};
pub use matrix::{
    intersect, kernel_basis, rank, rank_batch, solve_in_span, span_basis, BlockLabels, GradedMatrixBlock,
    DENSE_THRESHOLD,
};
pub use sparse::SparseVec;
