//! Betti tables, Koszul homology, deviations and diagonal subalgebras of
//! standard graded algebras `R = Q/I` over prime fields.

pub mod algebra;
pub mod battery;
pub mod cli;
pub mod diagonal;
pub mod error;
pub mod exactla;
pub mod freeres;
pub mod groebner;
pub mod koszulhom;

pub use error::{Error, Result};
