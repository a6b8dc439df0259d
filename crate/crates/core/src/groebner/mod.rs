//! Gröbner bases, initial ideals and the comparisons they support.

mod buchberger;
mod checks;
mod monomial_ideal;

pub use buchberger::{buchberger, GroebnerBasis};
pub use checks::{cancellation_check, taylor_bound_check, CancellationVerdict};
pub use monomial_ideal::{dimension, MonomialIdeal};

use crate::algebra::{RingSpec, TermOrder};

/// Initial ideal of `spec` under grevlex, the degeneration used to
/// certify computation windows.
pub fn initial_ideal(spec: &RingSpec) -> MonomialIdeal {
    buchberger(spec, &TermOrder::grevlex()).initial
}
