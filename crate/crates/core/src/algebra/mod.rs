//! Exact arithmetic on polynomial rings over prime fields.

mod field;
mod monomial;
mod parse;
mod poly;
mod ring;

pub use field::{is_prime, PrimeField, DEFAULT_PRIME};
pub use monomial::{binomial, monomials_of_degree, Monomial, OrderKind, TermOrder};
pub use parse::{parse_poly, parse_ring};
pub use poly::Poly;
pub use ring::{GradedPiece, GradedRing, RingSpec};
