//! Exact coefficient arithmetic: `Z[q,u]` and its fraction field.

mod gcd;
mod poly;
mod rat;

pub use gcd::gcd;
pub use poly::{Monomial, Poly};
pub use rat::{Rat, RatAccumulator};
