//! Exact computation of tensor-product multiplicity polynomials for the
//! finite general linear and unitary groups.
//!
//! The pipeline builds the `k`-point Cauchy series `Omega` in a truncated ring
//! of symmetric functions over `Q(q,u)`, takes its plethystic logarithm, and
//! extracts generic multiplicities `V`, unipotent multiplicities `U` and `U'`,
//! and the interpolating polynomials `T(u,q)` by Hall pairing against Schur
//! functions.

pub mod arith;
pub mod characters;
pub mod ennola;
pub mod error;
pub mod hall_littlewood;
pub mod partition;
pub mod symfunc;
pub mod types;

pub use error::{Error, Result};
