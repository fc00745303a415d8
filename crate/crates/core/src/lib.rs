//! Exact computer algebra for truncated q-series.
//!
//! Series carry a truncation order below which every coefficient is exact.
//! On top of the series core sit Jacobi theta functions, Appell-Lerch sums,
//! Hecke-type double sums and the string functions of the affine Lie algebra
//! A1(1), a lazy builder graph that tracks precision for nested products and
//! quotients, a small expression language, and a registry of identities
//! checked coefficient by coefficient.

pub mod appell;
pub mod error;
pub mod expr;
pub mod hecke;
mod lattice;
pub mod lazy;
pub mod par;
pub mod series;
pub mod strings;
pub mod theta;
pub mod verify;

pub use error::{Error, Result};
pub use par::Execution;
pub use series::{Coefficient, Comparison, Exponent, Monomial, QSeries};
