//! Exact q-series for Dedekind eta powers, Jacobi theta, the theta
//! components `theta_{n,i}` and their Wronskian in `z`, with executable
//! checks of the identities relating them.
//!
//! All arithmetic is over the integers. Series carry an exclusive validity
//! order; see [`series`].

pub mod error;
pub mod exponent;
pub mod lattice;
pub mod series;
pub mod special;
pub mod verify;
pub mod wronskian;

pub use error::{Error, Result};
pub use exponent::{Context, QExponent};
pub use series::{QSeries, ZetaSeries};
