//! Exact truncated series in `q` (rational exponents on a fixed grid) and
//! `zeta` (integer exponents), with big-integer coefficients.
//!
//! Every value carries an exclusive validity order. Operations compute the
//! order of their result pessimistically and coefficient queries at or
//! beyond it fail instead of returning zero.

mod det;
mod qseries;
mod zeta;

pub use det::det;
pub use qseries::QSeries;
pub use zeta::ZetaSeries;
