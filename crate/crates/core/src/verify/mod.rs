//! Executable forms of the theta/eta identities with structured reports.
//!
//! Every comparison multiplies the eta side by `1! 2! ... (n-1)!` instead of
//! dividing the lattice side, so all arithmetic stays in the integers.

mod checks;
mod registry;
mod report;

pub use checks::{
    factorial_product, ramanujan_tau, verify_equivalence_reduction, verify_factorization, verify_hr_properties,
    verify_sln, verify_theorem1, verify_theorem1_with_sign, verify_triple_product, verify_vanishing_order,
};
pub use registry::{CheckParams, Identity, IdentityRegistry, DEFAULT_MAX_N};
pub use report::{compare, Comparison, IdentityId, Mismatch, VerificationReport};
