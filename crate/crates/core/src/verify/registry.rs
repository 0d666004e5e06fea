use std::collections::BTreeMap;
use std::sync::Arc;

use super::checks;
use super::report::{IdentityId, VerificationReport};
use crate::error::{Error, Result};
use crate::exponent::QExponent;
use crate::wronskian::{Lattice, WronskianMethod};

/// Default cap on `n`; lattice volume and the `n!` determinant grow fast.
pub const DEFAULT_MAX_N: u32 = 9;

/// Inputs shared by every identity check.
#[derive(Clone, Debug)]
pub struct CheckParams {
    pub n: u32,
    pub order: QExponent,
    /// Wronskian source for the identities that need one.
    pub method: Arc<dyn WronskianMethod>,
    /// Number of tau values for [`IdentityId::RamanujanTau`].
    pub count: u32,
    pub max_n: u32,
}

impl CheckParams {
    pub fn new(n: u32, order: QExponent) -> Self {
        CheckParams {
            n,
            order,
            method: Arc::new(Lattice::default()),
            count: 10,
            max_n: DEFAULT_MAX_N,
        }
    }

    pub fn with_method(mut self, method: Arc<dyn WronskianMethod>) -> Self {
        self.method = method;
        self
    }
}

/// An executable identity, checked coefficient by coefficient.
pub trait Identity: Send + Sync {
    fn id(&self) -> IdentityId;

    fn summary(&self) -> &'static str;

    /// Whether `CheckParams::n` is meaningful (and therefore validated).
    fn uses_n(&self) -> bool {
        true
    }

    fn check(&self, params: &CheckParams) -> Result<VerificationReport>;
}

macro_rules! identity {
    ($ty:ident, $id:expr, $summary:expr, |$p:ident| $body:expr) => {
        identity!($ty, $id, $summary, true, |$p| $body);
    };
    ($ty:ident, $id:expr, $summary:expr, $uses_n:expr, |$p:ident| $body:expr) => {
        pub struct $ty;

        impl Identity for $ty {
            fn id(&self) -> IdentityId {
                $id
            }

            fn summary(&self) -> &'static str {
                $summary
            }

            fn uses_n(&self) -> bool {
                $uses_n
            }

            fn check(&self, $p: &CheckParams) -> Result<VerificationReport> {
                $body
            }
        }
    };
}

identity!(
    Theorem1,
    IdentityId::Theorem1,
    "C theta(tau,z) eta^(n^2-1) = Wronskian(tau, z/n)",
    |p| checks::verify_theorem1(p.n, p.order, p.method.as_ref())
);
identity!(
    Sln,
    IdentityId::Sln,
    "C eta^(n^2-1) = lattice sum over x_1+...+x_n = 0",
    |p| checks::verify_sln(p.n, p.order)
);
identity!(
    Equivalence,
    IdentityId::Equivalence,
    "constant zeta row of the two-variable sum = one-variable sum",
    |p| checks::verify_equivalence_reduction(p.n, p.order, p.method.as_ref())
);
identity!(
    TripleProduct,
    IdentityId::TripleProduct,
    "theta sum = Jacobi triple product",
    false,
    |p| checks::verify_triple_product(p.order)
);
identity!(
    HrProperties,
    IdentityId::HrProperties,
    "h_r vanishes off multiples of n and is n-periodic",
    |p| checks::verify_hr_properties(p.n, p.order)
);
identity!(
    Factorization,
    IdentityId::Factorization,
    "Wronskian = h_0(tau) theta(tau, n z)",
    |p| checks::verify_factorization(p.n, p.order, p.method.as_ref())
);
identity!(
    VanishingOrder,
    IdentityId::VanishingOrder,
    "h_0 starts at q^((n^2-1)/24) with |coefficient| = C",
    |p| checks::verify_vanishing_order(p.n)
);
identity!(
    RamanujanTau,
    IdentityId::RamanujanTau,
    "tau(m) from eta^24 = tau(m) from the n = 5 lattice sum",
    false,
    |p| checks::ramanujan_tau(p.count).map(|(_, report)| report)
);

/// Identities by name.
pub struct IdentityRegistry {
    identities: BTreeMap<&'static str, Arc<dyn Identity>>,
}

impl IdentityRegistry {
    pub fn empty() -> Self {
        IdentityRegistry {
            identities: BTreeMap::new(),
        }
    }

    pub fn with_builtins() -> Self {
        let mut reg = Self::empty();
        let builtins: [Arc<dyn Identity>; 8] = [
            Arc::new(Theorem1),
            Arc::new(Sln),
            Arc::new(Equivalence),
            Arc::new(TripleProduct),
            Arc::new(HrProperties),
            Arc::new(Factorization),
            Arc::new(VanishingOrder),
            Arc::new(RamanujanTau),
        ];
        for id in builtins {
            reg.register(id);
        }
        reg
    }

    pub fn register(&mut self, identity: Arc<dyn Identity>) {
        self.identities.insert(identity.id().as_str(), identity);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn Identity>> {
        self.identities
            .get(name)
            .cloned()
            .ok_or_else(|| Error::Usage(format!("unknown identity {name:?}; known: {}", self.names().join(", "))))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.identities.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<dyn Identity>> {
        self.identities.values()
    }

    /// Validates the parameters, then runs the named identity.
    pub fn run(&self, name: &str, params: &CheckParams) -> Result<VerificationReport> {
        let identity = self.get(name)?;
        if identity.uses_n() {
            if params.n == 0 || params.n.is_multiple_of(2) {
                return Err(Error::Usage(format!("n must be odd, got {}", params.n)));
            }
            if params.n > params.max_n {
                return Err(Error::Usage(format!(
                    "n = {} exceeds the cap of {}",
                    params.n, params.max_n
                )));
            }
        }
        if !params.order.is_positive() {
            return Err(Error::Usage(format!("order must be positive, got {}", params.order)));
        }
        identity.check(params)
    }
}

impl Default for IdentityRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}
