use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exponent::QExponent;
use crate::series::ZetaSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    Theorem1,
    Sln,
    Equivalence,
    TripleProduct,
    HrProperties,
    Factorization,
    VanishingOrder,
    RamanujanTau,
}

impl IdentityId {
    pub const ALL: [IdentityId; 8] = [
        IdentityId::Theorem1,
        IdentityId::Sln,
        IdentityId::Equivalence,
        IdentityId::TripleProduct,
        IdentityId::HrProperties,
        IdentityId::Factorization,
        IdentityId::VanishingOrder,
        IdentityId::RamanujanTau,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityId::Theorem1 => "theorem1",
            IdentityId::Sln => "sln",
            IdentityId::Equivalence => "equivalence",
            IdentityId::TripleProduct => "triple_product",
            IdentityId::HrProperties => "hr_properties",
            IdentityId::Factorization => "factorization",
            IdentityId::VanishingOrder => "vanishing_order",
            IdentityId::RamanujanTau => "tau",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::Usage(format!("unknown identity {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub q_exp: QExponent,
    pub zeta_exp: i64,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

impl Mismatch {
    fn key(&self) -> (QExponent, i64) {
        (self.q_exp, self.zeta_exp)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub identity: IdentityId,
    pub n: u32,
    /// Common validity order of the comparison.
    pub order: QExponent,
    pub matched: bool,
    pub first_mismatch: Option<Mismatch>,
    pub compared_terms: usize,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub(crate) fn from_comparison(identity: IdentityId, n: u32, cmp: Comparison, elapsed: Duration) -> Self {
        VerificationReport {
            identity,
            n,
            order: cmp.order,
            matched: cmp.first_mismatch.is_none(),
            first_mismatch: cmp.first_mismatch,
            compared_terms: cmp.compared_terms,
            elapsed,
        }
    }

    /// Equal in everything but timing.
    pub fn same_outcome(&self, other: &VerificationReport) -> bool {
        VerificationReport {
            elapsed: Duration::ZERO,
            ..self.clone()
        } == VerificationReport {
            elapsed: Duration::ZERO,
            ..other.clone()
        }
    }
}

/// Outcome of comparing two series below their common order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub order: QExponent,
    pub compared_terms: usize,
    pub first_mismatch: Option<Mismatch>,
}

impl Comparison {
    /// Folds several comparisons: terms add up, orders take the minimum and
    /// the least mismatch wins.
    pub fn merge(self, other: Comparison) -> Comparison {
        let first_mismatch = match (self.first_mismatch, other.first_mismatch) {
            (Some(a), Some(b)) => Some(if b.key() < a.key() { b } else { a }),
            (a, b) => a.or(b),
        };
        Comparison {
            order: self.order.min(other.order),
            compared_terms: self.compared_terms + other.compared_terms,
            first_mismatch,
        }
    }
}

/// Compares every `(q, zeta)` position present on either side below the
/// smaller of the two orders, in lexicographic order.
pub fn compare(lhs: &ZetaSeries, rhs: &ZetaSeries) -> Result<Comparison> {
    if lhs.den() != rhs.den() {
        return Err(Error::DenominatorMismatch {
            left: lhs.den(),
            right: rhs.den(),
        });
    }
    let order = lhs.order().min(rhs.order());
    let keys: BTreeSet<(QExponent, i64)> = lhs
        .terms()
        .chain(rhs.terms())
        .filter(|(q, _, _)| *q < order)
        .map(|(q, x, _)| (q, x))
        .collect();
    let mut first_mismatch = None;
    for &(q, x) in &keys {
        let (a, b) = (lhs.coefficient(q, x)?, rhs.coefficient(q, x)?);
        if a != b {
            first_mismatch = Some(Mismatch {
                q_exp: q,
                zeta_exp: x,
                lhs: a,
                rhs: b,
            });
            break;
        }
    }
    Ok(Comparison {
        order,
        compared_terms: keys.len(),
        first_mismatch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(order: i64, terms: &[(i64, i64, i64)]) -> ZetaSeries {
        let t = terms
            .iter()
            .map(|(q, x, c)| (QExponent::raw(*q, 6), *x, BigInt::from(*c)));
        ZetaSeries::from_terms(QExponent::raw(order, 6), t).unwrap()
    }

    #[test]
    fn first_mismatch_is_lexicographically_least() {
        let a = s(12, &[(1, 2, 1), (1, -1, 4), (3, 0, 1)]);
        let b = s(12, &[(1, 2, 1), (1, -1, 5), (0, 0, 7)]);
        let cmp = compare(&a, &b).unwrap();
        let m = cmp.first_mismatch.unwrap();
        assert_eq!((m.q_exp, m.zeta_exp), (QExponent::zero(), 0));
        assert_eq!((m.lhs, m.rhs), (BigInt::from(0), BigInt::from(7)));
        assert_eq!(cmp.compared_terms, 4);
    }

    #[test]
    fn comparison_stops_at_common_order() {
        let a = s(6, &[(1, 0, 1)]);
        let b = s(12, &[(1, 0, 1), (8, 0, 3)]);
        let cmp = compare(&a, &b).unwrap();
        assert!(cmp.first_mismatch.is_none());
        assert_eq!(cmp.order, QExponent::integer(1));
        assert_eq!(cmp.compared_terms, 1);
    }

    #[test]
    fn merge_keeps_least_mismatch() {
        let m = |q: i64, x: i64| Comparison {
            order: QExponent::integer(2),
            compared_terms: 1,
            first_mismatch: Some(Mismatch {
                q_exp: QExponent::raw(q, 6),
                zeta_exp: x,
                lhs: BigInt::from(1),
                rhs: BigInt::from(0),
            }),
        };
        let merged = m(3, 1).merge(m(3, -2)).merge(m(4, -9));
        assert_eq!(merged.first_mismatch.unwrap().zeta_exp, -2);
        assert_eq!(merged.compared_terms, 3);
    }

    #[test]
    fn identity_names_round_trip() {
        for id in IdentityId::ALL {
            assert_eq!(id.as_str().parse::<IdentityId>().unwrap(), id);
        }
        assert!("theorem2".parse::<IdentityId>().is_err());
    }
}
