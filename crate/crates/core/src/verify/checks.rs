use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::report::{compare, Comparison, IdentityId, Mismatch, VerificationReport};
use crate::error::{Error, Result};
use crate::exponent::{Context, QExponent};
use crate::lattice::VandermondeSign;
use crate::series::{QSeries, ZetaSeries};
use crate::special::{eta_power, theta_sum, theta_triple_product, theta_z_times_n};
use crate::wronskian::{h_r, Lattice, WronskianMethod};

const SIGN: VandermondeSign = VandermondeSign::Determinant;

/// `1! 2! ... (n-1)!`
pub fn factorial_product(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    let mut fact = BigInt::one();
    for k in 1..n {
        fact *= k;
        acc *= &fact;
    }
    acc
}

fn grid(n: u32, order: QExponent) -> Result<(Context, QExponent)> {
    if n == 0 || n.is_multiple_of(2) {
        return Err(Error::Usage(format!("n must be odd, got {n}")));
    }
    let ctx = Context::for_n(n);
    Ok((ctx, ctx.order(order)))
}

fn eta_exponent(n: u32) -> u32 {
    n * n - 1
}

/// `C theta(tau, z) eta^{n^2-1}` against the Wronskian at `z / n`, where
/// `C = 1! 2! ... (n-1)!`.
pub fn verify_theorem1(n: u32, order: QExponent, method: &dyn WronskianMethod) -> Result<VerificationReport> {
    let start = Instant::now();
    let (_, order) = grid(n, order)?;
    let lhs = theta_sum(order)?
        .mul(&eta_power(eta_exponent(n), order)?.into())?
        .scale(&factorial_product(n));
    let rhs = method.compute(n, order)?.substitute_z_scale(i64::from(n))?;
    let cmp = compare(&lhs, &rhs)?;
    Ok(VerificationReport::from_comparison(
        IdentityId::Theorem1,
        n,
        cmp,
        start.elapsed(),
    ))
}

/// `C eta^{n^2-1}` against the lattice sum over `sum x_i = 0`.
pub fn verify_sln(n: u32, order: QExponent) -> Result<VerificationReport> {
    let start = Instant::now();
    let (_, order) = grid(n, order)?;
    let lhs = eta_power(eta_exponent(n), order)?.scale(&factorial_product(n));
    let rhs = h_r(n, 0, order, SIGN)?;
    let cmp = compare(&lhs.into(), &rhs.into())?;
    Ok(VerificationReport::from_comparison(
        IdentityId::Sln,
        n,
        cmp,
        start.elapsed(),
    ))
}

/// The `zeta^0` row of the two-variable lattice side against the
/// one-variable lattice side.
pub fn verify_equivalence_reduction(
    n: u32,
    order: QExponent,
    method: &dyn WronskianMethod,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let (_, order) = grid(n, order)?;
    let two_var = method.compute(n, order)?.substitute_z_scale(i64::from(n))?;
    let lhs = two_var.constant_zeta_row();
    let rhs = h_r(n, 0, order, SIGN)?;
    let cmp = compare(&lhs.into(), &rhs.into())?;
    Ok(VerificationReport::from_comparison(
        IdentityId::Equivalence,
        n,
        cmp,
        start.elapsed(),
    ))
}

/// Theta as a sum against theta as the triple product.
pub fn verify_triple_product(order: QExponent) -> Result<VerificationReport> {
    let start = Instant::now();
    let order = Context::for_n(1).order(order);
    let cmp = compare(&theta_sum(order)?, &theta_triple_product(order)?)?;
    Ok(VerificationReport::from_comparison(
        IdentityId::TripleProduct,
        1,
        cmp,
        start.elapsed(),
    ))
}

/// `h_r = 0` for every `n ∤ r` with `|r| <= n^2`, `h_r = h_{r+n}` for
/// `r in {0, ±n, ±2n}` and `h_r = h_{r+n^2}` for `r in {0, n}`.
///
/// A mismatch records the index of the series under test as `zeta_exp`;
/// `lhs` is the reference side (`h_r`, or the would-be nonzero coefficient)
/// and `rhs` the compared side (`h_{r'}`, or zero).
pub fn verify_hr_properties(n: u32, order: QExponent) -> Result<VerificationReport> {
    let start = Instant::now();
    let (_, order) = grid(n, order)?;
    let n64 = i64::from(n);
    let nn = n64 * n64;

    let mut cache: BTreeMap<i64, QSeries> = BTreeMap::new();
    let mut get = |r: i64| -> Result<QSeries> {
        if let Some(h) = cache.get(&r) {
            return Ok(h.clone());
        }
        let h = h_r(n, r, order, SIGN)?;
        cache.insert(r, h.clone());
        Ok(h)
    };

    let zero = QSeries::zero(order);
    let mut total: Option<Comparison> = None;
    let mut fold = |cmp: Comparison| {
        total = Some(match total.take() {
            Some(t) => t.merge(cmp),
            None => cmp,
        });
    };
    let tagged = |cmp: Comparison, r: i64| Comparison {
        first_mismatch: cmp.first_mismatch.map(|m| Mismatch { zeta_exp: r, ..m }),
        ..cmp
    };

    for r in (-nn..=nn).filter(|r| r % n64 != 0) {
        fold(tagged(compare(&get(r)?.into(), &zero.clone().into())?, r));
    }
    for k in -2..=2 {
        let r = k * n64;
        fold(tagged(compare(&get(r)?.into(), &get(r + n64)?.into())?, r + n64));
    }
    for r in [0, n64] {
        fold(tagged(compare(&get(r)?.into(), &get(r + nn)?.into())?, r + nn));
    }
    let cmp = total.expect("at least one comparison");
    Ok(VerificationReport::from_comparison(
        IdentityId::HrProperties,
        n,
        cmp,
        start.elapsed(),
    ))
}

/// The Wronskian against `h_0(tau) theta(tau, n z)`.
pub fn verify_factorization(n: u32, order: QExponent, method: &dyn WronskianMethod) -> Result<VerificationReport> {
    let start = Instant::now();
    let (_, order) = grid(n, order)?;
    let lhs = method.compute(n, order)?;
    let h0: ZetaSeries = h_r(n, 0, order, SIGN)?.into();
    let rhs = h0.mul(&theta_z_times_n(n, order)?)?;
    let cmp = compare(&lhs, &rhs)?;
    Ok(VerificationReport::from_comparison(
        IdentityId::Factorization,
        n,
        cmp,
        start.elapsed(),
    ))
}

/// The leading exponent of `h_0` is `(n^2-1)/24` with coefficient of
/// absolute value `1! 2! ... (n-1)!`.
///
/// On failure `lhs` is the observed leading coefficient and `rhs` the
/// expected magnitude, at the smaller of the observed and expected exponents.
pub fn verify_vanishing_order(n: u32) -> Result<VerificationReport> {
    let start = Instant::now();
    let ctx = grid(n, QExponent::zero())?.0;
    let expected = ctx.exponent(i64::from(eta_exponent(n)), 24)?;
    let order = expected + ctx.integer(1);
    let h0 = h_r(n, 0, order, SIGN)?;
    let magnitude = factorial_product(n);

    let first_mismatch = match h0.terms().next() {
        Some((q, c)) if q == expected && c.abs() == magnitude => None,
        Some((q, c)) if q < expected => Some(Mismatch {
            q_exp: q,
            zeta_exp: 0,
            lhs: c.clone(),
            rhs: BigInt::zero(),
        }),
        Some((q, c)) if q == expected => Some(Mismatch {
            q_exp: q,
            zeta_exp: 0,
            lhs: c.clone(),
            rhs: magnitude,
        }),
        _ => Some(Mismatch {
            q_exp: expected,
            zeta_exp: 0,
            lhs: BigInt::zero(),
            rhs: magnitude,
        }),
    };
    let report = VerificationReport {
        identity: IdentityId::VanishingOrder,
        n,
        order,
        matched: first_mismatch.is_none(),
        first_mismatch,
        compared_terms: 1,
        elapsed: start.elapsed(),
    };
    Ok(report)
}

/// `tau(m)` for `m = 1..=count`, read from `eta^24` and, independently,
/// from the `n = 5` lattice sum divided by `1! 2! 3! 4! = 288`.
pub fn ramanujan_tau(count: u32) -> Result<(Vec<(u32, BigInt)>, VerificationReport)> {
    if count == 0 {
        return Err(Error::Usage("count must be positive".into()));
    }
    let start = Instant::now();
    let ctx = Context::for_n(5);
    let order = ctx.integer(i64::from(count) + 1);
    let eta24 = eta_power(24, order)?;
    let h0 = h_r(5, 0, order, SIGN)?;
    let c = factorial_product(5);

    let mut values = Vec::with_capacity(count as usize);
    let mut first_mismatch = None;
    for m in 1..=count {
        let q = ctx.integer(i64::from(m));
        let direct = eta24.coefficient(q)?;
        let (quot, rem) = h0.coefficient(q)?.div_rem(&c);
        if !rem.is_zero() {
            return Err(Error::Integrity(format!(
                "lattice coefficient at q^{m} is not divisible by {c}"
            )));
        }
        if first_mismatch.is_none() && direct != quot {
            first_mismatch = Some(Mismatch {
                q_exp: q,
                zeta_exp: 0,
                lhs: direct.clone(),
                rhs: quot,
            });
        }
        values.push((m, direct));
    }
    let report = VerificationReport {
        identity: IdentityId::RamanujanTau,
        n: 5,
        order,
        matched: first_mismatch.is_none(),
        first_mismatch,
        compared_terms: count as usize,
        elapsed: start.elapsed(),
    };
    Ok((values, report))
}

/// The Wronskian computed with the lattice method and a given sign; used
/// to show that only one Vandermonde convention satisfies the identity.
pub fn verify_theorem1_with_sign(n: u32, order: QExponent, sign: VandermondeSign) -> Result<VerificationReport> {
    let method = Lattice { sign };
    verify_theorem1(n, order, &method)
}
