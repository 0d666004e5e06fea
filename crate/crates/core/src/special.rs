//! Constructors for eta powers and theta series.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exponent::QExponent;
use crate::series::{QSeries, ZetaSeries};

/// `eta(tau)^k = q^{k/24} prod_{m>=1} (1 - q^m)^k`, truncated below `order`.
///
/// `k = 0` gives the constant series 1.
pub fn eta_power(k: u32, order: QExponent) -> Result<QSeries> {
    let den = order.den();
    let shift = QExponent::new(i64::from(k), 24)?.with_den(den)?;
    // The product is needed below `order - k/24`, which holds integer exponents j < span.
    let remaining = order - shift;
    if !remaining.is_positive() {
        return Ok(QSeries::zero(order));
    }
    let span = remaining.ceil() as usize;
    let mut coeffs = vec![BigInt::zero(); span];
    coeffs[0] = BigInt::one();
    for m in 1..span {
        for _ in 0..k {
            // multiply in place by (1 - q^m)
            for j in (m..span).rev() {
                let (lo, hi) = coeffs.split_at_mut(j);
                hi[0] -= &lo[j - m];
            }
        }
    }
    let terms = coeffs
        .into_iter()
        .enumerate()
        .map(|(j, c)| (shift + QExponent::integer(j as i64), c));
    QSeries::from_terms(order, terms)
}

/// `theta(tau, z) = sum_r q^{r^2/2} zeta^r`.
pub fn theta_sum(order: QExponent) -> Result<ZetaSeries> {
    theta_z_times_n(1, order)
}

/// `theta(tau, n z) = sum_r q^{r^2/2} zeta^{r n}`.
pub fn theta_z_times_n(n: u32, order: QExponent) -> Result<ZetaSeries> {
    if n == 0 {
        return Err(Error::usage("n must be positive"));
    }
    let n = i64::from(n);
    let r_max = radius(order, 2);
    let terms = (-r_max..=r_max).map(|r| (QExponent::raw(r * r, 2), r * n, BigInt::one()));
    ZetaSeries::from_terms(order, terms)
}

/// `theta` from the product
/// `prod_{m>=1} (1 - q^m)(1 + q^{m-1/2} zeta)(1 + q^{m-1/2} zeta^-1)`.
///
/// Factors with `m - 1/2 >= order` are 1 below `order` and are skipped.
pub fn theta_triple_product(order: QExponent) -> Result<ZetaSeries> {
    let one = || (QExponent::zero(), 0, BigInt::one());
    let mut acc = ZetaSeries::one(order);
    let mut m = 1i64;
    while QExponent::raw(2 * m - 1, 2) < order {
        let half = QExponent::raw(2 * m - 1, 2);
        let factors = [
            ZetaSeries::from_terms(order, [one(), (QExponent::integer(m), 0, BigInt::from(-1))])?,
            ZetaSeries::from_terms(order, [one(), (half, 1, BigInt::one())])?,
            ZetaSeries::from_terms(order, [one(), (half, -1, BigInt::one())])?,
        ];
        for f in &factors {
            acc = acc.mul(f)?;
        }
        m += 1;
    }
    acc.truncate(order)
}

/// `theta_{n,i}(tau, z) = sum_{x = i mod n} q^{x^2/2n} zeta^x`, with `1 <= i <= n`.
pub fn theta_component(n: u32, i: u32, order: QExponent) -> Result<ZetaSeries> {
    if n == 0 || n.is_multiple_of(2) {
        return Err(Error::usage(format!("n must be odd, got {n}")));
    }
    if i == 0 || i > n {
        return Err(Error::usage(format!("component index {i} outside 1..={n}")));
    }
    let (n, i) = (i64::from(n), i64::from(i));
    let x_max = radius(order, 2 * n);
    let start = -x_max + (i + x_max).rem_euclid(n);
    let terms = (start..=x_max)
        .step_by(n as usize)
        .map(|x| (QExponent::raw(x * x, 2 * n), x, BigInt::one()));
    ZetaSeries::from_terms(order, terms)
}

/// Largest `r >= 0` with `r^2 / scale < order` (or 0 when none).
fn radius(order: QExponent, scale: i64) -> i64 {
    let limit = order.num() as i128 * scale as i128;
    let den = order.den() as i128;
    if limit <= 0 {
        return 0;
    }
    let mut r = ((limit as f64 / den as f64).sqrt() as i64).max(0);
    while (r as i128 + 1).pow(2) * den < limit {
        r += 1;
    }
    while r > 0 && (r as i128).pow(2) * den >= limit {
        r -= 1;
    }
    r
}
