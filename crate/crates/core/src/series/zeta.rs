use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::qseries::{accumulate, mul_into, product_order, QSeries};
use crate::error::{Error, Result};
use crate::exponent::QExponent;

/// A truncated bivariate series `sum_x f_x(q) zeta^x`.
///
/// Each row `f_x` is a [`QSeries`] sharing the container's order and
/// denominator. Identically zero rows are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaSeries {
    den: i64,
    rows: BTreeMap<i64, QSeries>,
    order: i64,
}

impl ZetaSeries {
    pub fn zero(order: QExponent) -> Self {
        ZetaSeries {
            den: order.den(),
            rows: BTreeMap::new(),
            order: order.num(),
        }
    }

    pub fn one(order: QExponent) -> Self {
        Self::from_row(QSeries::one(order), 0)
    }

    pub fn monomial(q_exp: QExponent, zeta_exp: i64, coeff: BigInt, order: QExponent) -> Result<Self> {
        Self::from_terms(order, [(q_exp, zeta_exp, coeff)])
    }

    /// Builds a series from `(q exponent, zeta exponent, coefficient)` triples.
    pub fn from_terms<I>(order: QExponent, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (QExponent, i64, BigInt)>,
    {
        let den = order.den();
        let mut raw: BTreeMap<i64, BTreeMap<i64, BigInt>> = BTreeMap::new();
        for (q, x, c) in terms {
            let e = q.numerator_over(den).ok_or(Error::NotRepresentable { value: q, den })?;
            if e < order.num() && !c.is_zero() {
                accumulate(raw.entry(x).or_default(), e, c);
            }
        }
        Ok(Self::from_raw(den, order.num(), raw))
    }

    /// Places a one-variable series on the row `zeta^zeta_exp`.
    pub fn from_row(row: QSeries, zeta_exp: i64) -> Self {
        let mut rows = BTreeMap::new();
        let (den, order) = (row.den(), row.order_num());
        if !row.is_zero() {
            rows.insert(zeta_exp, row);
        }
        ZetaSeries { den, rows, order }
    }

    pub(crate) fn from_raw(den: i64, order: i64, raw: BTreeMap<i64, BTreeMap<i64, BigInt>>) -> Self {
        let rows = raw
            .into_iter()
            .map(|(x, t)| (x, QSeries::from_raw(den, order, t)))
            .filter(|(_, r)| !r.is_zero())
            .collect();
        ZetaSeries { den, rows, order }
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn order(&self) -> QExponent {
        QExponent::raw(self.order, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> impl Iterator<Item = (i64, &QSeries)> + '_ {
        self.rows.iter().map(|(x, r)| (*x, r))
    }

    pub fn row(&self, zeta_exp: i64) -> Option<&QSeries> {
        self.rows.get(&zeta_exp)
    }

    /// All terms as `(q exponent, zeta exponent, coefficient)`, by zeta row.
    pub fn terms(&self) -> impl Iterator<Item = (QExponent, i64, &BigInt)> + '_ {
        self.rows
            .iter()
            .flat_map(|(x, r)| r.terms().map(move |(q, c)| (q, *x, c)))
    }

    pub fn term_count(&self) -> usize {
        self.rows.values().map(QSeries::len).sum()
    }

    /// Smallest q-exponent over all rows.
    pub fn lead(&self) -> Option<QExponent> {
        self.rows.values().filter_map(QSeries::lead).min()
    }

    fn valuation_num(&self) -> i64 {
        self.rows
            .values()
            .filter_map(QSeries::lead_num)
            .min()
            .unwrap_or(self.order)
    }

    fn check_den(&self, other: &ZetaSeries) -> Result<()> {
        if self.den != other.den {
            return Err(Error::DenominatorMismatch {
                left: self.den,
                right: other.den,
            });
        }
        Ok(())
    }

    fn raw_rows(&self) -> BTreeMap<i64, BTreeMap<i64, BigInt>> {
        self.rows.iter().map(|(x, r)| (*x, r.raw_terms().clone())).collect()
    }

    pub fn coefficient(&self, q_exp: QExponent, zeta_exp: i64) -> Result<BigInt> {
        if q_exp >= self.order() {
            return Err(Error::OutOfValidity {
                q_exp,
                order: self.order(),
            });
        }
        Ok(match self.rows.get(&zeta_exp) {
            Some(r) => r.coefficient(q_exp)?,
            None => BigInt::zero(),
        })
    }

    /// Drops everything at or above `order` (never raises the order).
    pub fn truncate(&self, order: QExponent) -> Result<Self> {
        let o = order.with_den(self.den)?.num().min(self.order);
        Ok(Self::from_raw(self.den, o, self.raw_rows()))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(&self, other: &ZetaSeries) -> Result<ZetaSeries> {
        self.check_den(other)?;
        let order = self.order.min(other.order);
        let mut raw = self.raw_rows();
        for (x, r) in &other.rows {
            let row = raw.entry(*x).or_default();
            for (e, c) in r.raw_terms() {
                if *e < order {
                    accumulate(row, *e, c.clone());
                }
            }
        }
        Ok(Self::from_raw(self.den, order, raw))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(&self) -> ZetaSeries {
        self.scale(&BigInt::from(-1))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(&self, other: &ZetaSeries) -> Result<ZetaSeries> {
        self.add(&other.neg())
    }

    pub fn scale(&self, factor: &BigInt) -> ZetaSeries {
        let rows = self
            .rows
            .iter()
            .map(|(x, r)| (*x, r.scale(factor)))
            .filter(|(_, r)| !r.is_zero())
            .collect();
        ZetaSeries {
            den: self.den,
            rows,
            order: self.order,
        }
    }

    /// Cauchy product in `q`, exponent addition in `zeta`.
    ///
    /// The result order is `min(order_a + lead_b, order_b + lead_a)` where
    /// the lead of a zero series is its order.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(&self, other: &ZetaSeries) -> Result<ZetaSeries> {
        self.check_den(other)?;
        let order = product_order(self.order, self.valuation_num(), other.order, other.valuation_num());
        let mut raw: BTreeMap<i64, BTreeMap<i64, BigInt>> = BTreeMap::new();
        for (x, a) in &self.rows {
            for (y, b) in &other.rows {
                mul_into(raw.entry(x + y).or_default(), a.raw_terms(), b.raw_terms(), order);
            }
        }
        Ok(Self::from_raw(self.den, order, raw))
    }

    /// Normalized z-derivative `(2 pi i)^-1 d/dz`: `zeta^x -> x zeta^x`.
    pub fn derive_z(&self) -> ZetaSeries {
        let rows = self
            .rows
            .iter()
            .filter(|(x, _)| **x != 0)
            .map(|(x, r)| (*x, r.scale(&BigInt::from(*x))))
            .collect();
        ZetaSeries {
            den: self.den,
            rows,
            order: self.order,
        }
    }

    /// Realizes `z -> z / n`: the row at `zeta^x` moves to `zeta^(x/n)`.
    pub fn substitute_z_scale(&self, n: i64) -> Result<ZetaSeries> {
        if n <= 0 {
            return Err(Error::usage(format!("scale must be positive, got {n}")));
        }
        let mut rows = BTreeMap::new();
        for (x, r) in &self.rows {
            if x % n != 0 {
                return Err(Error::NotDivisible { zeta_exp: *x, n });
            }
            rows.insert(x / n, r.clone());
        }
        Ok(ZetaSeries {
            den: self.den,
            rows,
            order: self.order,
        })
    }

    /// Realizes `z -> n z`: the row at `zeta^x` moves to `zeta^(n x)`.
    pub fn dilate_z(&self, n: i64) -> Result<ZetaSeries> {
        if n <= 0 {
            return Err(Error::usage(format!("scale must be positive, got {n}")));
        }
        let rows = self.rows.iter().map(|(x, r)| (x * n, r.clone())).collect();
        Ok(ZetaSeries {
            den: self.den,
            rows,
            order: self.order,
        })
    }

    /// The `zeta^0` Fourier coefficient, keeping the order.
    pub fn constant_zeta_row(&self) -> QSeries {
        self.rows
            .get(&0)
            .cloned()
            .unwrap_or_else(|| QSeries::zero(self.order()))
    }

    /// Multiplies every row by `q^shift`.
    pub fn shift_q(&self, shift: QExponent) -> Result<ZetaSeries> {
        let s = shift.with_den(self.den)?;
        let rows = self
            .rows
            .iter()
            .map(|(x, r)| r.shift(s).map(|r| (*x, r)))
            .collect::<Result<_>>()?;
        Ok(ZetaSeries {
            den: self.den,
            rows,
            order: self.order + s.num(),
        })
    }
}

impl From<QSeries> for ZetaSeries {
    fn from(row: QSeries) -> Self {
        ZetaSeries::from_row(row, 0)
    }
}
