use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exponent::QExponent;

/// A truncated series `sum c_e q^e` with exact integer coefficients.
///
/// Exponents are stored as numerators over the series denominator. Every
/// stored exponent is below `order` and no stored coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    den: i64,
    terms: BTreeMap<i64, BigInt>,
    order: i64,
}

impl QSeries {
    pub fn zero(order: QExponent) -> Self {
        QSeries {
            den: order.den(),
            terms: BTreeMap::new(),
            order: order.num(),
        }
    }

    pub fn one(order: QExponent) -> Self {
        Self::monomial(QExponent::raw(0, order.den()), BigInt::one(), order).expect("zero lies on every grid")
    }

    pub fn monomial(q_exp: QExponent, coeff: BigInt, order: QExponent) -> Result<Self> {
        Self::from_terms(order, [(q_exp, coeff)])
    }

    /// Builds a series from `(exponent, coefficient)` pairs.
    ///
    /// Repeated exponents accumulate; terms at or above `order` are dropped.
    pub fn from_terms<I>(order: QExponent, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (QExponent, BigInt)>,
    {
        let den = order.den();
        let mut out = QSeries::zero(order);
        for (q, c) in terms {
            let e = q.numerator_over(den).ok_or(Error::NotRepresentable { value: q, den })?;
            out.add_term(e, c);
        }
        Ok(out)
    }

    pub(crate) fn from_raw(den: i64, order: i64, terms: BTreeMap<i64, BigInt>) -> Self {
        let mut terms = terms;
        terms.retain(|e, c| *e < order && !c.is_zero());
        QSeries { den, terms, order }
    }

    pub(crate) fn add_term(&mut self, e: i64, c: BigInt) {
        if e >= self.order || c.is_zero() {
            return;
        }
        accumulate(&mut self.terms, e, c);
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn order(&self) -> QExponent {
        QExponent::raw(self.order, self.den)
    }

    pub(crate) fn order_num(&self) -> i64 {
        self.order
    }

    pub(crate) fn raw_terms(&self) -> &BTreeMap<i64, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest stored exponent, if any.
    pub fn lead(&self) -> Option<QExponent> {
        self.lead_num().map(|e| QExponent::raw(e, self.den))
    }

    pub(crate) fn lead_num(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Leading exponent, or the order for the zero series.
    ///
    /// This is the exponent below which the true series is known to vanish.
    pub(crate) fn valuation_num(&self) -> i64 {
        self.lead_num().unwrap_or(self.order)
    }

    pub fn terms(&self) -> impl Iterator<Item = (QExponent, &BigInt)> + '_ {
        self.terms.iter().map(move |(e, c)| (QExponent::raw(*e, self.den), c))
    }

    /// Coefficient of `q^q_exp`; distinguishes "unknown" from zero.
    pub fn coefficient(&self, q_exp: QExponent) -> Result<BigInt> {
        if q_exp >= self.order() {
            return Err(Error::OutOfValidity {
                q_exp,
                order: self.order(),
            });
        }
        Ok(q_exp
            .numerator_over(self.den)
            .and_then(|e| self.terms.get(&e).cloned())
            .unwrap_or_default())
    }

    pub(crate) fn check_den(&self, den: i64) -> Result<()> {
        if self.den != den {
            return Err(Error::DenominatorMismatch {
                left: self.den,
                right: den,
            });
        }
        Ok(())
    }

    /// Drops everything at or above `order` (never raises the order).
    pub fn truncate(&self, order: QExponent) -> Result<Self> {
        let o = order.with_den(self.den)?.num().min(self.order);
        Ok(QSeries::from_raw(self.den, o, self.terms.clone()))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(&self, other: &QSeries) -> Result<QSeries> {
        other.check_den(self.den)?;
        let order = self.order.min(other.order);
        let mut out = QSeries::from_raw(self.den, order, self.terms.clone());
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        Ok(out)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(&self) -> QSeries {
        self.scale(&BigInt::from(-1))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(&self, other: &QSeries) -> Result<QSeries> {
        self.add(&other.neg())
    }

    pub fn scale(&self, factor: &BigInt) -> QSeries {
        let terms = self.terms.iter().map(|(e, c)| (*e, c * factor)).collect();
        QSeries::from_raw(self.den, self.order, terms)
    }

    /// Multiplies by `q^shift`; the order moves with it.
    pub fn shift(&self, shift: QExponent) -> Result<QSeries> {
        let s = shift.with_den(self.den)?.num();
        let terms = self.terms.iter().map(|(e, c)| (e + s, c.clone())).collect();
        Ok(QSeries::from_raw(self.den, self.order + s, terms))
    }

    /// Cauchy product; exact below `min(order_a + lead_b, order_b + lead_a)`.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(&self, other: &QSeries) -> Result<QSeries> {
        other.check_den(self.den)?;
        let order = product_order(self.order, self.valuation_num(), other.order, other.valuation_num());
        let mut terms = BTreeMap::new();
        mul_into(&mut terms, &self.terms, &other.terms, order);
        Ok(QSeries::from_raw(self.den, order, terms))
    }
}

pub(crate) fn product_order(order_a: i64, val_a: i64, order_b: i64, val_b: i64) -> i64 {
    (order_a + val_b).min(order_b + val_a)
}

pub(crate) fn accumulate(terms: &mut BTreeMap<i64, BigInt>, e: i64, c: BigInt) {
    use std::collections::btree_map::Entry;
    match terms.entry(e) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Adds `a * b` restricted to exponents below `limit` into `out`.
pub(crate) fn mul_into(
    out: &mut BTreeMap<i64, BigInt>,
    a: &BTreeMap<i64, BigInt>,
    b: &BTreeMap<i64, BigInt>,
    limit: i64,
) {
    let Some(&b_min) = b.keys().next() else { return };
    for (ea, ca) in a {
        if ea + b_min >= limit {
            break;
        }
        for (eb, cb) in b {
            let e = ea + eb;
            if e >= limit {
                break;
            }
            accumulate(out, e, ca * cb);
        }
    }
}
