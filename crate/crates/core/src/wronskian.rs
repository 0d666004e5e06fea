//! The Wronskian of the theta vector `(theta_{n,1}, ..., theta_{n,n})` and
//! its Fourier coefficients `h_r` along `zeta^r`.
//!
//! Three interchangeable ways of producing the Wronskian are provided behind
//! [`WronskianMethod`] and collected in a [`MethodRegistry`] so callers can
//! pick one by name.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exponent::QExponent;
use crate::lattice::{enumerate_with, TupleQuery, VandermondeSign};
use crate::series::{det, QSeries, ZetaSeries};
use crate::special::theta_component;

fn check_odd(n: u32) -> Result<()> {
    if n == 0 || n.is_multiple_of(2) {
        return Err(Error::usage(format!("n must be odd, got {n}")));
    }
    Ok(())
}

/// `(theta_{n,1}, ..., theta_{n,n})` at a common order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaVector {
    n: u32,
    components: Vec<ZetaSeries>,
    order: QExponent,
}

impl ThetaVector {
    pub fn new(n: u32, order: QExponent) -> Result<Self> {
        check_odd(n)?;
        let components = (1..=n)
            .map(|i| theta_component(n, i, order))
            .collect::<Result<Vec<_>>>()?;
        Ok(ThetaVector { n, components, order })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> QExponent {
        self.order
    }

    pub fn components(&self) -> &[ZetaSeries] {
        &self.components
    }
}

/// `det(D^{k} theta_{n,i})_{i, k}` with the normalized derivative `D`.
pub fn wronskian_determinant(v: &ThetaVector) -> Result<ZetaSeries> {
    let matrix: Vec<Vec<ZetaSeries>> = v
        .components
        .iter()
        .map(|c| {
            std::iter::successors(Some(c.clone()), |d| Some(d.derive_z()))
                .take(v.n as usize)
                .collect()
        })
        .collect();
    det(&matrix)
}

/// Lattice expansion `sum weight(x) q^{|x|^2/2n} zeta^{sum x}` of the Wronskian.
pub fn wronskian_lattice(n: u32, order: QExponent, sign: VandermondeSign) -> Result<ZetaSeries> {
    check_odd(n)?;
    let query = TupleQuery::new(n, order, None)?;
    let terms = enumerate_with(query, sign).map(|p| (p.q_exp, p.zeta_exp, p.weight));
    ZetaSeries::from_terms(order, terms)
}

/// `h_r = sum_{sum x = r} weight(x) q^{|x|^2/2n - r^2/2n^2}`, truncated below `order`.
pub fn h_r(n: u32, r: i64, order: QExponent, sign: VandermondeSign) -> Result<QSeries> {
    check_odd(n)?;
    let n64 = i64::from(n);
    let shift = QExponent::new(r * r, 2 * n64 * n64)?.with_den(order.den())?;
    let query = TupleQuery::new(n, order + shift, Some(r))?;
    let terms = enumerate_with(query, sign).map(|p| (p.q_exp - shift, p.weight));
    QSeries::from_terms(order, terms)
}

/// `sum_r h_r(tau) q^{r^2/2n^2} zeta^r` over the multiples `r` of `n` that
/// contribute below `order`.
pub fn assemble_from_h(n: u32, order: QExponent, sign: VandermondeSign) -> Result<ZetaSeries> {
    check_odd(n)?;
    let n64 = i64::from(n);
    let mut raw: BTreeMap<i64, BTreeMap<i64, BigInt>> = BTreeMap::new();
    let mut r = 0i64;
    loop {
        let shift = QExponent::new(r * r, 2 * n64 * n64)?.with_den(order.den())?;
        if shift >= order {
            break;
        }
        for rr in if r == 0 { vec![0] } else { vec![r, -r] } {
            let row = h_r(n, rr, order - shift, sign)?.shift(shift)?;
            let slot = raw.entry(rr).or_default();
            for (q, c) in row.terms() {
                slot.insert(q.num(), c.clone());
            }
        }
        r += n64;
    }
    Ok(ZetaSeries::from_raw(order.den(), order.num(), raw))
}

/// One way of computing the Wronskian of the theta vector.
pub trait WronskianMethod: Send + Sync {
    fn name(&self) -> &'static str;

    fn compute(&self, n: u32, order: QExponent) -> Result<ZetaSeries>;
}

impl fmt::Debug for dyn WronskianMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WronskianMethod({})", self.name())
    }
}

/// Leibniz determinant of the derivative matrix.
#[derive(Clone, Copy, Debug, Default)]
pub struct Determinant;

impl WronskianMethod for Determinant {
    fn name(&self) -> &'static str {
        "determinant"
    }

    fn compute(&self, n: u32, order: QExponent) -> Result<ZetaSeries> {
        wronskian_determinant(&ThetaVector::new(n, order)?)
    }
}

/// Direct lattice sum with a chosen Vandermonde sign.
#[derive(Clone, Copy, Debug, Default)]
pub struct Lattice {
    pub sign: VandermondeSign,
}

impl WronskianMethod for Lattice {
    fn name(&self) -> &'static str {
        match self.sign {
            VandermondeSign::Determinant => "lattice",
            VandermondeSign::Printed => "lattice-printed-sign",
        }
    }

    fn compute(&self, n: u32, order: QExponent) -> Result<ZetaSeries> {
        wronskian_lattice(n, order, self.sign)
    }
}

/// Reassembly from the `h_r` series.
#[derive(Clone, Copy, Debug, Default)]
pub struct FromH;

impl WronskianMethod for FromH {
    fn name(&self) -> &'static str {
        "from-h"
    }

    fn compute(&self, n: u32, order: QExponent) -> Result<ZetaSeries> {
        assemble_from_h(n, order, VandermondeSign::Determinant)
    }
}

/// Wronskian methods by name.
#[derive(Clone, Debug)]
pub struct MethodRegistry {
    methods: BTreeMap<&'static str, Arc<dyn WronskianMethod>>,
}

impl MethodRegistry {
    pub fn empty() -> Self {
        MethodRegistry {
            methods: BTreeMap::new(),
        }
    }

    /// `determinant`, `lattice`, `lattice-printed-sign` and `from-h`.
    pub fn with_builtins() -> Self {
        let mut reg = Self::empty();
        reg.register(Arc::new(Determinant));
        reg.register(Arc::new(Lattice {
            sign: VandermondeSign::Determinant,
        }));
        reg.register(Arc::new(Lattice {
            sign: VandermondeSign::Printed,
        }));
        reg.register(Arc::new(FromH));
        reg
    }

    /// Replaces any method already registered under the same name.
    pub fn register(&mut self, method: Arc<dyn WronskianMethod>) {
        self.methods.insert(method.name(), method);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn WronskianMethod>> {
        self.methods
            .get(name)
            .cloned()
            .ok_or_else(|| Error::usage(format!("unknown method {name:?}; known: {}", self.names().join(", "))))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.methods.keys().copied().collect()
    }
}

impl Default for MethodRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}
