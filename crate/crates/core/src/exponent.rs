//! Exact rational exponents of `q` on a fixed denominator grid.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A rational exponent `num / den` with `den > 0`.
///
/// The pair is kept unreduced so that every exponent of one computation
/// shares the context denominator. Equality and ordering compare the
/// rational values.
#[derive(Clone, Copy, Debug)]
pub struct QExponent {
    num: i64,
    den: i64,
}

impl QExponent {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den <= 0 {
            return Err(Error::usage(format!(
                "exponent denominator must be positive, got {den}"
            )));
        }
        Ok(QExponent { num, den })
    }

    pub(crate) const fn raw(num: i64, den: i64) -> Self {
        QExponent { num, den }
    }

    pub fn integer(value: i64) -> Self {
        QExponent { num: value, den: 1 }
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    /// Reduced `(numerator, denominator)`.
    pub fn reduced(&self) -> (i64, i64) {
        let g = self.num.gcd(&self.den);
        if g == 0 {
            (0, 1)
        } else {
            (self.num / g, self.den / g)
        }
    }

    /// Numerator of this value over `den`, if it lies on that grid.
    pub fn numerator_over(&self, den: i64) -> Option<i64> {
        let scaled = self.num as i128 * den as i128;
        if scaled % self.den as i128 == 0 {
            i64::try_from(scaled / self.den as i128).ok()
        } else {
            None
        }
    }

    /// Re-expresses this value over `den`, failing if it is not on the grid.
    pub fn with_den(&self, den: i64) -> Result<Self> {
        self.numerator_over(den)
            .map(|num| QExponent { num, den })
            .ok_or(Error::NotRepresentable { value: *self, den })
    }

    /// Smallest grid point `k / den` with `k / den >= self`.
    pub fn ceil_to_den(&self, den: i64) -> Self {
        let scaled = self.num as i128 * den as i128;
        let num = Integer::div_ceil(&scaled, &(self.den as i128));
        QExponent { num: num as i64, den }
    }

    pub fn floor(&self) -> i64 {
        Integer::div_floor(&self.num, &self.den)
    }

    pub fn ceil(&self) -> i64 {
        Integer::div_ceil(&self.num, &self.den)
    }

    pub fn is_positive(&self) -> bool {
        self.num > 0
    }
}

impl PartialEq for QExponent {
    fn eq(&self, other: &Self) -> bool {
        self.num as i128 * other.den as i128 == other.num as i128 * self.den as i128
    }
}

impl Eq for QExponent {}

impl Hash for QExponent {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.reduced().hash(state);
    }
}

impl PartialOrd for QExponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QExponent {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl Add for QExponent {
    type Output = QExponent;

    fn add(self, rhs: Self) -> Self {
        if self.den == rhs.den {
            return QExponent {
                num: self.num + rhs.num,
                den: self.den,
            };
        }
        let den = self.den.lcm(&rhs.den);
        QExponent {
            num: self.num * (den / self.den) + rhs.num * (den / rhs.den),
            den,
        }
    }
}

impl Neg for QExponent {
    type Output = QExponent;

    fn neg(self) -> Self {
        QExponent {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Sub for QExponent {
    type Output = QExponent;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

/// Always printed in lowest terms as `a/b`.
impl fmt::Display for QExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.reduced();
        write!(f, "{n}/{d}")
    }
}

/// Parses `a/b` or a bare integer `a`.
impl FromStr for QExponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::usage(format!("cannot parse exponent {s:?}, expected a/b"));
        let s = s.trim();
        match s.split_once('/') {
            Some((a, b)) => {
                let num = a.trim().parse::<i64>().map_err(|_| bad())?;
                let den = b.trim().parse::<i64>().map_err(|_| bad())?;
                QExponent::new(num, den)
            }
            None => s.parse::<i64>().map(QExponent::integer).map_err(|_| bad()),
        }
    }
}

/// The exponent grid of one computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Context {
    den: i64,
}

impl Context {
    pub fn new(den: i64) -> Result<Self> {
        if den <= 0 {
            return Err(Error::usage(format!("context denominator must be positive, got {den}")));
        }
        Ok(Context { den })
    }

    /// Grid `1 / lcm(24, 2n^2)`: holds k/24, r^2/2, x^2/2n and r^2/2n^2.
    pub fn for_n(n: u32) -> Self {
        let n = i64::from(n.max(1));
        Context {
            den: 24.lcm(&(2 * n * n)),
        }
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    /// `num / den` placed on this grid; errors when not representable.
    pub fn exponent(&self, num: i64, den: i64) -> Result<QExponent> {
        QExponent::new(num, den)?.with_den(self.den)
    }

    pub fn integer(&self, value: i64) -> QExponent {
        QExponent {
            num: value * self.den,
            den: self.den,
        }
    }

    /// An exclusive truncation order on this grid.
    ///
    /// Off-grid values are rounded up; no exponent of the grid lies
    /// between the two, so the truncation is unchanged.
    pub fn order(&self, value: QExponent) -> QExponent {
        value.ceil_to_den(self.den)
    }
}
