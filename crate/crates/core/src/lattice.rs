//! Enumeration of integer tuples `(x_1, ..., x_n)` with `x_i = i (mod n)`
//! under the bound `sum x_i^2 / 2n < max_q_exponent`, optionally with a
//! fixed coordinate sum.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exponent::QExponent;

/// Sign convention for the Vandermonde weight.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum VandermondeSign {
    /// `prod_{i<j} (x_j - x_i)`: the determinant with columns `1, x, ..., x^{n-1}`.
    #[default]
    Determinant,
    /// `prod_{i<j} (x_i - x_j)`: differs from the determinant by `(-1)^{n(n-1)/2}`.
    Printed,
}

impl VandermondeSign {
    pub fn flipped(self) -> Self {
        match self {
            VandermondeSign::Determinant => VandermondeSign::Printed,
            VandermondeSign::Printed => VandermondeSign::Determinant,
        }
    }
}

/// `prod_{i<j} (x_j - x_i)`.
pub fn vandermonde(x: &[i64]) -> BigInt {
    vandermonde_with(x, VandermondeSign::Determinant)
}

pub fn vandermonde_with(x: &[i64], sign: VandermondeSign) -> BigInt {
    let mut w = BigInt::one();
    for (i, xi) in x.iter().enumerate() {
        for xj in &x[i + 1..] {
            let d = match sign {
                VandermondeSign::Determinant => xj - xi,
                VandermondeSign::Printed => xi - xj,
            };
            if d == 0 {
                return BigInt::from(0);
            }
            w *= d;
        }
    }
    w
}

/// `floor(sqrt(2 n max_q_exponent))`: every admissible coordinate has `|x_i|` at most this.
pub fn coordinate_bound(n: u32, max_q_exponent: QExponent) -> u64 {
    let limit = 2 * i128::from(n) * max_q_exponent.num() as i128;
    let den = max_q_exponent.den() as i128;
    if limit <= 0 {
        return 0;
    }
    // largest b with b^2 * den <= limit
    let mut b = (limit as f64 / den as f64).sqrt() as i128;
    while (b + 1) * (b + 1) * den <= limit {
        b += 1;
    }
    while b > 0 && b * b * den > limit {
        b -= 1;
    }
    b as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TupleQuery {
    n: u32,
    max_q_exponent: QExponent,
    sum_constraint: Option<i64>,
}

impl TupleQuery {
    /// `max_q_exponent`'s denominator must be a multiple of `2n` so that
    /// every tuple's exponent lies on its grid.
    pub fn new(n: u32, max_q_exponent: QExponent, sum_constraint: Option<i64>) -> Result<Self> {
        if n == 0 || n.is_multiple_of(2) {
            return Err(Error::usage(format!("n must be odd, got {n}")));
        }
        let step = QExponent::new(1, 2 * i64::from(n))?;
        step.with_den(max_q_exponent.den())?;
        Ok(TupleQuery {
            n,
            max_q_exponent,
            sum_constraint,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn max_q_exponent(&self) -> QExponent {
        self.max_q_exponent
    }

    pub fn sum_constraint(&self) -> Option<i64> {
        self.sum_constraint
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePoint {
    pub tuple: Vec<i64>,
    pub weight: BigInt,
    pub q_exp: QExponent,
    pub zeta_exp: i64,
}

/// All admissible tuples, each exactly once, weighted by [`vandermonde`].
pub fn enumerate(query: TupleQuery) -> TupleIter {
    TupleIter::new(query, VandermondeSign::Determinant)
}

pub fn enumerate_with(query: TupleQuery, sign: VandermondeSign) -> TupleIter {
    TupleIter::new(query, sign)
}

/// Depth-first search over coordinates, stepping each through its residue
/// class and pruning on the remaining square budget.
#[derive(Debug)]
pub struct TupleIter {
    n: usize,
    modulus: i64,
    /// admissible iff `den * sum_sq < limit`
    den: i128,
    limit: i128,
    bound: i64,
    sum: Option<i64>,
    sign: VandermondeSign,
    /// least `x^2` over the residue class of each coordinate, summed from the right
    tail_min_sq: Vec<i128>,
    tuple: Vec<i64>,
    prefix_sq: Vec<i128>,
    prefix_sum: Vec<i64>,
    q_den: i64,
    done: bool,
    started: bool,
}

impl TupleIter {
    fn new(query: TupleQuery, sign: VandermondeSign) -> Self {
        let n = query.n as usize;
        let modulus = i64::from(query.n);
        let max = query.max_q_exponent;
        let bound = coordinate_bound(query.n, max) as i64;
        let mut tail_min_sq = vec![0i128; n + 1];
        for k in (0..n).rev() {
            let r = (k as i64 + 1).rem_euclid(modulus);
            let m = r.min(modulus - r) as i128;
            tail_min_sq[k] = tail_min_sq[k + 1] + m * m;
        }
        TupleIter {
            n,
            modulus,
            den: max.den() as i128,
            limit: 2 * modulus as i128 * max.num() as i128,
            bound,
            sum: query.sum_constraint,
            sign,
            tail_min_sq,
            tuple: Vec::with_capacity(n),
            prefix_sq: vec![0],
            prefix_sum: vec![0],
            q_den: max.den(),
            done: false,
            started: false,
        }
    }

    fn first_value(&self, depth: usize) -> i64 {
        let residue = depth as i64 + 1;
        -self.bound + (residue + self.bound).rem_euclid(self.modulus)
    }

    /// Whether the partial tuple of length `depth` (already pushed) can extend.
    fn feasible(&self, depth: usize) -> bool {
        let sq = self.prefix_sq[depth];
        let rest = self.n - depth;
        if self.den * (sq + self.tail_min_sq[depth]) >= self.limit {
            return false;
        }
        match self.sum {
            None => true,
            Some(target) => {
                let s = (target - self.prefix_sum[depth]) as i128;
                if rest == 0 {
                    return s == 0;
                }
                // remaining coordinates have sum of squares >= s^2 / rest
                self.den * (s * s) < (self.limit - self.den * sq) * rest as i128
            }
        }
    }

    fn push(&mut self, x: i64) {
        let d = self.tuple.len();
        self.tuple.push(x);
        self.prefix_sq.push(self.prefix_sq[d] + (x as i128) * (x as i128));
        self.prefix_sum.push(self.prefix_sum[d] + x);
    }

    fn pop(&mut self) -> Option<i64> {
        self.prefix_sq.pop();
        self.prefix_sum.pop();
        self.tuple.pop()
    }

    /// Advances to the next complete admissible tuple.
    fn advance(&mut self) -> bool {
        // candidate value for the coordinate at depth tuple.len()
        let mut next = if self.started {
            match self.pop() {
                Some(x) => x + self.modulus,
                None => return false,
            }
        } else {
            self.started = true;
            self.first_value(0)
        };
        loop {
            let depth = self.tuple.len();
            if next > self.bound {
                match self.pop() {
                    Some(x) => {
                        next = x + self.modulus;
                        continue;
                    }
                    None => return false,
                }
            }
            self.push(next);
            if self.feasible(depth + 1) {
                if depth + 1 == self.n {
                    return true;
                }
                next = self.first_value(depth + 1);
            } else {
                self.pop();
                next += self.modulus;
            }
        }
    }
}

impl Iterator for TupleIter {
    type Item = LatticePoint;

    fn next(&mut self) -> Option<LatticePoint> {
        if self.done || self.n == 0 {
            return None;
        }
        if !self.advance() {
            self.done = true;
            return None;
        }
        let sum_sq = self.prefix_sq[self.n] as i64;
        let scale = self.q_den / (2 * self.modulus);
        Some(LatticePoint {
            weight: vandermonde_with(&self.tuple, self.sign),
            q_exp: QExponent::raw(sum_sq * scale, self.q_den),
            zeta_exp: self.prefix_sum[self.n],
            tuple: self.tuple.clone(),
        })
    }
}
