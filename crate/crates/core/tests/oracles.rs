//! Independent brute-force oracles checked against the engine.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use qtheta_core::lattice::{coordinate_bound, enumerate, vandermonde, LatticePoint, TupleQuery};
use qtheta_core::special::{eta_power, theta_component, theta_sum, theta_triple_product};
use qtheta_core::verify::{self, compare};
use qtheta_core::wronskian::{wronskian_determinant, wronskian_lattice, Determinant, Lattice, ThetaVector};
use qtheta_core::{Context, QExponent};

const SIGN: qtheta_core::lattice::VandermondeSign = qtheta_core::lattice::VandermondeSign::Determinant;

/// Coefficients of `prod_{m=1}^{len-1} (1 - q^m)^k` by schoolbook polynomial products.
fn euler_power(k: u32, len: usize) -> Vec<i128> {
    let mut acc = vec![0i128; len];
    acc[0] = 1;
    for m in 1..len {
        for _ in 0..k {
            let mut factor = vec![0i128; len];
            factor[0] = 1;
            factor[m] = -1;
            let mut next = vec![0i128; len];
            for (i, a) in acc.iter().enumerate() {
                for (j, f) in factor.iter().enumerate() {
                    if i + j < len {
                        next[i + j] += a * f;
                    }
                }
            }
            acc = next;
        }
    }
    acc
}

fn det_i128(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|c| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != c)
                        .map(|(_, v)| *v)
                        .collect()
                })
                .collect();
            let s = if c % 2 == 0 { 1 } else { -1 };
            s * m[0][c] * det_i128(&minor)
        })
        .sum()
}

/// Every tuple of `[-b, b]^n` meeting the constraints, by full scan.
fn box_scan(n: u32, b: i64, max: QExponent, sum: Option<i64>) -> BTreeSet<Vec<i64>> {
    let n_us = n as usize;
    let mut out = BTreeSet::new();
    let side = (2 * b + 1) as usize;
    let total = side.pow(n);
    for idx in 0..total {
        let mut rest = idx;
        let x: Vec<i64> = (0..n_us)
            .map(|_| {
                let v = (rest % side) as i64 - b;
                rest /= side;
                v
            })
            .collect();
        let residues_ok = x
            .iter()
            .enumerate()
            .all(|(i, v)| (v - (i as i64 + 1)).rem_euclid(n as i64) == 0);
        let norm: i64 = x.iter().map(|v| v * v).sum();
        let below = QExponent::new(norm, 2 * n as i64).unwrap() < max;
        let sum_ok = sum.is_none_or(|r| x.iter().sum::<i64>() == r);
        if residues_ok && below && sum_ok {
            out.insert(x);
        }
    }
    out
}

fn points(n: u32, max: QExponent, sum: Option<i64>) -> Vec<LatticePoint> {
    enumerate(TupleQuery::new(n, max, sum).unwrap()).collect()
}

#[test]
fn eta_first_power_follows_pentagonal_numbers() {
    let ctx = Context::for_n(1);
    let eta = eta_power(1, ctx.integer(8)).unwrap();
    let brute = euler_power(1, 8);
    let mut pentagonal = BTreeMap::new();
    for k in -3i64..=3 {
        let g = k * (3 * k - 1) / 2;
        if (0..8).contains(&g) {
            pentagonal.insert(g, if k % 2 == 0 { 1i128 } else { -1 });
        }
    }
    for j in 0..8i64 {
        let q = ctx.exponent(24 * j + 1, 24).unwrap();
        let got = eta.coefficient(q).unwrap();
        assert_eq!(got, BigInt::from(brute[j as usize]), "q^{q}");
        assert_eq!(got, BigInt::from(*pentagonal.get(&j).unwrap_or(&0)), "q^{q}");
    }
    // 1 - q - q^2 + q^5 + q^7
    assert_eq!(eta.len(), 5);
}

#[test]
fn eta_24_matches_brute_force() {
    let ctx = Context::for_n(5);
    let eta = eta_power(24, ctx.integer(16)).unwrap();
    let brute = euler_power(24, 15);
    for m in 1..16i64 {
        assert_eq!(
            eta.coefficient(ctx.integer(m)).unwrap(),
            BigInt::from(brute[m as usize - 1]),
            "q^{m}"
        );
    }
    assert_eq!(eta.coefficient(ctx.integer(1)).unwrap(), BigInt::from(1));
    assert_eq!(eta.coefficient(ctx.integer(2)).unwrap(), BigInt::from(-24));
}

#[test]
fn eta_powers_multiply() {
    let ctx = Context::for_n(3);
    let o = ctx.integer(6);
    let sq = eta_power(24, o).unwrap().mul(&eta_power(24, o).unwrap()).unwrap();
    let direct = eta_power(48, o).unwrap();
    assert_eq!(sq.order(), ctx.integer(7));
    assert_eq!(sq.truncate(o).unwrap(), direct);
    for (a, b) in [(1, 2), (3, 5), (8, 16), (1, 23)] {
        let p = eta_power(a, o).unwrap().mul(&eta_power(b, o).unwrap()).unwrap();
        assert_eq!(p.truncate(o).unwrap(), eta_power(a + b, o).unwrap(), "{a}+{b}");
    }
}

#[test]
fn enumeration_agrees_with_box_scan() {
    for n in [1u32, 3] {
        let ctx = Context::for_n(n);
        for num in 1..=24 {
            let max = ctx.exponent(num, 6).unwrap();
            let b = coordinate_bound(n, max) as i64;
            if b > 4 {
                continue;
            }
            for sum in [None, Some(0), Some(3), Some(-3), Some(1)] {
                let got: Vec<_> = points(n, max, sum).into_iter().map(|p| p.tuple).collect();
                let unique: BTreeSet<_> = got.iter().cloned().collect();
                assert_eq!(unique.len(), got.len(), "duplicates for n={n} max={max}");
                // scan a box strictly wider than the claimed bound
                assert_eq!(unique, box_scan(n, b + 1, max, sum), "n={n} max={max} sum={sum:?}");
            }
        }
    }
}

#[test]
fn enumeration_records_exponents_and_weights() {
    let max = Context::for_n(5).integer(2);
    for p in points(5, max, None) {
        let norm: i64 = p.tuple.iter().map(|v| v * v).sum();
        assert_eq!(p.q_exp, QExponent::new(norm, 10).unwrap());
        assert_eq!(p.zeta_exp, p.tuple.iter().sum::<i64>());
        assert_eq!(p.weight, vandermonde(&p.tuple));
    }
}

#[test]
fn vandermonde_is_the_power_matrix_determinant() {
    let tuples: [&[i64]; 5] = [&[1, -1, 0], &[0, 1, 2], &[4, -3, 7, 2], &[1, 2, -2, 6, 0], &[2, 2, 5]];
    for x in tuples {
        let m: Vec<Vec<i128>> = x
            .iter()
            .map(|xi| (0..x.len() as u32).map(|k| (*xi as i128).pow(k)).collect())
            .collect();
        assert_eq!(vandermonde(x), BigInt::from(det_i128(&m)), "{x:?}");
    }
}

#[test]
fn zeta_exponents_are_multiples_of_n() {
    for n in [3u32, 5, 7] {
        let max = Context::for_n(n).integer(3);
        for p in points(n, max, None) {
            assert_eq!(p.zeta_exp.rem_euclid(n as i64), 0, "{:?}", p.tuple);
        }
    }
}

/// Checks that `map` is a weight-preserving bijection between `from` and
/// `to` wherever both the point and its image lie inside the enumeration bound.
fn assert_bijective_on_overlap(
    from: &[LatticePoint],
    to: &[LatticePoint],
    map: impl Fn(&[i64]) -> Vec<i64>,
    unmap: impl Fn(&[i64]) -> Vec<i64>,
    bound: i64,
) {
    let norm = |x: &[i64]| x.iter().map(|v| v * v).sum::<i64>();
    let to_set: BTreeMap<_, _> = to.iter().map(|p| (p.tuple.clone(), p.weight.clone())).collect();
    let from_set: BTreeMap<_, _> = from.iter().map(|p| (p.tuple.clone(), p.weight.clone())).collect();
    let mut hits = 0;
    for p in from {
        let y = map(&p.tuple);
        if norm(&y) < bound {
            assert_eq!(to_set.get(&y), Some(&p.weight), "{:?} -> {:?}", p.tuple, y);
            hits += 1;
        }
    }
    for p in to {
        let x = unmap(&p.tuple);
        if norm(&x) < bound {
            assert!(from_set.contains_key(&x), "{:?} has no preimage", p.tuple);
        }
    }
    assert!(hits > 0);
}

#[test]
fn translation_by_n_shifts_the_sum_by_n_squared() {
    let n = 3u32;
    let n64 = 3i64;
    let max = Context::for_n(n).integer(12);
    let bound = 2 * n64 * 12;
    for r in [0, 3, -3] {
        let from = points(n, max, Some(r));
        let to = points(n, max, Some(r + n64 * n64));
        assert_bijective_on_overlap(
            &from,
            &to,
            |x| x.iter().map(|v| v + n64).collect(),
            |y| y.iter().map(|v| v - n64).collect(),
            bound,
        );
    }
}

#[test]
fn cyclic_relabelling_shifts_the_sum_by_n() {
    // (x_2, ..., x_n, x_1) -> (x_1 + 1, ..., x_n + 1): y_{i+1} = x_i + 1, y_1 = x_n + 1.
    for n in [3u32, 5] {
        let n_us = n as usize;
        let max = Context::for_n(n).integer(6);
        let bound = 2 * i64::from(n) * 6;
        let rotate = |x: &[i64]| (0..n_us).map(|i| x[(i + n_us - 1) % n_us] + 1).collect::<Vec<_>>();
        let unrotate = |y: &[i64]| (0..n_us).map(|i| y[(i + 1) % n_us] - 1).collect::<Vec<_>>();
        for r in [0i64, n as i64, -(n as i64)] {
            let from = points(n, max, Some(r));
            let to = points(n, max, Some(r + n as i64));
            assert_bijective_on_overlap(&from, &to, rotate, unrotate, bound);
        }
    }
}

#[test]
fn determinant_and_lattice_agree() {
    for (n, o) in [(3u32, 2), (3, 4), (5, 3), (7, 3)] {
        let order = Context::for_n(n).integer(o);
        let det = wronskian_determinant(&ThetaVector::new(n, order).unwrap()).unwrap();
        let lat = wronskian_lattice(n, order, SIGN).unwrap();
        assert_eq!(det.truncate(order).unwrap(), lat, "n={n} order={o}");
    }
}

#[test]
fn determinant_path_gives_identical_reports() {
    for n in [3u32, 5] {
        for o in [2, 3] {
            let order = QExponent::integer(o);
            let a = verify::verify_theorem1(n, order, &Lattice::default()).unwrap();
            let b = verify::verify_theorem1(n, order, &Determinant).unwrap();
            assert!(a.same_outcome(&b), "{a:?} vs {b:?}");
        }
    }
}

#[test]
fn theta_components_partition_the_integers() {
    for n in [1u32, 3, 5, 7] {
        let ctx = Context::for_n(n);
        let order = ctx.integer(5);
        let mut seen = BTreeSet::new();
        for i in 1..=n {
            let c = theta_component(n, i, order).unwrap();
            for (q, x, coeff) in c.terms() {
                assert!(seen.insert(x), "x={x} in two components");
                assert_eq!((x - i as i64).rem_euclid(n as i64), 0);
                assert_eq!(q, QExponent::new(x * x, 2 * n as i64).unwrap());
                assert_eq!(*coeff, BigInt::from(1));
            }
        }
        let expected: BTreeSet<i64> = (-100..=100)
            .filter(|x| QExponent::new(x * x, 2 * n as i64).unwrap() < order)
            .collect();
        assert_eq!(seen, expected, "n={n}");
    }
}

#[test]
fn triple_product_matches_sum_at_every_half_order() {
    let ctx = Context::for_n(1);
    for half in 1..=24 {
        let order = ctx.exponent(half, 2).unwrap();
        assert_eq!(
            theta_sum(order).unwrap(),
            theta_triple_product(order).unwrap(),
            "order {order}"
        );
    }
}

#[test]
fn sln_leading_terms_match_hand_enumeration() {
    // n = 3, sum 0, norm 2: only (1, -1, 0), weight (-2)(-1)(1) = 2.
    let r = verify::verify_sln(3, QExponent::integer(4)).unwrap();
    assert!(r.matched);
    let ctx = Context::for_n(3);
    let eta = eta_power(8, ctx.integer(4)).unwrap().scale(&BigInt::from(2));
    assert_eq!(
        eta.terms().next().map(|(q, c)| (q, c.clone())),
        Some((ctx.exponent(1, 3).unwrap(), BigInt::from(2)))
    );
    let tuples: Vec<_> = points(3, ctx.exponent(25, 72).unwrap(), Some(0));
    assert_eq!(tuples.len(), 1);
    assert_eq!(tuples[0].weight, BigInt::from(2));
}

#[test]
fn wronskian_support_is_in_n_z() {
    let ctx = Context::for_n(3);
    let w = wronskian_lattice(3, ctx.integer(3), SIGN).unwrap();
    for (q, x, _) in w.terms() {
        assert_eq!(x.rem_euclid(3), 0, "zeta^{x} at q^{q}");
    }
    let cmp = compare(&w, &w).unwrap();
    assert!(cmp.first_mismatch.is_none());
}
