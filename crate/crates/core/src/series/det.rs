use num_bigint::BigInt;

use super::ZetaSeries;
use crate::error::{Error, Result};

/// Leibniz determinant `sum_pi sgn(pi) prod_i m[i][pi(i)]`.
///
/// Permutations are walked depth-first so that row prefixes share their
/// partial products. The result order is the minimum over all products.
pub fn det(matrix: &[Vec<ZetaSeries>]) -> Result<ZetaSeries> {
    let n = matrix.len();
    if n == 0 {
        return Err(Error::usage("determinant of an empty matrix"));
    }
    if let Some(row) = matrix.iter().find(|row| row.len() != n) {
        return Err(Error::usage(format!(
            "matrix is not square: {n} rows, a row of length {}",
            row.len()
        )));
    }
    let den = matrix[0][0].den();
    if let Some(e) = matrix.iter().flatten().find(|e| e.den() != den) {
        return Err(Error::DenominatorMismatch {
            left: den,
            right: e.den(),
        });
    }

    let mut used = vec![false; n];
    let mut acc: Option<ZetaSeries> = None;
    expand(matrix, 0, None, 1, &mut used, &mut acc)?;
    Ok(acc.expect("n >= 1 yields at least one permutation"))
}

fn expand(
    m: &[Vec<ZetaSeries>],
    row: usize,
    prefix: Option<&ZetaSeries>,
    sign: i8,
    used: &mut [bool],
    acc: &mut Option<ZetaSeries>,
) -> Result<()> {
    let n = m.len();
    if row == n {
        let term = prefix.expect("row > 0 here");
        let term = if sign < 0 {
            term.scale(&BigInt::from(-1))
        } else {
            term.clone()
        };
        *acc = Some(match acc.take() {
            Some(a) => a.add(&term)?,
            None => term,
        });
        return Ok(());
    }
    for col in 0..n {
        if used[col] {
            continue;
        }
        // Choosing `col` at this row adds one inversion per smaller unused column.
        let inversions = used[..col].iter().filter(|u| !**u).count();
        let s = if inversions % 2 == 0 { sign } else { -sign };
        let product = match prefix {
            Some(p) => p.mul(&m[row][col])?,
            None => m[row][col].clone(),
        };
        used[col] = true;
        expand(m, row + 1, Some(&product), s, used, acc)?;
        used[col] = false;
    }
    Ok(())
}
