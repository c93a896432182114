//! Exact nullspaces by fraction-free Gaussian elimination.
//!
//! Rows live in a Euclidean ring (`i64`, `BigInt`, …). Every row operation
//! is `r_j ← p·r_j − a·r_i` followed by division by the row content, so no
//! fractions appear and entries stay small.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::scalar::EuclideanInt;
use crate::Rational;

fn normalize_row<T: EuclideanInt>(row: &mut [T]) {
    let g = row.iter().fold(T::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g == T::one() {
        return;
    }
    for x in row.iter_mut() {
        *x = x.clone() / g.clone();
    }
}

/// Reduced row echelon form, fraction-free: each pivot column has a single
/// nonzero entry (the pivot). Returns the pivot columns in row order.
pub fn row_reduce<T: EuclideanInt>(rows: &mut Vec<Vec<T>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        // pick the smallest nonzero entry as pivot
        let Some(p) = (r..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()))
        else {
            continue;
        };
        rows.swap(r, p);
        normalize_row(&mut rows[r]);
        let pivot_row = rows[r].clone();
        let pv = pivot_row[c].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let g = pv.gcd(&row[c]);
            let mul_self = pv.clone() / g.clone();
            let mul_pivot = row[c].clone() / g;
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if y.is_zero() && x.is_zero() {
                    continue;
                }
                *x = x.clone() * mul_self.clone() - y.clone() * mul_pivot.clone();
            }
            normalize_row(row);
        }
        pivots.push(c);
        r += 1;
    }
    rows.retain(|row| row.iter().any(|x| !x.is_zero()));
    pivots
}

/// Basis of `{v : A v = 0}` with primitive integer vectors, one per free
/// column, where `A` is given by `rows` with `cols` columns.
pub fn nullspace<T: EuclideanInt>(mut rows: Vec<Vec<T>>, cols: usize) -> Vec<Vec<T>> {
    let pivots = row_reduce(&mut rows, cols);
    let pivot_set: Vec<Option<usize>> = {
        let mut v = vec![None; cols];
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = Some(r);
        }
        v
    };
    let lcm_pivots = pivots
        .iter()
        .enumerate()
        .fold(T::one(), |acc, (r, &c)| acc.lcm(&rows[r][c]));
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| pivot_set[c].is_none()) {
        // x_free = L, x_pivot(r) = -L * rows[r][free] / rows[r][pivot]
        let mut v = vec![T::zero(); cols];
        v[free] = lcm_pivots.clone();
        for (r, &c) in pivots.iter().enumerate() {
            let entry = &rows[r][free];
            if entry.is_zero() {
                continue;
            }
            v[c] = -(lcm_pivots.clone() / rows[r][c].clone()) * entry.clone();
        }
        normalize_row(&mut v);
        basis.push(v);
    }
    basis
}

/// Clear the denominators of a rational row (multiply by their lcm).
pub fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

/// Nullspace of a rational matrix, basis vectors returned as rationals.
pub fn rational_nullspace(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let int_rows: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r)).collect();
    nullspace(int_rows, cols)
        .into_iter()
        .map(|v| v.into_iter().map(Rational::from_integer).collect())
        .collect()
}

/// Rank of an integer matrix.
pub fn rank<T: EuclideanInt>(mut rows: Vec<Vec<T>>, cols: usize) -> usize {
    row_reduce(&mut rows, cols).len()
}
