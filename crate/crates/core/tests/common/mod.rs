//! Shared helpers for integration tests: a dense Gaussian elimination oracle
//! and proptest strategies for cyclotomic scalars.
#![allow(dead_code)]

use proptest::prelude::*;
use qhcore::exactmath::{Field, Scalar, SparseMatrix};

/// Textbook row reduction on a dense copy; returns the reduced rows and the
/// pivot columns.
pub fn dense_rref(rows: &[Vec<Scalar>], cols: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().unwrap();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &(&f * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn dense_rank(rows: &[Vec<Scalar>], cols: usize) -> usize {
    dense_rref(rows, cols).1.len()
}

pub fn dense_mul_vec(rows: &[Vec<Scalar>], v: &[Scalar]) -> Vec<Scalar> {
    rows.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn sparse_to_dense_vec(v: &[(usize, Scalar)], len: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// Rank of the stacked sparse matrices, computed densely.
pub fn dense_rank_of(mats: &[&SparseMatrix]) -> usize {
    let cols = mats[0].cols();
    let rows: Vec<Vec<Scalar>> = mats.iter().flat_map(|m| m.to_dense()).collect();
    dense_rank(&rows, cols)
}

/// `Σ c_k ζ₈^k` with small rational coefficients.
pub fn q8_scalar() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-6i64..=6, 1i64..=4), 4).prop_map(|coeffs| {
        let f = Field::cyclotomic(8).unwrap();
        coeffs
            .into_iter()
            .enumerate()
            .map(|(k, (p, q))| &Scalar::frac(p, q) * &f.zeta_pow(k as i64))
            .sum()
    })
}

/// Sparse-ish small matrices over `Q(ζ₈)`, about half the entries zero.
pub fn q8_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Vec<Vec<Scalar>>> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        let entry = prop_oneof![Just(Scalar::zero()), q8_scalar()];
        prop::collection::vec(prop::collection::vec(entry, c), r)
    })
}
