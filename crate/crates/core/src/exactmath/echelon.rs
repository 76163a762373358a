//! Incremental reduced row echelon form.
//!
//! Rows are inserted one at a time and kept fully reduced: every stored row has
//! a pivot entry equal to one and vanishes in the pivot columns of all other
//! rows. Reducing a vector against the basis is then a single pass over its
//! pivot-column entries, which lets large stacked systems be streamed in
//! without materialising them.

use std::collections::BTreeMap;

use super::scalar::Scalar;
use super::sparse::{vec_get, vec_scale, Accumulator, SparseVec};

pub struct RowEchelon {
    cols: usize,
    rows: Vec<SparseVec>,
    /// pivot column -> index into `rows`
    pivots: BTreeMap<usize, usize>,
    scratch: Accumulator,
}

impl RowEchelon {
    pub fn new(cols: usize) -> Self {
        RowEchelon {
            cols,
            rows: Vec::new(),
            pivots: BTreeMap::new(),
            scratch: Accumulator::new(cols),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Residual of `v` after subtracting its projection onto the row space
    /// along the pivot columns; zero iff `v` lies in the row space.
    pub fn reduce(&mut self, v: &[(usize, Scalar)]) -> SparseVec {
        for (i, x) in v {
            self.scratch.add(*i, x);
            if let Some(&r) = self.pivots.get(i) {
                self.scratch.add_scaled(&-x, &self.rows[r]);
            }
        }
        self.scratch.take()
    }

    pub fn contains(&mut self, v: &[(usize, Scalar)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the row space; returns whether the rank grew.
    pub fn insert(&mut self, v: &[(usize, Scalar)]) -> bool {
        if v.is_empty() || self.is_full() {
            return false;
        }
        let res = self.reduce(v);
        let Some((p, lead)) = res.first().cloned() else {
            return false;
        };
        let inv = lead.inv().expect("leading entry is non-zero");
        let row = vec_scale(&res, &inv);
        for other in self.rows.iter_mut() {
            let c = vec_get(other, p);
            if !c.is_zero() {
                *other = super::sparse::vec_axpy(other, &-c, &row);
            }
        }
        self.pivots.insert(p, self.rows.len());
        self.rows.push(row);
        true
    }

    /// Rows of the reduced echelon form ordered by pivot column.
    pub fn basis(&self) -> Vec<SparseVec> {
        self.pivots.values().map(|&r| self.rows[r].clone()).collect()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    /// Exact basis of the right kernel of the stored rows, one vector per
    /// free column in increasing order.
    pub fn nullspace(&self) -> Vec<SparseVec> {
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !self.pivots.contains_key(c)) {
            let mut v: SparseVec = vec![(free, Scalar::one())];
            for (&p, &r) in &self.pivots {
                let c = vec_get(&self.rows[r], free);
                if !c.is_zero() {
                    v.push((p, -c));
                }
            }
            v.sort_by_key(|e| e.0);
            out.push(v);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_form_and_kernel() {
        let s = |v: i64| Scalar::from(v);
        let mut e = RowEchelon::new(3);
        assert!(e.insert(&[(0, s(1)), (1, s(2)), (2, s(3))]));
        assert!(e.insert(&[(1, s(1)), (2, s(1))]));
        assert!(!e.insert(&[(0, s(2)), (1, s(5)), (2, s(7))]));
        assert_eq!(e.rank(), 2);
        let ns = e.nullspace();
        assert_eq!(ns, vec![vec![(0, s(-1)), (1, s(-1)), (2, s(1))]]);
        assert!(e.contains(&[(0, s(1)), (1, s(3)), (2, s(4))]));
    }
}
