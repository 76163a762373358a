//! Sparse vectors and row-major sparse matrices over [`Scalar`].

use std::fmt;

use super::echelon::RowEchelon;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Sparse vector: `(index, value)` pairs with strictly increasing indices and
/// no stored zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

/// Dense scratch space for summing many sparse contributions into one vector.
pub struct Accumulator {
    vals: Vec<Scalar>,
    live: Vec<bool>,
    touched: Vec<usize>,
}

impl Accumulator {
    pub fn new(len: usize) -> Self {
        Accumulator {
            vals: vec![Scalar::zero(); len],
            live: vec![false; len],
            touched: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.vals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.touched.is_empty()
    }

    #[inline]
    pub fn add(&mut self, i: usize, v: &Scalar) {
        if !self.live[i] {
            self.live[i] = true;
            self.touched.push(i);
            self.vals[i] = v.clone();
        } else {
            self.vals[i] += v;
        }
    }

    /// Adds `c * v` entrywise.
    pub fn add_scaled(&mut self, c: &Scalar, v: &[(usize, Scalar)]) {
        for (i, x) in v {
            self.add(*i, &(c * x));
        }
    }

    pub fn get(&self, i: usize) -> Scalar {
        if self.live[i] {
            self.vals[i].clone()
        } else {
            Scalar::zero()
        }
    }

    /// Returns the accumulated vector and resets the scratch space.
    pub fn take(&mut self) -> SparseVec {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            self.live[i] = false;
            let v = std::mem::take(&mut self.vals[i]);
            if !v.is_zero() {
                out.push((i, v));
            }
        }
        self.touched.clear();
        out
    }
}

/// Sorts and merges unsorted `(index, value)` pairs into a [`SparseVec`].
pub fn normalize_vec(mut v: Vec<(usize, Scalar)>) -> SparseVec {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y += &x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

pub fn vec_scale(v: &[(usize, Scalar)], c: &Scalar) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, c * x)).collect()
}

/// `a + c * b` by sorted merge.
pub fn vec_axpy(a: &[(usize, Scalar)], c: &Scalar, b: &[(usize, Scalar)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut p, mut q) = (0, 0);
    while p < a.len() || q < b.len() {
        if q == b.len() || (p < a.len() && a[p].0 < b[q].0) {
            out.push(a[p].clone());
            p += 1;
        } else if p == a.len() || b[q].0 < a[p].0 {
            out.push((b[q].0, c * &b[q].1));
            q += 1;
        } else {
            let v = &a[p].1 + &(c * &b[q].1);
            if !v.is_zero() {
                out.push((a[p].0, v));
            }
            p += 1;
            q += 1;
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

pub fn vec_get(v: &[(usize, Scalar)], i: usize) -> Scalar {
    match v.binary_search_by_key(&i, |e| e.0) {
        Ok(k) => v[k].1.clone(),
        Err(_) => Scalar::zero(),
    }
}

pub fn vec_dot(a: &[(usize, Scalar)], b: &[(usize, Scalar)]) -> Scalar {
    let (mut p, mut q) = (0, 0);
    let mut acc = Scalar::zero();
    while p < a.len() && q < b.len() {
        match a[p].0.cmp(&b[q].0) {
            std::cmp::Ordering::Less => p += 1,
            std::cmp::Ordering::Greater => q += 1,
            std::cmp::Ordering::Equal => {
                acc += &(&a[p].1 * &b[q].1);
                p += 1;
                q += 1;
            }
        }
    }
    acc
}

/// Row-major sparse matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &Scalar::one())
    }

    /// `c` times the `n × n` identity.
    pub fn scalar(n: usize, c: &Scalar) -> Self {
        let data = if c.is_zero() {
            vec![Vec::new(); n]
        } else {
            (0..n).map(|i| vec![(i, c.clone())]).collect()
        };
        SparseMatrix { rows: n, cols: n, data }
    }

    /// Builds a matrix from sparse rows; entries are sorted and merged.
    pub fn from_rows(cols: usize, rows: Vec<Vec<(usize, Scalar)>>) -> Self {
        let data: Vec<SparseVec> = rows.into_iter().map(normalize_vec).collect();
        debug_assert!(data.iter().flatten().all(|(c, _)| *c < cols));
        SparseMatrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn from_triplets(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, Scalar)>) -> Self {
        let mut buckets: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); rows];
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "entry ({r}, {c}) outside {rows}x{cols}");
            buckets[r].push((c, v));
        }
        let mut m = Self::from_rows(cols, buckets);
        m.rows = rows;
        m
    }

    pub fn from_dense(rows: &[Vec<Scalar>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let data = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(i, v)| (i, v.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![Scalar::zero(); self.cols]; self.rows];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                out[r][*c] = v.clone();
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[(usize, Scalar)] {
        &self.data[r]
    }

    pub fn row_vecs(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        vec_get(&self.data[r], c)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self
                .data
                .iter()
                .enumerate()
                .all(|(r, row)| row.len() == 1 && row[0].0 == r && row[0].1.is_one())
    }

    /// Iterates over stored entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    /// Column `c` as a sparse vector.
    pub fn column(&self, c: usize) -> SparseVec {
        self.data
            .iter()
            .enumerate()
            .filter_map(|(r, row)| {
                let v = vec_get(row, c);
                (!v.is_zero()).then_some((r, v))
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut buckets: Vec<SparseVec> = vec![Vec::new(); self.cols];
        for (r, c, v) in self.entries() {
            buckets[c].push((r, v.clone()));
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            data: buckets,
        }
    }

    fn check_same_shape(&self, other: &Self, what: &str) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.axpy(&Scalar::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.axpy(&Scalar::from(-1), other)
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &Scalar, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "matrix sum")?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| vec_axpy(a, c, b))
            .collect();
        Ok(SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| vec_scale(r, c)).collect(),
        }
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut acc = Accumulator::new(other.cols);
        let data = self
            .data
            .iter()
            .map(|row| {
                for (k, a) in row {
                    acc.add_scaled(a, &other.data[*k]);
                }
                acc.take()
            })
            .collect();
        Ok(SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    /// `self · v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[(usize, Scalar)]) -> SparseVec {
        self.data
            .iter()
            .enumerate()
            .filter_map(|(r, row)| {
                let x = vec_dot(row, v);
                (!x.is_zero()).then_some((r, x))
            })
            .collect()
    }

    /// `v · self` for a row vector `v`.
    pub fn vec_mul(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let mut acc = Accumulator::new(self.cols);
        for (k, a) in v {
            acc.add_scaled(a, &self.data[*k]);
        }
        acc.take()
    }

    /// Kronecker product; row `(i, k)` maps to `i * other.rows + k`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut data = Vec::with_capacity(self.rows * other.rows);
        for a_row in &self.data {
            for b_row in &other.data {
                let mut row = Vec::with_capacity(a_row.len() * b_row.len());
                for (j, a) in a_row {
                    for (l, b) in b_row {
                        row.push((j * other.cols + l, a * b));
                    }
                }
                row.retain(|e: &(usize, Scalar)| !e.1.is_zero());
                data.push(row);
            }
        }
        SparseMatrix {
            rows: self.rows * other.rows,
            cols: self.cols * other.cols,
            data,
        }
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i))
            .fold(Scalar::zero(), |a, b| a + b)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "vertical stack of widths {} and {}",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(SparseMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    fn echelon(&self) -> RowEchelon {
        let mut e = RowEchelon::new(self.cols);
        for row in &self.data {
            e.insert(row);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Exact basis of `{v : self · v = 0}`.
    pub fn nullspace(&self) -> Vec<SparseVec> {
        self.echelon().nullspace()
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMatrix {}x{} [", self.rows, self.cols)?;
        for (r, c, v) in self.entries() {
            writeln!(f, "  ({r}, {c}) = {v}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> Scalar {
        Scalar::from(v)
    }

    #[test]
    fn nullspace_examples() {
        assert!(SparseMatrix::identity(2).nullspace().is_empty());
        let m = SparseMatrix::from_dense(&[vec![s(1), s(-1)]]);
        let ns = m.nullspace();
        assert_eq!(ns, vec![vec![(0, s(1)), (1, s(1))]]);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(SparseMatrix::zeros(3, 3).rank(), 0);
        assert_eq!(SparseMatrix::identity(3).rank(), 3);
    }

    #[test]
    fn product_kron_transpose() {
        let a = SparseMatrix::from_dense(&[vec![s(1), s(2)], vec![s(0), s(1)]]);
        let b = SparseMatrix::from_dense(&[vec![s(0), s(1)], vec![s(1), s(0)]]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.to_dense(), vec![vec![s(2), s(1)], vec![s(1), s(0)]]);
        let k = a.kron(&b);
        assert_eq!(k.rows(), 4);
        assert_eq!(k.get(0, 3), s(2));
        assert_eq!(k.get(1, 2), s(2));
        assert_eq!(a.transpose().transpose(), a);
        assert!(a.mul(&SparseMatrix::identity(3)).is_err());
    }

    #[test]
    fn accumulator_drops_cancellations() {
        let mut acc = Accumulator::new(5);
        acc.add(3, &s(2));
        acc.add(1, &s(1));
        acc.add(3, &s(-2));
        assert_eq!(acc.take(), vec![(1, s(1))]);
        assert!(acc.is_empty());
    }
}
