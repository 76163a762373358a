//! Finite-dimensional unital algebras given by structure constants, sparse
//! elements of their tensor powers, linear forms and hook actions.
//!
//! Tensor elements of `H^{⊗k}` are stored against flat keys: the basis tensor
//! `e_{i_1} ⊗ … ⊗ e_{i_k}` has key `i_1 d^{k-1} + … + i_k` for `d = dim H`.

use std::fmt::Write as _;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::exactmath::sparse::{normalize_vec, vec_axpy, vec_get, vec_scale};
use crate::exactmath::{Accumulator, RowEchelon, Scalar, SparseMatrix, SparseVec};

/// Coordinates of an algebra element in the fixed basis.
pub type Element = SparseVec;

/// Leg indices of a single basis tensor.
pub type Legs = SmallVec<[usize; 4]>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraData {
    labels: Vec<String>,
    /// `mul[i * dim + j]` holds `e_i e_j`.
    mul: Vec<SparseVec>,
    unit: Element,
}

impl AlgebraData {
    pub fn new(labels: Vec<String>, mul: Vec<SparseVec>, unit: Element) -> Result<Self> {
        let d = labels.len();
        if d == 0 {
            return Err(Error::Semantic("algebra must have positive dimension".into()));
        }
        if mul.len() != d * d {
            return Err(Error::Semantic(format!(
                "multiplication table has {} entries, expected {}",
                mul.len(),
                d * d
            )));
        }
        let in_range = |v: &SparseVec| v.iter().all(|(k, _)| *k < d);
        if !mul.iter().all(in_range) || !in_range(&unit) {
            return Err(Error::Semantic("basis index out of range".into()));
        }
        Ok(AlgebraData {
            labels,
            mul: mul.into_iter().map(normalize_vec).collect(),
            unit: normalize_vec(unit),
        })
    }

    /// Builds the table by evaluating `product(i, j)` on all basis pairs.
    pub fn from_fn(
        labels: Vec<String>,
        unit: Element,
        mut product: impl FnMut(usize, usize) -> Element,
    ) -> Result<Self> {
        let d = labels.len();
        let mut mul = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                mul.push(product(i, j));
            }
        }
        Self::new(labels, mul, unit)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `e_i e_j`.
    #[inline]
    pub fn product(&self, i: usize, j: usize) -> &Element {
        &self.mul[i * self.dim() + j]
    }

    pub fn unit(&self) -> &Element {
        &self.unit
    }

    pub fn basis(&self, i: usize) -> Element {
        vec![(i, Scalar::one())]
    }

    pub fn mul(&self, a: &[(usize, Scalar)], b: &[(usize, Scalar)]) -> Element {
        let mut out = Vec::with_capacity(a.len() * b.len());
        for (i, x) in a {
            for (j, y) in b {
                let xy = x * y;
                for (k, c) in self.product(*i, *j) {
                    out.push((*k, &xy * c));
                }
            }
        }
        normalize_vec(out)
    }

    /// Product of several factors, left to right.
    pub fn mul_all(&self, factors: &[&Element]) -> Element {
        factors.iter().fold(self.unit.clone(), |acc, f| self.mul(&acc, f))
    }

    /// Matrix of `l_h: a ↦ h a`; column `j` is `h e_j`.
    pub fn left_mult(&self, h: &[(usize, Scalar)]) -> SparseMatrix {
        let d = self.dim();
        let cols: Vec<Element> = (0..d).map(|j| self.mul(h, &self.basis(j))).collect();
        columns_to_matrix(d, &cols)
    }

    /// Matrix of `r_h: a ↦ a h`; column `j` is `e_j h`.
    pub fn right_mult(&self, h: &[(usize, Scalar)]) -> SparseMatrix {
        let d = self.dim();
        let cols: Vec<Element> = (0..d).map(|j| self.mul(&self.basis(j), h)).collect();
        columns_to_matrix(d, &cols)
    }

    /// Two-sided inverse of `a`, if it exists.
    pub fn inverse(&self, a: &[(usize, Scalar)]) -> Option<Element> {
        let x = solve(&self.left_mult(a), &self.unit)?;
        (self.mul(&x, a) == self.unit).then_some(x)
    }

    /// Subalgebra generated by `gens`, as the dimension of its span.
    pub fn generated_dim(&self, gens: &[Element]) -> usize {
        let d = self.dim();
        let mut ech = RowEchelon::new(d);
        let mut frontier = vec![self.unit.clone()];
        ech.insert(&self.unit);
        while let Some(v) = frontier.pop() {
            for g in gens {
                let w = self.mul(&v, g);
                if ech.insert(&w) {
                    frontier.push(w);
                }
            }
        }
        ech.rank()
    }

    /// First triple violating associativity, with the discrepancy
    /// `(e_i e_j) x − e_i (e_j x)`. With `right` given, `x` runs over those
    /// elements instead of the basis, which suffices when they generate.
    pub fn associativity_witness(&self, right: Option<&[Element]>) -> Option<(usize, usize, usize, Element)> {
        let d = self.dim();
        let basis: Vec<Element>;
        let xs = match right {
            Some(r) => r,
            None => {
                basis = (0..d).map(|k| self.basis(k)).collect();
                &basis
            }
        };
        for i in 0..d {
            for j in 0..d {
                let ij = self.product(i, j);
                for (k, x) in xs.iter().enumerate() {
                    let lhs = self.mul(ij, x);
                    let jx = self.mul(&self.basis(j), x);
                    let rhs = self.mul(&self.basis(i), &jx);
                    let diff = vec_axpy(&lhs, &Scalar::from(-1), &rhs);
                    if !diff.is_empty() {
                        return Some((i, j, k, diff));
                    }
                }
            }
        }
        None
    }

    /// First basis index where `1 e_i = e_i = e_i 1` fails.
    pub fn unit_witness(&self) -> Option<usize> {
        (0..self.dim()).find(|&i| {
            let b = self.basis(i);
            self.mul(&self.unit, &b) != b || self.mul(&b, &self.unit) != b
        })
    }

    /// Componentwise product in `H^{⊗k}`.
    pub fn mul_tensor(&self, x: &TensorElement, y: &TensorElement) -> Result<TensorElement> {
        if x.order != y.order {
            return Err(Error::OrderMismatch {
                left: x.order,
                right: y.order,
            });
        }
        let d = self.dim();
        let k = x.order;
        if k == 0 {
            return Ok(TensorElement::scalar(d, &(&x.coeff_at(0) * &y.coeff_at(0))));
        }
        let mut out: Vec<(usize, Scalar)> = Vec::with_capacity(x.terms.len() * y.terms.len());
        let mut partial: Vec<(usize, Scalar)> = Vec::new();
        let mut next: Vec<(usize, Scalar)> = Vec::new();
        for (kx, cx) in &x.terms {
            let lx = x.decode(*kx);
            for (ky, cy) in &y.terms {
                let ly = y.decode(*ky);
                partial.clear();
                partial.push((0, cx * cy));
                for l in 0..k {
                    let p = self.product(lx[l], ly[l]);
                    next.clear();
                    for (key, s) in &partial {
                        for (b, t) in p {
                            next.push((key * d + b, s * t));
                        }
                    }
                    std::mem::swap(&mut partial, &mut next);
                    if partial.is_empty() {
                        break;
                    }
                }
                out.append(&mut partial);
            }
        }
        Ok(TensorElement {
            order: k,
            dim: d,
            terms: normalize_vec(out),
        })
    }

    /// Product of several tensors of equal order, left to right.
    pub fn mul_tensors(&self, factors: &[&TensorElement]) -> Result<TensorElement> {
        let mut it = factors.iter();
        let first = it
            .next()
            .ok_or_else(|| Error::Semantic("empty tensor product".into()))?;
        let mut acc = (*first).clone();
        for f in it {
            acc = self.mul_tensor(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn fmt_element(&self, e: &[(usize, Scalar)]) -> String {
        fmt_terms(e.iter().map(|(k, c)| (self.labels[*k].clone(), c)))
    }

    pub fn fmt_tensor(&self, t: &TensorElement) -> String {
        fmt_terms(t.terms.iter().map(|(k, c)| {
            let legs = t.decode(*k);
            let name = if legs.is_empty() {
                "1".to_string()
            } else {
                legs.iter()
                    .map(|&i| self.labels[i].as_str())
                    .collect::<Vec<_>>()
                    .join(" ⊗ ")
            };
            (name, c)
        }))
    }
}

fn fmt_terms<'a>(terms: impl Iterator<Item = (String, &'a Scalar)>) -> String {
    let mut s = String::new();
    for (name, c) in terms {
        if !s.is_empty() {
            s.push_str(" + ");
        }
        let _ = write!(s, "({c}) {name}");
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn columns_to_matrix(rows: usize, cols: &[Element]) -> SparseMatrix {
    SparseMatrix::from_triplets(
        rows,
        cols.len(),
        cols.iter()
            .enumerate()
            .flat_map(|(j, col)| col.iter().map(move |(i, v)| (*i, j, v.clone()))),
    )
}

/// Some solution of `M x = b`, or `None` if the system is inconsistent.
pub fn solve(m: &SparseMatrix, b: &[(usize, Scalar)]) -> Option<SparseVec> {
    // kernel vectors of [M | -b] with last coordinate 1 give solutions
    let n = m.cols();
    let mut rows: Vec<Vec<(usize, Scalar)>> = m.row_vecs().to_vec();
    rows.resize(m.rows().max(b.last().map_or(0, |e| e.0 + 1)), Vec::new());
    for (i, v) in b {
        rows[*i].push((n, -v));
    }
    let aug = SparseMatrix::from_rows(n + 1, rows);
    let mut ech = RowEchelon::new(n + 1);
    for r in aug.row_vecs() {
        ech.insert(r);
    }
    if ech.pivot_columns().contains(&n) {
        return None;
    }
    let kernel = ech.nullspace();
    let v = kernel.into_iter().find(|v| v.last().is_some_and(|e| e.0 == n))?;
    let scale = v.last().expect("nonempty").1.inv().ok()?;
    Some(
        v.into_iter()
            .filter(|e| e.0 < n)
            .map(|(i, x)| (i, &x * &scale))
            .collect(),
    )
}

/// Permutation of tensor legs in subscript notation: `x_{p_1 … p_k}` places
/// leg `l` of `x` into slot `p_l`. So `[2, 1]` is the flip `x_{21}` and
/// `[3, 2, 1]` reverses three legs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    /// From one-based slot numbers.
    pub fn new(slots: &[usize]) -> Result<Self> {
        let k = slots.len();
        let mut seen = vec![false; k];
        for &s in slots {
            if s == 0 || s > k || seen[s - 1] {
                return Err(Error::BadPermutation(slots.to_vec()));
            }
            seen[s - 1] = true;
        }
        Ok(Permutation(slots.iter().map(|s| s - 1).collect()))
    }

    pub fn flip() -> Self {
        Permutation(vec![1, 0])
    }

    pub fn reverse(k: usize) -> Self {
        Permutation((0..k).rev().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Permutation applying `first`, then `self`.
    pub fn after(&self, first: &Permutation) -> Permutation {
        Permutation(first.0.iter().map(|&s| self.0[s]).collect())
    }
}

/// Sparse element of `H^{⊗k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    order: usize,
    dim: usize,
    terms: SparseVec,
}

impl TensorElement {
    pub fn zero(order: usize, dim: usize) -> Self {
        TensorElement {
            order,
            dim,
            terms: Vec::new(),
        }
    }

    pub fn scalar(dim: usize, c: &Scalar) -> Self {
        TensorElement {
            order: 0,
            dim,
            terms: if c.is_zero() { Vec::new() } else { vec![(0, c.clone())] },
        }
    }

    pub fn from_element(dim: usize, e: Element) -> Self {
        TensorElement {
            order: 1,
            dim,
            terms: e,
        }
    }

    /// From raw flat keys (merged and sorted here).
    pub fn from_keys(order: usize, dim: usize, terms: Vec<(usize, Scalar)>) -> Self {
        TensorElement {
            order,
            dim,
            terms: normalize_vec(terms),
        }
    }

    pub fn from_terms<'a>(order: usize, dim: usize, terms: impl IntoIterator<Item = (&'a [usize], Scalar)>) -> Self {
        let mut t = TensorElement::zero(order, dim);
        let raw = terms
            .into_iter()
            .map(|(legs, c)| {
                assert_eq!(legs.len(), order, "wrong number of legs");
                (t.encode(legs), c)
            })
            .collect();
        t.terms = normalize_vec(raw);
        t
    }

    /// `x_1 ⊗ … ⊗ x_k` for algebra elements `x_l`.
    pub fn pure(dim: usize, legs: &[&Element]) -> Self {
        let mut acc = TensorElement::scalar(dim, &Scalar::one());
        for leg in legs {
            acc = acc.tensor(&TensorElement::from_element(dim, (*leg).clone()));
        }
        acc
    }

    /// `1^{⊗k}`.
    pub fn unit(alg: &AlgebraData, order: usize) -> Self {
        let legs: Vec<&Element> = vec![alg.unit(); order];
        Self::pure(alg.dim(), &legs)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[(usize, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> SparseVec {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn encode(&self, legs: &[usize]) -> usize {
        legs.iter().fold(0, |acc, &i| {
            debug_assert!(i < self.dim);
            acc * self.dim + i
        })
    }

    pub fn decode(&self, mut key: usize) -> Legs {
        let mut legs: Legs = SmallVec::from_elem(0, self.order);
        for l in (0..self.order).rev() {
            legs[l] = key % self.dim;
            key /= self.dim;
        }
        legs
    }

    fn coeff_at(&self, key: usize) -> Scalar {
        vec_get(&self.terms, key)
    }

    pub fn coeff(&self, legs: &[usize]) -> Scalar {
        self.coeff_at(self.encode(legs))
    }

    /// Iterates over `(legs, coefficient)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (Legs, &Scalar)> {
        self.terms.iter().map(|(k, c)| (self.decode(*k), c))
    }

    /// The algebra element of an order-1 tensor.
    pub fn as_element(&self) -> &Element {
        debug_assert_eq!(self.order, 1);
        &self.terms
    }

    pub fn into_element(self) -> Element {
        debug_assert_eq!(self.order, 1);
        self.terms
    }

    /// Value of an order-0 tensor.
    pub fn as_scalar(&self) -> Scalar {
        debug_assert_eq!(self.order, 0);
        self.coeff_at(0)
    }

    /// `self ⊗ other`.
    pub fn tensor(&self, other: &TensorElement) -> TensorElement {
        let shift = self.dim.pow(other.order as u32);
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                terms.push((a * shift + b, x * y));
            }
        }
        TensorElement {
            order: self.order + other.order,
            dim: self.dim,
            terms,
        }
    }

    fn check_order(&self, other: &TensorElement) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &TensorElement) -> Result<TensorElement> {
        self.axpy(&Scalar::one(), other)
    }

    pub fn sub(&self, other: &TensorElement) -> Result<TensorElement> {
        self.axpy(&Scalar::from(-1), other)
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &Scalar, other: &TensorElement) -> Result<TensorElement> {
        self.check_order(other)?;
        Ok(TensorElement {
            order: self.order,
            dim: self.dim,
            terms: vec_axpy(&self.terms, c, &other.terms),
        })
    }

    pub fn scale(&self, c: &Scalar) -> TensorElement {
        TensorElement {
            order: self.order,
            dim: self.dim,
            terms: vec_scale(&self.terms, c),
        }
    }

    /// Re-indexes legs by `perm` (see [`Permutation`]).
    pub fn flip(&self, perm: &Permutation) -> Result<TensorElement> {
        if perm.len() != self.order {
            return Err(Error::BadPermutation(perm.0.iter().map(|s| s + 1).collect()));
        }
        let mut out = Vec::with_capacity(self.terms.len());
        let mut slots: Legs = SmallVec::from_elem(0, self.order);
        for (k, c) in &self.terms {
            let legs = self.decode(*k);
            for (l, &s) in perm.0.iter().enumerate() {
                slots[s] = legs[l];
            }
            out.push((self.encode(&slots), c.clone()));
        }
        Ok(TensorElement::from_keys(self.order, self.dim, out))
    }

    /// `x_{21}`.
    pub fn flipped(&self) -> TensorElement {
        self.flip(&Permutation::flip()).expect("order-2 tensor")
    }

    /// Applies a linear map `H → H^{⊗m}` to leg `leg`; the `m` image legs take
    /// its place.
    pub fn map_leg(&self, leg: usize, op: &LinearOperator) -> Result<TensorElement> {
        if leg >= self.order || op.domain_order != 1 {
            return Err(Error::LegMismatch {
                form: op.domain_order,
                legs: vec![leg],
                order: self.order,
            });
        }
        let m = op.codomain_order;
        let after = self.order - leg - 1;
        let tail = self.dim.pow(after as u32);
        let mid = self.dim.pow(m as u32);
        let mut out = Vec::new();
        for (k, c) in &self.terms {
            let head = k / (tail * self.dim);
            let i = (k / tail) % self.dim;
            let rest = k % tail;
            for (j, v) in &op.images[i] {
                out.push((((head * mid) + j) * tail + rest, c * v));
            }
        }
        Ok(TensorElement::from_keys(self.order - 1 + m, self.dim, out))
    }

    /// Applies `ops[l]` (each `H → H`) to leg `l`.
    pub fn map_each_leg(&self, ops: &[&LinearOperator]) -> Result<TensorElement> {
        let mut acc = self.clone();
        for (l, op) in ops.iter().enumerate() {
            acc = acc.map_leg(l, op)?;
        }
        Ok(acc)
    }
}

/// Linear form on `H^{⊗k}`, as coefficients against the dual basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    order: usize,
    dim: usize,
    coeffs: SparseVec,
}

impl LinearForm {
    pub fn new(order: usize, dim: usize, coeffs: Vec<(usize, Scalar)>) -> Self {
        LinearForm {
            order,
            dim,
            coeffs: normalize_vec(coeffs),
        }
    }

    pub fn zero(order: usize, dim: usize) -> Self {
        Self::new(order, dim, Vec::new())
    }

    /// The dual basis vector `e_i^*` on `H`.
    pub fn dual_basis(dim: usize, i: usize) -> Self {
        Self::new(1, dim, vec![(i, Scalar::one())])
    }

    pub fn from_values(dim: usize, values: &[Scalar]) -> Self {
        Self::new(1, dim, values.iter().cloned().enumerate().collect())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[(usize, Scalar)] {
        &self.coeffs
    }

    /// Value on the basis element with flat key `key`.
    pub fn coeff(&self, key: usize) -> Scalar {
        vec_get(&self.coeffs, key)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support(&self) -> Vec<usize> {
        self.coeffs.iter().map(|e| e.0).collect()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        LinearForm {
            order: self.order,
            dim: self.dim,
            coeffs: vec_scale(&self.coeffs, c),
        }
    }

    pub fn axpy(&self, c: &Scalar, other: &LinearForm) -> Result<Self> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(LinearForm {
            order: self.order,
            dim: self.dim,
            coeffs: vec_axpy(&self.coeffs, c, &other.coeffs),
        })
    }

    /// Value on an algebra element (order-1 forms).
    pub fn eval_element(&self, x: &[(usize, Scalar)]) -> Scalar {
        crate::exactmath::sparse::vec_dot(&self.coeffs, x)
    }

    pub fn eval(&self, x: &TensorElement) -> Result<Scalar> {
        if self.order != x.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: x.order,
            });
        }
        Ok(crate::exactmath::sparse::vec_dot(&self.coeffs, &x.terms))
    }

    /// Composite `self ∘ op` for an operator landing in this form's domain.
    pub fn compose(&self, op: &LinearOperator) -> Result<LinearForm> {
        if op.codomain_order != self.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: op.codomain_order,
            });
        }
        let coeffs = op
            .images
            .iter()
            .enumerate()
            .filter_map(|(k, img)| {
                let v = crate::exactmath::sparse::vec_dot(&self.coeffs, img);
                (!v.is_zero()).then_some((k, v))
            })
            .collect();
        Ok(LinearForm {
            order: op.domain_order,
            dim: self.dim,
            coeffs,
        })
    }
}

/// Evaluates `f` on the legs `legs` (zero-based, in the form's leg order) of
/// `x`; the remaining legs keep their relative order.
pub fn apply_form(f: &LinearForm, x: &TensorElement, legs: &[usize]) -> Result<TensorElement> {
    let mut sorted = legs.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if legs.len() != f.order || sorted.len() != legs.len() || legs.iter().any(|&l| l >= x.order) {
        return Err(Error::LegMismatch {
            form: f.order,
            legs: legs.to_vec(),
            order: x.order,
        });
    }
    let rest: Vec<usize> = (0..x.order).filter(|l| !legs.contains(l)).collect();
    let d = x.dim;
    let mut out = Vec::new();
    for (k, c) in &x.terms {
        let ix = x.decode(*k);
        let fk = legs.iter().fold(0, |acc, &l| acc * d + ix[l]);
        let v = f.coeff(fk);
        if v.is_zero() {
            continue;
        }
        let rk = rest.iter().fold(0, |acc, &l| acc * d + ix[l]);
        out.push((rk, c * &v));
    }
    Ok(TensorElement::from_keys(rest.len(), d, out))
}

/// Linear map `H^{⊗m} → H^{⊗n}`, stored as the images of basis tensors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearOperator {
    domain_order: usize,
    codomain_order: usize,
    dim: usize,
    images: Vec<SparseVec>,
}

impl LinearOperator {
    pub fn new(domain_order: usize, codomain_order: usize, dim: usize, images: Vec<SparseVec>) -> Result<Self> {
        if images.len() != dim.pow(domain_order as u32) {
            return Err(Error::ShapeMismatch(format!(
                "{} images for a domain of dimension {}",
                images.len(),
                dim.pow(domain_order as u32)
            )));
        }
        Ok(LinearOperator {
            domain_order,
            codomain_order,
            dim,
            images: images.into_iter().map(normalize_vec).collect(),
        })
    }

    pub fn identity(order: usize, dim: usize) -> Self {
        let n = dim.pow(order as u32);
        LinearOperator {
            domain_order: order,
            codomain_order: order,
            dim,
            images: (0..n).map(|k| vec![(k, Scalar::one())]).collect(),
        }
    }

    /// `l_h: a ↦ h a`.
    pub fn left_mult(alg: &AlgebraData, h: &Element) -> Self {
        let images = (0..alg.dim()).map(|j| alg.mul(h, &alg.basis(j))).collect();
        LinearOperator {
            domain_order: 1,
            codomain_order: 1,
            dim: alg.dim(),
            images,
        }
    }

    /// `r_h: a ↦ a h`.
    pub fn right_mult(alg: &AlgebraData, h: &Element) -> Self {
        let images = (0..alg.dim()).map(|j| alg.mul(&alg.basis(j), h)).collect();
        LinearOperator {
            domain_order: 1,
            codomain_order: 1,
            dim: alg.dim(),
            images,
        }
    }

    pub fn domain_order(&self) -> usize {
        self.domain_order
    }

    pub fn codomain_order(&self) -> usize {
        self.codomain_order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Image of the basis tensor with flat key `k`.
    pub fn image(&self, k: usize) -> &SparseVec {
        &self.images[k]
    }

    pub fn images(&self) -> &[SparseVec] {
        &self.images
    }

    /// Image of a single algebra element under an operator out of `H`.
    pub fn apply_element(&self, x: &[(usize, Scalar)]) -> SparseVec {
        let mut out = Vec::new();
        for (k, c) in x {
            for (j, v) in &self.images[*k] {
                out.push((*j, c * v));
            }
        }
        normalize_vec(out)
    }

    pub fn apply(&self, x: &TensorElement) -> Result<TensorElement> {
        if x.order != self.domain_order {
            return Err(Error::OrderMismatch {
                left: self.domain_order,
                right: x.order,
            });
        }
        Ok(TensorElement {
            order: self.codomain_order,
            dim: self.dim,
            terms: self.apply_element(&x.terms),
        })
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &LinearOperator) -> Result<Self> {
        if first.codomain_order != self.domain_order {
            return Err(Error::OrderMismatch {
                left: self.domain_order,
                right: first.codomain_order,
            });
        }
        Ok(LinearOperator {
            domain_order: first.domain_order,
            codomain_order: self.codomain_order,
            dim: self.dim,
            images: first.images.iter().map(|x| self.apply_element(x)).collect(),
        })
    }

    /// Matrix of shape `dim^n × dim^m`; column `k` is the image of basis `k`.
    pub fn matrix(&self) -> SparseMatrix {
        let rows = self.dim.pow(self.codomain_order as u32);
        columns_to_matrix(rows, &self.images)
    }

    pub fn is_identity(&self) -> bool {
        self.domain_order == self.codomain_order
            && self
                .images
                .iter()
                .enumerate()
                .all(|(k, v)| v.len() == 1 && v[0].0 == k && v[0].1.is_one())
    }
}

/// The four hook actions of `H` on `H^*` and of `H^*` on `H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hook {
    /// `h ⇀ f`, the form `a ↦ f(a h)`.
    ElementOnForm,
    /// `f ↼ h`, the form `a ↦ f(h a)`.
    FormByElement,
    /// `f ⇀ h = h₍₁₎ f(h₍₂₎)`.
    FormOnElement,
    /// `h ↼ f = f(h₍₁₎) h₍₂₎`.
    ElementByForm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HookResult {
    Form(LinearForm),
    Element(Element),
}

/// Evaluates a hook action; the element-valued variants need the coproduct.
pub fn hook(
    alg: &AlgebraData,
    coproduct: Option<&LinearOperator>,
    h: &Element,
    f: &LinearForm,
    variant: Hook,
) -> Result<HookResult> {
    let d = alg.dim();
    match variant {
        Hook::ElementOnForm | Hook::FormByElement => {
            let mut acc = Accumulator::new(d);
            for j in 0..d {
                let prod = if variant == Hook::ElementOnForm {
                    alg.mul(&alg.basis(j), h)
                } else {
                    alg.mul(h, &alg.basis(j))
                };
                let v = f.eval_element(&prod);
                if !v.is_zero() {
                    acc.add(j, &v);
                }
            }
            Ok(HookResult::Form(LinearForm::new(1, d, acc.take())))
        }
        Hook::FormOnElement | Hook::ElementByForm => {
            let delta = coproduct.ok_or(Error::MissingCoproduct)?;
            let dh = delta.apply(&TensorElement::from_element(d, h.clone()))?;
            let leg = if variant == Hook::FormOnElement { 1 } else { 0 };
            Ok(HookResult::Element(apply_form(f, &dh, &[leg])?.into_element()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `k[Z2]` with basis `e, g`.
    fn kz2() -> (AlgebraData, LinearOperator) {
        let one = Scalar::one();
        let alg = AlgebraData::from_fn(vec!["e".into(), "g".into()], vec![(0, one.clone())], |i, j| {
            vec![((i + j) % 2, Scalar::one())]
        })
        .unwrap();
        let delta = LinearOperator::new(1, 2, 2, vec![vec![(0, one.clone())], vec![(3, one)]]).unwrap();
        (alg, delta)
    }

    #[test]
    fn group_algebra_products() {
        let (alg, _) = kz2();
        let a = vec![(0, Scalar::one()), (1, Scalar::one())];
        let b = vec![(0, Scalar::one()), (1, Scalar::from(-1))];
        assert!(alg.mul(&a, &b).is_empty());
        assert!(alg.associativity_witness(None).is_none());
        assert!(alg.unit_witness().is_none());
        assert_eq!(alg.inverse(&alg.basis(1)), Some(alg.basis(1)));
        assert_eq!(alg.inverse(&a), None);
    }

    #[test]
    fn flips_and_forms() {
        let (alg, delta) = kz2();
        let x = TensorElement::from_terms(2, 2, [(&[0usize, 1][..], Scalar::from(3))]);
        let y = x.flipped();
        assert_eq!(y.coeff(&[1, 0]), Scalar::from(3));
        assert_eq!(y.flipped(), x);
        assert!(x.flip(&Permutation::new(&[1, 2, 3]).unwrap()).is_err());
        assert!(Permutation::new(&[1, 1]).is_err());

        let eps = LinearForm::new(1, 2, vec![(0, Scalar::one()), (1, Scalar::one())]);
        for h in 0..2 {
            let dh = delta.apply(&TensorElement::from_element(2, alg.basis(h))).unwrap();
            assert_eq!(apply_form(&eps, &dh, &[0]).unwrap().into_element(), alg.basis(h));
        }
        let g = alg.basis(1);
        let r = hook(&alg, Some(&delta), &g, &eps, Hook::FormOnElement).unwrap();
        assert_eq!(r, HookResult::Element(g.clone()));
        let r = hook(&alg, None, alg.unit(), &eps, Hook::ElementOnForm).unwrap();
        assert_eq!(r, HookResult::Form(eps.clone()));
        assert!(matches!(
            hook(&alg, None, &g, &eps, Hook::ElementByForm),
            Err(Error::MissingCoproduct)
        ));
        assert!(apply_form(&eps, &x, &[0, 1]).is_err());
    }

    #[test]
    fn map_leg_inserts_legs_in_place() {
        let (_, delta) = kz2();
        let x = TensorElement::from_terms(2, 2, [(&[1usize, 0][..], Scalar::one())]);
        let y = x.map_leg(0, &delta).unwrap();
        assert_eq!(y.order(), 3);
        assert_eq!(y.coeff(&[1, 1, 0]), Scalar::one());
        let z = x.map_leg(1, &delta).unwrap();
        assert_eq!(z.coeff(&[1, 0, 0]), Scalar::one());
    }

    #[test]
    fn solve_linear_system() {
        let m = SparseMatrix::from_dense(&[
            vec![Scalar::from(2), Scalar::from(1)],
            vec![Scalar::from(4), Scalar::from(2)],
        ]);
        let x = solve(&m, &[(0, Scalar::from(3)), (1, Scalar::from(6))]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![(0, Scalar::from(3)), (1, Scalar::from(6))]);
        assert!(solve(&m, &[(0, Scalar::from(1))]).is_none());
    }
}
