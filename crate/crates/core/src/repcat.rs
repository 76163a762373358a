//! Finite-dimensional modules: tensor products with the associator, duals,
//! pivotal structure, partial traces, and the isomorphisms
//! `H⊗V₀ ≅ H⊗V ≅`, `V₀⊗H ≅ V⊗H` with the induced algebra map `Ξ`.
//!
//! Vectors of `V⊗W` are indexed by `v · dim W + w`. Action matrices are
//! sparse; column `j` of `ρ(h)` is `h · v_j`.

use std::sync::Arc;

use crate::algcore::{Element, TensorElement};
use crate::error::{Error, Result};
use crate::exactmath::sparse::{normalize_vec, vec_dot};
use crate::exactmath::{Accumulator, RowEchelon, Scalar, SparseMatrix, SparseVec};
use crate::quasihopf::{QuasiHopfAlgebra, EXHAUSTIVE_LIMIT};
use crate::report::Check;

#[derive(Clone, Debug)]
pub struct Representation {
    algebra: Arc<QuasiHopfAlgebra>,
    dim: usize,
    action: Arc<Vec<SparseMatrix>>,
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.same_algebra(other) && self.action == other.action
    }
}

impl Representation {
    /// Wraps action matrices of the basis elements; see [`Self::verify`].
    pub fn new(algebra: Arc<QuasiHopfAlgebra>, action: Vec<SparseMatrix>) -> Result<Self> {
        let dim = action.first().map_or(0, SparseMatrix::rows);
        if action.len() != algebra.dim() {
            return Err(Error::ShapeMismatch(format!(
                "{} action matrices for an algebra of dimension {}",
                action.len(),
                algebra.dim()
            )));
        }
        if dim == 0 || action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::ShapeMismatch(
                "action matrices must be square and nonempty".into(),
            ));
        }
        Ok(Representation {
            algebra,
            dim,
            action: Arc::new(action),
        })
    }

    pub fn regular(algebra: &Arc<QuasiHopfAlgebra>) -> Self {
        let action = (0..algebra.dim())
            .map(|i| algebra.alg().left_mult(&algebra.basis(i)))
            .collect();
        Representation {
            algebra: algebra.clone(),
            dim: algebra.dim(),
            action: Arc::new(action),
        }
    }

    /// `h · v = ε(h) v` on an `n`-dimensional space.
    pub fn trivial(algebra: &Arc<QuasiHopfAlgebra>, n: usize) -> Self {
        let action = (0..algebra.dim())
            .map(|i| SparseMatrix::scalar(n, &algebra.counit().coeff(i)))
            .collect();
        Representation {
            algebra: algebra.clone(),
            dim: n,
            action: Arc::new(action),
        }
    }

    /// One-dimensional module of a character given by its basis values.
    pub fn character(algebra: &Arc<QuasiHopfAlgebra>, values: &[Scalar]) -> Result<Self> {
        let action = values.iter().map(|v| SparseMatrix::scalar(1, v)).collect();
        let rep = Representation::new(algebra.clone(), action)?;
        rep.verify()?;
        Ok(rep)
    }

    pub fn algebra(&self) -> &Arc<QuasiHopfAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &SparseMatrix {
        &self.action[i]
    }

    /// `ρ(x)` for an arbitrary element.
    pub fn act(&self, x: &Element) -> SparseMatrix {
        let mut acc = SparseMatrix::zeros(self.dim, self.dim);
        for (i, c) in x {
            acc = acc.axpy(c, &self.action[*i]).expect("square of equal size");
        }
        acc
    }

    pub fn same_algebra(&self, other: &Representation) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra
    }

    fn require_same(&self, other: &Representation) -> Result<()> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// Checks `ρ(1) = id` and `ρ(x)ρ(e_j) = ρ(xe_j)`, with `x` over the basis
    /// or, for larger algebras, over a generating set.
    pub fn verify(&self) -> Result<()> {
        let h = &self.algebra;
        if !self.act(&h.one()).is_identity() {
            return Err(Error::VerificationFailed("ρ(1) is not the identity".into()));
        }
        let xs: Vec<Element> = if h.dim() <= EXHAUSTIVE_LIMIT {
            (0..h.dim()).map(|i| h.basis(i)).collect()
        } else {
            h.multiplicative_test_elements()
        };
        for x in &xs {
            let rx = self.act(x);
            for j in 0..h.dim() {
                let lhs = rx.mul(&self.action[j])?;
                let rhs = self.act(&h.mul(x, &h.basis(j)));
                if lhs != rhs {
                    return Err(Error::VerificationFailed(format!(
                        "ρ not multiplicative at ({}, {})",
                        h.fmt_element(x),
                        h.alg().label(j)
                    )));
                }
            }
        }
        Ok(())
    }

    /// `V⊗W` with `h` acting through `Δ(h)`.
    pub fn tensor(&self, other: &Representation) -> Result<Representation> {
        self.require_same(other)?;
        let h = &self.algebra;
        let action = (0..h.dim())
            .map(|i| tensor_action(&h.delta(&h.basis(i)), &[self, other]))
            .collect::<Result<_>>()?;
        Ok(Representation {
            algebra: h.clone(),
            dim: self.dim * other.dim,
            action: Arc::new(action),
        })
    }

    /// `V*` with `ρ*(h) = ρ(S(h))ᵀ`.
    pub fn dual(&self) -> Representation {
        let h = &self.algebra;
        let action = (0..h.dim()).map(|i| self.act(&h.s(&h.basis(i))).transpose()).collect();
        Representation {
            algebra: h.clone(),
            dim: self.dim,
            action: Arc::new(action),
        }
    }

    /// The submodule spanned by `basis`, with inclusion and a projection
    /// given by `retraction` (a module map onto the submodule's span,
    /// expressed in the ambient space and idempotent on it).
    pub fn submodule(
        &self,
        basis: &[SparseVec],
        retraction: &SparseMatrix,
    ) -> Result<(Representation, ModuleMap, ModuleMap)> {
        let k = basis.len();
        let incl = columns(self.dim, basis);
        let coords = |v: &SparseVec| -> Result<SparseVec> {
            crate::algcore::solve(&incl, v).ok_or_else(|| Error::ShapeMismatch("vector outside the submodule".into()))
        };
        let mut action = Vec::with_capacity(self.algebra.dim());
        for m in self.action.iter() {
            let cols = basis
                .iter()
                .map(|b| coords(&m.mul_vec(b)))
                .collect::<Result<Vec<_>>>()?;
            action.push(columns(k, &cols));
        }
        let sub = Representation::new(self.algebra.clone(), action)?;
        let proj_cols = (0..self.dim)
            .map(|j| coords(&retraction.mul_vec(&[(j, Scalar::one())])))
            .collect::<Result<Vec<_>>>()?;
        let proj = ModuleMap::new(self.clone(), sub.clone(), columns(k, &proj_cols))?;
        let incl = ModuleMap::new(sub.clone(), self.clone(), incl)?;
        Ok((sub, incl, proj))
    }
}

/// Matrix with the given columns.
pub fn columns(rows: usize, cols: &[SparseVec]) -> SparseMatrix {
    SparseMatrix::from_triplets(
        rows,
        cols.len(),
        cols.iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |(i, v)| (*i, j, v.clone()))),
    )
}

/// Matrix of a tensor element acting on `V₁⊗…⊗V_k` leg by leg.
pub fn tensor_action(t: &TensorElement, reps: &[&Representation]) -> Result<SparseMatrix> {
    if t.order() != reps.len() {
        return Err(Error::OrderMismatch {
            left: t.order(),
            right: reps.len(),
        });
    }
    let n: usize = reps.iter().map(|r| r.dim).product();
    let mut acc = SparseMatrix::zeros(n, n);
    for (legs, c) in t.iter() {
        let mut m = SparseMatrix::scalar(1, c);
        for (leg, r) in legs.iter().zip(reps) {
            m = m.kron(&r.action[*leg]);
        }
        acc = acc.add(&m)?;
    }
    Ok(acc)
}

/// Applies a tensor element to a vector of `V₁⊗…⊗V_k` (or, with
/// `transpose`, the transposed action to a covector) without building the
/// full matrix.
pub fn apply_tensor(
    t: &TensorElement,
    reps: &[&Representation],
    v: &[(usize, Scalar)],
    transpose: bool,
) -> Result<SparseVec> {
    if t.order() != reps.len() {
        return Err(Error::OrderMismatch {
            left: t.order(),
            right: reps.len(),
        });
    }
    let dims: Vec<usize> = reps.iter().map(|r| r.dim).collect();
    let n: usize = dims.iter().product();
    // columns of ρ(e_i), i.e. rows of the transpose, for the elements in use
    let mut cache: std::collections::HashMap<(usize, usize), SparseMatrix> = Default::default();
    for (legs, _) in t.iter() {
        for (l, &i) in legs.iter().enumerate() {
            cache.entry((l, i)).or_insert_with(|| {
                if transpose {
                    reps[l].action[i].clone()
                } else {
                    reps[l].action[i].transpose()
                }
            });
        }
    }
    let mut acc = Accumulator::new(n);
    for (legs, c) in t.iter() {
        let mats: Vec<&SparseMatrix> = legs.iter().enumerate().map(|(l, &i)| &cache[&(l, i)]).collect();
        for (key, x) in v {
            let mut rest = *key;
            let mut idx = vec![0; dims.len()];
            for l in (0..dims.len()).rev() {
                idx[l] = rest % dims[l];
                rest /= dims[l];
            }
            let mut partial: Vec<(usize, Scalar)> = vec![(0, c * x)];
            for l in 0..dims.len() {
                let col = mats[l].row(idx[l]);
                let mut next = Vec::with_capacity(partial.len() * col.len());
                for (p, a) in &partial {
                    for (r, b) in col {
                        next.push((p * dims[l] + r, a * b));
                    }
                }
                partial = next;
            }
            for (k, y) in partial {
                acc.add(k, &y);
            }
        }
    }
    Ok(acc.take())
}

/// A linear map between modules; `matrix` maps source coordinates to target
/// coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMap {
    source: Representation,
    target: Representation,
    matrix: SparseMatrix,
}

impl ModuleMap {
    pub fn new(source: Representation, target: Representation, matrix: SparseMatrix) -> Result<Self> {
        source.require_same(&target)?;
        if matrix.rows() != target.dim || matrix.cols() != source.dim {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix for a map from dimension {} to {}",
                matrix.rows(),
                matrix.cols(),
                source.dim,
                target.dim
            )));
        }
        Ok(ModuleMap { source, target, matrix })
    }

    /// Like [`Self::new`] but also requires the map to intertwine.
    pub fn checked(source: Representation, target: Representation, matrix: SparseMatrix) -> Result<Self> {
        let m = Self::new(source, target, matrix)?;
        if let Some(w) = m.intertwiner_witness() {
            return Err(Error::VerificationFailed(format!("not an H-module map at {w}")));
        }
        Ok(m)
    }

    pub fn identity(v: &Representation) -> Self {
        ModuleMap {
            source: v.clone(),
            target: v.clone(),
            matrix: SparseMatrix::identity(v.dim),
        }
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    /// First test element `x` with `Mρ_S(x) ≠ ρ_T(x)M`.
    pub fn intertwiner_witness(&self) -> Option<String> {
        let h = self.source.algebra();
        let xs: Vec<Element> = if h.dim() <= EXHAUSTIVE_LIMIT {
            (0..h.dim()).map(|i| h.basis(i)).collect()
        } else {
            h.multiplicative_test_elements()
        };
        xs.into_iter().find_map(|x| {
            let lhs = self.matrix.mul(&self.source.act(&x)).ok()?;
            let rhs = self.target.act(&x).mul(&self.matrix).ok()?;
            (lhs != rhs).then(|| h.fmt_element(&x))
        })
    }

    pub fn is_intertwiner(&self) -> bool {
        self.intertwiner_witness().is_none()
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ModuleMap) -> Result<ModuleMap> {
        if first.target.dim != self.source.dim {
            return Err(Error::ShapeMismatch("composable maps need matching objects".into()));
        }
        ModuleMap::new(
            first.source.clone(),
            self.target.clone(),
            self.matrix.mul(&first.matrix)?,
        )
    }

    /// `self ⊗ other`, between the tensor products of sources and targets.
    pub fn tensor(&self, other: &ModuleMap) -> Result<ModuleMap> {
        ModuleMap::new(
            self.source.tensor(&other.source)?,
            self.target.tensor(&other.target)?,
            self.matrix.kron(&other.matrix),
        )
    }

    pub fn add(&self, other: &ModuleMap) -> Result<ModuleMap> {
        ModuleMap::new(
            self.source.clone(),
            self.target.clone(),
            self.matrix.add(&other.matrix)?,
        )
    }

    pub fn scale(&self, c: &Scalar) -> ModuleMap {
        ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.scale(c),
        }
    }

    pub fn apply(&self, v: &[(usize, Scalar)]) -> SparseVec {
        self.matrix.mul_vec(v)
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }
}

/// `U⊗(V⊗W) → (U⊗V)⊗W`, `u⊗v⊗w ↦ Φ₁u⊗Φ₂v⊗Φ₃w`.
pub fn associator(u: &Representation, v: &Representation, w: &Representation) -> Result<ModuleMap> {
    let h = u.algebra();
    let m = tensor_action(h.phi(), &[u, v, w])?;
    ModuleMap::new(u.tensor(&v.tensor(w)?)?, u.tensor(v)?.tensor(w)?, m)
}

/// `(U⊗V)⊗W → U⊗(V⊗W)`, acting by `Ψ`.
pub fn associator_inv(u: &Representation, v: &Representation, w: &Representation) -> Result<ModuleMap> {
    let h = u.algebra();
    let m = tensor_action(h.phi_inv(), &[u, v, w])?;
    ModuleMap::new(u.tensor(v)?.tensor(w)?, u.tensor(&v.tensor(w)?)?, m)
}

/// `evL: V*⊗V → k`, `v*⊗v ↦ ⟨v*, αv⟩`.
pub fn ev_left(v: &Representation) -> Result<ModuleMap> {
    let h = v.algebra();
    let a = v.act(h.alpha());
    let n = v.dim;
    let row: Vec<(usize, Scalar)> = a.entries().map(|(i, j, x)| (i * n + j, x.clone())).collect();
    ModuleMap::new(
        v.dual().tensor(v)?,
        Representation::trivial(h, 1),
        SparseMatrix::from_rows(n * n, vec![row]),
    )
}

/// `coevL: k → V⊗V*`, `1 ↦ Σ βv_i⊗vⁱ`.
pub fn coev_left(v: &Representation) -> Result<ModuleMap> {
    let h = v.algebra();
    let b = v.act(h.beta());
    let n = v.dim;
    let col: Vec<SparseVec> = vec![b.entries().map(|(r, i, x)| (r * n + i, x.clone())).collect()];
    ModuleMap::new(
        Representation::trivial(h, 1),
        v.tensor(&v.dual())?,
        columns(n * n, &normalize_cols(col)),
    )
}

fn normalize_cols(cols: Vec<SparseVec>) -> Vec<SparseVec> {
    cols.into_iter().map(normalize_vec).collect()
}

/// `evR: V⊗V* → k`, `v⊗w* ↦ ⟨w*, S(α)gv⟩`.
pub fn ev_right(v: &Representation) -> Result<ModuleMap> {
    let h = v.algebra();
    let piv = h.require_pivotal()?;
    let m = v.act(&h.mul(&h.s(h.alpha()), piv.pivot()));
    let n = v.dim;
    // entry (i, j) of m pairs v_j with v^i
    let row: Vec<(usize, Scalar)> = normalize_vec(m.entries().map(|(i, j, x)| (j * n + i, x.clone())).collect());
    ModuleMap::new(
        v.tensor(&v.dual())?,
        Representation::trivial(h, 1),
        SparseMatrix::from_rows(n * n, vec![row]),
    )
}

/// `coevR: k → V*⊗V`, `1 ↦ Σ ρ*(β)vⁱ⊗g⁻¹v_i`.
pub fn coev_right(v: &Representation) -> Result<ModuleMap> {
    let h = v.algebra();
    let piv = h.require_pivotal()?;
    let dual = v.dual();
    let b = dual.act(h.beta());
    let g_inv = v.act(piv.pivot_inv());
    // coefficient of v^k ⊗ v_r is Σ_i b[k][i] g⁻¹[r][i]
    let prod = b.mul(&g_inv.transpose())?;
    let n = v.dim;
    let col = normalize_vec(prod.entries().map(|(k, r, x)| (k * n + r, x.clone())).collect());
    ModuleMap::new(Representation::trivial(h, 1), dual.tensor(v)?, columns(n * n, &[col]))
}

/// `δ_V: V → V**`, the action of `g` followed by the canonical identification.
pub fn pivotal_iso(v: &Representation) -> Result<ModuleMap> {
    let h = v.algebra();
    let piv = h.require_pivotal()?;
    ModuleMap::new(v.clone(), v.dual().dual(), v.act(piv.pivot()))
}

/// Everything [`duals_and_pivot`] builds for one module.
#[derive(Clone, Debug)]
pub struct DualData {
    pub dual: Representation,
    pub ev_left: ModuleMap,
    pub coev_left: ModuleMap,
    pub ev_right: ModuleMap,
    pub coev_right: ModuleMap,
    pub pivotal: ModuleMap,
}

/// Dual, both evaluation/coevaluation pairs and `δ_V`, each verified to be a
/// module map.
pub fn duals_and_pivot(v: &Representation) -> Result<DualData> {
    let data = DualData {
        dual: v.dual(),
        ev_left: ev_left(v)?,
        coev_left: coev_left(v)?,
        ev_right: ev_right(v)?,
        coev_right: coev_right(v)?,
        pivotal: pivotal_iso(v)?,
    };
    for (name, m) in [
        ("evL", &data.ev_left),
        ("coevL", &data.coev_left),
        ("evR", &data.ev_right),
        ("coevR", &data.coev_right),
        ("δ", &data.pivotal),
    ] {
        if let Some(w) = m.intertwiner_witness() {
            return Err(Error::VerificationFailed(format!("{name} is not a module map at {w}")));
        }
    }
    Ok(data)
}

/// The four zig-zag composites, each required to be the identity:
/// `(id⊗evL)Ψ(coevL⊗id)` on `V`, `(evL⊗id)Φ(id⊗coevL)` on `V*`,
/// `(evR⊗id)Φ(id⊗coevR)` on `V`, `(id⊗evR)Ψ(coevR⊗id)` on `V*`.
pub fn zigzag_checks(v: &Representation) -> Result<Vec<Check>> {
    let h = v.algebra();
    let dual = v.dual();
    let one_v = SparseMatrix::identity(v.dim);
    let mut out = Vec::new();
    let mut push = |name: &str, m: SparseMatrix| {
        out.push(Check::from_bool(name, m.is_identity()));
    };
    let evl = ev_left(v)?;
    let coevl = coev_left(v)?;
    let m = one_v
        .kron(evl.matrix())
        .mul(&tensor_action(h.phi_inv(), &[v, &dual, v])?)?
        .mul(&coevl.matrix().kron(&one_v))?;
    push("(id⊗evL)∘Ψ∘(coevL⊗id) = id_V", m);
    let m = evl
        .matrix()
        .kron(&one_v)
        .mul(&tensor_action(h.phi(), &[&dual, v, &dual])?)?
        .mul(&one_v.kron(coevl.matrix()))?;
    push("(evL⊗id)∘Φ∘(id⊗coevL) = id_V*", m);
    if h.pivotal().is_some() {
        let evr = ev_right(v)?;
        let coevr = coev_right(v)?;
        let m = evr
            .matrix()
            .kron(&one_v)
            .mul(&tensor_action(h.phi(), &[v, &dual, v])?)?
            .mul(&one_v.kron(coevr.matrix()))?;
        push("(evR⊗id)∘Φ∘(id⊗coevR) = id_V", m);
        let m = one_v
            .kron(evr.matrix())
            .mul(&tensor_action(h.phi_inv(), &[&dual, v, &dual])?)?
            .mul(&coevr.matrix().kron(&one_v))?;
        push("(id⊗evR)∘Ψ∘(coevR⊗id) = id_V*", m);
    }
    Ok(out)
}

/// Right partial trace of `f: A⊗C → B⊗C`:
/// `A → A(CC*) → (AC)C* → (BC)C* → B(CC*) → B`
/// through `id⊗coevL`, `Φ`, `f⊗id`, `Ψ`, `id⊗evR`.
pub fn partial_trace_right(
    f: &ModuleMap,
    a: &Representation,
    b: &Representation,
    c: &Representation,
) -> Result<ModuleMap> {
    if f.source.dim != a.dim * c.dim || f.target.dim != b.dim * c.dim {
        return Err(Error::ShapeMismatch("right partial trace needs f: A⊗C → B⊗C".into()));
    }
    let h = a.algebra();
    let dual = c.dual();
    let one_a = SparseMatrix::identity(a.dim);
    let one_b = SparseMatrix::identity(b.dim);
    let one_d = SparseMatrix::identity(c.dim);
    let m = one_b
        .kron(ev_right(c)?.matrix())
        .mul(&tensor_action(h.phi_inv(), &[b, c, &dual])?)?
        .mul(&f.matrix.kron(&one_d))?
        .mul(&tensor_action(h.phi(), &[a, c, &dual])?)?
        .mul(&one_a.kron(coev_left(c)?.matrix()))?;
    ModuleMap::new(a.clone(), b.clone(), m)
}

/// Left partial trace of `g: C⊗A → C⊗B`:
/// `A → (C*C)A → C*(CA) → C*(CB) → (C*C)B → B`
/// through `coevR⊗id`, `Ψ`, `id⊗g`, `Φ`, `evL⊗id`.
pub fn partial_trace_left(
    g: &ModuleMap,
    c: &Representation,
    a: &Representation,
    b: &Representation,
) -> Result<ModuleMap> {
    if g.source.dim != c.dim * a.dim || g.target.dim != c.dim * b.dim {
        return Err(Error::ShapeMismatch("left partial trace needs g: C⊗A → C⊗B".into()));
    }
    let h = a.algebra();
    let dual = c.dual();
    let one_a = SparseMatrix::identity(a.dim);
    let one_b = SparseMatrix::identity(b.dim);
    let one_d = SparseMatrix::identity(c.dim);
    let m = ev_left(c)?
        .matrix()
        .kron(&one_b)
        .mul(&tensor_action(h.phi(), &[&dual, c, b])?)?
        .mul(&one_d.kron(&g.matrix))?
        .mul(&tensor_action(h.phi_inv(), &[&dual, c, a])?)?
        .mul(&coev_right(c)?.matrix().kron(&one_a))?;
    ModuleMap::new(a.clone(), b.clone(), m)
}

/// The isomorphisms `φʳ: H⊗V₀ → H⊗V`, `ψʳ` its inverse, `φˡ: V₀⊗H → V⊗H`
/// and `ψˡ`, where `V₀` is `V` with trivial action.
#[derive(Clone, Debug)]
pub struct PhiPsi {
    pub regular: Representation,
    pub module: Representation,
    pub trivialized: Representation,
    pub phi_r: ModuleMap,
    pub psi_r: ModuleMap,
    pub phi_l: ModuleMap,
    pub psi_l: ModuleMap,
}

/// `φʳ(h⊗v) = Δ(h)pᴿ·(1⊗v)`, `ψʳ(h⊗v) = [(id⊗S)(qᴿΔ(h))]·(1⊗v)`,
/// `φˡ(v⊗h) = Δ(h)pᴸ·(v⊗1)`, `ψˡ(v⊗h) = [(S⁻¹⊗id)(qᴸΔ(h))]·(v⊗1)`.
pub fn phi_psi(algebra: &Arc<QuasiHopfAlgebra>, v: &Representation) -> Result<PhiPsi> {
    let h = algebra.as_ref();
    let regular = Representation::regular(algebra);
    regular.require_same(v)?;
    let triv = Representation::trivial(algebra, v.dim);
    let (q_r, p_r, q_l, p_l) = h.qp_elements()?;
    let (d, n) = (h.dim(), v.dim);
    let s_op = h.antipode();
    let s_inv_op = h.antipode_inv();
    let mut phi_r = Vec::new();
    let mut psi_r = Vec::new();
    let mut phi_l = Vec::new();
    let mut psi_l = Vec::new();
    for x in 0..d {
        let dx = h.delta(&h.basis(x));
        let t_phi_r = h.mul_t(&dx, &p_r)?;
        let t_psi_r = h.mul_t(&q_r, &dx)?.map_leg(1, s_op)?;
        let t_phi_l = h.mul_t(&dx, &p_l)?;
        let t_psi_l = h.mul_t(&q_l, &dx)?.map_leg(0, s_inv_op)?;
        phi_r.push(t_phi_r);
        psi_r.push(t_psi_r);
        phi_l.push(t_phi_l);
        psi_l.push(t_psi_l);
    }
    // column (x, w) of the right maps is t_x · (1⊗w) with t_x acting on H⊗V
    let right = |ts: &[TensorElement]| -> SparseMatrix {
        let mut cols = Vec::with_capacity(d * n);
        for t in ts {
            for w in 0..n {
                cols.push(apply_to_pure(t, &regular, v, &h.one(), w, false));
            }
        }
        columns(d * n, &cols)
    };
    // column (w, x) of the left maps is t_x · (w⊗1) on V⊗H
    let left = |ts: &[TensorElement]| -> SparseMatrix {
        let mut cols = vec![Vec::new(); d * n];
        for (x, t) in ts.iter().enumerate() {
            for w in 0..n {
                cols[w * d + x] = apply_to_pure(t, &regular, v, &h.one(), w, true);
            }
        }
        columns(d * n, &cols)
    };
    let hv = regular.tensor(v)?;
    let hv0 = regular.tensor(&triv)?;
    let vh = v.tensor(&regular)?;
    let v0h = triv.tensor(&regular)?;
    Ok(PhiPsi {
        phi_r: ModuleMap::new(hv0.clone(), hv.clone(), right(&phi_r))?,
        psi_r: ModuleMap::new(hv, hv0, right(&psi_r))?,
        phi_l: ModuleMap::new(v0h.clone(), vh.clone(), left(&phi_l))?,
        psi_l: ModuleMap::new(vh, v0h, left(&psi_l))?,
        regular,
        module: v.clone(),
        trivialized: triv,
    })
}

/// `t · (1⊗v_w)` on `H⊗V`, or with `module_first`, `t · (v_w⊗1)` on `V⊗H`.
fn apply_to_pure(
    t: &TensorElement,
    regular: &Representation,
    v: &Representation,
    one: &Element,
    w: usize,
    module_first: bool,
) -> SparseVec {
    let h = regular.algebra();
    let n = v.dim;
    let d = regular.dim;
    let mut acc = Vec::new();
    for (legs, c) in t.iter() {
        let (hx, vx) = if module_first {
            (legs[1], legs[0])
        } else {
            (legs[0], legs[1])
        };
        let hpart = h.mul(&h.basis(hx), one);
        let vcol = v.action[vx].column(w);
        for (i, a) in &hpart {
            for (j, b) in &vcol {
                let key = if module_first { j * d + i } else { i * n + j };
                acc.push((key, &(c * a) * b));
            }
        }
    }
    normalize_vec(acc)
}

/// `Ξ(a⊗m) = φʳ∘(r_a⊗m)∘ψʳ ∈ End_H(H⊗W)`.
pub fn xi(pp: &PhiPsi, a: &Element, m: &SparseMatrix) -> Result<ModuleMap> {
    let h = pp.regular.algebra();
    let inner = h.alg().right_mult(a).kron(m);
    let mat = pp.phi_r.matrix.mul(&inner)?.mul(&pp.psi_r.matrix)?;
    ModuleMap::new(pp.phi_r.target.clone(), pp.phi_r.target.clone(), mat)
}

/// `Ξˡ(m⊗a) = φˡ∘(m⊗r_a)∘ψˡ ∈ End_H(W⊗H)`.
pub fn xi_left(pp: &PhiPsi, m: &SparseMatrix, a: &Element) -> Result<ModuleMap> {
    let h = pp.regular.algebra();
    let inner = m.kron(&h.alg().right_mult(a));
    let mat = pp.phi_l.matrix.mul(&inner)?.mul(&pp.psi_l.matrix)?;
    ModuleMap::new(pp.phi_l.target.clone(), pp.phi_l.target.clone(), mat)
}

/// Right multiplication `r_a ∈ End_H(H)`.
pub fn right_multiplication(algebra: &Arc<QuasiHopfAlgebra>, a: &Element) -> ModuleMap {
    let reg = Representation::regular(algebra);
    ModuleMap {
        source: reg.clone(),
        target: reg,
        matrix: algebra.alg().right_mult(a),
    }
}

/// Basis of `Hom_H(M, N)` as the nullspace of the intertwiner constraints.
pub fn hom_space(m: &Representation, n: &Representation) -> Result<Vec<ModuleMap>> {
    m.require_same(n)?;
    let h = m.algebra();
    let (dm, dn) = (m.dim, n.dim);
    let unknowns = dn * dm;
    let mut ech = RowEchelon::new(unknowns);
    for x in h.multiplicative_test_elements() {
        let rm = m.act(&x);
        let rn = n.act(&x);
        let rm_t = rm.transpose();
        // (Xρ_M(x) − ρ_N(x)X)[r][c] = Σ_k X[r][k]ρ_M[k][c] − Σ_k ρ_N[r][k]X[k][c]
        for r in 0..dn {
            for c in 0..dm {
                let mut row = Vec::new();
                for (k, v) in rm_t.row(c) {
                    row.push((r * dm + k, v.clone()));
                }
                for (k, v) in rn.row(r) {
                    row.push((k * dm + c, -v));
                }
                let row = normalize_vec(row);
                if !row.is_empty() {
                    ech.insert(&row);
                }
            }
        }
    }
    ech.nullspace()
        .into_iter()
        .map(|v| {
            let entries = v.into_iter().map(|(k, x)| (k / dm, k % dm, x));
            ModuleMap::new(m.clone(), n.clone(), SparseMatrix::from_triplets(dn, dm, entries))
        })
        .collect()
}

/// Dimension of the span of the given maps' matrices.
pub fn span_dim(maps: &[ModuleMap]) -> usize {
    let Some(first) = maps.first() else { return 0 };
    let cols = first.matrix.cols();
    let size = first.matrix.rows() * cols;
    let mut ech = RowEchelon::new(size);
    for m in maps {
        let v: SparseVec = m.matrix.entries().map(|(r, c, x)| (r * cols + c, x.clone())).collect();
        ech.insert(&v);
    }
    ech.rank()
}

/// `⟨u, Mv⟩` for a covector `u`.
pub fn pair(u: &[(usize, Scalar)], m: &SparseMatrix, v: &[(usize, Scalar)]) -> Scalar {
    vec_dot(u, &m.mul_vec(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{kz2, kz4, sweedler};

    fn arc(h: QuasiHopfAlgebra) -> Arc<QuasiHopfAlgebra> {
        Arc::new(h)
    }

    #[test]
    fn regular_and_trivial_modules() {
        let h = arc(kz2());
        let reg = Representation::regular(&h);
        assert_eq!(reg.dim(), 2);
        reg.verify().unwrap();
        let t = Representation::trivial(&h, 3);
        assert!(t.action(1).is_identity());
        let sweed = arc(sweedler());
        let r = Representation::regular(&sweed);
        r.tensor(&r).unwrap().verify().unwrap();
        r.dual().verify().unwrap();
    }

    #[test]
    fn group_algebra_evaluation_and_associator() {
        let h = arc(kz2());
        let reg = Representation::regular(&h);
        let ev = ev_left(&reg).unwrap();
        // g* ⊗ g has index 1·2 + 1
        assert_eq!(ev.matrix().get(0, 3), Scalar::one());
        assert!(associator(&reg, &reg, &reg).unwrap().is_identity());
        assert!(pivotal_iso(&reg).unwrap().is_identity());
    }

    #[test]
    fn zigzags_and_duals_on_sweedler() {
        let h = arc(sweedler());
        let reg = Representation::regular(&h);
        for v in [reg.clone(), Representation::trivial(&h, 2), reg.tensor(&reg).unwrap()] {
            for c in zigzag_checks(&v).unwrap() {
                assert!(c.passed(), "{}", c.name);
            }
            duals_and_pivot(&v).unwrap();
        }
    }

    #[test]
    fn partial_traces_of_identity() {
        let h = arc(kz2());
        let reg = Representation::regular(&h);
        let hh = reg.tensor(&reg).unwrap();
        let tr = partial_trace_right(&ModuleMap::identity(&hh), &reg, &reg, &reg).unwrap();
        assert_eq!(tr.matrix(), &SparseMatrix::scalar(2, &Scalar::from(2)));
        let triv = Representation::trivial(&h, 3);
        let one = Representation::trivial(&h, 1);
        let t3 = triv.tensor(&one).unwrap();
        let tl = partial_trace_left(&ModuleMap::identity(&t3), &triv, &one, &one).unwrap();
        assert_eq!(tl.matrix(), &SparseMatrix::scalar(1, &Scalar::from(3)));
    }

    #[test]
    fn phi_psi_are_inverse_intertwiners() {
        for h in [arc(kz4()), arc(sweedler())] {
            let reg = Representation::regular(&h);
            let pp = phi_psi(&h, &reg).unwrap();
            assert!(pp.phi_r.compose(&pp.psi_r).unwrap().is_identity());
            assert!(pp.psi_r.compose(&pp.phi_r).unwrap().is_identity());
            assert!(pp.phi_l.compose(&pp.psi_l).unwrap().is_identity());
            assert!(pp.psi_l.compose(&pp.phi_l).unwrap().is_identity());
            for m in [&pp.phi_r, &pp.psi_r, &pp.phi_l, &pp.psi_l] {
                assert!(m.is_intertwiner());
            }
        }
    }

    #[test]
    fn xi_is_multiplicative_and_spans() {
        let h = arc(sweedler());
        let reg = Representation::regular(&h);
        let pp = phi_psi(&h, &reg).unwrap();
        let e = |i: usize, j: usize| SparseMatrix::from_triplets(4, 4, [(i, j, Scalar::one())]);
        let one = xi(&pp, &h.one(), &SparseMatrix::identity(4)).unwrap();
        assert!(one.is_identity());
        let (a, b) = (h.basis(2), h.basis(1));
        let lhs = xi(&pp, &a, &e(0, 1))
            .unwrap()
            .compose(&xi(&pp, &b, &e(1, 2)).unwrap())
            .unwrap();
        let rhs = xi(&pp, &h.mul(&b, &a), &e(0, 2)).unwrap();
        assert_eq!(lhs, rhs);
        let mut all = Vec::new();
        for x in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    all.push(xi(&pp, &h.basis(x), &e(i, j)).unwrap());
                }
            }
        }
        let hh = reg.tensor(&reg).unwrap();
        assert_eq!(span_dim(&all), hom_space(&hh, &hh).unwrap().len());
    }

    #[test]
    fn hom_spaces_of_group_algebra() {
        let h = arc(kz2());
        let reg = Representation::regular(&h);
        let sign = Representation::character(&h, &[Scalar::one(), Scalar::from(-1)]).unwrap();
        assert_eq!(hom_space(&sign, &reg).unwrap().len(), 1);
        assert_eq!(hom_space(&reg, &reg).unwrap().len(), 2);
    }
}
