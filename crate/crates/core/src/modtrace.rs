//! Modified traces on projective modules built from symmetrised cointegrals,
//! their extension along idempotent presentations, and the checks tying them
//! to partial traces.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algcore::{Element, LinearForm};
use crate::error::{Error, Result};
use crate::exactmath::sparse::{normalize_vec, vec_dot};
use crate::exactmath::{Accumulator, RowEchelon, Scalar, SparseMatrix, SparseVec};
use crate::intcoint::{self, Side};
use crate::quasihopf::QuasiHopfAlgebra;
use crate::repcat::{self, apply_tensor, columns, hom_space, ModuleMap, PhiPsi, Representation};
use crate::report::{Check, Report};

/// Largest algebra dimension for which reduction checks run over all basis
/// pairs `(a, E_jk)`.
pub const EXHAUSTIVE_REDUCTION_DIM: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceSide {
    Left,
    Right,
    TwoSided,
}

impl TraceSide {
    fn includes(self, side: Side) -> bool {
        matches!(
            (self, side),
            (TraceSide::TwoSided, _) | (TraceSide::Left, Side::Left) | (TraceSide::Right, Side::Right)
        )
    }
}

/// The modified trace on projective `H`-modules determined by the symmetric
/// form `t`, with `t_H(f) = t(f(1))` on `End_H(H)`.
#[derive(Clone, Debug)]
pub struct ModifiedTrace {
    algebra: Arc<QuasiHopfAlgebra>,
    side: TraceSide,
    form: LinearForm,
}

impl ModifiedTrace {
    pub fn algebra(&self) -> &Arc<QuasiHopfAlgebra> {
        &self.algebra
    }

    pub fn side(&self) -> TraceSide {
        self.side
    }

    pub fn form(&self) -> &LinearForm {
        &self.form
    }

    /// `t(a)`, the trace of right multiplication by `a` on `H`.
    pub fn value(&self, a: &Element) -> Scalar {
        self.form.eval_element(a)
    }

    /// `t_H(f) = t(f(1))` for `f ∈ End_H(H)`.
    pub fn on_regular(&self, f: &ModuleMap) -> Result<Scalar> {
        let d = self.algebra.dim();
        if f.source().dim() != d || f.target().dim() != d {
            return Err(Error::ShapeMismatch("expected an endomorphism of H".into()));
        }
        Ok(self.form.eval_element(&f.apply(&self.algebra.one())))
    }
}

/// Checks that `lambda_hat` is a symmetrised cointegral of a unimodular
/// pivotal algebra on `side` and wraps it as a modified trace; it is
/// two-sided when the other characterisation holds too.
pub fn from_symmetrised_cointegral(
    algebra: &Arc<QuasiHopfAlgebra>,
    lambda_hat: &LinearForm,
    side: Side,
) -> Result<ModifiedTrace> {
    let h = algebra.as_ref();
    h.require_pivotal()?;
    let left = intcoint::integrals(h, Side::Left)?;
    let gamma = intcoint::modulus(h, &left)?;
    if !gamma.is_counit(h) {
        return Err(Error::NotUnimodular);
    }
    if lambda_hat.is_zero() {
        return Err(Error::NotSymmetrisedCointegral("zero form".into()));
    }
    let d = h.dim();
    for i in 0..d {
        for j in i + 1..d {
            let a = lambda_hat.eval_element(h.alg().product(i, j));
            let b = lambda_hat.eval_element(h.alg().product(j, i));
            if a != b {
                return Err(Error::NotSymmetrisedCointegral(format!(
                    "not symmetric on ({}, {})",
                    h.alg().label(i),
                    h.alg().label(j)
                )));
            }
        }
    }
    intcoint::verify_symmetrised(h, side, lambda_hat, &gamma).map_err(|e| match e {
        Error::VerificationFailed(w) => Error::NotSymmetrisedCointegral(w),
        other => other,
    })?;
    let other = match side {
        Side::Left => Side::Right,
        Side::Right => Side::Left,
    };
    let two_sided = intcoint::verify_symmetrised(h, other, lambda_hat, &gamma).is_ok();
    let trace_side = match (two_sided, side) {
        (true, _) => TraceSide::TwoSided,
        (false, Side::Left) => TraceSide::Left,
        (false, Side::Right) => TraceSide::Right,
    };
    Ok(ModifiedTrace {
        algebra: algebra.clone(),
        side: trace_side,
        form: lambda_hat.clone(),
    })
}

/// Wraps `form` without any checks, claiming both sides. The reduction and
/// pairing checks then test that claim; used for negative controls.
pub fn from_form_unverified(algebra: &Arc<QuasiHopfAlgebra>, form: &LinearForm) -> ModifiedTrace {
    ModifiedTrace {
        algebra: algebra.clone(),
        side: TraceSide::TwoSided,
        form: form.clone(),
    }
}

/// `P` together with `a_i: H → P`, `b_i: P → H` and `Σ a_i∘b_i = id_P`.
#[derive(Clone, Debug)]
pub struct ProjectivePresentation {
    object: Representation,
    pairs: Vec<(ModuleMap, ModuleMap)>,
}

impl ProjectivePresentation {
    pub fn new(object: Representation, pairs: Vec<(ModuleMap, ModuleMap)>) -> Result<Self> {
        let pres = Self::unchecked(object, pairs)?;
        let mut sum = SparseMatrix::zeros(pres.object.dim(), pres.object.dim());
        for (a, b) in &pres.pairs {
            sum = sum.add(a.compose(b)?.matrix())?;
        }
        if !sum.is_identity() {
            return Err(Error::BadPresentation("Σ a_i∘b_i is not the identity".into()));
        }
        Ok(pres)
    }

    fn unchecked(object: Representation, pairs: Vec<(ModuleMap, ModuleMap)>) -> Result<Self> {
        let d = object.algebra().dim();
        for (a, b) in &pairs {
            if a.source().dim() != d
                || b.target().dim() != d
                || a.target().dim() != object.dim()
                || b.source().dim() != object.dim()
            {
                return Err(Error::BadPresentation("maps must run H → P → H".into()));
            }
        }
        Ok(ProjectivePresentation { object, pairs })
    }

    /// `H` presented by the identity.
    pub fn regular(algebra: &Arc<QuasiHopfAlgebra>) -> Self {
        let reg = Representation::regular(algebra);
        let id = ModuleMap::identity(&reg);
        ProjectivePresentation {
            object: reg,
            pairs: vec![(id.clone(), id)],
        }
    }

    /// `P = He` for an idempotent `e`, with `a = (h ↦ he)` and `b` the
    /// inclusion, split into `copies` equal pairs `(a, b/copies)`.
    pub fn from_idempotent(algebra: &Arc<QuasiHopfAlgebra>, e: &Element, copies: usize) -> Result<Self> {
        let h = algebra.as_ref();
        if h.mul(e, e) != *e {
            return Err(Error::BadPresentation("not an idempotent".into()));
        }
        if copies == 0 {
            return Err(Error::BadPresentation("need at least one pair".into()));
        }
        let reg = Representation::regular(algebra);
        let r_e = h.alg().right_mult(e);
        let mut ech = RowEchelon::new(h.dim());
        for j in 0..h.dim() {
            ech.insert(&h.mul(&h.basis(j), e));
        }
        let (sub, incl, proj) = reg.submodule(&ech.basis(), &r_e)?;
        let share = incl.scale(&Scalar::frac(1, copies as i64));
        let pairs = (0..copies).map(|_| (proj.clone(), share.clone())).collect();
        Self::new(sub, pairs)
    }

    /// `H⊗W` with `a_i = φʳ∘ι_i`, `b_i = π_i∘ψʳ` for the inclusions
    /// `ι_i(h) = h⊗w_i` and projections `π_i` of `H⊗W₀`.
    pub fn free_right(pp: &PhiPsi) -> Result<Self> {
        let (d, n) = (pp.regular.dim(), pp.module.dim());
        if !pp.phi_r.compose(&pp.psi_r)?.is_identity() {
            return Err(Error::BadPresentation("φʳ∘ψʳ is not the identity".into()));
        }
        let pairs = (0..n)
            .map(|i| {
                let iota = SparseMatrix::from_triplets(d * n, d, (0..d).map(|x| (x * n + i, x, Scalar::one())));
                let pi = iota.transpose();
                let a = ModuleMap::new(
                    pp.regular.clone(),
                    pp.phi_r.target().clone(),
                    pp.phi_r.matrix().mul(&iota)?,
                )?;
                let b = ModuleMap::new(
                    pp.psi_r.source().clone(),
                    pp.regular.clone(),
                    pi.mul(pp.psi_r.matrix())?,
                )?;
                Ok((a, b))
            })
            .collect::<Result<_>>()?;
        Self::unchecked(pp.phi_r.target().clone(), pairs)
    }

    /// `W⊗H` with `a_i = φˡ∘ι_i`, `b_i = π_i∘ψˡ`, `ι_i(h) = w_i⊗h`.
    pub fn free_left(pp: &PhiPsi) -> Result<Self> {
        let (d, n) = (pp.regular.dim(), pp.module.dim());
        if !pp.phi_l.compose(&pp.psi_l)?.is_identity() {
            return Err(Error::BadPresentation("φˡ∘ψˡ is not the identity".into()));
        }
        let pairs = (0..n)
            .map(|i| {
                let iota = SparseMatrix::from_triplets(d * n, d, (0..d).map(|x| (i * d + x, x, Scalar::one())));
                let pi = iota.transpose();
                let a = ModuleMap::new(
                    pp.regular.clone(),
                    pp.phi_l.target().clone(),
                    pp.phi_l.matrix().mul(&iota)?,
                )?;
                let b = ModuleMap::new(
                    pp.psi_l.source().clone(),
                    pp.regular.clone(),
                    pi.mul(pp.psi_l.matrix())?,
                )?;
                Ok((a, b))
            })
            .collect::<Result<_>>()?;
        Self::unchecked(pp.phi_l.target().clone(), pairs)
    }

    pub fn object(&self) -> &Representation {
        &self.object
    }

    pub fn pairs(&self) -> &[(ModuleMap, ModuleMap)] {
        &self.pairs
    }

    /// The covector/vector pairs `(t∘b_i, a_i(1))`.
    fn functional(&self, tr: &ModifiedTrace) -> Bilinear {
        let one = tr.algebra.one();
        let terms = self
            .pairs
            .iter()
            .map(|(a, b)| (b.matrix().vec_mul(tr.form.coeffs()), a.apply(&one)))
            .collect();
        Bilinear { terms }
    }
}

/// `M ↦ Σ_i ⟨u_i, M v_i⟩`.
#[derive(Clone, Debug)]
struct Bilinear {
    terms: Vec<(SparseVec, SparseVec)>,
}

impl Bilinear {
    fn eval(&self, m: &SparseMatrix) -> Scalar {
        self.terms
            .iter()
            .fold(Scalar::zero(), |acc, (u, v)| acc + vec_dot(u, &m.mul_vec(v)))
    }

    /// The functional `M ↦ self(outer · M · inner)`.
    fn conjugated(&self, outer: &SparseMatrix, inner: &SparseMatrix) -> Bilinear {
        let inner_t = inner.transpose();
        Bilinear {
            terms: self
                .terms
                .iter()
                .map(|(u, v)| (outer.vec_mul(u), inner_t.vec_mul(v)))
                .collect(),
        }
    }

    /// Value on `r_a ⊗ m` acting on `H⊗W` (`module_first = false`) or
    /// `m ⊗ r_a` on `W⊗H`.
    fn eval_product(
        &self,
        h: &QuasiHopfAlgebra,
        a: &Element,
        m: &SparseMatrix,
        n: usize,
        module_first: bool,
    ) -> Scalar {
        let d = h.dim();
        let m_cols = m.transpose();
        let right: Vec<Element> = (0..d).map(|x| h.mul(&h.basis(x), a)).collect();
        let mut acc = Accumulator::new(d * n);
        let mut total = Scalar::zero();
        for (u, v) in &self.terms {
            for (key, c) in v {
                let (x, w) = if module_first {
                    (key % d, key / d)
                } else {
                    (key / n, key % n)
                };
                let col = m_cols.row(w);
                if col.is_empty() {
                    continue;
                }
                for (y, p) in &right[x] {
                    let cp = c * p;
                    for (vv, q) in col {
                        let k = if module_first { vv * d + y } else { y * n + vv };
                        acc.add(k, &(&cp * q));
                    }
                }
            }
            total += &vec_dot(u, &acc.take());
        }
        total
    }
}

/// `t_P(f) = Σ_i t((b_i∘f∘a_i)(1))`.
pub fn evaluate(tr: &ModifiedTrace, pres: &ProjectivePresentation, f: &ModuleMap) -> Result<Scalar> {
    let p = pres.object.dim();
    if f.source().dim() != p || f.target().dim() != p {
        return Err(Error::ShapeMismatch("f must be an endomorphism of P".into()));
    }
    Ok(pres.functional(tr).eval(f.matrix()))
}

/// `t_H(tr^r_C(f))` for `f: H⊗C → H⊗C`, as the functional
/// `f ↦ Σ_k ⟨E_k, f X_k⟩` with `X = Φ(1⊗coevL(1))` and
/// `E = (t⊗evR)∘Ψ`, split along the `C*` leg.
fn right_trace_functional(tr: &ModifiedTrace, c: &Representation) -> Result<Bilinear> {
    let h = tr.algebra.as_ref();
    let reg = Representation::regular(&tr.algebra);
    let dual = c.dual();
    let n = c.dim();
    let coev = repcat::coev_left(c)?.apply(&[(0, Scalar::one())]);
    let ev = repcat::ev_right(c)?.matrix().row(0).to_vec();
    let one = h.one();
    let start: SparseVec = one
        .iter()
        .flat_map(|(x, a)| coev.iter().map(move |(k, b)| (x * n * n + k, a * b)))
        .collect();
    let x = apply_tensor(h.phi(), &[&reg, c, &dual], &normalize_vec(start), false)?;
    let cov: SparseVec = tr
        .form
        .coeffs()
        .iter()
        .flat_map(|(y, a)| ev.iter().map(move |(k, b)| (y * n * n + k, a * b)))
        .collect();
    let e = apply_tensor(h.phi_inv(), &[&reg, c, &dual], &normalize_vec(cov), true)?;
    let split = |v: &SparseVec| -> Vec<SparseVec> {
        let mut out = vec![Vec::new(); n];
        for (key, val) in v {
            out[key % n].push((key / n, val.clone()));
        }
        out
    };
    let (xs, es) = (split(&x), split(&e));
    Ok(Bilinear {
        terms: es
            .into_iter()
            .zip(xs)
            .filter(|(u, v)| !u.is_empty() && !v.is_empty())
            .collect(),
    })
}

/// `t_H(tr^l_C(g))` for `g: C⊗H → C⊗H`, with `X = Ψ(coevR(1)⊗1)` and
/// `E = (evL⊗t)∘Φ`, split along the `C*` leg.
fn left_trace_functional(tr: &ModifiedTrace, c: &Representation) -> Result<Bilinear> {
    let h = tr.algebra.as_ref();
    let reg = Representation::regular(&tr.algebra);
    let dual = c.dual();
    let n = c.dim();
    let d = h.dim();
    let coev = repcat::coev_right(c)?.apply(&[(0, Scalar::one())]);
    let ev = repcat::ev_left(c)?.matrix().row(0).to_vec();
    let one = h.one();
    let start: SparseVec = coev
        .iter()
        .flat_map(|(k, a)| one.iter().map(move |(x, b)| (k * d + x, a * b)))
        .collect();
    let x = apply_tensor(h.phi_inv(), &[&dual, c, &reg], &normalize_vec(start), false)?;
    let cov: SparseVec = ev
        .iter()
        .flat_map(|(k, a)| tr.form.coeffs().iter().map(move |(y, b)| (k * d + y, a * b)))
        .collect();
    let e = apply_tensor(h.phi(), &[&dual, c, &reg], &normalize_vec(cov), true)?;
    let block = n * d;
    let split = |v: &SparseVec| -> Vec<SparseVec> {
        let mut out = vec![Vec::new(); n];
        for (key, val) in v {
            out[key / block].push((key % block, val.clone()));
        }
        out
    };
    let (xs, es) = (split(&x), split(&e));
    Ok(Bilinear {
        terms: es
            .into_iter()
            .zip(xs)
            .filter(|(u, v)| !u.is_empty() && !v.is_empty())
            .collect(),
    })
}

/// `t_H(tr^r_C(f))` evaluated through the categorical composite.
pub fn trace_of_right_partial_trace(tr: &ModifiedTrace, c: &Representation, f: &ModuleMap) -> Result<Scalar> {
    Ok(right_trace_functional(tr, c)?.eval(f.matrix()))
}

/// `t_H(tr^l_C(g))` evaluated through the categorical composite.
pub fn trace_of_left_partial_trace(tr: &ModifiedTrace, c: &Representation, g: &ModuleMap) -> Result<Scalar> {
    Ok(left_trace_functional(tr, c)?.eval(g.matrix()))
}

/// `Σ t(qᴿ₁a₁pᴿ₁)·tr(ρ(gqᴿ₂a₂pᴿ₂)∘m)`, the value of `t_H(tr^r_W(Ξ(a⊗m)))`
/// expanded through the canonical elements.
pub fn reduction_closed_form(tr: &ModifiedTrace, w: &Representation, a: &Element, m: &SparseMatrix) -> Result<Scalar> {
    let h = tr.algebra.as_ref();
    let piv = h.require_pivotal()?;
    let (q_r, p_r, _, _) = h.qp_elements()?;
    let t = h.mul_ts(&[&q_r, &h.delta(a), &p_r])?;
    let mut total = Scalar::zero();
    for (legs, c) in t.iter() {
        let tv = tr.value(&h.basis(legs[0]));
        if tv.is_zero() {
            continue;
        }
        let rho = w.act(&h.mul(piv.pivot(), &h.basis(legs[1])));
        total += &(&(c * &tv) * &rho.mul(m)?.trace());
    }
    Ok(total)
}

/// A seeded sample of `(a, m)`: `a` a combination of two basis elements and
/// `m` a matrix with three entries, all with coefficients in `±{1, 2, 3}`.
fn sample_pairs(d: usize, n: usize, count: usize, seed: u64) -> Vec<(Element, SparseMatrix)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeff = |rng: &mut ChaCha8Rng| {
        let v: i64 = rng.gen_range(1..=3);
        Scalar::from(if rng.gen_bool(0.5) { v } else { -v })
    };
    (0..count)
        .map(|_| {
            let a = normalize_vec((0..2).map(|_| (rng.gen_range(0..d), coeff(&mut rng))).collect());
            let m = SparseMatrix::from_triplets(
                n,
                n,
                (0..3)
                    .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), coeff(&mut rng)))
                    .collect::<Vec<_>>(),
            );
            (a, m)
        })
        .collect()
}

fn basis_pairs(d: usize, n: usize) -> Vec<(Element, SparseMatrix)> {
    let mut out = Vec::with_capacity(d * n * n);
    for a in 0..d {
        for j in 0..n {
            for k in 0..n {
                out.push((
                    vec![(a, Scalar::one())],
                    SparseMatrix::from_triplets(n, n, [(j, k, Scalar::one())]),
                ));
            }
        }
    }
    out
}

/// Options for [`verify_reduction`].
#[derive(Clone, Copy, Debug)]
pub struct ReductionOptions {
    pub budget: usize,
    pub seed: u64,
}

impl Default for ReductionOptions {
    fn default() -> Self {
        ReductionOptions { budget: 200, seed: 0 }
    }
}

/// Checks, with `W = H`,
/// the closed-form identity `t(a)1 = (t⊗g)(qᴿΔ(a)pᴿ)` for every basis `a`;
/// `t_{H⊗W}(Ξ(a⊗m)) = t_H(tr^r_W(Ξ(a⊗m)))` over basis pairs `(a, E_jk)`
/// (or a seeded sample when `dim H` exceeds [`EXHAUSTIVE_REDUCTION_DIM`]);
/// and the mirrored left identity with `Ξˡ` and `tr^l`.
pub fn verify_reduction(tr: &ModifiedTrace, opts: ReductionOptions) -> Result<Report> {
    let h = tr.algebra.as_ref();
    let d = h.dim();
    let mut checks = Vec::new();
    checks.push(match intcoint::verify_unimodular_reduction(h, &tr.form) {
        Ok(()) => Check::pass("t(a)1 = (t⊗g)(qᴿΔ(a)pᴿ) for all basis a").with_value(format!("{d} elements")),
        Err(Error::VerificationFailed(w)) => Check::fail("t(a)1 = (t⊗g)(qᴿΔ(a)pᴿ) for all basis a", w),
        Err(e) => return Err(e),
    });

    let w = Representation::regular(&tr.algebra);
    let n = w.dim();
    let pp = repcat::phi_psi(&tr.algebra, &w)?;
    let (cases, mode) = if d <= EXHAUSTIVE_REDUCTION_DIM {
        (basis_pairs(d, n), "exhaustive".to_string())
    } else {
        (
            sample_pairs(d, n, opts.budget, opts.seed),
            format!("seed {}", opts.seed),
        )
    };

    if tr.side.includes(Side::Right) {
        let pres = ProjectivePresentation::free_right(&pp)?;
        let lhs = pres.functional(tr).conjugated(pp.phi_r.matrix(), pp.psi_r.matrix());
        let rhs = right_trace_functional(tr, &w)?.conjugated(pp.phi_r.matrix(), pp.psi_r.matrix());
        checks.push(compare_cases(
            "t_{H⊗H}(Ξ(a⊗m)) = t_H(tr^r_H(Ξ(a⊗m)))",
            h,
            &cases,
            &mode,
            |a, m| Ok((lhs.eval_product(h, a, m, n, false), rhs.eval_product(h, a, m, n, false))),
        )?);
        let closed_cases: Vec<_> = cases.iter().take(32).cloned().collect();
        checks.push(compare_cases(
            "t_H(tr^r_H(Ξ(a⊗m))) = Σ t(qᴿ₁a₁pᴿ₁)tr(ρ(gqᴿ₂a₂pᴿ₂)m)",
            h,
            &closed_cases,
            "closed form",
            |a, m| {
                Ok((
                    rhs.eval_product(h, a, m, n, false),
                    reduction_closed_form(tr, &w, a, m)?,
                ))
            },
        )?);
        checks.push(compare_cases(
            "t_{H⊗H}(Ξ(a⊗m)) = t(a)·tr(m)",
            h,
            &cases,
            &mode,
            |a, m| Ok((lhs.eval_product(h, a, m, n, false), &tr.value(a) * &m.trace())),
        )?);
    }
    if tr.side.includes(Side::Left) {
        let pres = ProjectivePresentation::free_left(&pp)?;
        let lhs = pres.functional(tr).conjugated(pp.phi_l.matrix(), pp.psi_l.matrix());
        let rhs = left_trace_functional(tr, &w)?.conjugated(pp.phi_l.matrix(), pp.psi_l.matrix());
        checks.push(compare_cases(
            "t_{H⊗H}(Ξˡ(m⊗a)) = t_H(tr^l_H(Ξˡ(m⊗a)))",
            h,
            &cases,
            &mode,
            |a, m| Ok((lhs.eval_product(h, a, m, n, true), rhs.eval_product(h, a, m, n, true))),
        )?);
    }
    Ok(Report::new("reduction", checks))
}

fn compare_cases(
    name: &str,
    h: &QuasiHopfAlgebra,
    cases: &[(Element, SparseMatrix)],
    mode: &str,
    mut both: impl FnMut(&Element, &SparseMatrix) -> Result<(Scalar, Scalar)>,
) -> Result<Check> {
    for (a, m) in cases {
        let (x, y) = both(a, m)?;
        if x != y {
            let entries: Vec<String> = m.entries().map(|(i, j, v)| format!("({i},{j})={v}")).collect();
            return Ok(
                Check::fail(name, format!("a = {}, m = [{}]", h.fmt_element(a), entries.join(", ")))
                    .with_value(format!("{x} ≠ {y}")),
            );
        }
    }
    Ok(Check::pass(name).with_value(format!("{} cases, {mode}", cases.len())))
}

/// Rank of `(f, g) ↦ t_P(f∘g)` on `Hom_H(M, P) × Hom_H(P, M)`, required to
/// equal both dimensions.
pub fn pairing_nondegeneracy(tr: &ModifiedTrace, m: &Representation, pres: &ProjectivePresentation) -> Result<Check> {
    let p = pres.object();
    let into = hom_space(m, p)?;
    let out = hom_space(p, m)?;
    let fun = pres.functional(tr);
    let mut rows = Vec::with_capacity(into.len());
    for f in &into {
        let mut row = Vec::with_capacity(out.len());
        for (j, g) in out.iter().enumerate() {
            row.push((j, fun.eval(f.compose(g)?.matrix())));
        }
        rows.push(normalize_vec(row));
    }
    let rank = SparseMatrix::from_rows(out.len(), rows).rank();
    let ok = rank == into.len() && rank == out.len() && rank > 0;
    let check = Check::from_bool("Hom pairing non-degenerate", ok).with_value(format!(
        "rank {rank}, dim Hom(M,P) = {}, dim Hom(P,M) = {}",
        into.len(),
        out.len()
    ));
    Ok(check)
}

/// `t_{H⊗H}(f∘g) = t_H(g∘f)` for seeded pairs `f: H → H⊗H`, `g: H⊗H → H`,
/// with `f(h) = h·v` and `g = (Σ r_{a_i}π_i)∘ψʳ`.
pub fn cyclicity(tr: &ModifiedTrace, samples: usize, seed: u64) -> Result<Check> {
    let h = tr.algebra.as_ref();
    let d = h.dim();
    let reg = Representation::regular(&tr.algebra);
    let pp = repcat::phi_psi(&tr.algebra, &reg)?;
    let hh = pp.phi_r.target().clone();
    let pres = ProjectivePresentation::free_right(&pp)?;
    let fun = pres.functional(tr);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let small = |rng: &mut ChaCha8Rng| Scalar::from(rng.gen_range(-2i64..=2));
    for s in 0..samples {
        let v: SparseVec = normalize_vec((0..4).map(|_| (rng.gen_range(0..d * d), small(&mut rng))).collect());
        let f_cols: Vec<SparseVec> = (0..d).map(|j| hh.action(j).mul_vec(&v)).collect();
        let f = ModuleMap::new(reg.clone(), hh.clone(), columns(d * d, &f_cols))?;
        let picks: Vec<Element> = (0..d)
            .map(|_| normalize_vec(vec![(rng.gen_range(0..d), small(&mut rng))]))
            .collect();
        // Σ_i r_{a_i} π_i on H⊗W₀: (x⊗w_i) ↦ x a_i
        let mut entries = Vec::new();
        for x in 0..d {
            for (i, a) in picks.iter().enumerate() {
                for (y, c) in h.mul(&h.basis(x), a) {
                    entries.push((y, x * d + i, c));
                }
            }
        }
        let inner = SparseMatrix::from_triplets(d, d * d, entries);
        let g = ModuleMap::new(hh.clone(), reg.clone(), inner.mul(pp.psi_r.matrix())?)?;
        let lhs = fun.eval(f.compose(&g)?.matrix());
        let rhs = tr.on_regular(&g.compose(&f)?)?;
        if lhs != rhs {
            return Ok(Check::fail("cyclicity t_{H⊗H}(f∘g) = t_H(g∘f)", format!("sample {s}"))
                .with_value(format!("{lhs} ≠ {rhs}")));
        }
        if s == 0 && !(f.is_intertwiner() && g.is_intertwiner()) {
            return Ok(Check::fail(
                "cyclicity t_{H⊗H}(f∘g) = t_H(g∘f)",
                "sampled maps are not H-linear",
            ));
        }
    }
    Ok(Check::pass("cyclicity t_{H⊗H}(f∘g) = t_H(g∘f)").with_value(format!("{samples} samples, seed {seed}")))
}

/// Symmetric forms `t` with `t(a)1 = (t⊗g)(qᴿΔ(a)pᴿ)` for all basis `a`,
/// solved directly as a linear system in the coefficients of `t`.
pub fn solve_reduction_forms(h: &QuasiHopfAlgebra) -> Result<Vec<LinearForm>> {
    let piv = h.require_pivotal()?;
    let (q_r, p_r, _, _) = h.qp_elements()?;
    let d = h.dim();
    let mut ech = RowEchelon::new(d);
    for i in 0..d {
        for j in i + 1..d {
            let row =
                crate::exactmath::sparse::vec_axpy(h.alg().product(i, j), &Scalar::from(-1), h.alg().product(j, i));
            if !row.is_empty() {
                ech.insert(&row);
            }
        }
    }
    let g_images: Vec<Element> = (0..d).map(|y| h.mul(piv.pivot(), &h.basis(y))).collect();
    let one = h.one();
    for a in 0..d {
        let t = h.mul_ts(&[&q_r, &h.delta(&h.basis(a)), &p_r])?;
        // row r: [a = k]·1_r − Σ_{x⊗y, x = k} c·(g e_y)_r
        let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); d];
        for (r, c) in &one {
            rows[*r].push((a, c.clone()));
        }
        for (legs, c) in t.iter() {
            for (r, v) in &g_images[legs[1]] {
                rows[*r].push((legs[0], -(c * v)));
            }
        }
        for row in rows {
            let row = normalize_vec(row);
            if !row.is_empty() {
                ech.insert(&row);
            }
        }
    }
    Ok(ech.nullspace().into_iter().map(|v| LinearForm::new(1, d, v)).collect())
}

/// Per block idempotent `e`, the ratio `t(r_{ea}) / tr_cat(r_{ea})` over the
/// basis `a`, required to be one scalar per block; the categorical trace is
/// the right partial trace over the whole of `H` with `A = B = 1`.
pub fn compare_with_categorical(tr: &ModifiedTrace, blocks: &[Element]) -> Result<Check> {
    let h = tr.algebra.as_ref();
    let reg = Representation::regular(&tr.algebra);
    let unit = Representation::trivial(&tr.algebra, 1);
    let one_reg = unit.tensor(&reg)?;
    let mut children = Vec::new();
    for (bi, e) in blocks.iter().enumerate() {
        let mut ratio: Option<Scalar> = None;
        let mut ok = true;
        for a in 0..h.dim() {
            let x = h.mul(e, &h.basis(a));
            let f = repcat::right_multiplication(&tr.algebra, &x);
            let f1 = ModuleMap::new(one_reg.clone(), one_reg.clone(), f.matrix().clone())?;
            let cat = repcat::partial_trace_right(&f1, &unit, &unit, &reg)?.matrix().get(0, 0);
            let modified = tr.on_regular(&f)?;
            match (&ratio, cat.is_zero()) {
                (_, true) => ok &= modified.is_zero(),
                (None, false) => ratio = Some(modified.checked_div(&cat)?),
                (Some(r), false) => ok &= modified == r * &cat,
            }
        }
        let value = ratio.as_ref().map_or("none".to_string(), Scalar::to_string);
        children.push(Check::from_bool(format!("block {bi}"), ok && ratio.is_some()).with_value(value));
    }
    Ok(Check::group(
        "modified trace proportional to categorical trace per block",
        children,
    ))
}

/// `t(r_x)` for named elements, as report entries.
pub fn trace_values(tr: &ModifiedTrace, named: &[(String, Element)]) -> Result<Vec<(String, Scalar)>> {
    named
        .iter()
        .map(|(name, x)| {
            let f = repcat::right_multiplication(&tr.algebra, x);
            Ok((name.clone(), tr.on_regular(&f)?))
        })
        .collect()
}
