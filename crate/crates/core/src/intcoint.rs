//! Integrals, the modulus, cointegrals and symmetrised cointegrals.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algcore::{apply_form, Element, LinearForm, TensorElement};
use crate::error::{Error, Result};
use crate::exactmath::sparse::{normalize_vec, vec_axpy};
use crate::exactmath::{RowEchelon, Scalar, SparseMatrix};
use crate::quasihopf::{QuasiHopfAlgebra, UvElements};
use crate::report::Check;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            _ => Err(Error::Semantic(format!("unknown side `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralSpace {
    pub side: Side,
    pub basis: Vec<Element>,
}

impl IntegralSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Whether both spaces span the same subspace.
    pub fn same_span(&self, other: &IntegralSpace, dim: usize) -> bool {
        let mut ech = RowEchelon::new(dim);
        for b in &self.basis {
            ech.insert(b);
        }
        let r = ech.rank();
        other.basis.len() == r && other.basis.iter().all(|b| ech.contains(b))
    }
}

/// Left integrals `hΛ = ε(h)Λ`, right integrals `Λh = ε(h)Λ`.
pub fn integrals(h: &QuasiHopfAlgebra, side: Side) -> Result<IntegralSpace> {
    let d = h.dim();
    let mut ech = RowEchelon::new(d);
    for x in h.multiplicative_test_elements() {
        let m = match side {
            Side::Left => h.alg().left_mult(&x),
            Side::Right => h.alg().right_mult(&x),
        };
        let m = m.sub(&SparseMatrix::scalar(d, &h.eps(&x)))?;
        for row in m.row_vecs() {
            ech.insert(row);
            if ech.is_full() {
                return Err(Error::DimensionZero(format!("{side} integrals")));
            }
        }
    }
    let basis = ech.nullspace();
    if basis.is_empty() {
        return Err(Error::DimensionZero(format!("{side} integrals")));
    }
    Ok(IntegralSpace { side, basis })
}

/// The modulus `γ` with `Λh = γ(h)Λ`, and its convolution inverse `γ∘S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Modulus {
    pub gamma: LinearForm,
    pub gamma_inv: LinearForm,
}

impl Modulus {
    pub fn is_counit(&self, h: &QuasiHopfAlgebra) -> bool {
        &self.gamma == h.counit()
    }
}

/// Reads `γ` off a left integral and checks that it is a character.
pub fn modulus(h: &QuasiHopfAlgebra, left: &IntegralSpace) -> Result<Modulus> {
    let d = h.dim();
    let lam = match (left.side, left.basis.as_slice()) {
        (Side::Left, [lam]) => lam,
        _ => {
            return Err(Error::InconsistentModulus(format!(
                "need a one-dimensional left integral space, got {} {} integrals",
                left.dim(),
                left.side
            )))
        }
    };
    let (p, lp) = lam[0].clone();
    let lp_inv = lp.inv()?;
    let mut values = Vec::with_capacity(d);
    for i in 0..d {
        let prod = h.mul(lam, &h.basis(i));
        let c = &crate::exactmath::sparse::vec_get(&prod, p) * &lp_inv;
        let expected = normalize_vec(lam.iter().map(|(k, v)| (*k, v * &c)).collect());
        if prod != expected {
            return Err(Error::InconsistentModulus(format!(
                "Λ·{} is not a multiple of Λ",
                h.alg().label(i)
            )));
        }
        values.push(c);
    }
    let gamma = LinearForm::from_values(d, &values);
    if !gamma.eval_element(&h.one()).is_one() {
        return Err(Error::InconsistentModulus("γ(1) ≠ 1".into()));
    }
    for i in 0..d {
        for j in 0..d {
            let lhs = gamma.eval_element(h.alg().product(i, j));
            if lhs != &values[i] * &values[j] {
                return Err(Error::InconsistentModulus(format!(
                    "γ not multiplicative on ({}, {})",
                    h.alg().label(i),
                    h.alg().label(j)
                )));
            }
        }
    }
    let gamma_inv = gamma.compose(h.antipode())?;
    Ok(Modulus { gamma, gamma_inv })
}

/// Left and right integrals agree and the modulus is the counit.
pub fn is_unimodular(h: &QuasiHopfAlgebra) -> Result<bool> {
    let left = integrals(h, Side::Left)?;
    Ok(modulus(h, &left)?.is_counit(h))
}

/// How a cointegral was scaled: the coefficient at `index` (its first
/// nonzero one) was set to `value`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalization {
    LeadingOne { index: usize },
    MatchedReference { index: usize, value: Scalar },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CointegralResult {
    pub side: Side,
    pub lambda: LinearForm,
    pub symmetrised: LinearForm,
    pub gram_rank: usize,
    pub normalization: Normalization,
}

/// Solution space of the left cointegral equation
/// `(id⊗λ)(VΔ(h)U) = γ(Φ₁)λ(hS(Φ₂))Φ₃`, imposed for every basis `h`.
fn left_cointegral_space(h: &QuasiHopfAlgebra, gamma: &LinearForm) -> Result<Vec<LinearForm>> {
    let d = h.dim();
    let uv = h.derive_uvu(gamma)?;
    // (γ⊗id⊗id)(Φ) = Σ c · e_j ⊗ e_l
    let phi_gamma = apply_form(gamma, h.phi(), &[0])?;
    let s_images: Vec<Element> = (0..d).map(|j| h.s(&h.basis(j))).collect();
    let mut ech = RowEchelon::new(d);
    for x in 0..d {
        let ex = h.basis(x);
        let t = h.mul_ts(&[&uv.v_tensor, &h.delta(&ex), &uv.u_tensor])?;
        let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); d];
        for (legs, c) in t.iter() {
            rows[legs[0]].push((legs[1], c.clone()));
        }
        for (legs, c) in phi_gamma.iter() {
            let (j, l) = (legs[0], legs[1]);
            for (k, v) in h.mul(&ex, &s_images[j]) {
                rows[l].push((k, -(c * &v)));
            }
        }
        for row in rows {
            let row = normalize_vec(row);
            if !row.is_empty() {
                ech.insert(&row);
            }
        }
        if ech.is_full() {
            break;
        }
    }
    Ok(ech.nullspace().into_iter().map(|v| LinearForm::new(1, d, v)).collect())
}

/// Basis of the space of `side` cointegrals. Right cointegrals are the left
/// cointegrals of the coopposite algebra.
pub fn cointegral_space(h: &QuasiHopfAlgebra, side: Side, gamma: &Modulus) -> Result<Vec<LinearForm>> {
    match side {
        Side::Left => left_cointegral_space(h, &gamma.gamma),
        Side::Right => left_cointegral_space(&h.coopposite()?, &gamma.gamma),
    }
}

/// Scales `form` so that its first nonzero coefficient equals the matching
/// coefficient of `reference`, or one.
pub fn normalize(form: &LinearForm, reference: Option<&LinearForm>) -> Result<(LinearForm, Normalization)> {
    let (index, lead) = form
        .coeffs()
        .first()
        .cloned()
        .ok_or_else(|| Error::VerificationFailed("cannot normalize the zero form".into()))?;
    let target = reference.map(|r| r.coeff(index)).filter(|v| !v.is_zero());
    let scale = match &target {
        Some(v) => v.checked_div(&lead)?,
        None => lead.inv()?,
    };
    let norm = match target {
        Some(value) => Normalization::MatchedReference { index, value },
        None => Normalization::LeadingOne { index },
    };
    Ok((form.scale(&scale), norm))
}

/// The `side` cointegral, normalized against `reference`, with its
/// symmetrisation.
pub fn cointegrals(
    h: &QuasiHopfAlgebra,
    side: Side,
    gamma: &Modulus,
    reference: Option<&LinearForm>,
) -> Result<CointegralResult> {
    h.require_pivotal()?;
    let space = cointegral_space(h, side, gamma)?;
    if space.len() != 1 {
        return Err(Error::WrongSolutionDim {
            expected: 1,
            found: space.len(),
        });
    }
    let (lambda, normalization) = normalize(&space[0], reference)?;
    let uv = h.derive_uvu(&gamma.gamma)?;
    let symmetrised = symmetrise(h, side, &lambda, gamma, &uv)?;
    Ok(CointegralResult {
        side,
        gram_rank: gram_rank(h, &lambda),
        lambda,
        symmetrised,
        normalization,
    })
}

/// `λ̂ʳ = λ↼ug` or `λ̂ˡ = λ↼u^cop g⁻¹`, verified against its characterisation.
pub fn symmetrise(
    h: &QuasiHopfAlgebra,
    side: Side,
    lambda: &LinearForm,
    gamma: &Modulus,
    uv: &UvElements,
) -> Result<LinearForm> {
    let piv = h.require_pivotal()?;
    let x = match side {
        Side::Right => h.mul(&uv.u, piv.pivot()),
        Side::Left => h.mul(&uv.u_cop, piv.pivot_inv()),
    };
    let form = left_translate(h, lambda, &x);
    verify_symmetrised(h, side, &form, gamma)?;
    Ok(form)
}

/// `f↼x`, the form `a ↦ f(xa)`.
pub fn left_translate(h: &QuasiHopfAlgebra, f: &LinearForm, x: &Element) -> LinearForm {
    let d = h.dim();
    let values: Vec<Scalar> = (0..d).map(|j| f.eval_element(&h.mul(x, &h.basis(j)))).collect();
    LinearForm::from_values(d, &values)
}

/// Checks, for every basis `h`,
/// right: `(λ̂⊗id)(qᴿΔ(h)pᴿ) = γ(Φ₁)λ̂(Φ₂h)g⁻¹S(Φ₃)`,
/// left: `(id⊗λ̂)(qᴸΔ(h)pᴸ) = γ(Ψ₃)λ̂(Ψ₂h)gS⁻¹(Ψ₁)`.
pub fn verify_symmetrised(h: &QuasiHopfAlgebra, side: Side, form: &LinearForm, gamma: &Modulus) -> Result<()> {
    let piv = h.require_pivotal()?;
    let (q_r, p_r, q_l, p_l) = h.qp_elements()?;
    let d = h.dim();
    // the coassociator with γ applied to its outer leg, as (middle, remaining)
    type ElementMap<'a> = Box<dyn Fn(&Element) -> Element + 'a>;
    let (outer, remaining_map): (TensorElement, ElementMap) = match side {
        Side::Right => (
            apply_form(&gamma.gamma, h.phi(), &[0])?,
            Box::new(|e: &Element| h.mul(piv.pivot_inv(), &h.s(e))),
        ),
        Side::Left => (
            apply_form(&gamma.gamma, h.phi_inv(), &[2])?,
            Box::new(|e: &Element| h.mul(piv.pivot(), &h.s_inv(e))),
        ),
    };
    for x in 0..d {
        let ex = h.basis(x);
        let (lhs, rhs) = match side {
            Side::Right => {
                let t = h.mul_ts(&[&q_r, &h.delta(&ex), &p_r])?;
                let lhs = apply_form(form, &t, &[0])?.into_element();
                let mut rhs = Vec::new();
                for (legs, c) in outer.iter() {
                    let v = form.eval_element(&h.mul(&h.basis(legs[0]), &ex));
                    if !v.is_zero() {
                        rhs = vec_axpy(&rhs, &(c * &v), &remaining_map(&h.basis(legs[1])));
                    }
                }
                (lhs, rhs)
            }
            Side::Left => {
                let t = h.mul_ts(&[&q_l, &h.delta(&ex), &p_l])?;
                let lhs = apply_form(form, &t, &[1])?.into_element();
                let mut rhs = Vec::new();
                // outer legs are (Ψ₁, Ψ₂)
                for (legs, c) in outer.iter() {
                    let v = form.eval_element(&h.mul(&h.basis(legs[1]), &ex));
                    if !v.is_zero() {
                        rhs = vec_axpy(&rhs, &(c * &v), &remaining_map(&h.basis(legs[0])));
                    }
                }
                (lhs, rhs)
            }
        };
        if lhs != rhs {
            return Err(Error::VerificationFailed(format!(
                "{side} symmetrised cointegral characterisation fails at h = {}",
                h.alg().label(x)
            )));
        }
    }
    Ok(())
}

/// Unimodular form of the right characterisation:
/// `λ̂(h)·1 = Σ λ̂(x)·g y` over the terms `x⊗y` of `qᴿΔ(h)pᴿ`.
pub fn verify_unimodular_reduction(h: &QuasiHopfAlgebra, form: &LinearForm) -> Result<()> {
    let piv = h.require_pivotal()?;
    let (q_r, p_r, _, _) = h.qp_elements()?;
    for x in 0..h.dim() {
        let ex = h.basis(x);
        let t = h.mul_ts(&[&q_r, &h.delta(&ex), &p_r])?;
        let rest = apply_form(form, &t, &[0])?.into_element();
        let lhs = h.mul(piv.pivot(), &rest);
        let rhs = crate::exactmath::sparse::vec_scale(&h.one(), &form.eval_element(&ex));
        if lhs != rhs {
            return Err(Error::VerificationFailed(format!(
                "reduction identity fails at h = {}",
                h.alg().label(x)
            )));
        }
    }
    Ok(())
}

/// Left cointegral `(λʳ↼u)∘S` from a right cointegral.
pub fn left_from_right(h: &QuasiHopfAlgebra, right: &LinearForm, uv: &UvElements) -> Result<LinearForm> {
    left_translate(h, right, &uv.u).compose(h.antipode())
}

/// Right cointegral `(λˡ↼u^cop)∘S⁻¹` from a left cointegral.
pub fn right_from_left(h: &QuasiHopfAlgebra, left: &LinearForm, uv: &UvElements) -> Result<LinearForm> {
    left_translate(h, left, &uv.u_cop).compose(h.antipode_inv())
}

/// `c` with `a = c·b`, if it exists.
pub fn proportionality(a: &LinearForm, b: &LinearForm) -> Option<Scalar> {
    let (k, bk) = b.coeffs().first()?;
    let c = a.coeff(*k).checked_div(bk).ok()?;
    (b.scale(&c) == *a).then_some(c)
}

/// Matrix `form(e_i e_j)`.
pub fn gram_matrix(h: &QuasiHopfAlgebra, form: &LinearForm) -> SparseMatrix {
    let d = h.dim();
    let rows = (0..d)
        .map(|i| normalize_vec((0..d).map(|j| (j, form.eval_element(h.alg().product(i, j)))).collect()))
        .collect();
    SparseMatrix::from_rows(d, rows)
}

pub fn gram_rank(h: &QuasiHopfAlgebra, form: &LinearForm) -> usize {
    gram_matrix(h, form).rank()
}

/// Which extra identities [`check_form_properties`] tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormKind {
    Plain,
    LeftCointegral,
    RightCointegral,
    LeftSymmetrised,
    RightSymmetrised,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub gram_rank: usize,
    pub dim: usize,
    /// Basis pairs `(i, j)`, `i < j`, with `form(e_i e_j) ≠ form(e_j e_i)`.
    pub symmetry_defect: Vec<(usize, usize)>,
    /// `λ̂ˡ(ab) = λ̂ˡ((γ⇀b)a)` resp. `λ̂ʳ(ab) = λ̂ʳ((b↼γ)a)`.
    pub twisted_symmetry: Option<bool>,
    /// `λˡ(S⁻¹(a)b) = λˡ(bS(a↼γ))` resp. `λʳ(S(a)b) = λʳ(bS⁻¹(γ⇀a))`.
    pub nakayama: Option<bool>,
}

impl PropertyReport {
    pub fn symmetric(&self) -> bool {
        self.symmetry_defect.is_empty()
    }

    pub fn non_degenerate(&self) -> bool {
        self.gram_rank == self.dim
    }

    pub fn to_check(&self, name: &str) -> Check {
        let mut children = vec![
            Check::from_bool("non-degenerate", self.non_degenerate())
                .with_value(format!("gram rank {}/{}", self.gram_rank, self.dim)),
            Check::new("symmetric", crate::report::Status::Pass)
                .with_value(format!("{} asymmetric pairs", self.symmetry_defect.len())),
        ];
        if let Some(ok) = self.twisted_symmetry {
            children.push(Check::from_bool("twisted symmetry", ok));
        }
        if let Some(ok) = self.nakayama {
            children.push(Check::from_bool("Nakayama relation", ok));
        }
        Check::group(name, children)
    }
}

/// Exhaustive basis-pair checks of the properties of `form`.
pub fn check_form_properties(
    h: &QuasiHopfAlgebra,
    form: &LinearForm,
    gamma: &Modulus,
    kind: FormKind,
) -> Result<PropertyReport> {
    let d = h.dim();
    let val = |i: usize, j: usize| form.eval_element(h.alg().product(i, j));
    let mut symmetry_defect = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            if val(i, j) != val(j, i) {
                symmetry_defect.push((i, j));
            }
        }
    }
    // a↼γ = γ(a₁)a₂ and γ⇀a = a₁γ(a₂) on basis elements
    let hook_right: Vec<Element> = (0..d)
        .map(|a| Ok(apply_form(&gamma.gamma, &h.delta(&h.basis(a)), &[0])?.into_element()))
        .collect::<Result<_>>()?;
    let hook_left: Vec<Element> = (0..d)
        .map(|a| Ok(apply_form(&gamma.gamma, &h.delta(&h.basis(a)), &[1])?.into_element()))
        .collect::<Result<_>>()?;
    let all_pairs = |test: &dyn Fn(usize, usize) -> bool| (0..d).all(|a| (0..d).all(|b| test(a, b)));
    let twisted_symmetry = match kind {
        FormKind::LeftSymmetrised => Some(all_pairs(&|a, b| {
            val(a, b) == form.eval_element(&h.mul(&hook_left[b], &h.basis(a)))
        })),
        FormKind::RightSymmetrised => Some(all_pairs(&|a, b| {
            val(a, b) == form.eval_element(&h.mul(&hook_right[b], &h.basis(a)))
        })),
        _ => None,
    };
    let nakayama = match kind {
        FormKind::LeftCointegral => {
            let lhs: Vec<Element> = (0..d).map(|a| h.s_inv(&h.basis(a))).collect();
            let rhs: Vec<Element> = hook_right.iter().map(|e| h.s(e)).collect();
            Some(all_pairs(&|a, b| {
                form.eval_element(&h.mul(&lhs[a], &h.basis(b))) == form.eval_element(&h.mul(&h.basis(b), &rhs[a]))
            }))
        }
        FormKind::RightCointegral => {
            let lhs: Vec<Element> = (0..d).map(|a| h.s(&h.basis(a))).collect();
            let rhs: Vec<Element> = hook_left.iter().map(|e| h.s_inv(e)).collect();
            Some(all_pairs(&|a, b| {
                form.eval_element(&h.mul(&lhs[a], &h.basis(b))) == form.eval_element(&h.mul(&h.basis(b), &rhs[a]))
            }))
        }
        _ => None,
    };
    Ok(PropertyReport {
        gram_rank: gram_rank(h, form),
        dim: d,
        symmetry_defect,
        twisted_symmetry,
        nakayama,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{kz2, sweedler};

    #[test]
    fn group_algebra_integral_and_cointegral() {
        let h = kz2();
        let left = integrals(&h, Side::Left).unwrap();
        let sum = vec![(0, Scalar::one()), (1, Scalar::one())];
        assert_eq!(left.basis, vec![sum]);
        let gamma = modulus(&h, &left).unwrap();
        assert!(gamma.is_counit(&h));
        let c = cointegrals(&h, Side::Left, &gamma, None).unwrap();
        assert_eq!(c.lambda, LinearForm::dual_basis(2, 0));
        assert_eq!(c.symmetrised, c.lambda);
        assert_eq!(c.gram_rank, 2);
    }

    #[test]
    fn sweedler_is_not_unimodular() {
        let h = sweedler();
        let left = integrals(&h, Side::Left).unwrap();
        let gamma = modulus(&h, &left).unwrap();
        assert!(!gamma.is_counit(&h));
        assert!(!is_unimodular(&h).unwrap());
        let right = integrals(&h, Side::Right).unwrap();
        assert!(!left.same_span(&right, 4));
    }

    #[test]
    fn sweedler_cointegral_properties() {
        let h = sweedler();
        let gamma = modulus(&h, &integrals(&h, Side::Left).unwrap()).unwrap();
        for side in [Side::Left, Side::Right] {
            let c = cointegrals(&h, side, &gamma, None).unwrap();
            assert_eq!(c.gram_rank, 4);
            let kind = match side {
                Side::Left => FormKind::LeftCointegral,
                Side::Right => FormKind::RightCointegral,
            };
            let r = check_form_properties(&h, &c.lambda, &gamma, kind).unwrap();
            assert_eq!(r.nakayama, Some(true), "{side}");
            let kind = match side {
                Side::Left => FormKind::LeftSymmetrised,
                Side::Right => FormKind::RightSymmetrised,
            };
            let r = check_form_properties(&h, &c.symmetrised, &gamma, kind).unwrap();
            assert_eq!(r.twisted_symmetry, Some(true), "{side}");
            assert!(!r.symmetric());
        }
    }

    #[test]
    fn left_and_right_cointegrals_convert() {
        let h = sweedler();
        let gamma = modulus(&h, &integrals(&h, Side::Left).unwrap()).unwrap();
        let uv = h.derive_uvu(&gamma.gamma).unwrap();
        let left = cointegrals(&h, Side::Left, &gamma, None).unwrap().lambda;
        let right = cointegrals(&h, Side::Right, &gamma, None).unwrap().lambda;
        assert!(proportionality(&left_from_right(&h, &right, &uv).unwrap(), &left).is_some());
        assert!(proportionality(&right_from_left(&h, &left, &uv).unwrap(), &right).is_some());
    }

    #[test]
    fn symplectic_fermion_cointegrals_match_closed_form() {
        let q = crate::sympferm::build(1, &Scalar::zeta(8).pow(7)).unwrap();
        let h = &q.hopf;
        let left = integrals(h, Side::Left).unwrap();
        assert_eq!(left.basis.len(), 1);
        assert!(proportionality(
            &LinearForm::new(1, 16, left.basis[0].clone()),
            &LinearForm::new(1, 16, q.integral.clone())
        )
        .is_some());
        let gamma = modulus(h, &left).unwrap();
        assert!(gamma.is_counit(h));
        let right = cointegrals(h, Side::Right, &gamma, Some(&q.cointegral)).unwrap();
        assert_eq!(right.lambda, q.cointegral);
        assert!(proportionality(&right.symmetrised, &q.symmetrised).is_some());
        let left_c = cointegrals(h, Side::Left, &gamma, None).unwrap();
        assert!(proportionality(&left_c.symmetrised, &q.symmetrised).is_some());
        verify_unimodular_reduction(h, &q.symmetrised).unwrap();
        assert_eq!(gram_rank(h, &q.symmetrised), 16);
    }

    #[test]
    fn coopposite_uv_elements_agree() {
        let q = crate::sympferm::build(1, &Scalar::zeta(8).pow(7)).unwrap();
        let h = &q.hopf;
        let eps = h.counit().clone();
        let uv = h.derive_uvu(&eps).unwrap();
        let uvc = h.coopposite().unwrap().derive_uvu(&eps).unwrap();
        assert_eq!(uvc.u_tensor, uv.u_cop_tensor);
        assert_eq!(uvc.v_tensor, uv.v_cop_tensor);
    }
}
