//! Quasi-Hopf structure on top of [`AlgebraData`]: axiom checks, the
//! canonical elements `q^R, p^R, q^L, p^L, U, V, u`, and the opposite and
//! coopposite algebras.
//!
//! Conventions: quasi-coassociativity reads
//! `(Δ⊗id)Δ(h) · Φ = Φ · (id⊗Δ)Δ(h)`, so the associator of modules
//! `U⊗(V⊗W) → (U⊗V)⊗W` acts by `Φ` and its inverse by `Ψ = Φ^{-1}`.

use crate::algcore::{apply_form, AlgebraData, Element, LinearForm, LinearOperator, Permutation, TensorElement};
use crate::error::{Error, Result};
use crate::exactmath::sparse::vec_axpy;
use crate::exactmath::Scalar;
use crate::report::Check;

/// Above this dimension, axioms that are compatible with products are only
/// checked against algebra generators (when the data declares some).
pub const EXHAUSTIVE_LIMIT: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PivotalData {
    pivot: Element,
    pivot_inv: Element,
    twist: TensorElement,
    twist_inv: TensorElement,
}

impl PivotalData {
    /// Pivot `g` and Drinfeld twist `f` with its inverse; `g^{-1}` is solved for.
    pub fn new(alg: &AlgebraData, pivot: Element, twist: TensorElement, twist_inv: TensorElement) -> Result<Self> {
        let pivot_inv = alg
            .inverse(&pivot)
            .ok_or_else(|| Error::Semantic("pivot is not invertible".into()))?;
        if twist.order() != 2 || twist_inv.order() != 2 {
            return Err(Error::Semantic("Drinfeld twist must have two legs".into()));
        }
        Ok(PivotalData {
            pivot,
            pivot_inv,
            twist,
            twist_inv,
        })
    }

    pub fn pivot(&self) -> &Element {
        &self.pivot
    }

    pub fn pivot_inv(&self) -> &Element {
        &self.pivot_inv
    }

    pub fn twist(&self) -> &TensorElement {
        &self.twist
    }

    pub fn twist_inv(&self) -> &TensorElement {
        &self.twist_inv
    }
}

/// Raw ingredients of a quasi-Hopf algebra.
#[derive(Clone, Debug)]
pub struct QuasiHopfParts {
    pub alg: AlgebraData,
    pub conductor: u32,
    pub coproduct: Vec<TensorElement>,
    pub counit: Vec<Scalar>,
    pub antipode: Vec<Element>,
    pub antipode_inv: Vec<Element>,
    pub phi: TensorElement,
    pub phi_inv: TensorElement,
    pub alpha: Element,
    pub beta: Element,
    pub pivotal: Option<PivotalData>,
    pub generators: Vec<(String, Element)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiHopfAlgebra {
    alg: AlgebraData,
    conductor: u32,
    coproduct: LinearOperator,
    counit: LinearForm,
    antipode: LinearOperator,
    antipode_inv: LinearOperator,
    phi: TensorElement,
    phi_inv: TensorElement,
    alpha: Element,
    beta: Element,
    pivotal: Option<PivotalData>,
    generators: Vec<(String, Element)>,
}

/// `q^R, p^R, q^L, p^L` together with the identities they were checked against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalElements {
    pub q_r: TensorElement,
    pub p_r: TensorElement,
    pub q_l: TensorElement,
    pub p_l: TensorElement,
    pub checks: Vec<Check>,
}

/// The elements `U, V` entering the cointegral equation, their coopposite
/// versions, and `u = (γ⊗S²)(V)`, `u^cop = (γ⊗S^{-2})(V^cop)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UvElements {
    pub u_tensor: TensorElement,
    pub v_tensor: TensorElement,
    pub u_cop_tensor: TensorElement,
    pub v_cop_tensor: TensorElement,
    pub u: Element,
    pub u_cop: Element,
}

/// Individually selectable axioms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Associativity,
    Unit,
    CoproductMultiplicative,
    CoproductUnital,
    CounitMultiplicative,
    CounitLaws,
    QuasiCoassociativity,
    CoassociatorInverse,
    Pentagon,
    CoassociatorCounit,
    AntipodeInverse,
    AntipodeAntiMultiplicative,
    AntipodeAlpha,
    AntipodeBeta,
    ZigZagPhi,
    ZigZagPsi,
    CounitAlphaBeta,
    TwistInverse,
    TwistCounit,
    TwistAntipode,
    PivotCoproduct,
    PivotConjugation,
    PivotCounit,
    PivotAntipode,
}

impl Axiom {
    pub const ALL: [Axiom; 24] = [
        Axiom::Associativity,
        Axiom::Unit,
        Axiom::CoproductMultiplicative,
        Axiom::CoproductUnital,
        Axiom::CounitMultiplicative,
        Axiom::CounitLaws,
        Axiom::QuasiCoassociativity,
        Axiom::CoassociatorInverse,
        Axiom::Pentagon,
        Axiom::CoassociatorCounit,
        Axiom::AntipodeInverse,
        Axiom::AntipodeAntiMultiplicative,
        Axiom::AntipodeAlpha,
        Axiom::AntipodeBeta,
        Axiom::ZigZagPhi,
        Axiom::ZigZagPsi,
        Axiom::CounitAlphaBeta,
        Axiom::TwistInverse,
        Axiom::TwistCounit,
        Axiom::TwistAntipode,
        Axiom::PivotCoproduct,
        Axiom::PivotConjugation,
        Axiom::PivotCounit,
        Axiom::PivotAntipode,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Associativity => "associativity",
            Axiom::Unit => "unit",
            Axiom::CoproductMultiplicative => "coproduct multiplicative",
            Axiom::CoproductUnital => "coproduct unital",
            Axiom::CounitMultiplicative => "counit multiplicative",
            Axiom::CounitLaws => "counit laws",
            Axiom::QuasiCoassociativity => "quasi-coassociativity",
            Axiom::CoassociatorInverse => "coassociator inverse",
            Axiom::Pentagon => "pentagon",
            Axiom::CoassociatorCounit => "coassociator counit",
            Axiom::AntipodeInverse => "antipode inverse",
            Axiom::AntipodeAntiMultiplicative => "antipode anti-multiplicative",
            Axiom::AntipodeAlpha => "antipode alpha",
            Axiom::AntipodeBeta => "antipode beta",
            Axiom::ZigZagPhi => "zig-zag phi",
            Axiom::ZigZagPsi => "zig-zag psi",
            Axiom::CounitAlphaBeta => "counit of alpha and beta",
            Axiom::TwistInverse => "twist inverse",
            Axiom::TwistCounit => "twist counit",
            Axiom::TwistAntipode => "twist antipode",
            Axiom::PivotCoproduct => "pivot coproduct",
            Axiom::PivotConjugation => "pivot conjugation",
            Axiom::PivotCounit => "pivot counit",
            Axiom::PivotAntipode => "pivot antipode",
        }
    }

    pub fn needs_pivotal(self) -> bool {
        matches!(
            self,
            Axiom::TwistInverse
                | Axiom::TwistCounit
                | Axiom::TwistAntipode
                | Axiom::PivotCoproduct
                | Axiom::PivotConjugation
                | Axiom::PivotCounit
                | Axiom::PivotAntipode
        )
    }
}

/// Outcome of [`QuasiHopfAlgebra::check_axioms`].
#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub checks: Vec<(Axiom, Check)>,
    /// Whether product-compatible axioms were checked on generators only.
    pub reduced: bool,
    /// Extra bookkeeping checks (generator spanning) when `reduced`.
    pub preamble: Vec<Check>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.preamble.iter().all(Check::passed) && self.checks.iter().all(|(_, c)| c.passed())
    }

    pub fn failures(&self) -> Vec<Axiom> {
        self.checks
            .iter()
            .filter(|(_, c)| !c.passed())
            .map(|(a, _)| *a)
            .collect()
    }

    pub fn get(&self, axiom: Axiom) -> Option<&Check> {
        self.checks.iter().find(|(a, _)| *a == axiom).map(|(_, c)| c)
    }

    pub fn to_check(&self) -> Check {
        let mut children = self.preamble.clone();
        children.extend(self.checks.iter().map(|(_, c)| c.clone()));
        Check::group("axioms", children)
    }
}

/// Elements against which an axiom is tested, with display names.
struct TestSet {
    items: Vec<(String, Element)>,
}

impl QuasiHopfAlgebra {
    pub fn new(parts: QuasiHopfParts) -> Result<Self> {
        let d = parts.alg.dim();
        let shape = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::Semantic(format!("{what} has the wrong shape")))
            }
        };
        shape(parts.coproduct.len() == d, "coproduct")?;
        shape(
            parts.coproduct.iter().all(|t| t.order() == 2 && t.dim() == d),
            "coproduct",
        )?;
        shape(parts.counit.len() == d, "counit")?;
        shape(parts.antipode.len() == d, "antipode")?;
        shape(parts.antipode_inv.len() == d, "inverse antipode")?;
        shape(parts.phi.order() == 3 && parts.phi.dim() == d, "coassociator")?;
        shape(
            parts.phi_inv.order() == 3 && parts.phi_inv.dim() == d,
            "inverse coassociator",
        )?;
        let coproduct = LinearOperator::new(
            1,
            2,
            d,
            parts.coproduct.into_iter().map(TensorElement::into_terms).collect(),
        )?;
        Ok(QuasiHopfAlgebra {
            conductor: parts.conductor,
            coproduct,
            counit: LinearForm::from_values(d, &parts.counit),
            antipode: LinearOperator::new(1, 1, d, parts.antipode)?,
            antipode_inv: LinearOperator::new(1, 1, d, parts.antipode_inv)?,
            phi: parts.phi,
            phi_inv: parts.phi_inv,
            alpha: parts.alpha,
            beta: parts.beta,
            pivotal: parts.pivotal,
            generators: parts.generators,
            alg: parts.alg,
        })
    }

    /// Decomposes into parts, e.g. to modify data for mutation tests.
    pub fn into_parts(self) -> QuasiHopfParts {
        let d = self.dim();
        QuasiHopfParts {
            conductor: self.conductor,
            coproduct: (0..d)
                .map(|i| TensorElement::from_keys(2, d, self.coproduct.image(i).clone()))
                .collect(),
            counit: (0..d).map(|i| self.counit.coeff(i)).collect(),
            antipode: self.antipode.images().to_vec(),
            antipode_inv: self.antipode_inv.images().to_vec(),
            phi: self.phi,
            phi_inv: self.phi_inv,
            alpha: self.alpha,
            beta: self.beta,
            pivotal: self.pivotal,
            generators: self.generators,
            alg: self.alg,
        }
    }

    pub fn alg(&self) -> &AlgebraData {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coproduct(&self) -> &LinearOperator {
        &self.coproduct
    }

    pub fn counit(&self) -> &LinearForm {
        &self.counit
    }

    pub fn antipode(&self) -> &LinearOperator {
        &self.antipode
    }

    pub fn antipode_inv(&self) -> &LinearOperator {
        &self.antipode_inv
    }

    pub fn phi(&self) -> &TensorElement {
        &self.phi
    }

    pub fn phi_inv(&self) -> &TensorElement {
        &self.phi_inv
    }

    pub fn alpha(&self) -> &Element {
        &self.alpha
    }

    pub fn beta(&self) -> &Element {
        &self.beta
    }

    pub fn pivotal(&self) -> Option<&PivotalData> {
        self.pivotal.as_ref()
    }

    pub fn require_pivotal(&self) -> Result<&PivotalData> {
        self.pivotal.as_ref().ok_or(Error::MissingPivotalData)
    }

    pub fn generators(&self) -> &[(String, Element)] {
        &self.generators
    }

    pub fn one(&self) -> Element {
        self.alg.unit().clone()
    }

    pub fn basis(&self, i: usize) -> Element {
        self.alg.basis(i)
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        self.alg.mul(a, b)
    }

    pub fn mul_all(&self, factors: &[&Element]) -> Element {
        self.alg.mul_all(factors)
    }

    pub fn mul_t(&self, x: &TensorElement, y: &TensorElement) -> Result<TensorElement> {
        self.alg.mul_tensor(x, y)
    }

    pub fn mul_ts(&self, factors: &[&TensorElement]) -> Result<TensorElement> {
        self.alg.mul_tensors(factors)
    }

    pub fn elem(&self, e: Element) -> TensorElement {
        TensorElement::from_element(self.dim(), e)
    }

    /// `a ⊗ b`.
    pub fn pure2(&self, a: &Element, b: &Element) -> TensorElement {
        TensorElement::pure(self.dim(), &[a, b])
    }

    pub fn unit_t(&self, order: usize) -> TensorElement {
        TensorElement::unit(&self.alg, order)
    }

    pub fn delta(&self, x: &Element) -> TensorElement {
        TensorElement::from_keys(2, self.dim(), self.coproduct.apply_element(x))
    }

    /// Applies `Δ` to leg `leg`.
    pub fn delta_leg(&self, x: &TensorElement, leg: usize) -> Result<TensorElement> {
        x.map_leg(leg, &self.coproduct)
    }

    pub fn eps(&self, x: &Element) -> Scalar {
        self.counit.eval_element(x)
    }

    /// Applies `ε` to leg `leg`.
    pub fn eps_leg(&self, x: &TensorElement, leg: usize) -> Result<TensorElement> {
        apply_form(&self.counit, x, &[leg])
    }

    pub fn s(&self, x: &Element) -> Element {
        self.antipode.apply_element(x)
    }

    pub fn s_inv(&self, x: &Element) -> Element {
        self.antipode_inv.apply_element(x)
    }

    /// `S` on every leg.
    pub fn s_legs(&self, x: &TensorElement) -> Result<TensorElement> {
        let ops = vec![&self.antipode; x.order()];
        x.map_each_leg(&ops)
    }

    /// `S^{-1}` on every leg.
    pub fn s_inv_legs(&self, x: &TensorElement) -> Result<TensorElement> {
        let ops = vec![&self.antipode_inv; x.order()];
        x.map_each_leg(&ops)
    }

    /// Terms of `x` split into per-leg basis elements.
    pub fn legs_of<'a>(&'a self, x: &'a TensorElement) -> impl Iterator<Item = (Vec<Element>, &'a Scalar)> + 'a {
        x.iter()
            .map(move |(legs, c)| (legs.iter().map(|&i| self.basis(i)).collect(), c))
    }

    /// Sums `c · build(legs)` over the terms of `x`.
    pub fn sum_over(
        &self,
        x: &TensorElement,
        order: usize,
        mut build: impl FnMut(&[Element]) -> Result<TensorElement>,
    ) -> Result<TensorElement> {
        let mut acc = Vec::new();
        for (legs, c) in self.legs_of(x) {
            let t = build(&legs)?;
            acc.extend(t.terms().iter().map(|(k, v)| (*k, v * c)));
        }
        Ok(TensorElement::from_keys(order, self.dim(), acc))
    }

    pub fn fmt_element(&self, e: &Element) -> String {
        self.alg.fmt_element(e)
    }

    pub fn fmt_tensor(&self, t: &TensorElement) -> String {
        self.alg.fmt_tensor(t)
    }

    /// True when the structure tensors coincide; generator lists and the
    /// field tag are ignored.
    pub fn same_structure(&self, other: &QuasiHopfAlgebra) -> Vec<&'static str> {
        let mut diffs = Vec::new();
        if self.alg != other.alg {
            diffs.push("multiplication");
        }
        if self.coproduct != other.coproduct {
            diffs.push("coproduct");
        }
        if self.counit != other.counit {
            diffs.push("counit");
        }
        if self.antipode != other.antipode {
            diffs.push("antipode");
        }
        if self.antipode_inv != other.antipode_inv {
            diffs.push("antipode_inv");
        }
        if self.phi != other.phi {
            diffs.push("phi");
        }
        if self.phi_inv != other.phi_inv {
            diffs.push("phi_inv");
        }
        if self.alpha != other.alpha {
            diffs.push("alpha");
        }
        if self.beta != other.beta {
            diffs.push("beta");
        }
        if self.pivotal != other.pivotal {
            diffs.push("pivotal");
        }
        diffs
    }

    fn label(&self, i: usize) -> String {
        self.alg.label(i).to_string()
    }

    fn basis_set(&self) -> TestSet {
        TestSet {
            items: (0..self.dim()).map(|i| (self.label(i), self.basis(i))).collect(),
        }
    }

    /// Elements on which a condition closed under products and linear
    /// combinations needs checking: `1` and the generators when these span the
    /// algebra, every basis element otherwise.
    pub fn multiplicative_test_elements(&self) -> Vec<Element> {
        let gens: Vec<Element> = self.generators.iter().map(|(_, g)| g.clone()).collect();
        if !gens.is_empty() && self.alg.generated_dim(&gens) == self.dim() {
            let mut out = vec![self.one()];
            out.extend(gens);
            out
        } else {
            (0..self.dim()).map(|i| self.basis(i)).collect()
        }
    }

    /// Generators plus the unit when the reduced mode applies.
    fn reduced_set(&self) -> Option<(TestSet, Check)> {
        if self.dim() <= EXHAUSTIVE_LIMIT || self.generators.is_empty() {
            return None;
        }
        let gens: Vec<Element> = self.generators.iter().map(|(_, g)| g.clone()).collect();
        let span = self.alg.generated_dim(&gens);
        if span != self.dim() {
            return None;
        }
        let mut items = vec![("1".to_string(), self.one())];
        items.extend(self.generators.iter().cloned());
        let check = Check::pass("generators span the algebra").with_value(span.to_string());
        Some((TestSet { items }, check))
    }

    /// Checks every axiom in [`Axiom::ALL`].
    pub fn check_axioms(&self) -> AxiomReport {
        self.check_axioms_selected(&Axiom::ALL)
    }

    /// Checks the selected axioms; pivotal ones are skipped without pivotal data.
    pub fn check_axioms_selected(&self, selected: &[Axiom]) -> AxiomReport {
        let reduced = self.reduced_set();
        let mut preamble = Vec::new();
        let basis = self.basis_set();
        let gens = match reduced {
            Some((set, check)) => {
                preamble.push(check);
                Some(set)
            }
            None => None,
        };
        let tests = gens.as_ref().unwrap_or(&basis);
        let mut checks = Vec::new();
        for &axiom in selected {
            let name = axiom.name();
            let check = if axiom.needs_pivotal() && self.pivotal.is_none() {
                Check::skip(name, "no pivotal data")
            } else {
                match self.check_one(axiom, &basis, tests) {
                    Ok(None) => Check::pass(name),
                    Ok(Some((witness, value))) => Check::fail(name, witness).with_value(value),
                    Err(e) => Check::fail(name, e.to_string()),
                }
            };
            checks.push((axiom, check));
        }
        AxiomReport {
            checks,
            reduced: gens.is_some(),
            preamble,
        }
    }

    /// `Ok(Some((witness, discrepancy)))` on failure.
    fn check_one(&self, axiom: Axiom, basis: &TestSet, tests: &TestSet) -> Result<Option<(String, String)>> {
        let d = self.dim();
        let one = self.one();
        let minus = Scalar::from(-1);
        let diff_t = |a: &TensorElement, b: &TensorElement| -> Result<Option<String>> {
            let diff = a.sub(b)?;
            Ok((!diff.is_zero()).then(|| self.fmt_tensor(&diff)))
        };
        let diff_e = |a: &Element, b: &Element| -> Option<String> {
            let diff = vec_axpy(a, &minus, b);
            (!diff.is_empty()).then(|| self.fmt_element(&diff))
        };
        match axiom {
            Axiom::Associativity => {
                let right: Vec<Element> = tests.items.iter().map(|(_, e)| e.clone()).collect();
                Ok(self.alg.associativity_witness(Some(&right)).map(|(i, j, k, diff)| {
                    (
                        format!("({}·{})·{}", self.label(i), self.label(j), tests.items[k].0),
                        self.fmt_element(&diff),
                    )
                }))
            }
            Axiom::Unit => Ok(self
                .alg
                .unit_witness()
                .map(|i| (self.label(i), "unit law fails".to_string()))),
            Axiom::CoproductMultiplicative => {
                for i in 0..d {
                    let bi = self.basis(i);
                    let di = self.delta(&bi);
                    for (name, x) in &tests.items {
                        let lhs = self.delta(&self.mul(&bi, x));
                        let rhs = self.mul_t(&di, &self.delta(x))?;
                        if let Some(v) = diff_t(&lhs, &rhs)? {
                            return Ok(Some((format!("({}, {name})", self.label(i)), v)));
                        }
                    }
                }
                Ok(None)
            }
            Axiom::CoproductUnital => Ok(diff_t(&self.delta(&one), &self.unit_t(2))?.map(|v| ("1".to_string(), v))),
            Axiom::CounitMultiplicative => {
                if !self.eps(&one).is_one() {
                    return Ok(Some(("1".into(), self.eps(&one).to_string())));
                }
                for i in 0..d {
                    let bi = self.basis(i);
                    for (name, x) in &tests.items {
                        let lhs = self.eps(&self.mul(&bi, x));
                        let rhs = &self.eps(&bi) * &self.eps(x);
                        if lhs != rhs {
                            return Ok(Some((
                                format!("({}, {name})", self.label(i)),
                                (&lhs - &rhs).to_string(),
                            )));
                        }
                    }
                }
                Ok(None)
            }
            Axiom::CounitLaws => {
                for (name, h) in &basis.items {
                    let dh = self.delta(h);
                    let left = self.eps_leg(&dh, 0)?.into_element();
                    let right = self.eps_leg(&dh, 1)?.into_element();
                    if let Some(v) = diff_e(&left, h).or_else(|| diff_e(&right, h)) {
                        return Ok(Some((name.clone(), v)));
                    }
                }
                Ok(None)
            }
            Axiom::QuasiCoassociativity => {
                for (name, h) in &tests.items {
                    let dh = self.delta(h);
                    let left3 = self.delta_leg(&dh, 0)?;
                    let right3 = self.delta_leg(&dh, 1)?;
                    let lhs = self.mul_t(&left3, &self.phi)?;
                    let rhs = self.mul_t(&self.phi, &right3)?;
                    if let Some(v) = diff_t(&lhs, &rhs)? {
                        return Ok(Some((name.clone(), v)));
                    }
                }
                Ok(None)
            }
            Axiom::CoassociatorInverse => {
                let u3 = self.unit_t(3);
                let a = self.mul_t(&self.phi, &self.phi_inv)?;
                let b = self.mul_t(&self.phi_inv, &self.phi)?;
                if let Some(v) = diff_t(&a, &u3)? {
                    return Ok(Some(("Φ·Ψ".into(), v)));
                }
                Ok(diff_t(&b, &u3)?.map(|v| ("Ψ·Φ".into(), v)))
            }
            Axiom::Pentagon => {
                let one_t = self.unit_t(1);
                let lhs = self.mul_t(&self.delta_leg(&self.phi, 0)?, &self.delta_leg(&self.phi, 2)?)?;
                let rhs = self.mul_ts(&[
                    &self.phi.tensor(&one_t),
                    &self.delta_leg(&self.phi, 1)?,
                    &one_t.tensor(&self.phi),
                ])?;
                Ok(diff_t(&lhs, &rhs)?.map(|v| ("Φ".into(), v)))
            }
            Axiom::CoassociatorCounit => {
                let u2 = self.unit_t(2);
                for leg in 0..3 {
                    for (nm, t) in [("Φ", &self.phi), ("Ψ", &self.phi_inv)] {
                        if let Some(v) = diff_t(&self.eps_leg(t, leg)?, &u2)? {
                            return Ok(Some((format!("ε on leg {} of {nm}", leg + 1), v)));
                        }
                    }
                }
                Ok(None)
            }
            Axiom::AntipodeInverse => {
                for (name, h) in &basis.items {
                    let a = self.s(&self.s_inv(h));
                    let b = self.s_inv(&self.s(h));
                    if let Some(v) = diff_e(&a, h).or_else(|| diff_e(&b, h)) {
                        return Ok(Some((name.clone(), v)));
                    }
                }
                Ok(None)
            }
            Axiom::AntipodeAntiMultiplicative => {
                for i in 0..d {
                    let bi = self.basis(i);
                    for (name, x) in &tests.items {
                        let lhs = self.s(&self.mul(&bi, x));
                        let rhs = self.mul(&self.s(x), &self.s(&bi));
                        if let Some(v) = diff_e(&lhs, &rhs) {
                            return Ok(Some((format!("({}, {name})", self.label(i)), v)));
                        }
                    }
                }
                Ok(None)
            }
            Axiom::AntipodeAlpha | Axiom::AntipodeBeta => {
                for (name, h) in &tests.items {
                    let dh = self.delta(h);
                    let mut lhs = Vec::new();
                    for (legs, c) in self.legs_of(&dh) {
                        let v = if axiom == Axiom::AntipodeAlpha {
                            self.mul_all(&[&self.s(&legs[0]), &self.alpha, &legs[1]])
                        } else {
                            self.mul_all(&[&legs[0], &self.beta, &self.s(&legs[1])])
                        };
                        lhs = vec_axpy(&lhs, c, &v);
                    }
                    let target = if axiom == Axiom::AntipodeAlpha {
                        &self.alpha
                    } else {
                        &self.beta
                    };
                    let rhs: Element = target
                        .iter()
                        .map(|(k, v)| (*k, v * &self.eps(h)))
                        .filter(|e| !e.1.is_zero())
                        .collect();
                    if let Some(v) = diff_e(&lhs, &rhs) {
                        return Ok(Some((name.clone(), v)));
                    }
                }
                Ok(None)
            }
            Axiom::ZigZagPhi | Axiom::ZigZagPsi => {
                // Ψ₁ β S(Ψ₂) α Ψ₃ = 1 and S(Φ₁) α Φ₂ β S(Φ₃) = 1
                let mut acc = Vec::new();
                if axiom == Axiom::ZigZagPsi {
                    for (l, c) in self.legs_of(&self.phi_inv) {
                        let v = self.mul_all(&[&l[0], &self.beta, &self.s(&l[1]), &self.alpha, &l[2]]);
                        acc = vec_axpy(&acc, c, &v);
                    }
                } else {
                    for (l, c) in self.legs_of(&self.phi) {
                        let v = self.mul_all(&[&self.s(&l[0]), &self.alpha, &l[1], &self.beta, &self.s(&l[2])]);
                        acc = vec_axpy(&acc, c, &v);
                    }
                }
                Ok(diff_e(&acc, &one).map(|v| ("coassociator".into(), v)))
            }
            Axiom::CounitAlphaBeta => {
                let (ea, eb) = (self.eps(&self.alpha), self.eps(&self.beta));
                if !ea.is_one() {
                    return Ok(Some(("ε(α)".into(), ea.to_string())));
                }
                Ok((!eb.is_one()).then(|| ("ε(β)".into(), eb.to_string())))
            }
            Axiom::TwistInverse => {
                let p = self.require_pivotal()?;
                let u2 = self.unit_t(2);
                let a = self.mul_t(&p.twist, &p.twist_inv)?;
                let b = self.mul_t(&p.twist_inv, &p.twist)?;
                if let Some(v) = diff_t(&a, &u2)? {
                    return Ok(Some(("f·f⁻¹".into(), v)));
                }
                Ok(diff_t(&b, &u2)?.map(|v| ("f⁻¹·f".into(), v)))
            }
            Axiom::TwistCounit => {
                let p = self.require_pivotal()?;
                let u1 = self.unit_t(1);
                for leg in 0..2 {
                    if let Some(v) = diff_t(&self.eps_leg(&p.twist, leg)?, &u1)? {
                        return Ok(Some((format!("ε on leg {} of f", leg + 1), v)));
                    }
                }
                Ok(None)
            }
            Axiom::TwistAntipode => {
                let p = self.require_pivotal()?;
                for (name, a) in &tests.items {
                    let lhs = self.mul_ts(&[&p.twist, &self.delta(&self.s(a)), &p.twist_inv])?;
                    let rhs = self.s_legs(&self.delta(a).flipped())?;
                    if let Some(v) = diff_t(&lhs, &rhs)? {
                        return Ok(Some((name.clone(), v)));
                    }
                }
                Ok(None)
            }
            Axiom::PivotCoproduct => {
                let p = self.require_pivotal()?;
                let rhs = self.mul_ts(&[
                    &p.twist_inv,
                    &self.s_legs(&p.twist.flipped())?,
                    &self.pure2(&p.pivot, &p.pivot),
                ])?;
                Ok(diff_t(&self.delta(&p.pivot), &rhs)?.map(|v| ("g".into(), v)))
            }
            Axiom::PivotConjugation => {
                let p = self.require_pivotal()?;
                for (name, h) in &basis.items {
                    let lhs = self.s(&self.s(h));
                    let rhs = self.mul_all(&[&p.pivot, h, &p.pivot_inv]);
                    if let Some(v) = diff_e(&lhs, &rhs) {
                        return Ok(Some((name.clone(), v)));
                    }
                }
                Ok(None)
            }
            Axiom::PivotCounit => {
                let p = self.require_pivotal()?;
                let e = self.eps(&p.pivot);
                Ok((!e.is_one()).then(|| ("ε(g)".into(), e.to_string())))
            }
            Axiom::PivotAntipode => {
                let p = self.require_pivotal()?;
                Ok(diff_e(&self.s(&p.pivot), &p.pivot_inv).map(|v| ("S(g)".into(), v)))
            }
        }
    }

    /// Fails with [`Error::AxiomViolation`] naming the first failing axiom.
    pub fn ensure_axioms(&self) -> Result<()> {
        let report = self.check_axioms();
        if let Some((a, c)) = report.checks.iter().find(|(_, c)| !c.passed()) {
            return Err(Error::AxiomViolation(format!(
                "{} at {}",
                a.name(),
                c.witness.clone().unwrap_or_default()
            )));
        }
        Ok(())
    }

    /// `q^R, p^R, q^L, p^L`, verified against their defining identities.
    pub fn derive_qp(&self) -> Result<CanonicalElements> {
        let (q_r, p_r, q_l, p_l) = self.qp_elements()?;
        let checks = self.qp_identities(&q_r, &p_r, &q_l, &p_l)?;
        if let Some(c) = checks.iter().find(|c| !c.passed()) {
            return Err(Error::AxiomViolation(format!(
                "{}: {}",
                c.name,
                c.value.clone().unwrap_or_default()
            )));
        }
        Ok(CanonicalElements {
            q_r,
            p_r,
            q_l,
            p_l,
            checks,
        })
    }

    /// The four elements without verification.
    pub fn qp_elements(&self) -> Result<(TensorElement, TensorElement, TensorElement, TensorElement)> {
        let (alpha, beta) = (&self.alpha, &self.beta);
        // q^R = Ψ₁ ⊗ S⁻¹(αΨ₃)Ψ₂
        let q_r = self.sum_over(&self.phi_inv, 2, |l| {
            Ok(self.pure2(&l[0], &self.mul(&self.s_inv(&self.mul(alpha, &l[2])), &l[1])))
        })?;
        // p^R = Φ₁ ⊗ Φ₂βS(Φ₃)
        let p_r = self.sum_over(&self.phi, 2, |l| {
            Ok(self.pure2(&l[0], &self.mul_all(&[&l[1], beta, &self.s(&l[2])])))
        })?;
        // q^L = S(Φ₁)αΦ₂ ⊗ Φ₃
        let q_l = self.sum_over(&self.phi, 2, |l| {
            Ok(self.pure2(&self.mul_all(&[&self.s(&l[0]), alpha, &l[1]]), &l[2]))
        })?;
        // p^L = Ψ₂S⁻¹(Ψ₁β) ⊗ Ψ₃
        let p_l = self.sum_over(&self.phi_inv, 2, |l| {
            Ok(self.pure2(&self.mul(&l[1], &self.s_inv(&self.mul(&l[0], beta))), &l[2]))
        })?;
        Ok((q_r, p_r, q_l, p_l))
    }

    fn qp_identities(
        &self,
        q_r: &TensorElement,
        p_r: &TensorElement,
        q_l: &TensorElement,
        p_l: &TensorElement,
    ) -> Result<Vec<Check>> {
        let one = self.one();
        let u2 = self.unit_t(2);
        let mut checks = Vec::new();
        let mut push = |name: &str, value: TensorElement| -> Result<()> {
            let diff = value.sub(&u2)?;
            checks.push(if diff.is_zero() {
                Check::pass(name)
            } else {
                Check::fail(name, "differs from 1⊗1").with_value(self.fmt_tensor(&diff))
            });
            Ok(())
        };
        // Δ(q^R₁) p^R [1 ⊗ S(q^R₂)]
        let v = self.sum_over(q_r, 2, |l| {
            self.mul_ts(&[&self.delta(&l[0]), p_r, &self.pure2(&one, &self.s(&l[1]))])
        })?;
        push("Δ(qR₁)·pR·(1⊗S(qR₂)) = 1⊗1", v)?;
        // [1 ⊗ S⁻¹(p^R₂)] q^R Δ(p^R₁)
        let v = self.sum_over(p_r, 2, |l| {
            self.mul_ts(&[&self.pure2(&one, &self.s_inv(&l[1])), q_r, &self.delta(&l[0])])
        })?;
        push("(1⊗S⁻¹(pR₂))·qR·Δ(pR₁) = 1⊗1", v)?;
        // Δ(q^L₂) p^L [S⁻¹(q^L₁) ⊗ 1]
        let v = self.sum_over(q_l, 2, |l| {
            self.mul_ts(&[&self.delta(&l[1]), p_l, &self.pure2(&self.s_inv(&l[0]), &one)])
        })?;
        push("Δ(qL₂)·pL·(S⁻¹(qL₁)⊗1) = 1⊗1", v)?;
        // [S(p^L₁) ⊗ 1] q^L Δ(p^L₂)
        let v = self.sum_over(p_l, 2, |l| {
            self.mul_ts(&[&self.pure2(&self.s(&l[0]), &one), q_l, &self.delta(&l[1])])
        })?;
        push("(S(pL₁)⊗1)·qL·Δ(pL₂) = 1⊗1", v)?;

        let mut failure_q = None;
        let mut failure_p = None;
        for a in 0..self.dim() {
            let ea = self.basis(a);
            let da = self.delta(&ea);
            if failure_q.is_none() {
                // (1 ⊗ S⁻¹(a₂)) q^R Δ(a₁) = (a ⊗ 1) q^R
                let lhs = self.sum_over(&da, 2, |l| {
                    self.mul_ts(&[&self.pure2(&one, &self.s_inv(&l[1])), q_r, &self.delta(&l[0])])
                })?;
                let rhs = self.mul_t(&self.pure2(&ea, &one), q_r)?;
                let diff = lhs.sub(&rhs)?;
                if !diff.is_zero() {
                    failure_q = Some((self.label(a), self.fmt_tensor(&diff)));
                }
            }
            if failure_p.is_none() {
                // Δ(a₁) p^R (1 ⊗ S(a₂)) = p^R (a ⊗ 1)
                let lhs = self.sum_over(&da, 2, |l| {
                    self.mul_ts(&[&self.delta(&l[0]), p_r, &self.pure2(&one, &self.s(&l[1]))])
                })?;
                let rhs = self.mul_t(p_r, &self.pure2(&ea, &one))?;
                let diff = lhs.sub(&rhs)?;
                if !diff.is_zero() {
                    failure_p = Some((self.label(a), self.fmt_tensor(&diff)));
                }
            }
        }
        let named = |name: &str, f: Option<(String, String)>| match f {
            None => Check::pass(name),
            Some((w, v)) => Check::fail(name, w).with_value(v),
        };
        checks.push(named("(1⊗S⁻¹(a₂))·qR·Δ(a₁) = (a⊗1)·qR", failure_q));
        checks.push(named("Δ(a₁)·pR·(1⊗S(a₂)) = pR·(a⊗1)", failure_p));
        Ok(checks)
    }

    /// `U, V, u` and their coopposite versions for the modulus `gamma`.
    pub fn derive_uvu(&self, gamma: &LinearForm) -> Result<UvElements> {
        let piv = self.require_pivotal()?;
        let (q_r, p_r, q_l, p_l) = self.qp_elements()?;
        let f = &piv.twist;
        let f_inv = &piv.twist_inv;
        let f21 = f.flipped();
        // U = f⁻¹ (S⊗S)(q^R₂₁)
        let u_tensor = self.mul_t(f_inv, &self.s_legs(&q_r.flipped())?)?;
        // V = (S⁻¹⊗S⁻¹)(f₂₁ p^R₂₁)
        let v_tensor = self.s_inv_legs(&self.mul_t(&f21, &p_r.flipped())?)?;
        // U^cop = (S⁻¹⊗S⁻¹)(q^L f⁻¹)
        let u_cop_tensor = self.s_inv_legs(&self.mul_t(&q_l, f_inv)?)?;
        // V^cop = (S⊗S)(p^L) f₂₁
        let v_cop_tensor = self.mul_t(&self.s_legs(&p_l)?, &f21)?;
        // u = (γ ⊗ S²)(V), u^cop = (γ ⊗ S⁻²)(V^cop)
        let u = self.s(&self.s(&apply_form(gamma, &v_tensor, &[0])?.into_element()));
        let u_cop = self.s_inv(&self.s_inv(&apply_form(gamma, &v_cop_tensor, &[0])?.into_element()));
        Ok(UvElements {
            u_tensor,
            v_tensor,
            u_cop_tensor,
            v_cop_tensor,
            u,
            u_cop,
        })
    }

    /// `H^op`: reversed multiplication, `S^op = S⁻¹`, `Φ^op = Ψ`,
    /// `α^op = S⁻¹(β)`, `β^op = S⁻¹(α)`. Pivotal data is not transported.
    pub fn opposite(&self) -> Result<QuasiHopfAlgebra> {
        let d = self.dim();
        let alg = AlgebraData::from_fn(self.alg.labels().to_vec(), self.one(), |i, j| {
            self.alg.product(j, i).clone()
        })?;
        let generators = self.generators.clone();
        QuasiHopfAlgebra::new(QuasiHopfParts {
            alg,
            conductor: self.conductor,
            coproduct: (0..d).map(|i| self.delta(&self.basis(i))).collect(),
            counit: (0..d).map(|i| self.counit.coeff(i)).collect(),
            antipode: self.antipode_inv.images().to_vec(),
            antipode_inv: self.antipode.images().to_vec(),
            phi: self.phi_inv.clone(),
            phi_inv: self.phi.clone(),
            alpha: self.s_inv(&self.beta),
            beta: self.s_inv(&self.alpha),
            pivotal: None,
            generators,
        })
    }

    /// `H^cop`: flipped coproduct, `S^cop = S⁻¹`, `Φ^cop = Ψ₃₂₁`,
    /// `α^cop = S⁻¹(α)`, `β^cop = S⁻¹(β)`, `g^cop = g⁻¹`,
    /// `f^cop = (S⁻¹⊗S⁻¹)(f)`.
    pub fn coopposite(&self) -> Result<QuasiHopfAlgebra> {
        let d = self.dim();
        let rev = Permutation::reverse(3);
        let pivotal = match &self.pivotal {
            None => None,
            Some(p) => Some(PivotalData {
                pivot: p.pivot_inv.clone(),
                pivot_inv: p.pivot.clone(),
                twist: self.s_inv_legs(&p.twist)?,
                twist_inv: self.s_inv_legs(&p.twist_inv)?,
            }),
        };
        QuasiHopfAlgebra::new(QuasiHopfParts {
            alg: self.alg.clone(),
            conductor: self.conductor,
            coproduct: (0..d).map(|i| self.delta(&self.basis(i)).flipped()).collect(),
            counit: (0..d).map(|i| self.counit.coeff(i)).collect(),
            antipode: self.antipode_inv.images().to_vec(),
            antipode_inv: self.antipode.images().to_vec(),
            phi: self.phi_inv.flip(&rev)?,
            phi_inv: self.phi.flip(&rev)?,
            alpha: self.s_inv(&self.alpha),
            beta: self.s_inv(&self.beta),
            pivotal,
            generators: self.generators.clone(),
        })
    }
}
