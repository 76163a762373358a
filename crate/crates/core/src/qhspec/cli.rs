//! Commands behind the `qhspec` binary. Each returns a [`Report`]; the
//! binary maps reports and errors to exit codes.

use std::sync::Arc;

use crate::algcore::LinearForm;
use crate::error::{Error, Result};
use crate::exactmath::Scalar;
use crate::intcoint::{self, Normalization, Side};
use crate::modtrace::{self, ModifiedTrace, ProjectivePresentation, ReductionOptions};
use crate::quasihopf::QuasiHopfAlgebra;
use crate::repcat::Representation;
use crate::report::{Check, Report};
use crate::sympferm;

use super::SpecDocument;

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_AXIOM: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

/// Name of the optional form used to fix the scale of the symmetrised
/// cointegral.
pub const REFERENCE_FORM: &str = "symmetrised";

pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_BUDGET: usize = 200;

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Syntax { .. } | Error::ScalarSyntax { .. } | Error::Semantic(_) => EXIT_PARSE,
        Error::AxiomViolation(_) | Error::MissingPivotalData => EXIT_AXIOM,
        Error::Io(_) | Error::BadBeta { .. } | Error::Overflow { .. } => EXIT_OTHER,
        _ => EXIT_VERIFY,
    }
}

/// Exit code for a finished report.
pub fn report_exit_code(report: &Report, axioms: bool) -> i32 {
    match (report.passed(), axioms) {
        (true, _) => EXIT_OK,
        (false, true) => EXIT_AXIOM,
        (false, false) => EXIT_VERIFY,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Reduction,
    Pairing,
    All,
}

fn elem(h: &QuasiHopfAlgebra, e: &crate::algcore::Element) -> String {
    h.fmt_element(e)
}

fn form_text(h: &QuasiHopfAlgebra, f: &LinearForm) -> String {
    if f.is_zero() {
        return "0".into();
    }
    f.coeffs()
        .iter()
        .map(|(i, c)| format!("({c})·{}*", h.alg().label(*i)))
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn check(doc: &SpecDocument) -> Report {
    let r = doc.algebra.check_axioms();
    Report::new("check", vec![r.to_check()])
}

fn ensure_axioms(h: &QuasiHopfAlgebra) -> Result<()> {
    h.ensure_axioms()
}

pub fn integrals(doc: &SpecDocument) -> Result<Report> {
    let h = &doc.algebra;
    ensure_axioms(h)?;
    let left = intcoint::integrals(h, Side::Left)?;
    let right = intcoint::integrals(h, Side::Right)?;
    let gamma = intcoint::modulus(h, &left)?;
    let list = |s: &intcoint::IntegralSpace| s.basis.iter().map(|b| elem(h, b)).collect::<Vec<_>>().join("; ");
    let checks = vec![
        Check::from_bool("left integrals", left.dim() == 1).with_value(format!(
            "dimension {}: {}",
            left.dim(),
            list(&left)
        )),
        Check::from_bool("right integrals", right.dim() == 1).with_value(format!(
            "dimension {}: {}",
            right.dim(),
            list(&right)
        )),
        Check::pass("modulus").with_value(form_text(h, &gamma.gamma)),
        Check::pass("unimodular").with_value(gamma.is_counit(h).to_string()),
        Check::pass("left = right integrals").with_value(left.same_span(&right, h.dim()).to_string()),
    ];
    Ok(Report::new("integrals", checks))
}

fn normalization_text(h: &QuasiHopfAlgebra, n: &Normalization) -> String {
    match n {
        Normalization::LeadingOne { index } => format!("coefficient of {}* set to 1", h.alg().label(*index)),
        Normalization::MatchedReference { index, value } => {
            format!(
                "coefficient of {}* matched to reference value {value}",
                h.alg().label(*index)
            )
        }
    }
}

pub fn cointegrals(doc: &SpecDocument, side: Side) -> Result<Report> {
    let h = &doc.algebra;
    ensure_axioms(h)?;
    h.require_pivotal()?;
    let left = intcoint::integrals(h, Side::Left)?;
    let gamma = intcoint::modulus(h, &left)?;
    let res = intcoint::cointegrals(h, side, &gamma, None)?;
    let (sym, norm) = intcoint::normalize(&res.symmetrised, doc.form(REFERENCE_FORM))?;
    let kind = match side {
        Side::Left => intcoint::FormKind::LeftSymmetrised,
        Side::Right => intcoint::FormKind::RightSymmetrised,
    };
    let props = intcoint::check_form_properties(h, &sym, &gamma, kind)?;
    let checks = vec![
        Check::pass(format!("{side} cointegral")).with_value(form_text(h, &res.lambda)),
        Check::pass("cointegral normalization").with_value(normalization_text(h, &res.normalization)),
        Check::pass(format!("{side} symmetrised cointegral")).with_value(form_text(h, &sym)),
        Check::pass("symmetrised normalization").with_value(normalization_text(h, &norm)),
        props.to_check("symmetrised cointegral properties"),
    ];
    Ok(Report::new("cointegrals", checks))
}

/// The modified trace from the right symmetrised cointegral, normalized
/// against the document's reference form when present.
pub fn trace_for(doc: &SpecDocument) -> Result<(Arc<QuasiHopfAlgebra>, ModifiedTrace, Normalization)> {
    let h = &doc.algebra;
    ensure_axioms(h)?;
    h.require_pivotal()?;
    let left = intcoint::integrals(h, Side::Left)?;
    let gamma = intcoint::modulus(h, &left)?;
    if !gamma.is_counit(h) {
        return Err(Error::NotUnimodular);
    }
    let res = intcoint::cointegrals(h, Side::Right, &gamma, None)?;
    let (sym, norm) = intcoint::normalize(&res.symmetrised, doc.form(REFERENCE_FORM))?;
    let arc = Arc::new(h.clone());
    let tr = modtrace::from_symmetrised_cointegral(&arc, &sym, Side::Right)?;
    Ok((arc, tr, norm))
}

pub fn modtrace(doc: &SpecDocument) -> Result<Report> {
    let (arc, tr, norm) = trace_for(doc)?;
    let h = arc.as_ref();
    let mut checks = vec![
        Check::pass("symmetrised cointegral").with_value(form_text(h, tr.form())),
        Check::pass("normalization").with_value(normalization_text(h, &norm)),
        Check::pass("side").with_value(format!("{:?}", tr.side()).to_lowercase()),
        Check::from_bool("gram rank", intcoint::gram_rank(h, tr.form()) == h.dim())
            .with_value(intcoint::gram_rank(h, tr.form()).to_string()),
    ];
    let named: Vec<_> = h.generators().iter().chain(doc.elements.iter()).cloned().collect();
    let values = modtrace::trace_values(&tr, &named)?;
    checks.push(Check::group(
        "trace values",
        values
            .into_iter()
            .map(|(n, v)| Check::pass(format!("t(r_{n})")).with_value(v.to_string()))
            .collect(),
    ));
    Ok(Report::new("modified trace", checks))
}

pub fn verify(doc: &SpecDocument, suite: Suite, seed: u64, budget: usize) -> Result<Report> {
    let (arc, tr, _) = trace_for(doc)?;
    let h = arc.as_ref();
    let mut checks = Vec::new();
    if matches!(suite, Suite::Reduction | Suite::All) {
        let r = modtrace::verify_reduction(&tr, ReductionOptions { budget, seed })?;
        checks.push(Check::group("reduction", r.checks));
    }
    if matches!(suite, Suite::Pairing | Suite::All) {
        let rank = intcoint::gram_rank(h, tr.form());
        let unit = Representation::character(&arc, &(0..h.dim()).map(|i| h.counit().coeff(i)).collect::<Vec<_>>())?;
        let pres = ProjectivePresentation::regular(&arc);
        checks.push(Check::group(
            "pairing",
            vec![
                Check::from_bool("Gram matrix full rank", rank == h.dim()).with_value(format!("{rank} of {}", h.dim())),
                modtrace::pairing_nondegeneracy(&tr, &unit, &pres)?,
            ],
        ));
    }
    if suite == Suite::All {
        checks.push(modtrace::cyclicity(&tr, budget.min(100), seed)?);
    }
    Ok(Report::new(format!("verify (seed {seed}, budget {budget})"), checks))
}

fn parse_beta(beta: &str) -> Result<Scalar> {
    Scalar::parse_in(beta, 8)
}

/// `Q(N, β)` as a document carrying its named elements and the closed-form
/// symmetrised cointegral as the reference form.
pub fn sympferm_document(n: usize, beta: &str) -> Result<SpecDocument> {
    let fx = sympferm::build(n, &parse_beta(beta)?)?;
    Ok(SpecDocument {
        elements: fx.named.as_list().into_iter().filter(|(name, _)| name != "K").collect(),
        forms: vec![(REFERENCE_FORM.to_string(), fx.symmetrised.clone())],
        algebra: fx.hopf,
    })
}

/// Builds `Q(N, β)` and compares the computed integral, cointegral and trace
/// values with their closed forms.
pub fn sympferm_report(n: usize, beta: &str) -> Result<Report> {
    let fx = sympferm::build(n, &parse_beta(beta)?)?;
    let h = &fx.hopf;
    let axioms = h.check_axioms();
    if !axioms.passed() {
        return Ok(Report::new(format!("Q({n}, {beta})"), vec![axioms.to_check()]));
    }
    let mut checks = vec![axioms.to_check()];
    let left = intcoint::integrals(h, Side::Left)?;
    let right = intcoint::integrals(h, Side::Right)?;
    let expected = intcoint::IntegralSpace {
        side: Side::Left,
        basis: vec![fx.integral.clone()],
    };
    checks.push(
        Check::from_bool(
            "integral space",
            left.same_span(&expected, h.dim()) && right.same_span(&expected, h.dim()),
        )
        .with_value(elem(h, &fx.integral)),
    );
    let gamma = intcoint::modulus(h, &left)?;
    checks.push(Check::from_bool("modulus = counit", gamma.is_counit(h)));
    let res = intcoint::cointegrals(h, Side::Right, &gamma, None)?;
    let (sym, _) = intcoint::normalize(&res.symmetrised, Some(&fx.symmetrised))?;
    checks.push(Check::from_bool("symmetrised cointegral", sym == fx.symmetrised).with_value(form_text(h, &sym)));
    let arc = Arc::new(h.clone());
    let tr = modtrace::from_symmetrised_cointegral(&arc, &sym, Side::Right)?;
    let values = modtrace::trace_values(&tr, &fx.named.as_list())?;
    let mut trace_checks = Vec::new();
    for (name, v) in values {
        if let Some(e) = fx.expected_traces.get(&name) {
            let c = Check::from_bool(format!("t(r_{name})"), &v == e).with_value(v.to_string());
            trace_checks.push(if &v == e {
                c
            } else {
                c.with_witness(format!("expected {e}"))
            });
        }
    }
    checks.push(Check::group("trace values", trace_checks));
    Ok(Report::new(format!("Q({n}, {beta})"), checks))
}
