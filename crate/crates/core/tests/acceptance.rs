//! Acceptance suite: one line per criterion, all comparisons exact.
//!
//! Run with `cargo test --test acceptance`; the process exits non-zero when a
//! criterion fails.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qhcore::algcore::Element;
use qhcore::exactmath::sparse::normalize_vec;
use qhcore::exactmath::{Scalar, SparseMatrix};
use qhcore::fixtures::{kz4, sweedler};
use qhcore::intcoint::{self, FormKind, IntegralSpace, Side};
use qhcore::modtrace::{self, ModifiedTrace, ProjectivePresentation, ReductionOptions};
use qhcore::quasihopf::QuasiHopfAlgebra;
use qhcore::repcat::{self, Representation};
use qhcore::sympferm::{self, SfFixture};
use qhcore::Error;

type Outcome = Result<String, String>;

fn err(e: Error) -> String {
    e.to_string()
}

fn fixtures(max_n: usize) -> Result<Vec<SfFixture>, String> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for beta in sympferm::admissible_betas(n) {
            out.push(sympferm::build(n, &beta).map_err(err)?);
        }
    }
    Ok(out)
}

fn tag(fx: &SfFixture) -> String {
    format!("Q({}, {})", fx.n, fx.beta)
}

fn modulus(h: &QuasiHopfAlgebra) -> Result<intcoint::Modulus, String> {
    let left = intcoint::integrals(h, Side::Left).map_err(err)?;
    intcoint::modulus(h, &left).map_err(err)
}

/// Right symmetrised cointegral, normalized against the closed form.
fn trace(fx: &SfFixture) -> Result<ModifiedTrace, String> {
    let h = &fx.hopf;
    let gamma = modulus(h)?;
    let res = intcoint::cointegrals(h, Side::Right, &gamma, None).map_err(err)?;
    let (sym, _) = intcoint::normalize(&res.symmetrised, Some(&fx.symmetrised)).map_err(err)?;
    modtrace::from_symmetrised_cointegral(&Arc::new(h.clone()), &sym, Side::Right).map_err(err)
}

fn criterion_axioms(all: &[SfFixture]) -> Outcome {
    let mut slowest = 0.0f64;
    for fx in all {
        let start = Instant::now();
        let r = fx.hopf.check_axioms();
        slowest = slowest.max(start.elapsed().as_secs_f64());
        if !r.passed() {
            return Err(format!("{} fails {:?}", tag(fx), r.failures()));
        }
    }
    Ok(format!("{} algebras, slowest check {slowest:.2}s", all.len()))
}

fn criterion_integrals(all: &[SfFixture]) -> Outcome {
    for fx in all {
        let h = &fx.hopf;
        let expected = IntegralSpace {
            side: Side::Left,
            basis: vec![fx.integral.clone()],
        };
        let left = intcoint::integrals(h, Side::Left).map_err(err)?;
        let right = intcoint::integrals(h, Side::Right).map_err(err)?;
        if !left.same_span(&expected, h.dim()) {
            return Err(format!("{}: left integrals differ", tag(fx)));
        }
        if !right.same_span(&left, h.dim()) {
            return Err(format!("{}: right integrals differ", tag(fx)));
        }
        if !modulus(h)?.is_counit(h) {
            return Err(format!("{}: modulus is not the counit", tag(fx)));
        }
    }
    Ok(format!(
        "span{{Σ_j F(N,N,j)}} on both sides, modulus = ε, {} algebras",
        all.len()
    ))
}

fn criterion_cointegrals(all: &[SfFixture]) -> Outcome {
    for fx in all {
        let h = &fx.hopf;
        let gamma = modulus(h)?;
        let space = intcoint::cointegral_space(h, Side::Right, &gamma).map_err(err)?;
        if space.len() != 1 {
            return Err(format!("{}: solution space has dimension {}", tag(fx), space.len()));
        }
        let res = intcoint::cointegrals(h, Side::Right, &gamma, None).map_err(err)?;
        let (sym, _) = intcoint::normalize(&res.symmetrised, Some(&fx.symmetrised)).map_err(err)?;
        if sym != fx.symmetrised {
            return Err(format!(
                "{}: symmetrised cointegral differs from the closed form",
                tag(fx)
            ));
        }
    }
    Ok(format!(
        "1-dimensional, λ̂ = (β²+i)F(N,N,1)* + (β²−i)F(N,N,3)*, {} algebras",
        all.len()
    ))
}

fn criterion_trace_values(all: &[SfFixture]) -> Outcome {
    let mut shown = String::new();
    for fx in all {
        let tr = trace(fx)?;
        let values = modtrace::trace_values(&tr, &fx.named.as_list()).map_err(err)?;
        for (name, v) in values {
            if let Some(e) = fx.expected_traces.get(&name) {
                if &v != e {
                    return Err(format!("{}: t(r_{name}) = {v}, expected {e}", tag(fx)));
                }
                if fx.n == 1 && fx.beta == Scalar::zeta(8).pow(7) && (name == "x+" || name == "y+") {
                    shown.push_str(&format!(" t(r_{name}) = {v};"));
                }
            }
        }
    }
    Ok(format!("{} algebras; at Q(1, z8^7):{shown}", all.len()))
}

fn criterion_reduction_forms(q1: &[SfFixture]) -> Outcome {
    for fx in q1 {
        let forms = modtrace::solve_reduction_forms(&fx.hopf).map_err(err)?;
        if forms.len() != 1 {
            return Err(format!("{}: solution space has dimension {}", tag(fx), forms.len()));
        }
        let tr = trace(fx)?;
        if intcoint::proportionality(&forms[0], tr.form()).is_none() {
            return Err(format!("{}: solution is not proportional to λ̂", tag(fx)));
        }
    }
    Ok(format!("1-dimensional and spanned by λ̂ for {} values of β", q1.len()))
}

fn criterion_reduction_lemma(q1: &[SfFixture], q2: &SfFixture) -> Outcome {
    let mut parts = Vec::new();
    for (fx, opts) in q1
        .iter()
        .map(|f| (f, ReductionOptions::default()))
        .chain(std::iter::once((q2, ReductionOptions { budget: 200, seed: 0 })))
    {
        let tr = trace(fx)?;
        let r = modtrace::verify_reduction(&tr, opts).map_err(err)?;
        if !r.passed() {
            return Err(format!("{}: {}", tag(fx), r.to_text()));
        }
        let right = r
            .checks
            .iter()
            .find(|c| c.name.contains("tr^r"))
            .and_then(|c| c.value.clone());
        let left = r
            .checks
            .iter()
            .find(|c| c.name.contains("tr^l"))
            .and_then(|c| c.value.clone());
        match (right, left) {
            (Some(rv), Some(lv)) => parts.push(format!("{}: right {rv}, left {lv}", tag(fx))),
            _ => return Err(format!("{}: a side was not checked", tag(fx))),
        }
    }
    Ok(parts.join("; "))
}

fn criterion_nondegeneracy(all: &[SfFixture]) -> Outcome {
    for fx in all {
        let rank = intcoint::gram_rank(&fx.hopf, &fx.symmetrised);
        if rank != fx.hopf.dim() {
            return Err(format!("{}: Gram rank {rank}", tag(fx)));
        }
    }
    let q1 = &all[0];
    let tr = trace(q1)?;
    let h = tr.algebra();
    let counit: Vec<Scalar> = (0..h.dim()).map(|i| h.counit().coeff(i)).collect();
    let trivial = Representation::character(h, &counit).map_err(err)?;
    let pairing = modtrace::pairing_nondegeneracy(&tr, &trivial, &ProjectivePresentation::regular(h)).map_err(err)?;
    if !pairing.passed() {
        return Err(format!("Hom pairing: {:?}", pairing.value));
    }
    let sw = Arc::new(sweedler());
    let lam = intcoint::cointegrals(&sw, Side::Right, &modulus(&sw)?, None).map_err(err)?;
    match modtrace::from_symmetrised_cointegral(&sw, &lam.symmetrised, Side::Right) {
        Err(Error::NotUnimodular) => {}
        other => return Err(format!("Sweedler: expected NotUnimodular, got {other:?}")),
    }
    Ok(format!(
        "Gram rank 2^(2N+2) for {} algebras; Hom pairing at {} {}; Sweedler refused as not unimodular",
        all.len(),
        tag(q1),
        pairing.value.unwrap_or_default()
    ))
}

fn random_element(rng: &mut ChaCha8Rng, d: usize) -> Element {
    normalize_vec(
        (0..3)
            .map(|_| (rng.gen_range(0..d), Scalar::from(rng.gen_range(-2i64..=2))))
            .collect(),
    )
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> SparseMatrix {
    SparseMatrix::from_triplets(
        n,
        n,
        (0..4)
            .map(|_| {
                (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    Scalar::from(rng.gen_range(-2i64..=2)),
                )
            })
            .collect::<Vec<_>>(),
    )
}

fn criterion_phi_psi(q1: &SfFixture, q2: &SfFixture) -> Outcome {
    for fx in [q1, q2] {
        let h = Arc::new(fx.hopf.clone());
        let reg = Representation::regular(&h);
        let pp = repcat::phi_psi(&h, &reg).map_err(err)?;
        for (name, first, second) in [
            ("φʳ∘ψʳ", &pp.phi_r, &pp.psi_r),
            ("ψʳ∘φʳ", &pp.psi_r, &pp.phi_r),
            ("φˡ∘ψˡ", &pp.phi_l, &pp.psi_l),
            ("ψˡ∘φˡ", &pp.psi_l, &pp.phi_l),
        ] {
            if !first.compose(second).map_err(err)?.is_identity() {
                return Err(format!("{}: {name} is not the identity", tag(fx)));
            }
        }
    }
    let h = Arc::new(q1.hopf.clone());
    let reg = Representation::regular(&h);
    let pp = repcat::phi_psi(&h, &reg).map_err(err)?;
    let d = h.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for s in 0..100 {
        let (a, b) = (random_element(&mut rng, d), random_element(&mut rng, d));
        let (m, n) = (random_matrix(&mut rng, d), random_matrix(&mut rng, d));
        let lhs = repcat::xi(&pp, &a, &m)
            .map_err(err)?
            .compose(&repcat::xi(&pp, &b, &n).map_err(err)?)
            .map_err(err)?;
        let rhs = repcat::xi(&pp, &h.mul(&b, &a), &m.mul(&n).map_err(err)?).map_err(err)?;
        if lhs.matrix() != rhs.matrix() {
            return Err(format!("Ξ not multiplicative on sample {s}"));
        }
    }
    Ok(format!(
        "φ/ψ mutually inverse (both sides) at {} and {}; Ξ multiplicative on 100 samples at {}",
        tag(q1),
        tag(q2),
        tag(q1)
    ))
}

fn criterion_properties(q1: &SfFixture) -> Outcome {
    let tr = trace(q1)?;
    let cyc = modtrace::cyclicity(&tr, 100, 9).map_err(err)?;
    if !cyc.passed() {
        return Err(format!("cyclicity: {:?}", cyc.witness));
    }
    let sw = sweedler();
    let gamma = modulus(&sw)?;
    for (side, kind) in [
        (Side::Left, FormKind::LeftSymmetrised),
        (Side::Right, FormKind::RightSymmetrised),
    ] {
        let c = intcoint::cointegrals(&sw, side, &gamma, None).map_err(err)?;
        let p = intcoint::check_form_properties(&sw, &c.symmetrised, &gamma, kind).map_err(err)?;
        if p.twisted_symmetry != Some(true) {
            return Err(format!("Sweedler: {side} twisted symmetry fails"));
        }
    }
    let h = &q1.hopf;
    let gamma = modulus(h)?;
    for (side, kind) in [
        (Side::Left, FormKind::LeftCointegral),
        (Side::Right, FormKind::RightCointegral),
    ] {
        let c = intcoint::cointegrals(h, side, &gamma, None).map_err(err)?;
        let p = intcoint::check_form_properties(h, &c.lambda, &gamma, kind).map_err(err)?;
        if p.nakayama != Some(true) {
            return Err(format!("{}: {side} Nakayama relation fails", tag(q1)));
        }
    }
    Ok(format!(
        "cyclicity {}; twisted symmetry on Sweedler (both sides, exhaustive); Nakayama at {} (both sides, exhaustive)",
        cyc.value.unwrap_or_default(),
        tag(q1)
    ))
}

fn criterion_semisimple() -> Outcome {
    let h = Arc::new(kz4());
    let gamma = modulus(&h)?;
    let c = intcoint::cointegrals(&h, Side::Right, &gamma, None).map_err(err)?;
    let tr = modtrace::from_symmetrised_cointegral(&h, &c.symmetrised, Side::Right).map_err(err)?;
    let quarter = Scalar::frac(1, 4);
    let blocks: Vec<Element> = (0..4i64)
        .map(|k| {
            normalize_vec(
                (0..4i64)
                    .map(|j| {
                        (
                            j as usize,
                            &quarter * &Scalar::i().powi(-j * k).expect("i is invertible"),
                        )
                    })
                    .collect(),
            )
        })
        .collect();
    let check = modtrace::compare_with_categorical(&tr, &blocks).map_err(err)?;
    let ratios: Vec<String> = check
        .children
        .iter()
        .map(|c| c.value.clone().unwrap_or_default())
        .collect();
    if !check.passed() {
        return Err(format!("ratios {ratios:?}"));
    }
    Ok(format!("k[Z4] ratio per block: {}", ratios.join(", ")))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let all = match fixtures(3) {
        Ok(f) => f,
        Err(e) => {
            println!("[FAIL] fixtures: {e}");
            return ExitCode::FAILURE;
        }
    };
    let q1: Vec<SfFixture> = all.iter().filter(|f| f.n == 1).cloned().collect();
    let q1_ref = q1
        .iter()
        .find(|f| f.beta == Scalar::zeta(8).pow(7))
        .expect("β = ζ₈⁷ is admissible at N = 1")
        .clone();
    let q2 = all.iter().find(|f| f.n == 2).expect("N = 2 fixtures").clone();

    type Criterion<'a> = (&'a str, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("axioms", Box::new(|| criterion_axioms(&all))),
        ("integrals", Box::new(|| criterion_integrals(&all))),
        ("cointegrals", Box::new(|| criterion_cointegrals(&all))),
        ("modified trace values", Box::new(|| criterion_trace_values(&all))),
        ("reduction condition solve", Box::new(|| criterion_reduction_forms(&q1))),
        ("reduction lemma", Box::new(|| criterion_reduction_lemma(&q1, &q2))),
        ("non-degeneracy", Box::new(|| criterion_nondegeneracy(&all))),
        ("φ/ψ and Ξ", Box::new(|| criterion_phi_psi(&q1_ref, &q2))),
        ("property suites", Box::new(|| criterion_properties(&q1_ref))),
        ("semisimple sanity", Box::new(criterion_semisimple)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {:>2}. {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {:>2}. {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
