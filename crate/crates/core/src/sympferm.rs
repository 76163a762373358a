//! The symplectic fermion quasi-Hopf algebras `Q(N, β)`, `β⁴ = (−1)^N`.
//!
//! Generators are `K` and `f^±_k` for `1 <= k <= N` subject to
//! `{f^±, K} = 0`, `{f^+_k, f^-_l} = δ_{kl} e₁`, `{f^±_k, f^±_l} = 0`,
//! `K⁴ = 1`, with `e₀ = ½(1 + K²)` and `e₁ = ½(1 − K²)`. The basis is
//! `F(a, b, i) = f^+_{a_1}⋯f^+_{a_r} f^-_{b_1}⋯f^-_{b_s} K^i` for increasing
//! multi-indices `a`, `b` and `i ∈ Z₄`.

use std::collections::BTreeMap;

use num_integer::Integer;

use crate::algcore::{AlgebraData, Element, LinearForm, TensorElement};
use crate::error::{Error, Result};
use crate::exactmath::sparse::{normalize_vec, vec_axpy, vec_scale};
use crate::exactmath::{Field, Scalar};
use crate::quasihopf::{PivotalData, QuasiHopfAlgebra, QuasiHopfParts};

/// Environment variable overriding the largest admissible `N`.
pub const MAX_N_ENV: &str = "QHSPEC_MAX_N";
pub const DEFAULT_MAX_N: usize = 4;

/// Largest `N` accepted by [`build`].
pub fn max_n() -> usize {
    std::env::var(MAX_N_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_N)
}

/// Basis label `F(a, b, i)` with `a`, `b` as bit masks (bit `k-1` ↔ index `k`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SfBasisIndex {
    pub a_mask: u32,
    pub b_mask: u32,
    pub k_power: u8,
}

impl SfBasisIndex {
    pub fn new(a_mask: u32, b_mask: u32, k_power: u8) -> Self {
        SfBasisIndex {
            a_mask,
            b_mask,
            k_power: k_power % 4,
        }
    }

    /// The top component `F(N⃗, N⃗, i)`.
    pub fn top(n: usize, k_power: u8) -> Self {
        let full = (1u32 << n) - 1;
        Self::new(full, full, k_power)
    }

    /// Position in the enumeration `(a_mask, b_mask, i)` ascending.
    pub fn index(&self, n: usize) -> usize {
        (((self.a_mask as usize) << n) + self.b_mask as usize) * 4 + self.k_power as usize
    }

    pub fn from_index(idx: usize, n: usize) -> Self {
        let k_power = (idx % 4) as u8;
        let rest = idx / 4;
        let b_mask = (rest & ((1 << n) - 1)) as u32;
        let a_mask = (rest >> n) as u32;
        SfBasisIndex {
            a_mask,
            b_mask,
            k_power,
        }
    }

    /// Label such as `F(12|1|3)` for `f^+_1 f^+_2 f^-_1 K^3`.
    pub fn label(&self, n: usize) -> String {
        let digits = |m: u32| -> String {
            (0..n)
                .filter(|k| m >> k & 1 == 1)
                .map(|k| (k + 1).to_string())
                .collect::<Vec<_>>()
                .join(if n > 9 { "," } else { "" })
        };
        format!("F({}|{}|{})", digits(self.a_mask), digits(self.b_mask), self.k_power)
    }

    fn degree(&self) -> u32 {
        self.a_mask.count_ones() + self.b_mask.count_ones()
    }

    /// Splits off the first generator of the word: `F = x · rest`.
    fn split_first(&self) -> Option<(Generator, SfBasisIndex)> {
        if self.a_mask != 0 {
            let k = self.a_mask.trailing_zeros() as usize;
            Some((
                Generator::Plus(k),
                SfBasisIndex {
                    a_mask: self.a_mask & !(1 << k),
                    ..*self
                },
            ))
        } else if self.b_mask != 0 {
            let k = self.b_mask.trailing_zeros() as usize;
            Some((
                Generator::Minus(k),
                SfBasisIndex {
                    b_mask: self.b_mask & !(1 << k),
                    ..*self
                },
            ))
        } else if self.k_power > 0 {
            Some((
                Generator::K,
                SfBasisIndex {
                    k_power: self.k_power - 1,
                    ..*self
                },
            ))
        } else {
            None
        }
    }
}

/// Zero-based generator indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Generator {
    K,
    Plus(usize),
    Minus(usize),
}

fn sign(odd: bool) -> Scalar {
    Scalar::from(if odd { -1 } else { 1 })
}

/// `x · F` for a generator `x` and basis element `F`, by normal ordering.
fn left_generator(n: usize, x: Generator, f: SfBasisIndex) -> Vec<(usize, Scalar)> {
    let below = |m: u32, k: usize| (m & ((1u32 << k) - 1)).count_ones();
    match x {
        Generator::K => {
            let g = SfBasisIndex::new(f.a_mask, f.b_mask, f.k_power + 1);
            vec![(g.index(n), sign(f.degree() % 2 == 1))]
        }
        Generator::Plus(k) => {
            if f.a_mask >> k & 1 == 1 {
                return Vec::new();
            }
            let g = SfBasisIndex::new(f.a_mask | 1 << k, f.b_mask, f.k_power);
            vec![(g.index(n), sign(below(f.a_mask, k) % 2 == 1))]
        }
        Generator::Minus(k) => {
            let mut out = Vec::new();
            if f.b_mask >> k & 1 == 0 {
                let g = SfBasisIndex::new(f.a_mask, f.b_mask | 1 << k, f.k_power);
                let odd = (f.a_mask.count_ones() + below(f.b_mask, k)) % 2 == 1;
                out.push((g.index(n), sign(odd)));
            }
            if f.a_mask >> k & 1 == 1 {
                // f^-_k passes f^+_k: the anticommutator leaves e₁ = ½(1 − K²)
                let half = &sign(below(f.a_mask, k) % 2 == 1) * &Scalar::frac(1, 2);
                let a = f.a_mask & !(1 << k);
                out.push((SfBasisIndex::new(a, f.b_mask, f.k_power).index(n), half.clone()));
                out.push((SfBasisIndex::new(a, f.b_mask, f.k_power + 2).index(n), -half));
            }
            out
        }
    }
}

fn left_generator_elem(n: usize, x: Generator, e: &[(usize, Scalar)]) -> Element {
    let mut out = Vec::new();
    for (i, c) in e {
        for (j, v) in left_generator(n, x, SfBasisIndex::from_index(*i, n)) {
            out.push((j, c * &v));
        }
    }
    normalize_vec(out)
}

/// Basis indices ordered by word length, so every word's tail precedes it.
fn words_by_length(n: usize, dim: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by_key(|&i| {
        let f = SfBasisIndex::from_index(i, n);
        (f.degree() + f.k_power as u32, i)
    });
    order
}

/// Named elements of `Q(N, β)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedElements {
    pub k: Element,
    pub f_plus: Vec<Element>,
    pub f_minus: Vec<Element>,
    pub e0: Element,
    pub e1: Element,
    pub omega_plus: Element,
    pub omega_minus: Element,
    pub beta_plus: Element,
    pub beta_minus: Element,
    pub e0_plus: Element,
    pub e0_minus: Element,
    pub e1_plus: Element,
    pub e1_minus: Element,
    pub x_plus: Element,
    pub x_minus: Element,
    pub y_plus: Element,
    pub y_minus: Element,
    pub pivot: Element,
}

impl NamedElements {
    /// Elements carried into serialized specs, by name.
    pub fn as_list(&self) -> Vec<(String, Element)> {
        vec![
            ("K".into(), self.k.clone()),
            ("e0".into(), self.e0.clone()),
            ("e1".into(), self.e1.clone()),
            ("omega+".into(), self.omega_plus.clone()),
            ("omega-".into(), self.omega_minus.clone()),
            ("beta+".into(), self.beta_plus.clone()),
            ("beta-".into(), self.beta_minus.clone()),
            ("e0+".into(), self.e0_plus.clone()),
            ("e0-".into(), self.e0_minus.clone()),
            ("e1+".into(), self.e1_plus.clone()),
            ("e1-".into(), self.e1_minus.clone()),
            ("x+".into(), self.x_plus.clone()),
            ("x-".into(), self.x_minus.clone()),
            ("y+".into(), self.y_plus.clone()),
            ("y-".into(), self.y_minus.clone()),
        ]
    }
}

/// `q^R, p^R, q^L, p^L` as given in closed form for `Q(N, β)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormQp {
    pub q_r: TensorElement,
    pub p_r: TensorElement,
    pub q_l: TensorElement,
    pub p_l: TensorElement,
}

/// `Q(N, β)` with its named elements and reference values.
#[derive(Clone, Debug)]
pub struct SfFixture {
    pub n: usize,
    pub beta: Scalar,
    pub hopf: QuasiHopfAlgebra,
    pub named: NamedElements,
    pub closed_form_qp: ClosedFormQp,
    /// Two-sided integral `Σ_j F(N⃗, N⃗, j)`.
    pub integral: Element,
    /// Cointegral `a₊F(N⃗,N⃗,0)* + b₊F(N⃗,N⃗,1)* + a₋F(N⃗,N⃗,2)* + b₋F(N⃗,N⃗,3)*`.
    pub cointegral: LinearForm,
    /// Symmetrised cointegral `(β²+i)F(N⃗,N⃗,1)* + (β²−i)F(N⃗,N⃗,3)*`.
    pub symmetrised: LinearForm,
    /// `t(r_x)` for `x ∈ {x+, x-, y+, y-}`.
    pub expected_traces: BTreeMap<String, Scalar>,
}

/// Checks `β⁴ = (−1)^N` and `1 <= N <= max_n()`.
pub fn validate_params(n: usize, beta: &Scalar) -> Result<()> {
    let max = max_n();
    if n == 0 {
        return Err(Error::Semantic("N must be positive".into()));
    }
    if n > max {
        return Err(Error::Overflow { n, max });
    }
    let expected = sign(n % 2 == 1);
    let found = beta.pow(4);
    if found != expected {
        return Err(Error::BadBeta {
            found: found.to_string(),
            expected: expected.to_string(),
        });
    }
    Ok(())
}

/// The four admissible values of `β` for a given `N`, as powers of `ζ₈`.
pub fn admissible_betas(n: usize) -> Vec<Scalar> {
    let z8 = Scalar::zeta(8);
    let start = if n.is_multiple_of(2) { 0 } else { 1 };
    (0..4).map(|k| z8.pow(start + 2 * k)).collect()
}

/// Reference values that depend only on `(N, β)`.
pub struct ExpectedValues {
    pub integral: Element,
    pub cointegral: LinearForm,
    pub symmetrised: LinearForm,
    pub expected_traces: BTreeMap<String, Scalar>,
}

pub fn expected_values(n: usize, beta: &Scalar) -> ExpectedValues {
    let dim = 1usize << (2 * n + 2);
    let top = |j: u8| SfBasisIndex::top(n, j).index(n);
    let i = Scalar::i();
    let b2 = beta.pow(2);
    let even = n.is_multiple_of(2);
    let integral = normalize_vec((0..4).map(|j| (top(j), Scalar::one())).collect());
    let symmetrised = LinearForm::new(1, dim, vec![(top(1), &b2 + &i), (top(3), &b2 - &i)]);
    let delta_even = Scalar::from(if even { 1 } else { 0 });
    let b_coeff = if even { Scalar::zero() } else { i.clone() };
    let cointegral = LinearForm::new(
        1,
        dim,
        vec![
            (top(0), &b2 + &delta_even),
            (top(1), b_coeff.clone()),
            (top(2), &b2 - &delta_even),
            (top(3), -b_coeff),
        ],
    );
    let sgn = sign((n * (n - 1) / 2) % 2 == 1);
    let half = &Scalar::frac(1, 2) * &sgn;
    let x = &half * &b2;
    let y = &half * &Scalar::from(-2).pow(n as u32);
    let mut expected_traces = BTreeMap::new();
    expected_traces.insert("x+".to_string(), x.clone());
    expected_traces.insert("x-".to_string(), -x);
    expected_traces.insert("y+".to_string(), y.clone());
    expected_traces.insert("y-".to_string(), -y);
    ExpectedValues {
        integral,
        cointegral,
        symmetrised,
        expected_traces,
    }
}

/// Constructs `Q(N, β)` as structure-constant data.
pub fn build(n: usize, beta: &Scalar) -> Result<SfFixture> {
    validate_params(n, beta)?;
    let dim = 1usize << (2 * n + 2);
    let conductor = 8.lcm(&beta.field().conductor());
    Field::cyclotomic(conductor)?;
    let labels: Vec<String> = (0..dim).map(|i| SfBasisIndex::from_index(i, n).label(n)).collect();
    let order = words_by_length(n, dim);

    // multiplication: row w is built from the row of its tail
    let mut rows: Vec<Vec<Element>> = vec![Vec::new(); dim];
    for &w in &order {
        let f = SfBasisIndex::from_index(w, n);
        rows[w] = match f.split_first() {
            None => (0..dim).map(|j| vec![(j, Scalar::one())]).collect(),
            Some((x, rest)) => {
                let tail = &rows[rest.index(n)];
                tail.iter().map(|e| left_generator_elem(n, x, e)).collect()
            }
        };
    }
    let unit: Element = vec![(0, Scalar::one())];
    let alg = AlgebraData::new(labels, rows.into_iter().flatten().collect(), unit.clone())?;

    let named = named_elements(&alg, n, beta);
    let NamedElements {
        k,
        e0,
        e1,
        omega_plus,
        omega_minus,
        beta_plus,
        beta_minus,
        ..
    } = named.clone();
    let mul = |a: &Element, b: &Element| alg.mul(a, b);
    let pure2 = |a: &Element, b: &Element| TensorElement::pure(dim, &[a, b]);
    let one = unit.clone();
    let kn = power(&alg, &k, n);
    let e1k = mul(&e1, &k);

    // generator images
    let sign_n = sign(n % 2 == 1);
    let delta_k = pure2(&k, &k).axpy(&-(&Scalar::one() + &sign_n), &pure2(&e1k, &e1k))?;
    let i = Scalar::i();
    let twisted = |s: &Scalar| vec_axpy(&e0, s, &e1);
    let s_k = mul(&twisted(&sign_n), &k);
    let s_inv_k = if n.is_multiple_of(2) {
        k.clone()
    } else {
        power(&alg, &k, 3)
    };
    let mut gen_delta: Vec<(Generator, TensorElement)> = vec![(Generator::K, delta_k)];
    let mut gen_s: Vec<(Generator, Element)> = vec![(Generator::K, s_k)];
    let mut gen_s_inv: Vec<(Generator, Element)> = vec![(Generator::K, s_inv_k)];
    for kk in 0..n {
        for (plus, omega) in [(true, &omega_plus), (false, &omega_minus)] {
            let g = if plus {
                Generator::Plus(kk)
            } else {
                Generator::Minus(kk)
            };
            let fx = if plus { &named.f_plus[kk] } else { &named.f_minus[kk] };
            let d = pure2(fx, &one).add(&pure2(omega, fx))?;
            let pm = if plus { Scalar::one() } else { Scalar::from(-1) };
            let s = mul(fx, &mul(&twisted(&(&(&pm * &sign_n) * &i)), &k));
            let s_inv = mul(omega, fx);
            gen_delta.push((g, d));
            gen_s.push((g, s));
            gen_s_inv.push((g, s_inv));
        }
    }
    let lookup = |table: &[(Generator, Element)], g: Generator| -> Element {
        table.iter().find(|(h, _)| *h == g).expect("generator image").1.clone()
    };
    let lookup_t = |g: Generator| -> TensorElement {
        gen_delta
            .iter()
            .find(|(h, _)| *h == g)
            .expect("generator image")
            .1
            .clone()
    };

    let mut coproduct = vec![TensorElement::zero(2, dim); dim];
    let mut antipode: Vec<Element> = vec![Vec::new(); dim];
    let mut antipode_inv: Vec<Element> = vec![Vec::new(); dim];
    for &w in &order {
        let f = SfBasisIndex::from_index(w, n);
        match f.split_first() {
            None => {
                coproduct[w] = TensorElement::unit(&alg, 2);
                antipode[w] = one.clone();
                antipode_inv[w] = one.clone();
            }
            Some((x, rest)) => {
                let r = rest.index(n);
                coproduct[w] = alg.mul_tensor(&lookup_t(x), &coproduct[r])?;
                antipode[w] = mul(&antipode[r], &lookup(&gen_s, x));
                antipode_inv[w] = mul(&antipode_inv[r], &lookup(&gen_s_inv, x));
            }
        }
    }
    let counit: Vec<Scalar> = (0..dim)
        .map(|w| {
            let f = SfBasisIndex::from_index(w, n);
            if f.degree() == 0 {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
        .collect();

    // Φ^{±1} = 1⊗1⊗1 + e₁⊗e₁⊗{e₀(K^N − 1) + e₁(β_± − 1)}
    let minus1 = Scalar::from(-1);
    let e0_kn_1 = mul(&e0, &vec_axpy(&kn, &minus1, &one));
    let phi_for = |bpm: &Element| -> Result<TensorElement> {
        let third = vec_axpy(&e0_kn_1, &Scalar::one(), &mul(&e1, &vec_axpy(bpm, &minus1, &one)));
        TensorElement::unit(&alg, 3).add(&TensorElement::pure(dim, &[&e1, &e1, &third]))
    };
    let phi = phi_for(&beta_plus)?;
    let phi_inv = phi_for(&beta_minus)?;

    // f^{±1} = e₀⊗1 + e₁⊗e₀K^N + e₁β_∓⊗e₁
    let twist_for = |bmp: &Element| -> Result<TensorElement> {
        pure2(&e0, &one)
            .add(&pure2(&e1, &mul(&e0, &kn)))?
            .add(&pure2(&mul(&e1, bmp), &e1))
    };
    let twist = twist_for(&beta_minus)?;
    let twist_inv = twist_for(&beta_plus)?;
    let pivotal = PivotalData::new(&alg, named.pivot.clone(), twist, twist_inv)?;

    let mut generators = vec![("K".to_string(), k.clone())];
    for kk in 0..n {
        generators.push((format!("f+{}", kk + 1), named.f_plus[kk].clone()));
        generators.push((format!("f-{}", kk + 1), named.f_minus[kk].clone()));
    }

    let closed_form_qp = closed_form_qp(&alg, &named, &kn)?;
    let hopf = QuasiHopfAlgebra::new(QuasiHopfParts {
        alg,
        conductor,
        coproduct,
        counit,
        antipode,
        antipode_inv,
        phi,
        phi_inv,
        alpha: one,
        beta: beta_plus,
        pivotal: Some(pivotal),
        generators,
    })?;
    let ExpectedValues {
        integral,
        cointegral,
        symmetrised,
        expected_traces,
    } = expected_values(n, beta);
    Ok(SfFixture {
        n,
        beta: beta.clone(),
        hopf,
        named,
        closed_form_qp,
        integral,
        cointegral,
        symmetrised,
        expected_traces,
    })
}

fn power(alg: &AlgebraData, x: &Element, e: usize) -> Element {
    (0..e).fold(alg.unit().clone(), |acc, _| alg.mul(&acc, x))
}

fn named_elements(alg: &AlgebraData, n: usize, beta: &Scalar) -> NamedElements {
    let one = alg.unit().clone();
    let basis = |f: SfBasisIndex| -> Element { vec![(f.index(n), Scalar::one())] };
    let k = basis(SfBasisIndex::new(0, 0, 1));
    let k2 = basis(SfBasisIndex::new(0, 0, 2));
    let f_plus: Vec<Element> = (0..n).map(|j| basis(SfBasisIndex::new(1 << j, 0, 0))).collect();
    let f_minus: Vec<Element> = (0..n).map(|j| basis(SfBasisIndex::new(0, 1 << j, 0))).collect();
    let half = Scalar::frac(1, 2);
    let e0 = vec_scale(&vec_axpy(&one, &Scalar::one(), &k2), &half);
    let e1 = vec_scale(&vec_axpy(&one, &Scalar::from(-1), &k2), &half);
    let i = Scalar::i();
    let mul = |a: &Element, b: &Element| alg.mul(a, b);
    let omega = |s: &Scalar| mul(&vec_axpy(&e0, s, &e1), &k);
    let omega_plus = omega(&i);
    let omega_minus = omega(&-&i);
    // β_± = e₀ + β²(±iK)^N e₁
    let b2 = beta.pow(2);
    let beta_pm = |s: &Scalar| {
        let ik = vec_scale(&k, s);
        let p = power(alg, &ik, n);
        vec_axpy(&e0, &b2, &mul(&p, &e1))
    };
    let beta_plus = beta_pm(&i);
    let beta_minus = beta_pm(&-&i);
    // e₀^± = ½(1 ± K)e₀
    let e0_pm = |s: i64| vec_scale(&mul(&vec_axpy(&one, &Scalar::from(s), &k), &e0), &half);
    let e0_plus = e0_pm(1);
    let e0_minus = e0_pm(-1);
    // e₁^± = ½e₁(1 ∓ iK∏(1 − 2f⁺_k f⁻_k))
    let mut prod = one.clone();
    for j in 0..n {
        let ff = mul(&f_plus[j], &f_minus[j]);
        prod = mul(&prod, &vec_axpy(&one, &Scalar::from(-2), &ff));
    }
    let ikp = vec_scale(&mul(&k, &prod), &i);
    let e1_plus = vec_scale(&mul(&e1, &vec_axpy(&one, &Scalar::from(-1), &ikp)), &half);
    let e1_minus = vec_scale(&mul(&e1, &vec_axpy(&one, &Scalar::one(), &ikp)), &half);
    // x_± = (∏ f⁺_j f⁻_j) e₀^±, y_± = e₁^±
    let mut ffs = one.clone();
    for j in 0..n {
        ffs = mul(&ffs, &mul(&f_plus[j], &f_minus[j]));
    }
    let x_plus = mul(&ffs, &e0_plus);
    let x_minus = mul(&ffs, &e0_minus);
    // g = (e₀ + (−i)^{N+1} e₁K^N) K
    let kn = power(alg, &k, n);
    let c = (-&i).pow(n as u32 + 1);
    let pivot = mul(&vec_axpy(&e0, &c, &mul(&e1, &kn)), &k);
    NamedElements {
        y_plus: e1_plus.clone(),
        y_minus: e1_minus.clone(),
        k,
        f_plus,
        f_minus,
        e0,
        e1,
        omega_plus,
        omega_minus,
        beta_plus,
        beta_minus,
        e0_plus,
        e0_minus,
        e1_plus,
        e1_minus,
        x_plus,
        x_minus,
        pivot,
    }
}

fn closed_form_qp(alg: &AlgebraData, named: &NamedElements, kn: &Element) -> Result<ClosedFormQp> {
    let dim = alg.dim();
    let one = alg.unit().clone();
    let minus1 = Scalar::from(-1);
    let mul = |a: &Element, b: &Element| alg.mul(a, b);
    let pure2 = |a: &Element, b: &Element| TensorElement::pure(dim, &[a, b]);
    let (e0, e1) = (&named.e0, &named.e1);
    let bp1 = vec_axpy(&named.beta_plus, &minus1, &one);
    let bm1 = vec_axpy(&named.beta_minus, &minus1, &one);
    let e0kn1 = mul(e0, &vec_axpy(kn, &minus1, &one));
    let u2 = TensorElement::unit(alg, 2);
    let q_r = u2.add(&pure2(e1, &mul(e1, &bp1)))?;
    let p_r = u2.add(&pure2(e0, &mul(e1, &bp1)))?;
    let q_l = u2.add(&pure2(e1, &vec_axpy(&e0kn1, &Scalar::one(), &mul(e1, &bp1))))?;
    let e1bm = mul(e1, &named.beta_minus);
    let p_l = pure2(&named.beta_minus, &one).add(&pure2(&e1bm, &vec_axpy(&e0kn1, &Scalar::one(), &mul(e1, &bm1))))?;
    Ok(ClosedFormQp { q_r, p_r, q_l, p_l })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q1() -> SfFixture {
        build(1, &Scalar::zeta(8).pow(7)).unwrap()
    }

    #[test]
    fn basis_enumeration_round_trips() {
        for n in 1..=3 {
            for idx in 0..1usize << (2 * n + 2) {
                assert_eq!(SfBasisIndex::from_index(idx, n).index(n), idx);
            }
        }
        assert_eq!(SfBasisIndex::top(1, 3).label(1), "F(1|1|3)");
        assert_eq!(SfBasisIndex::new(0, 0, 0).label(2), "F(||0)");
    }

    #[test]
    fn generator_relations() {
        let q = q1();
        let alg = q.hopf.alg();
        let f = &q.named.f_plus[0];
        let fm = &q.named.f_minus[0];
        assert!(alg.mul(f, f).is_empty());
        let anti = vec_axpy(&alg.mul(f, fm), &Scalar::one(), &alg.mul(fm, f));
        assert_eq!(anti, q.named.e1);
        let kf = vec_axpy(&alg.mul(&q.named.k, f), &Scalar::one(), &alg.mul(f, &q.named.k));
        assert!(kf.is_empty());
        assert_eq!(power(alg, &q.named.k, 4), *alg.unit());
        assert_eq!(q.hopf.dim(), 16);
    }

    #[test]
    fn named_element_identities() {
        let q = q1();
        let h = &q.hopf;
        let nm = &q.named;
        assert_eq!(h.mul(&nm.beta_plus, &nm.beta_minus), h.one());
        assert_eq!(h.s(&nm.beta_plus), nm.beta_minus);
        assert_eq!(h.s_inv(&nm.beta_plus), nm.beta_minus);
        assert_eq!(h.mul(&nm.e1_plus, &nm.e1_plus), nm.e1_plus);
        assert!(h.mul(&nm.e1_plus, &nm.e1_minus).is_empty());
        assert_eq!(h.mul(&nm.pivot, &nm.pivot), h.one());
        assert_eq!(h.eps(&nm.k), Scalar::one());
        assert!(h.eps(&nm.f_plus[0]).is_zero());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(build(1, &Scalar::one()), Err(Error::BadBeta { .. })));
        assert!(matches!(build(99, &Scalar::one()), Err(Error::Overflow { .. })));
        for n in 1..=3 {
            for b in admissible_betas(n) {
                validate_params(n, &b).unwrap();
            }
        }
    }

    #[test]
    fn expected_values_for_q1() {
        let ev = expected_values(1, &Scalar::zeta(8).pow(7));
        let top3 = SfBasisIndex::top(1, 3).index(1);
        let minus_2i = &Scalar::from(-2) * &Scalar::i();
        assert_eq!(ev.symmetrised.coeffs(), &[(top3, minus_2i)]);
        let ev2 = expected_values(2, &Scalar::one());
        assert_eq!(ev2.expected_traces["x+"], Scalar::frac(-1, 2));
        assert_eq!(ev2.expected_traces["y+"], Scalar::from(-2));
    }

    #[test]
    fn q1_axioms_and_closed_form_qp() {
        let q = q1();
        let r = q.hopf.check_axioms();
        assert!(r.passed(), "{:?}", r.failures());
        let c = q.hopf.derive_qp().unwrap();
        assert_eq!(c.q_r, q.closed_form_qp.q_r);
        assert_eq!(c.p_r, q.closed_form_qp.p_r);
        assert_eq!(c.q_l, q.closed_form_qp.q_l);
        assert_eq!(c.p_l, q.closed_form_qp.p_l);
    }

    #[test]
    fn q2_axioms_and_closed_form_qp() {
        for beta in [Scalar::one(), Scalar::i()] {
            let q = build(2, &beta).unwrap();
            let r = q.hopf.check_axioms();
            assert!(r.passed(), "{:?}", r.failures());
            let c = q.hopf.derive_qp().unwrap();
            assert_eq!(c.q_l, q.closed_form_qp.q_l);
            assert_eq!(c.p_l, q.closed_form_qp.p_l);
        }
    }
}
