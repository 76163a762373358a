//! Small reference algebras: cyclic group algebras and Sweedler's
//! four-dimensional Hopf algebra.

use crate::algcore::{AlgebraData, Element, TensorElement};
use crate::error::Result;
use crate::exactmath::Scalar;
use crate::quasihopf::{PivotalData, QuasiHopfAlgebra, QuasiHopfParts};

fn one() -> Scalar {
    Scalar::one()
}

fn basis(i: usize) -> Element {
    vec![(i, one())]
}

/// Ordinary Hopf algebra data; `pivot` comes with a trivial Drinfeld twist.
struct HopfData {
    alg: AlgebraData,
    conductor: u32,
    coproduct: Vec<TensorElement>,
    counit: Vec<Scalar>,
    antipode: Vec<Element>,
    antipode_inv: Vec<Element>,
    pivot: Option<Element>,
    generators: Vec<(String, Element)>,
}

/// Wraps Hopf algebra data with trivial coassociator and `α = β = 1`.
fn hopf(data: HopfData) -> Result<QuasiHopfAlgebra> {
    let HopfData {
        alg,
        conductor,
        coproduct,
        counit,
        antipode,
        antipode_inv,
        pivot,
        generators,
    } = data;
    let unit = alg.unit().clone();
    let phi = TensorElement::unit(&alg, 3);
    let pivotal = match pivot {
        Some(g) => {
            let twist = TensorElement::unit(&alg, 2);
            Some(PivotalData::new(&alg, g, twist.clone(), twist)?)
        }
        None => None,
    };
    QuasiHopfAlgebra::new(QuasiHopfParts {
        conductor,
        coproduct,
        counit,
        antipode,
        antipode_inv,
        phi_inv: phi.clone(),
        phi,
        alpha: unit.clone(),
        beta: unit,
        pivotal,
        generators,
        alg,
    })
}

/// Group algebra of the cyclic group of order `n`, basis `g^0, …, g^{n-1}`,
/// with trivial pivot. Scalars are tagged with `conductor`.
pub fn cyclic_group_algebra(n: usize, conductor: u32) -> Result<QuasiHopfAlgebra> {
    let labels = (0..n)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{k}"),
        })
        .collect();
    let alg = AlgebraData::from_fn(labels, basis(0), |i, j| basis((i + j) % n))?;
    let coproduct = (0..n)
        .map(|i| TensorElement::from_terms(2, n, [(&[i, i][..], one())]))
        .collect();
    let antipode: Vec<Element> = (0..n).map(|i| basis((n - i) % n)).collect();
    let generator = if n > 1 { basis(1) } else { basis(0) };
    hopf(HopfData {
        alg,
        conductor,
        coproduct,
        counit: vec![one(); n],
        antipode_inv: antipode.clone(),
        antipode,
        pivot: Some(basis(0)),
        generators: vec![("g".to_string(), generator)],
    })
}

/// `k[Z2]` over `Q`.
pub fn kz2() -> QuasiHopfAlgebra {
    cyclic_group_algebra(2, 1).expect("valid group algebra")
}

/// `k[Z4]` over `Q(i)`, which contains its primitive idempotents.
pub fn kz4() -> QuasiHopfAlgebra {
    cyclic_group_algebra(4, 4).expect("valid group algebra")
}

/// `k[Z2]` without pivotal data.
pub fn kz2_nonpivotal() -> QuasiHopfAlgebra {
    let mut parts = kz2().into_parts();
    parts.pivotal = None;
    QuasiHopfAlgebra::new(parts).expect("valid data")
}

/// Sweedler's algebra: basis `1, g, x, gx` with `g² = 1`, `x² = 0`,
/// `xg = −gx`, `Δ(g) = g⊗g`, `Δ(x) = x⊗1 + g⊗x`, pivot `g`. It is not
/// unimodular.
pub fn sweedler() -> QuasiHopfAlgebra {
    let labels = ["1", "g", "x", "gx"].map(String::from).to_vec();
    // index = a + 2b for g^a x^b
    let alg = AlgebraData::from_fn(labels, basis(0), |i, j| {
        let (a, b) = (i % 2, i / 2);
        let (c, d) = (j % 2, j / 2);
        if b + d > 1 {
            return Vec::new();
        }
        let sign = if b * c == 1 { -1 } else { 1 };
        vec![((a + c) % 2 + 2 * (b + d), Scalar::from(sign))]
    })
    .expect("valid table");
    let t =
        |terms: &[(&[usize], i64)]| TensorElement::from_terms(2, 4, terms.iter().map(|(l, c)| (*l, Scalar::from(*c))));
    let coproduct = vec![
        t(&[(&[0, 0], 1)]),
        t(&[(&[1, 1], 1)]),
        t(&[(&[2, 0], 1), (&[1, 2], 1)]),
        t(&[(&[3, 1], 1), (&[0, 3], 1)]),
    ];
    let e = |i: usize, c: i64| vec![(i, Scalar::from(c))];
    let antipode = vec![e(0, 1), e(1, 1), e(3, -1), e(2, 1)];
    let antipode_inv = vec![e(0, 1), e(1, 1), e(3, 1), e(2, -1)];
    let counit = [1, 1, 0, 0].map(Scalar::from).to_vec();
    hopf(HopfData {
        alg,
        conductor: 4,
        coproduct,
        counit,
        antipode,
        antipode_inv,
        pivot: Some(basis(1)),
        generators: vec![("g".into(), basis(1)), ("x".into(), basis(2))],
    })
    .expect("valid Sweedler data")
}
