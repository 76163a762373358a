//! Randomised exact identities for scalars and cross-checks of the sparse
//! echelon solver against a dense elimination oracle.

mod common;

use common::*;
use proptest::prelude::*;
use qhcore::exactmath::{Scalar, SparseMatrix};
use qhcore::intcoint;
use qhcore::sympferm;

proptest! {
    #[test]
    fn field_axioms(a in q8_scalar(), b in q8_scalar(), c in q8_scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        } else {
            prop_assert!(a.inv().is_err());
        }
    }

    #[test]
    fn display_parses_back(a in q8_scalar()) {
        let text = a.to_string();
        prop_assert_eq!(Scalar::parse_in(&text, 8).unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Scalar>(&json).unwrap(), a);
    }

    #[test]
    fn rank_and_nullspace_match_dense_oracle(
        rows in q8_matrix(5, 6),
        mix in prop::collection::vec(q8_scalar(), 5),
    ) {
        // append a combination of the rows so that rank defects occur
        let cols = rows[0].len();
        let mut rows = rows;
        let combo: Vec<Scalar> = (0..cols)
            .map(|j| rows.iter().zip(&mix).map(|(r, c)| &r[j] * c).sum())
            .collect();
        rows.push(combo);
        let m = SparseMatrix::from_dense(&rows);
        let rank = dense_rank(&rows, cols);
        prop_assert_eq!(m.rank(), rank);
        let kernel = m.nullspace();
        prop_assert_eq!(kernel.len(), cols - rank);
        for v in &kernel {
            let dense = sparse_to_dense_vec(v, cols);
            prop_assert!(dense_mul_vec(&rows, &dense).iter().all(Scalar::is_zero));
        }
        let basis: Vec<Vec<Scalar>> = kernel.iter().map(|v| sparse_to_dense_vec(v, cols)).collect();
        if !basis.is_empty() {
            prop_assert_eq!(dense_rank(&basis, cols), basis.len());
        }
    }
}

fn q1() -> sympferm::SfFixture {
    sympferm::build(1, &Scalar::parse_in("z8^7", 8).unwrap()).unwrap()
}

#[test]
fn stacked_integral_system_of_q1_is_one_dimensional() {
    let fx = q1();
    let h = &fx.hopf;
    let d = h.dim();
    let stacked: Vec<SparseMatrix> = (0..d)
        .map(|i| {
            let x = h.basis(i);
            h.alg().left_mult(&x).sub(&SparseMatrix::scalar(d, &h.eps(&x))).unwrap()
        })
        .collect();
    let refs: Vec<&SparseMatrix> = stacked.iter().collect();
    assert_eq!(d - dense_rank_of(&refs), 1);
    let space = intcoint::integrals(h, intcoint::Side::Left).unwrap();
    assert_eq!(space.dim(), 1);
}

#[test]
fn gram_rank_of_q1_symmetrised_cointegral_is_full() {
    let fx = q1();
    let gram = intcoint::gram_matrix(&fx.hopf, &fx.symmetrised);
    assert_eq!(gram.rank(), 16);
    assert_eq!(dense_rank_of(&[&gram]), 16);
    assert_eq!(gram, gram.transpose());
}
