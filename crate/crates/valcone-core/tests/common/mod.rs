//! Shared proptest strategies: rationals of bounded height, Puiseux
//! polynomials and fractions, and unimodular 2×2 matrices assembled from
//! elementary factors.

#![allow(dead_code)]

use num_traits::{One, Zero};
use proptest::prelude::*;
use valcone_core::matrix_algebra::{Budget, Matrix};
use valcone_core::puiseux_field::{rat, FieldElem, PuiseuxPoly, Rat};

pub fn arb_rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=8).prop_map(|(p, q)| rat(p, q))
}

pub fn arb_exponent() -> impl Strategy<Value = Rat> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| rat(p, q))
}

pub fn arb_poly() -> impl Strategy<Value = PuiseuxPoly> {
    proptest::collection::vec((arb_exponent(), arb_rat()), 0..3).prop_map(PuiseuxPoly::from_terms)
}

pub fn arb_nonzero_poly() -> impl Strategy<Value = PuiseuxPoly> {
    arb_poly().prop_filter("polynomial must be nonzero", |p| !p.is_zero())
}

pub fn arb_elem() -> impl Strategy<Value = FieldElem> {
    (arb_poly(), arb_nonzero_poly())
        .prop_map(|(num, den)| FieldElem::new(num, den).expect("denominator is nonzero"))
}

pub fn arb_nonzero_elem() -> impl Strategy<Value = FieldElem> {
    (arb_nonzero_poly(), arb_nonzero_poly())
        .prop_map(|(num, den)| FieldElem::new(num, den).expect("denominator is nonzero"))
}

/// One elementary factor of a determinant-one 2×2 matrix: a shear with a
/// monomial off-diagonal entry, or a diagonal monomial and its inverse.
#[derive(Clone, Debug)]
pub enum Factor {
    Upper(Rat, Rat),
    Lower(Rat, Rat),
    Diag(Rat, Rat),
}

pub fn arb_factor() -> impl Strategy<Value = Factor> {
    let coeff = || (prop_oneof![-3i64..=-1, 1i64..=3], 1i64..=2).prop_map(|(p, q)| rat(p, q));
    let exp = || (-3i64..=3, 1i64..=2).prop_map(|(p, q)| rat(p, q));
    prop_oneof![
        (coeff(), exp()).prop_map(|(c, e)| Factor::Upper(c, e)),
        (coeff(), exp()).prop_map(|(c, e)| Factor::Lower(c, e)),
        (coeff(), exp()).prop_map(|(c, e)| Factor::Diag(c, e)),
    ]
}

pub fn factor_matrix(f: &Factor) -> Matrix<FieldElem> {
    let m = |c: &Rat, e: &Rat| FieldElem::monomial(c.clone(), e.clone());
    let rows = match f {
        Factor::Upper(c, e) => vec![
            vec![FieldElem::one(), m(c, e)],
            vec![FieldElem::zero(), FieldElem::one()],
        ],
        Factor::Lower(c, e) => vec![
            vec![FieldElem::one(), FieldElem::zero()],
            vec![m(c, e), FieldElem::one()],
        ],
        Factor::Diag(c, e) => {
            let d = m(c, e);
            let inv = d.inverse().expect("diagonal entry is nonzero");
            vec![vec![d, FieldElem::zero()], vec![FieldElem::zero(), inv]]
        }
    };
    Matrix::from_rows(rows).expect("rows are rectangular")
}

pub fn matrix_product(factors: &[Factor]) -> Matrix<FieldElem> {
    let budget = Budget::unlimited();
    let mut acc = Matrix::identity(2);
    for f in factors {
        acc = acc.mul(&factor_matrix(f), &budget).expect("2x2 product");
    }
    acc
}

pub fn arb_sl2() -> impl Strategy<Value = Matrix<FieldElem>> {
    proptest::collection::vec(arb_factor(), 1..=4).prop_map(|fs| matrix_product(&fs))
}
