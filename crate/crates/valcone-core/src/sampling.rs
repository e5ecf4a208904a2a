//! Seeded random generators for property tests and experiments.
//!
//! Everything here is deterministic given the seed, so failures
//! reproduce.  The generators stay small on purpose: a few terms, small
//! exponent denominators, entries that keep exact arithmetic fast.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::matrix_algebra::{Budget, Matrix, Representation};
use crate::puiseux_field::{rat, FieldElem, PuiseuxPoly, Rat};

/// A seeded deterministic generator.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational with numerator in ±1..=9 and denominator in 1..=3.
pub fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    let num = loop {
        let n = rng.gen_range(-9i64..=9);
        if n != 0 {
            break n;
        }
    };
    rat(num, rng.gen_range(1i64..=3))
}

/// A half-integer exponent in [−2, 2].
fn random_exponent(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng.gen_range(-4i64..=4), 2)
}

/// A Puiseux polynomial with 1..=max_terms monomials.
pub fn random_poly(rng: &mut ChaCha8Rng, max_terms: usize) -> PuiseuxPoly {
    let terms = rng.gen_range(1..=max_terms.max(1));
    let mut out = Vec::with_capacity(terms);
    for _ in 0..terms {
        out.push((random_exponent(rng), random_rat(rng)));
    }
    PuiseuxPoly::from_terms(out)
}

/// A nonzero Puiseux polynomial.
pub fn random_nonzero_poly(rng: &mut ChaCha8Rng, max_terms: usize) -> PuiseuxPoly {
    loop {
        let p = random_poly(rng, max_terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A random field element: a fraction of small random polynomials.
pub fn random_field_elem(rng: &mut ChaCha8Rng, max_terms: usize) -> FieldElem {
    let num = random_poly(rng, max_terms);
    let den = random_nonzero_poly(rng, 2);
    FieldElem::new(num, den).expect("nonzero denominator")
}

/// A nonzero random field element.
pub fn random_nonzero_field_elem(rng: &mut ChaCha8Rng, max_terms: usize) -> FieldElem {
    loop {
        let x = random_field_elem(rng, max_terms);
        if !x.is_zero() {
            return x;
        }
    }
}

/// A random unimodular 2×2 matrix over the field: a product of
/// `factors` elementary shears and diagonal monomial matrices.
pub fn random_sl2_field(rng: &mut ChaCha8Rng, factors: usize) -> Matrix<FieldElem> {
    let budget = Budget::unlimited();
    let one = FieldElem::one();
    let zero = FieldElem::zero();
    let mut acc = Matrix::identity(2);
    for _ in 0..factors.max(1) {
        let factor = match rng.gen_range(0u8..3) {
            0 => {
                let x = random_field_elem(rng, 2);
                Matrix::from_rows(alloc::vec![
                    alloc::vec![one.clone(), x],
                    alloc::vec![zero.clone(), one.clone()],
                ])
                .expect("shape")
            }
            1 => {
                let y = random_field_elem(rng, 2);
                Matrix::from_rows(alloc::vec![
                    alloc::vec![one.clone(), zero.clone()],
                    alloc::vec![y, one.clone()],
                ])
                .expect("shape")
            }
            _ => {
                let c = Rat::from_integer(rng.gen_range(1i64..=4).into());
                let e = random_exponent(rng);
                let m = FieldElem::monomial(c, e);
                let m_inv = m.inverse().expect("monomial is nonzero");
                Matrix::from_rows(alloc::vec![
                    alloc::vec![m, zero.clone()],
                    alloc::vec![zero.clone(), m_inv],
                ])
                .expect("shape")
            }
        };
        acc = acc.mul(&factor, &budget).expect("2x2 product");
    }
    acc
}

/// A rotation matrix with uniform angle.
pub fn random_rotation(rng: &mut ChaCha8Rng) -> Matrix<f64> {
    let theta = rng.gen_range(0.0..core::f64::consts::TAU);
    let (s, c) = (libm::sin(theta), libm::cos(theta));
    Matrix::from_rows(alloc::vec![alloc::vec![c, -s], alloc::vec![s, c]]).expect("shape")
}

/// A symmetric positive unimodular matrix R·diag(λ, 1/λ)·Rᵗ.
pub fn random_symmetric_sl2(rng: &mut ChaCha8Rng) -> Matrix<f64> {
    let lambda = rng.gen_range(1.1..3.0);
    let r = random_rotation(rng);
    let budget = Budget::unlimited();
    let d = Matrix::from_rows(alloc::vec![
        alloc::vec![lambda, 0.0],
        alloc::vec![0.0, 1.0 / lambda],
    ])
    .expect("shape");
    r.mul(&d, &budget)
        .and_then(|m| m.mul(&r.transpose(), &budget))
        .expect("2x2 product")
}

/// A random minimal SL(2) tuple: each generator is symmetric or a
/// rotation (both contribute zero to the minimality residuals, so the
/// tuple is a minimal vector exactly).
pub fn random_minimal_sl2_rep(rng: &mut ChaCha8Rng, f: usize) -> Representation<f64> {
    let mut gens = BTreeMap::new();
    for i in 0..f {
        let name = generator_name(i);
        let m = if rng.gen_bool(0.5) {
            random_symmetric_sl2(rng)
        } else {
            random_rotation(rng)
        };
        gens.insert(name, m);
    }
    Representation::new(2, gens, true).expect("determinants are one")
}

/// Generator names a, b, c, … then g10, g11, ….
pub fn generator_name(i: usize) -> String {
    if i < 26 {
        let c = (b'a' + i as u8) as char;
        let mut s = String::new();
        s.push(c);
        s
    } else {
        alloc::format!("g{i}")
    }
}
