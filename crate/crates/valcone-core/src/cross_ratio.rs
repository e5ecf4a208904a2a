//! Cross-ratios of partial flags and the period identity.
//!
//! A flag pairs a k-plane with a containing (d−k)-plane; the k-th
//! multiplicative cross-ratio of four flags is a ratio of top-form
//! determinants, independent of the chosen spanning columns.  Its
//! symmetrized base-t² logarithm is an exact rational, and for an element
//! with fixed attracting and repelling flags the period
//! [γ₋, x, γ·x, γ₊] recovers log_t χ_k of the Jordan projection.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::matrix_algebra::{top_form, Budget, GroupWord, Matrix, MatrixError, Representation};
use crate::puiseux_field::{FieldElem, PuiseuxError, Rat, Valuation};
use crate::valued_spectra::{is_proximal, jordan_vector, Proximality, SpectraError};

/// Errors from flag and cross-ratio computations.
#[derive(Clone, Debug, PartialEq)]
pub enum CrossRatioError {
    /// Underlying matrix arithmetic failed.
    Matrix(MatrixError),
    /// Underlying field arithmetic failed.
    Field(PuiseuxError),
    /// Underlying spectral computation failed.
    Spectra(SpectraError),
    /// A spanning-column matrix does not describe a flag.
    InvalidFlag(String),
    /// One of the four pairing determinants vanishes.
    NotTransverse,
    /// The cross-ratio product is not in the positive range the caller
    /// asserted (or is negative, where the log is undefined).
    NotPositive,
    /// The element has no certified eigenvalue-modulus gap.
    NotProximal,
    /// The supplied flags are not fixed by the element.
    FixedFlagMismatch,
    /// The eigenline system has no exact solution in the field.
    NotExactlySolvable,
}

impl From<MatrixError> for CrossRatioError {
    fn from(e: MatrixError) -> Self {
        CrossRatioError::Matrix(e)
    }
}

impl From<PuiseuxError> for CrossRatioError {
    fn from(e: PuiseuxError) -> Self {
        CrossRatioError::Field(e)
    }
}

impl From<SpectraError> for CrossRatioError {
    fn from(e: SpectraError) -> Self {
        CrossRatioError::Spectra(e)
    }
}

impl fmt::Display for CrossRatioError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrossRatioError::Matrix(e) => write!(f, "{e}"),
            CrossRatioError::Field(e) => write!(f, "{e}"),
            CrossRatioError::Spectra(e) => write!(f, "{e}"),
            CrossRatioError::InvalidFlag(msg) => write!(f, "invalid flag: {msg}"),
            CrossRatioError::NotTransverse => write!(f, "flags are not transverse"),
            CrossRatioError::NotPositive => {
                write!(f, "cross-ratio product is not positive as asserted")
            }
            CrossRatioError::NotProximal => write!(f, "element is not certified proximal"),
            CrossRatioError::FixedFlagMismatch => {
                write!(f, "supplied flags are not fixed by the element")
            }
            CrossRatioError::NotExactlySolvable => {
                write!(f, "eigenlines are not exactly solvable in the field")
            }
        }
    }
}

/// A partial flag: a k-plane inside a (d−k)-plane, each given by spanning
/// columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Flag {
    small: Matrix<FieldElem>,
    big: Matrix<FieldElem>,
}

/// Exact column rank by Gaussian elimination; field division is exact.
fn rank(m: &Matrix<FieldElem>) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = 0usize;
    for j in 0..cols {
        let pivot = (r..rows).find(|&i| !a.at(i, j).is_zero());
        let Some(p) = pivot else { continue };
        if p != r {
            for c in 0..cols {
                let tmp = a.at(p, c).clone();
                *a.at_mut(p, c) = a.at(r, c).clone();
                *a.at_mut(r, c) = tmp;
            }
        }
        let inv = a
            .at(r, j)
            .inverse()
            .expect("pivot is nonzero");
        for i in r + 1..rows {
            if a.at(i, j).is_zero() {
                continue;
            }
            let factor = &(a.at(i, j) * &inv);
            for c in j..cols {
                let delta = a.at(r, c) * factor;
                *a.at_mut(i, c) = a.at(i, c) - &delta;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

fn rank_is(m: &Matrix<FieldElem>, r: usize) -> Result<bool, CrossRatioError> {
    Ok(m.cols() == r && rank(m) == r)
}

/// Horizontal concatenation [left | right].
fn augment(left: &Matrix<FieldElem>, right: &Matrix<FieldElem>) -> Matrix<FieldElem> {
    debug_assert_eq!(left.rows(), right.rows());
    let rows = left.rows();
    let cols = left.cols() + right.cols();
    let mut data = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        for j in 0..left.cols() {
            data.push(left.at(i, j).clone());
        }
        for j in 0..right.cols() {
            data.push(right.at(i, j).clone());
        }
    }
    Matrix::new(rows, cols, data).expect("shape by construction")
}

/// Whether span(inner) ⊆ span(outer), with outer of full column rank.
fn span_contained(
    inner: &Matrix<FieldElem>,
    outer: &Matrix<FieldElem>,
) -> Result<bool, CrossRatioError> {
    Ok(rank(&augment(outer, inner)) == outer.cols())
}

/// Whether two full-column-rank matrices span the same subspace.
fn span_equal(u: &Matrix<FieldElem>, v: &Matrix<FieldElem>) -> Result<bool, CrossRatioError> {
    if u.cols() != v.cols() {
        return Ok(false);
    }
    span_contained(u, v)
}

impl Flag {
    /// Validates spanning columns into a flag: `small` is d×k of rank k,
    /// `big` is d×(d−k) of rank d−k, and span(small) ⊆ span(big).
    pub fn new(small: Matrix<FieldElem>, big: Matrix<FieldElem>) -> Result<Flag, CrossRatioError> {
        let d = small.rows();
        let k = small.cols();
        if d != big.rows() {
            return Err(CrossRatioError::InvalidFlag(format!(
                "small has {d} rows but big has {}",
                big.rows()
            )));
        }
        if k == 0 || k >= d {
            return Err(CrossRatioError::InvalidFlag(format!(
                "k must satisfy 0 < k < d, got k = {k}, d = {d}"
            )));
        }
        if big.cols() != d - k {
            return Err(CrossRatioError::InvalidFlag(format!(
                "big must have d − k = {} columns, got {}",
                d - k,
                big.cols()
            )));
        }
        if !rank_is(&small, k)? {
            return Err(CrossRatioError::InvalidFlag(
                "small columns are dependent".into(),
            ));
        }
        if !rank_is(&big, d - k)? {
            return Err(CrossRatioError::InvalidFlag(
                "big columns are dependent".into(),
            ));
        }
        if !span_contained(&small, &big)? {
            return Err(CrossRatioError::InvalidFlag(
                "span(small) is not contained in span(big)".into(),
            ));
        }
        Ok(Flag { small, big })
    }

    /// The line flag in dimension 2: small = big = the given column.
    pub fn line(column: Vec<FieldElem>) -> Result<Flag, CrossRatioError> {
        let d = column.len();
        let m = Matrix::new(d, 1, column).expect("column shape");
        Flag::new(m.clone(), m)
    }

    /// The k-plane spanning columns.
    pub fn small(&self) -> &Matrix<FieldElem> {
        &self.small
    }

    /// The (d−k)-plane spanning columns.
    pub fn big(&self) -> &Matrix<FieldElem> {
        &self.big
    }

    /// Ambient dimension d.
    pub fn d(&self) -> usize {
        self.small.rows()
    }

    /// Flag type k.
    pub fn k(&self) -> usize {
        self.small.cols()
    }

    /// The image flag g·(a, A).
    pub fn apply(&self, g: &Matrix<FieldElem>, budget: &Budget) -> Result<Flag, CrossRatioError> {
        let small = g.mul(&self.small, budget)?;
        let big = g.mul(&self.big, budget)?;
        Flag::new(small, big)
    }

    /// Whether both constituent spans coincide with the other flag's.
    pub fn same_spans(&self, other: &Flag) -> Result<bool, CrossRatioError> {
        Ok(span_equal(&self.small, &other.small)? && span_equal(&self.big, &other.big)?)
    }
}

/// An exact cross-ratio value together with its base-t logarithm where
/// defined (positive values only).
#[derive(Clone, Debug, PartialEq)]
pub struct CrossRatioValue {
    /// The exact field value (nonzero).
    pub value: FieldElem,
    /// log_t(value) = the leading exponent, defined for positive values.
    pub log_value: Option<Rat>,
}

fn log_t(x: &FieldElem) -> Option<Rat> {
    if x.sign() <= 0 {
        return None;
    }
    match x.val() {
        Valuation::Finite(v) => Some(-v),
        Valuation::Infinite => None,
    }
}

/// The k-th multiplicative cross-ratio of four flags:
///
///   cr_k(f1, f2, f3, f4) = (ā∧C̄)(d̄∧B̄) / (ā∧B̄)(d̄∧C̄)
///
/// where lowercase is the k-plane of the flag, uppercase the (d−k)-plane,
/// and ∧ the top-form determinant of the juxtaposed columns.  Every wedge
/// must be nonzero; changing spanning columns rescales numerator and
/// denominator alike.
pub fn cr_k(
    f1: &Flag,
    f2: &Flag,
    f3: &Flag,
    f4: &Flag,
    budget: &Budget,
) -> Result<CrossRatioValue, CrossRatioError> {
    let _ = budget;
    for f in [f2, f3, f4] {
        if f.d() != f1.d() || f.k() != f1.k() {
            return Err(CrossRatioError::InvalidFlag(format!(
                "mixed flag types: (d, k) = ({}, {}) vs ({}, {})",
                f1.d(),
                f1.k(),
                f.d(),
                f.k()
            )));
        }
    }
    let a_c = top_form(f1.small(), f3.big())?;
    let d_b = top_form(f4.small(), f2.big())?;
    let a_b = top_form(f1.small(), f2.big())?;
    let d_c = top_form(f4.small(), f3.big())?;
    if a_c.is_zero() || d_b.is_zero() || a_b.is_zero() || d_c.is_zero() {
        return Err(CrossRatioError::NotTransverse);
    }
    let value = &(&a_c * &d_b) / &(&a_b * &d_c);
    let log_value = log_t(&value);
    Ok(CrossRatioValue { value, log_value })
}

/// The symmetrized logarithmic cross-ratio
///
///   (1/2)·log_t( cr_k(f1,f2,f3,f4) · cr_k(f3,f4,f1,f2) ),
///
/// an exact rational.  The product must be positive for the log to exist;
/// with `assert_positive` the stricter condition product > 1 is enforced
/// (the positivity convention for oriented configurations).
pub fn sym_log_cr(
    f1: &Flag,
    f2: &Flag,
    f3: &Flag,
    f4: &Flag,
    assert_positive: bool,
    budget: &Budget,
) -> Result<Rat, CrossRatioError> {
    let first = cr_k(f1, f2, f3, f4, budget)?;
    let second = cr_k(f3, f4, f1, f2, budget)?;
    let product = &first.value * &second.value;
    if product.sign() <= 0 {
        return Err(CrossRatioError::NotPositive);
    }
    if assert_positive && product <= FieldElem::one() {
        return Err(CrossRatioError::NotPositive);
    }
    let log = log_t(&product).expect("positive product has a leading exponent");
    Ok(log / Rat::from_integer(2.into()))
}

/// log_t χ_k(J(g)) = Σ_{i≤k} L_i − Σ_{i>d−k} L_i with L the Jordan
/// vector: the k-th multiplicative character of the Jordan projection,
/// in logarithmic form.
pub fn chi_k_log(
    g: &Matrix<FieldElem>,
    k: usize,
    budget: &Budget,
) -> Result<Rat, CrossRatioError> {
    let d = g.rows();
    if k == 0 || k >= d {
        return Err(CrossRatioError::InvalidFlag(format!(
            "character index k must satisfy 0 < k < d, got k = {k}, d = {d}"
        )));
    }
    let coords = jordan_vector(g, budget)?;
    let coords = coords.coords();
    let mut acc = Rat::zero();
    for c in &coords[..k] {
        acc = acc + c;
    }
    for c in &coords[d - k..] {
        acc = acc - c;
    }
    Ok(acc)
}

/// The period of γ against an auxiliary flag:
///
///   per(γ) = sym_log_cr(γ₋, x, ρ(γ)·x, γ₊),
///
/// after certifying that ρ(γ) is proximal for the flag type and actually
/// fixes the supplied attracting and repelling flags.  For proximal γ the
/// value equals [`chi_k_log`] of ρ(γ); the two routes stay separate so the
/// identity is checkable.
pub fn period(
    rep: &Representation<FieldElem>,
    gamma: &GroupWord,
    attracting: &Flag,
    repelling: &Flag,
    x: &Flag,
    budget: &Budget,
) -> Result<Rat, CrossRatioError> {
    let g = rep.eval_word(gamma, budget)?;
    let d = g.rows();
    let k = attracting.k();
    if repelling.k() != k || x.k() != k || attracting.d() != d || repelling.d() != d || x.d() != d
    {
        return Err(CrossRatioError::InvalidFlag(
            "period flags must share the element's dimension and type".into(),
        ));
    }
    let mut i_set = alloc::vec![k];
    if d - k != k {
        i_set.push(d - k);
    }
    match is_proximal(&g, &i_set, budget)? {
        Proximality::Proximal => {}
        _ => return Err(CrossRatioError::NotProximal),
    }
    for flag in [attracting, repelling] {
        let image = flag.apply(&g, budget)?;
        if !image.same_spans(flag)? {
            return Err(CrossRatioError::FixedFlagMismatch);
        }
    }
    let gx = x.apply(&g, budget)?;
    sym_log_cr(repelling, x, &gx, attracting, false, budget)
}

/// Exact attracting and repelling eigenline flags of a 2×2 unimodular
/// matrix, where the discriminant tr² − 4 has an exact square root in the
/// field and the eigenvalue moduli differ.
pub fn fixed_flags(
    g: &Matrix<FieldElem>,
    budget: &Budget,
) -> Result<(Flag, Flag), CrossRatioError> {
    if g.rows() != 2 || g.cols() != 2 {
        return Err(CrossRatioError::InvalidFlag(format!(
            "exact eigenline solve is limited to 2×2, got {}×{}",
            g.rows(),
            g.cols()
        )));
    }
    let _ = budget;
    let tr = g.trace()?;
    let disc = &(&tr * &tr) - &FieldElem::from_int(4);
    let sqrt = match disc.sqrt_exact() {
        Ok(s) => s,
        Err(PuiseuxError::Negative) => return Err(CrossRatioError::NotProximal),
        Err(PuiseuxError::NotExactSquare) => return Err(CrossRatioError::NotExactlySolvable),
        Err(e) => return Err(CrossRatioError::Field(e)),
    };
    let half = FieldElem::from_rat(Rat::new(1.into(), 2.into()));
    let lambda_plus = &(&tr + &sqrt) * &half;
    let lambda_minus = &(&tr - &sqrt) * &half;
    let (attracting_val, repelling_val) =
        match lambda_plus.abs().cmp(&lambda_minus.abs()) {
            core::cmp::Ordering::Greater => (lambda_plus, lambda_minus),
            core::cmp::Ordering::Less => (lambda_minus, lambda_plus),
            core::cmp::Ordering::Equal => return Err(CrossRatioError::NotProximal),
        };
    let attracting = eigenline(g, &attracting_val)?;
    let repelling = eigenline(g, &repelling_val)?;
    Ok((attracting, repelling))
}

/// A nonzero solution of (g − λ)v = 0 for a known exact eigenvalue λ of a
/// 2×2 matrix.
fn eigenline(g: &Matrix<FieldElem>, lambda: &FieldElem) -> Result<Flag, CrossRatioError> {
    let g11 = g.at(0, 0);
    let g12 = g.at(0, 1);
    let g21 = g.at(1, 0);
    let g22 = g.at(1, 1);
    let v = if !g12.is_zero() {
        alloc::vec![g12.clone(), lambda - g11]
    } else if !g21.is_zero() {
        alloc::vec![lambda - g22, g21.clone()]
    } else if g11 == lambda {
        alloc::vec![FieldElem::one(), FieldElem::zero()]
    } else {
        alloc::vec![FieldElem::zero(), FieldElem::one()]
    };
    Flag::line(v)
}
