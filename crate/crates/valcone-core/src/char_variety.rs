//! Character-variety coordinates and minimal vectors.
//!
//! Trace coordinates of words up to length 2ⁿ−1 separate closed conjugation
//! orbits of representation tuples; the minimal-vector condition
//! ⟨[X_i, A_j], A_j⟩ = 0 (against a basis X_i of symmetric traceless
//! matrices) picks out the points where the orbit is closed.  This module
//! computes both exactly over the field, runs a numeric descent flow to a
//! minimal vector for real tuples, evaluates the norm-versus-trace
//! inequality ratio exactly, and decides whether a minimal field
//! representation witnesses a non-Archimedean (closed boundary) point.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::matrix_algebra::{Budget, GroupWord, Matrix, MatrixError, Representation, Scalar};
use crate::puiseux_field::{FieldElem, Rat, Valuation};
use crate::valued_spectra::{jordan_vector, SpectraError};

/// Default cap on the matrix size n for trace-coordinate enumeration; the
/// word count grows like (2f)^(2ⁿ−1).
pub const DEFAULT_SIZE_CAP: usize = 4;

/// Errors from character-variety computations.
#[derive(Clone, Debug, PartialEq)]
pub enum CharVarError {
    /// Underlying matrix arithmetic failed.
    Matrix(MatrixError),
    /// Underlying spectral computation failed.
    Spectra(SpectraError),
    /// A complexity cap was exceeded (matrix size or term budget).
    BudgetExceeded {
        /// Reached amount.
        used: u64,
        /// Configured limit.
        limit: u64,
    },
    /// The representation is not (close enough to) a minimal vector.
    NotMinimal,
    /// The descent flow hit its iteration limit; the best iterate is
    /// carried along.
    NoConvergence(Box<MinimizeOutcome>),
    /// The operation requires a specific matrix size.
    UnsupportedSize(String),
    /// Two theoretically equivalent routes disagreed; this is a defect
    /// report, never a value.
    CrossCheckFailed(String),
}

impl From<MatrixError> for CharVarError {
    fn from(e: MatrixError) -> Self {
        match e {
            MatrixError::BudgetExceeded { used, limit } => {
                CharVarError::BudgetExceeded { used, limit }
            }
            other => CharVarError::Matrix(other),
        }
    }
}

impl From<SpectraError> for CharVarError {
    fn from(e: SpectraError) -> Self {
        CharVarError::Spectra(e)
    }
}

impl fmt::Display for CharVarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharVarError::Matrix(e) => write!(f, "{e}"),
            CharVarError::Spectra(e) => write!(f, "{e}"),
            CharVarError::BudgetExceeded { used, limit } => {
                write!(f, "budget exceeded: {used} > {limit}")
            }
            CharVarError::NotMinimal => write!(f, "representation is not a minimal vector"),
            CharVarError::NoConvergence(outcome) => write!(
                f,
                "descent flow did not converge: residual {} after {} iterations",
                outcome.report.max_abs, outcome.iterations
            ),
            CharVarError::UnsupportedSize(msg) => write!(f, "unsupported size: {msg}"),
            CharVarError::CrossCheckFailed(msg) => write!(f, "cross-check failed: {msg}"),
        }
    }
}

/// Trace coordinates: one exact trace per cyclic word class.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceCoordinates<T> {
    /// Canonical cyclic representative → trace of its image.
    pub entries: BTreeMap<GroupWord, T>,
}

/// Residuals of the minimal-vector condition against the standard basis
/// of symmetric traceless matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct MinimalityReport<T> {
    /// r_i = Σ_j tr([X_i, A_j]ᵗ A_j) in basis order.
    pub residuals: Vec<T>,
    /// max_i |r_i|; the tuple is a minimal vector iff this vanishes.
    pub max_abs: T,
    /// The basis X_1..X_m used (diagonal differences then symmetric
    /// off-diagonal pairs).
    pub basis: Vec<Matrix<T>>,
}

/// The standard basis of symmetric traceless n×n matrices: the n−1
/// consecutive diagonal differences E_ii − E_{i+1,i+1}, then the
/// off-diagonal symmetric pairs E_ij + E_ji for i < j.
pub fn symmetric_traceless_basis<T: Scalar>(n: usize) -> Vec<Matrix<T>> {
    let mut out = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let mut m = Matrix::identity(n).scale(&T::zero());
        *m.at_mut(i, i) = T::one();
        *m.at_mut(i + 1, i + 1) = -T::one();
        out.push(m);
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut m = Matrix::identity(n).scale(&T::zero());
            *m.at_mut(i, j) = T::one();
            *m.at_mut(j, i) = T::one();
            out.push(m);
        }
    }
    out
}

/// Traces of all cyclic word classes of length ≤ 2ⁿ−1 over the
/// representation's alphabet, exact over the scalar.
///
/// `size_cap` bounds n itself, since the word count explodes with 2ⁿ−1;
/// exceeding it reports `BudgetExceeded` like any other blown budget.
pub fn trace_coordinates<T: Scalar>(
    rep: &Representation<T>,
    size_cap: usize,
    budget: &Budget,
) -> Result<TraceCoordinates<T>, CharVarError> {
    let n = rep.n();
    if n > size_cap {
        return Err(CharVarError::BudgetExceeded {
            used: n as u64,
            limit: size_cap as u64,
        });
    }
    let max_len = (1usize << n) - 1;
    let mut entries = BTreeMap::new();
    for word in rep.words_up_to(max_len) {
        let image = rep.eval_word(&word, budget)?;
        entries.insert(word, image.trace()?);
    }
    Ok(TraceCoordinates { entries })
}

/// Evaluates the minimal-vector residuals r_i = Σ_j tr([X_i, A_j]ᵗ A_j)
/// of the generator tuple against [`symmetric_traceless_basis`].
pub fn minimality_residual<T: Scalar>(rep: &Representation<T>) -> MinimalityReport<T> {
    let n = rep.n();
    let basis = symmetric_traceless_basis::<T>(n);
    let budget = Budget::unlimited();
    let mut residuals = Vec::with_capacity(basis.len());
    for x in &basis {
        let mut r = T::zero();
        for name in rep.names() {
            let a = rep.generator(name).expect("name from iterator");
            let xa = x.mul(a, &budget).expect("square shapes");
            let ax = a.mul(x, &budget).expect("square shapes");
            let comm = xa.sub(&ax).expect("same shape");
            let prod = comm.transpose().mul(a, &budget).expect("square shapes");
            r = r + prod.trace().expect("square");
        }
        residuals.push(r);
    }
    let max_abs = residuals
        .iter()
        .map(Scalar::abs)
        .max_by(|a, b| a.cmp_abs(b))
        .unwrap_or_else(T::zero);
    MinimalityReport {
        residuals,
        max_abs,
        basis,
    }
}

/// Outcome of the numeric minimal-vector flow.
#[derive(Clone, Debug, PartialEq)]
pub struct MinimizeOutcome {
    /// The final (best) conjugated representation.
    pub rep: Representation<f64>,
    /// Residual report at the final tuple.
    pub report: MinimalityReport<f64>,
    /// Accepted descent steps taken.
    pub iterations: usize,
    /// Final squared norm Σ_j tr(A_jᵗ A_j).
    pub norm_sq: f64,
    /// Whether the residual tolerance was reached.
    pub converged: bool,
}

/// Squared norm of the generator tuple: Σ_j tr(A_jᵗ A_j).
pub fn tuple_norm_sq<T: Scalar>(rep: &Representation<T>) -> T {
    let budget = Budget::unlimited();
    let mut acc = T::zero();
    for name in rep.names() {
        let a = rep.generator(name).expect("name from iterator");
        let prod = a.transpose().mul(a, &budget).expect("square shapes");
        acc = acc + prod.trace().expect("square");
    }
    acc
}

/// Gradient descent toward a minimal vector: conjugates the tuple by
/// exp(±εX) with X = Σ_i r_i X_i, backtracking on ε until the squared
/// norm stops increasing, until the residual drops below `tol`.
///
/// Conjugation preserves every trace coordinate; the squared norm is
/// non-increasing across accepted steps.  Acceptance is non-strict: near
/// the minimum the true decrease per step is about 2ε·‖r‖², which falls
/// below one ulp of the norm long before the residual reaches useful
/// tolerances, so demanding a strictly smaller float would stall the flow
/// while it is still contracting.  Non-reductive representations have no
/// minimal vector in their orbit, so the flow reports `NoConvergence` and
/// hands back the best iterate.
pub fn minimize_real(
    rep: &Representation<f64>,
    step: f64,
    tol: f64,
    max_iters: usize,
) -> Result<MinimizeOutcome, CharVarError> {
    assert!(step > 0.0 && tol > 0.0, "step and tolerance must be positive");
    let mut current = rep.clone();
    let mut norm_sq = tuple_norm_sq(&current);
    let mut iterations = 0usize;
    loop {
        let report = minimality_residual(&current);
        if report.max_abs <= tol {
            return Ok(MinimizeOutcome {
                rep: current,
                report,
                iterations,
                norm_sq,
                converged: true,
            });
        }
        if iterations >= max_iters {
            return Err(CharVarError::NoConvergence(Box::new(MinimizeOutcome {
                rep: current,
                report,
                iterations,
                norm_sq,
                converged: false,
            })));
        }
        let n = current.n();
        let mut x = Matrix::<f64>::identity(n).scale(&0.0);
        for (r, b) in report.residuals.iter().zip(report.basis.iter()) {
            x = x.add(&b.scale(r)).expect("same shape");
        }
        let mut eps = step;
        let mut accepted = false;
        for _ in 0..60 {
            let forward = expm_symmetric(&x.scale(&eps));
            let backward = expm_symmetric(&x.scale(&-eps));
            let budget = Budget::unlimited();
            let candidate = current.map(|a| {
                backward
                    .mul(a, &budget)
                    .and_then(|m| m.mul(&forward, &budget))
                    .expect("square shapes")
            });
            let cand_norm = tuple_norm_sq(&candidate);
            if cand_norm <= norm_sq {
                current = candidate;
                norm_sq = cand_norm;
                accepted = true;
                break;
            }
            eps *= 0.5;
        }
        if !accepted {
            let report = minimality_residual(&current);
            return Err(CharVarError::NoConvergence(Box::new(MinimizeOutcome {
                rep: current,
                report,
                iterations,
                norm_sq,
                converged: false,
            })));
        }
        iterations += 1;
    }
}

/// Matrix exponential of a symmetric matrix via Jacobi eigendecomposition.
fn expm_symmetric(x: &Matrix<f64>) -> Matrix<f64> {
    let n = x.rows();
    let (eigenvalues, q) = jacobi_eigen(x);
    // Q · diag(e^λ) · Qᵗ.
    let mut out = Matrix::<f64>::identity(n).scale(&0.0);
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0.0;
            for k in 0..n {
                acc += *q.at(i, k) * libm::exp(eigenvalues[k]) * *q.at(j, k);
            }
            *out.at_mut(i, j) = acc;
        }
    }
    out
}

/// Cyclic Jacobi eigendecomposition of a symmetric matrix: returns the
/// eigenvalues and the orthogonal matrix of eigenvector columns.
fn jacobi_eigen(x: &Matrix<f64>) -> (Vec<f64>, Matrix<f64>) {
    let n = x.rows();
    let mut a = x.clone();
    let mut q = Matrix::<f64>::identity(n);
    for _ in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off += a.at(i, j) * a.at(i, j);
                }
            }
        }
        if off < 1e-28 {
            break;
        }
        for p in 0..n {
            for r in p + 1..n {
                let apr = *a.at(p, r);
                if apr.abs() < 1e-300 {
                    continue;
                }
                let app = *a.at(p, p);
                let arr = *a.at(r, r);
                let theta = (arr - app) / (2.0 * apr);
                let t = {
                    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sign / (theta.abs() + libm::sqrt(theta * theta + 1.0))
                };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..n {
                    let akp = *a.at(k, p);
                    let akr = *a.at(k, r);
                    *a.at_mut(k, p) = c * akp - s * akr;
                    *a.at_mut(k, r) = s * akp + c * akr;
                }
                for k in 0..n {
                    let apk = *a.at(p, k);
                    let ark = *a.at(r, k);
                    *a.at_mut(p, k) = c * apk - s * ark;
                    *a.at_mut(r, k) = s * apk + c * ark;
                }
                for k in 0..n {
                    let qkp = *q.at(k, p);
                    let qkr = *q.at(k, r);
                    *q.at_mut(k, p) = c * qkp - s * qkr;
                    *q.at_mut(k, r) = s * qkp + c * qkr;
                }
            }
        }
    }
    let eigenvalues = (0..n).map(|i| *a.at(i, i)).collect();
    (eigenvalues, q)
}

/// All distinct nonempty reduced words of length ≤ `max_len` over the
/// representation's alphabet (as group elements, not cyclic classes).
fn reduced_words_up_to<T: Scalar>(rep: &Representation<T>, max_len: usize) -> Vec<GroupWord> {
    let alphabet = rep.alphabet();
    let mut seen: BTreeSet<Vec<(String, i8)>> = BTreeSet::new();
    let mut out = Vec::new();
    let mut frontier = alloc::vec![GroupWord::identity()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for a in &alphabet {
                let c = w.concat(a);
                if c.free_reduce().len() != c.len() {
                    continue;
                }
                if seen.insert(c.letters().to_vec()) {
                    out.push(c.clone());
                }
                next.push(c);
            }
        }
        frontier = next;
    }
    out.sort();
    out
}

/// Exact norm-versus-trace inequality ratio for n = 2 tuples at a minimal
/// vector:
///
///   ‖g‖^(2m) / [ n^m · (Σ_{w∈E} tr(w)^(2m/l(w)))^(2(n−1)) ]
///
/// with m = lcm{1, …, 2ⁿ−1} = 6 and E the nonempty reduced words of
/// length ≤ 3 over the alphabet.  The exponents 2m/l(w) are even, so every
/// summand is non-negative and the ratio is finite and exact; the theorem
/// bounds it uniformly over all minimal tuples, which the tests probe
/// empirically.
pub fn trace_inequality_ratio(rep: &Representation<f64>) -> Result<Rat, CharVarError> {
    if rep.n() != 2 {
        return Err(CharVarError::UnsupportedSize(format!(
            "trace inequality ratio is implemented for n = 2, got n = {}",
            rep.n()
        )));
    }
    let report = minimality_residual(rep);
    if report.max_abs > 1e-8 {
        return Err(CharVarError::NotMinimal);
    }
    let exact = rep.map(|m| m.map(|x| rat_from_f64(*x)));
    let m = 6u32;
    let norm_sq = tuple_norm_sq(&exact);
    let numerator = rat_pow(&norm_sq, m);
    let budget = Budget::unlimited();
    let mut sum = Rat::zero();
    for w in reduced_words_up_to(&exact, 3) {
        let tr = exact.eval_word(&w, &budget)?.trace()?;
        let exponent = 2 * m / (w.len() as u32);
        sum = sum + rat_pow(&tr, exponent);
    }
    let n_pow_m = Rat::from_integer(BigInt::from(64));
    let denominator = n_pow_m * rat_pow(&sum, 2);
    if denominator.is_zero() {
        return Err(CharVarError::CrossCheckFailed(
            "trace sum vanished on a nonempty alphabet".into(),
        ));
    }
    Ok(numerator / denominator)
}

fn rat_from_f64(x: f64) -> Rat {
    Ratio::from_float(x).expect("finite float converts exactly")
}

fn rat_pow(r: &Rat, p: u32) -> Rat {
    Ratio::new(r.numer().pow(p), r.denom().pow(p))
}

/// Decides whether a minimal field representation sits over a
/// non-Archimedean boundary point: true iff Σ_{γ∈F} tr(ρ(γ)ρ(γ)ᵗ) is a
/// big element (val < 0), where F is the representation's alphabet.
///
/// The verdict is cross-checked against the equivalent criterion that
/// some word of length ≤ 2ⁿ−1 has a nonzero Jordan vector; a disagreement
/// is reported as an error rather than resolved silently.
pub fn closed_point_witness(
    rep: &Representation<FieldElem>,
    budget: &Budget,
) -> Result<bool, CharVarError> {
    let report = minimality_residual(rep);
    if !report.max_abs.is_zero() {
        return Err(CharVarError::NotMinimal);
    }
    let mut sum = FieldElem::zero();
    for w in rep.alphabet() {
        let g = rep.eval_word(&w, budget)?;
        let prod = g.mul(&g.transpose(), budget)?;
        sum = &sum + &prod.trace()?;
    }
    let big = matches!(sum.val(), Valuation::Finite(v) if v.is_negative());
    let max_len = (1usize << rep.n()) - 1;
    let mut positive_length = false;
    for w in rep.words_up_to(max_len) {
        let g = rep.eval_word(&w, budget)?;
        if !jordan_vector(&g, budget)?.is_zero() {
            positive_length = true;
            break;
        }
    }
    if big != positive_length {
        return Err(CharVarError::CrossCheckFailed(format!(
            "trace-sum valuation route says {big}, word-length route says {positive_length}"
        )));
    }
    Ok(big)
}
