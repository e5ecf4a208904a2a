//! Valuation-level spectral data: Newton polygons, Jordan and Cartan
//! projection vectors, Weyl-invariant norms, and proximality.
//!
//! For g in SL(n) over the field, the Jordan vector collects the base-t
//! logarithms of the eigenvalue moduli (taken in the real closure), read
//! off exactly as the negated slopes of the Newton polygon of the
//! characteristic polynomial.  The Cartan vector is half the Jordan vector
//! of g·gᵗ.  Both are non-increasing and sum to zero.
//!
//! [`dedekind_cut_crosscheck`] recomputes the Cartan vector by an
//! independent route: the sums of principal k×k minors of g·gᵗ are
//! strictly positive field elements whose valuations encode the partial
//! sums of the Cartan coordinates, and their base-t logarithms are
//! bracketed by pure order queries through `log_big`.  No Newton polygon,
//! no characteristic polynomial, no floating point.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::matrix_algebra::{combinations, Budget, Matrix, MatrixError};
use crate::puiseux_field::{log_big, FieldElem, PuiseuxError, Rat, Valuation};

/// Errors from spectral computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpectraError {
    /// Underlying matrix arithmetic failed (budget, shape, …).
    Matrix(MatrixError),
    /// Underlying field arithmetic failed.
    Field(PuiseuxError),
    /// A vector violates the Weyl chamber invariants.
    InvalidWeylVector(String),
    /// A norm selector is out of range.
    InvalidNorm(String),
    /// The characteristic polynomial has a zero constant term.
    SingularMatrix,
}

impl From<MatrixError> for SpectraError {
    fn from(e: MatrixError) -> Self {
        SpectraError::Matrix(e)
    }
}

impl From<PuiseuxError> for SpectraError {
    fn from(e: PuiseuxError) -> Self {
        SpectraError::Field(e)
    }
}

impl fmt::Display for SpectraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectraError::Matrix(e) => write!(f, "{e}"),
            SpectraError::Field(e) => write!(f, "{e}"),
            SpectraError::InvalidWeylVector(msg) => write!(f, "invalid Weyl vector: {msg}"),
            SpectraError::InvalidNorm(msg) => write!(f, "invalid norm: {msg}"),
            SpectraError::SingularMatrix => write!(f, "matrix is singular"),
        }
    }
}

/// One segment of a Newton polygon's lower boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    /// Slope of the segment (valuation per unit of degree).
    pub slope: Rat,
    /// Horizontal extent, i.e. the multiplicity of the slope.
    pub length: usize,
}

/// The Newton polygon of a polynomial Σ c_i λ^i over the field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// The input points (i, val(c_i)), including infinite ones.
    pub points: Vec<(usize, Valuation)>,
    /// Lower-hull segments in increasing slope order.  The slopes are the
    /// valuations of the roots, with multiplicity equal to the length.
    pub segments: Vec<Segment>,
}

impl NewtonPolygon {
    /// Builds the polygon from coefficients c_0..c_n (constant term
    /// first).  The constant and leading coefficients must be nonzero.
    pub fn from_coeffs(coeffs: &[FieldElem]) -> Result<Self, SpectraError> {
        if coeffs.len() < 2 {
            return Err(SpectraError::InvalidWeylVector(
                "polynomial must have degree at least one".into(),
            ));
        }
        if coeffs[0].is_zero() {
            return Err(SpectraError::SingularMatrix);
        }
        if coeffs[coeffs.len() - 1].is_zero() {
            return Err(SpectraError::InvalidWeylVector(
                "leading coefficient is zero".into(),
            ));
        }
        let points: Vec<(usize, Valuation)> =
            coeffs.iter().enumerate().map(|(i, c)| (i, c.val())).collect();
        let finite: Vec<(Rat, Rat)> = points
            .iter()
            .filter_map(|(i, v)| {
                v.finite()
                    .map(|r| (Rat::from_integer(BigInt::from(*i)), r.clone()))
            })
            .collect();
        // Lower convex hull by monotone chain; infinite points never lie
        // on it.
        let mut hull: Vec<(Rat, Rat)> = Vec::new();
        for p in finite {
            while hull.len() >= 2 {
                let a = &hull[hull.len() - 2];
                let b = &hull[hull.len() - 1];
                let cross =
                    (&b.0 - &a.0) * (&p.1 - &a.1) - (&b.1 - &a.1) * (&p.0 - &a.0);
                if cross <= Rat::zero() {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        let mut segments = Vec::new();
        for w in hull.windows(2) {
            let run = &w[1].0 - &w[0].0;
            let rise = &w[1].1 - &w[0].1;
            let slope = &rise / &run;
            let length = run.to_integer().to_usize().expect("segment length fits");
            segments.push(Segment { slope, length });
        }
        Ok(NewtonPolygon { points, segments })
    }
}

/// A point of the closed Weyl chamber: coordinates non-increasing and
/// summing to zero, exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylVector {
    coords: Vec<Rat>,
}

impl WeylVector {
    /// Builds a chamber vector, validating monotonicity and zero sum.
    pub fn new(coords: Vec<Rat>) -> Result<Self, SpectraError> {
        if coords.windows(2).any(|w| w[0] < w[1]) {
            return Err(SpectraError::InvalidWeylVector(
                "coordinates must be non-increasing".into(),
            ));
        }
        let sum: Rat = coords.iter().fold(Rat::zero(), |a, b| a + b);
        if !sum.is_zero() {
            return Err(SpectraError::InvalidWeylVector(format!(
                "coordinates must sum to zero, got {sum}"
            )));
        }
        Ok(WeylVector { coords })
    }

    /// The coordinates, non-increasing.
    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    /// Dimension n.
    pub fn n(&self) -> usize {
        self.coords.len()
    }

    /// True when every coordinate is zero.
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Scales by a non-negative rational (preserves the chamber).
    pub fn scale(&self, c: &Rat) -> Self {
        assert!(!c.is_negative(), "chamber scaling must be non-negative");
        WeylVector {
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    /// Coordinates as doubles.
    pub fn to_f64s(&self) -> Vec<f64> {
        self.coords
            .iter()
            .map(|x| x.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    /// Evaluates a Weyl-invariant norm exactly.
    pub fn norm(&self, norm: &WeylNorm) -> Result<NormValue, SpectraError> {
        let v = &self.coords;
        let n = v.len();
        match norm {
            WeylNorm::Sup => {
                let m = v
                    .iter()
                    .map(Signed::abs)
                    .max()
                    .unwrap_or_else(Rat::zero);
                Ok(NormValue::Rational(m))
            }
            WeylNorm::L1 => Ok(NormValue::Rational(
                v.iter().map(Signed::abs).fold(Rat::zero(), |a, b| a + b),
            )),
            WeylNorm::Euclidean => Ok(NormValue::Radical {
                sum: v.iter().map(|x| x * x).fold(Rat::zero(), |a, b| a + b),
                p: 2,
            }),
            WeylNorm::Lp(p) => {
                if *p == 0 {
                    return Err(SpectraError::InvalidNorm("lp requires p >= 1".into()));
                }
                let sum = v
                    .iter()
                    .map(|x| rat_pow_u32(&x.abs(), *p))
                    .fold(Rat::zero(), |a, b| a + b);
                if *p == 1 {
                    Ok(NormValue::Rational(sum))
                } else {
                    Ok(NormValue::Radical { sum, p: *p })
                }
            }
            WeylNorm::Root => {
                let mut acc = Rat::zero();
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            acc = acc + (&v[i] - &v[j]).abs();
                        }
                    }
                }
                Ok(NormValue::Rational(acc))
            }
            WeylNorm::Weight(k) => {
                if *k == 0 || *k >= n {
                    return Err(SpectraError::InvalidNorm(format!(
                        "weight norm index k={k} out of range 1..{}",
                        n.saturating_sub(1)
                    )));
                }
                let top: Rat = v[..*k].iter().fold(Rat::zero(), |a, b| a + b);
                let bottom: Rat = v[n - *k..].iter().fold(Rat::zero(), |a, b| a + b);
                Ok(NormValue::Rational(top - bottom))
            }
        }
    }
}

impl fmt::Display for WeylVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Weyl-invariant norm selectors on the chamber.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum WeylNorm {
    /// Euclidean norm (an exact radical value).
    Euclidean,
    /// Max of absolute coordinates.
    Sup,
    /// Sum of absolute coordinates.
    L1,
    /// p-norm for p ≥ 1.
    Lp(u32),
    /// Sum over ordered pairs of |v_i − v_j| (twice the positive-root sum).
    Root,
    /// k-th fundamental-weight length: sum of the top k coordinates minus
    /// the bottom k.
    Weight(usize),
}

impl fmt::Display for WeylNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeylNorm::Euclidean => write!(f, "euclidean"),
            WeylNorm::Sup => write!(f, "sup"),
            WeylNorm::L1 => write!(f, "l1"),
            WeylNorm::Lp(p) => write!(f, "l{p}"),
            WeylNorm::Root => write!(f, "root"),
            WeylNorm::Weight(k) => write!(f, "weight{k}"),
        }
    }
}

/// An exactly represented norm value: a rational, or the p-th root of one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormValue {
    /// A rational value.
    Rational(Rat),
    /// The value sum^(1/p), kept under the radical to stay exact.
    Radical {
        /// The radicand (non-negative).
        sum: Rat,
        /// The root index p ≥ 2.
        p: u32,
    },
}

impl NormValue {
    /// Approximate double value.
    pub fn to_f64(&self) -> f64 {
        match self {
            NormValue::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            NormValue::Radical { sum, p } => {
                libm::pow(sum.to_f64().unwrap_or(f64::NAN), 1.0 / f64::from(*p))
            }
        }
    }

    /// True for exactly zero.
    pub fn is_zero(&self) -> bool {
        match self {
            NormValue::Rational(r) => r.is_zero(),
            NormValue::Radical { sum, .. } => sum.is_zero(),
        }
    }

    /// Rational bracket [lo, hi] of width ≤ eps containing the value.
    pub fn bracket(&self, eps: &Rat) -> (Rat, Rat) {
        match self {
            NormValue::Rational(r) => (r.clone(), r.clone()),
            NormValue::Radical { sum, p } => rat_root_bracket(sum, *p, eps),
        }
    }

    /// Whether |self − other| ≤ tol, decided by exact rational root
    /// brackets (tightened until the comparison is unambiguous, with a
    /// midpoint fallback at bracket width tol/1024).
    pub fn close_to(&self, other: &NormValue, tol: &Rat) -> bool {
        assert!(tol.is_positive(), "tolerance must be positive");
        let mut eps = tol / Rat::from_integer(BigInt::from(8));
        let floor = tol / Rat::from_integer(BigInt::from(1024));
        loop {
            let (la, ha) = self.bracket(&eps);
            let (lb, hb) = other.bracket(&eps);
            let max_diff = rat_max(&ha - &lb, &hb - &la);
            let min_diff = rat_max(rat_max(&la - &hb, &lb - &ha), Rat::zero());
            if &max_diff <= tol {
                return true;
            }
            if &min_diff > tol {
                return false;
            }
            if eps <= floor {
                let mid_a = (&la + &ha) / Rat::from_integer(BigInt::from(2));
                let mid_b = (&lb + &hb) / Rat::from_integer(BigInt::from(2));
                return &(&mid_a - &mid_b).abs() <= tol;
            }
            eps = eps / Rat::from_integer(BigInt::from(4));
        }
    }
}

impl fmt::Display for NormValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormValue::Rational(r) => write!(f, "{r}"),
            NormValue::Radical { sum, p } => write!(f, "({sum})^(1/{p})"),
        }
    }
}

fn rat_max(a: Rat, b: Rat) -> Rat {
    if a >= b {
        a
    } else {
        b
    }
}

fn rat_pow_u32(r: &Rat, p: u32) -> Rat {
    Ratio::new(r.numer().pow(p), r.denom().pow(p))
}

/// Rational bracket of s^(1/p) (s ≥ 0) by bisection, width ≤ eps.
fn rat_root_bracket(s: &Rat, p: u32, eps: &Rat) -> (Rat, Rat) {
    assert!(!s.is_negative(), "radicand must be non-negative");
    assert!(eps.is_positive());
    if s.is_zero() {
        return (Rat::zero(), Rat::zero());
    }
    let one = Rat::one();
    let mut lo = Rat::zero();
    let mut hi = if s > &one { s.clone() } else { one };
    let two = Rat::from_integer(BigInt::from(2));
    while &(&hi - &lo) > eps {
        let mid = (&lo + &hi) / &two;
        if &rat_pow_u32(&mid, p) <= s {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Jordan projection: base-t logarithms of the eigenvalue moduli of g,
/// non-increasing, summing to zero for det-one matrices.  Exact, via the
/// Newton polygon of the characteristic polynomial.
pub fn jordan_vector(
    g: &Matrix<FieldElem>,
    budget: &Budget,
) -> Result<WeylVector, SpectraError> {
    let coeffs = g.char_poly(budget)?;
    let polygon = NewtonPolygon::from_coeffs(&coeffs)?;
    let mut coords = Vec::with_capacity(g.rows());
    for seg in &polygon.segments {
        for _ in 0..seg.length {
            coords.push(-seg.slope.clone());
        }
    }
    WeylVector::new(coords)
}

/// Cartan projection: half the Jordan vector of g·gᵗ.  Encodes the
/// singular-value moduli of g at the valuation level.
pub fn cartan_vector(
    g: &Matrix<FieldElem>,
    budget: &Budget,
) -> Result<WeylVector, SpectraError> {
    let h = g.mul(&g.transpose(), budget)?;
    let j = jordan_vector(&h, budget)?;
    Ok(j.scale(&Ratio::new(BigInt::one(), BigInt::from(2))))
}

/// Translation length of g on the model space: the chosen norm of the
/// Jordan vector.
pub fn translation_length(
    g: &Matrix<FieldElem>,
    norm: &WeylNorm,
    budget: &Budget,
) -> Result<NormValue, SpectraError> {
    jordan_vector(g, budget)?.norm(norm)
}

/// Distance between the orbit points of g and h: the chosen norm of the
/// Cartan vector of g⁻¹h.  Requires determinant-one arguments.
pub fn distance(
    g: &Matrix<FieldElem>,
    h: &Matrix<FieldElem>,
    norm: &WeylNorm,
    budget: &Budget,
) -> Result<NormValue, SpectraError> {
    let g_inv = g.inverse_unimodular(budget)?;
    let rel = g_inv.mul(h, budget)?;
    cartan_vector(&rel, budget)?.norm(norm)
}

/// Outcome of a proximality test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Proximality {
    /// Strict eigenvalue-modulus gaps at every requested index.
    Proximal,
    /// Some requested gap is provably absent.
    NotProximal,
    /// A valuation tie the exact layer cannot resolve (n > 2).
    Indeterminate,
}

/// Tests I-proximality: for each i in `i_set` (1-based simple-root
/// indices), whether the i-th and (i+1)-th eigenvalue moduli differ.
///
/// A positive valuation gap decides immediately.  A tie is resolved
/// exactly for n = 2 through the sign of the discriminant and the trace;
/// for n > 2 a tie is reported as `Indeterminate` rather than guessed.
pub fn is_proximal(
    g: &Matrix<FieldElem>,
    i_set: &[usize],
    budget: &Budget,
) -> Result<Proximality, SpectraError> {
    let n = g.rows();
    for &i in i_set {
        if i == 0 || i >= n {
            return Err(SpectraError::InvalidNorm(format!(
                "proximality index {i} out of range 1..{}",
                n.saturating_sub(1)
            )));
        }
    }
    let v = jordan_vector(g, budget)?;
    let coords = v.coords();
    let mut verdict = Proximality::Proximal;
    for &i in i_set {
        let gap = &coords[i - 1] - &coords[i];
        if gap.is_positive() {
            continue;
        }
        if n == 2 {
            // Exact resolution in the real closure: the eigenvalues are
            // (tr ± √disc)/2 with product det(g) = 1; their moduli differ
            // exactly when disc > 0 and tr ≠ 0.
            let coeffs = g.char_poly(budget)?;
            let tr = -coeffs[1].clone();
            let det = coeffs[0].clone();
            let four = FieldElem::from_int(4);
            let disc = &(&tr * &tr) - &(&four * &det);
            if disc.sign() > 0 && tr.sign() != 0 {
                continue;
            }
            return Ok(Proximality::NotProximal);
        }
        verdict = Proximality::Indeterminate;
    }
    Ok(verdict)
}

/// Recomputes the Cartan vector of g by explicit Dedekind cuts and checks
/// it against the Newton-polygon route, coordinate by coordinate and in
/// the chosen norm, to within tol.
///
/// The cut route: the sum of principal k×k minors of h = g·gᵗ is a
/// strictly positive field element whose base-t logarithm is twice the
/// k-th partial sum of the Cartan coordinates; `log_big` brackets it by
/// order queries alone.  When every principal-minor sum of g itself is
/// also positive, the same check runs against the Jordan vector of g.
pub fn dedekind_cut_crosscheck(
    g: &Matrix<FieldElem>,
    norm: &WeylNorm,
    tol: &Rat,
    budget: &Budget,
) -> Result<bool, SpectraError> {
    assert!(tol.is_positive(), "tolerance must be positive");
    let h = g.mul(&g.transpose(), budget)?;
    let exact = cartan_vector(g, budget)?;
    if !cut_route_matches(&h, &exact, norm, tol, &Rat::from_integer(BigInt::from(2)))? {
        return Ok(false);
    }
    // The Jordan-side cut route reads partial sums of the Jordan vector
    // from valuations of eigenvalue-sum expressions, which is only sound
    // when no cancellation between eigenvalues can occur.  Positivity of
    // all eigenvalues rules cancellation out; it is verified exactly where
    // that is cheap and the check is skipped elsewhere.
    if eigenvalues_provably_positive(g, budget)? {
        let minor_sums = principal_minor_sums(g)?;
        let exact_j = jordan_vector(g, budget)?;
        if !cut_route_matches_sums(&minor_sums, &exact_j, norm, tol, &Rat::one())? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether all eigenvalues of g are provably positive elements of the real
/// closure: triangular with positive diagonal, or n = 2 with positive
/// trace and determinant and non-negative discriminant.
fn eigenvalues_provably_positive(
    g: &Matrix<FieldElem>,
    budget: &Budget,
) -> Result<bool, SpectraError> {
    let n = g.rows();
    let mut upper = true;
    let mut lower = true;
    for i in 0..n {
        for j in 0..n {
            if i > j && !g.at(i, j).is_zero() {
                upper = false;
            }
            if i < j && !g.at(i, j).is_zero() {
                lower = false;
            }
        }
    }
    if upper || lower {
        return Ok((0..n).all(|i| g.at(i, i).sign() > 0));
    }
    if n == 2 {
        let coeffs = g.char_poly(budget)?;
        let tr = -coeffs[1].clone();
        let det = coeffs[0].clone();
        let four = FieldElem::from_int(4);
        let disc = &(&tr * &tr) - &(&four * &det);
        return Ok(tr.sign() > 0 && det.sign() > 0 && disc.sign() >= 0);
    }
    Ok(false)
}

fn cut_route_matches(
    h: &Matrix<FieldElem>,
    exact: &WeylVector,
    norm: &WeylNorm,
    tol: &Rat,
    log_divisor: &Rat,
) -> Result<bool, SpectraError> {
    let sums = principal_minor_sums(h)?;
    cut_route_matches_sums(&sums, exact, norm, tol, log_divisor)
}

fn cut_route_matches_sums(
    minor_sums: &[FieldElem],
    exact: &WeylVector,
    norm: &WeylNorm,
    tol: &Rat,
    log_divisor: &Rat,
) -> Result<bool, SpectraError> {
    let n = exact.n();
    let t = FieldElem::t();
    let inner = tol / Rat::from_integer(BigInt::from(2 * n as i64));
    let two = Rat::from_integer(BigInt::from(2));
    // y_k ≈ (c_1 + … + c_k), from log_t of the k-th minor sum.
    let mut partial = alloc::vec![Rat::zero()];
    for s in minor_sums.iter().take(n - 1) {
        let (lo, hi) = log_big(s, &t, &inner)?;
        partial.push((&lo + &hi) / &two / log_divisor);
    }
    partial.push(Rat::zero());
    let approx: Vec<Rat> = (1..=n)
        .map(|k| &partial[k] - &partial[k - 1])
        .collect();
    for (a, c) in approx.iter().zip(exact.coords().iter()) {
        if &(a - c).abs() > tol {
            return Ok(false);
        }
    }
    // Norm-level comparison on the rational approximation; the approximate
    // vector may violate chamber order within tolerance, so sort it first.
    let mut sorted = approx;
    sorted.sort_by(|a, b| b.cmp(a));
    let shifted = zero_sum_adjust(sorted);
    let approx_vec = WeylVector::new(shifted)?;
    let norm_tol = tol * Rat::from_integer(BigInt::from(2 * n as i64));
    Ok(approx_vec
        .norm(norm)?
        .close_to(&exact.norm(norm)?, &norm_tol))
}

/// Shifts a vector by a constant to make it sum to zero exactly.
fn zero_sum_adjust(mut v: Vec<Rat>) -> Vec<Rat> {
    let n = v.len();
    let sum: Rat = v.iter().fold(Rat::zero(), |a, b| a + b);
    let shift = sum / Rat::from_integer(BigInt::from(n as i64));
    for x in v.iter_mut() {
        *x = &*x - &shift;
    }
    v
}

/// Sums of principal k×k minors of a square matrix, k = 1..n.
fn principal_minor_sums(m: &Matrix<FieldElem>) -> Result<Vec<FieldElem>, SpectraError> {
    let n = m.rows();
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        let mut acc = FieldElem::zero();
        for combo in combinations(n, k) {
            let mut sub = Vec::with_capacity(k * k);
            for &i in &combo {
                for &j in &combo {
                    sub.push(m.at(i, j).clone());
                }
            }
            let minor = Matrix::new(k, k, sub)?;
            acc = &acc + &minor.det_cofactor()?;
        }
        out.push(acc);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::puiseux_field::{parse_textual, rat, rat_int};
    use alloc::vec;

    fn f(s: &str) -> FieldElem {
        parse_textual(s).unwrap()
    }

    fn m2(a: &str, b: &str, c: &str, d: &str) -> Matrix<FieldElem> {
        Matrix::from_rows(vec![vec![f(a), f(b)], vec![f(c), f(d)]]).unwrap()
    }

    fn wv(coords: &[(i64, i64)]) -> WeylVector {
        WeylVector::new(coords.iter().map(|&(p, q)| rat(p, q)).collect()).unwrap()
    }

    /// Independent oracle for n = 2 SL matrices: the Jordan vector is
    /// (e, −e) with e = max(−val(tr g), 0), straight from the quadratic
    /// formula, bypassing the Newton polygon entirely.
    fn quadratic_jordan_oracle(g: &Matrix<FieldElem>) -> WeylVector {
        let tr = g.trace().unwrap();
        let e = match tr.val() {
            Valuation::Infinite => Rat::zero(),
            Valuation::Finite(v) => {
                if v.is_negative() {
                    -v
                } else {
                    Rat::zero()
                }
            }
        };
        WeylVector::new(vec![e.clone(), -e]).unwrap()
    }

    #[test]
    fn newton_polygon_of_the_diagonal_example() {
        // char poly of diag(t, 1/t): λ² − (t + 1/t)λ + 1.
        let g = m2("t", "0", "0", "t^(-1)");
        let coeffs = g.char_poly(&Budget::default()).unwrap();
        let polygon = NewtonPolygon::from_coeffs(&coeffs).unwrap();
        assert_eq!(
            polygon.points,
            vec![
                (0, Valuation::Finite(rat_int(0))),
                (1, Valuation::Finite(rat_int(-1))),
                (2, Valuation::Finite(rat_int(0))),
            ]
        );
        assert_eq!(
            polygon.segments,
            vec![
                Segment { slope: rat_int(-1), length: 1 },
                Segment { slope: rat_int(1), length: 1 },
            ]
        );
    }

    #[test]
    fn jordan_matches_quadratic_oracle() {
        let budget = Budget::default();
        let samples = [
            m2("t", "0", "0", "t^(-1)"),
            m2("t + 1", "1", "t", "1"),
            m2("1", "1", "0", "1"),
            m2("0", "1", "-1", "0"),
            m2("2", "0", "0", "1/2"),
            m2("1", "t", "0", "1"),
        ];
        for g in &samples {
            let via_polygon = jordan_vector(g, &budget).unwrap();
            let via_quadratic = quadratic_jordan_oracle(g);
            assert_eq!(via_polygon, via_quadratic);
        }
        assert_eq!(
            jordan_vector(&samples[0], &budget).unwrap(),
            wv(&[(1, 1), (-1, 1)])
        );
    }

    #[test]
    fn jordan_of_higher_rank_diagonal() {
        let budget = Budget::default();
        let g = Matrix::from_rows(vec![
            vec![f("t^2"), f("0"), f("0")],
            vec![f("0"), f("1"), f("0")],
            vec![f("0"), f("0"), f("t^(-2)")],
        ])
        .unwrap();
        assert_eq!(
            jordan_vector(&g, &budget).unwrap(),
            wv(&[(2, 1), (0, 1), (-2, 1)])
        );
        // Fractional powers survive exactly.
        let h = m2("t^(1/2)", "0", "0", "t^(-1/2)");
        assert_eq!(jordan_vector(&h, &budget).unwrap(), wv(&[(1, 2), (-1, 2)]));
    }

    #[test]
    fn cartan_of_the_unipotent_example() {
        let budget = Budget::default();
        let g = m2("1", "t", "0", "1");
        assert_eq!(cartan_vector(&g, &budget).unwrap(), wv(&[(1, 1), (-1, 1)]));
        assert_eq!(jordan_vector(&g, &budget).unwrap(), wv(&[(0, 1), (0, 1)]));
        // Translation length vanishes while the distance from the base
        // point does not: the element is parabolic-like.
        let len = translation_length(&g, &WeylNorm::Euclidean, &budget).unwrap();
        assert!(len.is_zero());
        let id = Matrix::identity(2);
        let d = distance(&id, &g, &WeylNorm::Euclidean, &budget).unwrap();
        assert_eq!(d, NormValue::Radical { sum: rat_int(2), p: 2 });
    }

    #[test]
    fn distance_is_symmetric_and_reflexive() {
        let budget = Budget::default();
        let g = m2("t", "1", "0", "t^(-1)");
        let h = m2("1", "0", "t", "1");
        let d = distance(&g, &g, &WeylNorm::Euclidean, &budget).unwrap();
        assert!(d.is_zero());
        let dgh = distance(&g, &h, &WeylNorm::Euclidean, &budget).unwrap();
        let dhg = distance(&h, &g, &WeylNorm::Euclidean, &budget).unwrap();
        assert_eq!(dgh, dhg);
    }

    #[test]
    fn norms_of_the_reference_vector() {
        let v = wv(&[(2, 1), (-2, 1)]);
        assert_eq!(
            v.norm(&WeylNorm::Root).unwrap(),
            NormValue::Rational(rat_int(8))
        );
        assert_eq!(
            v.norm(&WeylNorm::Sup).unwrap(),
            NormValue::Rational(rat_int(2))
        );
        assert_eq!(
            v.norm(&WeylNorm::L1).unwrap(),
            NormValue::Rational(rat_int(4))
        );
        assert_eq!(
            v.norm(&WeylNorm::Euclidean).unwrap(),
            NormValue::Radical { sum: rat_int(8), p: 2 }
        );
        assert_eq!(
            v.norm(&WeylNorm::Weight(1)).unwrap(),
            NormValue::Rational(rat_int(4))
        );
        assert_eq!(
            v.norm(&WeylNorm::Lp(3)).unwrap(),
            NormValue::Radical { sum: rat_int(16), p: 3 }
        );
        assert!(matches!(
            v.norm(&WeylNorm::Weight(2)),
            Err(SpectraError::InvalidNorm(_))
        ));
        assert!(matches!(
            v.norm(&WeylNorm::Lp(0)),
            Err(SpectraError::InvalidNorm(_))
        ));
    }

    #[test]
    fn chamber_invariants_are_enforced() {
        assert!(WeylVector::new(vec![rat_int(-1), rat_int(1)]).is_err());
        assert!(WeylVector::new(vec![rat_int(1), rat_int(1)]).is_err());
        assert!(WeylVector::new(vec![rat_int(1), rat_int(-1)]).is_ok());
    }

    #[test]
    fn norm_value_brackets_and_closeness() {
        let a = NormValue::Radical { sum: rat_int(8), p: 2 };
        let (lo, hi) = a.bracket(&rat(1, 1000));
        // √8 = 2.828427…
        assert!(lo <= rat(2829, 1000) && rat(2828, 1000) <= hi);
        let b = NormValue::Rational(rat(2828427, 1000000));
        assert!(a.close_to(&b, &rat(1, 1000)));
        assert!(!a.close_to(&NormValue::Rational(rat_int(3)), &rat(1, 100)));
        assert!(a.close_to(&a.clone(), &rat(1, 1_000_000)));
    }

    #[test]
    fn proximality_examples() {
        let budget = Budget::default();
        let i1 = [1usize];
        assert_eq!(
            is_proximal(&m2("t", "0", "0", "t^(-1)"), &i1, &budget).unwrap(),
            Proximality::Proximal
        );
        assert_eq!(
            is_proximal(&m2("1", "1", "0", "1"), &i1, &budget).unwrap(),
            Proximality::NotProximal
        );
        assert_eq!(
            is_proximal(&m2("0", "1", "-1", "0"), &i1, &budget).unwrap(),
            Proximality::NotProximal
        );
        // Archimedean-level gap, invisible to the valuation, resolved by
        // the discriminant: eigenvalues 2 and 1/2.
        assert_eq!(
            is_proximal(&m2("2", "0", "0", "1/2"), &i1, &budget).unwrap(),
            Proximality::Proximal
        );
        // n = 3 with a constant tie stays indeterminate.
        let g3 = Matrix::from_rows(vec![
            vec![f("2"), f("0"), f("0")],
            vec![f("0"), f("1"), f("0")],
            vec![f("0"), f("0"), f("1/2")],
        ])
        .unwrap();
        assert_eq!(
            is_proximal(&g3, &[1, 2], &budget).unwrap(),
            Proximality::Indeterminate
        );
        let g3 = Matrix::from_rows(vec![
            vec![f("t"), f("0"), f("0")],
            vec![f("0"), f("1"), f("0")],
            vec![f("0"), f("0"), f("t^(-1)")],
        ])
        .unwrap();
        assert_eq!(
            is_proximal(&g3, &[1, 2], &budget).unwrap(),
            Proximality::Proximal
        );
        assert!(is_proximal(&g3, &[3], &budget).is_err());
    }

    #[test]
    fn cut_crosscheck_agrees_on_diagonal_and_unipotent() {
        let budget = Budget::default();
        let tol = rat(1, 1 << 20);
        for norm in [
            WeylNorm::Euclidean,
            WeylNorm::Sup,
            WeylNorm::L1,
            WeylNorm::Root,
            WeylNorm::Weight(1),
        ] {
            assert!(dedekind_cut_crosscheck(
                &m2("t", "0", "0", "t^(-1)"),
                &norm,
                &tol,
                &budget
            )
            .unwrap());
            assert!(dedekind_cut_crosscheck(&m2("1", "1", "0", "1"), &norm, &tol, &budget)
                .unwrap());
        }
        // A genuinely fractional spectrum through a triangular matrix.
        assert!(dedekind_cut_crosscheck(
            &m2("t^(1/2)", "1", "0", "t^(-1/2)"),
            &WeylNorm::Euclidean,
            &tol,
            &budget
        )
        .unwrap());
        // Higher rank.
        let g3 = Matrix::from_rows(vec![
            vec![f("t^2"), f("1"), f("0")],
            vec![f("0"), f("1"), f("1")],
            vec![f("0"), f("0"), f("t^(-2)")],
        ])
        .unwrap();
        assert!(dedekind_cut_crosscheck(&g3, &WeylNorm::Root, &tol, &budget).unwrap());
    }
}
