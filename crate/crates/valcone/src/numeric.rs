//! Floating-point eigenvalue magnitudes with an independent confirming
//! pass.
//!
//! The primary route balances the matrix (Parlett–Reinsch, radix 2, an
//! exact similarity) and asks a standard dense solver for the complex
//! eigenvalues.  The confirming route recomputes the characteristic
//! polynomial in double-double arithmetic and polishes every eigenvalue
//! with complex Newton steps at that precision.  If the two routes
//! disagree about any log-magnitude by more than [`LN_MODULUS_AGREEMENT`]
//! the input is reported as numerically unreliable instead of silently
//! returning one of the answers.

use nalgebra::{Complex, DMatrix};
use valcone_core::matrix_algebra::Matrix;

/// Largest tolerated log-magnitude gap between the dense solver and the
/// double-double polish.
pub const LN_MODULUS_AGREEMENT: f64 = 1e-6;

/// Numeric failure: the two eigenvalue routes disagree or a magnitude is
/// not representable.
#[derive(Debug, Clone, PartialEq)]
pub enum NumericError {
    /// Message naming the quantity that could not be certified.
    Breakdown(String),
}

impl core::fmt::Display for NumericError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            NumericError::Breakdown(m) => write!(f, "numeric breakdown: {m}"),
        }
    }
}

impl std::error::Error for NumericError {}

/// Double-double value: an unevaluated sum `hi + lo` with `|lo|` below
/// half an ulp of `hi`, giving roughly 32 significant digits.
#[derive(Clone, Copy, Debug)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    /// The double-double equal to a double.
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// Zero.
    pub fn zero() -> Self {
        Dd::from_f64(0.0)
    }

    /// Nearest double.
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    /// Sum.
    pub fn add(self, rhs: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let e = e + self.lo + rhs.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    /// Difference.
    pub fn sub(self, rhs: Dd) -> Dd {
        self.add(rhs.neg())
    }

    /// Negation.
    pub fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    /// Product.
    pub fn mul(self, rhs: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + self.hi * rhs.lo + self.lo * rhs.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    /// Quotient by long division with two correction terms.
    pub fn div(self, rhs: Dd) -> Dd {
        let q1 = self.hi / rhs.hi;
        let r1 = self.sub(rhs.mul(Dd::from_f64(q1)));
        let q2 = r1.hi / rhs.hi;
        let r2 = r1.sub(rhs.mul(Dd::from_f64(q2)));
        let q3 = r2.hi / rhs.hi;
        let (s, e) = two_sum(q1, q2);
        let (hi, lo) = quick_two_sum(s, e + q3);
        Dd { hi, lo }
    }
}

/// Complex number with double-double parts.
#[derive(Clone, Copy, Debug)]
struct Cd {
    re: Dd,
    im: Dd,
}

impl Cd {
    fn from_complex(z: Complex<f64>) -> Self {
        Cd { re: Dd::from_f64(z.re), im: Dd::from_f64(z.im) }
    }

    fn add(self, rhs: Cd) -> Cd {
        Cd { re: self.re.add(rhs.re), im: self.im.add(rhs.im) }
    }

    fn sub(self, rhs: Cd) -> Cd {
        Cd { re: self.re.sub(rhs.re), im: self.im.sub(rhs.im) }
    }

    fn mul(self, rhs: Cd) -> Cd {
        Cd {
            re: self.re.mul(rhs.re).sub(self.im.mul(rhs.im)),
            im: self.re.mul(rhs.im).add(self.im.mul(rhs.re)),
        }
    }

    fn div(self, rhs: Cd) -> Cd {
        let denom = rhs.re.mul(rhs.re).add(rhs.im.mul(rhs.im));
        let num = self.mul(Cd { re: rhs.re, im: rhs.im.neg() });
        Cd { re: num.re.div(denom), im: num.im.div(denom) }
    }

    fn abs2(self) -> f64 {
        self.re.mul(self.re).add(self.im.mul(self.im)).to_f64()
    }
}

/// Balances a square matrix in place by an exact diagonal similarity with
/// power-of-two entries, shrinking the spread between row and column
/// norms (Parlett–Reinsch).
pub fn balance(a: &mut [Vec<f64>]) {
    let n = a.len();
    let radix = 2.0f64;
    loop {
        let mut converged = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[j][i].abs();
                    r += a[i][j].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let mut f = 1.0;
            let mut cc = c;
            let s = c + r;
            while cc < r / radix {
                cc *= radix * radix;
                f *= radix;
            }
            while cc > r * radix {
                cc /= radix * radix;
                f /= radix;
            }
            if (cc + r) / f < 0.95 * s {
                converged = false;
                for j in 0..n {
                    a[i][j] /= f;
                }
                for j in 0..n {
                    a[j][i] *= f;
                }
            }
        }
        if converged {
            return;
        }
    }
}

/// Characteristic polynomial coefficients in double-double arithmetic,
/// ascending by degree with a monic leading one, by the trace recursion
/// on powers (Faddeev–LeVerrier).
fn char_poly_dd(a: &[Vec<f64>]) -> Vec<Dd> {
    let n = a.len();
    let add = |m: &[Vec<Dd>], c: Dd| -> Vec<Vec<Dd>> {
        let mut out = m.to_vec();
        for (i, row) in out.iter_mut().enumerate() {
            row[i] = row[i].add(c);
        }
        out
    };
    let mul = |m: &[Vec<Dd>]| -> Vec<Vec<Dd>> {
        let mut out = vec![vec![Dd::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = Dd::zero();
                for (k, row) in m.iter().enumerate() {
                    acc = acc.add(Dd::from_f64(a[i][k]).mul(row[j]));
                }
                out[i][j] = acc;
            }
        }
        out
    };
    let mut coeffs = vec![Dd::zero(); n + 1];
    coeffs[n] = Dd::from_f64(1.0);
    let mut m: Vec<Vec<Dd>> = (0..n)
        .map(|i| (0..n).map(|j| Dd::from_f64(if i == j { 1.0 } else { 0.0 })).collect())
        .collect();
    for k in 1..=n {
        let am = mul(&m);
        let mut tr = Dd::zero();
        for (i, row) in am.iter().enumerate() {
            tr = tr.add(row[i]);
        }
        let c = tr.neg().div(Dd::from_f64(k as f64));
        coeffs[n - k] = c;
        m = add(&am, c);
    }
    coeffs
}

fn horner(coeffs: &[Dd], z: Cd) -> Cd {
    let mut acc = Cd { re: Dd::zero(), im: Dd::zero() };
    for c in coeffs.iter().rev() {
        acc = acc.mul(z).add(Cd { re: *c, im: Dd::zero() });
    }
    acc
}

fn horner_deriv(coeffs: &[Dd], z: Cd) -> Cd {
    let mut acc = Cd { re: Dd::zero(), im: Dd::zero() };
    for (k, c) in coeffs.iter().enumerate().skip(1).rev() {
        let ck = Dd::from_f64(k as f64).mul(*c);
        acc = acc.mul(z).add(Cd { re: ck, im: Dd::zero() });
    }
    acc
}

fn newton_polish(coeffs: &[Dd], seed: Complex<f64>) -> Cd {
    let mut z = Cd::from_complex(seed);
    for _ in 0..80 {
        let pz = horner(coeffs, z);
        if pz.abs2() == 0.0 {
            break;
        }
        let dpz = horner_deriv(coeffs, z);
        if dpz.abs2() == 0.0 {
            break;
        }
        let step = pz.div(dpz);
        let scale = 1.0 + z.abs2();
        if !step.abs2().is_finite() || step.abs2() > 0.25 * scale {
            break;
        }
        z = z.sub(step);
        if step.abs2() <= 1e-64 * scale {
            break;
        }
    }
    z
}

/// Descending log-magnitudes of the eigenvalues, certified by two
/// independent routes.
///
/// The per-eigenvalue work is: balance, dense solve, double-double
/// Newton polish against the double-double characteristic polynomial,
/// then compare log-magnitudes within [`LN_MODULUS_AGREEMENT`].
pub fn eigenvalue_ln_moduli(m: &Matrix<f64>) -> Result<Vec<f64>, NumericError> {
    assert!(m.is_square(), "eigenvalues need a square matrix");
    let n = m.rows();
    let mut rows: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| *m.at(i, j)).collect())
        .collect();
    for row in &rows {
        for x in row {
            if !x.is_finite() {
                return Err(NumericError::Breakdown("matrix entry overflowed".into()));
            }
        }
    }
    balance(&mut rows);
    let flat: Vec<f64> = rows.iter().flatten().copied().collect();
    let eigs = DMatrix::from_row_slice(n, n, &flat).complex_eigenvalues();
    let coeffs = char_poly_dd(&rows);

    let mut solver: Vec<f64> = Vec::with_capacity(n);
    let mut polished: Vec<f64> = Vec::with_capacity(n);
    for z in eigs.iter() {
        let norm2 = z.norm_sqr();
        if norm2 == 0.0 || !norm2.is_finite() {
            return Err(NumericError::Breakdown(format!(
                "eigenvalue magnitude {norm2} is not usable"
            )));
        }
        solver.push(0.5 * norm2.ln());
        let w = newton_polish(&coeffs, *z);
        let wn2 = w.abs2();
        if wn2 <= 0.0 || !wn2.is_finite() {
            return Err(NumericError::Breakdown(
                "polished eigenvalue magnitude is not usable".into(),
            ));
        }
        polished.push(0.5 * wn2.ln());
    }
    let mut solver_sorted = solver.clone();
    let mut polished_sorted = polished.clone();
    solver_sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    polished_sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    for (s, p) in solver_sorted.iter().zip(&polished_sorted) {
        if (s - p).abs() > LN_MODULUS_AGREEMENT {
            return Err(NumericError::Breakdown(format!(
                "eigenvalue routes disagree: {s} vs {p}"
            )));
        }
    }
    Ok(polished_sorted)
}
