//! Exact matrices over the field, group words, and representations.
//!
//! Matrices are dense and generic over a scalar ring that supports exact
//! arithmetic.  Everything that can blow up in term count (products of
//! Puiseux matrices, characteristic polynomials, adjugates) takes an
//! explicit complexity budget and fails loudly with `BudgetExceeded`
//! instead of degrading silently.
//!
//! Inverses never use elimination: images of group generators lie in
//! SL(n), so the adjugate is the inverse, and the adjugate falls out of
//! the same division-free Faddeev–LeVerrier recurrence that produces the
//! characteristic polynomial.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::puiseux_field::{FieldElem, Rat};

/// Default term budget for exact matrix computations.
///
/// The unit is "stored polynomial terms across a matrix"; 200 000 terms is
/// far beyond anything the intended workloads produce, so hitting it
/// signals a genuinely diverging computation rather than a tight limit.
pub const DEFAULT_TERM_BUDGET: u64 = 200_000;

/// Complexity budget for exact computations, measured in stored terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Maximum total stored terms allowed in any intermediate matrix.
    pub max_terms: u64,
}

impl Budget {
    /// Budget with the given term limit.
    pub fn new(max_terms: u64) -> Self {
        Budget { max_terms }
    }

    /// Effectively unlimited budget.
    pub fn unlimited() -> Self {
        Budget { max_terms: u64::MAX }
    }

    fn check(&self, used: u64) -> Result<(), MatrixError> {
        if used > self.max_terms {
            Err(MatrixError::BudgetExceeded {
                used,
                limit: self.max_terms,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_terms: DEFAULT_TERM_BUDGET,
        }
    }
}

/// Errors from matrix and representation operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixError {
    /// A word refers to a generator the representation does not declare.
    UnknownGenerator(String),
    /// An exact computation outgrew its term budget.
    BudgetExceeded {
        /// Terms the computation reached.
        used: u64,
        /// The configured limit.
        limit: u64,
    },
    /// Operand shapes are incompatible.
    DimensionMismatch(String),
    /// A generator image does not have determinant one.
    NotUnimodular(String),
    /// A group word string could not be parsed.
    WordParse(String),
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::UnknownGenerator(name) => write!(f, "unknown generator '{name}'"),
            MatrixError::BudgetExceeded { used, limit } => {
                write!(f, "term budget exceeded: {used} terms > limit {limit}")
            }
            MatrixError::DimensionMismatch(msg) => write!(f, "dimension mismatch: {msg}"),
            MatrixError::NotUnimodular(name) => {
                write!(f, "generator '{name}' does not have determinant 1")
            }
            MatrixError::WordParse(msg) => write!(f, "word parse error: {msg}"),
        }
    }
}

/// Scalars the matrix layer can operate on exactly: the field itself,
/// rationals, and (for numeric cross-checks) doubles.
pub trait Scalar:
    Clone
    + PartialEq
    + Zero
    + One
    + core::ops::Add<Output = Self>
    + core::ops::Sub<Output = Self>
    + core::ops::Mul<Output = Self>
    + core::ops::Neg<Output = Self>
{
    /// Embeds a small integer.
    fn from_int(k: i64) -> Self;

    /// Division known to be exact (nonzero divisor).
    fn exact_div(&self, rhs: &Self) -> Self;

    /// Absolute value.
    fn abs(&self) -> Self;

    /// Compares |self| with |other|.
    fn cmp_abs(&self, other: &Self) -> core::cmp::Ordering;

    /// Stored terms, the unit of complexity budgets.
    fn term_count(&self) -> u64 {
        1
    }

    /// Whether a determinant value counts as one (exact for exact scalars,
    /// within a tight tolerance for doubles).
    fn is_unit_det(det: &Self) -> bool {
        det.is_one()
    }
}

impl Scalar for FieldElem {
    fn from_int(k: i64) -> Self {
        FieldElem::from_int(k)
    }
    fn exact_div(&self, rhs: &Self) -> Self {
        self.checked_div(rhs).expect("exact division by nonzero scalar")
    }
    fn abs(&self) -> Self {
        FieldElem::abs(self)
    }
    fn cmp_abs(&self, other: &Self) -> core::cmp::Ordering {
        Ord::cmp(&FieldElem::abs(self), &FieldElem::abs(other))
    }
    fn term_count(&self) -> u64 {
        FieldElem::term_count(self)
    }
}

impl Scalar for Rat {
    fn from_int(k: i64) -> Self {
        Ratio::from_integer(BigInt::from(k))
    }
    fn exact_div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn cmp_abs(&self, other: &Self) -> core::cmp::Ordering {
        Ord::cmp(&Signed::abs(self), &Signed::abs(other))
    }
}

impl Scalar for f64 {
    fn from_int(k: i64) -> Self {
        k as f64
    }
    fn exact_div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn cmp_abs(&self, other: &Self) -> core::cmp::Ordering {
        f64::abs(*self)
            .partial_cmp(&f64::abs(*other))
            .unwrap_or(core::cmp::Ordering::Equal)
    }
    fn is_unit_det(det: &Self) -> bool {
        (det - 1.0).abs() <= 1e-9
    }
}

/// Dense row-major matrix over an exact scalar.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    /// Builds a matrix from row-major data.
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, MatrixError> {
        if data.len() != rows * cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from rows.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map(Vec::len).unwrap_or(0);
        if rows.iter().any(|row| row.len() != c) {
            return Err(MatrixError::DimensionMismatch(
                "rows have unequal lengths".to_owned(),
            ));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// The n×n identity.
    pub fn identity(n: usize) -> Self {
        let mut data = alloc::vec![T::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = T::one();
        }
        Matrix {
            rows: n,
            cols: n,
            data,
        }
    }

    /// Row count.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Column count.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// True for square matrices.
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entry reference at (row, col); panics out of range.
    pub fn at(&self, i: usize, j: usize) -> &T {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }

    /// Mutable entry reference at (row, col).
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.data[i * self.cols + j]
    }

    /// Applies a function entrywise.
    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Transpose.
    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.at(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Total stored terms across entries.
    pub fn term_count(&self) -> u64 {
        self.data.iter().map(Scalar::term_count).sum()
    }

    /// Entrywise sum.
    pub fn add(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(MatrixError::DimensionMismatch(format!(
                "add {}x{} with {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(rhs.data.iter())
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Entrywise difference.
    pub fn sub(&self, rhs: &Self) -> Result<Self, MatrixError> {
        self.add(&rhs.scale(&(-T::one())))
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    /// Matrix product under a term budget.
    pub fn mul(&self, rhs: &Self, budget: &Budget) -> Result<Self, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::DimensionMismatch(format!(
                "multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut data = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    acc = acc + self.at(i, k).clone() * rhs.at(k, j).clone();
                }
                data.push(acc);
            }
        }
        let out = Matrix {
            rows: self.rows,
            cols: rhs.cols,
            data,
        };
        budget.check(out.term_count())?;
        Ok(out)
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> Result<T, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::DimensionMismatch(format!(
                "trace of {}x{}",
                self.rows, self.cols
            )));
        }
        let mut acc = T::zero();
        for i in 0..self.rows {
            acc = acc + self.at(i, i).clone();
        }
        Ok(acc)
    }

    /// Coefficients c_0..c_n of det(λI − A) = λ^n + c_{n−1}λ^{n−1} + … + c_0,
    /// by the division-free Faddeev–LeVerrier recurrence (the only
    /// divisions are by the integers 1..n, which are exact).
    pub fn char_poly(&self, budget: &Budget) -> Result<Vec<T>, MatrixError> {
        Ok(self.faddeev_leverrier(budget)?.0)
    }

    /// Adjugate matrix: A · adj(A) = det(A) · I.
    pub fn adjugate(&self, budget: &Budget) -> Result<Self, MatrixError> {
        Ok(self.faddeev_leverrier(budget)?.1)
    }

    /// Determinant of a square matrix, as (−1)^n · c_0 of the
    /// characteristic polynomial.
    pub fn det(&self, budget: &Budget) -> Result<T, MatrixError> {
        let coeffs = self.char_poly(budget)?;
        let c0 = coeffs[0].clone();
        if self.rows % 2 == 0 {
            Ok(c0)
        } else {
            Ok(-c0)
        }
    }

    /// Inverse of a determinant-one matrix (the adjugate).
    pub fn inverse_unimodular(&self, budget: &Budget) -> Result<Self, MatrixError> {
        self.adjugate(budget)
    }

    fn faddeev_leverrier(&self, budget: &Budget) -> Result<(Vec<T>, Self), MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::DimensionMismatch(format!(
                "characteristic polynomial of {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut coeffs = alloc::vec![T::zero(); n + 1];
        coeffs[n] = T::one();
        if n == 0 {
            return Ok((coeffs, Matrix::identity(0)));
        }
        let mut m = Matrix::identity(n);
        let mut am = self.mul(&m, budget)?;
        for k in 1..=n {
            if k > 1 {
                let shift = Matrix::identity(n).scale(&coeffs[n - k + 1]);
                m = am.add(&shift)?;
                budget.check(m.term_count())?;
                am = self.mul(&m, budget)?;
            }
            let tr = am.trace()?;
            coeffs[n - k] = -(tr.exact_div(&T::from_int(k as i64)));
        }
        // adj(A) = (−1)^(n−1) · M_n.
        let adj = if n % 2 == 1 { m } else { m.scale(&(-T::one())) };
        Ok((coeffs, adj))
    }

    /// Determinant by cofactor expansion: division-free and independent of
    /// the Faddeev–LeVerrier route, so the two can check each other.
    pub fn det_cofactor(&self) -> Result<T, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::DimensionMismatch(format!(
                "determinant of {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(det_cofactor_inner(self))
    }
}

fn det_cofactor_inner<T: Scalar>(m: &Matrix<T>) -> T {
    let n = m.rows();
    match n {
        0 => T::one(),
        1 => m.at(0, 0).clone(),
        2 => {
            m.at(0, 0).clone() * m.at(1, 1).clone() - m.at(0, 1).clone() * m.at(1, 0).clone()
        }
        _ => {
            let mut acc = T::zero();
            for j in 0..n {
                if m.at(0, j).is_zero() {
                    continue;
                }
                let mut sub = Vec::with_capacity((n - 1) * (n - 1));
                for i in 1..n {
                    for jj in 0..n {
                        if jj != j {
                            sub.push(m.at(i, jj).clone());
                        }
                    }
                }
                let minor = Matrix {
                    rows: n - 1,
                    cols: n - 1,
                    data: sub,
                };
                let term = m.at(0, j).clone() * det_cofactor_inner(&minor);
                if j % 2 == 0 {
                    acc = acc + term;
                } else {
                    acc = acc - term;
                }
            }
            acc
        }
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// A word in a free group: a reduced-or-not sequence of generator letters
/// with exponents ±1.
///
/// Words order first by length-lexicographic letter sequence with `a`
/// before `a^-1`, matching the display order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupWord {
    letters: Vec<(String, i8)>,
}

impl PartialOrd for GroupWord {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupWord {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        let key = |w: &GroupWord| -> Vec<(String, u8)> {
            w.letters
                .iter()
                .map(|(n, e)| (n.clone(), if *e == 1 { 0u8 } else { 1u8 }))
                .collect()
        };
        key(self).cmp(&key(other))
    }
}

impl GroupWord {
    /// The empty word.
    pub fn identity() -> Self {
        GroupWord { letters: Vec::new() }
    }

    /// Builds a word from (generator, ±1) letters.
    pub fn from_letters<I: IntoIterator<Item = (String, i8)>>(letters: I) -> Self {
        let letters: Vec<(String, i8)> = letters
            .into_iter()
            .inspect(|(_, e)| assert!(*e == 1 || *e == -1, "letter exponent must be ±1"))
            .collect();
        GroupWord { letters }
    }

    /// A single-letter word.
    pub fn letter(name: &str, exp: i8) -> Self {
        Self::from_letters([(name.to_owned(), exp)])
    }

    /// Parses whitespace-separated letters: `a`, `a^-1`, or `a'` (an
    /// apostrophe marks an inverse on input; output always uses `^-1`).
    pub fn parse(s: &str) -> Result<Self, MatrixError> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            let (name, exp) = if let Some(base) = tok.strip_suffix("^-1") {
                (base, -1)
            } else if let Some(base) = tok.strip_suffix('\'') {
                (base, -1)
            } else if let Some(base) = tok.strip_suffix("^1") {
                (base, 1)
            } else {
                (tok, 1)
            };
            if name.is_empty()
                || !name
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || c == '_')
                || name.chars().next().unwrap().is_ascii_digit()
            {
                return Err(MatrixError::WordParse(format!(
                    "bad generator token '{tok}'"
                )));
            }
            letters.push((name.to_owned(), exp));
        }
        Ok(GroupWord { letters })
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// True for the empty word.
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letters as (generator, ±1) pairs.
    pub fn letters(&self) -> &[(String, i8)] {
        &self.letters
    }

    /// Concatenation (no reduction).
    pub fn concat(&self, rhs: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend(rhs.letters.iter().cloned());
        GroupWord { letters }
    }

    /// Formal inverse: reversed letters with flipped exponents.
    pub fn inverse(&self) -> Self {
        GroupWord {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|(n, e)| (n.clone(), -e))
                .collect(),
        }
    }

    /// Free reduction: cancels adjacent inverse pairs until none remain.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<(String, i8)> = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            if let Some(last) = out.last() {
                if last.0 == l.0 && last.1 == -l.1 {
                    out.pop();
                    continue;
                }
            }
            out.push(l.clone());
        }
        GroupWord { letters: out }
    }

    /// Cyclic reduction: free-reduces, then strips inverse first/last pairs.
    pub fn cyclic_reduce(&self) -> Self {
        let mut w = self.free_reduce();
        while w.letters.len() >= 2 {
            let first = &w.letters[0];
            let last = &w.letters[w.letters.len() - 1];
            if first.0 == last.0 && first.1 == -last.1 {
                w.letters.pop();
                w.letters.remove(0);
            } else {
                break;
            }
        }
        w
    }

    /// Canonical representative of the conjugacy class: cyclic reduction
    /// followed by the least rotation in the word order.
    pub fn cyclic_canonical(&self) -> Self {
        let w = self.cyclic_reduce();
        if w.letters.len() <= 1 {
            return w;
        }
        let n = w.letters.len();
        (0..n)
            .map(|r| GroupWord {
                letters: (0..n).map(|i| w.letters[(r + i) % n].clone()).collect(),
            })
            .min()
            .unwrap()
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, (name, exp)) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if *exp == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^-1")?;
            }
        }
        Ok(())
    }
}

/// A representation of a finitely generated group: named generator images
/// in SL(n) over the scalar ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation<T> {
    n: usize,
    generators: BTreeMap<String, Matrix<T>>,
    symmetric: bool,
}

impl<T: Scalar> Representation<T> {
    /// Builds a representation, checking shapes and determinant one.
    ///
    /// `symmetric` declares whether downstream trace sums over the
    /// generating set should include the inverses of the generators.
    pub fn new(
        n: usize,
        generators: BTreeMap<String, Matrix<T>>,
        symmetric: bool,
    ) -> Result<Self, MatrixError> {
        let budget = Budget::unlimited();
        for (name, m) in &generators {
            if m.rows() != n || m.cols() != n {
                return Err(MatrixError::DimensionMismatch(format!(
                    "generator '{name}' is {}x{}, expected {n}x{n}",
                    m.rows(),
                    m.cols()
                )));
            }
            let det = m.det(&budget)?;
            if !T::is_unit_det(&det) {
                return Err(MatrixError::NotUnimodular(name.clone()));
            }
        }
        Ok(Representation {
            n,
            generators,
            symmetric,
        })
    }

    /// Matrix size n of SL(n).
    pub fn n(&self) -> usize {
        self.n
    }

    /// Whether the declared generating set is closed under inverses for
    /// the purposes of trace sums.
    pub fn symmetric(&self) -> bool {
        self.symmetric
    }

    /// Generator names in sorted order.
    pub fn names(&self) -> impl Iterator<Item = &String> {
        self.generators.keys()
    }

    /// Number of generators.
    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// The image of one generator.
    pub fn generator(&self, name: &str) -> Option<&Matrix<T>> {
        self.generators.get(name)
    }

    /// Replaces every generator image through a map, keeping names.
    pub fn map<U: Scalar>(&self, f: impl Fn(&Matrix<T>) -> Matrix<U>) -> Representation<U> {
        Representation {
            n: self.n,
            generators: self
                .generators
                .iter()
                .map(|(k, v)| (k.clone(), f(v)))
                .collect(),
            symmetric: self.symmetric,
        }
    }

    /// The generating set as single-letter words: every generator, plus
    /// every inverse when the representation is declared symmetric.
    pub fn alphabet(&self) -> Vec<GroupWord> {
        let mut out = Vec::new();
        for name in self.generators.keys() {
            out.push(GroupWord::letter(name, 1));
        }
        if self.symmetric {
            for name in self.generators.keys() {
                out.push(GroupWord::letter(name, -1));
            }
        }
        out
    }

    /// Evaluates a group word to a matrix under the budget.  Inverse
    /// letters use the adjugate, exact because generators are unimodular.
    pub fn eval_word(&self, word: &GroupWord, budget: &Budget) -> Result<Matrix<T>, MatrixError> {
        let mut acc = Matrix::identity(self.n);
        for (name, exp) in word.letters() {
            let base = self
                .generators
                .get(name)
                .ok_or_else(|| MatrixError::UnknownGenerator(name.clone()))?;
            let factor = if *exp == 1 {
                base.clone()
            } else {
                base.inverse_unimodular(budget)?
            };
            acc = acc.mul(&factor, budget)?;
        }
        Ok(acc)
    }

    /// All distinct conjugacy-class representatives of reduced nonempty
    /// words of length ≤ `max_len` over the alphabet (inverses included
    /// exactly when the representation is symmetric).
    pub fn words_up_to(&self, max_len: usize) -> Vec<GroupWord> {
        let alphabet = self.alphabet();
        let mut seen: BTreeSet<Vec<(String, i8)>> = BTreeSet::new();
        let mut out: Vec<GroupWord> = Vec::new();
        let mut frontier: Vec<GroupWord> = alloc::vec![GroupWord::identity()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for a in &alphabet {
                    let c = w.concat(a);
                    if c.free_reduce().len() != c.len() {
                        continue;
                    }
                    let canon = c.cyclic_canonical();
                    if !canon.is_empty() && seen.insert(canon.letters.clone()) {
                        out.push(canon);
                    }
                    next.push(c);
                }
            }
            frontier = next;
        }
        out.sort();
        out
    }
}

/// Lexicographically ordered k-element subsets of {0, …, d−1}.
pub fn combinations(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > d {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + d - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// k-th wedge power of a d×k matrix of column vectors: the vector of all
/// k×k row minors in lexicographic row-subset order.
pub fn wedge<T: Scalar>(m: &Matrix<T>, k: usize) -> Result<Vec<T>, MatrixError> {
    if m.cols() != k || k == 0 || k > m.rows() {
        return Err(MatrixError::DimensionMismatch(format!(
            "wedge power k={k} of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let mut out = Vec::new();
    for combo in combinations(m.rows(), k) {
        let mut sub = Vec::with_capacity(k * k);
        for &i in &combo {
            for j in 0..k {
                sub.push(m.at(i, j).clone());
            }
        }
        let minor = Matrix::new(k, k, sub)?;
        out.push(minor.det_cofactor()?);
    }
    Ok(out)
}

/// Pairs a d×k with a d×(d−k) block under the top wedge ∧^d F^d ≅ F:
/// the determinant of the concatenated d×d matrix.
pub fn top_form<T: Scalar>(u: &Matrix<T>, v: &Matrix<T>) -> Result<T, MatrixError> {
    if u.rows() != v.rows() || u.cols() + v.cols() != u.rows() {
        return Err(MatrixError::DimensionMismatch(format!(
            "top form of {}x{} with {}x{}",
            u.rows(),
            u.cols(),
            v.rows(),
            v.cols()
        )));
    }
    let d = u.rows();
    let mut data = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..u.cols() {
            data.push(u.at(i, j).clone());
        }
        for j in 0..v.cols() {
            data.push(v.at(i, j).clone());
        }
    }
    Matrix::new(d, d, data)?.det_cofactor()
}

/// Converts a rational matrix to doubles.
pub fn to_f64_matrix(m: &Matrix<Rat>) -> Matrix<f64> {
    m.map(|x| x.to_f64().unwrap_or(f64::NAN))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::puiseux_field::parse_textual;
    use alloc::string::ToString;
    use alloc::vec;

    fn f(s: &str) -> FieldElem {
        parse_textual(s).unwrap()
    }

    fn m2(a: &str, b: &str, c: &str, d: &str) -> Matrix<FieldElem> {
        Matrix::from_rows(vec![vec![f(a), f(b)], vec![f(c), f(d)]]).unwrap()
    }

    fn rep_one_gen(name: &str, g: Matrix<FieldElem>) -> Representation<FieldElem> {
        let mut gens = BTreeMap::new();
        gens.insert(name.to_owned(), g);
        Representation::new(2, gens, true).unwrap()
    }

    #[test]
    fn product_matches_hand_multiplication() {
        // [[t,1],[0,1/t]] · [[1,0],[t,1]] = [[2t,1],[1,1/t]], by hand.
        let a = m2("t", "1", "0", "t^(-1)");
        let b = m2("1", "0", "t", "1");
        let prod = a.mul(&b, &Budget::default()).unwrap();
        let expected = m2("2*t", "1", "1", "t^(-1)");
        assert_eq!(prod, expected);
    }

    #[test]
    fn char_poly_matches_cofactor_oracle_2x2() {
        // Oracle for 2×2: det(λI − A) = λ² − tr(A)λ + det(A), with the
        // determinant from the cofactor route, not Faddeev-LeVerrier.
        let a = m2("t + 1", "1", "t", "1");
        let tr = a.trace().unwrap();
        let det = a.det_cofactor().unwrap();
        assert_eq!(det, f("1"));
        let coeffs = a.char_poly(&Budget::default()).unwrap();
        assert_eq!(coeffs.len(), 3);
        assert_eq!(coeffs[2], f("1"));
        assert_eq!(coeffs[1], -tr.clone());
        assert_eq!(coeffs[0], det);
        assert_eq!(coeffs[1], f("-t - 2"));
    }

    #[test]
    fn char_poly_matches_principal_minor_oracle_3x3() {
        // Oracle for 3×3: c_2 = −tr, c_1 = sum of principal 2×2 minors,
        // c_0 = −det, each via explicit cofactor formulas.
        let a = Matrix::from_rows(vec![
            vec![f("t"), f("1"), f("0")],
            vec![f("0"), f("1"), f("1")],
            vec![f("1"), f("0"), f("t^(-1)")],
        ])
        .unwrap();
        let tr = a.trace().unwrap();
        let det = a.det_cofactor().unwrap();
        let minor = |i: usize, j: usize| {
            a.at(i, i).clone() * a.at(j, j).clone() - a.at(i, j).clone() * a.at(j, i).clone()
        };
        let c1 = minor(0, 1) + minor(0, 2) + minor(1, 2);
        let coeffs = a.char_poly(&Budget::default()).unwrap();
        assert_eq!(coeffs[3], f("1"));
        assert_eq!(coeffs[2], -tr);
        assert_eq!(coeffs[1], c1);
        assert_eq!(coeffs[0], -det);
    }

    #[test]
    fn adjugate_satisfies_the_defining_identity() {
        let budget = Budget::default();
        let a = m2("t + 1", "1", "t", "1");
        let adj = a.adjugate(&budget).unwrap();
        let prod = a.mul(&adj, &budget).unwrap();
        let det = a.det(&budget).unwrap();
        assert_eq!(prod, Matrix::identity(2).scale(&det));

        let b = Matrix::from_rows(vec![
            vec![f("t"), f("2"), f("0")],
            vec![f("1"), f("t^2"), f("1")],
            vec![f("0"), f("1"), f("1")],
        ])
        .unwrap();
        let adj = b.adjugate(&budget).unwrap();
        let prod = b.mul(&adj, &budget).unwrap();
        let det = b.det(&budget).unwrap();
        assert_eq!(det, b.det_cofactor().unwrap());
        assert_eq!(prod, Matrix::identity(3).scale(&det));
    }

    #[test]
    fn eval_word_matches_manual_product() {
        let budget = Budget::default();
        let a = m2("t", "0", "0", "t^(-1)");
        let b = m2("1", "1", "0", "1");
        let mut gens = BTreeMap::new();
        gens.insert("a".to_owned(), a.clone());
        gens.insert("b".to_owned(), b.clone());
        let rep = Representation::new(2, gens, true).unwrap();

        let w = GroupWord::parse("a b a^-1").unwrap();
        let got = rep.eval_word(&w, &budget).unwrap();
        let a_inv = a.inverse_unimodular(&budget).unwrap();
        let manual = a.mul(&b, &budget).unwrap().mul(&a_inv, &budget).unwrap();
        assert_eq!(got, manual);
        // Conjugate of a unipotent: [[1, t²],[0, 1]].
        assert_eq!(got, m2("1", "t^2", "0", "1"));

        let empty = rep.eval_word(&GroupWord::identity(), &budget).unwrap();
        assert_eq!(empty, Matrix::identity(2));
    }

    #[test]
    fn unknown_generator_is_reported() {
        let rep = rep_one_gen("a", m2("t", "0", "0", "t^(-1)"));
        let w = GroupWord::parse("a c").unwrap();
        assert_eq!(
            rep.eval_word(&w, &Budget::default()),
            Err(MatrixError::UnknownGenerator("c".to_string()))
        );
    }

    #[test]
    fn non_unimodular_generators_are_rejected() {
        let mut gens = BTreeMap::new();
        gens.insert("a".to_owned(), m2("2", "0", "0", "1"));
        assert_eq!(
            Representation::new(2, gens, true).unwrap_err(),
            MatrixError::NotUnimodular("a".to_string())
        );
    }

    #[test]
    fn budget_exhaustion_is_loud() {
        let rep = rep_one_gen("a", m2("t + 1", "1", "t", "1"));
        let tiny = Budget::new(6);
        let w = GroupWord::parse("a a a a a a a a").unwrap();
        match rep.eval_word(&w, &tiny) {
            Err(MatrixError::BudgetExceeded { used, limit }) => {
                assert!(used > limit);
                assert_eq!(limit, 6);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn word_parsing_and_display() {
        let w = GroupWord::parse("a b^-1 c'").unwrap();
        assert_eq!(w.to_string(), "a b^-1 c^-1");
        assert_eq!(w.len(), 3);
        assert_eq!(GroupWord::parse("").unwrap(), GroupWord::identity());
        assert_eq!(GroupWord::identity().to_string(), "1");
        assert!(GroupWord::parse("3a").is_err());
        assert!(GroupWord::parse("a^2").is_err());

        let inv = w.inverse();
        assert_eq!(inv.to_string(), "c b a^-1");
        assert!(w.concat(&inv).free_reduce().is_empty());
    }

    #[test]
    fn cyclic_canonicalization_identifies_conjugates() {
        let ab = GroupWord::parse("a b").unwrap();
        let ba = GroupWord::parse("b a").unwrap();
        assert_eq!(ab.cyclic_canonical(), ba.cyclic_canonical());
        // Conjugated words reduce to the same class.
        let conj = GroupWord::parse("c a b c^-1").unwrap();
        assert_eq!(conj.cyclic_canonical(), ab.cyclic_canonical());
        let red = GroupWord::parse("a a^-1 b").unwrap().free_reduce();
        assert_eq!(red.to_string(), "b");
    }

    #[test]
    fn words_up_to_enumerates_conjugacy_classes() {
        let rep = rep_one_gen("a", m2("t", "0", "0", "t^(-1)"));
        // Symmetric one-generator alphabet {a, a^-1}: classes of length ≤ 2
        // are a, a^-1, a², a^-2.
        let words = rep.words_up_to(2);
        let shown: Vec<String> = words.iter().map(|w| w.to_string()).collect();
        assert_eq!(shown, vec!["a", "a a", "a^-1", "a^-1 a^-1"]);
    }

    #[test]
    fn wedge_and_top_form_basics() {
        let e1 = Matrix::from_rows(vec![vec![f("1")], vec![f("0")]]).unwrap();
        let e2 = Matrix::from_rows(vec![vec![f("0")], vec![f("1")]]).unwrap();
        assert_eq!(top_form(&e1, &e2).unwrap(), f("1"));
        assert_eq!(top_form(&e2, &e1).unwrap(), f("-1"));
        assert_eq!(wedge(&e2, 1).unwrap(), vec![f("0"), f("1")]);

        // Wedge of two columns in F⁴: six Plücker coordinates, checked
        // against hand 2×2 minors.
        let m = Matrix::from_rows(vec![
            vec![f("1"), f("0")],
            vec![f("0"), f("1")],
            vec![f("t"), f("2")],
            vec![f("0"), f("t")],
        ])
        .unwrap();
        let w = wedge(&m, 2).unwrap();
        assert_eq!(w, vec![f("1"), f("2"), f("t"), f("-t"), f("0"), f("t^2")]);
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(
            combinations(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn dimension_mismatches_are_reported() {
        let a = m2("1", "0", "0", "1");
        let b = Matrix::from_rows(vec![vec![f("1")], vec![f("0")], vec![f("0")]]).unwrap();
        assert!(matches!(
            a.mul(&b, &Budget::default()),
            Err(MatrixError::DimensionMismatch(_))
        ));
        assert!(matches!(b.trace(), Err(MatrixError::DimensionMismatch(_))));
    }
}
