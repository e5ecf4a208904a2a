//! Length functions of degenerating representations.
//!
//! A representation over the field assigns each group word an exact
//! Jordan vector; the family of these vectors is the marked length
//! function of the degeneration.  Dividing by the logarithmic size of the
//! generators normalizes the family to the Θ map, whose projective class
//! is the boundary point the degeneration converges to.  Everything here
//! is exact; the numeric consistency pass over real specializations lives
//! in the companion crate.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix_algebra::{Budget, GroupWord, MatrixError, Representation};
use crate::puiseux_field::{FieldElem, Rat, Valuation};
use crate::valued_spectra::{jordan_vector, NormValue, SpectraError, WeylNorm, WeylVector};

/// Errors from length-function computations.
#[derive(Clone, Debug, PartialEq)]
pub enum DegenError {
    /// Underlying matrix arithmetic failed.
    Matrix(MatrixError),
    /// Underlying spectral computation failed.
    Spectra(SpectraError),
    /// The generator trace sum is bounded, so the representation does not
    /// sit over a boundary point and Θ is undefined.
    NotBoundaryPoint,
    /// Every length vanishes; the projective class is undefined.
    ZeroLengthFunction,
}

impl From<MatrixError> for DegenError {
    fn from(e: MatrixError) -> Self {
        DegenError::Matrix(e)
    }
}

impl From<SpectraError> for DegenError {
    fn from(e: SpectraError) -> Self {
        DegenError::Spectra(e)
    }
}

impl fmt::Display for DegenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegenError::Matrix(e) => write!(f, "{e}"),
            DegenError::Spectra(e) => write!(f, "{e}"),
            DegenError::NotBoundaryPoint => {
                write!(f, "generator trace sum is bounded; not a boundary point")
            }
            DegenError::ZeroLengthFunction => {
                write!(f, "length function vanishes identically (bounded representation)")
            }
        }
    }
}

/// A marked length function: one exact chamber vector per word, with
/// optional per-norm scalarizations.
#[derive(Clone, Debug, PartialEq)]
pub struct LengthFunction {
    /// The words, in the order they were given.
    pub words: Vec<GroupWord>,
    /// Word → exact Jordan vector.
    pub values: BTreeMap<GroupWord, WeylVector>,
    /// Norm → word → scalar length.
    pub scalarizations: BTreeMap<WeylNorm, BTreeMap<GroupWord, NormValue>>,
}

impl LengthFunction {
    /// The vector assigned to a word.
    pub fn get(&self, word: &GroupWord) -> Option<&WeylVector> {
        self.values.get(word)
    }

    /// True when every vector vanishes.
    pub fn is_zero(&self) -> bool {
        self.values.values().all(WeylVector::is_zero)
    }

    /// Sum of |coordinate| over all words, the ℓ¹ size of the function.
    pub fn l1_total(&self) -> Rat {
        let mut acc = Rat::zero();
        for v in self.values.values() {
            for c in v.coords() {
                acc = acc + Signed::abs(c);
            }
        }
        acc
    }

    /// The value-group denominator D: the least positive integer with
    /// every coordinate of every value in (1/D)ℤ.  The length spectrum of
    /// a fixed representation lives on this lattice.
    pub fn value_denominator(&self) -> BigInt {
        let mut d = BigInt::one();
        for v in self.values.values() {
            for c in v.coords() {
                d = d.lcm(c.denom());
            }
        }
        d
    }

    /// Rescales every vector by a positive rational.
    fn scale(&self, c: &Rat, budget: &Budget) -> Result<LengthFunction, DegenError> {
        let _ = budget;
        let values: BTreeMap<GroupWord, WeylVector> = self
            .values
            .iter()
            .map(|(w, v)| (w.clone(), v.scale(c)))
            .collect();
        let mut scalarizations = BTreeMap::new();
        for norm in self.scalarizations.keys() {
            let mut per_word = BTreeMap::new();
            for (w, v) in &values {
                per_word.insert(w.clone(), v.norm(norm)?);
            }
            scalarizations.insert(*norm, per_word);
        }
        Ok(LengthFunction {
            words: self.words.clone(),
            values,
            scalarizations,
        })
    }
}

/// Evaluates the exact length function of the representation on the given
/// words, scalarized under each of the given norms.
pub fn length_function(
    rep: &Representation<FieldElem>,
    words: &[GroupWord],
    norms: &[WeylNorm],
    budget: &Budget,
) -> Result<LengthFunction, DegenError> {
    let mut values = BTreeMap::new();
    for w in words {
        let g = rep.eval_word(w, budget)?;
        values.insert(w.clone(), jordan_vector(&g, budget)?);
    }
    let mut scalarizations = BTreeMap::new();
    for norm in norms {
        let mut per_word = BTreeMap::new();
        for (w, v) in &values {
            per_word.insert(w.clone(), v.norm(norm)?);
        }
        scalarizations.insert(*norm, per_word);
    }
    Ok(LengthFunction {
        words: words.to_vec(),
        values,
        scalarizations,
    })
}

/// The Θ-normalized length function: every vector divided by the
/// logarithmic size of the generator set.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaValue {
    /// Word → L(w)/log_t(2 + Σ_{η∈F} tr(ρ(η)ρ(η)ᵗ)).
    pub normalized: BTreeMap<GroupWord, WeylVector>,
    /// The exact normalizer log_t(2 + Σ tr), a positive rational.
    pub denominator: Rat,
}

/// Logarithmic size of the generator set: log_t(2 + Σ_{η∈F} tr(ρ(η)ρ(η)ᵗ)),
/// where F is the representation's alphabet.  The argument dominates its
/// leading power of t exactly, so the log is the negated valuation, an
/// exact rational.  Bounded trace sums have no logarithmic growth and are
/// rejected.
pub fn generator_log_size(
    rep: &Representation<FieldElem>,
    budget: &Budget,
) -> Result<Rat, DegenError> {
    let mut sum = FieldElem::from_int(2);
    for w in rep.alphabet() {
        let g = rep.eval_word(&w, budget)?;
        let prod = g.mul(&g.transpose(), budget)?;
        sum = &sum + &prod.trace()?;
    }
    match sum.val() {
        Valuation::Finite(v) if v.is_negative() => Ok(-v),
        _ => Err(DegenError::NotBoundaryPoint),
    }
}

/// Evaluates Θ on the given words: the length function rescaled by
/// [`generator_log_size`].  Substituting t ↦ t^c scales numerator and
/// denominator alike, so the result depends only on the projective class
/// of the degeneration.
pub fn theta(
    rep: &Representation<FieldElem>,
    words: &[GroupWord],
    budget: &Budget,
) -> Result<ThetaValue, DegenError> {
    let denominator = generator_log_size(rep, budget)?;
    let lengths = length_function(rep, words, &[], budget)?;
    let inv = Rat::one() / denominator.clone();
    let normalized = lengths
        .values
        .into_iter()
        .map(|(w, v)| (w, v.scale(&inv)))
        .collect();
    Ok(ThetaValue {
        normalized,
        denominator,
    })
}

/// Fixes the representative of the projective class: divides all vectors
/// by the total ℓ¹ size over the word list.
pub fn projectivize(lengths: &LengthFunction, budget: &Budget) -> Result<LengthFunction, DegenError> {
    let total = lengths.l1_total();
    if total.is_zero() {
        return Err(DegenError::ZeroLengthFunction);
    }
    lengths.scale(&(Rat::one() / total), budget)
}
