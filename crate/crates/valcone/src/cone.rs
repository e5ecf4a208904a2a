//! Consistency of the exact boundary lengths with real specializations.
//!
//! A Puiseux representation evaluated at a growing real parameter s gives
//! honest SL(n, ℝ) matrices.  Dividing their eigenvalue log-magnitudes by
//! λ = ln s and letting s grow recovers the exact valuation vectors, and
//! this module measures how fast: it samples the given parameters,
//! rescales, compares each sample against the exact vectors, and
//! extrapolates the sampled sequence.  The limit statement certified here
//! is existence along the sampled sequence with decreasing deviation, not
//! convergence along an abstract ultrafilter.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::numeric::{eigenvalue_ln_moduli, NumericError};
use valcone_core::matrix_algebra::{Budget, GroupWord, MatrixError, Representation};
use valcone_core::puiseux_field::FieldElem;
use valcone_core::valued_spectra::{jordan_vector, SpectraError};

/// Errors from a consistency run.
#[derive(Debug)]
pub enum ConeError {
    /// Exact matrix arithmetic failed.
    Matrix(MatrixError),
    /// Exact spectral data failed.
    Spectra(SpectraError),
    /// The floating-point eigenvalue routes could not certify a sample.
    NumericBreakdown(String),
}

impl fmt::Display for ConeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeError::Matrix(e) => write!(f, "{e}"),
            ConeError::Spectra(e) => write!(f, "{e}"),
            ConeError::NumericBreakdown(m) => write!(f, "numeric breakdown: {m}"),
        }
    }
}

impl std::error::Error for ConeError {}

impl From<MatrixError> for ConeError {
    fn from(e: MatrixError) -> Self {
        ConeError::Matrix(e)
    }
}

impl From<SpectraError> for ConeError {
    fn from(e: SpectraError) -> Self {
        ConeError::Spectra(e)
    }
}

impl From<NumericError> for ConeError {
    fn from(e: NumericError) -> Self {
        let NumericError::Breakdown(m) = e;
        ConeError::NumericBreakdown(m)
    }
}

/// One specialization sample.
#[derive(Debug, Clone, Serialize)]
pub struct TraceSample {
    /// The real parameter the representation was evaluated at.
    pub s: f64,
    /// The rescaling divisor λ = ln s.
    pub lambda: f64,
    /// Word → eigenvalue log-magnitudes divided by λ, descending.
    pub rescaled: BTreeMap<String, Vec<f64>>,
    /// Word → sup-distance between the rescaled vector and the exact one.
    pub deviation: BTreeMap<String, f64>,
}

/// Extrapolation of the sampled sequence for one word.
#[derive(Debug, Clone, Serialize)]
pub struct Extrapolation {
    /// Coordinatewise limit of the c₀ + c₁/λ fit through the last
    /// (up to) three samples.
    pub limit: Vec<f64>,
    /// Largest fit residual plus the size |c₁|/λ of the modeled tail at
    /// the final sample.
    pub error_estimate: f64,
    /// The exact vector the samples should approach.
    pub exact: Vec<f64>,
    /// Sup-distance between `limit` and `exact`.
    pub deviation: f64,
}

/// Samples and extrapolation of a degenerating family, rescaled to the
/// boundary.
#[derive(Debug, Clone, Serialize)]
pub struct DegenerationTrace {
    /// The words, as displayed strings, in the order given.
    pub words: Vec<String>,
    /// One entry per parameter, in the given (increasing) order.
    pub samples: Vec<TraceSample>,
    /// Word → extrapolated limit and its distance from the exact value.
    pub extrapolation: BTreeMap<String, Extrapolation>,
}

/// Runs the consistency check.
///
/// The parameters must be > 1 and strictly increasing; λ = ln s is then
/// positive and strictly increasing across samples.
pub fn cone_consistency(
    rep: &Representation<FieldElem>,
    words: &[GroupWord],
    params: &[f64],
    budget: &Budget,
) -> Result<DegenerationTrace, ConeError> {
    assert!(!params.is_empty(), "need at least one parameter");
    assert!(
        params.windows(2).all(|w| w[0] < w[1]),
        "parameters must be strictly increasing"
    );
    assert!(params[0] > 1.0, "parameters must exceed one");

    let mut exact: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for w in words {
        let g = rep.eval_word(w, budget)?;
        exact.insert(w.to_string(), jordan_vector(&g, budget)?.to_f64s());
    }

    let samples: Vec<TraceSample> = params
        .par_iter()
        .map(|&s| -> Result<TraceSample, ConeError> {
            let lambda = s.ln();
            let real = rep.map(|m| m.map(|e| e.specialize(s)));
            let mut rescaled = BTreeMap::new();
            let mut deviation = BTreeMap::new();
            for w in words {
                let g = real.eval_word(w, budget)?;
                let vec: Vec<f64> = eigenvalue_ln_moduli(&g)?
                    .into_iter()
                    .map(|x| x / lambda)
                    .collect();
                let key = w.to_string();
                let target = &exact[&key];
                let dev = vec
                    .iter()
                    .zip(target)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0_f64, f64::max);
                rescaled.insert(key.clone(), vec);
                deviation.insert(key, dev);
            }
            Ok(TraceSample { s, lambda, rescaled, deviation })
        })
        .collect::<Result<Vec<_>, _>>()?;

    let tail = &samples[samples.len().saturating_sub(3)..];
    let lambda_last = tail.last().expect("nonempty samples").lambda;
    let mut extrapolation = BTreeMap::new();
    for w in words {
        let key = w.to_string();
        let target = &exact[&key];
        let n_coords = target.len();
        let mut limit = Vec::with_capacity(n_coords);
        let mut err = 0.0_f64;
        for i in 0..n_coords {
            let pts: Vec<(f64, f64)> = tail
                .iter()
                .map(|smp| (smp.lambda, smp.rescaled[&key][i]))
                .collect();
            let (c0, c1, resid) = fit_with_tail(&pts);
            limit.push(c0);
            err = err.max(resid + (c1 / lambda_last).abs());
        }
        let dev = limit
            .iter()
            .zip(target)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0_f64, f64::max);
        extrapolation.insert(
            key,
            Extrapolation {
                limit,
                error_estimate: err,
                exact: target.clone(),
                deviation: dev,
            },
        );
    }

    Ok(DegenerationTrace {
        words: words.iter().map(|w| w.to_string()).collect(),
        samples,
        extrapolation,
    })
}

/// Least squares fit y ≈ c₀ + c₁/λ; returns (c₀, c₁, max |residual|).
fn fit_with_tail(pts: &[(f64, f64)]) -> (f64, f64, f64) {
    if pts.len() == 1 {
        return (pts[0].1, 0.0, 0.0);
    }
    let n = pts.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(lambda, y) in pts {
        let x = 1.0 / lambda;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let denom = n * sxx - sx * sx;
    let c1 = (n * sxy - sx * sy) / denom;
    let c0 = (sy - c1 * sx) / n;
    let resid = pts
        .iter()
        .map(|&(lambda, y)| (y - c0 - c1 / lambda).abs())
        .fold(0.0_f64, f64::max);
    (c0, c1, resid)
}
