//! On-disk formats: representation files, flag files, CSV artifacts, and
//! the textual conventions shared by every artifact.
//!
//! A representation file is JSON:
//!
//! ```json
//! {
//!   "n": 2,
//!   "field": "puiseux",
//!   "symmetric": true,
//!   "generators": {
//!     "a": [["t", "0"], ["0", "t^(-1)"]],
//!     "b": [["1", "1"], ["0", "1"]]
//!   }
//! }
//! ```
//!
//! Puiseux entries are strings in the textual polynomial form
//! (`3*t^(1/2) - 2 + 7*t^(-1)`), plain rationals (`3/4`), JSON numbers, or
//! `{"num": "...", "den": "..."}` objects for genuine fractions.  With
//! `"field": "real"` entries are JSON numbers or decimal strings and the
//! file can also be loaded at floating-point precision.  Exact commands
//! convert real entries to rationals (decimal strings exactly, numbers by
//! their binary value), so they require entries whose rational matrix is
//! exactly unimodular.
//!
//! Rational values in artifacts are written as `"p/q"` strings with the
//! denominator always present; radicals as `"(p/q)^(1/r)"`.  CSV files use
//! comma separators, `\n` line endings, and no quoting (no field produced
//! here contains a comma).

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::Deserialize;

use valcone_core::matrix_algebra::{GroupWord, Matrix, MatrixError, Representation};
use valcone_core::puiseux_field::{parse_textual, FieldElem, Rat};
use valcone_core::valued_spectra::{NormValue, WeylNorm};

/// Errors from loading or writing files.
#[derive(Debug)]
pub enum FormatError {
    /// Filesystem failure.
    Io(std::io::Error),
    /// Malformed JSON.
    Json(serde_json::Error),
    /// Structurally valid input with invalid content.
    Invalid(String),
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::Io(e) => write!(f, "io error: {e}"),
            FormatError::Json(e) => write!(f, "json error: {e}"),
            FormatError::Invalid(m) => write!(f, "invalid input: {m}"),
        }
    }
}

impl std::error::Error for FormatError {}

impl From<std::io::Error> for FormatError {
    fn from(e: std::io::Error) -> Self {
        FormatError::Io(e)
    }
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json(e)
    }
}

impl From<MatrixError> for FormatError {
    fn from(e: MatrixError) -> Self {
        FormatError::Invalid(e.to_string())
    }
}

/// Scalar domain declared by a representation file.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    /// Entries live in the Puiseux fraction field.
    Puiseux,
    /// Entries are real constants.
    Real,
}

/// A representation file as read from disk.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepFile {
    /// Matrix size n of SL(n).
    pub n: usize,
    /// Scalar domain of the entries.
    pub field: FieldKind,
    /// Whether trace sums over the generating set include inverses.
    #[serde(default = "default_true")]
    pub symmetric: bool,
    /// Generator images, row-major.
    pub generators: BTreeMap<String, Vec<Vec<serde_json::Value>>>,
}

fn default_true() -> bool {
    true
}

impl RepFile {
    /// Reads and parses a representation file.
    pub fn load(path: &Path) -> Result<Self, FormatError> {
        let text = fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    /// Builds the exact representation over the Puiseux fraction field.
    /// Real files parse their entries as rational literals, not as
    /// polynomials in t.
    pub fn to_field(&self) -> Result<Representation<FieldElem>, FormatError> {
        let entry: fn(&serde_json::Value) -> Result<FieldElem, FormatError> = match self.field {
            FieldKind::Puiseux => entry_field,
            FieldKind::Real => entry_real_exact,
        };
        let mut gens = BTreeMap::new();
        for (name, rows) in &self.generators {
            gens.insert(name.clone(), parse_matrix(name, rows, self.n, entry)?);
        }
        Ok(Representation::new(self.n, gens, self.symmetric)?)
    }

    /// Builds the floating-point representation; the file must declare
    /// `"field": "real"`.
    pub fn to_real(&self) -> Result<Representation<f64>, FormatError> {
        if self.field != FieldKind::Real {
            return Err(FormatError::Invalid(
                "floating-point load requires \"field\": \"real\"".into(),
            ));
        }
        let mut gens = BTreeMap::new();
        for (name, rows) in &self.generators {
            gens.insert(name.clone(), parse_matrix(name, rows, self.n, entry_real)?);
        }
        Ok(Representation::new(self.n, gens, self.symmetric)?)
    }
}

fn parse_matrix<T: valcone_core::matrix_algebra::Scalar>(
    name: &str,
    rows: &[Vec<serde_json::Value>],
    n: usize,
    entry: impl Fn(&serde_json::Value) -> Result<T, FormatError>,
) -> Result<Matrix<T>, FormatError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(FormatError::Invalid(format!(
            "generator '{name}' is not an {n}x{n} array"
        )));
    }
    let mut data = Vec::with_capacity(n * n);
    for row in rows {
        for v in row {
            data.push(entry(v)?);
        }
    }
    Ok(Matrix::new(n, n, data)?)
}

fn entry_field(v: &serde_json::Value) -> Result<FieldElem, FormatError> {
    match v {
        serde_json::Value::String(s) => {
            parse_textual(s).map_err(|e| FormatError::Invalid(format!("entry '{s}': {e}")))
        }
        serde_json::Value::Number(_) => Ok(FieldElem::from_rat(json_number_rat(v)?)),
        serde_json::Value::Object(map) => {
            let get = |key: &str| -> Result<FieldElem, FormatError> {
                let field = map
                    .get(key)
                    .and_then(|x| x.as_str())
                    .ok_or_else(|| FormatError::Invalid(format!("fraction needs '{key}' string")))?;
                parse_textual(field)
                    .map_err(|e| FormatError::Invalid(format!("entry '{field}': {e}")))
            };
            let num = get("num")?;
            let den = get("den")?;
            let inv = den
                .inverse()
                .map_err(|e| FormatError::Invalid(format!("fraction denominator: {e}")))?;
            Ok(&num * &inv)
        }
        other => Err(FormatError::Invalid(format!(
            "unsupported matrix entry {other}"
        ))),
    }
}

fn entry_real_exact(v: &serde_json::Value) -> Result<FieldElem, FormatError> {
    match v {
        serde_json::Value::String(s) => Ok(FieldElem::from_rat(parse_rat_literal(s)?)),
        serde_json::Value::Number(_) => Ok(FieldElem::from_rat(json_number_rat(v)?)),
        other => Err(FormatError::Invalid(format!(
            "unsupported matrix entry {other}"
        ))),
    }
}

fn entry_real(v: &serde_json::Value) -> Result<f64, FormatError> {
    match v {
        serde_json::Value::Number(x) => x
            .as_f64()
            .ok_or_else(|| FormatError::Invalid(format!("entry {x} is not a double"))),
        serde_json::Value::String(s) => Ok(rat_f64(&parse_rat_literal(s)?)),
        other => Err(FormatError::Invalid(format!(
            "unsupported matrix entry {other}"
        ))),
    }
}

fn json_number_rat(v: &serde_json::Value) -> Result<Rat, FormatError> {
    if let Some(i) = v.as_i64() {
        return Ok(Rat::from_integer(BigInt::from(i)));
    }
    let x = v
        .as_f64()
        .ok_or_else(|| FormatError::Invalid(format!("entry {v} is not a double")))?;
    Ratio::from_float(x).ok_or_else(|| FormatError::Invalid(format!("entry {v} is not finite")))
}

/// Parses `p/q`, integer, or decimal literals (with optional exponent)
/// into an exact rational.
pub fn parse_rat_literal(s: &str) -> Result<Rat, FormatError> {
    let s = s.trim();
    let bad = || FormatError::Invalid(format!("bad rational literal '{s}'"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rat::new(p, q));
    }
    let (mantissa, exp10) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    if digits == "-" || digits == "+" {
        return Err(bad());
    }
    let numer: BigInt = digits.parse().map_err(|_| bad())?;
    let shift = exp10 - i32::try_from(frac_part.len()).map_err(|_| bad())?;
    let ten = BigInt::from(10);
    Ok(if shift >= 0 {
        Rat::from_integer(numer * ten.pow(shift.unsigned_abs()))
    } else {
        Rat::new(numer, ten.pow(shift.unsigned_abs()))
    })
}

/// One flag in a flag file: column spans, entries in the textual form.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagSpec {
    /// Basis of the k-dimensional subspace, as d rows of k entries.
    pub small: Vec<Vec<String>>,
    /// Basis of the (d−k)-dimensional subspace; defaults to `small` when
    /// the two dimensions agree.
    pub big: Option<Vec<Vec<String>>>,
}

/// Flag file for cross-ratio runs: the two fixed flags and a test flag.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagsFile {
    /// Flag the period element attracts towards.
    pub attracting: FlagSpec,
    /// Flag the period element repels from.
    pub repelling: FlagSpec,
    /// Generic comparison flag.
    pub x: FlagSpec,
}

impl FlagsFile {
    /// Reads and parses a flag file.
    pub fn load(path: &Path) -> Result<Self, FormatError> {
        let text = fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }
}

impl FlagSpec {
    /// The two basis matrices (small span, big span).
    pub fn matrices(&self) -> Result<(Matrix<FieldElem>, Matrix<FieldElem>), FormatError> {
        let small = string_matrix(&self.small)?;
        let big = match &self.big {
            Some(rows) => string_matrix(rows)?,
            None => small.clone(),
        };
        Ok((small, big))
    }
}

fn string_matrix(rows: &[Vec<String>]) -> Result<Matrix<FieldElem>, FormatError> {
    if rows.is_empty() || rows[0].is_empty() {
        return Err(FormatError::Invalid("empty flag matrix".into()));
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return Err(FormatError::Invalid("ragged flag matrix".into()));
    }
    let mut data = Vec::with_capacity(rows.len() * cols);
    for row in rows {
        for s in row {
            data.push(
                parse_textual(s).map_err(|e| FormatError::Invalid(format!("entry '{s}': {e}")))?,
            );
        }
    }
    Ok(Matrix::new(rows.len(), cols, data)?)
}

/// Parses a comma-separated word list; each word is whitespace-separated
/// letters with `^-1` or `'` marking inverses.
pub fn parse_words(s: &str) -> Result<Vec<GroupWord>, FormatError> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            return Err(FormatError::Invalid("empty word in word list".into()));
        }
        out.push(GroupWord::parse(part).map_err(|e| FormatError::Invalid(e.to_string()))?);
    }
    if out.is_empty() {
        return Err(FormatError::Invalid("empty word list".into()));
    }
    Ok(out)
}

/// Parses a norm token: `euclid`, `sup`, `l1`, `roots`, `weight:k`, or
/// `lp:p`.
pub fn parse_norm(s: &str) -> Result<WeylNorm, FormatError> {
    match s {
        "euclid" => Ok(WeylNorm::Euclidean),
        "sup" => Ok(WeylNorm::Sup),
        "l1" => Ok(WeylNorm::L1),
        "roots" => Ok(WeylNorm::Root),
        _ => {
            if let Some(k) = s.strip_prefix("weight:") {
                let k: usize = k
                    .parse()
                    .map_err(|_| FormatError::Invalid(format!("bad weight index in '{s}'")))?;
                return Ok(WeylNorm::Weight(k));
            }
            if let Some(p) = s.strip_prefix("lp:") {
                let p: u32 = p
                    .parse()
                    .map_err(|_| FormatError::Invalid(format!("bad exponent in '{s}'")))?;
                return Ok(WeylNorm::Lp(p));
            }
            Err(FormatError::Invalid(format!(
                "unknown norm '{s}' (expected euclid, sup, l1, roots, weight:k, or lp:p)"
            )))
        }
    }
}

/// Canonical `p/q` form with the denominator always present.
pub fn rat_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Approximate double value of a rational.
pub fn rat_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact textual form of a norm value.
pub fn norm_value_string(v: &NormValue) -> String {
    match v {
        NormValue::Rational(r) => rat_string(r),
        NormValue::Radical { sum, p } => format!("({})^(1/{})", rat_string(sum), p),
    }
}

/// Writes a CSV file: header row, then data rows, `\n` endings.
pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<(), FormatError> {
    let mut text = String::new();
    text.push_str(&header.join(","));
    text.push('\n');
    for row in rows {
        debug_assert_eq!(row.len(), header.len());
        text.push_str(&row.join(","));
        text.push('\n');
    }
    fs::write(path, text)?;
    Ok(())
}

/// Writes pretty JSON with a trailing newline.
pub fn write_json(path: &Path, value: &serde_json::Value) -> Result<(), FormatError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}
