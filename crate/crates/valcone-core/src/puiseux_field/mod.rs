//! The base field: fractions of Puiseux polynomials over ℚ, ordered at t → +∞.
//!
//! A Puiseux polynomial is a finite sum Σ c_e · t^e with rational
//! coefficients and rational exponents (negative exponents allowed).  All
//! exponents of one polynomial share a denominator N, the ramification
//! index, so the polynomial lives in ℚ[u, u⁻¹] for u = t^(1/N).  Fractions
//! of these form a field; it is ordered by eventual sign as t → +∞, and
//! `val` is the order-compatible valuation val(t^e) = −e.
//!
//! The distinguished big element is b = t itself (val(t) = −1 < 0), and
//! base-t logarithms of positive elements are approximated to any requested
//! accuracy by [`log_big`], a pure Dedekind-cut bisection that only ever
//! asks order queries of the form bᵖ ≤ aᵠ.

mod elem;
mod parse;
mod poly;

pub use elem::{log_big, FieldElem};
pub use parse::parse_textual;
pub use poly::PuiseuxPoly;

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;

/// Arbitrary-precision rational number, used for coefficients and exponents.
pub type Rat = Ratio<BigInt>;

/// Builds a rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Ratio::from_integer(BigInt::from(n))
}

/// Builds the rational p/q.  Panics if q = 0.
pub fn rat(p: i64, q: i64) -> Rat {
    Ratio::new(BigInt::from(p), BigInt::from(q))
}

/// Value of the field valuation: a rational, or +∞ exactly on zero.
///
/// Ordered with `Infinite` greatest, so `val(x) >= val(y)` has the usual
/// ultrametric reading for every pair including zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Valuation {
    /// Valuation of a nonzero element.
    Finite(Rat),
    /// Valuation of zero.
    Infinite,
}

impl Valuation {
    /// The finite value, or `None` for +∞.
    pub fn finite(&self) -> Option<&Rat> {
        match self {
            Valuation::Finite(r) => Some(r),
            Valuation::Infinite => None,
        }
    }

    /// True exactly for the valuation of zero.
    pub fn is_infinite(&self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    /// Sum of valuations, with +∞ absorbing.
    pub fn add(&self, other: &Valuation) -> Valuation {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(r) => write!(f, "{r}"),
            Valuation::Infinite => write!(f, "+inf"),
        }
    }
}

/// Errors raised by field arithmetic and the operations built on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PuiseuxError {
    /// Division by the zero element.
    DivisionByZero,
    /// The base passed to `log_big` is not big: val(b) ≥ 0.
    NotBigElement,
    /// The argument passed to `log_big` is not strictly positive.
    NonPositive,
    /// The element is not an exact square in the field.
    NotExactSquare,
    /// Square root of a negative element.
    Negative,
    /// The textual form could not be parsed.
    Parse(String),
}

impl fmt::Display for PuiseuxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PuiseuxError::DivisionByZero => write!(f, "division by zero"),
            PuiseuxError::NotBigElement => {
                write!(f, "logarithm base must be big: val(base) < 0")
            }
            PuiseuxError::NonPositive => {
                write!(f, "logarithm argument must be strictly positive")
            }
            PuiseuxError::NotExactSquare => {
                write!(f, "element is not an exact square in the field")
            }
            PuiseuxError::Negative => write!(f, "square root of a negative element"),
            PuiseuxError::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}
