//! Exact arithmetic for degenerations of representations into SL(n).
//!
//! The crate models a concrete ordered non-Archimedean real closed field —
//! fractions of finite Puiseux polynomials over the rationals, ordered at
//! t → +∞ — and computes the valuation-level spectral data attached to
//! matrix representations over that field: Newton polygons, Jordan and
//! Cartan projection vectors, Weyl-invariant translation lengths and
//! distances, character-variety trace coordinates with the minimal-vector
//! condition, normalized Weyl-chamber length functions, and flag
//! cross-ratios with their periods.
//!
//! Everything here is pure computation over immutable values: the crate is
//! `no_std` (with `alloc`) and contains no IO. File formats, the CLI, and
//! floating-point cross-checks against real specializations live in the
//! companion `valcone` crate.

#![no_std]
#![forbid(unsafe_code)]
#![warn(missing_docs)]

extern crate alloc;

pub mod char_variety;
pub mod cross_ratio;
pub mod degeneration;
pub mod matrix_algebra;
pub mod puiseux_field;
pub mod valued_spectra;

#[cfg(any(test, feature = "sampling"))]
pub mod sampling;
