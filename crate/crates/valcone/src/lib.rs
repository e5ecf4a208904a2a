//! Companion crate to `valcone-core` carrying everything that needs the
//! standard library: file formats, floating-point eigenvalue checks against
//! the exact valuations, the asymptotic-cone consistency trace, the
//! pinch/twist demonstration, and the command-line interface.

pub mod cli;
pub mod cone;
pub mod formats;
pub mod numeric;
pub mod pinchtwist;
