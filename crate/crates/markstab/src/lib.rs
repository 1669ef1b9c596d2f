//! Exact decision procedures for GIT stability of projective linear maps
//! with marked points.
//!
//! A configuration is a pair (T, v₁…vₙ): a nonzero square matrix up to scale
//! acting on projective space P^N, together with n marked points, weighted by
//! a polarization (q; m₁…mₙ). This crate decides stability, strict
//! semistability, or instability of such configurations by exact arithmetic.
//!
//! All arithmetic is exact (arbitrary-precision rationals or canonical
//! residues of prime fields); no floating point appears in any decision path.

pub mod error;
pub mod field;
pub mod flags;
pub mod gen;
pub mod io;
pub mod matrix;
pub mod polyhedra;
pub mod profiles;
pub mod stability;
pub mod subspace;

pub use error::{Error, Result};
