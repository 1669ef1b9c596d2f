//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes surfaced by the library.
///
/// The CLI maps these onto process exit codes: input-shaped errors exit with
/// code 2, budget exhaustion with code 3.
#[derive(Debug, Error)]
pub enum Error {
    /// The zero matrix has no profile, no control matrix and no corner
    /// polyhedron; every operation that classifies a matrix rejects it.
    #[error("the zero matrix has a trivial profile and is rejected")]
    TrivialProfile,

    /// Structurally invalid input: dimension mismatches, empty point lists,
    /// non-prime moduli, malformed JSON, violated preconditions.
    #[error("invalid input: {0}")]
    Input(String),

    /// An enumeration (flags, bases, subsets) would exceed the configured
    /// budget. Carries the exact count that would have been visited.
    #[error("enumeration budget exceeded: {needed} items needed, budget is {budget}")]
    Budget { needed: String, budget: u64 },

    /// A flag that is none of Type I / II / III was passed where a test flag
    /// is required (e.g. when evaluating the stability bound).
    #[error("flag is not a test flag (none of the three types applies)")]
    NotATestFlag,

    /// The companion normal form is undefined: the marked vector is not
    /// cyclic, or T^(N+1)v vanishes.
    #[error("normal form undefined: {0}")]
    NotStable(String),

    /// The moduli chart is undefined: eigenvalues are repeated, lie outside
    /// the working field, or the first point misses an eigencoordinate.
    #[error("instance is not generic: {0}")]
    NotGeneric(String),
}

impl Error {
    /// Convenience constructor for [`Error::Input`].
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
