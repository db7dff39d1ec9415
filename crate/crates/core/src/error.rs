//! Error types shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on the inputs was violated.
    #[error("domain error: {0}")]
    Domain(String),

    /// An operation requiring a Hermitian matrix received a non-Hermitian one.
    #[error("matrix is not Hermitian (max |A - A\u{2020}| = {max_deviation:.3e})")]
    NotHermitian { max_deviation: f64 },

    /// A numerical routine failed to deliver its accuracy contract.
    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    /// The spin-flip overlap condition required by the mixing formulas
    /// does not hold for the pair of states (indices into the input list).
    #[error(
        "spin-flip overlap condition violated for states ({state_m}, {state_n}): \
         |overlap| = {magnitude:.3e}"
    )]
    ConditionViolated {
        state_m: usize,
        state_n: usize,
        magnitude: f64,
    },

    /// Two grids that must share a parameter layout do not.
    #[error("grid spec mismatch: {0}")]
    SpecMismatch(String),

    /// The request exceeds the resource envelope this crate is sized for.
    #[error("capacity exceeded: {0}")]
    Capacity(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
