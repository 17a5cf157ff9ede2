use thiserror::Error;

use crate::ode::OdeError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Ode(#[from] OdeError),

    #[error("machine run for byte {byte} diverged at step {step}")]
    CodebookDivergence { byte: u8, step: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Malformed bytes or text: wrong magic, version, length, or encoding.
    #[error("format error: {0}")]
    Format(String),

    /// Well-formed input whose decoded fields break a key invariant.
    #[error("invalid value: {0}")]
    Value(String),

    #[error("ciphertext value at position {position} matches no codebook entry")]
    NoMatch { position: usize },

    #[error("ciphertext value at position {position} matches more than one codebook entry")]
    Ambiguous { position: usize },

    #[error("no valid key among {attempts} candidates starting at seed {seed}")]
    KeygenExhausted { seed: u64, attempts: u32 },
}
