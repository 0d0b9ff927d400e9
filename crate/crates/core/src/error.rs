use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("generation failed after {attempts} attempts")]
    GenerationFailed { attempts: u64 },

    #[error("graph has {n} vertices, solver cap is {cap}")]
    SizeCapExceeded { n: usize, cap: usize },

    #[error("illegal move: {0}")]
    IllegalMove(#[from] crate::game::MoveError),

    #[error("decomposition failed: {0}")]
    Decomposition(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}
