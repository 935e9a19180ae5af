use thiserror::Error;

use crate::padic::TruncatedValuation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("mixed moduli: {left_p}^{left_e} vs {right_p}^{right_e}")]
    ModulusMismatch {
        left_p: u64,
        left_e: u32,
        right_p: u64,
        right_e: u32,
    },

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("parse error in {input:?} at {token:?}: {reason}")]
    Parse {
        input: String,
        token: String,
        reason: String,
    },

    /// The precision cap was reached while every scanned term stayed
    /// truncated; `partial` is the best bound obtained.
    #[error("undetermined after raising precision to {precision}: value {partial}, m in [{m_from}, {m_to}]")]
    Undetermined {
        partial: TruncatedValuation,
        precision: u32,
        m_from: u64,
        m_to: u64,
    },

    #[error("diagnostic: {0}")]
    Diagnostic(String),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("unknown check {0:?}")]
    UnknownCheck(String),
}

impl Error {
    pub(crate) fn parse(input: &str, token: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_string(),
            token: token.into(),
            reason: reason.into(),
        }
    }
}
