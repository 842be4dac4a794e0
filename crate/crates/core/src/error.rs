use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failures other than the cryptographic rejection value.
///
/// Decryption rejection (⊥) is modelled as `None`, never as an `Error`, so a
/// caller can always tell "this ciphertext is not for you / not authentic"
/// apart from "you called the API wrongly".
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported security level {0} (expected 128, 192 or 256)")]
    UnsupportedSecurityLevel(u32),

    #[error("plaintext too long: {len} bytes, at most {max} allowed")]
    PlaintextTooLong { len: usize, max: usize },

    #[error("message too long: {len} bytes, at most {max} allowed")]
    MessageTooLong { len: usize, max: usize },

    #[error("malformed component: {0}")]
    MalformedComponent(&'static str),

    #[error("one-time signing key has already been used")]
    OneTimeKeyReused,

    #[error("recipient set is empty")]
    EmptyRecipientSet,

    #[error("duplicate recipient public key at position {0}")]
    DuplicateRecipient(usize),

    #[error("invalid key encoding: {0}")]
    InvalidKey(&'static str),

    #[error("inconsistent ciphertext: {0}")]
    InconsistentCiphertext(&'static str),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Wire(#[from] WireError),
}

/// Parse failures of the binary formats. Every variant carries the byte
/// offset at which parsing stopped.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WireError {
    #[error("bad magic at offset {offset}")]
    BadMagic { offset: usize },

    #[error("unknown tag {tag:#04x} at offset {offset}")]
    UnknownTag { tag: u8, offset: usize },

    #[error("input truncated at offset {offset}")]
    Truncated { offset: usize },

    #[error("{count} trailing bytes at offset {offset}")]
    TrailingBytes { offset: usize, count: usize },

    #[error("invalid field at offset {offset}: {what}")]
    Invalid { offset: usize, what: &'static str },

    #[error("system parameter digest mismatch")]
    ParamsMismatch,
}

impl WireError {
    pub fn offset(&self) -> Option<usize> {
        match self {
            WireError::BadMagic { offset }
            | WireError::UnknownTag { offset, .. }
            | WireError::Truncated { offset }
            | WireError::TrailingBytes { offset, .. }
            | WireError::Invalid { offset, .. } => Some(*offset),
            WireError::ParamsMismatch => None,
        }
    }
}
