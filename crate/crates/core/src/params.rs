//! Global system parameters shared by every key generation.

use sha2::{Digest, Sha256};

use crate::error::{Error, Result, WireError};

pub const SUPPORTED_SECURITY_LEVELS: [u16; 3] = [128, 192, 256];
pub const DEFAULT_SECURITY_LEVEL: u16 = 128;
pub const ENCODED_LEN: usize = 4;

/// Registry code of the prime-order group used for key agreement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum GroupId {
    Ristretto255 = 0x01,
}

impl GroupId {
    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            0x01 => Some(GroupId::Ristretto255),
            _ => None,
        }
    }
}

/// Registry code of the hash function used for Lamport bit selection, key
/// derivation and digests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum HashId {
    Sha256 = 0x01,
}

impl HashId {
    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            0x01 => Some(HashId::Sha256),
            _ => None,
        }
    }

    pub fn output_len(self) -> usize {
        match self {
            HashId::Sha256 => 32,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SystemParams {
    security_level: u16,
    group: GroupId,
    hash: HashId,
}

impl SystemParams {
    /// Builds the parameters for a requested security level.
    ///
    /// Every supported level currently selects ristretto255 and SHA-256; the
    /// level itself is still recorded so key files made for different
    /// levels never mix.
    pub fn init(security_level: u32) -> Result<Self> {
        let level = u16::try_from(security_level)
            .ok()
            .filter(|l| SUPPORTED_SECURITY_LEVELS.contains(l))
            .ok_or(Error::UnsupportedSecurityLevel(security_level))?;
        Ok(SystemParams {
            security_level: level,
            group: GroupId::Ristretto255,
            hash: HashId::Sha256,
        })
    }

    pub fn security_level(&self) -> u16 {
        self.security_level
    }

    pub fn group(&self) -> GroupId {
        self.group
    }

    pub fn hash(&self) -> HashId {
        self.hash
    }

    /// Canonical encoding: 2-byte big-endian level, group code, hash code.
    pub fn to_bytes(&self) -> [u8; ENCODED_LEN] {
        let level = self.security_level.to_be_bytes();
        [level[0], level[1], self.group as u8, self.hash as u8]
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, WireError> {
        if bytes.len() < ENCODED_LEN {
            return Err(WireError::Truncated { offset: bytes.len() });
        }
        if bytes.len() > ENCODED_LEN {
            return Err(WireError::TrailingBytes {
                offset: ENCODED_LEN,
                count: bytes.len() - ENCODED_LEN,
            });
        }
        let level = u16::from_be_bytes([bytes[0], bytes[1]]);
        if !SUPPORTED_SECURITY_LEVELS.contains(&level) {
            return Err(WireError::Invalid { offset: 0, what: "security level" });
        }
        let group = GroupId::from_code(bytes[2])
            .ok_or(WireError::UnknownTag { tag: bytes[2], offset: 2 })?;
        let hash = HashId::from_code(bytes[3])
            .ok_or(WireError::UnknownTag { tag: bytes[3], offset: 3 })?;
        Ok(SystemParams { security_level: level, group, hash })
    }

    /// SHA-256 of the canonical encoding; stamped into key files.
    pub fn digest(&self) -> [u8; 32] {
        Sha256::digest(self.to_bytes()).into()
    }
}

impl Default for SystemParams {
    fn default() -> Self {
        SystemParams::init(DEFAULT_SECURITY_LEVEL as u32).expect("default level is supported")
    }
}

pub fn pke_init(security_level: u32) -> Result<SystemParams> {
    SystemParams::init(security_level)
}
