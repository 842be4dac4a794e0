//! Reusable broadcaster signatures (Ed25519, strict verification).
//!
//! `verify_strict` rejects non-canonical `S` values and small-order keys,
//! which gives strong unforgeability: no new signature on an already signed
//! message can be produced without the secret key.

use std::fmt;

use ed25519_dalek::{Signer, SigningKey, VerifyingKey};
use rand::{CryptoRng, RngCore};

use crate::counters::{Op, OpCounters};
use crate::error::{Error, Result};
use crate::params::SystemParams;

/// Length of the canonical `pk_B` encoding, which is also the header that
/// prefixes each component payload in the improved scheme.
pub const HEADER_LEN: usize = 32;
pub const SECRET_KEY_LEN: usize = 32;
pub const SIGNATURE_LEN: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BroadcasterPublicKey([u8; HEADER_LEN]);

impl BroadcasterPublicKey {
    /// Accepts only encodings that decode to a curve point.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let encoded: [u8; HEADER_LEN] = bytes
            .try_into()
            .map_err(|_| Error::InvalidKey("broadcaster public key must be 32 bytes"))?;
        VerifyingKey::from_bytes(&encoded)
            .map_err(|_| Error::InvalidKey("broadcaster public key is not a curve point"))?;
        Ok(BroadcasterPublicKey(encoded))
    }

    pub fn as_bytes(&self) -> &[u8; HEADER_LEN] {
        &self.0
    }
}

impl fmt::Debug for BroadcasterPublicKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BroadcasterPublicKey(")?;
        for b in &self.0[..8] {
            write!(f, "{b:02x}")?;
        }
        write!(f, "..)")
    }
}

pub struct BroadcasterKeyPair {
    signing: SigningKey,
}

impl BroadcasterKeyPair {
    pub fn generate<R: RngCore + CryptoRng>(_params: &SystemParams, rng: &mut R) -> Self {
        let mut seed = [0u8; SECRET_KEY_LEN];
        rng.fill_bytes(&mut seed);
        BroadcasterKeyPair { signing: SigningKey::from_bytes(&seed) }
    }

    pub fn from_secret_bytes(bytes: &[u8]) -> Result<Self> {
        let seed: [u8; SECRET_KEY_LEN] = bytes
            .try_into()
            .map_err(|_| Error::InvalidKey("broadcaster secret key must be 32 bytes"))?;
        Ok(BroadcasterKeyPair { signing: SigningKey::from_bytes(&seed) })
    }

    pub fn secret_bytes(&self) -> [u8; SECRET_KEY_LEN] {
        self.signing.to_bytes()
    }

    pub fn public_key(&self) -> BroadcasterPublicKey {
        BroadcasterPublicKey(self.signing.verifying_key().to_bytes())
    }

    /// Usable any number of times.
    pub fn sign(&self, m: &[u8], counters: &mut OpCounters) -> Vec<u8> {
        counters.record(Op::SigSign);
        self.signing.sign(m).to_bytes().to_vec()
    }
}

impl fmt::Debug for BroadcasterKeyPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BroadcasterKeyPair").field("public", &self.public_key()).finish_non_exhaustive()
    }
}

/// Total verification predicate over raw bytes; garbage keys or signatures
/// are `false`.
pub fn sig_verify(pk: &[u8], m: &[u8], sig: &[u8], counters: &mut OpCounters) -> bool {
    counters.record(Op::SigVerify);
    let (Ok(pk), Ok(sig)) = (<[u8; HEADER_LEN]>::try_from(pk), <[u8; SIGNATURE_LEN]>::try_from(sig)) else {
        return false;
    };
    let Ok(vk) = VerifyingKey::from_bytes(&pk) else {
        return false;
    };
    vk.verify_strict(m, &ed25519_dalek::Signature::from_bytes(&sig)).is_ok()
}

pub fn sig_gen<R: RngCore + CryptoRng>(params: &SystemParams, rng: &mut R) -> BroadcasterKeyPair {
    BroadcasterKeyPair::generate(params, rng)
}
