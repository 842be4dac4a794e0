//! Authenticated symmetric layer: ChaCha20-Poly1305 with a random 96-bit
//! nonce prepended to the ciphertext.

use std::fmt;

use chacha20poly1305::aead::{Aead, KeyInit};
use chacha20poly1305::{ChaCha20Poly1305, Nonce};
use rand::{CryptoRng, RngCore};

use crate::counters::{Op, OpCounters};

pub const KEY_LEN: usize = 32;
const NONCE_LEN: usize = 12;
const TAG_LEN: usize = 16;
/// `len(sym_enc(K, M)) - len(M)` for every `M`.
pub const OVERHEAD: usize = NONCE_LEN + TAG_LEN;

#[derive(Clone, PartialEq, Eq)]
pub struct SymmetricKey([u8; KEY_LEN]);

impl SymmetricKey {
    pub fn generate<R: RngCore + CryptoRng>(rng: &mut R) -> Self {
        let mut key = [0u8; KEY_LEN];
        rng.fill_bytes(&mut key);
        SymmetricKey(key)
    }

    pub fn from_bytes(bytes: &[u8]) -> Option<Self> {
        bytes.try_into().ok().map(SymmetricKey)
    }

    pub fn as_bytes(&self) -> &[u8; KEY_LEN] {
        &self.0
    }

    pub fn encrypt<R: RngCore + CryptoRng>(&self, m: &[u8], rng: &mut R, counters: &mut OpCounters) -> Vec<u8> {
        counters.record(Op::SymEnc);
        let mut nonce = [0u8; NONCE_LEN];
        rng.fill_bytes(&mut nonce);
        let sealed = ChaCha20Poly1305::new(&self.0.into())
            .encrypt(Nonce::from_slice(&nonce), m)
            .expect("in-memory AEAD encryption does not fail");
        let mut out = Vec::with_capacity(NONCE_LEN + sealed.len());
        out.extend_from_slice(&nonce);
        out.extend_from_slice(&sealed);
        out
    }

    /// `None` is ⊥: wrong key, tampering, or a ciphertext too short to hold
    /// a nonce and tag.
    pub fn decrypt(&self, c: &[u8], counters: &mut OpCounters) -> Option<Vec<u8>> {
        counters.record(Op::SymDec);
        if c.len() < OVERHEAD {
            return None;
        }
        let (nonce, sealed) = c.split_at(NONCE_LEN);
        ChaCha20Poly1305::new(&self.0.into()).decrypt(Nonce::from_slice(nonce), sealed).ok()
    }
}

impl fmt::Debug for SymmetricKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("SymmetricKey(..)")
    }
}

pub fn sym_enc<R: RngCore + CryptoRng>(k: &SymmetricKey, m: &[u8], rng: &mut R, counters: &mut OpCounters) -> Vec<u8> {
    k.encrypt(m, rng, counters)
}

pub fn sym_dec(k: &SymmetricKey, c: &[u8], counters: &mut OpCounters) -> Option<Vec<u8>> {
    k.decrypt(c, counters)
}
