//! Lamport one-time signatures over SHA-256.
//!
//! With n = 256 digest bits and h = 32-byte hash outputs the signing key is
//! 2·n random h-byte strings, the verification key is their hashes, and a
//! signature reveals the n strings selected by the bits of `H(m)`:
//!
//! | item              | size       |
//! |-------------------|------------|
//! | signing key       | 2·n·h = 16384 bytes |
//! | verification key  | 2·n·h = 16384 bytes |
//! | signature         | n·h   = 8192 bytes  |
//!
//! Revealing a second set of preimages leaks enough of the signing key to
//! forge, so a key pair refuses to sign twice.

use std::fmt;

use rand::{CryptoRng, RngCore};
use sha2::{Digest, Sha256};
use subtle::ConstantTimeEq;

use crate::counters::{Op, OpCounters};
use crate::error::{Error, Result};
use crate::params::SystemParams;

pub const HASH_LEN: usize = 32;
pub const MESSAGE_BITS: usize = 8 * HASH_LEN;
pub const SIGNING_KEY_LEN: usize = 2 * MESSAGE_BITS * HASH_LEN;
pub const VERIFYING_KEY_LEN: usize = 2 * MESSAGE_BITS * HASH_LEN;
pub const SIGNATURE_LEN: usize = MESSAGE_BITS * HASH_LEN;

type Block = [u8; HASH_LEN];

fn hash(data: &[u8]) -> Block {
    Sha256::digest(data).into()
}

/// Bit `i` of the digest, most significant bit of byte 0 first.
fn bit(digest: &Block, i: usize) -> usize {
    ((digest[i / 8] >> (7 - i % 8)) & 1) as usize
}

/// Flat index of the `(bit value, position)` block in either key.
fn slot(b: usize, i: usize) -> usize {
    b * MESSAGE_BITS + i
}

pub struct OneTimeKeyPair {
    // slot(b, i) layout: all bit-0 blocks first, then all bit-1 blocks.
    secret: Vec<Block>,
    verifying: Vec<Block>,
    used: bool,
}

impl OneTimeKeyPair {
    pub fn generate<R: RngCore + CryptoRng>(
        _params: &SystemParams,
        rng: &mut R,
        counters: &mut OpCounters,
    ) -> Self {
        counters.record(Op::OtsGen);
        let mut secret = vec![[0u8; HASH_LEN]; 2 * MESSAGE_BITS];
        for block in secret.iter_mut() {
            rng.fill_bytes(block);
        }
        let verifying = secret.iter().map(|s| hash(s)).collect();
        OneTimeKeyPair { secret, verifying, used: false }
    }

    pub fn is_used(&self) -> bool {
        self.used
    }

    pub fn signing_key_len(&self) -> usize {
        self.secret.len() * HASH_LEN
    }

    /// `vk[b][i]` blocks concatenated in `(b, i)` order.
    pub fn verifying_key(&self) -> Vec<u8> {
        self.verifying.concat()
    }

    /// Signs `m`, consuming the key. A second call is always an error.
    pub fn sign(&mut self, m: &[u8], counters: &mut OpCounters) -> Result<OtsSignature> {
        if self.used {
            return Err(Error::OneTimeKeyReused);
        }
        self.used = true;
        counters.record(Op::OtsSign);
        let digest = hash(m);
        let mut sig = Vec::with_capacity(SIGNATURE_LEN);
        for i in 0..MESSAGE_BITS {
            sig.extend_from_slice(&self.secret[slot(bit(&digest, i), i)]);
        }
        Ok(OtsSignature(sig))
    }

    #[cfg(test)]
    fn secret_block(&self, b: usize, i: usize) -> &Block {
        &self.secret[slot(b, i)]
    }
}

impl fmt::Debug for OneTimeKeyPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OneTimeKeyPair").field("used", &self.used).finish_non_exhaustive()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OtsSignature(Vec<u8>);

impl OtsSignature {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.0
    }
}

/// Total verification predicate: any length mismatch or garbage key is
/// simply `false`.
pub fn ots_verify(vk: &[u8], m: &[u8], sig: &[u8], counters: &mut OpCounters) -> bool {
    counters.record(Op::OtsVerify);
    if vk.len() != VERIFYING_KEY_LEN || sig.len() != SIGNATURE_LEN {
        return false;
    }
    let digest = hash(m);
    let mut ok = 1u8;
    for (i, preimage) in sig.chunks_exact(HASH_LEN).enumerate() {
        let s = slot(bit(&digest, i), i) * HASH_LEN;
        let expected = &vk[s..s + HASH_LEN];
        ok &= hash(preimage).ct_eq(expected).unwrap_u8();
    }
    ok == 1
}

pub fn ots_gen<R: RngCore + CryptoRng>(
    params: &SystemParams,
    rng: &mut R,
    counters: &mut OpCounters,
) -> OneTimeKeyPair {
    OneTimeKeyPair::generate(params, rng, counters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;
    use std::collections::HashSet;

    fn keypair(seed: u64) -> OneTimeKeyPair {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        ots_gen(&SystemParams::default(), &mut rng, &mut OpCounters::new())
    }

    #[test]
    fn sizes_follow_lamport_arithmetic() {
        assert_eq!(SIGNING_KEY_LEN, 2 * 256 * 32);
        assert_eq!(SIGNING_KEY_LEN, 16384);
        assert_eq!(VERIFYING_KEY_LEN, 16384);
        assert_eq!(SIGNATURE_LEN, 8192);
        let mut kp = keypair(1);
        assert_eq!(kp.signing_key_len(), 16384);
        assert_eq!(kp.verifying_key().len(), 16384);
        let sig = kp.sign(b"m", &mut OpCounters::new()).unwrap();
        assert_eq!(sig.as_bytes().len(), 8192);
    }

    #[test]
    fn every_verifying_block_hashes_its_secret() {
        let kp = keypair(2);
        let vk = kp.verifying_key();
        for b in 0..2 {
            for i in 0..MESSAGE_BITS {
                let s = slot(b, i) * HASH_LEN;
                assert_eq!(&vk[s..s + HASH_LEN], &hash(kp.secret_block(b, i))[..]);
            }
        }
    }

    #[test]
    fn independent_keys_share_no_secret_blocks() {
        let mut seen = HashSet::new();
        for seed in 0..100 {
            let kp = keypair(1000 + seed);
            for block in &kp.secret {
                assert!(seen.insert(*block), "repeated secret block");
            }
        }
    }

    #[test]
    fn sign_verify_and_reuse() {
        let mut counters = OpCounters::new();
        let mut kp = keypair(3);
        assert!(!kp.is_used());
        let sig = kp.sign(b"hello", &mut counters).unwrap();
        assert!(kp.is_used());
        assert!(ots_verify(&kp.verifying_key(), b"hello", sig.as_bytes(), &mut counters));
        assert!(!ots_verify(&kp.verifying_key(), b"hellp", sig.as_bytes(), &mut counters));
        assert_eq!(kp.sign(b"hello", &mut counters), Err(Error::OneTimeKeyReused));
        assert_eq!(kp.sign(b"other", &mut counters), Err(Error::OneTimeKeyReused));
        assert_eq!(counters.ots_sign(), 1);
        assert_eq!(counters.ots_verify(), 2);
    }

    #[test]
    fn every_single_byte_flip_of_a_signature_fails() {
        let mut counters = OpCounters::new();
        let mut kp = keypair(4);
        let vk = kp.verifying_key();
        let sig = kp.sign(b"flip me", &mut counters).unwrap().into_bytes();
        let mut tampered = sig.clone();
        for pos in 0..sig.len() {
            tampered[pos] ^= 0x01;
            assert!(!ots_verify(&vk, b"flip me", &tampered, &mut counters), "flip at {pos}");
            tampered[pos] = sig[pos];
        }
        assert!(ots_verify(&vk, b"flip me", &tampered, &mut counters));
    }

    #[test]
    fn random_verifying_keys_never_accept() {
        let mut counters = OpCounters::new();
        let mut kp = keypair(5);
        let sig = kp.sign(b"msg", &mut counters).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(55);
        let mut vk = vec![0u8; VERIFYING_KEY_LEN];
        let accepted = (0..10_000)
            .filter(|_| {
                rng.fill_bytes(&mut vk);
                ots_verify(&vk, b"msg", sig.as_bytes(), &mut counters)
            })
            .count();
        assert_eq!(accepted, 0);
    }

    #[test]
    fn structurally_invalid_inputs_are_false() {
        let mut counters = OpCounters::new();
        let mut kp = keypair(6);
        let vk = kp.verifying_key();
        let sig = kp.sign(b"m", &mut counters).unwrap().into_bytes();
        assert!(!ots_verify(&vk[..100], b"m", &sig, &mut counters));
        assert!(!ots_verify(&vk, b"m", &sig[..8191], &mut counters));
        assert!(!ots_verify(&[], b"m", &[], &mut counters));
    }
}
