//! The broadcaster-signed variant: a long-term broadcaster key pair
//! `(pk_B, sk_B)`, every component carrying `pk_B || K`, and `σ` checked
//! under the trusted `pk_B` before any public-key decryption happens.

use rand::seq::SliceRandom;
use rand::{CryptoRng, RngCore};
use subtle::ConstantTimeEq;

use crate::ciphertext::{signed_payload, BroadcastCiphertext, RecipientSet, Scheme, MAX_MESSAGE_LEN};
use crate::counters::{Op, OpCounters};
use crate::error::{Error, Result};
use crate::params::SystemParams;
use crate::primitives::pke::{pke_dec, pke_enc, RecipientSecretKey, RejectMode};
use crate::primitives::sig::{sig_gen, sig_verify, BroadcasterKeyPair, BroadcasterPublicKey, HEADER_LEN};
use crate::primitives::sym::{SymmetricKey, KEY_LEN};

pub const COMPONENT_PLAINTEXT_LEN: usize = HEADER_LEN + KEY_LEN;

/// `pk_B || K`, the plaintext of every component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImprovedHeader {
    pub pk_b: [u8; HEADER_LEN],
    pub key: [u8; KEY_LEN],
}

impl ImprovedHeader {
    pub fn to_bytes(&self) -> [u8; COMPONENT_PLAINTEXT_LEN] {
        let mut out = [0u8; COMPONENT_PLAINTEXT_LEN];
        out[..HEADER_LEN].copy_from_slice(&self.pk_b);
        out[HEADER_LEN..].copy_from_slice(&self.key);
        out
    }

    pub fn parse(bytes: &[u8]) -> Option<Self> {
        if bytes.len() != COMPONENT_PLAINTEXT_LEN {
            return None;
        }
        let (pk_b, key) = bytes.split_at(HEADER_LEN);
        Some(ImprovedHeader { pk_b: pk_b.try_into().ok()?, key: key.try_into().ok()? })
    }
}

pub fn keygen_broadcaster<R: RngCore + CryptoRng>(params: &SystemParams, rng: &mut R) -> BroadcasterKeyPair {
    sig_gen(params, rng)
}

pub fn encrypt<R: RngCore + CryptoRng>(
    _params: &SystemParams,
    recipients: &RecipientSet,
    message: &[u8],
    broadcaster: &BroadcasterKeyPair,
    rng: &mut R,
    counters: &mut OpCounters,
) -> Result<BroadcastCiphertext> {
    if message.len() > MAX_MESSAGE_LEN {
        return Err(Error::MessageTooLong { len: message.len(), max: MAX_MESSAGE_LEN });
    }
    let key = SymmetricKey::generate(rng);
    let header = ImprovedHeader { pk_b: *broadcaster.public_key().as_bytes(), key: *key.as_bytes() }.to_bytes();
    let mut components = recipients
        .iter()
        .map(|pk| pke_enc(pk, &header, rng, counters))
        .collect::<Result<Vec<_>>>()?;
    components.shuffle(rng);

    let c2 = key.encrypt(message, rng, counters);
    let sigma = broadcaster.sign(&signed_payload(&components, &c2), counters);
    BroadcastCiphertext::from_parts(Scheme::Improved, sigma, components, c2)
}

/// Verifies `σ` under the trusted `pk_b` first; nothing is decrypted unless
/// that succeeds. Then selects the component whose header equals `pk_b`.
/// `None` is ⊥ for every failure: forged origin, non-membership or
/// malformation.
pub fn decrypt(
    sk: &RecipientSecretKey,
    pk_b: &BroadcasterPublicKey,
    ct: &BroadcastCiphertext,
    mode: RejectMode,
    counters: &mut OpCounters,
) -> Option<Vec<u8>> {
    if ct.scheme() != Scheme::Improved {
        return None;
    }
    if !sig_verify(pk_b.as_bytes(), &ct.signed_payload(), ct.sigma(), counters) {
        return None;
    }
    for component in ct.components() {
        let Ok(Some(p)) = pke_dec(sk, component, mode, counters) else {
            continue;
        };
        let Some(header) = ImprovedHeader::parse(&p) else {
            continue;
        };
        if !bool::from(header.pk_b.ct_eq(pk_b.as_bytes())) {
            continue;
        }
        counters.record(Op::HeaderMatch);
        // A garbage header that happens to match still needs the right K;
        // keep scanning if it does not open C2.
        if let Some(m) = SymmetricKey::from_bytes(&header.key)?.decrypt(ct.c2(), counters) {
            return Some(m);
        }
    }
    None
}
