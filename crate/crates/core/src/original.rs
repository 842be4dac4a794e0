//! The original private broadcast encryption scheme: a fresh one-time
//! signature key per broadcast, its verification key delivered inside every
//! recipient component, and the signature checked only after a component
//! has been decrypted.

use rand::seq::SliceRandom;
use rand::{CryptoRng, RngCore};

use crate::ciphertext::{signed_payload, BroadcastCiphertext, RecipientSet, Scheme, MAX_MESSAGE_LEN};
use crate::counters::OpCounters;
use crate::error::{Error, Result};
use crate::params::SystemParams;
use crate::primitives::ots::{ots_gen, ots_verify, VERIFYING_KEY_LEN};
use crate::primitives::pke::{pke_dec, pke_enc, pke_gen, RecipientKeyPair, RecipientSecretKey, RejectMode};
use crate::primitives::sym::{SymmetricKey, KEY_LEN};

/// Plaintext of every component: `vk || K`.
pub const COMPONENT_PLAINTEXT_LEN: usize = VERIFYING_KEY_LEN + KEY_LEN;

pub fn setup(security_level: u32) -> Result<SystemParams> {
    SystemParams::init(security_level)
}

pub fn keygen<R: RngCore + CryptoRng>(params: &SystemParams, rng: &mut R) -> RecipientKeyPair {
    pke_gen(params, rng)
}

pub fn encrypt<R: RngCore + CryptoRng>(
    params: &SystemParams,
    recipients: &RecipientSet,
    message: &[u8],
    rng: &mut R,
    counters: &mut OpCounters,
) -> Result<BroadcastCiphertext> {
    if message.len() > MAX_MESSAGE_LEN {
        return Err(Error::MessageTooLong { len: message.len(), max: MAX_MESSAGE_LEN });
    }
    let mut ots = ots_gen(params, rng, counters);
    let key = SymmetricKey::generate(rng);

    let mut payload = ots.verifying_key();
    payload.extend_from_slice(key.as_bytes());
    let mut components = recipients
        .iter()
        .map(|pk| pke_enc(pk, &payload, rng, counters))
        .collect::<Result<Vec<_>>>()?;
    components.shuffle(rng);

    let c2 = key.encrypt(message, rng, counters);
    let sigma = ots.sign(&signed_payload(&components, &c2), counters)?.into_bytes();
    BroadcastCiphertext::from_parts(Scheme::Original, sigma, components, c2)
}

/// Scans the components in order. For each one that decrypts to something
/// shaped like `vk || K`, checks `σ` under that `vk`; the first success
/// determines the result. `None` is ⊥.
pub fn decrypt(
    sk: &RecipientSecretKey,
    ct: &BroadcastCiphertext,
    mode: RejectMode,
    counters: &mut OpCounters,
) -> Option<Vec<u8>> {
    if ct.scheme() != Scheme::Original {
        return None;
    }
    let signed = ct.signed_payload();
    for component in ct.components() {
        let Ok(Some(p)) = pke_dec(sk, component, mode, counters) else {
            continue;
        };
        if p.len() != COMPONENT_PLAINTEXT_LEN {
            continue;
        }
        let (vk, k) = p.split_at(VERIFYING_KEY_LEN);
        if ots_verify(vk, &signed, ct.sigma(), counters) {
            let key = SymmetricKey::from_bytes(k)?;
            return key.decrypt(ct.c2(), counters);
        }
    }
    None
}
