//! Private broadcast encryption: one message, many recipients, and a
//! ciphertext that does not reveal who they are.
//!
//! Two schemes live side by side:
//!
//! - [`original`]: each broadcast carries a fresh Lamport one-time
//!   signature; its verification key travels encrypted inside every
//!   recipient component, so a recipient learns whether a broadcast is
//!   authentic only after public-key decryption.
//! - [`improved`]: the broadcaster holds a long-term signing key `(pk_B,
//!   sk_B)`; recipients verify `σ` under the `pk_B` they already trust before
//!   decrypting anything, and `pk_B` doubles as the header that identifies
//!   their component.
//!
//! [`adversary`] attacks both and measures the cost with [`OpCounters`].
//!
//! ```
//! use pbe_core::{improved, OpCounters, RecipientSet, RejectMode, SystemParams};
//! use rand::SeedableRng;
//!
//! let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(1);
//! let params = SystemParams::init(128).unwrap();
//! let alice = pbe_core::pke_gen(&params, &mut rng);
//! let bob = pbe_core::pke_gen(&params, &mut rng);
//! let broadcaster = improved::keygen_broadcaster(&params, &mut rng);
//!
//! let to = RecipientSet::new(vec![*alice.pk(), *bob.pk()]).unwrap();
//! let mut counters = OpCounters::new();
//! let ct = improved::encrypt(&params, &to, b"hello", &broadcaster, &mut rng, &mut counters).unwrap();
//!
//! let pk_b = broadcaster.public_key();
//! let m = improved::decrypt(bob.sk(), &pk_b, &ct, RejectMode::Strict, &mut counters);
//! assert_eq!(m.as_deref(), Some(&b"hello"[..]));
//! ```

pub mod adversary;
mod ciphertext;
mod counters;
mod encoding;
mod error;
pub mod improved;
pub mod original;
mod params;
pub mod primitives;
pub mod wire;

pub use ciphertext::{BroadcastCiphertext, RecipientSet, Scheme, MAX_MESSAGE_LEN};
pub use counters::{Op, OpCounters};
pub use error::{Error, Result, WireError};
pub use params::{pke_init, GroupId, HashId, SystemParams, DEFAULT_SECURITY_LEVEL, SUPPORTED_SECURITY_LEVELS};
pub use primitives::ots::{ots_gen, ots_verify, OneTimeKeyPair, OtsSignature};
pub use primitives::pke::{
    pke_dec, pke_enc, pke_gen, RecipientKeyPair, RecipientPublicKey, RecipientSecretKey, RejectMode, MAX_PLAINTEXT,
};
pub use primitives::sig::{sig_gen, sig_verify, BroadcasterKeyPair, BroadcasterPublicKey, HEADER_LEN};
pub use primitives::sym::{sym_dec, sym_enc, SymmetricKey};

/// Decrypts a ciphertext of either scheme, dispatching on its tag.
///
/// `trusted_broadcaster` is only consulted for the improved scheme; without
/// one, an improved-scheme ciphertext cannot be authenticated and the
/// result is ⊥.
pub fn decrypt_any(
    sk: &RecipientSecretKey,
    trusted_broadcaster: Option<&BroadcasterPublicKey>,
    ct: &BroadcastCiphertext,
    mode: RejectMode,
    counters: &mut OpCounters,
) -> Option<Vec<u8>> {
    match ct.scheme() {
        Scheme::Original => original::decrypt(sk, ct, mode, counters),
        Scheme::Improved => improved::decrypt(sk, trusted_broadcaster?, ct, mode, counters),
    }
}
