//! Key-private hybrid public-key encryption over ristretto255.
//!
//! A component is `R || ct || tag` where
//!
//! ```text
//! r  <- random scalar,  R = r·G
//! Z  = r·pk
//! (k_enc, k_mac) = HKDF-SHA256(salt = "pbe/pke/v1", ikm = Z, info = R || pk)
//! ct  = ChaCha20(k_enc, nonce = 0) ⊕ m
//! tag = HMAC-SHA256(k_mac, R || ct)
//! ```
//!
//! `R` is a uniformly random group element and `ct || tag` is PRF output, so
//! a component carries nothing that identifies `pk`, and its length is
//! `m.len() + COMPONENT_OVERHEAD` whatever the key. Each ephemeral key is
//! used for exactly one message, which is what makes the all-zero stream
//! nonce safe.

use std::fmt;

use chacha20::cipher::{KeyIvInit, StreamCipher};
use chacha20::ChaCha20;
use curve25519_dalek::constants::RISTRETTO_BASEPOINT_TABLE;
use curve25519_dalek::ristretto::{CompressedRistretto, RistrettoPoint};
use curve25519_dalek::scalar::Scalar;
use hkdf::Hkdf;
use hmac::{Hmac, Mac};
use rand::{CryptoRng, RngCore};
use sha2::Sha256;

use crate::counters::{Op, OpCounters};
use crate::error::{Error, Result};
use crate::params::SystemParams;

pub const PUBLIC_KEY_LEN: usize = 32;
pub const SECRET_KEY_LEN: usize = 32;
/// Largest plaintext a single component may carry (64 KiB).
pub const MAX_PLAINTEXT: usize = 64 * 1024;
const EPHEMERAL_LEN: usize = 32;
const TAG_LEN: usize = 32;
pub const COMPONENT_OVERHEAD: usize = EPHEMERAL_LEN + TAG_LEN;

const KDF_SALT: &[u8] = b"pbe/pke/v1";

/// What wrong-key decryption looks like.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RejectMode {
    /// Authenticated: a component not meant for this key decrypts to ⊥.
    Strict,
    /// The tag is ignored, so a wrong key yields unpredictable bytes of the
    /// right length and the failure is only caught downstream.
    Permissive,
}

impl RejectMode {
    pub fn name(self) -> &'static str {
        match self {
            RejectMode::Strict => "strict",
            RejectMode::Permissive => "permissive",
        }
    }
}

pub fn component_len(plaintext_len: usize) -> usize {
    plaintext_len + COMPONENT_OVERHEAD
}

#[derive(Clone, Copy)]
pub struct RecipientPublicKey {
    encoded: [u8; PUBLIC_KEY_LEN],
    point: RistrettoPoint,
}

impl RecipientPublicKey {
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let encoded: [u8; PUBLIC_KEY_LEN] = bytes
            .try_into()
            .map_err(|_| Error::InvalidKey("recipient public key must be 32 bytes"))?;
        let point = CompressedRistretto(encoded)
            .decompress()
            .ok_or(Error::InvalidKey("recipient public key is not a group element"))?;
        Ok(RecipientPublicKey { encoded, point })
    }

    pub fn as_bytes(&self) -> &[u8; PUBLIC_KEY_LEN] {
        &self.encoded
    }
}

impl PartialEq for RecipientPublicKey {
    fn eq(&self, other: &Self) -> bool {
        self.encoded == other.encoded
    }
}

impl Eq for RecipientPublicKey {}

impl std::hash::Hash for RecipientPublicKey {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.encoded.hash(state);
    }
}

impl fmt::Debug for RecipientPublicKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RecipientPublicKey(")?;
        for b in &self.encoded[..8] {
            write!(f, "{b:02x}")?;
        }
        write!(f, "..)")
    }
}

#[derive(Clone)]
pub struct RecipientSecretKey {
    scalar: Scalar,
    public: RecipientPublicKey,
}

impl RecipientSecretKey {
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let encoded: [u8; SECRET_KEY_LEN] = bytes
            .try_into()
            .map_err(|_| Error::InvalidKey("recipient secret key must be 32 bytes"))?;
        let scalar = Option::<Scalar>::from(Scalar::from_canonical_bytes(encoded))
            .ok_or(Error::InvalidKey("recipient secret key is not a canonical scalar"))?;
        Ok(Self::from_scalar(scalar))
    }

    fn from_scalar(scalar: Scalar) -> Self {
        let point = &scalar * RISTRETTO_BASEPOINT_TABLE;
        let public = RecipientPublicKey { encoded: point.compress().to_bytes(), point };
        RecipientSecretKey { scalar, public }
    }

    pub fn to_bytes(&self) -> [u8; SECRET_KEY_LEN] {
        self.scalar.to_bytes()
    }

    pub fn public_key(&self) -> &RecipientPublicKey {
        &self.public
    }
}

impl fmt::Debug for RecipientSecretKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RecipientSecretKey").field("public", &self.public).finish_non_exhaustive()
    }
}

#[derive(Debug, Clone)]
pub struct RecipientKeyPair {
    secret: RecipientSecretKey,
}

impl RecipientKeyPair {
    pub fn generate<R: RngCore + CryptoRng>(_params: &SystemParams, rng: &mut R) -> Self {
        RecipientKeyPair { secret: RecipientSecretKey::from_scalar(random_scalar(rng)) }
    }

    pub fn pk(&self) -> &RecipientPublicKey {
        &self.secret.public
    }

    pub fn sk(&self) -> &RecipientSecretKey {
        &self.secret
    }
}

impl From<RecipientSecretKey> for RecipientKeyPair {
    fn from(secret: RecipientSecretKey) -> Self {
        RecipientKeyPair { secret }
    }
}

fn random_scalar<R: RngCore + CryptoRng>(rng: &mut R) -> Scalar {
    let mut wide = [0u8; 64];
    rng.fill_bytes(&mut wide);
    Scalar::from_bytes_mod_order_wide(&wide)
}

struct DerivedKeys {
    enc: [u8; 32],
    mac: [u8; 32],
}

fn derive(shared: &RistrettoPoint, ephemeral: &[u8], recipient: &[u8; PUBLIC_KEY_LEN]) -> DerivedKeys {
    let hk = Hkdf::<Sha256>::new(Some(KDF_SALT), shared.compress().as_bytes());
    let mut info = [0u8; EPHEMERAL_LEN + PUBLIC_KEY_LEN];
    info[..EPHEMERAL_LEN].copy_from_slice(ephemeral);
    info[EPHEMERAL_LEN..].copy_from_slice(recipient);
    let mut okm = [0u8; 64];
    hk.expand(&info, &mut okm).expect("64 bytes is a valid HKDF-SHA256 output length");
    let mut keys = DerivedKeys { enc: [0; 32], mac: [0; 32] };
    keys.enc.copy_from_slice(&okm[..32]);
    keys.mac.copy_from_slice(&okm[32..]);
    keys
}

fn apply_stream(key: &[u8; 32], data: &mut [u8]) {
    let mut cipher = ChaCha20::new(key.into(), &[0u8; 12].into());
    cipher.apply_keystream(data);
}

fn tag(key: &[u8; 32], ephemeral: &[u8], ct: &[u8]) -> Hmac<Sha256> {
    let mut mac = <Hmac<Sha256> as Mac>::new_from_slice(key).expect("HMAC accepts any key length");
    mac.update(ephemeral);
    mac.update(ct);
    mac
}

/// Encrypts `m` to `pk`. The output length depends only on `m.len()`.
pub fn pke_enc<R: RngCore + CryptoRng>(
    pk: &RecipientPublicKey,
    m: &[u8],
    rng: &mut R,
    counters: &mut OpCounters,
) -> Result<Vec<u8>> {
    if m.len() > MAX_PLAINTEXT {
        return Err(Error::PlaintextTooLong { len: m.len(), max: MAX_PLAINTEXT });
    }
    counters.record(Op::PkeEnc);

    let r = random_scalar(rng);
    let ephemeral = (&r * RISTRETTO_BASEPOINT_TABLE).compress();
    let keys = derive(&(r * pk.point), ephemeral.as_bytes(), &pk.encoded);

    let mut out = Vec::with_capacity(component_len(m.len()));
    out.extend_from_slice(ephemeral.as_bytes());
    out.extend_from_slice(m);
    apply_stream(&keys.enc, &mut out[EPHEMERAL_LEN..]);
    let t = tag(&keys.mac, ephemeral.as_bytes(), &out[EPHEMERAL_LEN..]).finalize().into_bytes();
    out.extend_from_slice(&t);
    Ok(out)
}

/// Decrypts one component.
///
/// `Ok(None)` is ⊥ and only happens in [`RejectMode::Strict`]. An encoding
/// that cannot be a component at all (too short, or an ephemeral value that
/// is not a group element) is an error in either mode.
pub fn pke_dec(
    sk: &RecipientSecretKey,
    c: &[u8],
    mode: RejectMode,
    counters: &mut OpCounters,
) -> Result<Option<Vec<u8>>> {
    counters.record(Op::PkeDec);
    if c.len() < COMPONENT_OVERHEAD {
        return Err(Error::MalformedComponent("shorter than the fixed overhead"));
    }
    let (ephemeral, rest) = c.split_at(EPHEMERAL_LEN);
    let (ct, received_tag) = rest.split_at(rest.len() - TAG_LEN);
    let point = CompressedRistretto::from_slice(ephemeral)
        .expect("split at 32 bytes")
        .decompress()
        .ok_or(Error::MalformedComponent("ephemeral key is not a group element"))?;

    let keys = derive(&(sk.scalar * point), ephemeral, &sk.public.encoded);
    if mode == RejectMode::Strict && tag(&keys.mac, ephemeral, ct).verify_slice(received_tag).is_err() {
        return Ok(None);
    }
    let mut m = ct.to_vec();
    apply_stream(&keys.enc, &mut m);
    Ok(Some(m))
}

pub fn pke_gen<R: RngCore + CryptoRng>(params: &SystemParams, rng: &mut R) -> RecipientKeyPair {
    RecipientKeyPair::generate(params, rng)
}
