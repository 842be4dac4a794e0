//! Byte-exact file formats.
//!
//! Broadcast ciphertext envelope:
//!
//! ```text
//! "PBE1"                      4 bytes magic
//! scheme tag                  1 byte   0x01 original, 0x02 improved
//! len(σ) || σ                 4-byte big-endian length, then bytes
//! n                           4 bytes  component count, n >= 1
//! L                           4 bytes  length of every component
//! c_1 || … || c_n             n·L bytes
//! len(C2) || C2
//! ```
//!
//! Everything after `σ` is exactly the byte string the signature covers.
//!
//! Key file:
//!
//! ```text
//! "PBEK"                      4 bytes magic
//! role tag                    1 byte   0x01 recipient-public, 0x02 recipient-secret,
//!                                      0x03 broadcaster-public, 0x04 broadcaster-secret
//! params digest               32 bytes SHA-256 of the canonical SystemParams
//! len(pk) || pk
//! len(sk) || sk               secret roles only
//! ```

use crate::ciphertext::{BroadcastCiphertext, Scheme};
use crate::encoding::{put_prefixed, Reader};
use crate::error::{Result, WireError};
use crate::params::SystemParams;
use crate::primitives::pke::{RecipientPublicKey, RecipientSecretKey};
use crate::primitives::sig::{BroadcasterKeyPair, BroadcasterPublicKey};

pub const ENVELOPE_MAGIC: [u8; 4] = *b"PBE1";
pub const KEY_FILE_MAGIC: [u8; 4] = *b"PBEK";

impl BroadcastCiphertext {
    pub fn to_bytes(&self) -> Vec<u8> {
        let payload = self.signed_payload();
        let mut out = Vec::with_capacity(4 + 1 + 4 + self.sigma().len() + payload.len());
        out.extend_from_slice(&ENVELOPE_MAGIC);
        out.push(self.scheme().tag());
        put_prefixed(&mut out, self.sigma());
        out.extend_from_slice(&payload);
        out
    }

    /// Parses an envelope. Never reads past a declared length and rejects
    /// trailing bytes.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self, WireError> {
        let mut r = Reader::new(bytes);
        if r.array::<4>()? != ENVELOPE_MAGIC {
            return Err(WireError::BadMagic { offset: 0 });
        }
        let tag_at = r.position();
        let tag = r.u8()?;
        let scheme = Scheme::from_tag(tag).ok_or(WireError::UnknownTag { tag, offset: tag_at })?;
        let sigma = r.prefixed()?.to_vec();

        let count_at = r.position();
        let count = r.u32()? as usize;
        if count == 0 {
            return Err(WireError::Invalid { offset: count_at, what: "component count is zero" });
        }
        let comp_len = r.u32()? as usize;
        let body_at = r.position();
        match count.checked_mul(comp_len) {
            Some(total) if total <= r.remaining() => {}
            _ => return Err(WireError::Truncated { offset: bytes.len().max(body_at) }),
        }
        let components = (0..count).map(|_| r.take(comp_len).map(<[u8]>::to_vec)).collect::<Result<Vec<_>, _>>()?;
        let c2 = r.prefixed()?.to_vec();
        r.finish()?;

        Ok(BroadcastCiphertext::from_parts(scheme, sigma, components, c2)
            .expect("parser produced non-empty equal-length components"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum KeyRole {
    RecipientPublic = 0x01,
    RecipientSecret = 0x02,
    BroadcasterPublic = 0x03,
    BroadcasterSecret = 0x04,
}

impl KeyRole {
    pub fn from_tag(tag: u8) -> Option<Self> {
        match tag {
            0x01 => Some(KeyRole::RecipientPublic),
            0x02 => Some(KeyRole::RecipientSecret),
            0x03 => Some(KeyRole::BroadcasterPublic),
            0x04 => Some(KeyRole::BroadcasterSecret),
            _ => None,
        }
    }

    pub fn is_secret(self) -> bool {
        matches!(self, KeyRole::RecipientSecret | KeyRole::BroadcasterSecret)
    }

    pub fn name(self) -> &'static str {
        match self {
            KeyRole::RecipientPublic => "recipient-public",
            KeyRole::RecipientSecret => "recipient-secret",
            KeyRole::BroadcasterPublic => "broadcaster-public",
            KeyRole::BroadcasterSecret => "broadcaster-secret",
        }
    }
}

#[derive(Debug)]
pub enum KeyMaterial {
    RecipientPublic(RecipientPublicKey),
    RecipientSecret(RecipientSecretKey),
    BroadcasterPublic(BroadcasterPublicKey),
    BroadcasterSecret(BroadcasterKeyPair),
}

impl KeyMaterial {
    pub fn role(&self) -> KeyRole {
        match self {
            KeyMaterial::RecipientPublic(_) => KeyRole::RecipientPublic,
            KeyMaterial::RecipientSecret(_) => KeyRole::RecipientSecret,
            KeyMaterial::BroadcasterPublic(_) => KeyRole::BroadcasterPublic,
            KeyMaterial::BroadcasterSecret(_) => KeyRole::BroadcasterSecret,
        }
    }
}

#[derive(Debug)]
pub struct KeyFile {
    params_digest: [u8; 32],
    key: KeyMaterial,
}

impl KeyFile {
    pub fn new(params: &SystemParams, key: KeyMaterial) -> Self {
        KeyFile { params_digest: params.digest(), key }
    }

    pub fn role(&self) -> KeyRole {
        self.key.role()
    }

    pub fn key(&self) -> &KeyMaterial {
        &self.key
    }

    pub fn into_key(self) -> KeyMaterial {
        self.key
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(&KEY_FILE_MAGIC);
        out.push(self.role() as u8);
        out.extend_from_slice(&self.params_digest);
        match &self.key {
            KeyMaterial::RecipientPublic(pk) => put_prefixed(&mut out, pk.as_bytes()),
            KeyMaterial::RecipientSecret(sk) => {
                put_prefixed(&mut out, sk.public_key().as_bytes());
                put_prefixed(&mut out, &sk.to_bytes());
            }
            KeyMaterial::BroadcasterPublic(pk) => put_prefixed(&mut out, pk.as_bytes()),
            KeyMaterial::BroadcasterSecret(kp) => {
                put_prefixed(&mut out, kp.public_key().as_bytes());
                put_prefixed(&mut out, &kp.secret_bytes());
            }
        }
        out
    }

    /// Parses a key file made under `expected` parameters.
    pub fn from_bytes(bytes: &[u8], expected: &SystemParams) -> Result<Self, WireError> {
        let mut r = Reader::new(bytes);
        if r.array::<4>()? != KEY_FILE_MAGIC {
            return Err(WireError::BadMagic { offset: 0 });
        }
        let role_at = r.position();
        let tag = r.u8()?;
        let role = KeyRole::from_tag(tag).ok_or(WireError::UnknownTag { tag, offset: role_at })?;
        let params_digest = r.array::<32>()?;
        if params_digest != expected.digest() {
            return Err(WireError::ParamsMismatch);
        }

        let pk_at = r.position() + 4;
        let pk = r.prefixed()?;
        let bad_pk = WireError::Invalid { offset: pk_at, what: "public key" };
        let key = match role {
            KeyRole::RecipientPublic => {
                KeyMaterial::RecipientPublic(RecipientPublicKey::from_bytes(pk).map_err(|_| bad_pk)?)
            }
            KeyRole::BroadcasterPublic => {
                KeyMaterial::BroadcasterPublic(BroadcasterPublicKey::from_bytes(pk).map_err(|_| bad_pk)?)
            }
            KeyRole::RecipientSecret => {
                let sk_at = r.position() + 4;
                let sk = RecipientSecretKey::from_bytes(r.prefixed()?)
                    .map_err(|_| WireError::Invalid { offset: sk_at, what: "secret key" })?;
                if sk.public_key().as_bytes()[..] != *pk {
                    return Err(WireError::Invalid { offset: pk_at, what: "public key does not match secret key" });
                }
                KeyMaterial::RecipientSecret(sk)
            }
            KeyRole::BroadcasterSecret => {
                let sk_at = r.position() + 4;
                let kp = BroadcasterKeyPair::from_secret_bytes(r.prefixed()?)
                    .map_err(|_| WireError::Invalid { offset: sk_at, what: "secret key" })?;
                if kp.public_key().as_bytes()[..] != *pk {
                    return Err(WireError::Invalid { offset: pk_at, what: "public key does not match secret key" });
                }
                KeyMaterial::BroadcasterSecret(kp)
            }
        };
        r.finish()?;
        Ok(KeyFile { params_digest, key })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primitives::pke::pke_gen;
    use crate::primitives::sig::sig_gen;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn sample() -> BroadcastCiphertext {
        BroadcastCiphertext::from_parts(
            Scheme::Original,
            vec![0xAA; 5],
            vec![vec![1; 7], vec![2; 7], vec![3; 7]],
            vec![0xCC; 4],
        )
        .unwrap()
    }

    #[test]
    fn envelope_layout_is_exact() {
        let bytes = sample().to_bytes();
        let mut expected = b"PBE1".to_vec();
        expected.push(0x01);
        expected.extend_from_slice(&[0, 0, 0, 5]);
        expected.extend_from_slice(&[0xAA; 5]);
        expected.extend_from_slice(&[0, 0, 0, 3, 0, 0, 0, 7]);
        expected.extend_from_slice(&[1; 7]);
        expected.extend_from_slice(&[2; 7]);
        expected.extend_from_slice(&[3; 7]);
        expected.extend_from_slice(&[0, 0, 0, 4, 0xCC, 0xCC, 0xCC, 0xCC]);
        assert_eq!(bytes, expected);
        assert_eq!(BroadcastCiphertext::from_bytes(&bytes).unwrap(), sample());
    }

    #[test]
    fn truncation_reports_first_missing_offset() {
        let bytes = sample().to_bytes();
        for cut in 0..bytes.len() {
            let err = BroadcastCiphertext::from_bytes(&bytes[..cut]).unwrap_err();
            assert!(
                matches!(err, WireError::Truncated { offset } if offset == cut),
                "cut {cut}: {err:?}"
            );
        }
    }

    #[test]
    fn bad_magic_tag_and_trailing() {
        let mut bytes = sample().to_bytes();
        bytes[0] = b'X';
        assert_eq!(BroadcastCiphertext::from_bytes(&bytes), Err(WireError::BadMagic { offset: 0 }));
        bytes[0] = b'P';
        bytes[4] = 0x09;
        assert_eq!(BroadcastCiphertext::from_bytes(&bytes), Err(WireError::UnknownTag { tag: 9, offset: 4 }));
        bytes[4] = 0x02;
        assert_eq!(BroadcastCiphertext::from_bytes(&bytes).unwrap().scheme(), Scheme::Improved);
        bytes.push(0);
        assert!(matches!(BroadcastCiphertext::from_bytes(&bytes), Err(WireError::TrailingBytes { count: 1, .. })));
    }

    #[test]
    fn huge_declared_sizes_do_not_allocate() {
        let mut bytes = b"PBE1\x01".to_vec();
        bytes.extend_from_slice(&[0, 0, 0, 0]);
        bytes.extend_from_slice(&[0xff; 8]);
        assert!(matches!(BroadcastCiphertext::from_bytes(&bytes), Err(WireError::Truncated { .. })));
        let mut zero = b"PBE1\x01".to_vec();
        zero.extend_from_slice(&[0; 12]);
        assert!(matches!(BroadcastCiphertext::from_bytes(&zero), Err(WireError::Invalid { offset: 9, .. })));
    }

    #[test]
    fn key_files_roundtrip_and_check_params() {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let params = SystemParams::default();
        let other = SystemParams::init(256).unwrap();
        let rkp = pke_gen(&params, &mut rng);
        let bkp = sig_gen(&params, &mut rng);
        let files = [
            KeyFile::new(&params, KeyMaterial::RecipientPublic(*rkp.pk())),
            KeyFile::new(&params, KeyMaterial::RecipientSecret(rkp.sk().clone())),
            KeyFile::new(&params, KeyMaterial::BroadcasterPublic(bkp.public_key())),
            KeyFile::new(&params, KeyMaterial::BroadcasterSecret(BroadcasterKeyPair::from_secret_bytes(&bkp.secret_bytes()).unwrap())),
        ];
        for f in &files {
            let bytes = f.to_bytes();
            let back = KeyFile::from_bytes(&bytes, &params).unwrap();
            assert_eq!(back.role(), f.role());
            assert_eq!(back.to_bytes(), bytes);
            assert_eq!(KeyFile::from_bytes(&bytes, &other).unwrap_err(), WireError::ParamsMismatch);
        }
        match KeyFile::from_bytes(&files[1].to_bytes(), &params).unwrap().into_key() {
            KeyMaterial::RecipientSecret(sk) => assert_eq!(sk.public_key(), rkp.pk()),
            k => panic!("unexpected {k:?}"),
        }
    }

    #[test]
    fn key_file_rejects_mismatched_public_half() {
        let mut rng = ChaCha20Rng::seed_from_u64(4);
        let params = SystemParams::default();
        let a = pke_gen(&params, &mut rng);
        let b = pke_gen(&params, &mut rng);
        let mut bytes = KeyFile::new(&params, KeyMaterial::RecipientSecret(a.sk().clone())).to_bytes();
        let pk_at = 4 + 1 + 32 + 4;
        bytes[pk_at..pk_at + 32].copy_from_slice(b.pk().as_bytes());
        assert!(matches!(KeyFile::from_bytes(&bytes, &params), Err(WireError::Invalid { .. })));
    }
}
