use std::collections::HashSet;
use std::fmt;

use crate::encoding::{put_prefixed, put_u32};
use crate::error::{Error, Result};
use crate::primitives::pke::RecipientPublicKey;

/// Upper bound on the broadcast message `M` (1 MiB).
pub const MAX_MESSAGE_LEN: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum Scheme {
    /// One-time signature key carried inside every component.
    Original = 0x01,
    /// Long-term broadcaster signature, verified before any decryption.
    Improved = 0x02,
}

impl Scheme {
    pub fn tag(self) -> u8 {
        self as u8
    }

    pub fn from_tag(tag: u8) -> Option<Self> {
        match tag {
            0x01 => Some(Scheme::Original),
            0x02 => Some(Scheme::Improved),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Original => "original",
            Scheme::Improved => "improved",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The set `S` of recipient public keys: non-empty, no duplicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecipientSet {
    pks: Vec<RecipientPublicKey>,
}

impl RecipientSet {
    pub fn new(pks: Vec<RecipientPublicKey>) -> Result<Self> {
        if pks.is_empty() {
            return Err(Error::EmptyRecipientSet);
        }
        let mut seen = HashSet::with_capacity(pks.len());
        for (i, pk) in pks.iter().enumerate() {
            if !seen.insert(*pk.as_bytes()) {
                return Err(Error::DuplicateRecipient(i));
            }
        }
        Ok(RecipientSet { pks })
    }

    pub fn len(&self) -> usize {
        self.pks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pks.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &RecipientPublicKey> {
        self.pks.iter()
    }

    pub fn contains(&self, pk: &RecipientPublicKey) -> bool {
        self.pks.contains(pk)
    }
}

impl<'a> IntoIterator for &'a RecipientSet {
    type Item = &'a RecipientPublicKey;
    type IntoIter = std::slice::Iter<'a, RecipientPublicKey>;

    fn into_iter(self) -> Self::IntoIter {
        self.pks.iter()
    }
}

/// `σ || C1 || C2` with `C1 = c_1 || … || c_n`.
///
/// Immutable once built; construction guarantees at least one component and
/// that all components have the same length.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BroadcastCiphertext {
    scheme: Scheme,
    sigma: Vec<u8>,
    components: Vec<Vec<u8>>,
    c2: Vec<u8>,
}

impl BroadcastCiphertext {
    pub fn from_parts(scheme: Scheme, sigma: Vec<u8>, components: Vec<Vec<u8>>, c2: Vec<u8>) -> Result<Self> {
        let Some(first) = components.first() else {
            return Err(Error::InconsistentCiphertext("no components"));
        };
        if components.iter().any(|c| c.len() != first.len()) {
            return Err(Error::InconsistentCiphertext("components differ in length"));
        }
        Ok(BroadcastCiphertext { scheme, sigma, components, c2 })
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn sigma(&self) -> &[u8] {
        &self.sigma
    }

    pub fn components(&self) -> &[Vec<u8>] {
        &self.components
    }

    pub fn component_len(&self) -> usize {
        self.components[0].len()
    }

    pub fn c2(&self) -> &[u8] {
        &self.c2
    }

    /// The exact bytes covered by `σ`: the encoded `C1 || C2`, i.e.
    /// component count, component length, the components, then the
    /// length-prefixed `C2`. This is also the tail of the wire encoding.
    pub fn signed_payload(&self) -> Vec<u8> {
        signed_payload(&self.components, &self.c2)
    }

    pub fn into_parts(self) -> (Scheme, Vec<u8>, Vec<Vec<u8>>, Vec<u8>) {
        (self.scheme, self.sigma, self.components, self.c2)
    }
}

pub(crate) fn signed_payload(components: &[Vec<u8>], c2: &[u8]) -> Vec<u8> {
    let comp_len = components.first().map_or(0, Vec::len);
    let mut out = Vec::with_capacity(8 + components.len() * comp_len + 4 + c2.len());
    put_u32(&mut out, u32::try_from(components.len()).expect("component count fits u32"));
    put_u32(&mut out, u32::try_from(comp_len).expect("component length fits u32"));
    for c in components {
        out.extend_from_slice(c);
    }
    put_prefixed(&mut out, c2);
    out
}
