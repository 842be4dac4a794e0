//! Cryptographic building blocks, each behind a small fixed contract and
//! each reporting into an [`OpCounters`](crate::OpCounters):
//!
//! - [`pke`]: key-private hybrid public-key encryption (ristretto255 + HKDF
//!   + ChaCha20 + HMAC-SHA256),
//! - [`ots`]: Lamport one-time signatures over SHA-256,
//! - [`sig`]: reusable Ed25519 broadcaster signatures,
//! - [`sym`]: ChaCha20-Poly1305 for the broadcast payload.

pub mod ots;
pub mod pke;
pub mod sig;
pub mod sym;
