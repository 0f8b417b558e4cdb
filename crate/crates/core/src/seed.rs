//! Seed derivation.
//!
//! Every random choice is drawn from a ChaCha8 stream whose seed is derived
//! from the run's master seed and a key (a document id, or a repetition
//! index). The derivation is the first eight bytes, little endian, of
//! `SHA-256(master_seed as 8 LE bytes || key as UTF-8)`. It depends on
//! nothing but its inputs, so per-document outputs do not change when the
//! corpus is reordered, and runs agree across platforms.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

pub type DocRng = ChaCha8Rng;

pub fn derive_seed(master: u64, key: &str) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(master.to_le_bytes());
    hasher.update(key.as_bytes());
    let digest = hasher.finalize();
    let mut head = [0u8; 8];
    head.copy_from_slice(&digest[..8]);
    u64::from_le_bytes(head)
}

pub fn seeded_rng(seed: u64) -> DocRng {
    ChaCha8Rng::seed_from_u64(seed)
}
