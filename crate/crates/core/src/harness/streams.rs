//! Deterministic random substreams.
//!
//! Each stream is a ChaCha8 generator keyed by `(seed, session, lane, index)`,
//! so the bits any one round sees do not depend on scheduling or on how
//! many other rounds ran before it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Lane {
    Message = 0,
    CheckPositions = 1,
    CheckBits = 2,
    Round = 3,
}

pub fn substream(seed: u64, session: u64, lane: Lane, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&session.to_le_bytes());
    key[16..24].copy_from_slice(&(lane as u64).to_le_bytes());
    key[24..].copy_from_slice(&index.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}
