//! Deterministic, splittable randomness. Every consumer derives its stream
//! from one 64-bit seed, so results do not depend on scheduling.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The generator for stream `stream` under `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// A child seed, independent of the seeds of other streams.
pub fn child_seed(seed: u64, stream: u64) -> u64 {
    stream_rng(seed, stream).next_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_distinct() {
        assert_eq!(child_seed(7, 3), child_seed(7, 3));
        let seeds: std::collections::BTreeSet<u64> = (0..64).map(|k| child_seed(7, k)).collect();
        assert_eq!(seeds.len(), 64);
        assert_ne!(child_seed(7, 0), child_seed(8, 0));
    }
}
