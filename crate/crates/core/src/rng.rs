//! Deterministic, splittable random streams.
//!
//! Every random choice in the crate flows from a single `u64` seed. A consumer
//! that needs several independent streams derives them with [`stream`], naming
//! each one by a label and an index. Streams with different (label, index)
//! pairs are independent ChaCha streams of the same keyed generator, so
//! concurrent workers can draw from disjoint streams without coordination and
//! results do not depend on scheduling.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// FNV-1a, used only to fold stream labels into the ChaCha stream id.
fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Derives the stream named (`label`, `index`) from `seed`.
pub fn stream(seed: u64, label: &str, index: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(fnv1a(label.as_bytes()).wrapping_add(index.wrapping_mul(0x9e3779b97f4a7c15)));
    rng
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn streams_are_reproducible() {
        let a: u64 = stream(7, "x", 0).gen();
        let b: u64 = stream(7, "x", 0).gen();
        assert_eq!(a, b);
    }

    #[test]
    fn streams_differ_by_label_and_index() {
        let a: u64 = stream(7, "x", 0).gen();
        let b: u64 = stream(7, "y", 0).gen();
        let c: u64 = stream(7, "x", 1).gen();
        assert_ne!(a, b);
        assert_ne!(a, c);
    }
}
