//! Deterministic random streams.
//!
//! Every random draw in the crate comes from ChaCha8, a counter-based stream
//! cipher generator. A `(seed, stream)` pair names an independent sequence;
//! per-trial and per-iteration generators are derived from the master seed and
//! the trial/iteration index so that serial and parallel runs produce the same
//! values.

use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng as StreamRng;

/// SplitMix64 finaliser, used to spread structured seeds over the key space.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Generator for stream `stream` of master seed `seed`.
pub fn stream(seed: u64, stream: u64) -> StreamRng {
    let mut rng = StreamRng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Derive a child seed from a parent seed and a path of indices.
pub fn derive_seed(seed: u64, path: &[u64]) -> u64 {
    path.iter().fold(mix(seed), |acc, &i| mix(acc ^ mix(i.wrapping_add(0xA5A5))))
}

/// Generator for the stream addressed by `path` under `seed`.
pub fn derived(seed: u64, path: &[u64]) -> StreamRng {
    match path.split_last() {
        None => stream(seed, 0),
        Some((&last, parent)) => stream(derive_seed(seed, parent), last),
    }
}
