//! Seeded sampling of the exponent vector `(W_q : q <= y)`.
//!
//! Every coordinate draws from its own counter-based substream, indexed by
//! the prime itself, so enlarging `y` or sampling coordinates in a different
//! order never perturbs existing coordinates.

use crate::model::ShiftConfig;
use crate::sieve::primes_up_to;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// Draws one exponent vector; deterministic given `(cfg, seed)`.
pub fn sample_w_vector(cfg: &ShiftConfig, seed: u64) -> BTreeMap<u64, u32> {
    primes_up_to(cfg.y())
        .into_iter()
        .map(|q| (q, sample_w_coordinate(q, cfg.a(), seed)))
        .collect()
}

/// Draws a single `W_q` from the substream of prime `q`.
pub fn sample_w_coordinate(q: u64, a: i64, seed: u64) -> u32 {
    if a.unsigned_abs() % q == 0 {
        return 0;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(q);
    let u: f64 = rng.random();

    // Invert the cdf: P(0) = 1 - 1/(q-1), P(v) = q^{-v} for v >= 1.
    let mut acc = 1.0 - 1.0 / (q - 1) as f64;
    if u < acc {
        return 0;
    }
    let mut term = 1.0 / q as f64;
    let mut v = 1u32;
    while u >= acc + term && v < 4096 {
        acc += term;
        term /= q as f64;
        v += 1;
    }
    v
}
