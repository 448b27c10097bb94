//! Seeded random streams.
//!
//! Every random draw is addressed by `(seed, trial, vertex)`. A trial owns two
//! ChaCha8 streams (colors and choices) selected with `set_stream`; inside a
//! stream each vertex owns the 64-bit word at position `2 * vertex`. A draw for
//! one vertex therefore never depends on the order in which other vertices were
//! visited, so full decompositions and local evaluations of a single path see
//! the same outcome, and results do not depend on thread count.
//!
//! Generators use streams with the top bit set, disjoint from trial streams.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GENERATOR_STREAM_BIT: u64 = 1 << 63;

/// Largest usable trial index (trial streams occupy `0..2^63`).
pub const MAX_TRIAL: u64 = (1 << 62) - 1;

/// Generator for graph construction keyed by `(seed, salt)`.
pub fn generator_rng(seed: u64, salt: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(GENERATOR_STREAM_BIT | salt);
    rng
}

/// Per-vertex addressable draws for one trial.
#[derive(Debug, Clone)]
pub struct TrialStreams {
    colors: ChaCha8Rng,
    choices: ChaCha8Rng,
}

impl TrialStreams {
    pub fn new(seed: u64, trial: u64) -> Self {
        assert!(trial <= MAX_TRIAL, "trial index {trial} exceeds {MAX_TRIAL}");
        let base = ChaCha8Rng::seed_from_u64(seed);
        let mut colors = base.clone();
        colors.set_stream(2 * trial);
        let mut choices = base;
        choices.set_stream(2 * trial + 1);
        Self { colors, choices }
    }

    fn seek(rng: &mut ChaCha8Rng, vertex: usize) {
        let target = 2 * vertex as u128;
        if rng.get_word_pos() != target {
            rng.set_word_pos(target);
        }
    }

    /// Whether `vertex` is colored red when each vertex is red with probability `p`.
    #[inline]
    pub fn is_red(&mut self, vertex: usize, p: f64) -> bool {
        Self::seek(&mut self.colors, vertex);
        self.colors.gen::<f64>() < p
    }

    /// Uniform index in `0..k` drawn by `vertex`. `k` must be positive.
    #[inline]
    pub fn choose(&mut self, vertex: usize, k: usize) -> usize {
        debug_assert!(k > 0);
        Self::seek(&mut self.choices, vertex);
        self.choices.gen_range(0..k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_are_order_independent() {
        let mut a = TrialStreams::new(7, 3);
        let forward: Vec<bool> = (0..50).map(|v| a.is_red(v, 0.5)).collect();
        let mut b = TrialStreams::new(7, 3);
        let mut backward: Vec<bool> = (0..50).rev().map(|v| b.is_red(v, 0.5)).collect();
        backward.reverse();
        assert_eq!(forward, backward);

        let mut c = TrialStreams::new(7, 3);
        let picks: Vec<usize> = [9, 2, 40, 2].iter().map(|&v| c.choose(v, 5)).collect();
        assert_eq!(picks[1], picks[3]);
    }

    #[test]
    fn trials_differ() {
        let mut a = TrialStreams::new(1, 0);
        let mut b = TrialStreams::new(1, 1);
        let ra: Vec<bool> = (0..64).map(|v| a.is_red(v, 0.5)).collect();
        let rb: Vec<bool> = (0..64).map(|v| b.is_red(v, 0.5)).collect();
        assert_ne!(ra, rb);
    }

    #[test]
    fn extreme_probabilities() {
        let mut s = TrialStreams::new(0, 0);
        assert!((0..100).all(|v| s.is_red(v, 1.0)));
        assert!((0..100).all(|v| !s.is_red(v, 0.0)));
    }
}
