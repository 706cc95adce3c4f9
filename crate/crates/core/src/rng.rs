//! Seeded random streams.
//!
//! A stream is ChaCha8 keyed by `seed_from_u64(seed)` with the ChaCha stream
//! id set to `stream`. One chain run owns one stream; independent runs of the
//! same invocation use stream ids `0, 1, 2, ...`. ChaCha is counter based, so
//! trajectories are identical across platforms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rational::SmallRatio;

#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        Self { seed, stream, inner }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// Exactly uniform draw from `[0, bound)`; `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        self.inner.random_range(0..bound)
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.below(bound as u64) as usize
    }

    /// `true` with probability exactly `numer / denom` (capped at one).
    pub fn bernoulli(&mut self, numer: u64, denom: u64) -> bool {
        self.below(denom) < numer
    }

    pub fn bernoulli_ratio(&mut self, p: SmallRatio) -> bool {
        self.bernoulli(*p.numer(), *p.denom())
    }

    /// Uniform unordered pair `(a, b)` with `a < b < bound`.
    pub fn distinct_pair(&mut self, bound: usize) -> (usize, usize) {
        let a = self.index(bound);
        let mut b = self.index(bound - 1);
        if b >= a {
            b += 1;
        }
        (a.min(b), a.max(b))
    }

    /// Moves a uniform `k`-subset of `items` into `items[..k]` (partial Fisher-Yates).
    pub fn partial_shuffle<T>(&mut self, items: &mut [T], k: usize) {
        let len = items.len();
        for pos in 0..k.min(len) {
            let pick = pos + self.index(len - pos);
            items.swap(pos, pick);
        }
    }

    pub fn unit_f64(&mut self) -> f64 {
        self.inner.random::<f64>()
    }
}
