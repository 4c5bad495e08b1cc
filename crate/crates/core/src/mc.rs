//! Reproducible Monte Carlo plumbing.
//!
//! Every trial draws from its own ChaCha8 stream selected by the trial
//! index, so results never depend on how trials are scheduled across
//! workers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Family of independent random streams derived from one master seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Substreams {
    seed: u64,
}

impl Substreams {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// The stream for trial `index`.
    pub fn stream(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }

    /// A new family keyed on `(seed, salt)`, for experiments that need
    /// several statistically independent batches from one user seed.
    pub fn derive(&self, salt: u64) -> Self {
        // SplitMix64 finalizer.
        let mut z = self.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        Self::new(z ^ (z >> 31))
    }
}

/// Trial execution settings shared by the Monte Carlo estimators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonteCarlo {
    pub streams: Substreams,
    pub n_trials: usize,
    pub workers: usize,
}

impl MonteCarlo {
    pub fn new(seed: u64, n_trials: usize) -> Self {
        Self {
            streams: Substreams::new(seed),
            n_trials,
            workers: 1,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    /// Runs `trial(index, rng)` for every trial index and returns the results
    /// in index order.
    pub fn run<T, F>(&self, trial: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64, &mut ChaCha8Rng) -> T + Sync,
    {
        let streams = self.streams;
        let body = |i: usize| {
            let mut rng = streams.stream(i as u64);
            trial(i as u64, &mut rng)
        };
        map_indexed(self.n_trials, self.workers, body)
    }
}

/// Maps `f` over `0..n` on `workers` threads, preserving index order.
pub fn map_indexed<T, F>(n: usize, workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    if workers <= 1 || n < 2 {
        return (0..n).map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(|| (0..n).into_par_iter().map(&f).collect()),
        Err(_) => (0..n).map(f).collect(),
    }
}
