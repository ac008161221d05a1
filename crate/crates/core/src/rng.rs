//! Seeded random numbers for reproducible initial data.
//!
//! The generator is PCG32 (`Lcg64Xsh32` from `rand_pcg`): a 64-bit LCG state
//! with an XSH-RR output permutation. `seed_from_u64` expands the seed with a
//! fixed PCG32 stream, so the same seed gives the same numbers on every
//! platform. Uniform doubles take the top 53 bits of two concatenated
//! 32-bit outputs and map them affinely to `[-1, 1)`.

use rand_core::{Rng, SeedableRng};
use rand_pcg::Pcg32;

#[derive(Debug, Clone)]
pub struct SeededRng {
    inner: Pcg32,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: Pcg32::seed_from_u64(seed),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[-1, 1)`.
    pub fn symmetric(&mut self) -> f64 {
        2.0 * self.unit() - 1.0
    }
}
