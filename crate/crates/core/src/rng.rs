//! Seeded randomness with exact rational outputs.
//!
//! Every draw is an integer from a ChaCha8 stream; rationals are produced by
//! scaling integers with the fixed denominator [`GRID`]. Streams are keyed by
//! `(seed, stream)`, so independent starts or samples can be generated in any
//! order and still reproduce.

use alloc::vec::Vec;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rational::Rational;

pub const GRID: u64 = 10_000;

pub struct SeededRng(ChaCha8Rng);

impl SeededRng {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self(rng)
    }

    /// Uniform integer in `lo..=hi`.
    pub fn int_in(&mut self, lo: u64, hi: u64) -> u64 {
        self.0.gen_range(lo..=hi)
    }

    /// `lo + (hi - lo) * k / GRID` with `k` uniform in `1..GRID`: a grid
    /// point strictly inside `(lo, hi)` whenever `lo < hi`.
    pub fn interior_point(&mut self, lo: &Rational, hi: &Rational) -> Rational {
        let k = self.int_in(1, GRID - 1);
        lo + (hi - lo) * Rational::new(BigInt::from(k), BigInt::from(GRID))
    }

    /// `lo + (hi - lo) * k / GRID` with `k` uniform in `0..=GRID`.
    pub fn closed_point(&mut self, lo: &Rational, hi: &Rational) -> Rational {
        let k = self.int_in(0, GRID);
        lo + (hi - lo) * Rational::new(BigInt::from(k), BigInt::from(GRID))
    }

    /// `n` positive weights `k_i / sum(k)` with `k_i` uniform in `1..=GRID`.
    pub fn simplex_point(&mut self, n: usize) -> Vec<Rational> {
        let raw: Vec<u64> = (0..n).map(|_| self.int_in(1, GRID)).collect();
        let total: u64 = raw.iter().sum();
        raw.into_iter()
            .map(|k| Rational::new(BigInt::from(k), BigInt::from(total)))
            .collect()
    }

    /// Splits `mass` into `n` positive parts.
    pub fn split_mass(&mut self, mass: &Rational, n: usize) -> Vec<Rational> {
        self.simplex_point(n)
            .into_iter()
            .map(|w| w * mass)
            .collect()
    }
}

impl core::fmt::Debug for SeededRng {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("SeededRng").finish_non_exhaustive()
    }
}
