//! Seeded instance generator.
//!
//! The stream is SplitMix64 (state += 0x9E3779B97F4A7C15, then the
//! xor-shift-multiply finalizer). Integer draws in `[lo, hi]` are
//! `lo + next_u64() % (hi - lo + 1)`, so any language can replay the same
//! random instances from a seed.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::polyring::BiPoly;
use crate::scalar::{gauss_int, rat, GaussianRational, Rational};

pub const DEFAULT_SEED: u64 = 0xC0FFEE;

#[derive(Debug, Clone)]
pub struct InstanceRng {
    inner: SplitMix64,
}

impl InstanceRng {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: SplitMix64::seed_from_u64(seed),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform-ish integer in `[lo, hi]`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        let span = (hi - lo) as u64 + 1;
        lo + (self.next_u64() % span) as i64
    }

    pub fn ints(&mut self, n: usize, lo: i64, hi: i64) -> Vec<i64> {
        (0..n).map(|_| self.int_in(lo, hi)).collect()
    }

    pub fn rational(&mut self, height: i64) -> Rational {
        rat(self.int_in(-height, height))
    }

    /// `n/d` with `|n| ≤ height`, `1 ≤ d ≤ height`.
    pub fn fraction(&mut self, height: i64) -> Rational {
        let n = self.int_in(-height, height);
        let d = self.int_in(1, height.max(1));
        crate::scalar::ratio(n, d)
    }

    /// Gaussian rational with both parts drawn by [`InstanceRng::fraction`].
    pub fn gaussian_fraction(&mut self, height: i64) -> GaussianRational {
        let re = self.fraction(height);
        let im = self.fraction(height);
        crate::scalar::gauss(re, im)
    }

    /// Gaussian integer with both parts in `[-height, height]`.
    pub fn gaussian(&mut self, height: i64) -> GaussianRational {
        let re = self.int_in(-height, height);
        let im = self.int_in(-height, height);
        gauss_int(re, im)
    }

    /// Random element of R_{1,1} with integer coefficients in `[-height, height]`.
    pub fn poly11(&mut self, height: i64) -> BiPoly<Rational> {
        BiPoly::from_ints11(&self.ints(4, -height, height))
    }

    /// Random element of R_{2,2}.
    pub fn poly22(&mut self, height: i64) -> BiPoly<Rational> {
        let cs = self.ints(9, -height, height);
        BiPoly::from_terms((0..3u32).flat_map(|a| (0..3u32).map(move |b| (a, b))).zip(cs).map(|((a, b), c)| (a, b, rat(c))))
    }
}
