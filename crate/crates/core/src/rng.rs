//! Small deterministic RNG (splitmix64). Hand-rolled so that pinned golden
//! reports stay byte-identical regardless of external crate versions.

use crate::rational::{rat, Rational};

#[derive(Clone, Debug)]
pub struct Rng64 {
    state: u64,
}

impl Rng64 {
    pub fn new(seed: u64) -> Self {
        Rng64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `0..bound`.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        // Desk-scale bounds; modulo bias is irrelevant here.
        self.next_u64() % bound
    }

    /// Uniform integer in `[lo, hi]` inclusive.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    /// Random small rational: numerator in `[-bound, bound]`, denominator in `{1,2,3}`.
    pub fn small_rational(&mut self, bound: i64) -> Rational {
        if bound == 0 {
            return rat(0, 1);
        }
        let num = self.int_in(-bound, bound);
        let den = self.int_in(1, 3);
        rat(num, den)
    }

    pub fn f64_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Derives an independent stream for sample `index`.
    pub fn substream(seed: u64, index: u64) -> Rng64 {
        let mut r = Rng64::new(seed ^ 0xA076_1D64_78BD_642F_u64.wrapping_mul(index.wrapping_add(1)));
        r.next_u64();
        r
    }
}
