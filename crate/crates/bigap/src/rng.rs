//! Deterministic random streams with cross-platform, cross-version bit
//! reproducibility.
//!
//! Every trial of every experiment must be replayable from `(master_seed,
//! trial_index)` alone — on any machine, with any compiler version, at any
//! worker count. That rules out delegating to an external RNG crate whose
//! stream is allowed to change between releases, so the generator algorithm
//! itself is part of this crate's contract:
//!
//! 1. **Seed derivation** — the SplitMix64 finalizer applied to
//!    `master_seed + trial_index * 0x9E3779B97F4A7C15` (wrapping arithmetic).
//!    The golden-ratio increment decorrelates consecutive trial indices; the
//!    finalizer is a full-avalanche bijection, so distinct `(seed, trial)`
//!    pairs yield well-separated derived states.
//! 2. **Stream generation** — xoshiro256** seeded by four successive outputs
//!    of a SplitMix64 generator started at the derived state (the seeding
//!    procedure recommended by the xoshiro authors; it cannot produce the
//!    all-zero state).
//!
//! Floats are drawn as `(next_u64 >> 11) / 2^53`, i.e. uniform on `[0, 1)`
//! with 53 random mantissa bits.
//!
//! The pinned-value tests at the bottom were generated by an independent
//! implementation of both algorithms, so a silent transcription error in
//! either the constants or the update rule cannot survive `cargo test`.

/// Identifies one trial's private random stream.
///
/// The derived stream is a pure function of this pair: parallel workers may
/// execute trials in any order and still reproduce identical graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeedSpec {
    /// Experiment-wide seed, chosen by the user.
    pub master_seed: u64,
    /// Which trial this stream belongs to, counting from 0.
    pub trial_index: u64,
}

impl SeedSpec {
    /// Bundle a master seed with a trial index.
    pub fn new(master_seed: u64, trial_index: u64) -> Self {
        SeedSpec { master_seed, trial_index }
    }

    /// The 64-bit state all stream output is derived from: the SplitMix64
    /// finalizer applied to `master_seed + trial_index * GOLDEN`.
    pub fn derived_state(self) -> u64 {
        splitmix64_finalize(
            self.master_seed
                .wrapping_add(self.trial_index.wrapping_mul(GOLDEN_GAMMA)),
        )
    }
}

/// Weyl-sequence increment used by SplitMix64 (`floor(2^64 / phi)`, odd).
const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// The SplitMix64 output mixer: a bijective full-avalanche finalizer.
fn splitmix64_finalize(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A deterministic 64-bit random stream (xoshiro256**).
///
/// Construct one per trial via [`derive_stream`]; never share a stream
/// between trials or threads — each is a single-owner value.
#[derive(Debug, Clone)]
pub struct Stream {
    s: [u64; 4],
}

/// Derive the deterministic stream for one `(master_seed, trial_index)` pair.
///
/// Identical inputs give bit-identical streams on every platform; this is
/// load-bearing for the harness's any-worker-count determinism guarantee.
pub fn derive_stream(spec: SeedSpec) -> Stream {
    let mut state = spec.derived_state();
    let mut next = || {
        state = state.wrapping_add(GOLDEN_GAMMA);
        splitmix64_finalize(state)
    };
    Stream { s: [next(), next(), next(), next()] }
}

impl Stream {
    /// Next raw 64-bit output.
    pub fn next_u64(&mut self) -> u64 {
        let result = self.s[1].wrapping_mul(5).rotate_left(7).wrapping_mul(9);
        let t = self.s[1] << 17;
        self.s[2] ^= self.s[0];
        self.s[3] ^= self.s[1];
        self.s[1] ^= self.s[2];
        self.s[0] ^= self.s[3];
        self.s[2] ^= t;
        self.s[3] = self.s[3].rotate_left(45);
        result
    }

    /// Uniform draw from `[0, 1)` with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
        (self.next_u64() >> 11) as f64 * SCALE
    }

    /// Uniform draw from `[-1, 1)`; used for solver start vectors where any
    /// direction with generic components will do.
    pub fn next_symmetric_f64(&mut self) -> f64 {
        2.0 * self.next_f64() - 1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// First four outputs for a handful of seeds, computed by an independent
    /// reimplementation of SplitMix64 + xoshiro256** (big-int arithmetic,
    /// different language). Any drift in constants or update order fails here.
    #[test]
    fn pinned_outputs_match_independent_implementation() {
        let cases: [(u64, u64, u64, [u64; 4]); 4] = [
            (
                0,
                0,
                0x0000000000000000,
                [0x99ec5f36cb75f2b4, 0xbf6e1f784956452a, 0x1a5f849d4933e6e0, 0x6aa594f1262d2d2c],
            ),
            (
                42,
                0,
                0xa759ea27d4727622,
                [0xb462ccca6b95e916, 0xdcc682e2fceb679b, 0xcdb5d6caea1791ca, 0x39fd2ac2b7055753],
            ),
            (
                42,
                1,
                0xbdd732262feb6e95,
                [0x19e479e2aaa77bfb, 0x5e3efe753be27527, 0xc3ed7125b780200a, 0x85b911e2152f876e],
            ),
            (
                0xDEAD_BEEF,
                7,
                0x5a2fdc2bf68cedb3,
                [0xa5c889778c9814a8, 0x9eefa6a58c79e968, 0xd20be40100929662, 0x9867d17d3f697f25],
            ),
        ];
        for (master, trial, derived, expect) in cases {
            let spec = SeedSpec::new(master, trial);
            assert_eq!(spec.derived_state(), derived, "derived state for ({master}, {trial})");
            let mut stream = derive_stream(spec);
            let got: Vec<u64> = (0..4).map(|_| stream.next_u64()).collect();
            assert_eq!(got, expect, "first outputs for ({master}, {trial})");
        }
    }

    #[test]
    fn identical_specs_give_identical_streams() {
        let mut a = derive_stream(SeedSpec::new(123, 5));
        let mut b = derive_stream(SeedSpec::new(123, 5));
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn adjacent_trials_diverge_immediately() {
        let mut a = derive_stream(SeedSpec::new(7, 0));
        let mut b = derive_stream(SeedSpec::new(7, 1));
        let first_a: Vec<u64> = (0..4).map(|_| a.next_u64()).collect();
        let first_b: Vec<u64> = (0..4).map(|_| b.next_u64()).collect();
        assert_ne!(first_a, first_b);
    }

    #[test]
    fn floats_land_in_the_half_open_unit_interval() {
        let mut s = derive_stream(SeedSpec::new(99, 3));
        let mut seen_low = false;
        let mut seen_high = false;
        for _ in 0..10_000 {
            let x = s.next_f64();
            assert!((0.0..1.0).contains(&x), "draw {x} escaped [0, 1)");
            seen_low |= x < 0.25;
            seen_high |= x > 0.75;
        }
        // Not a statistical test, just a guard against a stuck or misscaled stream.
        assert!(seen_low && seen_high, "10k draws never left the middle of the interval");
    }

    #[test]
    fn float_mean_is_roughly_half() {
        let mut s = derive_stream(SeedSpec::new(2024, 0));
        let n = 100_000;
        let mean: f64 = (0..n).map(|_| s.next_f64()).sum::<f64>() / n as f64;
        // Standard error is ~1/sqrt(12 n) ~ 0.0009; allow 5 sigma.
        assert!((mean - 0.5).abs() < 0.005, "mean {mean}");
    }
}
