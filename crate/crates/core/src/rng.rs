//! SplitMix64: a tiny, portable generator whose output depends only on the
//! seed. Every platform produces the same stream, which is what makes
//! pre-drawn sample reports reproducible.

/// Seeded SplitMix64 stream.
///
/// Single-owner: do not advance one instance from several threads. Callers
/// wanting parallel streams should seed independent instances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeededRng {
    seed: u64,
    state: u64,
}

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng { seed, state: seed }
    }

    /// The seed this stream was created with.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform on the open interval (0, 1).
    ///
    /// Uses the top 52 bits as `k` and returns `(k + 0.5) / 2^52`, which is
    /// exact in binary64 and never touches either endpoint.
    pub fn next_open_unit(&mut self) -> f64 {
        let k = self.next_u64() >> 12;
        (k as f64 + 0.5) * (1.0 / (1u64 << 52) as f64)
    }

    /// Uniform on the open interval (-0.5, 0.5).
    pub fn next_centered(&mut self) -> f64 {
        self.next_open_unit() - 0.5
    }
}
