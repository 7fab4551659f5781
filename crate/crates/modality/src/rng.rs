//! Deterministic, splittable random source.
//!
//! Every stochastic routine in this crate draws from an [`RngState`], a
//! ChaCha12 generator addressed by `(master_seed, stream_index)`. Substreams
//! are derived by index, not by sequential splitting, so a parallel loop can
//! hand replication `i` the stream for `i` and obtain the same numbers no
//! matter how many workers run or in which order they finish.
//!
//! Streams derived here are only promised to reproduce within this crate;
//! they are not aligned with any other environment's generator.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};

/// A seeded random stream with reproducible, independent substreams.
#[derive(Debug, Clone)]
pub struct RngState {
    master_seed: u64,
    stream_index: u64,
    inner: ChaCha12Rng,
}

/// splitmix64 finalizer; mixes a parent stream id and a child index into a
/// well-spread 64-bit stream id.
fn mix_stream(parent: u64, index: u64) -> u64 {
    let mut z = parent
        .wrapping_mul(0x9e37_79b9_7f4a_7c15)
        .wrapping_add(index)
        .wrapping_add(0x2545_f491_4f6c_dd1d);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl RngState {
    /// Root stream for a master seed.
    pub fn new(master_seed: u64) -> Self {
        Self::with_stream(master_seed, 0)
    }

    fn with_stream(master_seed: u64, stream_index: u64) -> Self {
        let mut inner = ChaCha12Rng::seed_from_u64(master_seed);
        inner.set_stream(stream_index);
        RngState {
            master_seed,
            stream_index,
            inner,
        }
    }

    /// Derive substream `index`. The result starts at the beginning of its
    /// stream regardless of how far `self` has been advanced, so replaying a
    /// substream never depends on consumption order.
    pub fn substream(&self, index: u64) -> Self {
        Self::with_stream(self.master_seed, mix_stream(self.stream_index, index))
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn stream_index(&self) -> u64 {
        self.stream_index
    }

    /// Uniform draw on `[0, 1)`.
    pub fn draw_uniform(&mut self) -> f64 {
        self.inner.random::<f64>()
    }

    /// Standard normal draw.
    pub fn draw_normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.inner)
    }

    /// Uniform integer in `[0, bound)`; used for resampling indices.
    pub fn draw_index(&mut self, bound: usize) -> usize {
        self.inner.random_range(0..bound)
    }

    /// Printable generator state, the analog of showing the raw RNG seed
    /// vector for troubleshooting.
    pub fn dump(&self) -> String {
        format!(
            "chacha12 master_seed={} stream_index={} word_pos={}",
            self.master_seed,
            self.stream_index,
            self.inner.get_word_pos()
        )
    }
}

impl RngCore for RngState {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.inner.fill_bytes(dest)
    }
}
