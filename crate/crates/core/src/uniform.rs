//! Uniform `[0, 1)` sources.
//!
//! [`SplitMix64`] is the reference splitmix64 generator. [`CountingSource`]
//! wraps any source and tallies how many uniforms have been handed out,
//! which is the cost measure used throughout this crate.

/// Additive increment of the splitmix64 state (the 64-bit golden ratio).
pub const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// The splitmix64 output finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One step of splitmix64: returns the advanced state and the output word.
#[inline]
pub fn next_raw(state: u64) -> (u64, u64) {
    let state = state.wrapping_add(GOLDEN_GAMMA);
    (state, mix64(state))
}

/// Maps the top 53 bits of `word` onto `[0, 1)`.
#[inline]
pub fn to_unit_interval(word: u64) -> f64 {
    (word >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Anything that hands out uniforms in `[0, 1)`.
pub trait UniformSource {
    fn next_uniform(&mut self) -> f64;
}

impl<S: UniformSource + ?Sized> UniformSource for &mut S {
    #[inline]
    fn next_uniform(&mut self) -> f64 {
        (**self).next_uniform()
    }
}

impl<S: UniformSource + ?Sized> UniformSource for Box<S> {
    #[inline]
    fn next_uniform(&mut self) -> f64 {
        (**self).next_uniform()
    }
}

/// splitmix64 pseudorandom generator. The output sequence is a pure
/// function of the seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn state(&self) -> u64 {
        self.state
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        let (state, word) = next_raw(self.state);
        self.state = state;
        word
    }
}

impl UniformSource for SplitMix64 {
    #[inline]
    fn next_uniform(&mut self) -> f64 {
        to_unit_interval(self.next_u64())
    }
}

/// Decorator that counts the uniforms drawn through it without altering them.
#[derive(Debug, Clone)]
pub struct CountingSource<S> {
    inner: S,
    draws: u64,
}

impl<S> CountingSource<S> {
    pub fn new(inner: S) -> Self {
        CountingSource { inner, draws: 0 }
    }

    /// Number of uniforms drawn since construction or the last [`reset`](Self::reset).
    pub fn draws(&self) -> u64 {
        self.draws
    }

    pub fn reset(&mut self) {
        self.draws = 0;
    }

    pub fn inner(&self) -> &S {
        &self.inner
    }

    /// Draws made directly on the inner source are not counted.
    pub fn inner_mut(&mut self) -> &mut S {
        &mut self.inner
    }

    pub fn into_inner(self) -> S {
        self.inner
    }
}

impl<S: UniformSource> UniformSource for CountingSource<S> {
    #[inline]
    fn next_uniform(&mut self) -> f64 {
        self.draws += 1;
        self.inner.next_uniform()
    }
}

/// Replays a fixed list of uniforms, then panics when exhausted.
///
/// Used to force specific draws through a sampler.
#[derive(Debug, Clone)]
pub struct SequenceSource {
    values: Vec<f64>,
    pos: usize,
}

impl SequenceSource {
    pub fn new(values: impl Into<Vec<f64>>) -> Self {
        SequenceSource {
            values: values.into(),
            pos: 0,
        }
    }

    pub fn remaining(&self) -> usize {
        self.values.len() - self.pos
    }
}

impl UniformSource for SequenceSource {
    fn next_uniform(&mut self) -> f64 {
        let u = *self.values.get(self.pos).expect("SequenceSource exhausted");
        self.pos += 1;
        u
    }
}
