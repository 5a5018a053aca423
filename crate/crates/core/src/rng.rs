//! Keyed random streams.
//!
//! Every random draw in the crate comes from a ChaCha8 stream addressed by a
//! [`StreamKey`] plus a 64-bit stream index. Keys are derived hierarchically
//! (`root(seed) → derive(tag, i) → …`), so the values any task sees depend only
//! on its address and never on scheduling or worker count.

use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StreamKey {
    words: [u64; 4],
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn label_hash(label: &str) -> u64 {
    // FNV-1a
    label
        .bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3))
}

impl StreamKey {
    pub fn root(seed: u64) -> Self {
        let mut state = seed;
        Self { words: std::array::from_fn(|_| splitmix64(&mut state)) }
    }

    /// Child key addressed by a label and an index.
    pub fn derive(&self, label: &str, index: u64) -> Self {
        let mut state = self.words[0] ^ label_hash(label).rotate_left(17) ^ index.wrapping_mul(0xD6E8_FEB8_6659_FD93);
        let mut words = [0u64; 4];
        for (i, w) in words.iter_mut().enumerate() {
            *w = self.words[i] ^ splitmix64(&mut state);
        }
        Self { words }
    }

    /// Independent generator for stream `index` under this key.
    pub fn stream(&self, index: u64) -> ChaCha8Rng {
        let mut seed = [0u8; 32];
        for (chunk, w) in seed.chunks_exact_mut(8).zip(self.words) {
            chunk.copy_from_slice(&w.to_le_bytes());
        }
        let mut rng = ChaCha8Rng::from_seed(seed);
        rng.set_stream(index);
        rng
    }
}
