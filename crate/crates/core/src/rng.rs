//! Named, keyed random substreams.
//!
//! Every randomized operation draws from a stream derived from
//! `(master seed, operation name, sequence index)`, so results do not depend
//! on the order in which sequences are processed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn stream_seed(master: u64, name: &str, index: u64) -> u64 {
    let a = splitmix64(master ^ fnv1a(name.as_bytes()));
    splitmix64(a ^ splitmix64(index))
}

pub fn substream(master: u64, name: &str, index: u64) -> StreamRng {
    StreamRng::seed_from_u64(stream_seed(master, name, index))
}
