//! Seed derivation. Each node's sampling stream depends only on the run
//! seed, its tree id and its path, so layers can be expanded in any order
//! or in parallel without changing the tree.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const ROOTS_TAG: u64 = 0x524f_4f54_5f53_454c; // "ROOT_SEL"
const NODE_TAG: u64 = 0x4e4f_4445_5f53_4d50; // "NODE_SMP"

/// splitmix64 finalizer.
#[inline]
pub(crate) fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[inline]
pub(crate) fn combine(h: u64, v: u64) -> u64 {
    mix(h ^ mix(v))
}

pub(crate) fn node_rng(seed: u64, tree: u64, path: &[usize]) -> ChaCha8Rng {
    let mut h = combine(mix(seed), NODE_TAG);
    h = combine(h, tree);
    for &i in path {
        h = combine(h, i as u64);
    }
    ChaCha8Rng::seed_from_u64(h)
}

pub(crate) fn roots_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(combine(mix(seed), ROOTS_TAG))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn streams_depend_on_every_input() {
        let a: u64 = node_rng(1, 0, &[3, 4]).random();
        assert_eq!(a, node_rng(1, 0, &[3, 4]).random::<u64>());
        assert_ne!(a, node_rng(2, 0, &[3, 4]).random::<u64>());
        assert_ne!(a, node_rng(1, 1, &[3, 4]).random::<u64>());
        assert_ne!(a, node_rng(1, 0, &[4, 3]).random::<u64>());
        assert_ne!(a, node_rng(1, 0, &[3]).random::<u64>());
    }
}
