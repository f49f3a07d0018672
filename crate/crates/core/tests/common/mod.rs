#![allow(dead_code)]

pub mod oracle;

use kneser_core::harness::random_hypergraph;
use kneser_core::Hypergraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random instance together with a legal threshold and a Kneser uniformity.
pub struct Case {
    pub f: Hypergraph,
    pub r: usize,
    pub s: usize,
}

/// `count` hypergraphs on at most 8 vertices with edges of size at least 2.
pub fn corpus(seed: u64, count: usize) -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=8);
            let s = rng.gen_range(0..=2.min(n - 1));
            let m = rng.gen_range(0..=8);
            let r = rng.gen_range(2..=3);
            let f = random_hypergraph(&mut rng, n, m, s.max(1)).unwrap();
            Case { f, r, s }
        })
        .collect()
}
