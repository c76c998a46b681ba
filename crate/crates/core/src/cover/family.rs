//! Seeded random hypergraphs for oracle cross-checks.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hj::Hypergraph;

/// `count` hypergraphs with `2..=max_vertices` vertices and up to 30 edges
/// of size `2..=5`, reproducible from `seed`.
pub fn random_hypergraphs(seed: u64, count: usize, max_vertices: usize) -> Vec<Hypergraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=max_vertices.max(2));
            let m = rng.gen_range(0..=30);
            let mut h = Hypergraph::edgeless(n);
            for _ in 0..m {
                let size = rng.gen_range(2..=n.min(5));
                let mut e = sample(&mut rng, n, size).into_vec();
                e.sort_unstable();
                if let Some(next) = h.with_edge(e) {
                    h = next;
                }
            }
            h
        })
        .collect()
}
