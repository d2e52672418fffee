//! Fixtures shared by the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twkit::generators::random_partial_k_tree;
use twkit::{Graph, TreeDecomposition};

/// Partial 3-tree on `n` vertices with its generating decomposition; the
/// same `n` always yields the same graph.
pub fn partial_three_tree(n: usize) -> (Graph, TreeDecomposition) {
    random_partial_k_tree(n, 3, 0.8, &mut ChaCha8Rng::seed_from_u64(n as u64))
}
