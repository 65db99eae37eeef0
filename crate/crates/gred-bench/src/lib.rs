//! Seeded input builders shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gred::gf2::BitMatrix;
use gred::graph::Graph;

/// A reproducible random matrix.
pub fn random_matrix(n_rows: usize, n_cols: usize, seed: u64) -> BitMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    BitMatrix::from_fn(n_rows, n_cols, |_, _| rng.random())
}

/// A reproducible random graph on `n` vertices labeled `v1..vn`.
pub fn random_graph(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adj = BitMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            if rng.random() {
                adj.set(i, j, true);
                adj.set(j, i, true);
            }
        }
    }
    let labels = (1..=n).map(|i| format!("v{i}")).collect();
    Graph::new(labels, adj).unwrap()
}
