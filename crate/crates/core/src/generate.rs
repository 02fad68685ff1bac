//! Random connected multigraphs and edge lengths for testing and demos.

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;
use crate::graph::Graph;
use crate::linalg::{rational, ratio};

/// A connected multigraph on `n` vertices: a random spanning tree on a
/// shuffled labelling plus `extra` further edges between distinct random
/// endpoints (parallel edges allowed).
pub fn random_connected_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, extra: usize) -> Result<Graph> {
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let mut pairs: Vec<(usize, usize)> = (1..n)
        .map(|i| (labels[rng.random_range(0..i)], labels[i]))
        .collect();
    if n >= 2 {
        for _ in 0..extra {
            let a = rng.random_range(0..n);
            let b = (a + rng.random_range(1..n)) % n;
            pairs.push((a, b));
        }
    }
    Graph::new(n, pairs)
}

/// Lengths drawn uniformly from `{1, 1/2, 2, 3}`.
pub fn random_lengths<R: Rng + ?Sized>(rng: &mut R, m: usize) -> Vec<BigRational> {
    let choices = [rational(1), ratio(1, 2), rational(2), rational(3)];
    (0..m)
        .map(|_| choices[rng.random_range(0..choices.len())].clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::stream_rng;

    #[test]
    fn connected_with_requested_size() {
        let mut rng = stream_rng(1, 0);
        for n in 1..10 {
            let g = random_connected_graph(&mut rng, n, 4).unwrap();
            assert!(g.is_connected());
            assert_eq!(g.edge_count(), n - 1 + if n >= 2 { 4 } else { 0 });
        }
    }
}
