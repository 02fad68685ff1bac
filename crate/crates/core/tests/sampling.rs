//! Statistical checks on the tree sampler and the cut-size estimator.
//!
//! Every test uses a fixed seed, so a failure reproduces exactly. The
//! uniformity tests reject at significance 1e-3; if a sampler change makes
//! one fail, rerun with a few other seeds before treating it as a bug.

mod common;

use std::collections::HashMap;

use statrs::distribution::{ChiSquared, ContinuousCDF};

use twoforest::families::cycle_graph;
use twoforest::graph::house;
use twoforest::sampling::{estimate_expected_cut, sample_spanning_tree, stream_rng, TreeSampler};
use twoforest::Graph;

fn tree_frequencies(g: &Graph, samples: usize, seed: u64) -> HashMap<Vec<usize>, usize> {
    let sampler = TreeSampler::new(g).unwrap();
    let mut rng = stream_rng(seed, 0);
    let mut counts = HashMap::new();
    for _ in 0..samples {
        *counts.entry(sampler.sample(&mut rng).edges().to_vec()).or_default() += 1;
    }
    counts
}

fn chi_square(counts: &HashMap<Vec<usize>, usize>, cells: usize, samples: usize) -> f64 {
    let expected = samples as f64 / cells as f64;
    counts
        .values()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum()
}

#[test]
fn k2_always_gives_its_edge() {
    let g = Graph::new(2, [(0, 1)]).unwrap();
    let mut rng = stream_rng(0, 0);
    for _ in 0..50 {
        assert_eq!(sample_spanning_tree(&g, &mut rng).unwrap().edges(), &[0]);
    }
}

#[test]
fn triangle_trees_are_uniform() {
    let samples = 30_000;
    let counts = tree_frequencies(&cycle_graph(3).unwrap(), samples, 21);
    assert_eq!(counts.len(), 3);
    let p = 1.0 / 3.0;
    let sigma = (samples as f64 * p * (1.0 - p)).sqrt();
    for &c in counts.values() {
        assert!((c as f64 - samples as f64 * p).abs() <= 4.0 * sigma, "{counts:?}");
    }
}

#[test]
fn house_trees_pass_chi_square() {
    let samples = 110_000;
    let counts = tree_frequencies(&house(), samples, 22);
    assert_eq!(counts.len(), 11);
    let stat = chi_square(&counts, 11, samples);
    let critical = ChiSquared::new(10.0).unwrap().inverse_cdf(1.0 - 1e-3);
    assert!(stat < critical, "chi-square {stat} >= {critical}");
}

#[test]
fn multigraph_trees_pass_chi_square() {
    // Parallel edges are distinct trees: the doubled 4-cycle chord graph.
    let g: Graph = "4 7\n1 2\n1 2\n2 3\n3 4\n4 1\n1 3\n1 3\n".parse().unwrap();
    let kappa: usize = twoforest::forest::count_spanning_trees(&g)
        .unwrap()
        .try_into()
        .unwrap();
    let samples = 40_000;
    let counts = tree_frequencies(&g, samples, 23);
    assert_eq!(counts.len(), kappa);
    let stat = chi_square(&counts, kappa, samples);
    let critical = ChiSquared::new((kappa - 1) as f64).unwrap().inverse_cdf(1.0 - 1e-3);
    assert!(stat < critical, "chi-square {stat} >= {critical}");
}

#[test]
fn estimate_is_independent_of_thread_count() {
    let g = house();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| estimate_expected_cut(&g, 10_000, 99).unwrap())
    };
    assert_eq!(run(1), run(3));
}

#[test]
fn different_seeds_differ() {
    let g = house();
    let a = estimate_expected_cut(&g, 5_000, 1).unwrap();
    let b = estimate_expected_cut(&g, 5_000, 2).unwrap();
    assert_ne!(a.histogram, b.histogram);
}

#[test]
fn cycle_cut_is_always_two() {
    let est = estimate_expected_cut(&cycle_graph(7).unwrap(), 2_000, 5).unwrap();
    assert_eq!(est.estimate, 2.0);
    assert_eq!(est.std_error, 0.0);
}
