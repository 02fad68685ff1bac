//! Uniform spanning trees by Wilson's algorithm, the tree-edge/forest-edge
//! correspondence, and Monte Carlo estimation of the expected cut size of a
//! uniform two-forest.
//!
//! Randomness comes from `ChaCha8Rng::seed_from_u64(seed)`. Trials run in
//! chunks of [`CHUNK_TRIALS`]; chunk `c` uses stream `c` of that generator and
//! the bootstrap uses stream `u64::MAX`, so a `(graph, seed, trials)` triple
//! gives the same estimate on any number of threads.
//!
//! Lengths are ignored throughout: trees and two-forests are counted
//! combinatorially.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::forest::{enumerate_forests, Forest};
use crate::graph::Graph;
use crate::linalg::ratio;
use crate::report::VerificationReport;

pub const CHUNK_TRIALS: u64 = 1024;
pub const BOOTSTRAP_RESAMPLES: usize = 200;

/// Counts of `|∂F|` keyed by cut size.
pub type CutHistogram = BTreeMap<usize, u64>;

#[derive(Debug, Clone, PartialEq)]
pub struct SampleEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub trials: u64,
    pub seed: u64,
    /// Cut sizes of the sampled `(T, e)` pairs; these are size-biased, not
    /// uniform over two-forests.
    pub histogram: CutHistogram,
}

/// The generator for one stream of a seed.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Precomputed adjacency for repeated sampling on one graph.
#[derive(Debug, Clone)]
pub struct TreeSampler<'g> {
    graph: &'g Graph,
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl<'g> TreeSampler<'g> {
    pub fn new(graph: &'g Graph) -> Result<Self> {
        graph.require_connected()?;
        Ok(TreeSampler {
            graph,
            adjacency: graph.adjacency(),
        })
    }

    /// Parent edge of every vertex in a uniform spanning tree rooted at
    /// vertex 0 (`None` for the root). Loop-erased walks pick a uniformly
    /// random incident edge, so parallel edges are distinguished.
    pub fn sample_parents<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<Option<usize>> {
        let n = self.graph.vertex_count();
        let mut in_tree = vec![false; n];
        let mut next: Vec<Option<(usize, usize)>> = vec![None; n];
        in_tree[0] = true;
        for start in 1..n {
            let mut u = start;
            while !in_tree[u] {
                let step = self.adjacency[u][rng.random_range(0..self.adjacency[u].len())];
                next[u] = Some(step);
                u = step.0;
            }
            let mut u = start;
            while !in_tree[u] {
                in_tree[u] = true;
                u = next[u].expect("walk visited u").0;
            }
        }
        next.into_iter().map(|s| s.map(|(_, e)| e)).collect()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Forest {
        let edges = self.sample_parents(rng).into_iter().flatten().collect();
        Forest::from_edges(self.graph, edges).expect("Wilson output is a tree")
    }

    /// `|∂F|` for `F = T − e` with `T` uniform and `e` uniform in `T`.
    fn sample_pair_cut<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let n = self.graph.vertex_count();
        let parent = self.sample_parents(rng);
        let cut_vertex = rng.random_range(1..n);
        // Vertices whose path to the root passes through cut_vertex.
        let mut side: Vec<Option<bool>> = vec![None; n];
        side[0] = Some(false);
        side[cut_vertex] = Some(true);
        let mut path = Vec::new();
        for v in 0..n {
            let mut u = v;
            while side[u].is_none() {
                path.push(u);
                u = self.graph.edges()[parent[u].expect("non-root")].other(u);
            }
            let s = side[u];
            for w in path.drain(..) {
                side[w] = s;
            }
        }
        self.graph
            .edges()
            .iter()
            .filter(|e| side[e.tail] != side[e.head])
            .count()
    }
}

/// One uniform spanning tree of a connected graph.
pub fn sample_spanning_tree<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Result<Forest> {
    Ok(TreeSampler::new(g)?.sample(rng))
}

/// Harmonic mean of a cut-size histogram.
pub fn harmonic_mean(histogram: &CutHistogram) -> f64 {
    let (count, inverse) = histogram
        .iter()
        .fold((0u64, 0f64), |(c, s), (&k, &v)| (c + v, s + v as f64 / k as f64));
    count as f64 / inverse
}

/// Estimates `𝔼|∂F|` over uniform two-forests. A uniform pair `(T, e)`
/// with `e ∈ T` yields the two-forest `T − e` with probability proportional
/// to its cut size, so the harmonic mean of the sampled cut sizes is a
/// consistent estimator. The standard error is from a bootstrap over the
/// sampled histogram.
pub fn estimate_expected_cut(g: &Graph, trials: u64, seed: u64) -> Result<SampleEstimate> {
    if trials == 0 {
        return Err(Error::ZeroTrials);
    }
    if g.vertex_count() < 2 {
        return Err(Error::TooFewVertices {
            required: 2,
            found: g.vertex_count(),
        });
    }
    let sampler = TreeSampler::new(g)?;
    let chunks = trials.div_ceil(CHUNK_TRIALS);
    let histogram = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = stream_rng(seed, c);
            let size = CHUNK_TRIALS.min(trials - c * CHUNK_TRIALS);
            let mut h = CutHistogram::new();
            for _ in 0..size {
                *h.entry(sampler.sample_pair_cut(&mut rng)).or_default() += 1;
            }
            h
        })
        .reduce(CutHistogram::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });
    let estimate = harmonic_mean(&histogram);
    let std_error = bootstrap_std_error(&histogram, trials, seed);
    Ok(SampleEstimate {
        estimate,
        std_error,
        trials,
        seed,
        histogram,
    })
}

fn bootstrap_std_error(histogram: &CutHistogram, trials: u64, seed: u64) -> f64 {
    if histogram.len() < 2 {
        return 0.0;
    }
    let mut rng = stream_rng(seed, u64::MAX);
    let probs: Vec<(usize, f64)> = histogram
        .iter()
        .map(|(&k, &v)| (k, v as f64 / trials as f64))
        .collect();
    let replicates: Vec<f64> = (0..BOOTSTRAP_RESAMPLES)
        .map(|_| {
            let mut left = trials;
            let mut mass = 1.0;
            let mut resample = CutHistogram::new();
            for (i, &(k, p)) in probs.iter().enumerate() {
                let draw = if i + 1 == probs.len() {
                    left
                } else {
                    let p = (p / mass).clamp(0.0, 1.0);
                    Binomial::new(left, p).expect("p in [0, 1]").sample(&mut rng)
                };
                if draw > 0 {
                    resample.insert(k, draw);
                }
                left -= draw;
                mass -= p;
            }
            harmonic_mean(&resample)
        })
        .collect();
    let mean = replicates.iter().sum::<f64>() / replicates.len() as f64;
    let var = replicates.iter().map(|x| (x - mean).powi(2)).sum::<f64>()
        / (replicates.len() - 1) as f64;
    var.sqrt()
}

/// Number of two-forests with each cut size, by enumeration.
pub fn exact_cut_distribution(g: &Graph) -> Result<CutHistogram> {
    let mut h = CutHistogram::new();
    for f in enumerate_forests(g, 2)? {
        *h.entry(f.cut_size(g)).or_default() += 1;
    }
    Ok(h)
}

/// `1/𝔼_{(T,e)}(1/|∂(T−e)|)` over all tree-edge pairs, exactly. Equals
/// `κ(n−1)/κ₂` on every connected graph with at least two vertices.
pub fn exact_pair_harmonic_mean(g: &Graph) -> Result<BigRational> {
    g.require_connected()?;
    let mut pairs = 0i64;
    let mut inverse = BigRational::zero();
    for tree in enumerate_forests(g, 1)? {
        for &e in tree.edges() {
            let rest: Vec<usize> = tree.edges().iter().copied().filter(|&x| x != e).collect();
            let forest = Forest::from_edges(g, rest).expect("subset of a tree");
            pairs += 1;
            inverse += ratio(1, forest.cut_size(g) as i64);
        }
    }
    if pairs == 0 {
        return Err(Error::NoTwoForests);
    }
    Ok(BigRational::from_integer(BigInt::from(pairs)) / inverse)
}

/// Checks that deleting a tree edge and adding a cut edge are inverse
/// maps between `{(T, e) : e ∈ T}` and `{(F, f) : f ∈ ∂F}`.
pub fn verify_tree_forest_correspondence(g: &Graph) -> Result<VerificationReport> {
    g.require_connected()?;
    let trees = enumerate_forests(g, 1)?;
    let forests = enumerate_forests(g, 2)?;

    let mut from_trees = HashSet::new();
    let mut deletions_are_forests = true;
    for tree in &trees {
        for &e in tree.edges() {
            let rest: Vec<usize> = tree.edges().iter().copied().filter(|&x| x != e).collect();
            match Forest::from_edges(g, rest) {
                Some(f) if f.component_count() == 2 && !f.connects(g.edges()[e].tail, g.edges()[e].head) => {
                    from_trees.insert((f.edges().to_vec(), e));
                }
                _ => deletions_are_forests = false,
            }
        }
    }
    let mut from_forests = HashSet::new();
    let mut additions_are_trees = true;
    for forest in &forests {
        for f in forest.cut_edges(g) {
            let mut edges = forest.edges().to_vec();
            edges.push(f);
            match Forest::from_edges(g, edges) {
                Some(t) if t.component_count() == 1 => {
                    from_forests.insert((forest.edges().to_vec(), f));
                }
                _ => additions_are_trees = false,
            }
        }
    }
    let tree_pairs = trees.len() * g.vertex_count().saturating_sub(1);
    let forest_pairs: usize = forests.iter().map(|f| f.cut_size(g)).sum();

    let mut report = VerificationReport::new();
    report.note("tree-edge pairs", tree_pairs);
    report.note("forest-edge pairs", forest_pairs);
    let flag = |b: bool| ratio(b as i64, 1);
    report.equal("T - e is a two-forest split by e", flag(deletions_are_forests), flag(true));
    report.equal("F + f is a spanning tree", flag(additions_are_trees), flag(true));
    report.equal(
        "#(T, e) = sum_F |dF|",
        ratio(tree_pairs as i64, 1),
        ratio(forest_pairs as i64, 1),
    );
    report.equal(
        "pair sets coincide",
        flag(from_trees == from_forests),
        flag(true),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::house;

    #[test]
    fn house_distribution_and_correspondence() {
        let g = house();
        let h = exact_cut_distribution(&g).unwrap();
        assert_eq!(h, CutHistogram::from([(2, 13), (3, 6)]));
        assert_eq!(exact_pair_harmonic_mean(&g).unwrap(), ratio(44, 19));
        let report = verify_tree_forest_correspondence(&g).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.info_value("tree-edge pairs"), Some("44"));
    }

    #[test]
    fn tree_estimates_exactly_one() {
        let g = Graph::new(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        let est = estimate_expected_cut(&g, 500, 3).unwrap();
        assert_eq!(est.estimate, 1.0);
        assert_eq!(est.std_error, 0.0);
    }

    #[test]
    fn reproducible() {
        let g = house();
        let a = estimate_expected_cut(&g, 3000, 11).unwrap();
        let b = estimate_expected_cut(&g, 3000, 11).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.histogram.values().sum::<u64>(), 3000);
    }

    #[test]
    fn sampled_trees_are_spanning() {
        let g = house();
        let mut rng = stream_rng(5, 0);
        for _ in 0..100 {
            let t = sample_spanning_tree(&g, &mut rng).unwrap();
            assert_eq!(t.component_count(), 1);
            assert_eq!(t.edges().len(), 4);
        }
    }

    #[test]
    fn errors() {
        let g = house();
        assert_eq!(estimate_expected_cut(&g, 0, 1), Err(Error::ZeroTrials));
        let single = Graph::new(1, []).unwrap();
        assert!(estimate_expected_cut(&single, 10, 1).is_err());
        let split = Graph::new(3, [(0, 1)]).unwrap();
        assert!(matches!(
            estimate_expected_cut(&split, 10, 1),
            Err(Error::Disconnected { .. })
        ));
    }
}
