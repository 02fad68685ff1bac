#![allow(dead_code)]

use std::collections::VecDeque;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use twoforest::generate::{random_connected_graph, random_lengths};
use twoforest::{Graph, IntMatrix};

/// Every graph in the shared corpus, by file stem.
pub fn corpus() -> Vec<(String, Graph)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let mut out: Vec<(String, Graph)> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "txt"))
        .map(|p| {
            let text = std::fs::read_to_string(&p).unwrap();
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            (name, text.parse().unwrap())
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Component label of every vertex in the subgraph spanned by `mask`.
fn labels(g: &Graph, mask: u32) -> (Vec<usize>, usize) {
    let n = g.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for (i, e) in g.edges().iter().enumerate() {
        if mask >> i & 1 == 1 {
            adj[e.tail].push(e.head);
            adj[e.head].push(e.tail);
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = count;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if label[w] == usize::MAX {
                    label[w] = count;
                    queue.push_back(w);
                }
            }
        }
        count += 1;
    }
    (label, count)
}

/// Brute-force spanning forests with `r` components: every edge subset of
/// size `n − r` whose spanned subgraph has `r` components. Returns the edge
/// mask and component labels of each.
pub fn brute_forests(g: &Graph, r: usize) -> Vec<(u32, Vec<usize>)> {
    let (n, m) = (g.vertex_count(), g.edge_count());
    assert!(m <= 20, "oracle is exponential");
    if r == 0 || r > n {
        return Vec::new();
    }
    (0u32..1 << m)
        .filter(|mask| mask.count_ones() as usize == n - r)
        .filter_map(|mask| {
            let (label, count) = labels(g, mask);
            (count == r).then_some((mask, label))
        })
        .collect()
}

/// `κ₂(xy|q)`: two-forests with `x, y` in one component and `q` in the other.
pub fn brute_pair(g: &Graph, x: usize, y: usize, qv: usize) -> usize {
    brute_forests(g, 2)
        .iter()
        .filter(|(_, l)| l[x] == l[y] && l[x] != l[qv])
        .count()
}

/// `κ₃(x|y|q)`.
pub fn brute_triple(g: &Graph, x: usize, y: usize, qv: usize) -> usize {
    brute_forests(g, 3)
        .iter()
        .filter(|(_, l)| l[x] != l[y] && l[y] != l[qv] && l[x] != l[qv])
        .count()
}

/// `Σ_F Π_{e∉F} ℓ(e)` over forests with `r` components.
pub fn brute_weighted(g: &Graph, r: usize) -> BigRational {
    brute_forests(g, r)
        .iter()
        .map(|(mask, _)| {
            (0..g.edge_count())
                .filter(|i| mask >> i & 1 == 0)
                .fold(BigRational::one(), |acc, i| acc * g.length(i))
        })
        .sum()
}

/// Cut size of a two-forest given by its component labels.
pub fn brute_cut(g: &Graph, label: &[usize]) -> usize {
    g.edges().iter().filter(|e| label[e.tail] != label[e.head]).count()
}

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(a: &IntMatrix) -> BigInt {
    let n = a.rows();
    assert_eq!(n, a.cols());
    if n == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if a[(0, j)].is_zero() {
            continue;
        }
        let minor = a.delete(&[0], &[j]).unwrap();
        let term = &a[(0, j)] * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// A random connected multigraph with `2..=max_n` vertices and a few extra edges.
pub fn arb_graph(max_n: usize, max_extra: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n, 0..=max_extra, any::<u64>()).prop_map(|(n, extra, seed)| {
        let mut rng = twoforest::sampling::stream_rng(seed, 0);
        random_connected_graph(&mut rng, n, extra).unwrap()
    })
}

/// As [`arb_graph`], with random lengths from `{1, 1/2, 2, 3}`.
pub fn arb_weighted_graph(max_n: usize, max_extra: usize) -> impl Strategy<Value = Graph> {
    (arb_graph(max_n, max_extra), any::<u64>()).prop_map(|(g, seed)| {
        let mut rng = twoforest::sampling::stream_rng(seed, 1);
        let lengths = random_lengths(&mut rng, g.edge_count());
        g.with_lengths(lengths).unwrap()
    })
}

pub fn arb_int_matrix(n: usize) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec(-6i64..=6, n * n)
        .prop_map(move |v| IntMatrix::from_fn(n, n, |i, j| BigInt::from(v[i * n + j])))
}
