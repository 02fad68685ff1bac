//! Minor-based counts and potentials against brute-force enumeration.

mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use common::*;
use twoforest::forest::{
    count_pair_rooted, count_rooted_forests, count_spanning_trees, count_two_forests,
    enumerate_forests, three_forest_count, three_forest_count_via_jacobi, weighted_tree_count,
    weighted_two_forest_count,
};
use twoforest::potential::{potential_kernel, PotentialProfile};
use twoforest::Graph;

fn check_counts(g: &Graph) {
    let n = g.vertex_count();
    let trees = brute_forests(g, 1);
    let two = brute_forests(g, 2);
    assert_eq!(count_spanning_trees(g).unwrap(), BigInt::from(trees.len()));
    assert_eq!(count_two_forests(g).unwrap(), BigInt::from(two.len()));
    assert_eq!(enumerate_forests(g, 2).unwrap().len(), two.len());

    let kappa = BigRational::from_integer(BigInt::from(trees.len()));
    let profile = PotentialProfile::new(g).unwrap();
    for x in 0..n {
        for y in 0..n {
            let separated = two.iter().filter(|(_, l)| l[x] != l[y]).count();
            assert_eq!(*profile.r(x, y), int(separated as i64) / &kappa, "r({x},{y})");
        }
    }
    for qv in 0..n {
        let kernel = potential_kernel(g, qv).unwrap();
        for x in 0..n {
            for y in 0..n {
                let together = two
                    .iter()
                    .filter(|(_, l)| l[x] == l[y] && l[x] != l[qv])
                    .count();
                assert_eq!(kernel[(x, y)], int(together as i64) / &kappa, "j_{qv}({x},{y})");
            }
        }
    }
}

fn check_triples(g: &Graph) {
    let n = g.vertex_count();
    let two = brute_forests(g, 2);
    let three = brute_forests(g, 3);
    for x in 0..n {
        for y in 0..n {
            for qv in 0..n {
                let pair = two
                    .iter()
                    .filter(|(_, l)| l[x] == l[y] && l[x] != l[qv])
                    .count();
                assert_eq!(count_pair_rooted(g, x, y, qv).unwrap(), BigInt::from(pair));
                let triple = three
                    .iter()
                    .filter(|(_, l)| l[x] != l[y] && l[y] != l[qv] && l[x] != l[qv])
                    .count();
                assert_eq!(three_forest_count(g, x, y, qv).unwrap(), BigInt::from(triple));
                assert_eq!(
                    three_forest_count_via_jacobi(g, x, y, qv).unwrap(),
                    Some(BigInt::from(triple))
                );
            }
        }
    }
}

#[test]
fn corpus_counts_match_enumeration() {
    for (_, g) in corpus() {
        if g.edge_count() <= 16 {
            check_counts(&g.unweighted());
        }
    }
}

#[test]
fn corpus_triples_match_enumeration() {
    for (_, g) in corpus() {
        if g.edge_count() <= 12 {
            check_triples(&g);
        }
    }
}

#[test]
fn corpus_weighted_counts_match_enumeration() {
    for (name, g) in corpus() {
        if g.edge_count() <= 16 && g.vertex_count() >= 2 {
            assert_eq!(weighted_tree_count(&g).unwrap(), brute_weighted(&g, 1), "{name}");
            assert_eq!(weighted_two_forest_count(&g).unwrap(), brute_weighted(&g, 2), "{name}");
        }
    }
}

#[test]
fn rooted_forests_match_enumeration() {
    let g = twoforest::graph::house();
    for roots in [vec![0, 1, 4], vec![2, 3], vec![4], vec![0, 1, 2, 3]] {
        let expected = brute_forests(&g, roots.len())
            .iter()
            .filter(|(_, l)| {
                let mut seen: Vec<usize> = roots.iter().map(|&r| l[r]).collect();
                seen.sort_unstable();
                seen.dedup();
                seen.len() == roots.len()
            })
            .count();
        assert_eq!(count_rooted_forests(&g, &roots).unwrap(), BigInt::from(expected));
    }
}

#[test]
fn weighted_resistance_matches_enumeration() {
    let g = twoforest::graph::house()
        .with_lengths(vec![int(1), q(1, 2), int(2), int(3), int(1), q(3, 2)])
        .unwrap();
    let profile = PotentialProfile::new(&g).unwrap();
    let trees = brute_weighted(&g, 1);
    let two = brute_forests(&g, 2);
    for x in 0..5 {
        for y in 0..5 {
            let sep: BigRational = two
                .iter()
                .filter(|(_, l)| l[x] != l[y])
                .map(|(mask, _)| {
                    (0..g.edge_count())
                        .filter(|i| mask >> i & 1 == 0)
                        .fold(int(1), |acc, i| acc * g.length(i))
                })
                .sum();
            assert_eq!(*profile.r(x, y), sep / &trees);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_counts_match_enumeration(g in arb_graph(6, 5)) {
        check_counts(&g);
    }

    #[test]
    fn random_triples_match_enumeration(g in arb_graph(5, 4)) {
        check_triples(&g);
    }

    #[test]
    fn random_weighted_counts_match_enumeration(g in arb_weighted_graph(6, 4)) {
        prop_assert_eq!(weighted_tree_count(&g).unwrap(), brute_weighted(&g, 1));
        prop_assert_eq!(weighted_two_forest_count(&g).unwrap(), brute_weighted(&g, 2));
    }
}
