//! Spanning tree and spanning forest counts.
//!
//! Counts come from Laplacian minors (all-minors matrix-tree theorem).
//! [`enumerate_forests`] is an independent brute-force enumerator that the
//! tests use as the oracle for every minor-based count.

use std::collections::HashMap;
use std::sync::Mutex;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::IntMatrix;
use crate::report::VerificationReport;

/// Largest edge count accepted by the brute-force enumerators.
pub const ENUMERATION_EDGE_LIMIT: usize = 24;

/// A spanning forest given by its edge indices and vertex partition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Forest {
    edges: Vec<usize>,
    component: Vec<usize>,
    components: usize,
}

impl Forest {
    /// Builds the forest spanned by `edges`, or `None` if they contain a cycle.
    pub fn from_edges(g: &Graph, mut edges: Vec<usize>) -> Option<Self> {
        edges.sort_unstable();
        let mut uf = UnionFind::<usize>::new(g.vertex_count());
        for &i in &edges {
            let e = g.edges()[i];
            if !uf.union(e.tail, e.head) {
                return None;
            }
        }
        let roots = uf.into_labeling();
        let mut relabel = HashMap::new();
        let component: Vec<usize> = roots
            .iter()
            .map(|r| {
                let next = relabel.len();
                *relabel.entry(*r).or_insert(next)
            })
            .collect();
        Some(Forest {
            edges,
            component,
            components: relabel.len(),
        })
    }

    /// Sorted edge indices.
    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    /// Component label of `v`; labels follow the smallest vertex of each
    /// component, so vertex 0 is always in component 0.
    pub fn component_of(&self, v: usize) -> usize {
        self.component[v]
    }

    pub fn partition(&self) -> &[usize] {
        &self.component
    }

    pub fn connects(&self, x: usize, y: usize) -> bool {
        self.component[x] == self.component[y]
    }

    /// True when every component holds exactly one vertex of `roots`.
    pub fn is_rooted_at(&self, roots: &[usize]) -> bool {
        let mut seen = vec![0usize; self.components];
        for &r in roots {
            seen[self.component[r]] += 1;
        }
        seen.iter().all(|&c| c == 1)
    }

    /// Edges of `g` joining two different components of the forest.
    pub fn cut_edges<'a>(&'a self, g: &'a Graph) -> impl Iterator<Item = usize> + 'a {
        g.edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| !self.connects(e.tail, e.head))
            .map(|(i, _)| i)
    }

    pub fn cut_size(&self, g: &Graph) -> usize {
        self.cut_edges(g).count()
    }

    /// `Π_{e∉F} ℓ(e)`, the weight used in length-weighted counts.
    pub fn complement_weight(&self, g: &Graph) -> BigRational {
        let mut inside = vec![false; g.edge_count()];
        for &i in &self.edges {
            inside[i] = true;
        }
        (0..g.edge_count())
            .filter(|&i| !inside[i])
            .fold(BigRational::one(), |acc, i| acc * g.length(i))
    }
}

/// All spanning forests of `g` with exactly `r` components, in
/// lexicographic order of their edge sets.
pub fn enumerate_forests(g: &Graph, r: usize) -> Result<Vec<Forest>> {
    if g.edge_count() > ENUMERATION_EDGE_LIMIT {
        return Err(Error::TooManyEdges {
            edges: g.edge_count(),
            limit: ENUMERATION_EDGE_LIMIT,
        });
    }
    let n = g.vertex_count();
    if r == 0 || r > n {
        return Ok(Vec::new());
    }
    // An acyclic edge set spanning n vertices with r components has n − r edges.
    Ok((0..g.edge_count())
        .combinations(n - r)
        .filter_map(|edges| Forest::from_edges(g, edges))
        .collect())
}

/// All `roots`-rooted spanning forests, by enumeration.
pub fn enumerate_rooted_forests(g: &Graph, roots: &[usize]) -> Result<Vec<Forest>> {
    validate_roots(g, roots)?;
    Ok(enumerate_forests(g, roots.len())?
        .into_iter()
        .filter(|f| f.is_rooted_at(roots))
        .collect())
}

fn validate_roots(g: &Graph, roots: &[usize]) -> Result<()> {
    if roots.is_empty() {
        return Err(Error::EmptyRoots);
    }
    for (i, &r) in roots.iter().enumerate() {
        g.require_vertex(r)?;
        if roots[..i].contains(&r) {
            return Err(Error::DuplicateRoot(r));
        }
    }
    Ok(())
}

fn minor(l: &IntMatrix, rows: &[usize], cols: &[usize]) -> BigInt {
    l.delete(rows, cols)
        .and_then(|m| m.det())
        .expect("validated indices give a square minor")
}

/// `κ(G) = det L[q̄]` with `q` the first vertex.
pub fn count_spanning_trees(g: &Graph) -> Result<BigInt> {
    count_spanning_trees_at(g, 0)
}

/// `κ(G)` through the minor deleting vertex `q`.
pub fn count_spanning_trees_at(g: &Graph, q: usize) -> Result<BigInt> {
    g.require_connected()?;
    g.require_vertex(q)?;
    Ok(minor(&g.laplacian(), &[q], &[q]))
}

/// Number of spanning forests with exactly one vertex of `roots` in each
/// component, `det L[S̄]`.
pub fn count_rooted_forests(g: &Graph, roots: &[usize]) -> Result<BigInt> {
    g.require_connected()?;
    validate_roots(g, roots)?;
    Ok(minor(&g.laplacian(), roots, roots))
}

/// Signed minor `det L[x̄q̄, ȳq̄]`. Zero when `x = q` or `y = q`.
pub fn signed_pair_minor(g: &Graph, x: usize, y: usize, q: usize) -> Result<BigInt> {
    g.require_connected()?;
    for v in [x, y, q] {
        g.require_vertex(v)?;
    }
    if x == q || y == q {
        return Ok(BigInt::zero());
    }
    Ok(minor(&g.laplacian(), &[x, q], &[y, q]))
}

/// `κ₂(xy|q)`: two-forests with `x` and `y` together and `q` apart.
pub fn count_pair_rooted(g: &Graph, x: usize, y: usize, q: usize) -> Result<BigInt> {
    Ok(signed_pair_minor(g, x, y, q)?.abs())
}

/// `κ₃(x|y|q) = det L[x̄ȳq̄]`; zero unless the three vertices are distinct.
pub fn three_forest_count(g: &Graph, x: usize, y: usize, q: usize) -> Result<BigInt> {
    g.require_connected()?;
    for v in [x, y, q] {
        g.require_vertex(v)?;
    }
    if x == y || y == q || x == q {
        return Ok(BigInt::zero());
    }
    Ok(minor(&g.laplacian(), &[x, y, q], &[x, y, q]))
}

/// `κ₂(x|q)·κ₂(y|q) − κ₂(xy|q)²`, which equals `κ(G)·κ₃(x|y|q)` by the
/// Desnanot-Jacobi identity.
pub fn three_forest_jacobi_numerator(g: &Graph, x: usize, y: usize, q: usize) -> Result<BigInt> {
    g.require_connected()?;
    for v in [x, y, q] {
        g.require_vertex(v)?;
    }
    if x == y || y == q || x == q {
        return Ok(BigInt::zero());
    }
    let l = g.laplacian();
    let xq = minor(&l, &[x, q], &[x, q]);
    let yq = minor(&l, &[y, q], &[y, q]);
    let xy_q = minor(&l, &[x, q], &[y, q]);
    let yx_q = minor(&l, &[y, q], &[x, q]);
    debug_assert_eq!(xy_q.abs(), yx_q.abs());
    Ok(xq * yq - xy_q * yx_q)
}

/// `κ₃(x|y|q)` recovered by exact division from the Desnanot-Jacobi route.
/// Returns `None` if the division is inexact, which would mean the two
/// routes disagree.
pub fn three_forest_count_via_jacobi(
    g: &Graph,
    x: usize,
    y: usize,
    q: usize,
) -> Result<Option<BigInt>> {
    let numerator = three_forest_jacobi_numerator(g, x, y, q)?;
    let kappa = count_spanning_trees(g)?;
    if (&numerator % &kappa).is_zero() {
        Ok(Some(numerator / kappa))
    } else {
        Ok(None)
    }
}

/// `κ₂(G)` via `Σ_v κ₂(v|q) − Σ_e κ₃(e⁺|e⁻|q)` with `q` the first vertex.
/// A single-vertex graph has no two-forests and gives 0.
pub fn count_two_forests(g: &Graph) -> Result<BigInt> {
    count_two_forests_at(g, 0)
}

pub fn count_two_forests_at(g: &Graph, q: usize) -> Result<BigInt> {
    g.require_connected()?;
    g.require_vertex(q)?;
    let l = g.laplacian();
    let rooted: BigInt = (0..g.vertex_count())
        .filter(|&v| v != q)
        .map(|v| minor(&l, &[v, q], &[v, q]))
        .sum();
    let three: BigInt = g
        .edges()
        .iter()
        .filter(|e| e.tail != q && e.head != q)
        .map(|e| minor(&l, &[e.tail, e.head, q], &[e.tail, e.head, q]))
        .sum();
    Ok(rooted - three)
}

/// `κ(G;ℓ) = Σ_T Π_{e∉T} ℓ(e)`, computed as `Π_e ℓ(e) · det L_c[q̄]` with
/// `L_c` the conductance Laplacian.
pub fn weighted_tree_count(g: &Graph) -> Result<BigRational> {
    g.require_connected()?;
    let l = g.weighted_laplacian();
    Ok(total_length_product(g) * l.delete_symmetric(&[0])?.det()?)
}

/// `κ₂(G;ℓ) = Σ_F Π_{e∉F} ℓ(e)` over two-forests, by the conductance-weighted
/// form of `Σ_v κ₂(v|q) − Σ_e c(e) κ₃(e⁺|e⁻|q)`.
pub fn weighted_two_forest_count(g: &Graph) -> Result<BigRational> {
    g.require_connected()?;
    let l = g.weighted_laplacian();
    let q = 0;
    let mut total = BigRational::zero();
    for v in 1..g.vertex_count() {
        total += l.delete_symmetric(&[v, q])?.det()?;
    }
    for (i, e) in g.edges().iter().enumerate() {
        if e.tail != q && e.head != q {
            total -= g.conductance(i) * l.delete_symmetric(&[e.tail, e.head, q])?.det()?;
        }
    }
    Ok(total_length_product(g) * total)
}

fn total_length_product(g: &Graph) -> BigRational {
    (0..g.edge_count()).fold(BigRational::one(), |acc, i| acc * g.length(i))
}

/// Tree and two-forest counts of one graph, with memoized rooted counts.
#[derive(Debug)]
pub struct ForestCensus<'g> {
    graph: &'g Graph,
    laplacian: IntMatrix,
    kappa: BigInt,
    kappa2: BigInt,
    minors: Mutex<HashMap<(Vec<usize>, Vec<usize>), BigInt>>,
}

impl<'g> ForestCensus<'g> {
    pub fn new(graph: &'g Graph) -> Result<Self> {
        let kappa = count_spanning_trees(graph)?;
        let kappa2 = count_two_forests(graph)?;
        Ok(ForestCensus {
            graph,
            laplacian: graph.laplacian(),
            kappa,
            kappa2,
            minors: Mutex::new(HashMap::new()),
        })
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn kappa(&self) -> &BigInt {
        &self.kappa
    }

    pub fn kappa2(&self) -> &BigInt {
        &self.kappa2
    }

    /// `κ₂(G)/κ(G)`.
    pub fn ratio(&self) -> BigRational {
        BigRational::new(self.kappa2.clone(), self.kappa.clone())
    }

    fn cached_minor(&self, mut rows: Vec<usize>, mut cols: Vec<usize>) -> BigInt {
        rows.sort_unstable();
        cols.sort_unstable();
        let key = (rows, cols);
        if let Some(v) = self.minors.lock().unwrap().get(&key) {
            return v.clone();
        }
        let value = minor(&self.laplacian, &key.0, &key.1);
        self.minors.lock().unwrap().insert(key, value.clone());
        value
    }

    /// `κ₂(x|q)`.
    pub fn rooted2(&self, x: usize, q: usize) -> Result<BigInt> {
        if x == q {
            self.graph.require_vertex(x)?;
            return Ok(BigInt::zero());
        }
        validate_roots(self.graph, &[x, q])?;
        Ok(self.cached_minor(vec![x, q], vec![x, q]))
    }

    /// `κ₂(xy|q)`.
    pub fn pair_rooted(&self, x: usize, y: usize, q: usize) -> Result<BigInt> {
        for v in [x, y, q] {
            self.graph.require_vertex(v)?;
        }
        if x == q || y == q {
            return Ok(BigInt::zero());
        }
        let (x, y) = (x.min(y), x.max(y));
        Ok(self.cached_minor(vec![x, q], vec![y, q]).abs())
    }

    /// `κ₃(x|y|q)`.
    pub fn rooted3(&self, x: usize, y: usize, q: usize) -> Result<BigInt> {
        for v in [x, y, q] {
            self.graph.require_vertex(v)?;
        }
        if x == y || y == q || x == q {
            return Ok(BigInt::zero());
        }
        Ok(self.cached_minor(vec![x, y, q], vec![x, y, q]))
    }
}

/// Vertex limit for the all-triples Desnanot-Jacobi rows of
/// [`verify_forest_identities`].
pub const JACOBI_VERTEX_LIMIT: usize = 12;

/// Base-vertex independence of `κ` and of the `κ₂` formula, the
/// Desnanot-Jacobi identity `κ·κ₃(x|y|q) = κ₂(x|q)κ₂(y|q) − κ₂(xy|q)²` for
/// every triple (graphs up to [`JACOBI_VERTEX_LIMIT`] vertices), and on
/// graphs with at most 16 edges the enumeration counts.
pub fn verify_forest_identities(g: &Graph) -> Result<VerificationReport> {
    let census = ForestCensus::new(g)?;
    let n = g.vertex_count();
    let int = |x: &BigInt| BigRational::from_integer(x.clone());
    let mut report = VerificationReport::new();
    report.note("kappa", census.kappa());
    report.note("kappa2", census.kappa2());
    for q in 1..n {
        report.equal(
            format!("k via L[q] (q={}) = k via L[1]", q + 1),
            int(&count_spanning_trees_at(g, q)?),
            int(census.kappa()),
        );
        report.equal(
            format!("sum_v k2(v|q) - sum_e k3(e+|e-|q) (q={}) = k2", q + 1),
            int(&count_two_forests_at(g, q)?),
            int(census.kappa2()),
        );
    }
    if n <= JACOBI_VERTEX_LIMIT {
        let mut all_hold = true;
        let mut triples = 0usize;
        for (x, y, q) in (0..n).tuple_combinations() {
            for (x, y, q) in [(x, y, q), (x, q, y), (y, q, x)] {
                let lhs = census.kappa() * census.rooted3(x, y, q)?;
                let xy = census.pair_rooted(x, y, q)?;
                let rhs = census.rooted2(x, q)? * census.rooted2(y, q)? - &xy * &xy;
                all_hold &= lhs == rhs;
                triples += 1;
            }
        }
        report.note("jacobi triples", triples);
        report.equal(
            "k k3(x|y|q) = k2(x|q) k2(y|q) - k2(xy|q)^2 for all triples",
            BigRational::from_integer(BigInt::from(all_hold as u8)),
            BigRational::one(),
        );
    }
    if g.edge_count() <= 16 {
        report.equal(
            "k by enumeration",
            int(&BigInt::from(enumerate_forests(g, 1)?.len())),
            int(census.kappa()),
        );
        if n >= 2 {
            report.equal(
                "k2 by enumeration",
                int(&BigInt::from(enumerate_forests(g, 2)?.len())),
                int(census.kappa2()),
            );
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::house;

    fn path(n: usize) -> Graph {
        Graph::new(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    #[test]
    fn identities_report() {
        let report = verify_forest_identities(&house()).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.info_value("jacobi triples"), Some("30"));
    }

    #[test]
    fn house_counts() {
        let g = house();
        assert_eq!(count_spanning_trees(&g).unwrap(), BigInt::from(11));
        assert_eq!(count_two_forests(&g).unwrap(), BigInt::from(19));
        for q in 0..5 {
            assert_eq!(count_spanning_trees_at(&g, q).unwrap(), BigInt::from(11));
            assert_eq!(count_two_forests_at(&g, q).unwrap(), BigInt::from(19));
        }
        assert_eq!(count_rooted_forests(&g, &[4]).unwrap(), BigInt::from(11));
        assert_eq!(count_rooted_forests(&g, &[0, 4]).unwrap(), BigInt::from(13));
        assert_eq!(count_pair_rooted(&g, 0, 0, 4).unwrap(), BigInt::from(13));
    }

    #[test]
    fn k2_and_single_vertex() {
        let k2 = Graph::new(2, [(0, 1)]).unwrap();
        assert_eq!(count_spanning_trees(&k2).unwrap(), BigInt::one());
        assert_eq!(count_two_forests(&k2).unwrap(), BigInt::one());
        let dot = Graph::new(1, []).unwrap();
        assert_eq!(count_spanning_trees(&dot).unwrap(), BigInt::one());
        assert_eq!(count_two_forests(&dot).unwrap(), BigInt::zero());
        assert!(enumerate_forests(&dot, 2).unwrap().is_empty());
    }

    #[test]
    fn degenerate_pair_and_triple() {
        let g = house();
        for x in 0..5 {
            assert!(count_pair_rooted(&g, x, 2, x).unwrap().is_zero());
            assert!(three_forest_count(&g, x, x, 4).unwrap().is_zero());
        }
    }

    #[test]
    fn root_validation() {
        let g = house();
        assert_eq!(count_rooted_forests(&g, &[]), Err(Error::EmptyRoots));
        assert_eq!(count_rooted_forests(&g, &[1, 1]), Err(Error::DuplicateRoot(1)));
        assert!(count_rooted_forests(&g, &[7]).is_err());
    }

    #[test]
    fn disconnected_rejected() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(count_spanning_trees(&g), Err(Error::Disconnected { .. })));
        assert!(matches!(count_two_forests(&g), Err(Error::Disconnected { .. })));
        assert!(matches!(three_forest_count(&g, 0, 1, 2), Err(Error::Disconnected { .. })));
    }

    #[test]
    fn enumeration_small_cases() {
        let g = house();
        assert_eq!(enumerate_forests(&g, 2).unwrap().len(), 19);
        assert_eq!(enumerate_forests(&g, 1).unwrap().len(), 11);
        let k2 = Graph::new(2, [(0, 1)]).unwrap();
        assert_eq!(enumerate_forests(&k2, 1).unwrap().len(), 1);
        let p = path(6);
        assert_eq!(enumerate_forests(&p, 2).unwrap().len(), 5);
    }

    #[test]
    fn enumeration_guard() {
        let g = Graph::new(2, vec![(0, 1); 25]).unwrap();
        assert_eq!(
            enumerate_forests(&g, 1),
            Err(Error::TooManyEdges { edges: 25, limit: 24 })
        );
    }

    #[test]
    fn census_caches_agree() {
        let g = house();
        let census = ForestCensus::new(&g).unwrap();
        assert_eq!(census.ratio(), BigRational::new(19.into(), 11.into()));
        assert_eq!(census.pair_rooted(0, 1, 4).unwrap(), census.pair_rooted(1, 0, 4).unwrap());
        assert_eq!(census.rooted2(0, 4).unwrap(), BigInt::from(13));
        assert_eq!(census.rooted3(0, 1, 4).unwrap(), three_forest_count(&g, 0, 1, 4).unwrap());
    }

    #[test]
    fn jacobi_route_house() {
        let g = house();
        for (x, y, q) in (0..5).cartesian_product(0..5).cartesian_product(0..5).map(|((a, b), c)| (a, b, c)) {
            assert_eq!(
                three_forest_count_via_jacobi(&g, x, y, q).unwrap(),
                Some(three_forest_count(&g, x, y, q).unwrap())
            );
        }
    }

    #[test]
    fn weighted_counts_unit_lengths() {
        let g = house();
        assert_eq!(weighted_tree_count(&g).unwrap(), BigRational::from_integer(11.into()));
        assert_eq!(weighted_two_forest_count(&g).unwrap(), BigRational::from_integer(19.into()));
    }

    #[test]
    fn weighted_k2() {
        let g = Graph::new(2, [(0, 1)])
            .unwrap()
            .with_lengths(vec![BigRational::from_integer(3.into())])
            .unwrap();
        assert_eq!(weighted_tree_count(&g).unwrap(), BigRational::one());
        assert_eq!(weighted_two_forest_count(&g).unwrap(), BigRational::from_integer(3.into()));
    }
}
