//! Finite oriented multigraphs, their incidence and Laplacian matrices, and
//! the edge-list text format.
//!
//! The file format is a header line `n m` followed by `m` edge lines
//! `u v` or `u v len`, with 1-based vertex indices and `len` a positive
//! integer or `p/q`. Lines starting with `#` and blank lines are ignored.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, RationalMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    /// `e⁻`
    pub tail: usize,
    /// `e⁺`
    pub head: usize,
}

impl Edge {
    /// Orients `{u, v}` toward its larger endpoint.
    pub fn toward_larger(u: usize, v: usize) -> Self {
        Edge {
            tail: u.min(v),
            head: u.max(v),
        }
    }

    pub fn reversed(self) -> Self {
        Edge {
            tail: self.head,
            head: self.tail,
        }
    }

    pub fn is_incident(&self, v: usize) -> bool {
        self.tail == v || self.head == v
    }

    /// The endpoint opposite `v`; `v` must be an endpoint.
    pub fn other(&self, v: usize) -> usize {
        if self.tail == v {
            self.head
        } else {
            self.tail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    lengths: Option<Vec<BigRational>>,
}

impl Graph {
    /// Builds a graph from unordered vertex pairs, orienting every edge
    /// toward its larger endpoint.
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::from_edges(
            n,
            pairs
                .into_iter()
                .map(|(u, v)| Edge::toward_larger(u, v))
                .collect(),
        )
    }

    /// Builds a graph with explicit edge orientations.
    pub fn from_edges(n: usize, edges: Vec<Edge>) -> Result<Self> {
        if n == 0 {
            return Err(Error::TooFewVertices {
                required: 1,
                found: 0,
            });
        }
        for (index, e) in edges.iter().enumerate() {
            for v in [e.tail, e.head] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if e.tail == e.head {
                return Err(Error::LoopEdge {
                    edge: index + 1,
                    vertex: e.tail,
                });
            }
        }
        Ok(Graph {
            n,
            edges,
            lengths: None,
        })
    }

    /// Attaches per-edge lengths; every length must be strictly positive.
    pub fn with_lengths(mut self, lengths: Vec<BigRational>) -> Result<Self> {
        if lengths.len() != self.edges.len() {
            return Err(Error::ShapeMismatch {
                left: (self.edges.len(), 1),
                right: (lengths.len(), 1),
            });
        }
        if let Some((i, bad)) = lengths.iter().enumerate().find(|(_, l)| !l.is_positive()) {
            return Err(Error::NonPositiveLength {
                edge: i + 1,
                length: bad.to_string(),
            });
        }
        self.lengths = Some(lengths);
        Ok(self)
    }

    /// The same graph with lengths dropped.
    pub fn unweighted(&self) -> Self {
        Graph {
            n: self.n,
            edges: self.edges.clone(),
            lengths: None,
        }
    }

    /// The same graph with every edge orientation flipped.
    pub fn reversed(&self) -> Self {
        Graph {
            n: self.n,
            edges: self.edges.iter().map(|e| e.reversed()).collect(),
            lengths: self.lengths.clone(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn lengths(&self) -> Option<&[BigRational]> {
        self.lengths.as_deref()
    }

    /// Length of edge `e`, 1 when no lengths are attached.
    pub fn length(&self, e: usize) -> BigRational {
        self.lengths
            .as_ref()
            .map_or_else(BigRational::one, |l| l[e].clone())
    }

    /// Conductance `1/ℓ(e)` of edge `e`.
    pub fn conductance(&self, e: usize) -> BigRational {
        self.length(e).recip()
    }

    pub fn has_unit_lengths(&self) -> bool {
        self.lengths
            .as_ref()
            .is_none_or(|l| l.iter().all(|x| x.is_one()))
    }

    /// `|E| − |V| + 1`; may be negative for disconnected graphs.
    pub fn genus(&self) -> i64 {
        self.edges.len() as i64 - self.n as i64 + 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.is_incident(v)).count()
    }

    /// Indices of edges incident to `v`, i.e. `𝒩_E(v)`.
    pub fn incident_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.is_incident(v))
            .map(|(i, _)| i)
    }

    /// For each vertex, its `(neighbor, edge index)` pairs in edge order.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.tail].push((e.head, i));
            adj[e.head].push((e.tail, i));
        }
        adj
    }

    /// Signed incidence matrix: `+1` at `(e⁺, e)`, `−1` at `(e⁻, e)`.
    pub fn incidence_matrix(&self) -> IntMatrix {
        let mut b = IntMatrix::zeros(self.n, self.edges.len());
        for (i, e) in self.edges.iter().enumerate() {
            b[(e.head, i)] = BigInt::one();
            b[(e.tail, i)] = -BigInt::one();
        }
        b
    }

    /// Combinatorial Laplacian `L = BBᵀ`; lengths are ignored.
    pub fn laplacian(&self) -> IntMatrix {
        let mut l = IntMatrix::zeros(self.n, self.n);
        for e in &self.edges {
            l[(e.tail, e.tail)] += 1;
            l[(e.head, e.head)] += 1;
            l[(e.tail, e.head)] -= 1;
            l[(e.head, e.tail)] -= 1;
        }
        l
    }

    /// Conductance-weighted Laplacian `Σ_e ℓ(e)⁻¹ b_e b_eᵀ`. Equal to
    /// [`Graph::laplacian`] for unit lengths.
    pub fn weighted_laplacian(&self) -> RationalMatrix {
        let mut l = RationalMatrix::zeros(self.n, self.n);
        for (i, e) in self.edges.iter().enumerate() {
            let c = self.conductance(i);
            l[(e.tail, e.tail)] += &c;
            l[(e.head, e.head)] += &c;
            l[(e.tail, e.head)] -= &c;
            l[(e.head, e.tail)] -= &c;
        }
        l
    }

    /// Component label for every vertex; labels are assigned in order of the
    /// smallest vertex of each component.
    pub fn components(&self) -> Vec<usize> {
        let adj = self.adjacency();
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &(w, _) in &adj[v] {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }

    /// `Ok(())` for connected graphs, otherwise an error naming one vertex
    /// in each of two different components.
    pub fn require_connected(&self) -> Result<()> {
        let label = self.components();
        match label.iter().position(|&c| c != 0) {
            None => Ok(()),
            Some(b) => Err(Error::Disconnected { a: 0, b }),
        }
    }

    pub(crate) fn require_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// Renders the edge-list format read by [`Graph::from_str`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for (i, e) in self.edges.iter().enumerate() {
            write!(out, "{} {}", e.tail + 1, e.head + 1).unwrap();
            if let Some(lengths) = &self.lengths {
                write!(out, " {}", lengths[i]).unwrap();
            }
            out.push('\n');
        }
        out
    }
}

/// Parses the edge-list format. Edges are oriented toward their larger
/// endpoint. Lengths are attached only if at least one edge line carries a
/// third column; edges without one get length 1.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing header \"n m\"".into(),
    })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [n, m] = fields[..] else {
        return Err(parse_error(header_line, "header must be \"n m\""));
    };
    let n: usize = n
        .parse()
        .map_err(|_| parse_error(header_line, "vertex count is not a nonnegative integer"))?;
    let m: usize = m
        .parse()
        .map_err(|_| parse_error(header_line, "edge count is not a nonnegative integer"))?;
    if n == 0 {
        return Err(parse_error(header_line, "graph must have at least one vertex"));
    }

    let mut edges = Vec::with_capacity(m);
    let mut lengths = Vec::with_capacity(m);
    let mut any_length = false;
    for (line, text) in lines {
        if edges.len() == m {
            return Err(parse_error(line, &format!("more than {m} edge lines")));
        }
        let fields: Vec<&str> = text.split_whitespace().collect();
        let (u, v, len) = match fields[..] {
            [u, v] => (u, v, None),
            [u, v, len] => (u, v, Some(len)),
            _ => return Err(parse_error(line, "edge line must be \"u v\" or \"u v len\"")),
        };
        let vertex = |s: &str| -> Result<usize> {
            let k: usize = s
                .parse()
                .map_err(|_| parse_error(line, &format!("bad vertex index {s:?}")))?;
            if k == 0 || k > n {
                return Err(Error::VertexOutOfRange {
                    vertex: k.wrapping_sub(1),
                    n,
                });
            }
            Ok(k - 1)
        };
        let (u, v) = (vertex(u)?, vertex(v)?);
        if u == v {
            return Err(Error::LoopEdge {
                edge: edges.len() + 1,
                vertex: u,
            });
        }
        let length = match len {
            None => BigRational::one(),
            Some(s) => {
                any_length = true;
                let value = BigRational::from_str(s)
                    .map_err(|_| parse_error(line, &format!("bad length {s:?}")))?;
                if !value.is_positive() {
                    return Err(Error::NonPositiveLength {
                        edge: edges.len() + 1,
                        length: s.to_string(),
                    });
                }
                value
            }
        };
        edges.push(Edge::toward_larger(u, v));
        lengths.push(length);
    }
    if edges.len() != m {
        return Err(parse_error(
            header_line,
            &format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    let graph = Graph::from_edges(n, edges)?;
    if any_length {
        graph.with_lengths(lengths)
    } else {
        Ok(graph)
    }
}

fn parse_error(line: usize, message: &str) -> Error {
    Error::Parse {
        line,
        message: message.to_string(),
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_graph(s)
    }
}

/// The 5-vertex house graph: a square `1-2-4-3` with roof vertex 5.
pub fn house() -> Graph {
    Graph::new(5, [(0, 1), (0, 2), (1, 3), (2, 3), (2, 4), (3, 4)]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    const HOUSE: &str = "5 6\n1 2\n1 3\n2 4\n3 4\n3 5\n4 5";

    fn ints(rows: &[&[i64]]) -> IntMatrix {
        Matrix::from_fn(rows.len(), rows[0].len(), |i, j| BigInt::from(rows[i][j]))
    }

    #[test]
    fn parses_house() {
        let g = parse_graph(HOUSE).unwrap();
        assert_eq!(g, house());
        assert_eq!((g.vertex_count(), g.edge_count(), g.genus()), (5, 6, 2));
        assert!(g.lengths().is_none());
    }

    #[test]
    fn house_incidence_and_laplacian() {
        let g = house();
        let b = ints(&[
            &[-1, -1, 0, 0, 0, 0],
            &[1, 0, -1, 0, 0, 0],
            &[0, 1, 0, -1, -1, 0],
            &[0, 0, 1, 1, 0, -1],
            &[0, 0, 0, 0, 1, 1],
        ]);
        assert_eq!(g.incidence_matrix(), b);
        let l = ints(&[
            &[2, -1, -1, 0, 0],
            &[-1, 2, 0, -1, 0],
            &[-1, 0, 3, -1, -1],
            &[0, -1, -1, 3, -1],
            &[0, 0, -1, -1, 2],
        ]);
        assert_eq!(g.laplacian(), l);
        assert_eq!(b.matmul(&b.transpose()).unwrap(), l);
    }

    #[test]
    fn k2() {
        let g = parse_graph("2 1\n1 2").unwrap();
        assert_eq!(g.incidence_matrix(), ints(&[&[-1], &[1]]));
        assert_eq!(g.laplacian(), ints(&[&[1, -1], &[-1, 1]]));
        assert!(g.is_connected());
    }

    #[test]
    fn parallel_edges_counted() {
        let g = parse_graph("3 3\n1 2\n1 2\n2 3").unwrap();
        let l = g.laplacian();
        assert_eq!(l[(0, 1)], BigInt::from(-2));
        assert_eq!(l[(0, 0)], BigInt::from(2));
        assert_eq!(l[(1, 1)], BigInt::from(3));
    }

    #[test]
    fn connectivity() {
        assert!(house().is_connected());
        let two = Graph::new(2, []).unwrap();
        assert!(!two.is_connected());
        let pair = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert!(!pair.is_connected());
        assert_eq!(pair.require_connected(), Err(Error::Disconnected { a: 0, b: 2 }));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_graph("2 1\n1 1"), Err(Error::LoopEdge { .. })));
        assert!(matches!(
            parse_graph("2 1\n1 3"),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        ));
        assert!(matches!(
            parse_graph("2 1\n0 1"),
            Err(Error::VertexOutOfRange { .. })
        ));
        assert!(matches!(
            parse_graph("2 1\n1 2 -1/2"),
            Err(Error::NonPositiveLength { .. })
        ));
        assert!(matches!(
            parse_graph("2 1\n1 2 0"),
            Err(Error::NonPositiveLength { .. })
        ));
        assert!(matches!(parse_graph("2 1\n1 x"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("2 2\n1 2"), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph("2 1\n1 2\n1 2"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_graph(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph("0 0"), Err(Error::Parse { .. })));
    }

    #[test]
    fn lengths_and_comments() {
        let g = parse_graph("# weighted\n3 2\n\n1 2 1/2\n# mid\n3 2").unwrap();
        let l = g.lengths().unwrap();
        assert_eq!(l[0], BigRational::new(1.into(), 2.into()));
        assert_eq!(l[1], BigRational::one());
        assert_eq!(g.edges()[1], Edge { tail: 1, head: 2 });
        let w = g.weighted_laplacian();
        assert_eq!(w[(0, 0)], BigRational::from_integer(2.into()));
        assert_eq!(parse_graph(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn weighted_laplacian_matches_unit() {
        assert_eq!(house().weighted_laplacian(), house().laplacian().to_rational());
    }
}
