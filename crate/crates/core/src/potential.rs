//! Effective resistance, the potential kernel `j_q`, the resistance matrix
//! `R`, and the curvature vector `μ`.
//!
//! Edge lengths act as resistances: every routine works with the
//! conductance Laplacian, which is the ordinary Laplacian for unit lengths.
//! The curvature vector uses the length-adjusted form
//! `μ_x = 1 − ½ Σ_{e∋x} r(e⁺,e⁻)/ℓ(e)`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::forest::{count_pair_rooted, count_spanning_trees};
use crate::graph::Graph;
use crate::linalg::{rational, ratio, RationalMatrix};
use crate::report::{Relation, VerificationReport};

/// `j_q` from the inverse of `L[q̄]`, padded with a zero row and column at
/// `q`.
pub fn potential_kernel(g: &Graph, q: usize) -> Result<RationalMatrix> {
    g.require_connected()?;
    g.require_vertex(q)?;
    let inv = g.weighted_laplacian().delete_symmetric(&[q])?.inverse()?;
    Ok(embed_without(&inv, q))
}

fn embed_without(m: &RationalMatrix, q: usize) -> RationalMatrix {
    let n = m.rows() + 1;
    let shrink = |i: usize| if i < q { i } else { i - 1 };
    RationalMatrix::from_fn(n, n, |i, j| {
        if i == q || j == q {
            BigRational::zero()
        } else {
            m[(shrink(i), shrink(j))].clone()
        }
    })
}

/// `j_q(x,y) = κ₂(xy|q)/κ(G)`, the forest-count route. Unit lengths only.
pub fn potential_kernel_by_forests(g: &Graph, q: usize) -> Result<RationalMatrix> {
    if !g.has_unit_lengths() {
        return Err(Error::NonUnitLengths);
    }
    let kappa = count_spanning_trees(g)?;
    g.require_vertex(q)?;
    let n = g.vertex_count();
    let mut out = RationalMatrix::zeros(n, n);
    for x in 0..n {
        for y in x..n {
            let value = BigRational::new(count_pair_rooted(g, x, y, q)?, kappa.clone());
            out[(x, y)] = value.clone();
            out[(y, x)] = value;
        }
    }
    Ok(out)
}

/// `r(x,y)` as a ratio of rooted forest counts, `det L[x̄ȳ] / det L[ȳ]`
/// (weighted by conductances when lengths are present).
pub fn effective_resistance(g: &Graph, x: usize, y: usize) -> Result<BigRational> {
    g.require_connected()?;
    g.require_vertex(x)?;
    g.require_vertex(y)?;
    if x == y {
        return Ok(BigRational::zero());
    }
    let l = g.weighted_laplacian();
    let two = l.delete_symmetric(&[x, y])?.det()?;
    let one = l.delete_symmetric(&[y])?.det()?;
    Ok(two / one)
}

pub fn resistance_matrix(g: &Graph) -> Result<RationalMatrix> {
    Ok(PotentialProfile::new(g)?.resistance().clone())
}

pub fn curvature_vector(g: &Graph) -> Result<Vec<BigRational>> {
    Ok(PotentialProfile::new(g)?.curvature().to_vec())
}

/// Resistance matrix, curvature vector, and lazily built potential kernels
/// of one connected graph.
#[derive(Debug)]
pub struct PotentialProfile<'g> {
    graph: &'g Graph,
    laplacian: RationalMatrix,
    resistance: RationalMatrix,
    curvature: Vec<BigRational>,
    kernels: Vec<OnceLock<RationalMatrix>>,
}

impl<'g> PotentialProfile<'g> {
    pub fn new(graph: &'g Graph) -> Result<Self> {
        graph.require_connected()?;
        let n = graph.vertex_count();
        let base = potential_kernel(graph, 0)?;
        // r(x,y) = j_q(x,x) + j_q(y,y) − 2 j_q(x,y)
        let two = rational(2);
        let resistance = RationalMatrix::from_fn(n, n, |x, y| {
            if x == y {
                BigRational::zero()
            } else {
                &base[(x, x)] + &base[(y, y)] - &two * &base[(x, y)]
            }
        });
        let curvature = (0..n)
            .map(|x| {
                let load: BigRational = graph
                    .incident_edges(x)
                    .map(|i| {
                        let e = graph.edges()[i];
                        &resistance[(e.tail, e.head)] * graph.conductance(i)
                    })
                    .sum();
                BigRational::one() - load / &two
            })
            .collect();
        let kernels: Vec<OnceLock<RationalMatrix>> = (0..n).map(|_| OnceLock::new()).collect();
        kernels[0].set(base).expect("fresh cell");
        Ok(PotentialProfile {
            graph,
            laplacian: graph.weighted_laplacian(),
            resistance,
            curvature,
            kernels,
        })
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    /// Conductance Laplacian.
    pub fn laplacian(&self) -> &RationalMatrix {
        &self.laplacian
    }

    pub fn resistance(&self) -> &RationalMatrix {
        &self.resistance
    }

    pub fn r(&self, x: usize, y: usize) -> &BigRational {
        &self.resistance[(x, y)]
    }

    pub fn curvature(&self) -> &[BigRational] {
        &self.curvature
    }

    /// Potential kernel based at `q`, computed on first use.
    pub fn kernel(&self, q: usize) -> &RationalMatrix {
        self.kernels[q].get_or_init(|| {
            potential_kernel(self.graph, q).expect("graph validated at construction")
        })
    }

    /// `j_q(x,y)`.
    pub fn j(&self, q: usize, x: usize, y: usize) -> &BigRational {
        &self.kernel(q)[(x, y)]
    }

    /// `r(e⁺,e⁻)` for every edge, in edge order.
    pub fn edge_resistances(&self) -> Vec<BigRational> {
        self.graph
            .edges()
            .iter()
            .map(|e| self.r(e.head, e.tail).clone())
            .collect()
    }

    /// `μᵀRμ`.
    pub fn mu_r_mu(&self) -> BigRational {
        self.resistance
            .quadratic_form(&self.curvature, &self.curvature)
            .expect("shapes agree")
    }

    /// Prop. 4.1-style identities (a)-(e) for one triple; (d) carries
    /// conductance weights so that it also holds with lengths.
    pub fn resistance_identities(&self, x: usize, y: usize, q: usize) -> VerificationReport {
        let r = |a: usize, b: usize| self.r(a, b).clone();
        let j = |base: usize, a: usize, b: usize| self.j(base, a, b).clone();
        let two = rational(2);
        let four = rational(4);
        let tag = format!("(x,y,q)=({},{},{})", x + 1, y + 1, q + 1);
        let mut report = VerificationReport::new();

        report.equal(
            format!("r(x,y) = j_x(y,q) + j_y(x,q) {tag}"),
            r(x, y),
            j(x, y, q) + j(y, x, q),
        );
        report.equal(
            format!("r(x,q) + r(y,q) = r(x,y) + 2 j_q(x,y) {tag}"),
            r(x, q) + r(y, q),
            r(x, y) + &two * j(q, x, y),
        );
        report.equal(
            format!("r(x,q) - r(y,q) = 2 j_x(y,q) - r(x,y) {tag}"),
            r(x, q) - r(y, q),
            &two * j(x, y, q) - r(x, y),
        );
        let neighbor_sum: BigRational = self
            .graph
            .incident_edges(x)
            .map(|i| self.graph.conductance(i) * j(x, q, self.graph.edges()[i].other(x)))
            .sum();
        let expected = if x == q {
            BigRational::zero()
        } else {
            BigRational::one()
        };
        report.equal(
            format!("sum over neighbors y' of x of j_x(q,y') {tag}"),
            neighbor_sum,
            expected,
        );
        let diff = r(x, q) - r(y, q);
        let rxy = r(x, y);
        let jq = j(q, x, y);
        report.equal(
            format!("(r(x,q) - r(y,q))^2 = r^2 + 4 r j + 4 j^2 - 4 r(x,q) r(y,q) {tag}"),
            &diff * &diff,
            &rxy * &rxy + &four * &rxy * &jq + &four * &jq * &jq - &four * r(x, q) * r(y, q),
        );
        report
    }

    /// Curvature-resistance matrix identities, Bapat's inverse formula, and
    /// `L + ½LRL = 0`.
    pub fn matrix_identities(&self) -> Result<VerificationReport> {
        let n = self.graph.vertex_count();
        if n < 2 {
            return Err(Error::TooFewVertices {
                required: 2,
                found: n,
            });
        }
        let half = ratio(1, 2);
        let l = &self.laplacian;
        let r = &self.resistance;
        let mu = &self.curvature;
        let ones = vec![BigRational::one(); n];
        let lam = self.mu_r_mu();
        let lr = l.matmul(r)?;
        let rlr = r.matmul(&lr)?;
        let mut report = VerificationReport::new();
        report.note("mu^T R mu", &lam);

        report.equal(
            "I + 1/2 LR = mu 1^T",
            RationalMatrix::identity(n).add(&lr.scale(&half))?,
            RationalMatrix::outer(mu, &ones),
        );
        report.equal(
            "R mu = (mu^T R mu) 1",
            r.matvec(mu)?,
            vec![lam.clone(); n],
        );
        report.equal(
            "R + 1/2 RLR = (mu^T R mu) 1 1^T",
            r.add(&rlr.scale(&half))?,
            RationalMatrix::ones(n, n).scale(&lam),
        );
        report.equal(
            "R^-1 = -1/2 L + mu mu^T / (mu^T R mu)",
            r.inverse()?,
            l.scale(&-half.clone())
                .add(&RationalMatrix::outer(mu, mu).scale(&lam.recip()))?,
        );
        report.equal(
            "L + 1/2 LRL = 0",
            l.add(&lr.matmul(l)?.scale(&half))?,
            RationalMatrix::zeros(n, n),
        );
        Ok(report)
    }

    /// Foster's identity, `Σμ = 1`, and the Cauchy-Schwarz consequence.
    /// With lengths the edge quantity is `r(e⁺,e⁻)/ℓ(e)`.
    pub fn foster_identities(&self) -> VerificationReport {
        let g = self.graph;
        let n = g.vertex_count();
        let m = g.edge_count();
        let rho: Vec<BigRational> = self
            .edge_resistances()
            .into_iter()
            .enumerate()
            .map(|(i, r)| r * g.conductance(i))
            .collect();
        let mut report = VerificationReport::new();
        report.equal(
            "Foster: sum_e r(e+,e-) = |V| - 1",
            rho.iter().sum::<BigRational>(),
            rational(n as i64 - 1),
        );
        report.equal(
            "sum_x mu_x = 1",
            self.curvature.iter().sum::<BigRational>(),
            BigRational::one(),
        );
        if m > 0 {
            let squares: BigRational = rho.iter().map(|x| x * x).sum();
            let bound = ratio(BigInt::from((n - 1) * (n - 1)), BigInt::from(m));
            let all_equal = rho.windows(2).all(|w| w[0] == w[1]);
            report.note("edge resistances all equal", all_equal);
            report.compare(
                "sum_e r(e+,e-)^2 >= (|V|-1)^2/|E|",
                squares.clone(),
                Relation::Ge,
                bound.clone(),
            );
            // Cauchy-Schwarz is tight exactly when all terms agree.
            report.note("Cauchy-Schwarz tight", squares == bound);
        }
        report
    }

    /// Symmetry, zero diagonal, positivity, and the triangle inequality.
    pub fn metric_checks(&self) -> VerificationReport {
        let n = self.graph.vertex_count();
        let r = &self.resistance;
        let mut report = VerificationReport::new();
        report.equal("R symmetric", r.clone(), r.transpose());
        report.equal(
            "diag R = 0",
            r.diagonal(),
            vec![BigRational::zero(); n],
        );
        let mut positive = true;
        let mut worst_slack: Option<BigRational> = None;
        for x in 0..n {
            for y in 0..n {
                if x != y && r[(x, y)] <= BigRational::zero() {
                    positive = false;
                }
                for z in 0..n {
                    let slack = &r[(x, z)] + &r[(z, y)] - &r[(x, y)];
                    if worst_slack.as_ref().is_none_or(|w| slack < *w) {
                        worst_slack = Some(slack);
                    }
                }
            }
        }
        report.note("off-diagonal resistances positive", positive);
        report.compare(
            "min over x,y,z of r(x,z) + r(z,y) - r(x,y) >= 0",
            worst_slack.unwrap_or_default(),
            Relation::Ge,
            BigRational::zero(),
        );
        report
    }
}

/// Identities (a)-(e) for one triple of vertices.
pub fn verify_resistance_identities(
    g: &Graph,
    x: usize,
    y: usize,
    q: usize,
) -> Result<VerificationReport> {
    for v in [x, y, q] {
        g.require_vertex(v)?;
    }
    Ok(PotentialProfile::new(g)?.resistance_identities(x, y, q))
}

/// Identities (a)-(e) for every ordered triple of vertices.
pub fn verify_all_resistance_identities(g: &Graph) -> Result<VerificationReport> {
    let profile = PotentialProfile::new(g)?;
    let n = g.vertex_count();
    let mut report = VerificationReport::new();
    for x in 0..n {
        for y in 0..n {
            for q in 0..n {
                report.extend(profile.resistance_identities(x, y, q));
            }
        }
    }
    Ok(report)
}

pub fn verify_matrix_identities(g: &Graph) -> Result<VerificationReport> {
    PotentialProfile::new(g)?.matrix_identities()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::house;

    fn elevenths(rows: [[i64; 5]; 5]) -> RationalMatrix {
        RationalMatrix::from_fn(5, 5, |i, j| ratio(rows[i][j], 11))
    }

    #[test]
    fn house_resistance_matrix() {
        let expected = elevenths([
            [0, 8, 8, 10, 13],
            [8, 0, 10, 8, 13],
            [8, 10, 0, 6, 7],
            [10, 8, 6, 0, 7],
            [13, 13, 7, 7, 0],
        ]);
        assert_eq!(resistance_matrix(&house()).unwrap(), expected);
        assert_eq!(effective_resistance(&house(), 0, 1).unwrap(), ratio(8, 11));
        assert_eq!(effective_resistance(&house(), 0, 4).unwrap(), ratio(13, 11));
        assert_eq!(effective_resistance(&house(), 3, 3).unwrap(), BigRational::zero());
    }

    #[test]
    fn house_curvature() {
        let mu = curvature_vector(&house()).unwrap();
        let expected: Vec<_> = [6, 6, 1, 1, 8].iter().map(|&k| ratio(k, 22)).collect();
        assert_eq!(mu, expected);
    }

    #[test]
    fn house_inverse_entry() {
        let inv = house()
            .laplacian()
            .delete_symmetric(&[4])
            .unwrap()
            .to_rational()
            .inverse()
            .unwrap();
        assert_eq!(inv[(0, 0)], ratio(13, 11));
    }

    #[test]
    fn k2_and_path() {
        let k2 = Graph::new(2, [(0, 1)]).unwrap();
        let r = resistance_matrix(&k2).unwrap();
        assert_eq!(r[(0, 1)], rational(1));
        let p3 = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(effective_resistance(&p3, 0, 2).unwrap(), rational(2));
        let report = verify_matrix_identities(&k2).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.info_value("mu^T R mu"), Some("1/2"));
    }

    #[test]
    fn kernel_routes_agree_on_house() {
        let g = house();
        for q in 0..5 {
            let by_inverse = potential_kernel(&g, q).unwrap();
            assert_eq!(by_inverse, potential_kernel_by_forests(&g, q).unwrap());
            assert!(by_inverse.is_symmetric());
        }
    }

    #[test]
    fn house_identity_suites() {
        let g = house();
        let all = verify_all_resistance_identities(&g).unwrap();
        assert_eq!(all.checks.len(), 5 * 125);
        assert!(all.passed(), "{all}");
        let m = verify_matrix_identities(&g).unwrap();
        assert!(m.passed(), "{m}");
        assert_eq!(m.info_value("mu^T R mu"), Some("85/121"));
        let profile = PotentialProfile::new(&g).unwrap();
        assert!(profile.foster_identities().passed());
        assert!(profile.metric_checks().passed());
    }

    #[test]
    fn degenerate_triple() {
        let report = verify_resistance_identities(&house(), 2, 2, 2).unwrap();
        assert!(report.passed());
        for c in &report.checks {
            assert_eq!(c.lhs, crate::report::Value::Scalar(BigRational::zero()));
        }
    }

    #[test]
    fn single_vertex_profile() {
        let dot = Graph::new(1, []).unwrap();
        let p = PotentialProfile::new(&dot).unwrap();
        assert_eq!(p.curvature(), &[BigRational::one()]);
        assert_eq!(p.resistance()[(0, 0)], BigRational::zero());
        assert!(matches!(p.matrix_identities(), Err(Error::TooFewVertices { .. })));
    }

    #[test]
    fn disconnected_rejected() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert!(matches!(PotentialProfile::new(&g), Err(Error::Disconnected { .. })));
        assert!(matches!(effective_resistance(&g, 0, 2), Err(Error::Disconnected { .. })));
    }
}
