//! The gamma, eta, and tau constants, the two-forest/tree identity and its
//! forest-resistance form, expected cut size, the lower and upper bounds
//! that follow from them, and the edge-length version of the identity.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::forest::{
    count_spanning_trees, count_two_forests, enumerate_forests, weighted_tree_count,
    weighted_two_forest_count, ForestCensus,
};
use crate::graph::Graph;
use crate::linalg::{rational, ratio};
use crate::potential::PotentialProfile;
use crate::report::{Relation, VerificationReport};

/// Edge limit under which reports add brute-force enumeration rows.
pub const REPORT_ENUMERATION_LIMIT: usize = 16;

/// Headline invariants of one connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantBundle {
    pub n: usize,
    pub m: usize,
    pub genus: i64,
    pub kappa: BigInt,
    pub kappa2: BigInt,
    /// `κ₂/κ`.
    pub ratio: BigRational,
    pub gamma: BigRational,
    /// Only defined for unit lengths.
    pub eta: Option<BigRational>,
    /// Only defined for unit lengths.
    pub tau: Option<BigRational>,
    /// `None` for the single-vertex graph, which has no two-forests.
    pub expected_cut: Option<BigRational>,
    /// `Σ_e r(e⁺,e⁻)`.
    pub sum_r: BigRational,
    /// `Σ_e r(e⁺,e⁻)²`.
    pub sum_r2: BigRational,
    /// Length-weighted counts, present when the graph carries lengths.
    pub weighted_kappa: Option<BigRational>,
    pub weighted_kappa2: Option<BigRational>,
}

pub fn invariant_bundle(g: &Graph) -> Result<InvariantBundle> {
    let profile = PotentialProfile::new(g)?;
    let kappa = count_spanning_trees(g)?;
    let kappa2 = count_two_forests(g)?;
    let edge_r = profile.edge_resistances();
    let (eta, tau) = if g.has_unit_lengths() {
        let (eta, tau) = eta_tau_from(&profile)?;
        (Some(eta), Some(tau))
    } else {
        (None, None)
    };
    let (weighted_kappa, weighted_kappa2) = if g.lengths().is_some() {
        (
            Some(weighted_tree_count(g)?),
            Some(weighted_two_forest_count(g)?),
        )
    } else {
        (None, None)
    };
    Ok(InvariantBundle {
        n: g.vertex_count(),
        m: g.edge_count(),
        genus: g.genus(),
        ratio: BigRational::new(kappa2.clone(), kappa.clone()),
        expected_cut: expected_cut_from(&kappa, &kappa2, g.vertex_count()),
        kappa,
        kappa2,
        gamma: gamma_at(&profile, 0),
        eta,
        tau,
        sum_r: edge_r.iter().sum(),
        sum_r2: edge_r.iter().map(|r| r * r).sum(),
        weighted_kappa,
        weighted_kappa2,
    })
}

/// `¼ Σ_e (r(e⁺,q) − r(e⁻,q))² / ℓ(e)` for one base vertex.
pub fn gamma_at(profile: &PotentialProfile<'_>, q: usize) -> BigRational {
    let g = profile.graph();
    let total: BigRational = g
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let d = profile.r(e.head, q) - profile.r(e.tail, q);
            &d * &d * g.conductance(i)
        })
        .sum();
    total / rational(4)
}

/// The gamma constant, evaluated at every base vertex; disagreement between
/// base vertices is reported as [`Error::BasePointDependence`].
pub fn gamma(g: &Graph) -> Result<BigRational> {
    let profile = PotentialProfile::new(g)?;
    let value = gamma_at(&profile, 0);
    for q in 1..g.vertex_count() {
        if gamma_at(&profile, q) != value {
            return Err(Error::BasePointDependence { q });
        }
    }
    Ok(value)
}

/// Base-point independence of gamma and its three matrix expressions:
/// diagonal of `¼RLR`, `½μᵀRμ`, and entries of `½Rμ`.
pub fn gamma_report(g: &Graph) -> Result<VerificationReport> {
    let profile = PotentialProfile::new(g)?;
    let n = g.vertex_count();
    let value = gamma_at(&profile, 0);
    let mut report = VerificationReport::new();
    report.note("gamma", &value);
    for q in 1..n {
        report.equal(
            format!("gamma(q={}) = gamma(q=1)", q + 1),
            gamma_at(&profile, q),
            value.clone(),
        );
    }
    let r = profile.resistance();
    let rlr = r.matmul(&profile.laplacian().matmul(r)?)?;
    let quarter = ratio(1, 4);
    let half = ratio(1, 2);
    report.equal(
        "diag(1/4 RLR) = gamma",
        rlr.diagonal().into_iter().map(|x| x * &quarter).collect::<Vec<_>>(),
        vec![value.clone(); n],
    );
    report.equal("1/2 mu^T R mu = gamma", profile.mu_r_mu() * &half, value.clone());
    report.equal(
        "1/2 R mu = gamma 1",
        r.matvec(profile.curvature())?
            .into_iter()
            .map(|x| x * &half)
            .collect::<Vec<_>>(),
        vec![value; n],
    );
    Ok(report)
}

fn eta_tau_from(profile: &PotentialProfile<'_>) -> Result<(BigRational, BigRational)> {
    if !profile.graph().has_unit_lengths() {
        return Err(Error::NonUnitLengths);
    }
    let eta = profile
        .edge_resistances()
        .into_iter()
        .map(|r| {
            let d = BigRational::one() - r;
            &d * &d
        })
        .sum::<BigRational>()
        / rational(12);
    let tau = &eta + gamma_at(profile, 0);
    Ok((eta, tau))
}

/// `(η, τ)` with `η = (1/12) Σ_e (1 − r(e⁺,e⁻))²` and `τ = η + γ`.
pub fn eta_tau(g: &Graph) -> Result<(BigRational, BigRational)> {
    if !g.has_unit_lengths() {
        return Err(Error::NonUnitLengths);
    }
    eta_tau_from(&PotentialProfile::new(g)?)
}

/// `τ = η + γ` against the closed expression `⅓κ₂/κ − |E|/12 + g/6`.
pub fn tau_report(g: &Graph) -> Result<VerificationReport> {
    let (eta, tau) = eta_tau(g)?;
    let gamma = gamma(g)?;
    let census_ratio = BigRational::new(count_two_forests(g)?, count_spanning_trees(g)?);
    let mut report = VerificationReport::new();
    report.note("eta", &eta);
    report.note("tau", &tau);
    report.compare("eta >= 0", eta.clone(), Relation::Ge, BigRational::zero());
    report.compare("gamma >= 0", gamma.clone(), Relation::Ge, BigRational::zero());
    report.equal("tau = eta + gamma", tau.clone(), eta + gamma);
    report.equal(
        "tau = 1/3 k2/k - |E|/12 + g/6",
        tau,
        census_ratio / rational(3) - ratio(g.edge_count() as i64, 12)
            + ratio(g.genus(), 6),
    );
    Ok(report)
}

/// `κ₂/κ = 3γ + ¼ Σ_e r(e⁺,e⁻)²`, and for every base vertex `q` the
/// forest-resistance form
/// `κ₂/κ = Σ_v r(v,q) + Σ_e j_q(e⁺,e⁻)² − Σ_e r(e⁺,q) r(e⁻,q)`.
pub fn main_identity(g: &Graph) -> Result<VerificationReport> {
    if !g.has_unit_lengths() {
        return Err(Error::NonUnitLengths);
    }
    require_two_vertices(g)?;
    let census = ForestCensus::new(g)?;
    let profile = PotentialProfile::new(g)?;
    let lhs = census.ratio();
    let gamma = gamma_at(&profile, 0);
    let sum_r2: BigRational = profile.edge_resistances().iter().map(|r| r * r).sum();

    let mut report = VerificationReport::new();
    report.note("k2/k", &lhs);
    report.note("gamma", &gamma);
    report.note("sum_e r^2", &sum_r2);
    report.equal(
        "k2/k = 3 gamma + 1/4 sum_e r(e+,e-)^2",
        lhs.clone(),
        rational(3) * &gamma + sum_r2 / rational(4),
    );
    for q in 0..g.vertex_count() {
        let sum_rq: BigRational = (0..g.vertex_count()).map(|v| profile.r(v, q).clone()).sum();
        let (j2, rr) = g.edges().iter().fold(
            (BigRational::zero(), BigRational::zero()),
            |(j2, rr), e| {
                let j = profile.j(q, e.head, e.tail);
                (j2 + j * j, rr + profile.r(e.head, q) * profile.r(e.tail, q))
            },
        );
        report.equal(
            format!(
                "k2/k = sum_v r(v,q) + sum_e j_q(e+,e-)^2 - sum_e r(e+,q) r(e-,q) (q={})",
                q + 1
            ),
            lhs.clone(),
            sum_rq + j2 - rr,
        );
    }
    Ok(report)
}

fn require_two_vertices(g: &Graph) -> Result<()> {
    g.require_connected()?;
    if g.vertex_count() < 2 {
        return Err(Error::TooFewVertices {
            required: 2,
            found: g.vertex_count(),
        });
    }
    Ok(())
}

fn expected_cut_from(kappa: &BigInt, kappa2: &BigInt, n: usize) -> Option<BigRational> {
    if kappa2.is_zero() {
        None
    } else {
        Some(BigRational::new(kappa * BigInt::from(n - 1), kappa2.clone()))
    }
}

/// `𝔼|∂F| = κ(|V| − 1)/κ₂` for a uniformly random two-forest. Lengths are
/// ignored: the distribution is over the combinatorial two-forests.
pub fn expected_cut_size(g: &Graph) -> Result<BigRational> {
    let kappa = count_spanning_trees(g)?;
    let kappa2 = count_two_forests(g)?;
    expected_cut_from(&kappa, &kappa2, g.vertex_count()).ok_or(Error::NoTwoForests)
}

/// `Σ_F |∂F| / κ₂` by enumerating every two-forest.
pub fn expected_cut_size_by_enumeration(g: &Graph) -> Result<BigRational> {
    g.require_connected()?;
    let forests = enumerate_forests(g, 2)?;
    if forests.is_empty() {
        return Err(Error::NoTwoForests);
    }
    let total: usize = forests.iter().map(|f| f.cut_size(g)).sum();
    Ok(ratio(total as i64, forests.len() as i64))
}

/// Which lower bound on `κ₂/κ` is larger.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrongerBound {
    Resistance,
    Mason,
    Tie,
}

impl std::fmt::Display for StrongerBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            StrongerBound::Resistance => "resistance",
            StrongerBound::Mason => "mason",
            StrongerBound::Tie => "tie",
        })
    }
}

/// `(n−1)²/4m`.
pub fn resistance_lower_bound(n: usize, m: usize) -> BigRational {
    ratio(((n - 1) * (n - 1)) as i64, (4 * m) as i64)
}

/// `r/(m−r+1)` with rank `r = n−1`.
pub fn mason_lower_bound(n: usize, m: usize) -> BigRational {
    let rank = n as i64 - 1;
    ratio(rank, m as i64 - rank + 1)
}

pub fn stronger_bound(n: usize, m: usize) -> StrongerBound {
    let a = resistance_lower_bound(n, m);
    let b = mason_lower_bound(n, m);
    match a.cmp(&b) {
        std::cmp::Ordering::Greater => StrongerBound::Resistance,
        std::cmp::Ordering::Less => StrongerBound::Mason,
        std::cmp::Ordering::Equal => StrongerBound::Tie,
    }
}

/// Lower bounds on `κ₂/κ` (the resistance chain and the matroid bound) and
/// the upper bound on the expected cut size. Lengths are ignored.
pub fn bounds_report(g: &Graph) -> Result<VerificationReport> {
    let g = &g.unweighted();
    require_two_vertices(g)?;
    let n = g.vertex_count();
    let m = g.edge_count();
    let census = ForestCensus::new(g)?;
    let profile = PotentialProfile::new(g)?;
    let ratio_k = census.ratio();
    let quarter_r2: BigRational =
        profile.edge_resistances().iter().map(|r| r * r).sum::<BigRational>() / rational(4);
    let resistance = resistance_lower_bound(n, m);
    let mason = mason_lower_bound(n, m);
    let cut = expected_cut_from(census.kappa(), census.kappa2(), n).expect("n >= 2");
    let avg_deg = ratio(2 * m as i64, n as i64);
    let cut_bound = rational(2) * avg_deg * (BigRational::one() + ratio(1, n as i64 - 1));

    let mut report = VerificationReport::new();
    report.note("k2/k", &ratio_k);
    report.note("resistance bound", &resistance);
    report.note("mason bound", &mason);
    report.note("stronger", stronger_bound(n, m));
    report.note("expected cut", &cut);
    report.note("cut bound", &cut_bound);
    report.compare(
        "k2/k >= (|V|-1)^2/(4|E|)",
        ratio_k.clone(),
        Relation::Ge,
        resistance.clone(),
    );
    report.compare(
        "k2/k >= 1/4 sum_e r^2",
        ratio_k.clone(),
        Relation::Ge,
        quarter_r2.clone(),
    );
    report.compare(
        "1/4 sum_e r^2 >= (|V|-1)^2/(4|E|)",
        quarter_r2,
        Relation::Ge,
        resistance,
    );
    report.compare("k2/k >= r/(m-r+1)", ratio_k, Relation::Ge, mason);
    report.compare(
        "E|dF| <= 2 avg.deg (1 + 1/(|V|-1))",
        cut,
        Relation::Le,
        cut_bound,
    );
    Ok(report)
}

/// `κ₂(G;ℓ)/κ(G;ℓ) = ¾ Σ_e (r(e⁺,q) − r(e⁻,q))²/ℓ(e) + ¼ Σ_e r(e⁺,e⁻)²/ℓ(e)`
/// for every base vertex, with resistances taken in the length-weighted
/// network. Small graphs also get enumeration cross-checks of the weighted
/// counts.
pub fn weighted_identity(g: &Graph) -> Result<VerificationReport> {
    let profile = PotentialProfile::new(g)?;
    let kappa_w = weighted_tree_count(g)?;
    let kappa2_w = weighted_two_forest_count(g)?;
    let lhs = &kappa2_w / &kappa_w;
    let quarter_r2: BigRational = profile
        .edge_resistances()
        .into_iter()
        .enumerate()
        .map(|(i, r)| &r * &r * g.conductance(i))
        .sum::<BigRational>()
        / rational(4);

    let mut report = VerificationReport::new();
    report.note("k(G;l)", &kappa_w);
    report.note("k2(G;l)", &kappa2_w);
    for q in 0..g.vertex_count() {
        report.equal(
            format!(
                "k2(G;l)/k(G;l) = 3/4 sum (r(e+,q)-r(e-,q))^2/l + 1/4 sum r(e+,e-)^2/l (q={})",
                q + 1
            ),
            lhs.clone(),
            rational(3) * gamma_at(&profile, q) + &quarter_r2,
        );
    }
    if g.vertex_count() >= 2 {
        report.equal(
            "1/2 mu^T R mu = 1/4 sum (r(e+,q)-r(e-,q))^2/l",
            profile.mu_r_mu() / rational(2),
            gamma_at(&profile, 0),
        );
    }
    if g.edge_count() <= REPORT_ENUMERATION_LIMIT {
        let weigh = |r: usize| -> Result<BigRational> {
            Ok(enumerate_forests(g, r)?
                .iter()
                .map(|f| f.complement_weight(g))
                .sum())
        };
        report.equal("k(G;l) by enumeration", kappa_w.clone(), weigh(1)?);
        report.equal("k2(G;l) by enumeration", kappa2_w.clone(), weigh(2)?);
    }
    Ok(report)
}
