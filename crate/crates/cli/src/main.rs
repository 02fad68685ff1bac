mod doc;

use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use twoforest::families::{self, Family, FamilySpec};
use twoforest::forest::{
    count_rooted_forests, count_spanning_trees, count_two_forests, enumerate_forests,
    enumerate_rooted_forests, three_forest_count, verify_forest_identities,
};
use twoforest::invariants::{
    bounds_report, expected_cut_size, gamma_report, invariant_bundle, main_identity,
    resistance_lower_bound, tau_report, weighted_identity,
};
use twoforest::potential::{verify_all_resistance_identities, verify_matrix_identities, PotentialProfile};
use twoforest::sampling::{
    estimate_expected_cut, exact_pair_harmonic_mean, verify_tree_forest_correspondence,
};
use twoforest::{Error, Graph, VerificationReport};

use doc::{join, Document, Format};

/// Edge limit for the tree/forest correspondence suite.
const CORRESPONDENCE_EDGE_LIMIT: usize = 16;

#[derive(Debug, Parser)]
#[command(
    name = "twoforest",
    version,
    about = "Exact spanning-tree, two-forest and resistance invariants of multigraphs",
    after_help = "Graph files: a header line `n m`, then m lines `u v [length]` with \
                  1-based vertices and optional rational lengths like 3/2. Lines \
                  starting with # are ignored.\n\nExit codes: 0 ok, 1 a check failed, \
                  2 usage error, 3 input error."
)]
struct Cli {
    #[arg(long, value_enum, default_value = "table", global = true)]
    format: Format,

    /// Add a decimal approximation next to exact values (table format only).
    #[arg(long, global = true)]
    decimal: bool,

    /// Seed for `sample`.
    #[arg(long, default_value_t = 1, global = true)]
    seed: u64,

    /// Trial count for `sample`.
    #[arg(long, default_value_t = 100_000, global = true)]
    trials: u64,

    /// Suite for `verify`; repeatable. Default: every applicable suite.
    #[arg(long = "suite", value_enum, global = true)]
    suites: Vec<Suite>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tree and two-forest counts, resistances, curvature and the gamma/eta/tau constants.
    Invariants { path: PathBuf },
    /// Check identities exactly and print both sides of each.
    Verify { path: PathBuf },
    /// List spanning forests with a given number of components.
    Enumerate {
        path: PathBuf,
        /// Number of components.
        #[arg(short = 'r', long, default_value_t = 2)]
        components: usize,
        /// Only forests with one of these (1-based) vertices per component.
        #[arg(long, value_delimiter = ',')]
        roots: Vec<usize>,
    },
    /// Monte Carlo estimate of the expected cut size of a uniform two-forest.
    Sample { path: PathBuf },
    /// Computed and closed-form counts for a named family.
    Family {
        family: FamilyTag,
        /// A size `n` or an inclusive range `a..b`.
        #[arg(value_parser = parse_sizes, default_value = "1..1")]
        sizes: RangeInclusive<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyTag {
    Complete,
    Cycle,
    Wheel,
    Torus,
    House,
}

impl From<FamilyTag> for Family {
    fn from(tag: FamilyTag) -> Self {
        match tag {
            FamilyTag::Complete => Family::Complete,
            FamilyTag::Cycle => Family::Cycle,
            FamilyTag::Wheel => Family::Wheel,
            FamilyTag::Torus => Family::Torus,
            FamilyTag::House => Family::House,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
enum Suite {
    /// Tree counts at every base vertex, the two-forest formula, three-forest identity.
    Forests,
    /// Potential-kernel identities for every triple of vertices.
    Resistance,
    /// Foster's identity and the curvature sum.
    Foster,
    /// Curvature-resistance matrix identities.
    Matrix,
    /// Gamma at every base vertex and its matrix forms.
    Gamma,
    /// tau = eta + gamma and its closed expression (unit lengths).
    Tau,
    /// The two-forest/tree identity and its forest-resistance form (unit lengths).
    Main,
    /// Lower bounds on k2/k and the upper bound on the expected cut.
    Bounds,
    /// The length-weighted identity.
    Weighted,
    /// Tree-edge/forest-edge correspondence and the harmonic-mean identity.
    Correspondence,
}

impl Suite {
    fn name(self) -> String {
        self.to_possible_value().unwrap().get_name().to_string()
    }
}

enum Failure {
    Usage(String),
    Input(String),
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidFamily { .. } => Failure::Usage(e.to_string()),
            e => Failure::Input(e.to_string()),
        }
    }
}

fn parse_sizes(s: &str) -> Result<RangeInclusive<usize>, String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b) = (parse(a)?, parse(b)?);
            if a > b {
                return Err(format!("empty range {a}..{b}"));
            }
            Ok(a..=b)
        }
        None => parse(s).map(|n| n..=n),
    }
}

fn load(path: &Path) -> Result<Graph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let g: Graph = text
        .parse()
        .map_err(|e: Error| Failure::Input(format!("{}: {e}", path.display())))?;
    g.require_connected()
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(g)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err((out, Failure::Check)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err((_, Failure::Usage(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err((_, Failure::Input(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Result<String, (String, Failure)> {
    let bare = |f: Failure| (String::new(), f);
    match &cli.command {
        Command::Invariants { path } => {
            let g = load(path).map_err(bare)?;
            let doc = invariants(&g).map_err(bare)?;
            Ok(doc.render(cli.format, cli.decimal))
        }
        Command::Verify { path } => {
            let g = load(path).map_err(bare)?;
            verify(&g, &cli.suites, cli.format)
        }
        Command::Enumerate {
            path,
            components,
            roots,
        } => {
            let g = load(path).map_err(bare)?;
            let doc = enumerate(&g, *components, roots).map_err(bare)?;
            Ok(doc.render(cli.format, cli.decimal))
        }
        Command::Sample { path } => {
            let g = load(path).map_err(bare)?;
            let doc = sample(&g, cli.trials, cli.seed).map_err(bare)?;
            Ok(doc.render(cli.format, cli.decimal))
        }
        Command::Family { family, sizes } => {
            let family: Family = (*family).into();
            let (rows, all_match) = family_rows(family, sizes.clone()).map_err(bare)?;
            let out = render_family(family, &rows, cli.format);
            if all_match {
                Ok(out)
            } else {
                Err((out, Failure::Check))
            }
        }
    }
}

fn invariants(g: &Graph) -> Result<Document, Failure> {
    let b = invariant_bundle(g)?;
    let profile = PotentialProfile::new(g)?;
    let mut doc = Document::new();
    doc.push("n", b.n);
    doc.push("m", b.m);
    doc.push("genus", b.genus);
    doc.push("kappa", &b.kappa);
    doc.push("kappa2", &b.kappa2);
    doc.push("ratio", &b.ratio);
    if let (Some(k), Some(k2)) = (&b.weighted_kappa, &b.weighted_kappa2) {
        doc.push("weighted_kappa", k);
        doc.push("weighted_kappa2", k2);
        doc.push("weighted_ratio", k2 / k);
    }
    doc.push("gamma", &b.gamma);
    if let (Some(eta), Some(tau)) = (&b.eta, &b.tau) {
        doc.push("eta", eta);
        doc.push("tau", tau);
    }
    if let Some(cut) = &b.expected_cut {
        doc.push("expected_cut", cut);
    }
    doc.push("sum_r", &b.sum_r);
    doc.push("sum_r2", &b.sum_r2);
    doc.push("mu", join(profile.curvature()));
    for (i, row) in profile.resistance().iter_rows().enumerate() {
        doc.push(format!("r.{}", i + 1), join(row));
    }
    Ok(doc)
}

fn run_suite(g: &Graph, suite: Suite) -> twoforest::Result<VerificationReport> {
    match suite {
        Suite::Forests => verify_forest_identities(g),
        Suite::Resistance => verify_all_resistance_identities(g),
        Suite::Foster => Ok(PotentialProfile::new(g)?.foster_identities()),
        Suite::Matrix => verify_matrix_identities(g),
        Suite::Gamma => gamma_report(g),
        Suite::Tau => tau_report(g),
        Suite::Main => main_identity(g),
        Suite::Bounds => bounds_report(g),
        Suite::Weighted => weighted_identity(g),
        Suite::Correspondence => {
            if g.edge_count() > CORRESPONDENCE_EDGE_LIMIT {
                return Err(Error::TooManyEdges {
                    edges: g.edge_count(),
                    limit: CORRESPONDENCE_EDGE_LIMIT,
                });
            }
            let mut report = verify_tree_forest_correspondence(g)?;
            report.equal(
                "1/E(T,e)[1/|dF|] = k(|V|-1)/k2",
                exact_pair_harmonic_mean(g)?,
                expected_cut_size(g)?,
            );
            Ok(report)
        }
    }
}

fn is_inapplicable(e: &Error) -> bool {
    matches!(
        e,
        Error::NonUnitLengths | Error::TooFewVertices { .. } | Error::TooManyEdges { .. } | Error::NoTwoForests
    )
}

fn verify(g: &Graph, requested: &[Suite], format: Format) -> Result<String, (String, Failure)> {
    let explicit = !requested.is_empty();
    let mut suites: Vec<Suite> = if explicit {
        requested.to_vec()
    } else {
        Suite::value_variants().to_vec()
    };
    suites.sort();
    suites.dedup();

    let mut out = String::new();
    let (mut total, mut failed) = (0usize, 0usize);
    for suite in suites {
        let name = suite.name();
        let report = match run_suite(g, suite) {
            Ok(r) => r,
            Err(e) if !explicit && is_inapplicable(&e) => {
                match format {
                    Format::Table => out.push_str(&format!("== {name} ==\nskipped: {e}\n\n")),
                    Format::Machine => out.push_str(&format!("{name}.skipped={e}\n")),
                }
                continue;
            }
            Err(e) => return Err((out, Failure::Input(format!("suite {name}: {e}")))),
        };
        total += report.checks.len();
        failed += report.failures().count();
        match format {
            Format::Table => {
                out.push_str(&format!("== {name} ==\n"));
                for (k, v) in &report.info {
                    out.push_str(&format!("{k}: {v}\n"));
                }
                out.push_str(&report.to_string());
                out.push('\n');
            }
            Format::Machine => {
                for (k, v) in &report.info {
                    out.push_str(&format!("{name}.info.{}={v}\n", k.replace(' ', "_")));
                }
                for (i, c) in report.checks.iter().enumerate() {
                    let key = format!("{name}.{}", i + 1);
                    out.push_str(&format!("{key}.name={}\n", c.name));
                    out.push_str(&format!("{key}.status={}\n", if c.holds { "pass" } else { "fail" }));
                    out.push_str(&format!("{key}.lhs={}\n", c.lhs));
                    out.push_str(&format!("{key}.relation={}\n", c.relation.symbol()));
                    out.push_str(&format!("{key}.rhs={}\n", c.rhs));
                }
            }
        }
    }
    let status = if failed == 0 { "pass" } else { "fail" };
    match format {
        Format::Table => out.push_str(&format!("{total} checks, {failed} failed: {status}\n")),
        Format::Machine => out.push_str(&format!("checks={total}\nfailed={failed}\nstatus={status}\n")),
    }
    if failed == 0 {
        Ok(out)
    } else {
        Err((out, Failure::Check))
    }
}

fn enumerate(g: &Graph, components: usize, roots: &[usize]) -> Result<Document, Failure> {
    let mut doc = Document::new();
    let forests = if roots.is_empty() {
        if components == 0 || components > g.vertex_count() {
            return Err(Failure::Usage(format!(
                "the number of components must be between 1 and {}",
                g.vertex_count()
            )));
        }
        enumerate_forests(g, components)?
    } else {
        if roots.iter().any(|&r| r == 0) {
            return Err(Failure::Usage("roots are 1-based vertex numbers".into()));
        }
        let zero_based: Vec<usize> = roots.iter().map(|r| r - 1).collect();
        let forests = enumerate_rooted_forests(g, &zero_based)?;
        doc.push("roots", roots.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" "));
        doc.push("count_determinant", count_rooted_forests(g, &zero_based)?);
        if let [x, y, q] = zero_based[..] {
            doc.push("count_three_forest", three_forest_count(g, x, y, q)?);
        }
        forests
    };
    let r = forests.first().map_or(components, |f| f.component_count());
    doc.push("components", r);
    doc.push("count", forests.len());
    for (i, f) in forests.iter().enumerate() {
        let edges: Vec<String> = f.edges().iter().map(|e| (e + 1).to_string()).collect();
        let mut line = edges.join(" ");
        if r == 2 {
            line.push_str(&format!(" | cut {}", f.cut_size(g)));
        }
        doc.push(format!("forest.{}", i + 1), line);
    }
    if r == 2 {
        let mut hist = std::collections::BTreeMap::<usize, usize>::new();
        for f in &forests {
            *hist.entry(f.cut_size(g)).or_default() += 1;
        }
        for (k, v) in hist {
            doc.push(format!("cut.{k}"), v);
        }
    }
    Ok(doc)
}

fn sample(g: &Graph, trials: u64, seed: u64) -> Result<Document, Failure> {
    let est = estimate_expected_cut(g, trials, seed)?;
    let n = g.vertex_count() as i64;
    let m = g.edge_count() as i64;
    let bound = BigRational::from_integer(BigInt::from(4 * m))
        / BigRational::from_integer(BigInt::from(n))
        * (BigRational::one() + BigRational::new(BigInt::one(), BigInt::from(n - 1)));
    let mut doc = Document::new();
    doc.push("trials", est.trials);
    doc.push("seed", est.seed);
    doc.push("estimate", est.estimate);
    doc.push("std_error", est.std_error);
    doc.push("exact", expected_cut_size(g)?);
    doc.push("upper_bound", bound);
    for (k, v) in &est.histogram {
        doc.push(format!("sampled_cut.{k}"), *v);
    }
    Ok(doc)
}

const FAMILY_COLUMNS: [&str; 8] = [
    "n",
    "kappa",
    "kappa_formula",
    "kappa2",
    "kappa2_formula",
    "match",
    "bound",
    "ratio",
];

/// One row per size; `-` marks a column with no value (wheels below the
/// generator's range have no graph, tori have no closed form).
fn family_rows(family: Family, sizes: RangeInclusive<usize>) -> Result<(Vec<[String; 8]>, bool), Failure> {
    let sizes = if family == Family::House { 1..=1 } else { sizes };
    let mut rows = Vec::new();
    let mut all_match = true;
    let text = |x: Option<&BigInt>| x.map_or_else(|| "-".to_string(), |v| v.to_string());
    for n in sizes {
        let spec = FamilySpec { family, n };
        let graph = match families::build(spec) {
            Ok(g) => Some(g),
            Err(Error::InvalidFamily { .. }) if family == Family::Wheel && n >= 1 => None,
            Err(e) => return Err(e.into()),
        };
        let formula = match families::closed_form(spec) {
            Ok(pair) => Some(pair),
            Err(Error::NoClosedForm(_)) => None,
            Err(e) => return Err(e.into()),
        };
        let computed = match &graph {
            Some(g) => Some((count_spanning_trees(g)?, count_two_forests(g)?)),
            None => None,
        };
        let matched = match (&computed, &formula) {
            (Some(c), Some(f)) => {
                all_match &= c == f;
                if c == f { "yes" } else { "no" }
            }
            _ => "-",
        };
        let bound = match &graph {
            Some(g) if g.vertex_count() >= 2 => {
                resistance_lower_bound(g.vertex_count(), g.edge_count()).to_string()
            }
            _ => "-".to_string(),
        };
        let (kappa, kappa2) = computed.clone().or(formula.clone()).expect("computed or closed form");
        let ratio = if kappa.is_zero() {
            "-".to_string()
        } else {
            BigRational::new(kappa2, kappa).to_string()
        };
        rows.push([
            if family == Family::House { "-".to_string() } else { n.to_string() },
            text(computed.as_ref().map(|c| &c.0)),
            text(formula.as_ref().map(|f| &f.0)),
            text(computed.as_ref().map(|c| &c.1)),
            text(formula.as_ref().map(|f| &f.1)),
            matched.to_string(),
            bound,
            ratio,
        ]);
    }
    Ok((rows, all_match))
}

fn render_family(family: Family, rows: &[[String; 8]], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Machine => {
            out.push_str(&format!("family={}\n", family.tag()));
            for row in rows {
                let key = if family == Family::House { "house" } else { &row[0] };
                for (col, v) in FAMILY_COLUMNS.iter().zip(row).skip(1) {
                    out.push_str(&format!("{key}.{col}={v}\n"));
                }
            }
        }
        Format::Table => {
            let mut widths = FAMILY_COLUMNS.map(str::len);
            for row in rows {
                for (w, v) in widths.iter_mut().zip(row) {
                    *w = (*w).max(v.len());
                }
            }
            let line = |cells: &mut dyn Iterator<Item = &str>| {
                let padded: Vec<String> = cells
                    .zip(widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect();
                padded.join("  ") + "\n"
            };
            out.push_str(&format!("{}\n", family.tag()));
            out.push_str(&line(&mut FAMILY_COLUMNS.iter().copied()));
            for row in rows {
                out.push_str(&line(&mut row.iter().map(String::as_str)));
            }
        }
    }
    out
}
