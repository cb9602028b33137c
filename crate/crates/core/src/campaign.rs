//! Verification campaigns behind the CLI: reproducing the three rank-3
//! cluster tables, desk-scale log-concavity/unimodality sweeps over cluster
//! monomials, the non-closure counterexample for products, small-rank
//! sweeps, and evidence scans for higher-rank seeds.
//!
//! Campaign output is a list of [`ReportEntry`] records with sortable keys.
//! For a fixed configuration the serialized report is byte-identical across
//! runs and worker counts; wall-clock timing is kept out of the serialized
//! records for exactly that reason.

use num::bigint::BigInt;
use rayon::prelude::*;
use std::fmt;
use std::io;
use std::time::{Duration, Instant};

use crate::cluster::{ClusterError, ExchangeGraph, ExchangeMatrix, Seed};
use crate::laurent::{LaurentError, LaurentPolynomial};
use crate::parse::{parse_laurent, ParseError};
use crate::seqprops::{self, CheckReport};

#[derive(Debug)]
pub enum CampaignError {
    Cluster(ClusterError),
    Laurent(LaurentError),
    Parse(ParseError),
    Seq(crate::seqprops::SeqError),
    Config(String),
}

impl fmt::Display for CampaignError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CampaignError::Cluster(e) => write!(f, "{e}"),
            CampaignError::Laurent(e) => write!(f, "{e}"),
            CampaignError::Parse(e) => write!(f, "{e}"),
            CampaignError::Seq(e) => write!(f, "{e}"),
            CampaignError::Config(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CampaignError {}

impl From<ClusterError> for CampaignError {
    fn from(e: ClusterError) -> Self {
        CampaignError::Cluster(e)
    }
}

impl From<LaurentError> for CampaignError {
    fn from(e: LaurentError) -> Self {
        CampaignError::Laurent(e)
    }
}

impl From<ParseError> for CampaignError {
    fn from(e: ParseError) -> Self {
        CampaignError::Parse(e)
    }
}

impl From<crate::seqprops::SeqError> for CampaignError {
    fn from(e: crate::seqprops::SeqError) -> Self {
        CampaignError::Seq(e)
    }
}

/// The three reduced rank-3 orientations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseSelector {
    /// Arrows 1 -> 2 <- 3.
    Inward,
    /// Path 1 -> 2 -> 3.
    Straightforward,
    /// Cycle 1 -> 2 -> 3 -> 1.
    Cyclic,
}

impl CaseSelector {
    pub const ALL: [CaseSelector; 3] = [
        CaseSelector::Inward,
        CaseSelector::Straightforward,
        CaseSelector::Cyclic,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CaseSelector::Inward => "inward",
            CaseSelector::Straightforward => "straightforward",
            CaseSelector::Cyclic => "cyclic",
        }
    }

    pub fn from_name(name: &str) -> Option<CaseSelector> {
        match name.to_ascii_lowercase().as_str() {
            "inward" => Some(CaseSelector::Inward),
            "straightforward" => Some(CaseSelector::Straightforward),
            "cyclic" => Some(CaseSelector::Cyclic),
            _ => None,
        }
    }

    pub fn matrix(&self) -> ExchangeMatrix {
        let rows: [[i64; 3]; 3] = match self {
            CaseSelector::Inward => [[0, 1, 0], [-1, 0, -1], [0, 1, 0]],
            CaseSelector::Straightforward => [[0, 1, 0], [-1, 0, 1], [0, -1, 0]],
            CaseSelector::Cyclic => [[0, 1, -1], [-1, 0, 1], [1, -1, 0]],
        };
        ExchangeMatrix::from_rows(&rows.map(|r| r.to_vec())).expect("fixed matrices are valid")
    }

    pub fn initial_seed(&self) -> Seed {
        Seed::initial(self.matrix())
    }

    /// The fourteen unlabeled clusters of this case, three entries each.
    pub fn table(&self) -> &'static [[&'static str; 3]; 14] {
        match self {
            CaseSelector::Inward => &TABLE_INWARD,
            CaseSelector::Straightforward => &TABLE_STRAIGHTFORWARD,
            CaseSelector::Cyclic => &TABLE_CYCLIC,
        }
    }
}

static TABLE_INWARD: [[&str; 3]; 14] = [
    ["x1", "x2", "x3"],
    ["(x1*x3+x2+1)/(x1*x2)", "(x1*x3+1)/x2", "(x1*x3+x2+1)/(x2*x3)"],
    ["(x2+1)/x3", "(x1*x3+(x2+1)^2)/(x1*x2*x3)", "(x2+1)/x1"],
    ["x1", "(x1*x3+1)/x2", "x3"],
    ["(x1*x3+x2+1)/(x1*x2)", "(x1*x3+(x2+1)^2)/(x1*x2*x3)", "(x1*x3+x2+1)/(x2*x3)"],
    ["(x2+1)/x3", "x2", "(x2+1)/x1"],
    ["x3", "(x1*x3+1)/x2", "(x1*x3+x2+1)/(x1*x2)"],
    ["(x1*x3+x2+1)/(x2*x3)", "(x1*x3+(x2+1)^2)/(x1*x2*x3)", "(x2+1)/x3"],
    ["(x2+1)/x1", "x2", "x3"],
    ["x1", "(x1*x3+1)/x2", "(x1*x3+x2+1)/(x2*x3)"],
    ["(x1*x3+x2+1)/(x1*x2)", "(x1*x3+(x2+1)^2)/(x1*x2*x3)", "(x2+1)/x1"],
    ["(x2+1)/x3", "x2", "x1"],
    ["(x2+1)/x1", "(x1*x3+x2+1)/(x1*x2)", "x3"],
    ["(x2+1)/x3", "(x1*x3+x2+1)/(x2*x3)", "x1"],
];

static TABLE_STRAIGHTFORWARD: [[&str; 3]; 14] = [
    ["x1", "x2", "x3"],
    ["(1+x2)/x1", "x2", "x3"],
    ["x1", "(x1+x3)/x2", "x3"],
    ["x1", "x2", "(1+x2)/x3"],
    ["(1+x2)/x1", "(x1+x3+x2*x3)/(x1*x2)", "x3"],
    ["(1+x2)/x1", "x2", "(1+x2)/x3"],
    ["(x1+x3+x2*x3)/(x1*x2)", "(x1+x3)/x2", "x3"],
    ["x1", "(x1+x3)/x2", "(x1+x3+x1*x2)/(x2*x3)"],
    ["x1", "(x1+x3+x1*x2)/(x2*x3)", "(1+x2)/x3"],
    ["(1+x2)/x1", "(x1+x3+x2*x3)/(x1*x2)", "((1+x2)*(x1+x3))/(x1*x2*x3)"],
    ["(1+x2)/x1", "((1+x2)*(x1+x3))/(x1*x2*x3)", "(1+x2)/x3"],
    ["(x1+x3+x2*x3)/(x1*x2)", "(x1+x3)/x2", "((1+x2)*(x1+x3))/(x1*x2*x3)"],
    ["((1+x2)*(x1+x3))/(x1*x2*x3)", "(x1+x3)/x2", "(x1+x3+x1*x2)/(x2*x3)"],
    ["((1+x2)*(x1+x3))/(x1*x2*x3)", "(x1+x3+x1*x2)/(x2*x3)", "(1+x2)/x3"],
];

static TABLE_CYCLIC: [[&str; 3]; 14] = [
    ["x1", "x2", "x3"],
    ["(x2+x3)/x1", "x2", "x3"],
    ["x1", "(x1+x3)/x2", "x3"],
    ["x1", "x2", "(x1+x2)/x3"],
    ["(x2+x3)/x1", "(x1+x2+x3)/(x1*x2)", "x3"],
    ["(x1+x3)/x2", "(x1+x2+x3)/(x1*x2)", "x3"],
    ["(x1+x3)/x2", "(x1+x2+x3)/(x1*x2)", "(x1+x2+x3)/(x2*x3)"],
    ["(x1+x3)/x2", "x1", "(x1+x2+x3)/(x2*x3)"],
    ["(x1+x2)/x3", "x1", "(x1+x2+x3)/(x2*x3)"],
    ["(x1+x2)/x3", "(x1+x2+x3)/(x1*x3)", "(x1+x2+x3)/(x2*x3)"],
    ["(x1+x2)/x3", "(x1+x2+x3)/(x1*x3)", "x2"],
    ["(x2+x3)/x1", "(x1+x2+x3)/(x1*x3)", "x2"],
    ["(x2+x3)/x1", "(x1+x2+x3)/(x1*x3)", "(x1+x2+x3)/(x1*x2)"],
    ["(x1+x2+x3)/(x1*x2)", "(x1+x2+x3)/(x1*x3)", "(x1+x2+x3)/(x2*x3)"],
];

/// The two rank-2 Laurent polynomials whose product breaks log-concavity.
pub const COUNTEREXAMPLE_F: &str =
    "(2 + 3*x1 + x1^2 + 3*x2 + 4*x1*x2 + 3*x1^2*x2 + 4*x1*x2^2)/(x1*x2)";
pub const COUNTEREXAMPLE_G: &str =
    "(5 + 5*x1 + x1^2 + 4*x2 + 4*x1*x2 + x1^2*x2 + x1^2*x2^2)/(x1*x2)";

/// Knobs shared by the sweep campaigns.
#[derive(Debug, Clone)]
pub struct CampaignConfig {
    /// Per-variable exponent bound for cluster monomials.
    pub max_exponent: u32,
    /// Enumeration cap on exchange-graph nodes.
    pub node_limit: usize,
    /// Rayon worker count; 0 uses the global default pool.
    pub workers: usize,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            max_exponent: 4,
            node_limit: 10_000,
            workers: 0,
        }
    }
}

/// One check record: a sortable key, whether the campaign's expectation for
/// this step was met, and the serialized detail (usually a
/// [`CheckReport`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportEntry {
    pub key: String,
    pub pass: bool,
    pub detail: String,
}

impl ReportEntry {
    fn check(key: String, report: &CheckReport) -> ReportEntry {
        ReportEntry {
            key,
            pass: report.is_pass(),
            detail: report.to_string(),
        }
    }
}

/// Deterministic campaign outcome: notes, one record per check, and a
/// summary. `elapsed` is informational and never serialized.
#[derive(Debug, Clone)]
pub struct CampaignReport {
    pub notes: Vec<String>,
    pub entries: Vec<ReportEntry>,
    pub elapsed: Duration,
}

impl CampaignReport {
    fn new(notes: Vec<String>, entries: Vec<ReportEntry>, started: Instant) -> Self {
        CampaignReport {
            notes,
            entries,
            elapsed: started.elapsed(),
        }
    }

    pub fn passed(&self) -> usize {
        self.entries.iter().filter(|e| e.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.entries.len() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    /// Structured text: `# note` lines, one `pass|FAIL key detail` line per
    /// record, and a trailing summary. Byte-identical for identical
    /// configurations, independent of worker count.
    pub fn write_text(&self, w: &mut impl io::Write) -> io::Result<()> {
        for note in &self.notes {
            writeln!(w, "# {note}")?;
        }
        for e in &self.entries {
            let status = if e.pass { "pass" } else { "FAIL" };
            writeln!(w, "{status} {} {}", e.key, e.detail)?;
        }
        writeln!(
            w,
            "summary total={} pass={} fail={}",
            self.entries.len(),
            self.passed(),
            self.failed()
        )
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_text(&mut buf).expect("in-memory write");
        String::from_utf8(buf).expect("report text is utf-8")
    }
}

fn run_pool<T: Send>(
    workers: usize,
    job: impl FnOnce() -> T + Send,
) -> Result<T, CampaignError> {
    if workers == 0 {
        return Ok(job());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CampaignError::Config(format!("thread pool: {e}")))?;
    Ok(pool.install(job))
}

/// Sorted multiset of cluster entries, the unlabeled-cluster identity the
/// tables use.
fn cluster_multiset(seed: &Seed) -> Vec<LaurentPolynomial> {
    let mut entries: Vec<LaurentPolynomial> = seed.cluster().to_vec();
    entries.sort();
    entries
}

/// Reproduces the fourteen-row cluster table of a reduced case: enumerates
/// the exchange graph, matches every table row to a node as an unordered
/// multiset of entries (and vice versa), and counts distinct cluster
/// variables.
pub fn verify_tables(case: CaseSelector) -> Result<CampaignReport, CampaignError> {
    let started = Instant::now();
    let graph = ExchangeGraph::enumerate(&case.initial_seed(), 1_000)?;
    let mut entries = Vec::new();

    entries.push(ReportEntry {
        key: format!("case={} nodes", case.name()),
        pass: graph.node_count() == 14,
        detail: format!("count={} expected=14", graph.node_count()),
    });

    let node_multisets: Vec<Vec<LaurentPolynomial>> =
        graph.nodes().iter().map(cluster_multiset).collect();
    let mut matched_nodes = vec![false; node_multisets.len()];
    for (row_idx, row) in case.table().iter().enumerate() {
        let mut parsed: Vec<LaurentPolynomial> = Vec::with_capacity(3);
        for entry in row {
            parsed.push(parse_laurent(entry, 3)?);
        }
        parsed.sort();
        let found = node_multisets.iter().position(|m| *m == parsed);
        if let Some(node) = found {
            matched_nodes[node] = true;
        }
        entries.push(ReportEntry {
            key: format!("case={} row={:02}", case.name(), row_idx + 1),
            pass: found.is_some(),
            detail: match found {
                Some(node) => format!("matched-node={node}"),
                None => format!("unmatched cluster {}", row.join(", ")),
            },
        });
    }
    entries.push(ReportEntry {
        key: format!("case={} rows-bijective", case.name()),
        pass: matched_nodes.iter().all(|&m| m),
        detail: format!(
            "unmatched-nodes={}",
            matched_nodes.iter().filter(|&&m| !m).count()
        ),
    });

    let variables = graph.cluster_variables().len();
    entries.push(ReportEntry {
        key: format!("case={} variables", case.name()),
        pass: variables == 9,
        detail: format!("count={variables} expected=9"),
    });

    Ok(CampaignReport::new(Vec::new(), entries, started))
}

/// All exponent vectors with entries in `[0, max]`, lexicographically.
fn exponent_grid(rank: usize, max: u32) -> Vec<Vec<u32>> {
    let mut grid = vec![vec![]];
    for _ in 0..rank {
        grid = grid
            .into_iter()
            .flat_map(|prefix| {
                (0..=max).map(move |e| {
                    let mut next = prefix.clone();
                    next.push(e);
                    next
                })
            })
            .collect();
    }
    grid
}

/// Log-concavity, internal-zero and unimodality records for one cluster
/// monomial's numerator array.
fn check_monomial(
    key_prefix: &str,
    seed: &Seed,
    exponents: &[u32],
) -> Result<Vec<ReportEntry>, CampaignError> {
    let monomial = seed.cluster_monomial(exponents)?;
    let numerator = monomial.normalize()?.numerator;
    let array = numerator.coefficient_array()?;
    let exps = exponents
        .iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(",");
    Ok(vec![
        ReportEntry::check(
            format!("{key_prefix} exponents={exps} check=log-concave"),
            &seqprops::is_log_concave(&array),
        ),
        ReportEntry::check(
            format!("{key_prefix} exponents={exps} check=no-internal-zeros"),
            &seqprops::has_internal_zeros(&array),
        ),
        ReportEntry::check(
            format!("{key_prefix} exponents={exps} check=unimodal"),
            &seqprops::is_unimodal(&array),
        ),
    ])
}

fn monomial_sweep(
    graph: &ExchangeGraph,
    config: &CampaignConfig,
) -> Result<Vec<ReportEntry>, CampaignError> {
    let rank = graph.nodes()[0].rank();
    let grid = exponent_grid(rank, config.max_exponent);
    let jobs: Vec<(usize, &Vec<u32>)> = (0..graph.node_count())
        .flat_map(|node| grid.iter().map(move |exps| (node, exps)))
        .collect();
    let results: Result<Vec<Vec<ReportEntry>>, CampaignError> = run_pool(config.workers, || {
        jobs.par_iter()
            .map(|(node, exps)| {
                check_monomial(
                    &format!("cluster={node:02}"),
                    &graph.nodes()[*node],
                    exps,
                )
            })
            .collect()
    })?;
    Ok(results?.into_iter().flatten().collect())
}

/// Desk-scale sweep: every cluster of the case, every exponent vector up to
/// the bound, three checks per monomial on the numerator array.
pub fn verify_theorem(
    case: CaseSelector,
    config: &CampaignConfig,
) -> Result<CampaignReport, CampaignError> {
    let started = Instant::now();
    let graph = ExchangeGraph::enumerate(&case.initial_seed(), config.node_limit)?;
    let mut entries = vec![ReportEntry {
        key: format!("case={} nodes", case.name()),
        pass: graph.node_count() == 14,
        detail: format!("count={} expected=14", graph.node_count()),
    }];
    entries.extend(monomial_sweep(&graph, config)?);
    Ok(CampaignReport::new(Vec::new(), entries, started))
}

/// Rebuilds the product counterexample: both factors are log-concave, the
/// product's numerator is not, with witness values (23, 8, 4) along the
/// second axis at first exponent 3.
pub fn reproduce_counterexample() -> Result<CampaignReport, CampaignError> {
    let started = Instant::now();
    let f = parse_laurent(COUNTEREXAMPLE_F, 2)?;
    let g = parse_laurent(COUNTEREXAMPLE_G, 2)?;
    let mut entries = Vec::new();
    for (name, factor) in [("f", &f), ("g", &g)] {
        let array = factor.normalize()?.numerator.coefficient_array()?;
        entries.push(ReportEntry::check(
            format!("factor={name} check=log-concave expected=pass"),
            &seqprops::is_log_concave(&array),
        ));
    }
    let product = f.mul(&g)?;
    let array = product.normalize()?.numerator.coefficient_array()?;
    let report = seqprops::is_log_concave(&array);
    let expected_witness = report.witness.as_ref().is_some_and(|w| {
        w.axis == 1
            && w.index == vec![3, 3]
            && w.values
                == vec![BigInt::from(23), BigInt::from(8), BigInt::from(4)]
    });
    entries.push(ReportEntry {
        key: "product check=log-concave expected=fail".to_string(),
        pass: !report.is_pass() && expected_witness,
        detail: report.to_string(),
    });
    Ok(CampaignReport::new(Vec::new(), entries, started))
}

/// Selector for the small-rank sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmallRank {
    A1,
    A2,
    /// Single cluster variables of all three rank-3 cases.
    A3Variables,
}

impl SmallRank {
    pub fn from_name(name: &str) -> Option<SmallRank> {
        match name.to_ascii_lowercase().as_str() {
            "a1" => Some(SmallRank::A1),
            "a2" => Some(SmallRank::A2),
            "a3-variables" | "a3" => Some(SmallRank::A3Variables),
            _ => None,
        }
    }
}

fn check_variables(
    key_prefix: &str,
    graph: &ExchangeGraph,
) -> Result<Vec<ReportEntry>, CampaignError> {
    let mut entries = Vec::new();
    for (idx, variable) in graph.cluster_variables().iter().enumerate() {
        let array = variable.normalize()?.numerator.coefficient_array()?;
        for (kind, report) in [
            ("log-concave", seqprops::is_log_concave(&array)),
            ("no-internal-zeros", seqprops::has_internal_zeros(&array)),
            ("unimodal", seqprops::is_unimodal(&array)),
        ] {
            entries.push(ReportEntry::check(
                format!("{key_prefix} variable={idx:02} check={kind}"),
                &report,
            ));
        }
    }
    Ok(entries)
}

/// Small-rank sweeps: both rank-1 variables, all rank-2 cluster monomials
/// up to the exponent bound, or the single variables of the three rank-3
/// cases.
pub fn verify_small_rank(
    which: SmallRank,
    config: &CampaignConfig,
) -> Result<CampaignReport, CampaignError> {
    let started = Instant::now();
    let entries = match which {
        SmallRank::A1 => {
            let matrix = ExchangeMatrix::from_rows(&[vec![0]])?;
            let graph = ExchangeGraph::enumerate(&Seed::initial(matrix), 10)?;
            check_variables("rank=A1", &graph)?
        }
        SmallRank::A2 => {
            let matrix = ExchangeMatrix::from_rows(&[vec![0, 1], vec![-1, 0]])?;
            let graph = ExchangeGraph::enumerate(&Seed::initial(matrix), 100)?;
            let mut entries = vec![ReportEntry {
                key: "rank=A2 nodes".to_string(),
                pass: graph.node_count() == 5,
                detail: format!("count={} expected=5", graph.node_count()),
            }];
            entries.extend(monomial_sweep(&graph, config)?);
            entries
        }
        SmallRank::A3Variables => {
            let mut entries = Vec::new();
            for case in CaseSelector::ALL {
                let graph = ExchangeGraph::enumerate(&case.initial_seed(), 1_000)?;
                entries.extend(check_variables(
                    &format!("case={}", case.name()),
                    &graph,
                )?);
            }
            entries
        }
    };
    Ok(CampaignReport::new(Vec::new(), entries, started))
}

/// Evidence scan over a user-supplied seed: enumerate under the node limit
/// and check every cluster monomial up to the exponent bound. A clean scan
/// is evidence, not proof; a failure is a reportable counterexample.
pub fn scan_conjecture(
    seed: &Seed,
    config: &CampaignConfig,
) -> Result<CampaignReport, CampaignError> {
    let started = Instant::now();
    let graph = ExchangeGraph::enumerate(seed, config.node_limit)?;
    let notes = vec![
        "evidence scan: a clean pass supports the conjecture but proves nothing".to_string(),
        format!(
            "rank={} nodes={} max_exponent={}",
            seed.rank(),
            graph.node_count(),
            config.max_exponent
        ),
    ];
    let entries = monomial_sweep(&graph, config)?;
    Ok(CampaignReport::new(notes, entries, started))
}

/// Three-check records for one Laurent polynomial's numerator array, as
/// used by the `check` subcommand.
pub fn check_laurent(poly: &LaurentPolynomial) -> Result<CampaignReport, CampaignError> {
    let started = Instant::now();
    let nf = poly.normalize()?;
    let array = nf.numerator.coefficient_array()?;
    let dvec = nf
        .dvector
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let notes = vec![format!("numerator checks; dvector=({dvec})")];
    let entries = vec![
        ReportEntry::check(
            "check=log-concave".to_string(),
            &seqprops::is_log_concave(&array),
        ),
        ReportEntry::check(
            "check=no-internal-zeros".to_string(),
            &seqprops::has_internal_zeros(&array),
        ),
        ReportEntry::check("check=unimodal".to_string(), &seqprops::is_unimodal(&array)),
    ];
    Ok(CampaignReport::new(notes, entries, started))
}

/// Orientation reductions: the outward orientation (negated inward matrix)
/// and the reversed cycle (negated cyclic matrix) must reproduce the same
/// unlabeled clusters and the same cluster variables as their reduced
/// counterparts.
pub fn verify_orientation_reductions() -> Result<CampaignReport, CampaignError> {
    let started = Instant::now();
    let mut entries = Vec::new();
    for (label, case) in [
        ("outward-vs-inward", CaseSelector::Inward),
        ("reversed-cycle-vs-cyclic", CaseSelector::Cyclic),
    ] {
        let reduced = ExchangeGraph::enumerate(&case.initial_seed(), 1_000)?;
        let negated = Seed::initial(case.matrix().negate());
        let other = ExchangeGraph::enumerate(&negated, 1_000)?;
        let vars_equal = reduced.cluster_variables() == other.cluster_variables();
        let clusters = |g: &ExchangeGraph| {
            let mut sets: Vec<Vec<LaurentPolynomial>> = g.nodes().iter().map(cluster_multiset).collect();
            sets.sort();
            sets
        };
        let clusters_equal = clusters(&reduced) == clusters(&other);
        entries.push(ReportEntry {
            key: format!("reduction={label} cluster-variables"),
            pass: vars_equal,
            detail: format!(
                "reduced={} other={}",
                reduced.cluster_variables().len(),
                other.cluster_variables().len()
            ),
        });
        entries.push(ReportEntry {
            key: format!("reduction={label} unlabeled-clusters"),
            pass: clusters_equal,
            detail: format!("reduced={} other={}", reduced.node_count(), other.node_count()),
        });
    }
    Ok(CampaignReport::new(Vec::new(), entries, started))
}

/// DOT export for a named case.
pub fn export_graph(
    case: CaseSelector,
    node_limit: usize,
    w: &mut impl io::Write,
) -> Result<(), CampaignError> {
    let graph = ExchangeGraph::enumerate(&case.initial_seed(), node_limit)?;
    graph.write_dot(w).map_err(|e| CampaignError::Config(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_reproduce() {
        for case in CaseSelector::ALL {
            let report = verify_tables(case).unwrap();
            assert!(report.all_passed(), "{}:\n{}", case.name(), report.to_text());
            // 1 node-count + 14 rows + bijectivity + variable count
            assert_eq!(report.entries.len(), 17);
        }
    }

    #[test]
    fn counterexample_reproduces() {
        let report = reproduce_counterexample().unwrap();
        assert!(report.all_passed(), "{}", report.to_text());
        let product = &report.entries[2];
        assert!(product.detail.contains("values=(23,8,4)"));
        assert!(product.detail.contains("axis=2"));
        assert!(product.detail.contains("index=(3,3)"));
    }

    #[test]
    fn theorem_sweep_small_bound() {
        let config = CampaignConfig {
            max_exponent: 1,
            ..CampaignConfig::default()
        };
        let report = verify_theorem(CaseSelector::Straightforward, &config).unwrap();
        assert!(report.all_passed());
        // 1 + 14 clusters * 8 exponent vectors * 3 checks
        assert_eq!(report.entries.len(), 1 + 14 * 8 * 3);
    }

    #[test]
    fn sweep_is_deterministic_across_worker_counts() {
        let base = CampaignConfig {
            max_exponent: 1,
            workers: 1,
            ..CampaignConfig::default()
        };
        let one = verify_theorem(CaseSelector::Inward, &base).unwrap().to_text();
        let four = verify_theorem(
            CaseSelector::Inward,
            &CampaignConfig {
                workers: 4,
                ..base.clone()
            },
        )
        .unwrap()
        .to_text();
        assert_eq!(one, four);
    }

    #[test]
    fn small_rank_a1() {
        let report = verify_small_rank(SmallRank::A1, &CampaignConfig::default()).unwrap();
        assert!(report.all_passed());
        assert_eq!(report.entries.len(), 6);
    }

    #[test]
    fn orientation_reductions_hold() {
        let report = verify_orientation_reductions().unwrap();
        assert!(report.all_passed(), "{}", report.to_text());
    }

    #[test]
    fn check_laurent_flags_failures() {
        let poly = parse_laurent("1 + x1 + 4*x1^2", 1).unwrap();
        let report = check_laurent(&poly).unwrap();
        assert!(!report.all_passed());
        let poly = parse_laurent("(1 + x1)^4/x1^2", 1).unwrap();
        let report = check_laurent(&poly).unwrap();
        assert!(report.all_passed());
        assert_eq!(report.notes[0], "numerator checks; dvector=(2)");
    }

    #[test]
    fn report_text_format() {
        let report = verify_tables(CaseSelector::Inward).unwrap();
        let text = report.to_text();
        assert!(text.starts_with("pass case=inward nodes count=14 expected=14\n"));
        assert!(text.ends_with("summary total=17 pass=17 fail=0\n"));
    }
}
