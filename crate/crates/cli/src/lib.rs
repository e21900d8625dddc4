//! Command-line front end for `equicut-core`.
//!
//! [`run`] parses arguments, executes one command and returns the text to
//! print together with the process exit code, so the binary is a thin shell
//! around it.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use equicut_core::catalog::{self, CheckStatus, EntryReport, IdentityReport, SizeEvidence};
use equicut_core::cutcone::{realization_at_scale, size_bounds};
use equicut_core::doubling::{
    detect_antipodal, diametral_doubling, doubling_realization, DoublingPreconditions,
};
use equicut_core::lp::format_rational;
use equicut_core::metric::{cond_geodesic_convexity, cond_geodesic_extension, distance_matrix};
use equicut_core::{CutSystem, Error, Graph, Limits, Rational, Realization, SizeBounds};
use serde::Serialize;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_LIMIT: u8 = 3;
pub const EXIT_BUDGET: u8 = 4;

#[derive(Debug, Parser)]
#[command(name = "equicut", version, about = "Exact l1-embeddability of graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Metric, size, scale, rigidity, equicut and doubling conditions of a graph.
    Analyze(GraphArgs),
    /// Hypercube realization of an l1 graph.
    Embed {
        #[command(flatten)]
        graph: GraphArgs,
        /// Realize at this scale instead of the certificate's.
        #[arg(long)]
        scale: Option<u64>,
    },
    /// Diametral doubling and its block realization.
    Double(GraphArgs),
    /// Recompute the catalog, the small equicut census or the doubling identities.
    VerifyCatalog {
        #[arg(long, value_enum)]
        filter: Option<Filter>,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Catalog or family name, such as `petersen`, `c5`, `k23` or `johnson:6,3`.
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    pub name: Option<String>,
    /// Graph in the `v m` edge-list format.
    #[arg(long)]
    pub file: Option<PathBuf>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Largest vertex count for the full cut LP.
    #[arg(long)]
    pub cut_limit: Option<usize>,
    /// LP relaxations allowed per integer search.
    #[arg(long)]
    pub node_budget: Option<u64>,
    #[arg(long, conflicts_with = "text")]
    pub json: bool,
    /// Human-readable output.
    #[arg(long)]
    pub text: bool,
    /// Report what fits within the limits instead of failing.
    #[arg(long)]
    pub force: bool,
}

impl CommonArgs {
    fn limits(&self) -> Limits {
        let mut limits = Limits::default();
        if let Some(v) = self.cut_limit {
            limits.cut_limit = v;
        }
        if let Some(n) = self.node_budget {
            limits.node_budget = n;
        }
        limits
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Filter {
    /// Equicut graphs on at most six vertices.
    Census6,
    /// Doubling identities.
    Doublings,
}

/// What to print and how to exit.
#[derive(Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn error(e: &Error) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: exit_code(e),
        }
    }
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::InvalidGraph(_)
        | Error::DisconnectedGraph
        | Error::TooSmall { .. }
        | Error::UnknownFamily(_)
        | Error::BadParameters { .. }
        | Error::UnknownEntry(_)
        | Error::Io(_) => EXIT_PARSE,
        Error::SizeLimitExceeded { .. } => EXIT_LIMIT,
        Error::NodeBudgetExceeded(_) | Error::ScaleSearchInconclusive => EXIT_BUDGET,
        _ => EXIT_FAILURE,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Analyze(args) => analyze(args),
        Command::Embed { graph, scale } => embed(graph, *scale),
        Command::Double(args) => double(args),
        Command::VerifyCatalog { filter, common } => verify_catalog(*filter, common),
    };
    result.unwrap_or_else(|e| Outcome::error(&e))
}

/// Catalog entries take precedence over family names.
pub fn load_graph(args: &GraphArgs) -> Result<Graph, Error> {
    match (&args.name, &args.file) {
        (Some(name), _) => match catalog::expected_properties(name) {
            Ok(entry) if entry.is_constructible() => catalog::entry_graph(entry),
            _ => catalog::graph_by_name(name),
        },
        (None, Some(path)) => Graph::parse_text(&std::fs::read_to_string(path)?),
        (None, None) => Err(Error::Parse {
            line: 0,
            message: "one of --name or --file is required".into(),
        }),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

/// Everything `analyze` reports. Fields that could not be computed within
/// the limits are absent and `reason` says why.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub v: usize,
    pub edge_count: usize,
    pub diameter: u32,
    pub wiener: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub is_l1: Option<bool>,
    #[serde(
        skip_serializing_if = "Option::is_none",
        with = "equicut_core::lp::rational::serde_string::option"
    )]
    pub size: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scale: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rigid: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equicut: Option<bool>,
    pub antipodal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<SizeBounds>,
    pub conditions: DoublingPreconditions,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

/// Runs the analysis pipeline. Limit and budget errors abort unless `force`
/// is set, in which case the affected fields are left out.
pub fn analysis_report(g: &Graph, limits: &Limits, force: bool) -> Result<AnalysisReport, Error> {
    let d = distance_matrix(g)?;
    let mut report = AnalysisReport {
        v: g.vertex_count(),
        edge_count: g.edge_count(),
        diameter: d.diameter(),
        wiener: d.wiener(),
        is_l1: None,
        size: None,
        scale: None,
        rigid: None,
        equicut: None,
        antipodal: detect_antipodal(g)?.is_antipodal,
        bounds: (g.vertex_count() >= 2)
            .then(|| size_bounds(g))
            .transpose()?,
        conditions: DoublingPreconditions {
            cond_i: cond_geodesic_convexity(g)?,
            cond_ii: cond_geodesic_extension(g)?,
            size_ok: None,
        },
        reason: None,
    };
    if g.vertex_count() < 2 {
        report.reason = Some("a single vertex has no cut decomposition".into());
        return Ok(report);
    }
    let forgive = |e: Error, report: &mut AnalysisReport| -> Result<(), Error> {
        match e {
            Error::SizeLimitExceeded { .. }
            | Error::NodeBudgetExceeded(_)
            | Error::ScaleSearchInconclusive
                if force =>
            {
                report.reason = Some(e.to_string());
                Ok(())
            }
            e => Err(e),
        }
    };
    let system = match CutSystem::new(g, limits) {
        Ok(s) => s,
        Err(e) => {
            forgive(e, &mut report)?;
            return Ok(report);
        }
    };
    let is_l1 = system.is_l1()?;
    report.is_l1 = Some(is_l1);
    if !is_l1 {
        report.conditions.size_ok = None;
        return Ok(report);
    }
    let size = system.size()?;
    report.conditions.size_ok = Some(size <= Rational::from_integer((report.diameter + 1).into()));
    report.size = Some(size);
    report.rigid = Some(system.is_rigid()?);
    report.equicut = Some(system.is_equicut()?);
    match system.scale() {
        Ok(t) => report.scale = Some(t),
        Err(e) => forgive(e, &mut report)?,
    }
    Ok(report)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn analysis_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let mut line = |k: &str, v: String| writeln!(out, "{k:<12} {v}").unwrap();
    line("vertices", r.v.to_string());
    line("edges", r.edge_count.to_string());
    line("diameter", r.diameter.to_string());
    line("wiener", r.wiener.to_string());
    if let Some(b) = r.is_l1 {
        line("l1", yes_no(b).into());
    }
    if let Some(s) = &r.size {
        line("size", format_rational(s));
    }
    if let Some(t) = r.scale {
        line("scale", t.to_string());
    }
    if let Some(b) = r.rigid {
        line("rigid", yes_no(b).into());
    }
    if let Some(b) = r.equicut {
        line("equicut", yes_no(b).into());
    }
    line("antipodal", yes_no(r.antipodal).into());
    if let Some(b) = &r.bounds {
        line(
            "bounds",
            format!(
                "{} .. {}",
                format_rational(&b.lower),
                format_rational(&b.upper)
            ),
        );
    }
    line("convexity", yes_no(r.conditions.cond_i).into());
    line("extension", yes_no(r.conditions.cond_ii).into());
    if let Some(b) = r.conditions.size_ok {
        line("size <= D+1", yes_no(b).into());
    }
    if let Some(reason) = &r.reason {
        line("note", reason.clone());
    }
    out
}

fn analyze(args: &GraphArgs) -> Result<Outcome, Error> {
    let g = load_graph(args)?;
    let report = analysis_report(&g, &args.common.limits(), args.common.force)?;
    Ok(Outcome::ok(if args.common.text {
        analysis_text(&report)
    } else {
        to_json(&report)
    }))
}

#[derive(Serialize)]
struct RealizationJson {
    v: usize,
    n: usize,
    t: u64,
    rows: Vec<String>,
}

fn realization_json(r: &Realization) -> RealizationJson {
    RealizationJson {
        v: r.rows(),
        n: r.cols(),
        t: r.scale(),
        rows: (0..r.rows())
            .map(|x| r.row(x).iter().map(|b| char::from(b'0' + b)).collect())
            .collect(),
    }
}

/// Puts each column's ones on its smaller side (vertex 0 stays at zero on
/// ties) and orders columns by where their first cyclic run of ones starts,
/// so a cycle's realization comes out as a circulant.
pub fn presentation_order(r: &Realization) -> Result<Realization, Error> {
    let v = r.rows();
    let mut columns: Vec<Vec<u8>> = (0..r.cols())
        .map(|c| {
            let col = r.column(c);
            let ones = col.iter().filter(|&&b| b == 1).count();
            if 2 * ones > v || (2 * ones == v && col[0] == 1) {
                col.iter().map(|b| 1 - b).collect()
            } else {
                col
            }
        })
        .collect();
    let run_start = |col: &[u8]| (0..v).find(|&x| col[x] == 1 && col[(x + v - 1) % v] == 0);
    columns.sort_by(|a, b| (run_start(a), a).cmp(&(run_start(b), b)));
    if columns.is_empty() {
        return Ok(r.clone());
    }
    Realization::from_columns(v, &columns, r.scale())
}

fn embed(args: &GraphArgs, scale: Option<u64>) -> Result<Outcome, Error> {
    let g = load_graph(args)?;
    let limits = args.common.limits();
    let r = match scale {
        Some(t) => realization_at_scale(&g, t, &limits)?
            .ok_or_else(|| Error::VerificationFailed(format!("no realization at scale {t}")))?,
        None => catalog::certificate_realization(&g, &limits)?,
    };
    let r = presentation_order(&r)?;
    Ok(Outcome::ok(if args.common.json {
        to_json(&realization_json(&r))
    } else {
        r.to_text()
    }))
}

#[derive(Serialize)]
struct DoubleJson {
    graph: GraphJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    header: Option<equicut_core::doubling::DoublingHeader>,
    #[serde(skip_serializing_if = "Option::is_none")]
    realization: Option<RealizationJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

#[derive(Serialize)]
struct GraphJson {
    v: usize,
    edges: Vec<(usize, usize)>,
}

fn double(args: &GraphArgs) -> Result<Outcome, Error> {
    let g = load_graph(args)?;
    let limits = args.common.limits();
    let doubled = diametral_doubling(&g)?;
    let decomposition =
        catalog::certificate_realization(&g, &limits).and_then(|r| doubling_realization(&g, &r));
    let decomposition = match decomposition {
        Ok(d) => Ok(d),
        Err(e @ (Error::SizeLimitExceeded { .. } | Error::NodeBudgetExceeded(_)))
            if !args.common.force =>
        {
            return Err(e)
        }
        Err(e) => Err(e.to_string()),
    };
    let stdout = if args.common.text {
        let mut out = doubled.to_text();
        match &decomposition {
            Ok(d) => {
                out.push('\n');
                out.push_str(&d.to_text());
            }
            Err(reason) => writeln!(out, "# no block realization: {reason}").unwrap(),
        }
        out
    } else {
        let (header, realization, reason) = match &decomposition {
            Ok(d) => (
                Some(d.header()),
                Some(realization_json(d.assembled())),
                None,
            ),
            Err(reason) => (None, None, Some(reason.clone())),
        };
        to_json(&DoubleJson {
            graph: GraphJson {
                v: doubled.vertex_count(),
                edges: doubled.edges().collect(),
            },
            header,
            realization,
            reason,
        })
    };
    Ok(Outcome::ok(stdout))
}

#[derive(Serialize)]
struct CatalogJson<'a, T> {
    passed: bool,
    results: &'a [T],
}

fn verify_catalog(filter: Option<Filter>, common: &CommonArgs) -> Result<Outcome, Error> {
    let limits = common.limits();
    let (passed, stdout) = match filter {
        None => {
            let mut reports = Vec::new();
            for entry in catalog::catalog().iter().filter(|e| e.is_constructible()) {
                reports.push(catalog::verify_entry(entry, &limits)?);
            }
            let passed = reports.iter().all(EntryReport::passed);
            let out = if common.text {
                entries_text(&reports)
            } else {
                to_json(&CatalogJson {
                    passed,
                    results: &reports,
                })
            };
            (passed, out)
        }
        Some(Filter::Census6) => {
            let census = catalog::equicut_census(6, &limits)?;
            let labels: Vec<&str> = census.iter().filter_map(|e| e.label).collect();
            let passed = census.len() == catalog::CENSUS_LABELS.len()
                && labels.len() == census.len()
                && catalog::CENSUS_LABELS.iter().all(|l| labels.contains(l));
            let out = if common.text {
                let mut out = format!(
                    "{:<12} {:>2} {:>3} {:<6} {:<8}\n",
                    "graph", "v", "e", "rigid", "doubling"
                );
                for e in &census {
                    writeln!(
                        out,
                        "{:<12} {:>2} {:>3} {:<6} {:<8}",
                        e.label.unwrap_or("?"),
                        e.vertices,
                        e.edges,
                        yes_no(e.rigid),
                        yes_no(e.doubling)
                    )
                    .unwrap();
                }
                writeln!(out, "{} equicut graphs", census.len()).unwrap();
                out
            } else {
                to_json(&CatalogJson {
                    passed,
                    results: &census,
                })
            };
            (passed, out)
        }
        Some(Filter::Doublings) => {
            let mut reports = Vec::new();
            for id in catalog::doubling_identities()? {
                reports.push(catalog::verify_identity(&id, &limits)?);
            }
            let passed = reports.iter().all(IdentityReport::passed);
            let out = if common.text {
                identities_text(&reports)
            } else {
                to_json(&CatalogJson {
                    passed,
                    results: &reports,
                })
            };
            (passed, out)
        }
    };
    Ok(Outcome {
        stdout,
        stderr: if passed {
            String::new()
        } else {
            "verification failed\n".into()
        },
        code: if passed { EXIT_OK } else { EXIT_FAILURE },
    })
}

fn status_word(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "FAIL",
        CheckStatus::Erratum => "erratum",
        CheckStatus::Unverified => "unverified",
    }
}

fn entries_text(reports: &[EntryReport]) -> String {
    let mut out = format!(
        "{:<28} {:<8} {:>10} {:>10} {}\n",
        "entry", "field", "expected", "computed", "status"
    );
    for r in reports {
        for c in &r.checks {
            writeln!(
                out,
                "{:<28} {:<8} {:>10} {:>10} {}",
                r.name,
                c.field,
                c.expected,
                c.computed.as_deref().unwrap_or("-"),
                status_word(c.status)
            )
            .unwrap();
        }
    }
    out
}

fn identities_text(reports: &[IdentityReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let size = match &r.size {
            Some(SizeEvidence::Lp { size, .. }) => format_rational(size),
            Some(SizeEvidence::Pinned { upper, .. }) => {
                format!("{} (pinned)", format_rational(upper))
            }
            None => "-".into(),
        };
        writeln!(
            out,
            "{:<28} isomorphic {:<3} preconditions {:<3} size {:<12} {}",
            r.label,
            yes_no(r.isomorphic),
            yes_no(r.preconditions.all_hold()),
            size,
            if r.passed() { "pass" } else { "FAIL" }
        )
        .unwrap();
    }
    out
}
