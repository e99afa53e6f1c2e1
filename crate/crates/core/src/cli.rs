//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a hard check failed, 2 usage error, 3 the
//! memory estimate exceeded the cap.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::algebra::Algebra;
use crate::chromatic;
use crate::complex::{self, Slice};
use crate::graph::Graph;
use crate::homology::{self, ComputeOptions, HomologyError};
use crate::theorems::{self, CheckReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

const DEFAULT_MEMORY_CAP: u64 = 4 << 30;

#[derive(Parser, Debug)]
#[command(name = "chromhom", version, about = "Chromatic graph cohomology over integral algebras")]
pub struct Cli {
    /// Worker threads for slice computations (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute every group H^{i,j}.
    Compute {
        #[command(flatten)]
        input: Input,
        /// Degree range `LO..HI` (inclusive) or a single degree.
        #[arg(long)]
        degrees: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Refuse to run when the estimated memory exceeds this many bytes.
        #[arg(long, default_value_t = DEFAULT_MEMORY_CAP)]
        memory_cap: u64,
        /// Also verify d∘d = 0 on every slice.
        #[arg(long)]
        check_d_squared: bool,
    },
    /// Chromatic polynomial, coefficients from the constant term up.
    Chromatic {
        #[arg(long)]
        graph: String,
        /// Also print P_G(qdim A) for this algebra.
        #[arg(long)]
        algebra: Option<String>,
    },
    /// Run theorem checks.
    Verify {
        /// Named suite; `paper` runs every hard and soft check on the standard fixtures.
        #[arg(long, conflicts_with = "check")]
        suite: Option<Suite>,
        #[arg(long, required_unless_present = "suite")]
        check: Option<CheckName>,
        #[arg(long)]
        graph: Option<String>,
        #[arg(long)]
        algebra: Option<String>,
        /// Edge for the pendant and exactness checks (exactness defaults to all edges).
        #[arg(long)]
        edge: Option<usize>,
        /// Size parameter: polygon length or truncation order.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
    },
    /// List the enhanced-state bases of one slice and the differential between them.
    Bases {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        height: usize,
        /// Internal degree; omit for ungraded algebras.
        #[arg(long)]
        degree: Option<u32>,
    },
}

#[derive(clap::Args, Debug)]
pub struct Input {
    /// `gen:cycle:N`, `gen:path:N`, `gen:complete:N`, `gen:null:N`,
    /// `gen:polygon:V:a-b,c-d` or `file:PATH` (text or JSON).
    #[arg(long)]
    pub graph: String,
    /// `trunc:M`, `poly:c0,c1,...,1` or `window:J`.
    #[arg(long, default_value = "trunc:2")]
    pub algebra: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Triplets,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Paper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckName {
    Vanishing,
    Thickness,
    Euler,
    Pendant,
    Exactness,
    Dichotomy,
    PolygonFormula,
    P3Am,
    P3Window,
    DeformedP3,
    ReferenceValues,
    VgonDiagonals,
    EdgeOrder,
}

/// Resolve a graph source: a generator spec or `file:PATH`.
pub fn parse_graph_spec(spec: &str) -> Result<Graph, String> {
    if let Some(path) = spec.strip_prefix("file:") {
        let path = PathBuf::from(path);
        let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        let parsed = if text.trim_start().starts_with('{') { Graph::parse_json(&text) } else { Graph::parse_text(&text) };
        return parsed.map_err(|e| format!("{}: {e}", path.display()));
    }
    let rest = spec
        .strip_prefix("gen:")
        .ok_or_else(|| format!("graph spec `{spec}` must start with gen: or file:"))?;
    let mut parts = rest.splitn(3, ':');
    let kind = parts.next().unwrap_or_default();
    let size: usize = parts
        .next()
        .ok_or_else(|| format!("graph spec `{spec}` needs a size"))?
        .parse()
        .map_err(|_| format!("graph spec `{spec}` has a malformed size"))?;
    let extra = parts.next();
    let graph = match (kind, extra) {
        ("cycle", None) => Graph::cycle(size),
        ("path", None) => Ok(Graph::path(size)),
        ("complete", None) => Graph::complete(size),
        ("null", None) => Ok(Graph::null(size)),
        ("polygon", diagonals) => {
            let diagonals = diagonals
                .filter(|d| !d.is_empty())
                .map(|d| {
                    d.split(',')
                        .map(|pair| {
                            let (a, b) = pair.split_once('-').ok_or_else(|| format!("diagonal `{pair}` is not a-b"))?;
                            let a = a.trim().parse().map_err(|_| format!("diagonal `{pair}` is not a-b"))?;
                            let b = b.trim().parse().map_err(|_| format!("diagonal `{pair}` is not a-b"))?;
                            Ok((a, b))
                        })
                        .collect::<Result<Vec<(usize, usize)>, String>>()
                })
                .transpose()?
                .unwrap_or_default();
            Graph::polygon_with_diagonals(size, &diagonals)
        }
        _ => return Err(format!("unknown graph generator `{spec}`")),
    };
    graph.map_err(|e| e.to_string())
}

/// `LO..HI` or a single degree.
pub fn parse_degrees(text: &str) -> Result<(u32, u32), String> {
    let bad = || format!("degree range `{text}` is not LO..HI");
    match text.split_once("..") {
        Some((lo, hi)) => {
            let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
            let hi: u32 = hi.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
            if lo > hi {
                return Err(bad());
            }
            Ok((lo, hi))
        }
        None => {
            let j = text.trim().parse().map_err(|_| bad())?;
            Ok((j, j))
        }
    }
}

enum Failure {
    Usage(String),
    Resource(String),
    Check,
}

impl From<String> for Failure {
    fn from(message: String) -> Self {
        Failure::Usage(message)
    }
}

fn homology_failure(e: HomologyError) -> Failure {
    match e {
        HomologyError::ResourceCap { .. } => Failure::Resource(e.to_string()),
        other => Failure::Usage(other.to_string()),
    }
}

fn algebra(spec: &str) -> Result<Algebra, String> {
    Algebra::from_spec(spec).map_err(|e| e.to_string())
}

/// Parse arguments and run, writing to the process streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let mut buffer = Vec::new();
    let result = pool.install(|| dispatch(cli.command, &mut buffer));
    if let Err(e) = out.write_all(&buffer).and_then(|()| out.flush()) {
        let _ = writeln!(err, "error: {e}");
        return EXIT_USAGE;
    }
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Check) => EXIT_CHECK_FAILED,
        Err(Failure::Usage(message)) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_USAGE
        }
        Err(Failure::Resource(message)) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_RESOURCE
        }
    }
}

fn emit(out: &mut Vec<u8>, text: &str) -> Result<(), Failure> {
    out.extend_from_slice(text.as_bytes());
    Ok(())
}

fn dispatch(command: Command, out: &mut Vec<u8>) -> Result<(), Failure> {
    match command {
        Command::Compute { input, degrees, format, memory_cap, check_d_squared } => {
            let graph = parse_graph_spec(&input.graph)?;
            let algebra = algebra(&input.algebra)?;
            let degrees = degrees.as_deref().map(parse_degrees).transpose()?;
            let options = ComputeOptions { degrees, check_d_squared, memory_cap: Some(memory_cap) };
            if format == Format::Triplets {
                let estimate = homology::estimate_memory(&graph, &algebra, &options).map_err(homology_failure)?;
                if estimate > u128::from(memory_cap) {
                    return Err(homology_failure(HomologyError::ResourceCap { estimate, cap: memory_cap }));
                }
                let slices: Vec<Slice> = if algebra.is_graded() {
                    let (lo, hi) = degrees.unwrap_or_else(|| homology::default_degrees(&graph, &algebra));
                    (lo..=hi).map(Slice::Degree).collect()
                } else {
                    vec![Slice::Total]
                };
                for slice in slices {
                    for i in 0..=graph.edge_count() {
                        let dump = complex::render_debug_dump(&graph, &algebra, i, slice).map_err(|e| e.to_string())?;
                        emit(out, &dump)?;
                    }
                }
                return Ok(());
            }
            let h = homology::compute_all(&graph, &algebra, &options).map_err(homology_failure)?;
            match format {
                Format::Json => emit(out, &format!("{}\n", h.to_json())),
                _ => emit(out, &h.render_table()),
            }
        }
        Command::Chromatic { graph, algebra: spec } => {
            let graph = parse_graph_spec(&graph)?;
            let reference = chromatic::chromatic_polynomial(&graph);
            let fast = chromatic::chromatic_polynomial_dc(&graph);
            if reference != fast {
                emit(out, &format!("subset sum {reference} disagrees with deletion-contraction {fast}\n"))?;
                return Err(Failure::Check);
            }
            let coefficients: Vec<String> = reference.coefficients().iter().map(ToString::to_string).collect();
            emit(out, &format!("[{}]\n", coefficients.join(", ")))?;
            if let Some(spec) = spec {
                let a = algebra(&spec)?;
                let series = chromatic::evaluate_at_qdim(&reference, &a).map_err(|e| e.to_string())?;
                let coefficients: Vec<String> = series.coefficients().iter().map(ToString::to_string).collect();
                emit(out, &format!("[{}]\n", coefficients.join(", ")))?;
            }
            Ok(())
        }
        Command::Verify { suite, check, graph, algebra: spec, edge, n, format } => {
            let reports = match (suite, check) {
                (Some(Suite::Paper), _) => theorems::full_suite(),
                (None, Some(check)) => single_check(check, graph.as_deref(), spec.as_deref(), edge, n)?,
                (None, None) => return Err(Failure::Usage("give --suite or --check".into())),
            };
            for report in &reports {
                let line = match format {
                    ReportFormat::Json => report.to_json(),
                    ReportFormat::Text => report.to_string(),
                };
                emit(out, &format!("{line}\n"))?;
            }
            if reports.iter().any(CheckReport::is_hard_failure) {
                Err(Failure::Check)
            } else {
                Ok(())
            }
        }
        Command::Bases { input, height, degree } => {
            let graph = parse_graph_spec(&input.graph)?;
            let algebra = algebra(&input.algebra)?;
            let slice = degree.map_or(Slice::Total, Slice::Degree);
            let dump = complex::render_debug_dump(&graph, &algebra, height, slice).map_err(|e| e.to_string())?;
            emit(out, &dump)
        }
    }
}

fn single_check(
    check: CheckName,
    graph: Option<&str>,
    algebra_spec: Option<&str>,
    edge: Option<usize>,
    n: Option<usize>,
) -> Result<Vec<CheckReport>, Failure> {
    let need_graph = || -> Result<Graph, Failure> {
        Ok(parse_graph_spec(graph.ok_or_else(|| "this check needs --graph".to_string())?)?)
    };
    let need_algebra = || -> Result<Algebra, Failure> {
        Ok(algebra(algebra_spec.ok_or_else(|| "this check needs --algebra".to_string())?)?)
    };
    let need_n = || n.ok_or_else(|| Failure::Usage("this check needs --n".into()));
    Ok(match check {
        CheckName::Vanishing => vec![theorems::check_vanishing(&need_graph()?, &need_algebra()?)],
        CheckName::Thickness => vec![theorems::check_thickness(&need_graph()?, &need_algebra()?)],
        CheckName::Euler => vec![theorems::check_euler(&need_graph()?, &need_algebra()?)],
        CheckName::Pendant => {
            let g = need_graph()?;
            let e = edge.ok_or_else(|| Failure::Usage("the pendant check needs --edge".into()))?;
            vec![theorems::check_pendant(&g, e, &need_algebra()?)]
        }
        CheckName::Exactness => {
            let g = need_graph()?;
            let a = need_algebra()?;
            let edges: Vec<usize> = match edge {
                Some(e) => vec![e],
                None => (0..g.edge_count()).filter(|&e| g.edge(e).0 != g.edge(e).1).collect(),
            };
            edges.into_iter().map(|e| theorems::check_del_contract_exactness(&g, e, &a)).collect()
        }
        CheckName::Dichotomy => vec![theorems::check_torsion_dichotomy(&need_graph()?)],
        CheckName::PolygonFormula => vec![theorems::check_polygon_formula(need_n()?)],
        CheckName::P3Am => vec![theorems::check_p3_am(need_n()?)],
        CheckName::P3Window => vec![theorems::check_p3_window(need_n()? as u32)],
        CheckName::DeformedP3 => {
            let spec = algebra_spec.ok_or_else(|| Failure::Usage("this check needs --algebra poly:...".into()))?;
            let coefficients = spec
                .strip_prefix("poly:")
                .ok_or_else(|| Failure::Usage("the deformed check needs --algebra poly:...".into()))?
                .split(',')
                .map(|c| c.trim().parse::<i64>().map_err(|_| Failure::Usage(format!("bad coefficient `{c}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            vec![theorems::check_deformed_p3(&coefficients, None)]
        }
        CheckName::ReferenceValues => vec![theorems::check_reference_values()],
        CheckName::VgonDiagonals => vec![theorems::check_vgon_diagonals(&need_graph()?, &need_algebra()?)],
        CheckName::EdgeOrder => vec![theorems::check_edge_order_invariance(&need_graph()?, &need_algebra()?, 0, n.unwrap_or(5))],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_with(std::iter::once("chromhom").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn graph_specs() {
        assert_eq!(parse_graph_spec("gen:cycle:6").unwrap().edge_count(), 6);
        assert_eq!(parse_graph_spec("gen:path:4").unwrap().edge_count(), 3);
        assert_eq!(parse_graph_spec("gen:complete:4").unwrap().edge_count(), 6);
        assert_eq!(parse_graph_spec("gen:polygon:5:0-2,0-3").unwrap().edge_count(), 7);
        assert!(parse_graph_spec("gen:wheel:4").is_err());
        assert!(parse_graph_spec("cycle:4").is_err());
        assert!(parse_graph_spec("gen:complete:12").is_err());
    }

    #[test]
    fn degree_ranges() {
        assert_eq!(parse_degrees("2..5"), Ok((2, 5)));
        assert_eq!(parse_degrees("3"), Ok((3, 3)));
        assert!(parse_degrees("5..2").is_err());
    }

    #[test]
    fn compute_table() {
        let (code, out, _) = run_capture(&["compute", "--graph", "gen:cycle:6", "--algebra", "trunc:2"]);
        assert_eq!(code, EXIT_OK);
        let row = out.lines().find(|l| l.trim_start().starts_with("4 ")).unwrap();
        assert_eq!(row.split_whitespace().nth(3), Some("[1_2]"));
    }

    #[test]
    fn chromatic_coefficients() {
        let (code, out, _) = run_capture(&["chromatic", "--graph", "gen:complete:4"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.trim(), "[0, -6, 11, -6, 1]");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_capture(&["compute", "--graph", "gen:cycle:3", "--algebra", "bogus"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["compute", "--graph", "gen:cycle:3", "--algebra", "poly:0,2"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn resource_cap() {
        let (code, _, err) = run_capture(&["compute", "--graph", "gen:complete:5", "--memory-cap", "1000"]);
        assert_eq!(code, EXIT_RESOURCE);
        assert!(err.contains("exceeds the cap"));
    }

    #[test]
    fn single_checks() {
        let (code, out, _) = run_capture(&["verify", "--check", "p3-am", "--n", "3"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("\"passed\":true"));
        let (code, _, _) = run_capture(&["verify", "--check", "pendant", "--graph", "gen:cycle:3", "--algebra", "trunc:2", "--edge", "0"]);
        assert_eq!(code, EXIT_CHECK_FAILED);
    }

    #[test]
    fn bases_dump() {
        let (code, out, _) = run_capture(&["bases", "--graph", "gen:cycle:3", "--height", "0", "--degree", "2"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("state#1: subset=0b000, colors=[x, 1, x]"));
    }
}
