//! The `pmcoh` command line.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::bracket::{generalized_bracket, normalized_bracket, tait_terms, BracketError, BracketParams};
use crate::families::{generate_family, Family, FamilyError};
use crate::homology::{cohomology_of, verify_flip_chain_map, CohomologyTable, HomologyError};
use crate::laurent::PolyError;
use crate::oracles::{
    complement_cycle_lengths, count_tait_colorings, count_two_factors_through, enumerate_perfect_matchings,
    is_even_matching, AbstractGraph, OracleError,
};
use crate::parse::{parse_diagram, to_graph_file, ParseError};
use crate::planar::{DiagramError, EdgeId, FlipSpec, PlanarDiagram};
use crate::states::{hypercube, StateError};
use crate::verify::{run_suite, Status, Suite, VerifyError};
use crate::Poly;

const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "pmcoh", version, about = "Cohomology and bracket polynomials of planar trivalent graphs with perfect matchings")]
struct Cli {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Source {
    /// Built-in family: theta, dumbbell, prism-L, prism-C, K4.
    #[arg(long, global = true)]
    family: Option<Family>,
    /// Family parameter; defaults to 1 (3 for the prisms).
    #[arg(long, global = true)]
    m: Option<usize>,
    /// Graph file, or `-` for stdin.
    #[arg(long, global = true, conflicts_with = "family")]
    input: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Tsv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// State-sum polynomial (2-factor by default).
    Bracket {
        #[arg(long, group = "params")]
        two_factor: bool,
        #[arg(long, group = "params")]
        four_color: bool,
        /// Custom coefficients, e.g. `--general 1 -z "z^-1 + z"`.
        #[arg(long, group = "params", num_args = 3, value_names = ["A", "B", "C"], allow_hyphen_values = true)]
        general: Option<Vec<String>>,
        /// Divide by C.
        #[arg(long)]
        normalize: bool,
    },
    /// Bigraded cohomology table.
    Cohomology,
    /// Tait polynomial: the sum over all perfect matchings.
    Tait {
        #[arg(long)]
        per_matching: bool,
    },
    /// States, circle counts and edge kinds of the hypercube.
    Hypercube,
    /// Flip a vertex set and compare both sides.
    Flip {
        /// Vertex names inside the flipping disk.
        #[arg(long, value_delimiter = ',', required = true)]
        inside: Vec<String>,
        /// Print the flipped diagram as a graph file instead of the report.
        #[arg(long)]
        emit: bool,
    },
    /// Brute-force counts on the underlying graph.
    Oracle {
        #[arg(value_enum)]
        kind: OracleKind,
    },
    /// Run verification suites; exits 2 if any check fails.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleKind {
    Matchings,
    TwoFactors,
    TaitColorings,
    Even,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("reading {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Bracket(#[from] BracketError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

/// Runs one invocation. Returns the process exit code: 0 on success, 1 on
/// usage or input errors, 2 when `verify` finds a failing check.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match thread_pool() {
        Ok(Some(pool)) => pool.install(|| execute(&cli)),
        Ok(None) => execute(&cli),
        Err(e) => Err(e),
    };
    match result {
        Ok((text, code)) => {
            if out.write_all(text.as_bytes()).is_err() {
                return 1;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn thread_pool() -> Result<Option<rayon::ThreadPool>, CliError> {
    let Ok(raw) = std::env::var("PMCOH_THREADS") else { return Ok(None) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("PMCOH_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map(Some)
        .map_err(|e| CliError::Usage(format!("cannot start {n} threads: {e}")))
}

fn load(source: &Source) -> Result<(PlanarDiagram, Option<(Family, usize)>), CliError> {
    match (&source.input, source.family) {
        (Some(path), _) => {
            if source.m.is_some() {
                return Err(CliError::Usage("--m only applies to --family".into()));
            }
            let text = if path.as_os_str() == "-" {
                let mut s = String::new();
                io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| CliError::Io { path: "stdin".into(), source: e })?;
                s
            } else {
                std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.display().to_string(), source: e })?
            };
            Ok((parse_diagram(&text)?, None))
        }
        (None, Some(family)) => {
            let m = source.m.unwrap_or(match family {
                Family::PrismLadder | Family::PrismCandle => 3,
                _ => 1,
            });
            Ok((generate_family(family, m)?, Some((family, m))))
        }
        (None, None) => Err(CliError::Usage("one of --family or --input is required".into())),
    }
}

fn execute(cli: &Cli) -> Result<(String, i32), CliError> {
    let (d, family) = load(&cli.source)?;
    let format = cli.format;
    let text = match &cli.command {
        Command::Bracket { four_color, general, normalize, .. } => {
            let params: BracketParams<i64> = match general {
                Some(abc) => {
                    let p = |s: &String| s.parse::<Poly>();
                    BracketParams::new(p(&abc[0])?, p(&abc[1])?, p(&abc[2])?)
                }
                None if *four_color => BracketParams::four_color(),
                None => BracketParams::two_factor(),
            };
            let poly = if *normalize { normalized_bracket(&d, &params)? } else { generalized_bracket(&d, &params)? };
            render_poly(&poly, format)
        }
        Command::Cohomology => render_table(&cohomology_of(&d)?, format),
        Command::Tait { per_matching } => tait(&d, *per_matching, format)?,
        Command::Hypercube => render_hypercube(&d, format)?,
        Command::Flip { inside, emit } => flip(&d, inside, *emit, format)?,
        Command::Oracle { kind } => oracle(&d, *kind, format)?,
        Command::Verify { suite } => {
            let report = run_suite(&d, *suite, family)?;
            let code = if report.passed() { 0 } else { 2 };
            return Ok((render_verify(&report, format), code));
        }
    };
    Ok((text, 0))
}

fn poly_json(p: &Poly) -> Value {
    Value::Array(p.terms().map(|(e, c)| json!([e, c])).collect())
}

fn to_json(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
    s.push('\n');
    s
}

fn render_poly(p: &Poly, format: Format) -> String {
    match format {
        Format::Text => format!("{p}\n"),
        Format::Tsv => {
            let mut s = String::from("exponent\tcoefficient\n");
            for (e, c) in p.terms() {
                let _ = writeln!(s, "{e}\t{c}");
            }
            s
        }
        Format::Json => to_json(json!({ "schemaVersion": SCHEMA_VERSION, "polynomial": poly_json(p) })),
    }
}

/// Renders a cohomology table: rows `j` descending, columns `i` ascending,
/// `.` for zero cells.
fn render_table(t: &CohomologyTable, format: Format) -> String {
    match format {
        Format::Text => table_text(t),
        Format::Tsv => {
            let mut s = String::from("i\tj\tdim\n");
            for ((i, j), dim) in t.iter() {
                let _ = writeln!(s, "{i}\t{j}\t{dim}");
            }
            s
        }
        Format::Json => {
            let cells: Vec<Value> = t.iter().map(|((i, j), dim)| json!({ "i": i, "j": j, "dim": dim })).collect();
            to_json(json!({ "schemaVersion": SCHEMA_VERSION, "cohomology": cells }))
        }
    }
}

fn table_text(t: &CohomologyTable) -> String {
    let is: Vec<i32> = t.iter().map(|((i, _), _)| i).collect();
    let js: Vec<i32> = t.iter().map(|((_, j), _)| j).collect();
    let (Some(&i0), Some(&i1)) = (is.iter().min(), is.iter().max()) else {
        return "j\\i\n".to_string();
    };
    let (j0, j1) = (*js.iter().min().unwrap(), *js.iter().max().unwrap());
    let cell = |s: String| format!("{s:>4}");
    let mut out = format!("{:>4}", "j\\i");
    for i in i0..=i1 {
        out.push_str(&cell(i.to_string()));
    }
    out.push('\n');
    for j in (j0..=j1).rev() {
        out.push_str(&cell(j.to_string()));
        for i in i0..=i1 {
            let dim = t.get(i, j);
            out.push_str(&cell(if dim == 0 { ".".to_string() } else { dim.to_string() }));
        }
        out.push('\n');
    }
    out
}

fn edge_names(d: &PlanarDiagram, edges: &[EdgeId]) -> Vec<String> {
    edges.iter().map(|&e| d.edge_name(e).to_string()).collect()
}

fn tait(d: &PlanarDiagram, per_matching: bool, format: Format) -> Result<String, CliError> {
    let terms = tait_terms::<i64>(d)?;
    let mut total = Poly::zero();
    for t in &terms {
        total = total.checked_add(&t.polynomial)?;
    }
    if !per_matching {
        return Ok(render_poly(&total, format));
    }
    Ok(match format {
        Format::Text => {
            let mut s = format!("T = {total}\n");
            for t in &terms {
                let _ = writeln!(s, "{{{}}}: {}", edge_names(d, &t.matching).join(","), t.polynomial);
            }
            s
        }
        Format::Tsv => {
            let mut s = String::from("matching\tpolynomial\n");
            for t in &terms {
                let _ = writeln!(s, "{}\t{}", edge_names(d, &t.matching).join(","), t.polynomial);
            }
            let _ = writeln!(s, "total\t{total}");
            s
        }
        Format::Json => {
            let rows: Vec<Value> = terms
                .iter()
                .map(|t| json!({ "matching": edge_names(d, &t.matching), "polynomial": poly_json(&t.polynomial) }))
                .collect();
            to_json(json!({ "schemaVersion": SCHEMA_VERSION, "polynomial": poly_json(&total), "matchings": rows }))
        }
    })
}

fn render_hypercube(d: &PlanarDiagram, format: Format) -> Result<String, CliError> {
    let h = hypercube(d)?;
    let matching = edge_names(d, &h.matching);
    Ok(match format {
        Format::Text | Format::Tsv => {
            let mut s = String::new();
            if format == Format::Text {
                let _ = writeln!(s, "matching (bit order): {}", matching.join(","));
                let _ = writeln!(s, "states: {}", h.states.len());
            }
            for st in &h.states {
                let _ = writeln!(s, "state\t{}\t{}\t{}", st.index, st.index.weight(), st.circle_count());
            }
            if format == Format::Text {
                let _ = writeln!(s, "edges: {}", h.edges.len());
            }
            for e in &h.edges {
                let _ = writeln!(s, "edge\t{}\t{}\t{}\t{}", e.from, e.to, matching[e.bit], e.kind.label());
            }
            s
        }
        Format::Json => {
            let states: Vec<Value> = h
                .states
                .iter()
                .map(|st| json!({ "state": st.index.to_string(), "weight": st.index.weight(), "circles": st.circle_count() }))
                .collect();
            let edges: Vec<Value> = h
                .edges
                .iter()
                .map(|e| {
                    json!({ "from": e.from.to_string(), "to": e.to.to_string(), "edge": matching[e.bit], "kind": e.kind.label() })
                })
                .collect();
            to_json(json!({ "schemaVersion": SCHEMA_VERSION, "matching": matching, "states": states, "edges": edges }))
        }
    })
}

fn flip(d: &PlanarDiagram, inside: &[String], emit: bool, format: Format) -> Result<String, CliError> {
    let mut vertices = Vec::new();
    for name in inside {
        let v = d.vertex_by_name(name).ok_or_else(|| CliError::Usage(format!("no vertex named {name:?}")))?;
        vertices.push(v);
    }
    let spec = FlipSpec::new(vertices);
    let cut = d.check_flip(&spec)?;
    let flipped = d.flip(&spec)?;
    if emit {
        return Ok(to_graph_file(&flipped));
    }
    let unchanged = cohomology_of(d)? == cohomology_of(&flipped)?;
    let chain_map = if cut.len() == 2 { Some(verify_flip_chain_map(d, &spec)?) } else { None };
    let cut_names = edge_names(d, &cut);
    Ok(match format {
        Format::Text | Format::Tsv => {
            let sep = if format == Format::Text { ": " } else { "\t" };
            let mut s = String::new();
            let _ = writeln!(s, "cut edges{sep}{}", cut_names.join(","));
            let _ = writeln!(s, "cohomology unchanged{sep}{}", yes_no(unchanged));
            if let Some(r) = &chain_map {
                let _ = writeln!(s, "exchange states{sep}{}", r.exchange_states);
                let _ = writeln!(s, "chain isomorphism{sep}{}", yes_no(r.holds()));
            }
            s
        }
        Format::Json => {
            let mut v = json!({
                "schemaVersion": SCHEMA_VERSION,
                "cutEdges": cut_names,
                "cohomologyUnchanged": unchanged,
            });
            if let Some(r) = &chain_map {
                v["exchangeStates"] = json!(r.exchange_states);
                v["chainIsomorphism"] = json!(r.holds());
            }
            to_json(v)
        }
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn oracle(d: &PlanarDiagram, kind: OracleKind, format: Format) -> Result<String, CliError> {
    let g = AbstractGraph::from_diagram(d);
    let m = d.matching_edges();
    let (name, value, listing): (&str, Value, Vec<String>) = match kind {
        OracleKind::Matchings => {
            let all = enumerate_perfect_matchings(&g)?;
            let rows: Vec<String> = all.iter().map(|pm| edge_names(d, pm).join(",")).collect();
            ("perfectMatchings", json!(all.len()), rows)
        }
        OracleKind::TwoFactors => {
            let tf = count_two_factors_through(&g, &m)?;
            let rows = tf.witnesses.iter().map(|w| edge_names(d, w).join(",")).collect();
            ("twoFactors", json!(tf.count), rows)
        }
        OracleKind::TaitColorings => ("taitColorings", json!(count_tait_colorings(&g)?), Vec::new()),
        OracleKind::Even => {
            let lengths = complement_cycle_lengths(&g, &m)?;
            let rows = lengths.iter().map(|l| l.to_string()).collect();
            ("even", json!(is_even_matching(&g, &m)?), rows)
        }
    };
    Ok(match format {
        Format::Text | Format::Tsv => {
            let sep = if format == Format::Text { ": " } else { "\t" };
            let mut s = format!("{name}{sep}{value}\n");
            for row in listing {
                let _ = writeln!(s, "{row}");
            }
            s
        }
        Format::Json => {
            let mut v = json!({ "schemaVersion": SCHEMA_VERSION });
            v[name] = value;
            v["items"] = json!(listing);
            to_json(v)
        }
    })
}

fn render_verify(r: &crate::verify::VerifyReport, format: Format) -> String {
    match format {
        Format::Text | Format::Tsv => {
            let mut s = String::new();
            for c in &r.checks {
                if format == Format::Text {
                    let _ = write!(s, "{:<4}  {:<8}  {}", c.status.label(), c.suite, c.name);
                    let _ = if c.detail.is_empty() { writeln!(s) } else { writeln!(s, "  ({})", c.detail) };
                } else {
                    let _ = writeln!(s, "{}\t{}\t{}\t{}", c.status.label(), c.suite, c.name, c.detail);
                }
            }
            for n in &r.notes {
                let holds = if n.holds { "holds" } else { "fails" };
                if format == Format::Text {
                    let _ = writeln!(s, "info  {holds:<8}  {}  ({})", n.name, n.detail);
                } else {
                    let _ = writeln!(s, "info\t{holds}\t{}\t{}", n.name, n.detail);
                }
            }
            s
        }
        Format::Json => {
            let checks: Vec<Value> = r
                .checks
                .iter()
                .map(|c| {
                    json!({
                        "suite": c.suite.name(),
                        "name": c.name,
                        "status": match c.status { Status::Pass => "pass", Status::Fail => "fail", Status::Skipped => "skip" },
                        "detail": c.detail,
                    })
                })
                .collect();
            let notes: Vec<Value> =
                r.notes.iter().map(|n| json!({ "name": n.name, "holds": n.holds, "detail": n.detail })).collect();
            to_json(json!({ "schemaVersion": SCHEMA_VERSION, "passed": r.passed(), "checks": checks, "notes": notes }))
        }
    }
}
