//! `bookbind`: build bundles and circulants, embed, verify, search, render.
//!
//! Exit codes: 0 ok, 2 invalid embedding, 3 unsupported spec, 4 search
//! inconclusive, 64 usage/parse error, 65 invalid parameters, 66 file error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use bookbind::constructions::{embed, Embedded, Unsupported};
use bookbind::decomp::{fiber_cycles, residual_cycles};
use bookbind::io::{
    construction_json, decomposition_json, graph_dot, graph_json, mbt_json, parse_embedding, parse_graph,
    reduction_json, report_json,
};
use bookbind::oracle::{brute_force_mbt, probe_pages, MbtValue, SearchBudget};
use bookbind::render::{default_palette, render_svg, LabelMode, RenderSpec};
use bookbind::sweep::{sweep, Family};
use bookbind::{circulant, to_circulant, validate, Automorphism, BookEmbedding, BundleSpec, Error, Execution, Graph};
use clap::{Parser, Subcommand, ValueEnum};

const INVALID: u8 = 2;
const UNSUPPORTED: u8 = 3;
const INCONCLUSIVE: u8 = 4;
const USAGE: u8 = 64;
const BAD_PARAMS: u8 = 65;
const FILE_ERROR: u8 = 66;

#[derive(Parser)]
#[command(name = "bookbind", version, about = "Matching book embeddings of cycle bundles")]
struct Cli {
    /// Run batch work on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a graph: "s=5,t=7,phi=shift:3" or "circulant:n=35,S=1,10".
    Build {
        spec: String,
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        format: GraphFormat,
    },
    /// Construct an optimal matching book embedding of a bundle.
    Embed { spec: String },
    /// Print the fiber and residual cycle decompositions of a bundle.
    Decompose { spec: String },
    /// Check an embedding against a graph.
    Verify { graph: PathBuf, embedding: PathBuf },
    /// Exhaustive matching-book-thickness search.
    Mbt {
        graph: PathBuf,
        #[arg(long)]
        max_orders: Option<u64>,
        #[arg(long)]
        max_nodes: Option<u64>,
        /// Seconds.
        #[arg(long)]
        time_limit: Option<f64>,
        /// Try this page count only.
        #[arg(long)]
        pages: Option<usize>,
    },
    /// Draw an embedding as SVG.
    Render {
        graph: PathBuf,
        embedding: PathBuf,
        /// Bundle spec; enables 1-based (p,q) labels.
        #[arg(long)]
        spec: Option<String>,
        /// Comma-separated stroke colors by page.
        #[arg(long)]
        palette: Option<String>,
        #[arg(long, default_value_t = 200.0)]
        radius: f64,
    },
    /// Build, validate and certify every bundle in a range.
    Sweep {
        /// Base cycle lengths, e.g. "3-8".
        #[arg(long = "s")]
        s_range: String,
        /// Fiber cycle lengths, e.g. "4-14".
        #[arg(long = "t")]
        t_range: String,
        #[arg(long, default_value = "all")]
        family: String,
        #[arg(long, value_enum, default_value_t = TableFormat::Table)]
        format: TableFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Table,
    Json,
}

struct Failure {
    code: u8,
    message: String,
}

type Outcome = Result<u8, Failure>;

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

/// Spec syntax errors are usage errors; well-formed but impossible values
/// are parameter errors.
fn spec_failure(e: Error) -> Failure {
    match e {
        Error::Parse(_) => fail(USAGE, e.to_string()),
        _ => fail(BAD_PARAMS, e.to_string()),
    }
}

fn parse_spec(text: &str) -> Result<BundleSpec, Failure> {
    text.parse().map_err(spec_failure)
}

fn parse_circulant(body: &str) -> Result<Graph, Failure> {
    let usage = || fail(USAGE, format!("expected circulant:n=N,S=k1,k2,...; got {body:?}"));
    let (n_part, jumps) = body.split_once(",S=").ok_or_else(usage)?;
    let n: usize = n_part.strip_prefix("n=").and_then(|n| n.parse().ok()).ok_or_else(usage)?;
    let jumps: Vec<usize> = jumps.split(',').map(|k| k.trim().parse().map_err(|_| usage())).collect::<Result<_, _>>()?;
    circulant(n, &jumps).map_err(|e| fail(BAD_PARAMS, e.to_string()))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(FILE_ERROR, format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    parse_graph(&read(path)?).map_err(|e| fail(FILE_ERROR, format!("{}: {e}", path.display())))
}

fn load_embedding(path: &Path) -> Result<BookEmbedding, Failure> {
    parse_embedding(&read(path)?).map_err(|e| fail(FILE_ERROR, format!("{}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| fail(FILE_ERROR, format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| fail(FILE_ERROR, e.to_string()))
        }
    }
}

fn json_line(value: &serde_json::Value) -> String {
    let mut s = value.to_string();
    s.push('\n');
    s
}

fn parse_range(text: &str, name: &str) -> Result<std::ops::RangeInclusive<usize>, Failure> {
    let bad = || fail(USAGE, format!("--{name}: expected N or LO-HI, got {text:?}"));
    let (lo, hi) = match text.split_once('-') {
        Some((lo, hi)) => (lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?),
        None => {
            let v = text.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(fail(BAD_PARAMS, format!("--{name}: empty range {text}")));
    }
    Ok(lo..=hi)
}

fn run(cli: Cli) -> Outcome {
    let exec = if cli.sequential { Execution::Sequential } else { Execution::Parallel };
    let out = &cli.out;
    match cli.command {
        Command::Build { spec, format } => {
            let g = match spec.strip_prefix("circulant:") {
                Some(body) => parse_circulant(body)?,
                None => parse_spec(&spec)?.graph(),
            };
            let text = match format {
                GraphFormat::Json => json_line(&graph_json(&g)),
                GraphFormat::Dot => graph_dot(&g),
            };
            emit(out, &text)?;
            Ok(0)
        }
        Command::Embed { spec } => {
            let spec = parse_spec(&spec)?;
            match embed(&spec).map_err(|e| fail(BAD_PARAMS, e.to_string()))? {
                Embedded::Built(r) => {
                    emit(out, &json_line(&construction_json(&r)))?;
                    Ok(0)
                }
                Embedded::Unsupported(why) => {
                    eprintln!("unsupported: {why}");
                    if why == Unsupported::CoprimeShift {
                        let norm = spec.normalize_shift();
                        let Automorphism::Shift(d) = norm.phi() else { unreachable!("shift specs normalize to shifts") };
                        let r = to_circulant(norm.s(), norm.t(), d).map_err(|e| fail(BAD_PARAMS, e.to_string()))?;
                        emit(out, &json_line(&reduction_json(&r)))?;
                    }
                    Ok(UNSUPPORTED)
                }
            }
        }
        Command::Decompose { spec } => {
            let spec = parse_spec(&spec)?;
            let residual = residual_cycles(&spec).map_err(|e| fail(BAD_PARAMS, e.to_string()))?;
            let value = serde_json::json!({
                "spec": spec.to_string(),
                "fiber": decomposition_json(&fiber_cycles(&spec)),
                "residual": decomposition_json(&residual),
            });
            emit(out, &json_line(&value))?;
            Ok(0)
        }
        Command::Verify { graph, embedding } => {
            let g = load_graph(&graph)?;
            let emb = load_embedding(&embedding)?;
            match validate(&g, &emb) {
                Ok(report) => {
                    emit(out, &json_line(&report_json(&report)))?;
                    Ok(if report.is_valid() { 0 } else { INVALID })
                }
                Err(e) => Err(fail(INVALID, e.to_string())),
            }
        }
        Command::Mbt { graph, max_orders, max_nodes, time_limit, pages } => {
            let g = load_graph(&graph)?;
            let mut budget = SearchBudget::default();
            if let Some(v) = max_orders {
                budget.max_orders = v;
            }
            if let Some(v) = max_nodes {
                budget.max_nodes = v;
            }
            if let Some(secs) = time_limit {
                budget.time_limit =
                    Duration::try_from_secs_f64(secs).map_err(|e| fail(BAD_PARAMS, format!("--time-limit: {e}")))?;
            }
            if budget.max_orders == 0 || budget.max_nodes == 0 || budget.time_limit.is_zero() {
                return Err(fail(BAD_PARAMS, "search caps must be positive"));
            }
            let result = match pages {
                Some(m) => probe_pages(&g, m, budget, exec).map_err(|e| fail(BAD_PARAMS, e.to_string()))?,
                None => brute_force_mbt(&g, budget, exec),
            };
            emit(out, &json_line(&mbt_json(&result)))?;
            Ok(if matches!(result.value, MbtValue::Exact(_)) { 0 } else { INCONCLUSIVE })
        }
        Command::Render { graph, embedding, spec, palette, radius } => {
            let g = load_graph(&graph)?;
            let emb = load_embedding(&embedding)?;
            let labels = match spec {
                Some(text) => LabelMode::Pairs { t: parse_spec(&text)?.t() },
                None => LabelMode::Flat,
            };
            let palette = match palette {
                Some(list) => list.split(',').map(|c| c.trim().to_string()).collect(),
                None => default_palette(),
            };
            let svg = render_svg(&g, &emb, &RenderSpec { radius, labels, palette }).map_err(|e| match e {
                Error::InvalidSize(_) => fail(BAD_PARAMS, e.to_string()),
                _ => fail(INVALID, e.to_string()),
            })?;
            emit(out, &svg)?;
            Ok(0)
        }
        Command::Sweep { s_range, t_range, family, format } => {
            let s_range = parse_range(&s_range, "s")?;
            let t_range = parse_range(&t_range, "t")?;
            let family: Family = family.parse().map_err(spec_failure)?;
            let rows = sweep(s_range, t_range, family, exec).map_err(|e| fail(BAD_PARAMS, e.to_string()))?;
            let text = match format {
                TableFormat::Json => json_line(&serde_json::to_value(&rows).expect("rows serialize")),
                TableFormat::Table => {
                    let mut s = format!("{:<28} {:>9} {:>5} {:>6}  {}\n", "spec", "predicted", "pages", "valid", "status");
                    for row in &rows {
                        let status = match (&row.certification, &row.error) {
                            (_, Some(err)) => format!("error: {err}"),
                            (Some(c), None) if row.relaxed => format!("{c:?} (relaxed)"),
                            (Some(c), None) => format!("{c:?}"),
                            (None, None) => "-".into(),
                        };
                        let pages = row.pages.map_or("-".into(), |p| p.to_string());
                        s += &format!("{:<28} {:>9} {:>5} {:>6}  {status}\n", row.spec, row.predicted, pages, row.valid);
                    }
                    let failed = rows.iter().filter(|r| !r.passed()).count();
                    s += &format!("{} rows, {failed} failed\n", rows.len());
                    s
                }
            };
            emit(out, &text)?;
            Ok(if rows.iter().all(|r| r.passed()) { 0 } else { INVALID })
        }
    }
}

fn threads_from_env() -> Result<Option<usize>, Failure> {
    match std::env::var("BOOKBIND_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(fail(BAD_PARAMS, format!("BOOKBIND_THREADS must be a positive integer, got {v:?}"))),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = threads_from_env().and_then(|threads| match threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| run(cli)),
            Err(e) => Err(fail(BAD_PARAMS, e.to_string())),
        },
        None => run(cli),
    });
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("bookbind: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
