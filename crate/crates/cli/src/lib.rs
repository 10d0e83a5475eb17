//! Argument parsing and command dispatch for the `btugirth` binary.
//!
//! Kept in a library so tests can drive commands without spawning a process.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::mpsc;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use btugirth::bounds::{bound_report, gmax_report};
use btugirth::btu::io::{read_matrix, write_matrix};
use btugirth::search::{search_r3_observed, SearchProgress};
use btugirth::tables::{self, table_1_reference, Table1Row, TextTable};
use btugirth::{girth_bfs, search_r3, BinaryMatrix, GraphFormat, ScalingStrategy, SearchConfig, SearchResult};
use clap::{value_parser, ArgGroup, Args, Parser, Subcommand, ValueEnum};

/// Environment variable holding the default worker count for `search`.
pub const JOBS_ENV: &str = "BTUGIRTH_JOBS";

/// Searches with `k` at or above this print progress to stderr.
pub const PROGRESS_MIN_K: usize = 9;
const PROGRESS_INTERVAL: Duration = Duration::from_secs(5);

#[derive(Debug, Parser)]
#[command(name = "btugirth", version, about = "Girth-maximum regular bipartite graphs from compatible permutations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Search (b·k², 3) BTUs for the largest girth.
    Search(SearchArgs),
    /// Print the girth of a graph file.
    Girth(GirthArgs),
    /// Print a bound table or evaluate bounds for one parameter set.
    Bounds(BoundsArgs),
    /// Print several tables, recomputing table 1 by search.
    Tables(TablesArgs),
    /// Convert a graph between alist, dimacs and dense formats.
    Convert(ConvertArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum ReportFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct SearchArgs {
    #[arg(long, value_parser = value_parser!(u64).range(2..))]
    pub k: u64,
    #[arg(long, default_value_t = 1, value_parser = value_parser!(u64).range(1..))]
    pub b: u64,
    #[arg(long, default_value_t = ScalingStrategy::default())]
    pub strategy: ScalingStrategy,
    /// Only enumerate base cycles with q1(0) = 1.
    #[arg(long)]
    pub fix_first: bool,
    /// Allow every shift coprime to m, not just b·k < j < m - b·k.
    #[arg(long)]
    pub no_j_filter: bool,
    /// Evaluate every candidate's girth exactly.
    #[arg(long)]
    pub no_pruning: bool,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, env = JOBS_ENV, value_parser = value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,
    /// Write the best BTU here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Format for --out; guessed from the extension, else alist.
    #[arg(long)]
    pub format: Option<GraphFormat>,
    #[arg(long, value_enum, default_value_t)]
    pub report: ReportFormat,
}

impl SearchArgs {
    pub fn config(&self) -> SearchConfig {
        SearchConfig::new(self.k as usize)
            .with_b(self.b as usize)
            .with_strategy(self.strategy)
            .with_fix_first(self.fix_first)
            .with_j_range_filter(!self.no_j_filter)
            .with_cutoff_pruning(!self.no_pruning)
            .with_workers(self.jobs.map_or_else(default_jobs, |j| j as usize))
    }
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct GirthArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub format: Option<GraphFormat>,
}

#[derive(Debug, Clone, PartialEq, Eq, Args)]
#[command(group(ArgGroup::new("query").required(true).args(["table", "g", "gmax"])))]
pub struct BoundsArgs {
    #[arg(long, value_parser = value_parser!(u8).range(2..=5))]
    pub table: Option<u8>,
    /// Girth for a single bound report.
    #[arg(long)]
    pub g: Option<u64>,
    #[arg(long, default_value_t = 3, requires = "g")]
    pub delta: u64,
    /// Matrix size m for the factorization and girth ceiling report.
    #[arg(long, value_name = "M")]
    pub gmax: Option<u64>,
    #[arg(long, default_value_t = 3, requires = "gmax")]
    pub r: u64,
    /// Print `key: value` lines instead of a table.
    #[arg(long)]
    pub kv: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct TablesArgs {
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5", value_parser = value_parser!(u8).range(1..=5))]
    pub which: Vec<u8>,
    /// Largest k searched for table 1.
    #[arg(long, default_value_t = 8, value_parser = value_parser!(u64).range(5..))]
    pub max_k: u64,
    #[arg(long, default_value_t = ScalingStrategy::default())]
    pub strategy: ScalingStrategy,
    #[arg(long)]
    pub fix_first: bool,
    #[arg(long, env = JOBS_ENV, value_parser = value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,
    #[arg(long)]
    pub kv: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct ConvertArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub from: Option<GraphFormat>,
    #[arg(long)]
    pub to: Option<GraphFormat>,
}

/// Parses arguments without the program name.
pub fn parse_args<I, T>(argv: I) -> Result<Command, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = std::iter::once("btugirth".into()).chain(argv.into_iter().map(Into::into));
    Cli::try_parse_from(args).map(|cli| cli.command)
}

/// Runs one command, writing its report to `out`.
pub fn run(cmd: &Command, out: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Search(args) => run_search(args, out),
        Command::Girth(args) => {
            let m = read_graph(&args.input, args.format)?;
            let g = girth_bfs(&m.to_bipartite(), None);
            writeln!(out, "girth: {}", g.value)?;
            Ok(())
        }
        Command::Bounds(args) => run_bounds(args, out),
        Command::Tables(args) => run_tables(args, out),
        Command::Convert(args) => {
            let m = read_graph(&args.input, args.from)?;
            let to = args.to.unwrap_or_else(|| guess_format(&args.out));
            write_file(&args.out, &write_matrix(&m, to))
        }
    }
}

fn guess_format(path: &Path) -> GraphFormat {
    GraphFormat::from_extension(path).unwrap_or_default()
}

fn read_graph(path: &Path, format: Option<GraphFormat>) -> Result<BinaryMatrix> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let format = format.unwrap_or_else(|| guess_format(path));
    read_matrix(&text, format).with_context(|| format!("{} ({format})", path.display()))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn run_search(args: &SearchArgs, out: &mut dyn Write) -> Result<()> {
    let cfg = args.config();
    let result = if cfg.k >= PROGRESS_MIN_K {
        search_with_progress(&cfg)?
    } else {
        search_r3(&cfg)?
    };
    match args.report {
        ReportFormat::Text => out.write_all(result.to_text().as_bytes())?,
        ReportFormat::Json => writeln!(out, "{}", result.to_json())?,
    }
    if let Some(path) = &args.out {
        let format = args.format.unwrap_or_else(|| guess_format(path));
        let btu = result.witness_btu()?;
        write_file(path, &write_matrix(&btu.to_matrix(), format))?;
    }
    Ok(())
}

fn search_with_progress(cfg: &SearchConfig) -> Result<SearchResult> {
    let progress = SearchProgress::default();
    let (done, ticks) = mpsc::channel::<()>();
    let started = Instant::now();
    let result = std::thread::scope(|s| {
        let progress = &progress;
        s.spawn(move || {
            use std::sync::atomic::Ordering::Relaxed;
            while let Err(mpsc::RecvTimeoutError::Timeout) = ticks.recv_timeout(PROGRESS_INTERVAL) {
                eprintln!(
                    "progress: evaluated={} skipped={} best_girth={} elapsed={}s",
                    progress.evaluated.load(Relaxed),
                    progress.skipped.load(Relaxed),
                    progress.best_girth.load(Relaxed),
                    started.elapsed().as_secs()
                );
            }
        });
        let result = search_r3_observed(cfg, progress);
        let _ = done.send(());
        result
    });
    Ok(result?)
}

fn run_bounds(args: &BoundsArgs, out: &mut dyn Write) -> Result<()> {
    let text = if let Some(n) = args.table {
        render(&bound_table(n)?, args.kv)
    } else if let Some(g) = args.g {
        let report = bound_report(g, args.delta)?;
        if args.kv {
            tables::render_bound_report_kv(&report)
        } else {
            tables::render_bound_report(&report)
        }
    } else if let Some(m) = args.gmax {
        tables::render_gmax_report(&gmax_report(m, args.r)?)
    } else {
        unreachable!("clap requires one of --table, --g, --gmax")
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn bound_table(n: u8) -> Result<TextTable> {
    Ok(match n {
        2 => tables::table_2()?,
        3 => tables::table_3()?,
        4 => tables::table_4(),
        5 => tables::table_5()?,
        other => bail!("no bound table {other}"),
    })
}

fn render(t: &TextTable, kv: bool) -> String {
    if kv {
        t.render_kv()
    } else {
        t.render()
    }
}

fn run_tables(args: &TablesArgs, out: &mut dyn Write) -> Result<()> {
    let mut which = args.which.clone();
    which.sort_unstable();
    which.dedup();
    for (i, &n) in which.iter().enumerate() {
        if i > 0 {
            writeln!(out)?;
        }
        writeln!(out, "table {n}")?;
        let table = if n == 1 {
            let template = SearchConfig::new(5)
                .with_strategy(args.strategy)
                .with_fix_first(args.fix_first)
                .with_workers(args.jobs.map_or_else(default_jobs, |j| j as usize));
            emit_table_1(args.max_k as usize, &template)?
        } else {
            bound_table(n)?
        };
        out.write_all(render(&table, args.kv).as_bytes())?;
    }
    Ok(())
}

/// Searches k = 5..=max_k with `b = 1` and the template's other settings.
///
/// A failing k becomes a row with no girth and the error as its note; rows
/// that disagree with the published girth carry a note too.
pub fn emit_table_1(max_k: usize, template: &SearchConfig) -> Result<TextTable> {
    if max_k < 5 {
        bail!("table 1 starts at k = 5, got max_k = {max_k}");
    }
    let rows: Vec<Table1Row> = (5..=max_k)
        .map(|k| {
            let cfg = SearchConfig {
                k,
                b: 1,
                ..template.clone()
            };
            let (girth, note) = match search_r3(&cfg) {
                Ok(res) => {
                    let note = match table_1_reference(k) {
                        Some(expected) if expected != res.best_girth => {
                            Some(format!("differs from published {expected} ({})", cfg.strategy))
                        }
                        _ => None,
                    };
                    (Some(res.best_girth), note)
                }
                Err(e) => (None, Some(format!("error: {e}"))),
            };
            Table1Row {
                k,
                m: cfg.m(),
                r: 3,
                girth,
                note,
            }
        })
        .collect();
    Ok(tables::table_1(&rows))
}
