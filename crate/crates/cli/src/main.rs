//! `jramsey`: command line front end for the Ramsey graph searches.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ramsey_core::budget::Budget;
use ramsey_core::Error;

/// Exit statuses.
pub const EXIT_OK: u8 = 0;
pub const EXIT_INCOMPLETE: u8 = 2;
pub const EXIT_INVALID: u8 = 3;
pub const EXIT_INCONSISTENT: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "jramsey", version, about = "Exhaustive searches for (3,J_k)-Ramsey graphs and bounds on e(3,J_k,n)")]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// Single worker and reproducible output.
    #[arg(long, global = true)]
    pub deterministic: bool,

    /// Search budget as NODES or NODES:SECONDS.
    #[arg(long, global = true, env = "JRAMSEY_BUDGET")]
    pub budget: Option<BudgetArg>,

    /// Where to write the job manifest (default: beside --out, if any).
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,

    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Clone, Debug)]
pub struct BudgetArg(pub Budget);

impl FromStr for BudgetArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("bad budget `{s}`, expected NODES or NODES:SECONDS");
        let (nodes, secs) = match s.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (s, None),
        };
        let max_nodes: u64 = parse_count(nodes).ok_or_else(bad)?;
        let mut b = Budget::nodes(max_nodes);
        if let Some(secs) = secs {
            let t: f64 = secs.trim().parse().map_err(|_| bad())?;
            if !(t > 0.0) {
                return Err(bad());
            }
            b.max_time = Duration::from_secs_f64(t);
        }
        if max_nodes == 0 {
            return Err(bad());
        }
        Ok(BudgetArg(b))
    }
}

/// Accepts plain integers and forms like `1e9`.
fn parse_count(s: &str) -> Option<u64> {
    let s = s.trim();
    s.parse::<u64>().ok().or_else(|| {
        let f: f64 = s.parse().ok()?;
        (f >= 1.0 && f < 1.8e19 && f.fract() == 0.0).then_some(f as u64)
    })
}

#[derive(Args, Debug, Clone)]
pub struct Window {
    /// Least edge count kept.
    #[arg(long)]
    pub emin: Option<usize>,
    /// Largest edge count kept.
    #[arg(long)]
    pub emax: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct Tables {
    /// Bound ledger to load; repeat to merge several.
    #[arg(long = "table", required = true)]
    pub tables: Vec<PathBuf>,
    /// Use the closed-form lower bound 6n-13k for cells missing from the tables.
    #[arg(long)]
    pub allow_fallback: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum LevelArg {
    Graph,
    Vertex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Integrity,
    EdgeMinimal,
    DropAdd,
    Descent,
    Deficiency,
    Agreement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    G6,
    Edges,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Census of all (3,P;n)-graphs in an edge window.
    Enumerate {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        window: Window,
        /// Only the maximal triangle-free graphs.
        #[arg(long)]
        mtf: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// e(3,P,n) and the graphs attaining it.
    MinEdges {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Census of (3,J_k;n)-graphs built by gluing onto smaller censuses.
    Glue {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        window: Window,
        /// Host censuses for the smaller pattern; glued with any degree.
        /// Without hosts every smaller census is built recursively.
        #[arg(long, num_args = 1..)]
        hosts: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Degree histograms of (3,J_K;n,e)-graphs allowed by the counting constraints.
    Feasible {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        e: usize,
        #[command(flatten)]
        tables: Tables,
    },
    /// Lower bound on e(3,J_K,n) from degree sequences.
    Bound {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "vertex")]
        level: LevelArg,
        #[command(flatten)]
        tables: Tables,
    },
    /// Derives the row for J_K from the tables and writes the merged ledger.
    Propagate {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        from: Option<usize>,
        #[arg(long)]
        to: Option<usize>,
        #[command(flatten)]
        tables: Tables,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Upper bounds on R(3,J_K) from the first Infinite cell of each row.
    RamseyUpper {
        #[arg(long)]
        k: Option<usize>,
        #[arg(long = "table", required = true)]
        tables: Vec<PathBuf>,
    },
    /// Checks a circulant graph as a Ramsey lower-bound witness.
    CirculantVerify {
        /// Full spec `n: d1,d2,...`; alternative to --n with --dist.
        #[arg(long, conflicts_with_all = ["n", "dist"])]
        spec: Option<String>,
        #[arg(long, requires = "dist")]
        n: Option<usize>,
        #[arg(long, requires = "n")]
        dist: Option<String>,
        #[arg(long)]
        pattern: String,
        /// Write the witness as graph6 with a note line.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// All circulant Ramsey graphs of order n, one per multiplier class.
    CirculantSearch {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs a consistency suite over census files.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        census: PathBuf,
        /// Upper-window census for drop-add; second census for agreement.
        #[arg(long)]
        other: Option<PathBuf>,
        /// Residual-pattern censuses for descent.
        #[arg(long, num_args = 1..)]
        lower: Vec<PathBuf>,
        /// Edges added per graph in drop-add.
        #[arg(long, default_value_t = 1)]
        add: usize,
        /// Bound ledgers for deficiency.
        #[arg(long = "table")]
        tables: Vec<PathBuf>,
    },
    /// Canonical graph6 form of every input graph.
    Canon {
        /// Input file (default: standard input).
        #[arg(long)]
        input: Option<PathBuf>,
        /// Drop repeated isomorphism classes.
        #[arg(long)]
        unique: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Converts between graph6 and edge lists (`n: u-v u-v ...`).
    Convert {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "g6")]
        from: Format,
        #[arg(long, value_enum, default_value = "edges")]
        to: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::ResourceLimit(_) => EXIT_INCOMPLETE,
        Error::ExactConflict { .. } => EXIT_INCONSISTENT,
        Error::PatternTooLarge { .. }
        | Error::OrderTooLarge(_)
        | Error::MalformedInput(_)
        | Error::NotTriangleFree
        | Error::MissingTableEntry { .. }
        | Error::MissingCensus(_)
        | Error::Io(_) => EXIT_INVALID,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let workers = if cli.deterministic { Some(1) } else { cli.workers };
    if let Some(w) = workers {
        if w == 0 {
            eprintln!("error: --workers must be positive");
            return ExitCode::from(EXIT_INVALID);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w).build_global() {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(EXIT_INVALID);
        }
    }
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
