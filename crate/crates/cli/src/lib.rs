//! Argument parsing and command dispatch for the `fibolat` binary.

use std::io::{self, Write};

use clap::{Parser, Subcommand, ValueEnum};

use fibo_lattice::bijection::{table_csv, table_json};
use fibo_lattice::lattice::{check_scale, DEFAULT_MAX_POSET_SIZE};
use fibo_lattice::turan::{export_dot, export_edge_csv};
use fibo_lattice::verify::run_all;
use fibo_lattice::{
    bijection_table, build_report, enumerate_irreducibles, Direction, Execution, LatticeParams,
    StatKind, StatReport,
};

#[derive(Debug, Parser)]
#[command(
    name = "fibolat",
    version,
    about = "Compositions with bounded parts, their dominance lattice and the Turán graph"
)]
pub struct Cli {
    /// Refuse to walk lattices with more elements than this.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_POSET_SIZE)]
    pub max_poset_size: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List compositions of n with parts at most p, one per line.
    Enumerate {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = Filter::All)]
        filter: Filter,
    },
    /// Print the edge-to-irreducible table sorted by edge.
    Bijection {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = Side::Mi)]
        side: Side,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Print the Turán graph as an edge list or in DOT.
    Graph {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = GraphFormat::Edges)]
        format: GraphFormat,
    },
    /// Exact sum and average of a statistic over the meet-irreducibles.
    Stats {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum)]
        stat: Stat,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Run the invariant suite for all 2 <= p <= p-max, n <= n-max.
    Verify {
        #[arg(long)]
        n_max: u64,
        #[arg(long)]
        p_max: u64,
        /// Worker threads; 1 runs sequentially.
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Filter {
    All,
    Mi,
    Ji,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Side {
    Mi,
    Ji,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GraphFormat {
    Edges,
    Dot,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Stat {
    Parts,
    First,
    Wrec,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ReportFormat {
    Text,
    Csv,
    Json,
}

impl From<Stat> for StatKind {
    fn from(stat: Stat) -> Self {
        match stat {
            Stat::Parts => StatKind::Parts,
            Stat::First => StatKind::First,
            Stat::Wrec => StatKind::Wrec,
        }
    }
}

/// Anything that stops a command before it completes.
#[derive(Debug)]
pub enum CliError {
    Lattice(fibo_lattice::Error),
    Io(io::Error),
    Threads(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Lattice(e) => e.kind(),
            CliError::Io(_) => "Io",
            CliError::Threads(_) => "ThreadPool",
        }
    }

    /// One-line JSON object for the diagnostic stream.
    pub fn to_json(&self) -> String {
        let message = match self {
            CliError::Lattice(e) => e.to_string(),
            CliError::Io(e) => e.to_string(),
            CliError::Threads(msg) => msg.clone(),
        };
        serde_json::json!({ "error": self.kind(), "message": message }).to_string()
    }
}

impl From<fibo_lattice::Error> for CliError {
    fn from(e: fibo_lattice::Error) -> Self {
        CliError::Lattice(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Exit status of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    VerifyFailed,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::VerifyFailed => 1,
        }
    }
}

pub fn run(cli: &Cli, out: &mut impl Write) -> Result<Status, CliError> {
    let cap = cli.max_poset_size;
    match cli.command {
        Command::Enumerate { n, p, filter } => {
            let params = LatticeParams::new(n, p)?;
            check_scale(params, cap)?;
            match filter {
                Filter::All => {
                    for x in fibo_lattice::composition::Compositions::new(params) {
                        writeln!(out, "{x}")?;
                    }
                }
                Filter::Mi | Filter::Ji => {
                    let direction = if matches!(filter, Filter::Mi) {
                        Direction::Meet
                    } else {
                        Direction::Join
                    };
                    for x in enumerate_irreducibles(params, direction, cap)? {
                        writeln!(out, "{x}")?;
                    }
                }
            }
        }
        Command::Bijection { n, p, side, format } => {
            let params = LatticeParams::new(n, p)?;
            let direction = match side {
                Side::Mi => Direction::Meet,
                Side::Ji => Direction::Join,
            };
            let rows = bijection_table(params, direction);
            let text = match format {
                TableFormat::Csv => table_csv(&rows),
                TableFormat::Json => table_json(&rows),
            };
            out.write_all(text.as_bytes())?;
        }
        Command::Graph { n, p, format } => {
            let params = LatticeParams::new(n, p)?;
            let text = match format {
                GraphFormat::Edges => export_edge_csv(params),
                GraphFormat::Dot => export_dot(params),
            };
            out.write_all(text.as_bytes())?;
        }
        Command::Stats { n, p, stat, format } => {
            let report = build_report(LatticeParams::new(n, p)?, stat.into())?;
            match format {
                ReportFormat::Text => writeln!(out, "{report}")?,
                ReportFormat::Csv => {
                    writeln!(out, "{}\n{}", StatReport::CSV_HEADER, report.to_csv_row())?
                }
                ReportFormat::Json => writeln!(out, "{}", report.to_json())?,
            }
        }
        Command::Verify { n_max, p_max, jobs } => {
            // The largest lattice in the sweep bounds the work of every check.
            check_scale(LatticeParams::new(n_max, p_max)?, cap)?;
            let outcomes = with_jobs(jobs, |exec| run_all(p_max, n_max, exec))?;
            for outcome in &outcomes {
                writeln!(out, "{outcome}")?;
            }
            let failed = outcomes.iter().filter(|o| !o.passed()).count();
            writeln!(out, "{} checks, {failed} failed", outcomes.len())?;
            if failed > 0 {
                return Ok(Status::VerifyFailed);
            }
        }
    }
    Ok(Status::Success)
}

fn with_jobs<T: Send>(
    jobs: Option<usize>,
    f: impl FnOnce(Execution) -> T + Send,
) -> Result<T, CliError> {
    match jobs {
        None => Ok(f(Execution::default())),
        Some(0) => Err(fibo_lattice::Error::RangeError("--jobs must be positive".into()).into()),
        Some(1) => Ok(f(Execution::Sequential)),
        #[cfg(feature = "parallel")]
        Some(threads) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| CliError::Threads(e.to_string()))?;
            Ok(pool.install(|| f(Execution::Parallel)))
        }
        #[cfg(not(feature = "parallel"))]
        Some(_) => Ok(f(Execution::Sequential)),
    }
}
