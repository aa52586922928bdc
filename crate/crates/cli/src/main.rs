//! `cdlat`: Chermak–Delgado lattices from the command line.

mod output;
mod suites;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;

use cdlat::cd::Analysis;
use cdlat::group::{GroupPredicates, MAX_ORDER};
use cdlat::groupspec::GroupSpec;
use cdlat::subgroups::{EnumConfig, DEFAULT_MAX_CLOSURE_STEPS, DEFAULT_MAX_SUBGROUPS};

use output::LatticeRecord;
use suites::Selection;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] cdlat::Error),
    #[error("{0}: {1}")]
    Io(PathBuf, std::io::Error),
    #[error("group order {order} exceeds --max-order {limit}")]
    TooLarge { order: usize, limit: usize },
    #[error("{0} verification failures")]
    Failed(usize),
    #[error("{0}")]
    Setup(String),
}

/// Resource limits. Every flag can also be set through the environment.
#[derive(Debug, Args)]
struct Budget {
    /// Largest group order accepted, also the coset enumeration bound.
    #[arg(long, env = "CDL_MAX_ORDER", default_value_t = MAX_ORDER, global = true)]
    max_order: usize,
    /// Largest number of subgroups enumerated.
    #[arg(long, env = "CDL_MAX_SUBGROUPS", default_value_t = DEFAULT_MAX_SUBGROUPS, global = true)]
    max_subgroups: usize,
    /// Element steps allowed for a single subgroup join.
    #[arg(long, env = "CDL_MAX_CLOSURE_STEPS", default_value_t = DEFAULT_MAX_CLOSURE_STEPS, global = true)]
    max_closure_steps: usize,
    /// Wall-clock limit in seconds for subgroup enumeration (0 = none).
    #[arg(long, env = "CDL_TIME_LIMIT", default_value_t = 0, global = true)]
    time_limit: u64,
    /// Worker threads (0 = one per core).
    #[arg(long, env = "CDL_THREADS", default_value_t = 0, global = true)]
    threads: usize,
    /// Run single-threaded without the worker pool.
    #[arg(long, env = "CDL_SEQUENTIAL", global = true)]
    sequential: bool,
    /// Report enumeration progress on stderr.
    #[arg(long, env = "CDL_PROGRESS", global = true)]
    progress: bool,
}

impl Budget {
    fn config(&self) -> EnumConfig {
        let progress: Option<cdlat::subgroups::ProgressFn> = self.progress.then(|| {
            Arc::new(|order: usize, layer: usize, total: usize| {
                eprintln!("subgroups of order {order}: {layer} (total {total})");
            }) as cdlat::subgroups::ProgressFn
        });
        EnumConfig {
            max_subgroups: self.max_subgroups,
            max_closure_steps: self.max_closure_steps,
            parallel: cdlat::par::AVAILABLE && !self.sequential,
            deadline: (self.time_limit > 0).then(|| Instant::now() + Duration::from_secs(self.time_limit)),
            progress,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "cdlat", version, about = "Chermak-Delgado lattices of finite groups")]
struct Cli {
    #[command(flatten)]
    budget: Budget,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Construct a group and print its basic invariants.
    Build {
        spec: GroupSpec,
        /// Print the invariants as JSON.
        #[arg(long)]
        json: bool,
        /// Also print the multiplication table.
        #[arg(long)]
        table: bool,
    },
    /// Compute the CD lattice.
    Cd {
        spec: GroupSpec,
        /// Write the Hasse diagram in DOT format ("-" for stdout).
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write the lattice as JSON ("-" for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
        /// Include member element lists in the JSON output.
        #[arg(long)]
        elements: bool,
    },
    /// Run a verification suite over the corpus.
    Verify {
        /// Suite name or "all".
        suite: Selection,
        /// Sweep size for dic (n), gdic (|A|) and singleton (|A|).
        #[arg(long)]
        max_n: Option<usize>,
        /// Add the order 5^6 group to the corpus.
        #[arg(long)]
        long: bool,
        /// Print details for every report.
        #[arg(long, short)]
        verbose: bool,
        /// Write the reports as JSON ("-" for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print the measure and centralizer of every subgroup.
    MeasureTable {
        spec: GroupSpec,
        /// Print as JSON.
        #[arg(long)]
        json: bool,
    },
}

fn write_out(path: &Path, text: &str) -> Result<(), CliError> {
    if path == Path::new("-") {
        print!("{text}");
        Ok(())
    } else {
        std::fs::write(path, text).map_err(|e| CliError::Io(path.to_path_buf(), e))
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn build(spec: &GroupSpec, budget: &Budget) -> Result<cdlat::group::GroupTable, CliError> {
    let g = spec.build(budget.max_order)?;
    if g.order() > budget.max_order {
        return Err(CliError::TooLarge {
            order: g.order(),
            limit: budget.max_order,
        });
    }
    Ok(g)
}

#[derive(Serialize)]
struct BuildRecord {
    spec: String,
    center_order: usize,
    derived_order: usize,
    #[serde(flatten)]
    predicates: GroupPredicates,
}

#[derive(Serialize)]
struct MeasureRow {
    id: usize,
    order: usize,
    centralizer: usize,
    measure: u64,
    member: bool,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let budget = &cli.budget;
    #[cfg(feature = "parallel")]
    if budget.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(budget.threads)
            .build_global()
            .map_err(|e| CliError::Setup(e.to_string()))?;
    }
    match cli.command {
        Command::Build { spec, json, table } => {
            let g = build(&spec, budget)?;
            let rec = BuildRecord {
                spec: spec.to_string(),
                center_order: g.center().order(),
                derived_order: g.derived_subgroup().order(),
                predicates: g.predicates(),
            };
            if json {
                print!("{}", to_json(&rec));
            } else {
                let p = &rec.predicates;
                println!("group        {}", rec.spec);
                println!("order        {}", p.order);
                println!("abelian      {}", p.is_abelian);
                match p.nilpotency_class {
                    Some(c) => println!("class        {c}"),
                    None => println!("class        not nilpotent"),
                }
                println!("exponent     {}", p.exponent);
                println!("|Z(G)|       {}", rec.center_order);
                println!("|G'|         {}", rec.derived_order);
                println!("max class    {}", p.is_maximal_class);
                println!("metabelian   {}", p.is_metabelian);
            }
            if table {
                for x in 0..g.order() {
                    let row: Vec<String> = g.row(x).iter().map(|v| v.to_string()).collect();
                    println!("{}", row.join(" "));
                }
            }
        }
        Command::Cd {
            spec,
            dot,
            json,
            elements,
        } => {
            let an = Analysis::new(build(&spec, budget)?, &budget.config())?;
            let rec = LatticeRecord::new(&spec.to_string(), &an, elements);
            let to_stdout = |p: &Option<PathBuf>| p.as_deref() == Some(Path::new("-"));
            if !to_stdout(&json) && !to_stdout(&dot) {
                print!("{}", output::text(&rec));
            }
            if let Some(path) = &json {
                write_out(path, &to_json(&rec))?;
            }
            if let Some(path) = &dot {
                write_out(path, &output::dot(&rec))?;
            }
        }
        Command::Verify {
            suite,
            max_n,
            long,
            verbose,
            json,
        } => {
            let opts = suites::Options {
                max_n,
                long,
                order_bound: budget.max_order,
                config: budget.config(),
                progress: budget.progress,
            };
            let reports = suites::run(&suite, &opts)?;
            match &json {
                Some(path) => write_out(path, &to_json(&reports))?,
                None => print!("{}", suites::render(&reports, verbose)),
            }
            if json.as_deref().is_some_and(|p| p != Path::new("-")) {
                print!("{}", suites::render(&reports, verbose));
            }
            let failures = reports.iter().filter(|r| r.failed()).count();
            if failures > 0 {
                return Err(CliError::Failed(failures));
            }
        }
        Command::MeasureTable { spec, json } => {
            let an = Analysis::new(build(&spec, budget)?, &budget.config())?;
            let m_star = an.lattice.m_star;
            let rows: Vec<MeasureRow> = (0..an.subgroups.len())
                .map(|i| MeasureRow {
                    id: i,
                    order: an.subgroups.get(i).order(),
                    centralizer: an.table.centralizer(i),
                    measure: an.table.measure(i),
                    member: an.table.measure(i) == m_star,
                })
                .collect();
            if json {
                print!("{}", to_json(&rows));
            } else {
                println!("{:>6} {:>8} {:>11} {:>12} {:>6}", "id", "order", "centralizer", "measure", "in CD");
                for r in rows {
                    println!(
                        "{:>6} {:>8} {:>11} {:>12} {:>6}",
                        r.id,
                        r.order,
                        r.centralizer,
                        r.measure,
                        if r.member { "*" } else { "" }
                    );
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failed(n)) => {
            eprintln!("{n} verification failures");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
