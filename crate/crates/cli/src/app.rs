//! Command line surface: `gen`, `solve`, `oracle`, `bench`, `guillotine`,
//! `render`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use tspn_core::geom::Tour;
use tspn_core::guillotine::{check_m_guillotine, guillotine_transform, EdgeSet, ProofLog};
use tspn_core::oracle::{discretized_opt, lower_bound, OracleParams};

use crate::bench::{bench, solve, write_csv, Algorithm, BenchSpec, SolveError};
use crate::generate::{generate, GenParams, Generator};
use crate::instance::{parse_instance, read, write, Instance, InstanceError, TourFile};
use crate::svg::write_svg;

#[derive(Debug, Parser)]
#[command(name = "tspn", version, about = "Approximation algorithms for TSP with neighborhoods")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SeedArg {
    /// Random seed (tie-breaking and generation)
    #[arg(long, env = "TSPN_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate an instance file
    Gen {
        /// Generator: disjoint-unit-disks, unit-disks, same-diameter, parallel-segments, lines, mixed
        #[arg(long)]
        family: Generator,
        #[arg(long)]
        n: usize,
        /// Side of the placement box (generator default when omitted)
        #[arg(long = "box")]
        side: Option<f64>,
        #[command(flatten)]
        seed: SeedArg,
        /// Output file (stdout when omitted)
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run an approximation algorithm on an instance
    Solve {
        #[arg(long)]
        input: PathBuf,
        /// Algorithm (family default when omitted)
        #[arg(long)]
        algo: Option<Algorithm>,
        #[command(flatten)]
        seed: SeedArg,
        /// Write the tour as JSON
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Near-exact optimum of a small instance (at most 7 regions)
    Oracle {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Generate instances, solve them and report ratios as CSV
    Bench {
        #[arg(long)]
        family: Generator,
        #[arg(long)]
        algo: Option<Algorithm>,
        #[arg(long)]
        n: usize,
        /// Largest instance size; sizes are drawn from n..=n-max
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long = "box")]
        side: Option<f64>,
        #[command(flatten)]
        seed: SeedArg,
        /// CSV output (stdout when omitted)
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Apply the m-guillotine transformation to the center tour of disjoint disks
    Guillotine {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[command(flatten)]
        seed: SeedArg,
        /// Write the proof log as JSON
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Draw an instance and any number of tour files
    Render {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        tour: Vec<PathBuf>,
        #[arg(long)]
        svg: PathBuf,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] InstanceError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Internal(String),
}

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    BoundViolation,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Solve(SolveError::Misses { .. }) => 1,
            CliError::Internal(_) => 1,
            _ => 2,
        }
    }
}

fn emit(output: Option<&Path>, s: &str) -> Result<(), CliError> {
    match output {
        Some(p) => write(p, s)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(s.as_bytes()).map_err(|e| CliError::Internal(e.to_string()))?;
        }
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn svg_for(inst: &Instance, tours: Vec<(Tour<f64>, String)>, path: Option<&Path>) -> Result<(), CliError> {
    if let Some(p) = path {
        write_svg(inst, &tours, p)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct GuillotineReport<'a> {
    instance: &'a str,
    m: usize,
    m_guillotine: bool,
    within_bound: bool,
    log: &'a ProofLog<f64>,
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Gen { family, n, side, seed, output } => {
            let mut params = GenParams::for_generator(family);
            if let Some(s) = side {
                params.side = s;
            }
            let inst = generate(family, n, &params, seed.seed).map_err(|e| CliError::Usage(e.to_string()))?;
            emit(output.as_deref(), &inst.to_json())?;
            Ok(Outcome::Success)
        }
        Command::Solve { input, algo, seed, output, svg } => {
            let inst = parse_instance(&input)?;
            let algo = algo.unwrap_or(Algorithm::default_for(inst.family));
            let sol = solve(&inst, algo, seed.seed)?;
            let file = TourFile::new(&inst.name, algo.as_str(), &sol.tour);
            match output {
                Some(p) => write(&p, &file.to_json())?,
                None => println!("{}\t{}\t{}", inst.name, algo, sol.tour.len()),
            }
            svg_for(&inst, vec![(sol.tour, algo.as_str().into())], svg.as_deref())?;
            Ok(Outcome::Success)
        }
        Command::Oracle { input, output, svg } => {
            let inst = parse_instance(&input)?;
            let r = discretized_opt(&inst.regions, &OracleParams::default()).map_err(|e| CliError::Usage(e.to_string()))?;
            let lb = lower_bound(&inst.regions);
            println!("{}\toracle\t{}\tlower_bound\t{}\tk\t{}\trounds\t{}", inst.name, r.length, lb, r.k, r.rounds);
            if let Some(p) = output {
                write(&p, &TourFile::new(&inst.name, "oracle", &r.tour).to_json())?;
            }
            svg_for(&inst, vec![(r.tour, "oracle".into())], svg.as_deref())?;
            // the lower bound must never exceed the oracle
            Ok(if lb <= r.length + 1e-6 { Outcome::Success } else { Outcome::BoundViolation })
        }
        Command::Bench { family, algo, n, n_max, count, side, seed, output } => {
            let mut spec = BenchSpec::new(family, n, count, seed.seed);
            spec.n_max = n_max.unwrap_or(n).max(n);
            if let Some(s) = side {
                spec.params.side = s;
            }
            let algo = algo.unwrap_or(Algorithm::default_for(family.family()));
            let rows = bench(&spec, algo)?;
            let mut buf = Vec::new();
            write_csv(&rows, &mut buf).map_err(|e| CliError::Internal(e.to_string()))?;
            emit(output.as_deref(), &String::from_utf8(buf).expect("csv is utf-8"))?;
            Ok(if rows.iter().any(|r| r.violation()) { Outcome::BoundViolation } else { Outcome::Success })
        }
        Command::Guillotine { input, m, seed, output, svg } => {
            if m == 0 {
                return Err(CliError::Usage("--m must be positive".into()));
            }
            let inst = parse_instance(&input)?;
            let sol = solve(&inst, Algorithm::DisjointCenter, seed.seed)?;
            let edges = EdgeSet::from_tour(&sol.tour).map_err(|e| CliError::Internal(e.to_string()))?;
            let disks = inst.disks();
            let (out, log) = guillotine_transform(&edges, &disks, m).map_err(|e| CliError::Internal(e.to_string()))?;
            let ok_check = check_m_guillotine(&out.edges, &disks, &log.window, m);
            let ok_bound = log.within_bound(1e-6) && log.red_total <= log.red_ceiling + 1e-6 && log.blue_total <= log.blue_ceiling + 1e-6;
            println!(
                "{}\tm\t{}\tinput_length\t{}\tadded\t{}\tbound\t{}\tcuts\t{}\tm_guillotine\t{}",
                inst.name,
                m,
                log.input_length,
                log.added_length,
                log.bound,
                log.cuts.len(),
                ok_check
            );
            if let Some(p) = output {
                let rep = GuillotineReport { instance: &inst.name, m, m_guillotine: ok_check, within_bound: ok_bound, log: &log };
                write(&p, &to_json(&rep))?;
            }
            let added = Tour::from_elements(
                out.edges[edges.edges.len()..].iter().map(|s| tspn_core::geom::TourElement::Seg(*s)).collect(),
            );
            svg_for(&inst, vec![(sol.tour, "center tour".into()), (added, format!("{m}-guillotine spans"))], svg.as_deref())?;
            Ok(if ok_check && ok_bound { Outcome::Success } else { Outcome::BoundViolation })
        }
        Command::Render { input, tour, svg } => {
            let inst = parse_instance(&input)?;
            let mut tours = Vec::new();
            for p in &tour {
                let f = TourFile::from_json(&read(p)?)?;
                tours.push((f.tour()?, f.algorithm.clone()));
            }
            write_svg(&inst, &tours, &svg)?;
            Ok(Outcome::Success)
        }
    }
}

/// Parses arguments, runs, and returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli) {
        Ok(Outcome::Success) => 0,
        Ok(Outcome::BoundViolation) => {
            eprintln!("tspn: bound violated");
            1
        }
        Err(e) => {
            eprintln!("tspn: {e}");
            e.exit_code()
        }
    }
}

