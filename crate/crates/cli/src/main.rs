use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use tightrank_core::elevator::{assign_ranks, describe, Rules};
use tightrank_core::hoa::{parse_hoa, serialize_hoa};
use tightrank_core::oracle::{complement_check, tabakov_vardi};
use tightrank_core::pipeline::{run, run_semideterminize, PipelineConfig, TrubSource};
use tightrank_core::scc::{condense, is_elevator, prepare};
use tightrank_core::Ba;

#[derive(Parser)]
#[command(name = "tightrank", version, about = "Rank-based Büchi complementation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Complement a Büchi automaton and print it as HOA.
    Complement {
        /// HOA file, or `-` for standard input.
        file: PathBuf,
        #[command(flatten)]
        pipeline: PipelineArgs,
        /// Print statistics to standard error.
        #[arg(long)]
        stats: bool,
        /// Print statistics only, no automaton.
        #[arg(long)]
        stats_only: bool,
    },
    /// Print the component labels and rank bounds.
    Analyze { file: PathBuf },
    /// Semi-determinize an elevator automaton.
    Semidet { file: PathBuf },
    /// Generate a random automaton.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        symbols: usize,
        #[arg(long, default_value_t = 1.5)]
        td: f64,
        #[arg(long, default_value_t = 0.5)]
        ad: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check the complement against a bounded lasso-word oracle.
    Check {
        file: PathBuf,
        #[command(flatten)]
        pipeline: PipelineArgs,
        #[arg(long, default_value_t = 3)]
        stem: usize,
        #[arg(long = "loop", default_value_t = 4)]
        cycle: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TrubArg {
    Trivial,
    Elevator,
    General,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Pass {
    Outer,
    Inner,
}

#[derive(Args)]
struct PipelineArgs {
    #[arg(long, value_enum, default_value = "trivial")]
    trub: TrubArg,
    /// Propagation passes, comma separated.
    #[arg(long, value_enum, value_delimiter = ',')]
    propagate: Vec<Pass>,
    /// Deelevate elevator inputs first.
    #[arg(long)]
    deelevate: bool,
    /// Trim the complement.
    #[arg(long)]
    trim: bool,
}

impl PipelineArgs {
    fn config(&self) -> PipelineConfig {
        let mut cfg = PipelineConfig::new(match self.trub {
            TrubArg::Trivial => TrubSource::Trivial,
            TrubArg::Elevator => TrubSource::Elevator,
            TrubArg::General => TrubSource::General,
        });
        cfg.propagate.outer = self.propagate.contains(&Pass::Outer);
        cfg.propagate.inner = self.propagate.contains(&Pass::Inner);
        cfg.deelevate_first = self.deelevate;
        cfg.postprocess_trim = self.trim;
        cfg
    }
}

/// Errors that map to exit code 2.
#[derive(Debug)]
struct UsageError(anyhow::Error);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(e: impl Into<anyhow::Error>) -> anyhow::Error {
    UsageError(e.into()).into()
}

fn load(path: &PathBuf) -> Result<Ba> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
        s
    } else {
        std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))
            .map_err(usage)?
    };
    parse_hoa(&text)
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(usage)
}

fn execute(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Complement {
            file,
            pipeline,
            stats,
            stats_only,
        } => {
            let ba = load(&file)?;
            let mut cfg = pipeline.config();
            cfg.stats_only = stats_only;
            let out = run(&ba, &cfg).map_err(usage)?;
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            if !stats_only {
                print!("{}", serialize_hoa(&out.complement.ba));
            }
            if stats || stats_only {
                let s = &out.complement.stats;
                eprintln!(
                    "waiting={} tight={} total={} max_rank={} time_ms={}",
                    s.waiting,
                    s.tight,
                    s.total(),
                    s.max_rank,
                    out.elapsed.as_millis()
                );
            }
        }
        Command::Analyze { file } => {
            let ba = prepare(&load(&file)?);
            let elevator = is_elevator(&ba);
            let rules = if elevator { Rules::Elevator } else { Rules::General };
            let analysis = assign_ranks(&ba, rules)?;
            print!("{}", describe(&ba, &analysis));
            println!("elevator: {elevator}");
            println!("depth: {}", condense(&ba).depth());
            println!("max_bound: {}", analysis.max_bound());
        }
        Command::Semidet { file } => {
            let ba = load(&file)?;
            let sd = run_semideterminize(&ba).map_err(usage)?;
            print!("{}", serialize_hoa(&sd));
        }
        Command::Gen {
            n,
            symbols,
            td,
            ad,
            seed,
        } => {
            let ba = tabakov_vardi(n, symbols, td, ad, seed).map_err(usage)?;
            print!("{}", serialize_hoa(&ba));
        }
        Command::Check {
            file,
            pipeline,
            stem,
            cycle,
        } => {
            let ba = load(&file)?;
            let out = run(&ba, &pipeline.config()).map_err(usage)?;
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            match complement_check(&ba, &out.complement.ba, stem, cycle)? {
                None => println!("ok: no counterexample up to stem {stem}, loop {cycle}"),
                Some(w) => {
                    println!("counterexample: {w}");
                    return Ok(ExitCode::from(1));
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}

