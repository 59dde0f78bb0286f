use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use extreme_sets::augment::augment;
use extreme_sets::pipeline::{extreme_sets_tree, PipelineConfig};
use extreme_sets::selfcheck::{run_selfcheck, SelfcheckConfig};
use extreme_sets::{Error, WeightedGraph};

const ORACLE_LIMIT: usize = 18;

/// Extreme sets trees and edge connectivity augmentation.
#[derive(Parser, Debug)]
#[command(name = "extremes", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the extreme sets tree of a graph.
    Extreme {
        /// Edge-list file (`n m` header, then `u v w` lines); `-` reads stdin.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        repeats: u64,
        /// Check the result against exhaustive enumeration (at most 18 vertices).
        #[arg(long)]
        oracle: bool,
        /// Write the tree here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print a minimum-weight edge set making the graph tau-edge-connected.
    Augment {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        tau: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare the pipeline with the exhaustive oracles on random graphs.
    Selfcheck {
        #[arg(long, default_value_t = 12)]
        nmax: usize,
        #[arg(long, default_value_t = 300)]
        seeds: u64,
    },
}

enum Failure {
    Usage(String),
    Run(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::TooLarge { .. } => Failure::Usage(e.to_string()),
            other => Failure::Run(other.to_string()),
        }
    }
}

fn read_graph(path: &PathBuf) -> Result<WeightedGraph, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
    };
    Ok(text.parse::<WeightedGraph>()?)
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Extreme { input, seed, repeats, oracle, output } => {
            let g = read_graph(&input)?;
            if oracle && g.n() > ORACLE_LIMIT {
                return Err(Failure::Usage(format!("--oracle needs at most {ORACLE_LIMIT} vertices, graph has {}", g.n())));
            }
            let cfg = PipelineConfig { repeats: repeats as usize, oracle_check: oracle, ..PipelineConfig::with_seed(seed) };
            let tree = extreme_sets_tree(&g, &cfg)?;
            let text = format!("# seed {seed}\n{}", tree.to_text());
            match output {
                Some(path) => {
                    fs::write(&path, text).map_err(|e| Failure::Run(format!("{}: {e}", path.display())))?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
        Command::Augment { input, tau, seed } => {
            if tau < 0 {
                return Err(Failure::Usage("--tau must be non-negative".into()));
            }
            let g = read_graph(&input)?;
            let a = augment(&g, tau, &PipelineConfig::with_seed(seed))?;
            let mut out = format!("# seed {seed}\n");
            for (u, v, w) in &a.edges {
                out.push_str(&format!("{u} {v} {w}\n"));
            }
            out.push_str(&format!("total_weight {}\n", a.total_weight));
            Ok(out)
        }
        Command::Selfcheck { nmax, seeds } => {
            if !(2..=ORACLE_LIMIT).contains(&nmax) {
                return Err(Failure::Usage(format!("--nmax must lie in 2..={ORACLE_LIMIT}")));
            }
            let report = run_selfcheck(&SelfcheckConfig { nmax, seeds, seed: 0 })?;
            if report.passed() {
                Ok(format!("{report}\n"))
            } else {
                Err(Failure::Run(report.to_string()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(out.as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
