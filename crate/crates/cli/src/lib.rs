//! The `unitlab` command line: every subcommand writes one JSON (or JSONL)
//! artifact and prints a short summary.
//!
//! Exit statuses: 0 success, 1 bad input, 2 a verified property failed,
//! 3 a budget or search box was exhausted.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

mod commands;
pub mod failure;
pub mod formats;
mod report;

use failure::Failure;

#[derive(Parser, Debug)]
#[command(name = "unitlab", version, about = "Exact experiments with unit equations a·x = 1 over finitely generated groups")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct GlobalArgs {
    /// Exponent box for enumeration and example scans.
    #[arg(long = "box", global = true, env = "UNITLAB_BOX")]
    pub box_size: Option<u32>,
    /// Work cap of the main search (points, nodes, directions or subsets).
    #[arg(long, global = true, env = "UNITLAB_BUDGET", value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: Option<u64>,
    #[arg(long, global = true, env = "UNITLAB_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true, env = "UNITLAB_WORKERS", value_parser = clap::value_parser!(u64).range(1..))]
    #[serde(skip)]
    pub workers: Option<u64>,
    /// Artifact path (default: `<command>.json`, or `.jsonl` for solution streams).
    #[arg(long, global = true, env = "UNITLAB_OUT")]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    /// `exhaustive` or `sampled` for lemma41; `exact` or `greedy` for cover.
    #[arg(long, global = true, env = "UNITLAB_MODE")]
    pub mode: Option<String>,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Factor a rational over a prime basis.
    Factor {
        value: String,
        /// Comma-separated primes; defaults to the support of the value.
        #[arg(long)]
        basis: Option<String>,
    },
    /// Test membership of a tuple in the instance's group.
    Member {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        x: String,
    },
    /// Test Γ-equivalence of the instance's coefficients with another tuple.
    Equiv {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        b: String,
    },
    /// Enumerate solutions inside the exponent box (JSONL).
    Enumerate {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Class label of the instance relative to its solution list.
    Classify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = 1)]
        direction_box: u32,
    },
    /// Minimum cover of points by proper subspaces.
    Cover {
        /// Point array, `{"points": …}`, an instance with `solutions`, or solution JSONL.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Degenerate direction search with kernel and sign specialization.
    Direction {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = 1)]
        direction_box: u32,
        /// Explicit direction rows, e.g. `1,1,0;1,1,0`.
        #[arg(long)]
        c: Option<String>,
    },
    /// Direction, kernel, claim check and the covering family of hyperplanes.
    Family {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = 1)]
        direction_box: u32,
        #[arg(long)]
        c: Option<String>,
    },
    /// Check that every set of (n−1)!+1 permutations has n with nonzero determinant.
    Lemma41 {
        #[arg(long)]
        n: usize,
        /// Subsets drawn in sampled mode.
        #[arg(long, default_value_t = 100_000)]
        count: u64,
        /// Cap on permutation sets expanded when building T.
        #[arg(long)]
        pattern_budget: Option<u64>,
        /// Also search size-(n−1)! subsets with every determinant zero.
        #[arg(long)]
        sharpness: bool,
    },
    /// Build an equation whose n! permuted solutions need n subspaces.
    Example4 {
        #[arg(long)]
        n: usize,
        /// Comma-separated generators of Γ₁ ⊆ ℚ*.
        #[arg(long, default_value = "2")]
        gamma1: String,
        #[arg(long)]
        torsion: bool,
    },
    /// Pairwise Γ₁-inequivalent values b = u₁ + ⋯ + uₙ.
    Bset {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "2")]
        gamma1: String,
        #[arg(long)]
        torsion: bool,
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
    /// Merge artifacts into one summary.
    Report { paths: Vec<PathBuf> },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Factor { .. } => "factor",
            Command::Member { .. } => "member",
            Command::Equiv { .. } => "equiv",
            Command::Enumerate { .. } => "enumerate",
            Command::Classify { .. } => "classify",
            Command::Cover { .. } => "cover",
            Command::Direction { .. } => "direction",
            Command::Family { .. } => "family",
            Command::Lemma41 { .. } => "lemma41",
            Command::Example4 { .. } => "example4",
            Command::Bset { .. } => "bset",
            Command::Report { .. } => "report",
        }
    }
}

pub enum Artifact {
    Json(Value),
    Lines(Vec<Value>),
}

/// What a command produced. `failed` carries a verification or budget
/// failure discovered after the artifact was assembled; the artifact is
/// still written.
pub struct Output {
    pub artifact: Artifact,
    pub summary: String,
    pub failed: Option<Failure>,
}

impl Output {
    fn ok(artifact: Value, summary: String) -> Self {
        Output { artifact: Artifact::Json(artifact), summary, failed: None }
    }
}

/// The config embedded in artifacts: everything except the worker count
/// and output path, so artifacts compare byte for byte across both.
pub fn embedded_config(cli: &Cli) -> Value {
    json!({
        "command": cli.command.name(),
        "args": serde_json::to_value(&cli.command).expect("serializable"),
        "box": cli.global.box_size,
        "budget": cli.global.budget,
        "seed": cli.global.seed,
        "mode": cli.global.mode,
    })
}

fn write(cli: &Cli, artifact: &Artifact) -> Result<PathBuf, Failure> {
    let (text, ext) = match artifact {
        Artifact::Json(v) => (serde_json::to_string_pretty(v).expect("json") + "\n", "json"),
        Artifact::Lines(ls) => {
            (ls.iter().map(|l| serde_json::to_string(l).expect("json") + "\n").collect::<String>(), "jsonl")
        }
    };
    let path = cli.global.out.clone().unwrap_or_else(|| PathBuf::from(format!("{}.{ext}", cli.command.name())));
    fs::write(&path, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    let config = embedded_config(cli);
    match &cli.global.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(*w as usize)
            .build()
            .map_err(|e| Failure::Input(format!("worker pool: {e}")))?
            .install(|| commands::dispatch(cli, &config)),
        None => commands::dispatch(cli, &config),
    }
}

/// Runs the command line and returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let out = match execute(&cli) {
        Ok(o) => o,
        Err(f) => {
            eprintln!("{f}");
            return f.exit_code();
        }
    };
    match write(&cli, &out.artifact) {
        Ok(path) => {
            println!("{}", out.summary);
            println!("artifact: {}", path.display());
        }
        Err(f) => {
            eprintln!("{f}");
            return f.exit_code();
        }
    }
    match out.failed {
        Some(f) => {
            eprintln!("{f}");
            f.exit_code()
        }
        None => 0,
    }
}
