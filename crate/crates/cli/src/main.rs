mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact computations in permutation group algebras of wreath-like groups.
#[derive(Debug, Parser)]
#[command(name = "permalg", version)]
pub struct Cli {
    /// Worker threads for parallel sections (results do not depend on it)
    #[arg(long, global = true, env = "PERMALG_JOBS")]
    pub jobs: Option<usize>,

    /// Seed for randomized checks
    #[arg(long, global = true, default_value_t = 20240601)]
    pub seed: u64,

    /// Write the report here instead of stdout
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Do not echo the configuration to stderr
    #[arg(long, short, global = true)]
    pub quiet: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct ModelArgs {
    /// Builtin model: sk-wr-s:K, sk-wr-a:K or a-wr-a:W
    #[arg(long, default_value = "sk-wr-a:2", conflicts_with = "table")]
    pub model: String,

    /// Custom split table file
    #[arg(long)]
    pub table: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Transform {
    Invert,
    Euler,
    A2c,
    C2l,
    A2l,
    Realizable,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum Format {
    Text,
    Tsv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lyndon words of a given weight over a weighted alphabet
    Lyndon {
        /// Letters per weight, e.g. 1,1 for one letter of weight 1 and one of weight 2
        #[arg(long, value_delimiter = ',', required = true)]
        alphabet: Vec<u32>,
        #[arg(long)]
        weight: u32,
        /// Print the words, not only the count
        #[arg(long)]
        list: bool,
    },
    /// Plain shuffle product of two words, e.g. b1.1-b1.2
    Shuffle { u: String, v: String },
    /// Product of two algebra elements (orbit keys or @file)
    Product {
        #[command(flatten)]
        model: ModelArgs,
        x: String,
        y: String,
    },
    /// Generator basis: S-bar matrix at a weight, or coordinates of an element
    Basis {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        weight: Option<u32>,
        /// Element (orbit key or @file) to express in the generator basis
        #[arg(long)]
        element: Option<String>,
    },
    /// The constructed ordering of orbits at a weight, with its Ramsey check
    Ramsey {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        weight: u32,
        /// Witness size (default 2 * weight)
        #[arg(long)]
        pad: Option<u32>,
    },
    /// Ordering conditions for joins of m- and n-orbits
    Verify {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        /// Witness size (default 2(m+n))
        #[arg(long)]
        pad: Option<u32>,
    },
    /// Ranks of subset inclusion matrices
    Kantor {
        #[arg(long)]
        d: u32,
        /// Omit e and f to sweep every admissible shape up to d
        #[arg(long, requires = "f")]
        e: Option<u32>,
        #[arg(long, requires = "e")]
        f: Option<u32>,
        #[arg(long)]
        weighted: bool,
        /// Random weight functions per shape
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Integer sequence transforms
    Transform {
        #[arg(value_enum)]
        op: Transform,
        /// Sequence file, one integer per line
        #[arg(long = "in", conflicts_with = "ones", required_unless_present = "ones")]
        input: Option<PathBuf>,
        /// Use the profile (1,..,1,0,..) with this many ones instead of a file
        #[arg(long)]
        ones: Option<usize>,
        #[arg(long)]
        order: usize,
        /// Inverse direction (invert, euler)
        #[arg(long)]
        inverse: bool,
        /// One comma separated line instead of one term per line
        #[arg(long)]
        csv: bool,
    },
    /// Every acceptance criterion with a summary table
    VerifyAll {
        /// Smaller sweeps and fewer random pairs
        #[arg(long)]
        quick: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    if !cli.quiet {
        eprintln!("# config: {cli:?}");
    }
    match commands::run(&cli) {
        Ok(outcome) => match outcome.write(cli.output.as_deref()) {
            Ok(()) => ExitCode::from(outcome.code()),
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(2)
            }
        },
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
