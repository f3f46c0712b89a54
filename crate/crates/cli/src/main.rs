//! `parkfn`: enumerate, count, sample and verify identities for prime
//! parking functions from the command line.
//!
//! Exit codes: 0 success or pass, 1 predicate or verification failure,
//! 2 usage or parse error, 3 enumeration limit exceeded.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(
    name = "parkfn",
    version,
    about = "Prime parking functions: enumeration, counts, sampling and identity checks"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Largest n allowed for exhaustive enumeration.
    #[arg(long, global = true, env = "PARKFN_LIMIT", default_value_t = 9)]
    pub limit: usize,
    /// Output format. JSON lines by default; `sample` defaults to bare rows.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output to this file instead of standard output.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stat {
    Displacement,
    Des,
    Asc,
    Ties,
    Ones,
    /// Number of ℓ-forward differences for every residue ℓ.
    Fdiff,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Brute,
    Paths,
    PrimePaths,
    All,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Test whether a preference sequence parks (and is prime).
    Check {
        /// Comma-separated preferences, e.g. 3,2,1,1.
        prefs: String,
        /// Succeed only if the sequence is a prime parking function.
        #[arg(long)]
        prime: bool,
    },
    /// List all parking functions (or prime ones) of length n in
    /// lexicographic order.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        prime: bool,
        /// Extra statistic columns, in the order given.
        #[arg(long, value_enum, value_delimiter = ',')]
        stat: Vec<Stat>,
    },
    /// Closed-form counts.
    Count {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        prime: bool,
        /// Restrict to first entry j.
        #[arg(long)]
        first: Option<u64>,
        /// Restrict to exactly k ones.
        #[arg(long)]
        ones: Option<u64>,
        /// Residue ℓ for forward-difference set counts.
        #[arg(long)]
        ell: Option<u64>,
        /// Second residue m for paired set counts.
        #[arg(long)]
        m: Option<u64>,
        /// ℓ-forward-difference set S, comma-separated (empty for ∅).
        #[arg(long, allow_hyphen_values = true)]
        set: Option<String>,
        /// m-forward-difference set T, comma-separated (empty for ∅).
        #[arg(long)]
        tset: Option<String>,
    },
    /// Uniform random prime parking functions by circular rotation.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print a Monte-Carlo summary instead of the samples.
        #[arg(long)]
        report: bool,
    },
    /// Expected first entry and displacement over PPF_{n+1}.
    Expect {
        #[arg(long)]
        n: u64,
        /// Include the asymptotic estimates and their absolute errors.
        #[arg(long)]
        asymptotic: bool,
        /// Largest n for which exact rationals are printed.
        #[arg(long, default_value_t = 200)]
        exact_cutoff: u64,
    },
    /// Displacement enumerator of PPF_n.
    DispEnum {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
    /// Forward-difference generating functions of PPF_n.
    Genfun {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        ell: usize,
        /// Second residue; gives the two-variable generating function.
        #[arg(long)]
        m: Option<usize>,
        /// Print the closed form instead of the enumerated sum.
        #[arg(long)]
        closed: bool,
    },
    /// Łukasiewicz and Dyck encodings of a parking function, or decode a
    /// labeled Dyck path.
    Bijection {
        /// Comma-separated preferences.
        #[arg(required_unless_present = "dyck")]
        prefs: Option<String>,
        /// Dyck word over N/E to decode instead.
        #[arg(long, requires = "labels")]
        dyck: Option<String>,
        /// Labels of the north steps, comma-separated.
        #[arg(long)]
        labels: Option<String>,
    },
    /// Check one identity exactly.
    Verify {
        /// Identity id; see `parkfn verify --list`.
        #[arg(long, required_unless_present = "list")]
        theorem: Option<String>,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        /// Number of x variables for quasisymmetric checks (default n).
        #[arg(long)]
        vars: Option<usize>,
        /// Seed for randomized checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random points for randomized checks.
        #[arg(long, default_value_t = 50)]
        points: usize,
        /// Print the available identity ids.
        #[arg(long)]
        list: bool,
    },
    /// Abel sum A_n(x, y; p, q) with both recurrences and special cases.
    Abel {
        #[arg(long)]
        n: u32,
        /// Rational, e.g. 3/7.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let sink: Box<dyn Write> = match &cli.global.output {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(f),
            Err(e) => {
                eprintln!("error: cannot create {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        None => Box::new(io::stdout().lock()),
    };
    let mut out = BufWriter::new(sink);
    let code = match commands::run(&cli, &mut out) {
        Ok(code) => code,
        Err(e) if e.code == 0 => return ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {}", e.error);
            return ExitCode::from(e.code);
        }
    };
    match out.flush() {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        _ => ExitCode::from(code),
    }
}
