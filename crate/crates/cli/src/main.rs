//! `avgord`: average orders of finite groups, certified ratio constructions,
//! certificate verification and oracle cross-checks.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use avgord_core::{Error, DEFAULT_PRIME_CAP};
use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "avgord",
    version,
    about = "Average element orders of finite groups"
)]
struct Cli {
    /// Upper bound for the prime sieve.
    #[arg(long, global = true, env = "AVGORD_PRIME_CAP", default_value_t = DEFAULT_PRIME_CAP)]
    prime_cap: u64,

    /// Cap on brute-force permutation group enumeration.
    #[arg(long, global = true, default_value_t = avgord_core::oracle::DEFAULT_ENUM_CAP)]
    enum_cap: usize,

    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print ψ(G), |G| and o(G) for a group expression.
    O {
        /// For example `C(2)^2 x C(9)`, `D4 x C(3)`, `perm:gens.txt`; empty for the trivial group.
        expr: String,
    },
    /// Construct a certified pair whose ratio approximates a target.
    Approx(ApproxArgs),
    /// Re-check a certificate from first principles.
    Verify { path: PathBuf },
    /// Compare closed forms with brute-force enumeration.
    OracleCheck {
        /// Largest group order to enumerate (at most 4096).
        #[arg(long, default_value_t = 64)]
        max_order: u64,
    },
    /// Tabulate the ratio terms r_n and their logarithms.
    Seq {
        #[arg(short, default_value_t = 2)]
        m: u32,
        /// Number of rows.
        #[arg(short = 'N', long = "count", default_value_t = 10)]
        count: u64,
    },
}

#[derive(Args, Debug)]
pub(crate) struct ApproxArgs {
    /// Target ratio: a fraction `a/b` or a decimal such as `0.37` or `1e-3`.
    #[arg(long)]
    pub target: String,
    /// Relative tolerance.
    #[arg(long, default_value = "1/1000")]
    pub eps: String,
    /// For targets below 1, build a nonabelian nilpotent pair.
    #[arg(long)]
    pub nilpotent: bool,
    /// Built-in base pair: `D4C4` or `DihTwo(k)`. Chosen automatically if omitted.
    #[arg(long, conflicts_with_all = ["base_g", "base_h"])]
    pub base: Option<String>,
    /// Generator file of a custom base group.
    #[arg(long, requires = "base_h")]
    pub base_g: Option<PathBuf>,
    /// Generator file of a subgroup of the custom base group.
    #[arg(long, requires = "base_g")]
    pub base_h: Option<PathBuf>,
    /// Rank of the elementary abelian factors.
    #[arg(short, default_value_t = 2)]
    pub m: u32,
    /// Primes to keep out of the abelian part, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub exclude: Vec<u64>,
    /// Number of sequence terms the greedy may scan.
    #[arg(long, default_value_t = avgord_core::density::DEFAULT_MAX_TERMS)]
    pub max_terms: u64,
    /// Print the symbolic bound plan for the target instead of constructing.
    #[arg(long)]
    pub plan: bool,
    /// Certificate path.
    #[arg(long, default_value = "certificate.ogcert.json")]
    pub out: PathBuf,
}

pub(crate) struct Settings {
    pub prime_cap: u64,
    pub enum_cap: usize,
    pub json: bool,
}

/// Process exit status for each failure class.
pub(crate) mod exit {
    pub const OK: u8 = 0;
    pub const IO: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const BUDGET: u8 = 3;
    pub const BASE_INSUFFICIENT: u8 = 4;
    pub const RESOURCE: u8 = 5;
    pub const VERIFICATION: u8 = 6;
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::InvalidArgument(_) | Error::UnknownGroup(_) => exit::USAGE,
        Error::Budget { .. } => exit::BUDGET,
        Error::BaseInsufficient { .. } => exit::BASE_INSUFFICIENT,
        Error::Resource { .. } | Error::Overflow(_) => exit::RESOURCE,
        Error::Io { .. } | Error::Internal(_) => exit::IO,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let settings = Settings {
        prime_cap: cli.prime_cap,
        enum_cap: cli.enum_cap,
        json: cli.json,
    };
    let result = match cli.command {
        Command::O { expr } => commands::o(&settings, &expr),
        Command::Approx(args) => commands::approx(&settings, &args),
        Command::Verify { path } => commands::verify(&settings, &path),
        Command::OracleCheck { max_order } => commands::oracle_check(&settings, max_order),
        Command::Seq { m, count } => commands::seq(&settings, m, count),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::BaseInsufficient { plan, .. } = &e {
                output::print_plan(&settings, plan);
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
