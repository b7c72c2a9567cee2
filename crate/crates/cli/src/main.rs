mod commands;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};

use aqarith::paradox::{EqLevel, PolicyMode};
use aqarith::semantics::Backend;

#[global_allocator]
static GLOBAL: mimalloc::MiMalloc = mimalloc::MiMalloc;

/// Elementary arithmetic on signs, AQs and values.
#[derive(Parser, Debug)]
#[command(name = "aqarith", version, about)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Sign,
    Aq,
    AqBp,
    Value,
}

fn backend(s: &str) -> Result<Backend, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn backend_name(s: &str) -> Result<String, String> {
    backend(s).map(|_| s.to_string())
}

fn policy(s: &str) -> Result<PolicyMode, String> {
    s.parse()
}

fn aq_level(s: &str) -> Result<EqLevel, String> {
    match s.parse()? {
        EqLevel::Value => Err("the reasoner level is aq or aq-bp".into()),
        l => Ok(l),
    }
}

/// Term arguments given as `-` are read from standard input.
#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a sign into an AQ.
    Parse {
        #[arg(allow_hyphen_values = true)]
        #[arg(allow_hyphen_values = true)]
        term: String,
    },
    /// Compare two terms at an equality level.
    Eq {
        #[arg(long, value_enum, default_value_t = Level::Aq)]
        level: Level,
        #[arg(allow_hyphen_values = true)]
        lhs: String,
        #[arg(allow_hyphen_values = true)]
        rhs: String,
    },
    /// Evaluate a closed AQ in a semantic backend.
    Eval {
        #[arg(long, value_parser = backend, default_value = "decimal")]
        backend: Backend,
        #[arg(allow_hyphen_values = true)]
        term: String,
    },
    /// Rewrite a closed AQ to its decimal normal form.
    Normalize {
        /// Emit the rewrite trace as JSON lines.
        #[arg(long)]
        trace: bool,
        #[arg(allow_hyphen_values = true)]
        term: String,
    },
    /// Prove a closed equation in the foundational specification.
    Prove {
        /// Emit the derivation as JSON lines.
        #[arg(long)]
        trace: bool,
        #[arg(allow_hyphen_values = true)]
        lhs: String,
        #[arg(allow_hyphen_values = true)]
        rhs: String,
    },
    /// Check a derivation or rewrite trace in JSON lines.
    Check {
        /// File to read, or `-` for standard input.
        file: String,
    },
    /// Split a sumterm into its two summands.
    Split {
        #[arg(allow_hyphen_values = true)]
        #[arg(allow_hyphen_values = true)]
        term: String,
    },
    /// The k-th summand of a poly-infix sum, counted from 1.
    Summand {
        #[arg(allow_hyphen_values = true)]
        #[arg(allow_hyphen_values = true)]
        term: String,
        index: usize,
    },
    /// Substitute a term for a variable: [replacement/var]body.
    Subst {
        #[arg(allow_hyphen_values = true)]
        replacement: String,
        var: String,
        #[arg(allow_hyphen_values = true)]
        body: String,
    },
    /// let var = binding in body.
    Let {
        var: String,
        #[arg(allow_hyphen_values = true)]
        binding: String,
        #[arg(allow_hyphen_values = true)]
        body: String,
    },
    /// Validate a sumtuple (a,b;c).
    Tuple { tuple: String },
    /// Compare two backends up to a bound.
    Iso {
        /// Give twice: the two backends to compare. A backend without a
        /// `-nat`/`-int` suffix takes the sort of the other one.
        #[arg(long, value_parser = backend_name, num_args = 1, required = true)]
        backend: Vec<String>,
        #[arg(long, default_value_t = 64)]
        bound: u64,
        /// Print every checked identity.
        #[arg(long)]
        lines: bool,
    },
    /// Run a paradox script under a reasoning policy.
    Paradox {
        #[arg(long, value_parser = policy, default_value = "naive")]
        policy: PolicyMode,
        /// Equality taken as identity of AQs by the sumterm policy.
        #[arg(long, value_parser = aq_level, default_value = "aq")]
        level: EqLevel,
        /// Overrule conclusions against the foundational specification.
        #[arg(long)]
        foundational_check: bool,
        /// A bundled script name, a file, or `-`.
        #[arg(long, default_value = "canonical")]
        script: String,
    },
    /// The tower of equality levels and the operators that break them.
    Regress {
        #[arg(long)]
        without_counting: bool,
        #[arg(long)]
        without_operators: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Iso { backend, .. } = &cli.command {
        if backend.len() != 2 {
            Cli::command()
                .error(
                    ErrorKind::WrongNumberOfValues,
                    format!("--backend must be given exactly twice, got {}", backend.len()),
                )
                .exit();
        }
    }
    let result = commands::run(&cli.command);
    match (result, cli.format) {
        (Ok(out), Format::Text) => {
            print!("{}", out.text);
            if !out.text.ends_with('\n') {
                println!();
            }
            out.exit_code()
        }
        (Ok(out), Format::Json) => {
            println!("{}", out.json);
            out.exit_code()
        }
        (Err(e), Format::Text) => {
            eprintln!("error: {}: {}", e.kind, e.message);
            ExitCode::from(1)
        }
        (Err(e), Format::Json) => {
            println!("{}", e.to_json());
            ExitCode::from(1)
        }
    }
}
