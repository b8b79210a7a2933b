use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sympgt_core::io::{OutputFormat, RunConfig};
use sympgt_core::{Error, HighestWeight};

mod commands;

/// Weight bases and exact generator matrices for irreducible sp(2n) modules.
#[derive(Debug, Parser)]
#[command(name = "sympgt", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the patterns indexing the basis, in canonical order.
    Enumerate(Common),
    /// Print the dimension (pattern count and Weyl formula).
    Dim(Common),
    /// Print the exact matrix of one generator F[i,j].
    Matrix {
        #[command(flatten)]
        common: Common,
        /// Generator as F[i,j] with nonzero signed indices.
        #[arg(long, allow_hyphen_values = true)]
        generator: String,
    },
    /// Run every consistency suite and emit a JSON report.
    Verify(Common),
    /// Restriction to the rank n-1 subalgebra.
    Branch(Common),
    /// Weight multiplicities of the basis.
    Character(Common),
    /// Scalar value of the quadratic Casimir.
    Casimir(Common),
}

#[derive(Debug, Args)]
struct Common {
    /// Highest weight as comma-separated integers, 0 ≥ λ_1 ≥ … ≥ λ_n.
    #[arg(long = "lambda", allow_hyphen_values = true)]
    lambda: String,
    /// Read --lambda as labels a_1 ≥ … ≥ a_n ≥ 0 (λ_i = −a_{n+1−i}).
    #[arg(long)]
    positive_labels: bool,
    /// Output format for matrices.
    #[arg(long, default_value = "exact-json")]
    format: String,
    /// Write output to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Maximum number of basis vectors to materialize.
    #[arg(long, default_value_t = sympgt_core::DEFAULT_GUARD)]
    guard: usize,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

impl Common {
    fn highest_weight(&self) -> Result<HighestWeight, Error> {
        let entries = self
            .lambda
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad integer {s:?} in --lambda")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if self.positive_labels {
            HighestWeight::from_nonnegative(&entries)
        } else {
            HighestWeight::new(entries)
        }
    }

    fn config(&self) -> Result<RunConfig, Error> {
        let config = RunConfig {
            dimension_guard: self.guard,
            jobs: self.jobs,
            output_format: self.format.parse::<OutputFormat>()?,
            output_path: self.out.clone(),
        };
        config.validate()?;
        Ok(config)
    }
}

/// Exit codes: 0 success, 1 failed suite, 2 usage or validation, 3 guard.
pub(crate) fn exit_code(err: &Error) -> u8 {
    match err {
        Error::GuardExceeded { .. } => 3,
        Error::Consistency(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
