//! `superpi`: batch checks on finite dimensional superalgebras.
//!
//! Exit codes: 0 when every verdict was computed (true or false), 2 for
//! unreadable, malformed or invalid input, 3 when a resource cap would be
//! exceeded, 4 for usage errors and 5 when a construction refuses the input.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use superpi::caps::Caps;
use superpi::grassmann::TwistDirection;
use thiserror::Error;

use report::{Inputs, RunReport};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] superpi::error::Error),
    #[error("cannot read input: {0}")]
    Input(String),
    #[error("usage error: {0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use superpi::error::Error as E;
        match self {
            CliError::Input(_) => 2,
            CliError::Usage(_) => 4,
            CliError::Core(e) => match e {
                E::Parse { .. } | E::Validation(_) => 2,
                E::Resource(_) => 3,
                E::Usage(_) => 4,
                E::Refused(_) => 5,
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "superpi", version, about = "Graded identities, Kemer parameters and T-ideals of finite dimensional superalgebras")]
struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    #[arg(long, global = true)]
    max_dim: Option<usize>,
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    #[arg(long, global = true)]
    max_enum: Option<u64>,
    /// Record the wall clock time of the command in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    #[command(subcommand)]
    Identity(IdentityCmd),
    #[command(subcommand)]
    Exactness(ExactnessCmd),
    #[command(subcommand)]
    Witness(WitnessCmd),
    #[command(subcommand)]
    Params(ParamsCmd),
    #[command(subcommand)]
    Tideal(TidealCmd),
    #[command(subcommand)]
    Envelope(EnvelopeCmd),
}

#[derive(Debug, Subcommand)]
enum AlgebraCmd {
    /// Build an algebra spec and report its structure.
    Validate { algebra: PathBuf },
    /// Emit the truncated relatively free algebra R_{q,s}(B, S) as a table spec.
    BuildRqs(RqsArgs),
}

#[derive(Debug, Args)]
struct RqsArgs {
    /// The semisimple algebra B.
    algebra: PathBuf,
    #[arg(long)]
    s: usize,
    /// Use q even and q odd letters.
    #[arg(long, conflicts_with_all = ["even", "odd"])]
    q: Option<usize>,
    #[arg(long)]
    even: Option<usize>,
    #[arg(long)]
    odd: Option<usize>,
    /// Polynomial documents separated by `---`.
    #[arg(long)]
    generators: Option<PathBuf>,
    /// Also write the algebra spec to this file.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum IdentityCmd {
    /// Decide whether a polynomial is a graded identity.
    Check { algebra: PathBuf, polynomial: PathBuf },
}

#[derive(Debug, Subcommand)]
enum ExactnessCmd {
    /// Decide whether a polynomial vanishes on every degenerate evaluation.
    Check { algebra: PathBuf, polynomial: PathBuf },
}

#[derive(Debug, Subcommand)]
enum WitnessCmd {
    /// Witness for an algebra consisting of one simple block.
    Simple {
        algebra: PathBuf,
        #[arg(long, default_value_t = 1)]
        s_hat: usize,
    },
    /// Witness for a reduced algebra.
    Reduced {
        algebra: PathBuf,
        #[arg(long, default_value_t = 1)]
        s_hat: usize,
    },
    /// Lift an exact polynomial and an evaluation to a polynomial with mu extra sets.
    Boundary {
        algebra: PathBuf,
        polynomial: PathBuf,
        /// `x(id,parity)=label`, once per variable.
        #[arg(long = "assign", required = true)]
        assignments: Vec<String>,
        #[arg(long, default_value_t = 1)]
        mu: usize,
    },
}

#[derive(Debug, Subcommand)]
enum ParamsCmd {
    /// Compute par(A) with a witness.
    Certify {
        algebra: PathBuf,
        #[arg(long, default_value_t = 1)]
        s_hat: usize,
    },
    /// Sample polynomials beyond par(A) and check they are identities.
    Bound {
        algebra: PathBuf,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Debug, Subcommand)]
enum TidealCmd {
    /// Decide membership of a multilinear polynomial in T[S].
    Member { generators: PathBuf, polynomial: PathBuf },
    /// The consequence span of S in one multilinear slot.
    Span {
        generators: PathBuf,
        /// Variables such as `x(1,0) x(2,1)`.
        #[arg(long)]
        slot: String,
    },
}

#[derive(Debug, Subcommand)]
enum EnvelopeCmd {
    /// Decide whether a polynomial is an identity of the Grassmann envelope.
    Check {
        algebra: PathBuf,
        polynomial: PathBuf,
        /// Number of Grassmann generators; defaults to twice the degree.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Apply the sign twist between identities of A and of E(A).
    Twist {
        polynomial: PathBuf,
        #[arg(long, value_enum, default_value = "to-envelope")]
        direction: Direction,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Direction {
    ToEnvelope,
    FromEnvelope,
}

impl From<Direction> for TwistDirection {
    fn from(d: Direction) -> Self {
        match d {
            Direction::ToEnvelope => TwistDirection::ToEnvelope,
            Direction::FromEnvelope => TwistDirection::FromEnvelope,
        }
    }
}

impl Cli {
    fn caps(&self) -> Caps {
        let mut caps = Caps::default();
        if let Some(d) = self.max_dim {
            caps.max_dim = d;
        }
        if let Some(d) = self.max_degree {
            caps.max_degree = d;
        }
        if let Some(e) = self.max_enum {
            caps.max_enum = e;
        }
        caps
    }
}

/// What a command produced before it is wrapped into a report.
pub struct Outcome {
    pub verdict: serde_json::Value,
    pub seed: Option<u64>,
}

fn dispatch(cli: &Cli, inputs: &mut Inputs) -> Result<Outcome, CliError> {
    let caps = cli.caps();
    let plain = |verdict| Ok(Outcome { verdict, seed: None });
    match &cli.command {
        Command::Algebra(AlgebraCmd::Validate { algebra }) => plain(commands::validate(inputs, algebra, &caps)?),
        Command::Algebra(AlgebraCmd::BuildRqs(a)) => plain(commands::build_rqs(inputs, a, &caps)?),
        Command::Identity(IdentityCmd::Check { algebra, polynomial }) => {
            plain(commands::identity(inputs, algebra, polynomial, &caps)?)
        }
        Command::Exactness(ExactnessCmd::Check { algebra, polynomial }) => {
            plain(commands::exactness(inputs, algebra, polynomial, &caps)?)
        }
        Command::Witness(WitnessCmd::Simple { algebra, s_hat }) => plain(commands::witness_simple(inputs, algebra, *s_hat, &caps)?),
        Command::Witness(WitnessCmd::Reduced { algebra, s_hat }) => {
            plain(commands::witness_reduced(inputs, algebra, *s_hat, &caps)?)
        }
        Command::Witness(WitnessCmd::Boundary { algebra, polynomial, assignments, mu }) => {
            plain(commands::witness_boundary(inputs, algebra, polynomial, assignments, *mu, &caps)?)
        }
        Command::Params(ParamsCmd::Certify { algebra, s_hat }) => plain(commands::params_certify(inputs, algebra, *s_hat, &caps)?),
        Command::Params(ParamsCmd::Bound { algebra, trials, seed }) => {
            let Some(seed) = *seed else {
                return Err(CliError::Usage("params bound is randomized and needs an explicit --seed".into()));
            };
            Ok(Outcome { verdict: commands::params_bound(inputs, algebra, *trials, seed, &caps)?, seed: Some(seed) })
        }
        Command::Tideal(TidealCmd::Member { generators, polynomial }) => {
            plain(commands::tideal_member(inputs, generators, polynomial, &caps)?)
        }
        Command::Tideal(TidealCmd::Span { generators, slot }) => plain(commands::tideal_span(inputs, generators, slot, &caps)?),
        Command::Envelope(EnvelopeCmd::Check { algebra, polynomial, n }) => {
            plain(commands::envelope_check(inputs, algebra, polynomial, *n, &caps)?)
        }
        Command::Envelope(EnvelopeCmd::Twist { polynomial, direction }) => {
            plain(commands::envelope_twist(inputs, polynomial, (*direction).into())?)
        }
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let mut inputs = Inputs::default();
    match dispatch(&cli, &mut inputs) {
        Ok(outcome) => {
            let report = RunReport {
                command: argv,
                inputs: inputs.into_files(),
                seed: outcome.seed,
                verdict: outcome.verdict,
                timing_ms: cli.timing.then(|| start.elapsed().as_secs_f64() * 1000.0),
            };
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&report).expect("reports serialize") + "\n",
                Format::Text => report.to_text(),
            };
            // A closed pipe is not an error of the command.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("superpi: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
