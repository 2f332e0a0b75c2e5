use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use sbs_cli::evolve::{self, EvolveConfig};
use sbs_cli::output::Format;
use sbs_cli::sweep::{self, SweepAxis, SweepConfig, SweepRange};
use sbs_cli::verify::{self, VerifyConfig};
use sbs_cli::{parse_state, CliError};
use sbs_core::{default_step, InitialState, ModelParams};

/// Two-mode Gaussian simulation of stimulated Brillouin scattering:
/// covariance evolution, entanglement measures, and a numerical audit of
/// the quoted closed-form solutions.
#[derive(Parser)]
#[command(name = "sbs", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Propagate one initial state and tabulate covariances and measures.
    Evolve(EvolveArgs),
    /// Scan one parameter axis and tabulate the measures.
    Sweep(SweepArgs),
    /// Audit the quoted closed forms against the moment integrator.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ModelArgs {
    /// Stokes photon angular frequency.
    #[arg(long, default_value_t = 5.0)]
    omega_s: f64,

    /// Acoustic phonon angular frequency.
    #[arg(long, default_value_t = 1.0)]
    omega_k: f64,

    /// Photon-phonon coupling strength.
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,

    /// Pump detuning from omega_s + omega_k. Nonzero values route through
    /// the moment integrator; closed forms are resonance-only.
    #[arg(long, default_value_t = 0.0)]
    detuning: f64,

    /// Integrator step ceiling; defaults to resolving the fastest
    /// frequency in the problem.
    #[arg(long)]
    dt: Option<f64>,

    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl ModelArgs {
    fn params(&self) -> Result<ModelParams, CliError> {
        Ok(ModelParams::with_detuning(
            self.omega_s,
            self.omega_k,
            self.lambda,
            self.detuning,
        )?)
    }

    fn step(&self, params: &ModelParams) -> f64 {
        self.dt.unwrap_or_else(|| default_step(params))
    }
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct EvolveArgs {
    #[command(flatten)]
    model: ModelArgs,

    /// Initial state: vacuum | thermal:<theta> | squeezed:<eta>.
    #[arg(long, default_value = "vacuum", value_parser = parse_state)]
    state: InitialState,

    /// Final evolution time.
    #[arg(long, default_value_t = 2.0)]
    t_max: f64,

    /// Number of uniformly spaced output rows.
    #[arg(long, default_value_t = 41)]
    steps: usize,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct SweepArgs {
    #[command(flatten)]
    model: ModelArgs,

    /// Initial state for the lambda_t and detuning axes; the theta and eta
    /// axes force the matching phonon preparation.
    #[arg(long, default_value = "vacuum", value_parser = parse_state)]
    state: InitialState,

    /// Evolution time at which each grid point is measured.
    #[arg(long, default_value_t = 0.5)]
    t_max: f64,

    /// Swept parameter.
    #[arg(long, value_enum)]
    axis: SweepAxis,

    /// Grid as from:to:count with count >= 2.
    #[arg(long, allow_hyphen_values = true)]
    range: SweepRange,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct VerifyArgs {
    #[command(flatten)]
    model: ModelArgs,

    /// Inverse temperature of the thermal-start audit case.
    #[arg(long, default_value_t = 0.5)]
    theta: f64,

    /// Squeezing parameter of the squeezed-start audit case.
    #[arg(long, default_value_t = 2.0)]
    eta: f64,

    /// End of the audited time grid.
    #[arg(long, default_value_t = 2.0)]
    t_max: f64,

    /// Number of grid points.
    #[arg(long, default_value_t = 41)]
    steps: usize,
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Evolve(args) => {
            let params = args.model.params()?;
            let config = EvolveConfig {
                params,
                state: args.state,
                t_max: args.t_max,
                steps: args.steps,
                dt: args.model.step(&params),
                format: args.format,
            };
            evolve::run(&config, args.model.out.as_deref())
        }
        Command::Sweep(args) => {
            let params = args.model.params()?;
            let config = SweepConfig {
                params,
                state: args.state,
                t_max: args.t_max,
                dt: args.model.step(&params),
                axis: args.axis,
                range: args.range,
                format: args.format,
            };
            sweep::run(&config, args.model.out.as_deref())
        }
        Command::Verify(args) => {
            let params = args.model.params()?;
            let config = VerifyConfig {
                params,
                theta: args.theta,
                eta: args.eta,
                t_max: args.t_max,
                points: args.steps,
                dt: args.model.step(&params),
            };
            verify::run(&config, args.model.out.as_deref())
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
