//! Command-line surface for the two-mode Brillouin-scattering model.
//!
//! Three subcommands, all file I/O lives here:
//!
//! * `evolve` — time series of the ten covariance entries plus the three
//!   measures, as CSV or JSON;
//! * `sweep`  — one measure row per grid point along a parameter axis;
//! * `verify` — audits the quoted closed forms against the Runge-Kutta
//!   integrator in both the lab and interaction frames and emits a JSON
//!   report.

use std::path::PathBuf;

use thiserror::Error;

pub mod evolve;
pub mod output;
pub mod sweep;
pub mod verify;

/// Exit code 1 for invalid parameters or model errors, 2 for output
/// failures.
#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Model(#[from] sbs_core::Error),

    #[error("{0}")]
    InvalidInput(String),

    #[error("cannot write {path}: {source}")]
    Output {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("cannot encode output: {0}")]
    Encode(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Output { .. } | CliError::Encode(_) => 2,
            CliError::Model(_) | CliError::InvalidInput(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Parses `vacuum`, `thermal:<theta>` or `squeezed:<eta>`. Range checks on
/// the values are left to the model so they exit with code 1, not as usage
/// errors.
pub fn parse_state(text: &str) -> std::result::Result<sbs_core::InitialState, String> {
    use sbs_core::InitialState;
    if text == "vacuum" {
        return Ok(InitialState::Vacuum);
    }
    if let Some(value) = text.strip_prefix("thermal:") {
        let theta: f64 = value
            .parse()
            .map_err(|_| format!("cannot parse {value:?} as a number for thermal:<theta>"))?;
        return Ok(InitialState::ThermalPhonon { theta });
    }
    if let Some(value) = text.strip_prefix("squeezed:") {
        let eta: f64 = value
            .parse()
            .map_err(|_| format!("cannot parse {value:?} as a number for squeezed:<eta>"))?;
        return Ok(InitialState::SqueezedPhonon { eta });
    }
    Err(format!(
        "unknown state {text:?}; expected vacuum, thermal:<theta> or squeezed:<eta>"
    ))
}
