//! `sweep`: measures at a fixed evolution time across one parameter axis.

use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;

use sbs_core::{
    initial_covariance, integrate_moments, log_negativity, measure_eg, measure_f, propagate,
    InitialState, ModelParams,
};

use crate::output::{fmt_f64, write_output, Format};
use crate::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum SweepAxis {
    /// Coupling-time product λt; evaluates at t = value/λ with the base λ.
    #[value(name = "lambda_t")]
    LambdaT,
    /// Thermal-phonon inverse temperature; forces a thermal start.
    Theta,
    /// Phonon squeezing parameter; forces a squeezed start.
    Eta,
    /// Pump detuning; evaluated with the moment integrator.
    Detuning,
}

impl SweepAxis {
    pub fn column(&self) -> &'static str {
        match self {
            SweepAxis::LambdaT => "lambda_t",
            SweepAxis::Theta => "theta",
            SweepAxis::Eta => "eta",
            SweepAxis::Detuning => "detuning",
        }
    }
}

/// `from:to:count` with `count ≥ 2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRange {
    pub from: f64,
    pub to: f64,
    pub count: usize,
}

impl SweepRange {
    pub fn points(&self) -> Vec<f64> {
        (0..self.count)
            .map(|i| self.from + (self.to - self.from) * i as f64 / (self.count - 1) as f64)
            .collect()
    }
}

impl FromStr for SweepRange {
    type Err = String;

    fn from_str(text: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected from:to:count, got {text:?}"));
        }
        let from: f64 = parts[0]
            .parse()
            .map_err(|_| format!("cannot parse {:?} as a number", parts[0]))?;
        let to: f64 = parts[1]
            .parse()
            .map_err(|_| format!("cannot parse {:?} as a number", parts[1]))?;
        let count: usize = parts[2]
            .parse()
            .map_err(|_| format!("cannot parse {:?} as a count", parts[2]))?;
        if !from.is_finite() || !to.is_finite() {
            return Err("range endpoints must be finite".into());
        }
        if count < 2 {
            return Err("count must be at least 2".into());
        }
        Ok(Self { from, to, count })
    }
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub params: ModelParams,
    pub state: InitialState,
    pub t_max: f64,
    pub dt: f64,
    pub axis: SweepAxis,
    pub range: SweepRange,
    pub format: Format,
}

#[derive(Clone, Copy, Debug)]
pub struct SweepRow {
    pub axis_value: f64,
    pub f: f64,
    pub eg: f64,
    pub logneg: f64,
}

fn measures_at(
    state: &InitialState,
    t: f64,
    params: &ModelParams,
    dt: f64,
) -> std::result::Result<(f64, f64, f64), sbs_core::Error> {
    let sigma0 = initial_covariance(state)?;
    let sigma = if params.is_resonant() {
        propagate(&sigma0, t, params)?
    } else {
        integrate_moments(&sigma0, t, params, dt)?
    };
    Ok((measure_f(&sigma), measure_eg(&sigma)?, log_negativity(&sigma)?))
}

/// Grid points evaluate in parallel; rows come back in ascending axis order
/// regardless of scheduling.
pub fn compute(config: &SweepConfig) -> Result<Vec<SweepRow>> {
    if !(config.t_max >= 0.0) || !config.t_max.is_finite() {
        return Err(CliError::InvalidInput(format!(
            "t-max must be finite and nonnegative, got {}",
            config.t_max
        )));
    }
    if config.axis == SweepAxis::LambdaT {
        if config.params.lambda() <= 0.0 {
            return Err(CliError::InvalidInput(
                "a lambda_t sweep needs a positive base --lambda".into(),
            ));
        }
        if config.range.from < 0.0 || config.range.to < 0.0 {
            return Err(CliError::InvalidInput(
                "lambda_t values must be nonnegative".into(),
            ));
        }
    }

    let points = config.range.points();
    let rows: std::result::Result<Vec<SweepRow>, sbs_core::Error> = points
        .par_iter()
        .map(|&x| {
            let (state, t, params) = match config.axis {
                SweepAxis::LambdaT => (config.state, x / config.params.lambda(), config.params),
                SweepAxis::Theta => (
                    InitialState::ThermalPhonon { theta: x },
                    config.t_max,
                    config.params,
                ),
                SweepAxis::Eta => (
                    InitialState::SqueezedPhonon { eta: x },
                    config.t_max,
                    config.params,
                ),
                SweepAxis::Detuning => {
                    let params = ModelParams::with_detuning(
                        config.params.omega_s(),
                        config.params.omega_k(),
                        config.params.lambda(),
                        x,
                    )?;
                    (config.state, config.t_max, params)
                }
            };
            let (f, eg, logneg) = measures_at(&state, t, &params, config.dt)?;
            Ok(SweepRow {
                axis_value: x,
                f,
                eg,
                logneg,
            })
        })
        .collect();
    Ok(rows?)
}

pub fn render(axis: SweepAxis, rows: &[SweepRow], format: Format) -> Result<String> {
    match format {
        Format::Csv => {
            let mut text = format!("{},F,eG,logneg\n", axis.column());
            for row in rows {
                text.push_str(&format!(
                    "{},{},{},{}\n",
                    fmt_f64(row.axis_value),
                    fmt_f64(row.f),
                    fmt_f64(row.eg),
                    fmt_f64(row.logneg)
                ));
            }
            Ok(text)
        }
        Format::Json => {
            let objects: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    serde_json::json!({
                        axis.column(): row.axis_value,
                        "F": row.f,
                        "eG": row.eg,
                        "logneg": row.logneg,
                    })
                })
                .collect();
            let mut text = serde_json::to_string_pretty(&objects)?;
            text.push('\n');
            Ok(text)
        }
    }
}

pub fn run(config: &SweepConfig, out: Option<&Path>) -> Result<()> {
    let rows = compute(config)?;
    write_output(out, &render(config.axis, &rows, config.format)?)
}
