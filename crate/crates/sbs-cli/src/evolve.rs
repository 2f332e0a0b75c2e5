//! `evolve`: tabulates the covariance entries and measures along one
//! trajectory.

use std::path::Path;

use serde::Serialize;

use sbs_core::{
    initial_covariance, integrate_trajectory, log_negativity, measure_eg, measure_f, propagate,
    Covariance, InitialState, ModelParams,
};

use crate::output::{fmt_f64, write_output, Format};
use crate::{CliError, Result};

pub const CSV_HEADER: &str =
    "t,s_qsqs,s_qsps,s_qsqk,s_qspk,s_psps,s_psqk,s_pspk,s_qkqk,s_qkpk,s_pkpk,F,eG,logneg";

#[derive(Clone, Debug)]
pub struct EvolveConfig {
    pub params: ModelParams,
    pub state: InitialState,
    pub t_max: f64,
    pub steps: usize,
    pub dt: f64,
    pub format: Format,
}

/// One output row: time, the ten upper-triangle covariance entries in
/// fixed order, then the three measures.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct EvolveRow {
    pub t: f64,
    pub s_qsqs: f64,
    pub s_qsps: f64,
    pub s_qsqk: f64,
    pub s_qspk: f64,
    pub s_psps: f64,
    pub s_psqk: f64,
    pub s_pspk: f64,
    pub s_qkqk: f64,
    pub s_qkpk: f64,
    pub s_pkpk: f64,
    #[serde(rename = "F")]
    pub f: f64,
    #[serde(rename = "eG")]
    pub eg: f64,
    pub logneg: f64,
}

impl EvolveRow {
    fn from_state(t: f64, sigma: &Covariance) -> Result<Self> {
        let [s_qsqs, s_qsps, s_qsqk, s_qspk, s_psps, s_psqk, s_pspk, s_qkqk, s_qkpk, s_pkpk] =
            sigma.upper_triangle();
        Ok(Self {
            t,
            s_qsqs,
            s_qsps,
            s_qsqk,
            s_qspk,
            s_psps,
            s_psqk,
            s_pspk,
            s_qkqk,
            s_qkpk,
            s_pkpk,
            f: measure_f(sigma),
            eg: measure_eg(sigma)?,
            logneg: log_negativity(sigma)?,
        })
    }

    fn csv_line(&self) -> String {
        let cells = [
            self.t, self.s_qsqs, self.s_qsps, self.s_qsqk, self.s_qspk, self.s_psps, self.s_psqk,
            self.s_pspk, self.s_qkqk, self.s_qkpk, self.s_pkpk, self.f, self.eg, self.logneg,
        ];
        cells.map(fmt_f64).join(",")
    }
}

/// `steps` uniformly spaced times over `[0, t_max]`; a single step lands on
/// `t_max` itself.
pub fn time_grid(t_max: f64, steps: usize) -> Vec<f64> {
    if steps == 1 {
        return vec![t_max];
    }
    (0..steps)
        .map(|i| t_max * i as f64 / (steps - 1) as f64)
        .collect()
}

pub fn compute(config: &EvolveConfig) -> Result<Vec<EvolveRow>> {
    if config.steps < 1 {
        return Err(CliError::InvalidInput("steps must be at least 1".into()));
    }
    if !(config.t_max >= 0.0) || !config.t_max.is_finite() {
        return Err(CliError::InvalidInput(format!(
            "t-max must be finite and nonnegative, got {}",
            config.t_max
        )));
    }
    let times = time_grid(config.t_max, config.steps);
    let sigma0 = initial_covariance(&config.state)?;
    let sigmas: Vec<Covariance> = if config.params.is_resonant() {
        times
            .iter()
            .map(|&t| propagate(&sigma0, t, &config.params))
            .collect::<std::result::Result<_, _>>()?
    } else {
        integrate_trajectory(&sigma0, &times, &config.params, config.dt)?
    };
    times
        .iter()
        .zip(&sigmas)
        .map(|(&t, sigma)| EvolveRow::from_state(t, sigma))
        .collect()
}

pub fn render(rows: &[EvolveRow], format: Format) -> Result<String> {
    match format {
        Format::Csv => {
            let mut text = String::from(CSV_HEADER);
            text.push('\n');
            for row in rows {
                text.push_str(&row.csv_line());
                text.push('\n');
            }
            Ok(text)
        }
        Format::Json => {
            let mut text = serde_json::to_string_pretty(rows)?;
            text.push('\n');
            Ok(text)
        }
    }
}

pub fn run(config: &EvolveConfig, out: Option<&Path>) -> Result<()> {
    let rows = compute(config)?;
    write_output(out, &render(&rows, config.format)?)
}
