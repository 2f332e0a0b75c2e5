//! `verify`: audits every quoted closed form against the first-principles
//! integrator.
//!
//! For each of the three initial states the oracle trajectory is produced
//! by the Runge-Kutta moment integrator — never by the closed-form
//! propagator — and compared with the quoted expressions over the whole
//! time grid, both in the lab frame and in the interaction frame obtained
//! by undoing the free rotations. Each comparison becomes one record with
//! the maximum absolute deviation and a MATCH/MISMATCH verdict; covariance
//! records also name their worst-offending entry.

use std::path::Path;

use serde::Serialize;

use sbs_core::{
    closed_form_covariance, closed_form_eg, closed_form_f, entanglement::MATCH_TOLERANCE,
    initial_covariance, integrate_trajectory, measure_eg, measure_f, to_local_rotation_frame,
    Covariance, InitialState, ModelParams, Verdict, QUADRATURES,
};

use crate::evolve::time_grid;
use crate::output::write_output;
use crate::{CliError, Result};

/// Identifiers of the audited formulas as they appear in the report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FormulaId {
    #[serde(rename = "eq2")]
    Eq2,
    #[serde(rename = "eq3")]
    Eq3,
    #[serde(rename = "eq4")]
    Eq4,
    F1,
    F2,
    F3,
    #[serde(rename = "eG1")]
    EG1,
    #[serde(rename = "eG2")]
    EG2,
}

pub const ALL_FORMULAS: [FormulaId; 8] = [
    FormulaId::Eq2,
    FormulaId::Eq3,
    FormulaId::Eq4,
    FormulaId::F1,
    FormulaId::F2,
    FormulaId::F3,
    FormulaId::EG1,
    FormulaId::EG2,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Frame {
    #[serde(rename = "lab")]
    Lab,
    #[serde(rename = "interaction")]
    Interaction,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyRecord {
    pub formula: FormulaId,
    pub frame: Frame,
    pub max_abs_dev: f64,
    pub verdict: Verdict,
    /// Worst-offending covariance entry, e.g. `qk_qk`; null for the scalar
    /// measures.
    pub worst_entry: Option<String>,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct GridSummary {
    pub t_max: f64,
    pub points: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub params: ModelParams,
    pub theta: f64,
    pub eta: f64,
    pub grid: GridSummary,
    pub match_tolerance: f64,
    pub records: Vec<VerifyRecord>,
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub params: ModelParams,
    pub theta: f64,
    pub eta: f64,
    pub t_max: f64,
    pub points: usize,
    pub dt: f64,
}

struct CaseTrajectory {
    state: InitialState,
    times: Vec<f64>,
    lab: Vec<Covariance>,
    interaction: Vec<Covariance>,
}

impl CaseTrajectory {
    fn build(state: InitialState, times: &[f64], config: &VerifyConfig) -> Result<Self> {
        let sigma0 = initial_covariance(&state)?;
        let lab = integrate_trajectory(&sigma0, times, &config.params, config.dt)?;
        let interaction = times
            .iter()
            .zip(&lab)
            .map(|(&t, sigma)| {
                to_local_rotation_frame(
                    sigma,
                    config.params.omega_s() * t,
                    config.params.omega_k() * t,
                )
            })
            .collect();
        Ok(Self {
            state,
            times: times.to_vec(),
            lab,
            interaction,
        })
    }

    fn frame(&self, frame: Frame) -> &[Covariance] {
        match frame {
            Frame::Lab => &self.lab,
            Frame::Interaction => &self.interaction,
        }
    }
}

fn entry_label(row: usize, col: usize) -> String {
    format!("{}_{}", QUADRATURES[row], QUADRATURES[col])
}

fn covariance_record(
    id: FormulaId,
    frame: Frame,
    case: &CaseTrajectory,
    params: &ModelParams,
) -> Result<VerifyRecord> {
    let mut max_dev = 0.0;
    let mut worst = (0usize, 0usize);
    for (&t, sigma) in case.times.iter().zip(case.frame(frame)) {
        let quoted = closed_form_covariance(&case.state, t, params)?;
        let (dev, entry) = quoted.worst_entry_diff(sigma);
        if dev > max_dev {
            max_dev = dev;
            worst = entry;
        }
    }
    Ok(VerifyRecord {
        formula: id,
        frame,
        max_abs_dev: max_dev,
        verdict: Verdict::from_deviation(max_dev),
        worst_entry: Some(entry_label(worst.0, worst.1)),
    })
}

fn f_record(
    id: FormulaId,
    frame: Frame,
    case: &CaseTrajectory,
    params: &ModelParams,
) -> Result<VerifyRecord> {
    let mut max_dev = 0.0f64;
    for (&t, sigma) in case.times.iter().zip(case.frame(frame)) {
        let quoted = closed_form_f(&case.state, t, params.lambda())?;
        max_dev = max_dev.max((measure_f(sigma) - quoted).abs());
    }
    Ok(VerifyRecord {
        formula: id,
        frame,
        max_abs_dev: max_dev,
        verdict: Verdict::from_deviation(max_dev),
        worst_entry: None,
    })
}

fn eg_record(
    id: FormulaId,
    frame: Frame,
    case: &CaseTrajectory,
    params: &ModelParams,
) -> Result<VerifyRecord> {
    let mut max_dev = 0.0f64;
    for (&t, sigma) in case.times.iter().zip(case.frame(frame)) {
        let quoted = closed_form_eg(&case.state, t, params.lambda(), params.omega_l())?;
        max_dev = max_dev.max((measure_eg(sigma)? - quoted).abs());
    }
    Ok(VerifyRecord {
        formula: id,
        frame,
        max_abs_dev: max_dev,
        verdict: Verdict::from_deviation(max_dev),
        worst_entry: None,
    })
}

/// Runs the full three-case audit and assembles the report.
pub fn run_verify(config: &VerifyConfig) -> Result<VerifyReport> {
    if !config.params.is_resonant() {
        return Err(CliError::InvalidInput(format!(
            "verify audits resonance-only closed forms; got detuning {:e}",
            config.params.detuning()
        )));
    }
    if config.points < 2 {
        return Err(CliError::InvalidInput(
            "the time grid needs at least 2 points".into(),
        ));
    }
    if !(config.t_max > 0.0) || !config.t_max.is_finite() {
        return Err(CliError::InvalidInput(format!(
            "t-max must be finite and positive, got {}",
            config.t_max
        )));
    }

    let times = time_grid(config.t_max, config.points);
    let params = &config.params;
    let vacuum = CaseTrajectory::build(InitialState::Vacuum, &times, config)?;
    let thermal = CaseTrajectory::build(
        InitialState::ThermalPhonon {
            theta: config.theta,
        },
        &times,
        config,
    )?;
    let squeezed = CaseTrajectory::build(
        InitialState::SqueezedPhonon { eta: config.eta },
        &times,
        config,
    )?;

    let mut records = Vec::with_capacity(16);
    for frame in [Frame::Lab, Frame::Interaction] {
        records.push(covariance_record(FormulaId::Eq2, frame, &vacuum, params)?);
    }
    for frame in [Frame::Lab, Frame::Interaction] {
        records.push(covariance_record(FormulaId::Eq3, frame, &thermal, params)?);
    }
    for frame in [Frame::Lab, Frame::Interaction] {
        records.push(covariance_record(FormulaId::Eq4, frame, &squeezed, params)?);
    }
    for frame in [Frame::Lab, Frame::Interaction] {
        records.push(f_record(FormulaId::F1, frame, &vacuum, params)?);
    }
    for frame in [Frame::Lab, Frame::Interaction] {
        records.push(f_record(FormulaId::F2, frame, &thermal, params)?);
    }
    for frame in [Frame::Lab, Frame::Interaction] {
        records.push(f_record(FormulaId::F3, frame, &squeezed, params)?);
    }
    for frame in [Frame::Lab, Frame::Interaction] {
        records.push(eg_record(FormulaId::EG1, frame, &vacuum, params)?);
    }
    for frame in [Frame::Lab, Frame::Interaction] {
        records.push(eg_record(FormulaId::EG2, frame, &thermal, params)?);
    }

    Ok(VerifyReport {
        params: config.params,
        theta: config.theta,
        eta: config.eta,
        grid: GridSummary {
            t_max: config.t_max,
            points: config.points,
        },
        match_tolerance: MATCH_TOLERANCE,
        records,
    })
}

pub fn run(config: &VerifyConfig, out: Option<&Path>) -> Result<()> {
    let report = run_verify(config)?;
    let mut text = serde_json::to_string_pretty(&report)?;
    text.push('\n');
    write_output(out, &text)
}
