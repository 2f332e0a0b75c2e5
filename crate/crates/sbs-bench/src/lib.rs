//! Shared fixtures for the criterion benchmarks.

use sbs_core::{initial_covariance, Covariance, InitialState, ModelParams};

pub fn standard_params() -> ModelParams {
    ModelParams::resonant(5.0, 1.0, 1.0).unwrap()
}

pub fn thermal_start() -> Covariance {
    initial_covariance(&InitialState::ThermalPhonon { theta: 0.5 }).unwrap()
}

pub fn entangled_state() -> Covariance {
    sbs_core::propagate(&Covariance::vacuum(), 1.0, &standard_params()).unwrap()
}
