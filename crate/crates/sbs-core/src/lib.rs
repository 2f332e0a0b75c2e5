//! Two-mode Gaussian model of stimulated Brillouin scattering.
//!
//! A classical pump at frequency `ω_L` scatters into a Stokes photon
//! (`ω_s`) and an acoustic phonon (`ω_k`); the bilinear interaction keeps
//! Gaussian states Gaussian, so the full state is a 4×4 quadrature
//! covariance matrix. This crate propagates that matrix by two independent
//! routes — a closed-form symplectic (Bogoliubov) propagator at resonance
//! and a fourth-order Runge-Kutta moment integrator at any detuning —
//! evaluates entanglement measures on it, and transcribes the quoted
//! closed-form solutions so they can be audited against the integrator.
//!
//! Pump damping and depletion are neglected; there are no first moments
//! (every supported initial state is zero-mean).

pub mod cov;
pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod formulas;
pub mod params;
pub mod state;

pub use cov::{check_bona_fide, symplectic_form, BonaFide, Covariance, QUADRATURES};
pub use dynamics::{
    bogoliubov_propagator, default_step, drift_matrix, integrate_moments, integrate_trajectory,
    propagate, to_local_rotation_frame, SymplecticMap,
};
pub use entanglement::{
    eg_decomposition, full_report, log_negativity, measure_eg, measure_f, EgDecomposition,
    MeasureReport, Verdict, MATCH_TOLERANCE,
};
pub use error::{Error, Result};
pub use formulas::{
    closed_form_covariance, closed_form_eg, closed_form_f, covariance_squeezed_start,
    covariance_thermal_start, covariance_vacuum_start, tau,
};
pub use params::ModelParams;
pub use state::{initial_covariance, InitialState};
