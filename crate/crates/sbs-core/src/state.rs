//! Initial photon-phonon states and their covariance matrices.

use nalgebra::{Matrix4, Vector4};
use serde::Serialize;

use crate::cov::Covariance;
use crate::error::{Error, Result};

/// The three supported preparations. The photon always starts in the ground
/// state; the phonon may start thermal or squeezed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum InitialState {
    /// Both modes in the ground state.
    Vacuum,
    /// Phonon in thermal equilibrium, parameterized by the dimensionless
    /// inverse temperature `theta = ħω_k/2kT > 0`.
    ThermalPhonon { theta: f64 },
    /// Phonon in a squeezed state with squeezing parameter `eta > 0`;
    /// `eta = 1` reproduces the vacuum in every downstream operation.
    SqueezedPhonon { eta: f64 },
}

impl InitialState {
    pub fn thermal(theta: f64) -> Result<Self> {
        let state = Self::ThermalPhonon { theta };
        state.validate()?;
        Ok(state)
    }

    pub fn squeezed(eta: f64) -> Result<Self> {
        let state = Self::SqueezedPhonon { eta };
        state.validate()?;
        Ok(state)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::Vacuum => Ok(()),
            Self::ThermalPhonon { theta } if theta > 0.0 && theta.is_finite() => Ok(()),
            Self::ThermalPhonon { theta } => Err(Error::InvalidParameter {
                name: "theta",
                value: theta,
                reason: "inverse temperature must be positive and finite",
            }),
            Self::SqueezedPhonon { eta } if eta > 0.0 && eta.is_finite() => Ok(()),
            Self::SqueezedPhonon { eta } => Err(Error::InvalidParameter {
                name: "eta",
                value: eta,
                reason: "squeezing parameter must be positive and finite",
            }),
        }
    }

    pub fn describe(&self) -> String {
        match *self {
            Self::Vacuum => "vacuum".to_owned(),
            Self::ThermalPhonon { theta } => format!("thermal:{theta}"),
            Self::SqueezedPhonon { eta } => format!("squeezed:{eta}"),
        }
    }
}

/// Covariance matrix of an initial state.
///
/// Vacuum gives `(1/2)·I`. A thermal phonon has isotropic variance
/// `coth(θ)/2 = n̄ + 1/2`. A squeezed phonon has `σ_qk² = 1/(2η)` and
/// `σ_pk² = η/2`, i.e. momentum-antisqueezed for `η > 1`.
pub fn initial_covariance(state: &InitialState) -> Result<Covariance> {
    state.validate()?;
    let diag = match *state {
        InitialState::Vacuum => Vector4::new(0.5, 0.5, 0.5, 0.5),
        InitialState::ThermalPhonon { theta } => {
            let v = 0.5 / theta.tanh();
            Vector4::new(0.5, 0.5, v, v)
        }
        InitialState::SqueezedPhonon { eta } => Vector4::new(0.5, 0.5, 0.5 / eta, eta * 0.5),
    };
    Ok(Covariance::from_symmetric_unchecked(Matrix4::from_diagonal(
        &diag,
    )))
}
