//! Model parameters of the pumped photon-phonon interaction.

use serde::Serialize;

use crate::error::{Error, Result};

/// Angular frequencies and coupling strength of the two-mode model.
///
/// All frequencies share one arbitrary angular-frequency unit; times used
/// elsewhere in this crate are in the inverse unit. The pump is classical
/// with frequency `omega_l`; on resonance `omega_l = omega_s + omega_k`
/// exactly, and only then do the closed-form propagator and the reference
/// closed forms apply.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ModelParams {
    omega_s: f64,
    omega_k: f64,
    omega_l: f64,
    lambda: f64,
}

impl ModelParams {
    /// Resonant parameters: `omega_l` is set to `omega_s + omega_k`, so the
    /// detuning is exactly zero.
    pub fn resonant(omega_s: f64, omega_k: f64, lambda: f64) -> Result<Self> {
        Self::with_detuning(omega_s, omega_k, lambda, 0.0)
    }

    /// Parameters with the pump detuned by `detuning` from `omega_s + omega_k`.
    pub fn with_detuning(
        omega_s: f64,
        omega_k: f64,
        lambda: f64,
        detuning: f64,
    ) -> Result<Self> {
        let check = |name, value: f64, ok: bool, reason| {
            if ok && value.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter {
                    name,
                    value,
                    reason,
                })
            }
        };
        check("omega_s", omega_s, omega_s > 0.0, "must be a positive finite frequency")?;
        check("omega_k", omega_k, omega_k > 0.0, "must be a positive finite frequency")?;
        check("lambda", lambda, lambda >= 0.0, "must be a nonnegative finite coupling")?;
        check("detuning", detuning, true, "must be finite")?;
        Ok(Self {
            omega_s,
            omega_k,
            omega_l: omega_s + omega_k + detuning,
            lambda,
        })
    }

    pub fn omega_s(&self) -> f64 {
        self.omega_s
    }

    pub fn omega_k(&self) -> f64 {
        self.omega_k
    }

    /// Pump (laser) angular frequency.
    pub fn omega_l(&self) -> f64 {
        self.omega_l
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `omega_l - (omega_s + omega_k)`.
    pub fn detuning(&self) -> f64 {
        self.omega_l - (self.omega_s + self.omega_k)
    }

    /// True iff the detuning vanishes exactly.
    pub fn is_resonant(&self) -> bool {
        self.detuning() == 0.0
    }
}
