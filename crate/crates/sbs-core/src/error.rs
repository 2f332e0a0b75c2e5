use thiserror::Error;

/// Errors produced by the model, dynamics, and measure routines.
#[derive(Debug, Clone, PartialEq, Error)]
#[non_exhaustive]
pub enum Error {
    /// A model or state parameter is outside its allowed range.
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// A matrix violates a structural requirement (symmetry, positive diagonal).
    #[error("malformed matrix: {reason} (offending value {value:e})")]
    MalformedMatrix { reason: &'static str, value: f64 },

    /// The closed-form propagator was requested off resonance.
    #[error("closed-form propagator requires exact resonance, got detuning {detuning:e}; use the moment integrator")]
    UnsupportedRegime { detuning: f64 },

    /// A non-positive integration step was supplied.
    #[error("invalid integration step dt = {dt:e}")]
    InvalidStep { dt: f64 },

    /// Moment integration produced non-finite entries.
    #[error("moment integration overflowed to non-finite values at step {step}")]
    Overflow { step: usize },

    /// A determinant or condition number makes the computation unreliable.
    #[error("ill-conditioned input: {quantity} = {value:e}")]
    IllConditioned { quantity: &'static str, value: f64 },

    /// The covariance matrix does not describe a physical Gaussian state.
    #[error("invalid state: {reason} ({value:e})")]
    InvalidState { reason: &'static str, value: f64 },

    /// No closed-form reference expression exists for the requested case.
    #[error("no closed-form reference for the {case} case")]
    NoClosedForm { case: &'static str },
}

pub type Result<T> = std::result::Result<T, Error>;
