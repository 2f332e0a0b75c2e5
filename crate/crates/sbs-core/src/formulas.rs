//! Verbatim evaluators of the quoted closed-form solutions for the three
//! initial states, plus the closed-form entanglement values quoted with
//! them.
//!
//! These are transcriptions of reference results, *not* re-derivations:
//! the module deliberately never touches [`crate::dynamics`], so the
//! `verify` tooling can audit each expression against the first-principles
//! integrator. In the audit report the covariance solutions are labelled
//! `eq2` (vacuum start), `eq3` (thermal start), `eq4` (squeezed start) and
//! the measures `F1`/`F2`/`F3` and `eG1`/`eG2`.
//!
//! Two details of the transcription are resolved readings rather than
//! literal copies, because the source lines are literally inconsistent:
//!
//! * the thermal solution labels one cross entry twice; it is read here as
//!   `σ_psqk = σ_qspk`, by symmetry with the vacuum solution;
//! * the squeezed solution prints two different lines for `σ_psqk`; the
//!   first is read as `σ_psqs`, by pattern with its printed `σ_pkqk` line.
//!
//! Both readings, and the known `t = 0` inconsistency of the thermal
//! solution's phonon variances, are audited numerically by the `verify`
//! command rather than silently corrected here.

use nalgebra::Matrix4;

use crate::cov::Covariance;
use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::state::InitialState;

/// Quoted covariance solution for the vacuum start (`eq2`). Valid on
/// resonance. Diagonals grow as `cosh(2λt)/2`; the intermode block carries
/// the pump phase `ω_L t`.
pub fn covariance_vacuum_start(t: f64, params: &ModelParams) -> Covariance {
    let ch = (2.0 * params.lambda() * t).cosh() * 0.5;
    let sh = (2.0 * params.lambda() * t).sinh() * 0.5;
    let (sl, cl) = (params.omega_l() * t).sin_cos();

    let mut m = Matrix4::zeros();
    for i in 0..4 {
        m[(i, i)] = ch;
    }
    set_sym(&mut m, PS, QK, -sh * cl);
    set_sym(&mut m, QS, PK, -sh * cl);
    set_sym(&mut m, PS, PK, sh * sl);
    set_sym(&mut m, QS, QK, -sh * sl);
    Covariance::from_symmetric_unchecked(m)
}

/// Quoted covariance solution for the thermal-phonon start (`eq3`),
/// transcribed as printed: note that all four variances share the photon
/// expression and reduce to 1/2 at `t = 0`, which contradicts a thermal
/// phonon; the discrepancy is reported by the audit, not patched here.
pub fn covariance_thermal_start(t: f64, params: &ModelParams, theta: f64) -> Result<Covariance> {
    InitialState::ThermalPhonon { theta }.validate()?;
    let pref = 1.0 + 1.0 / theta.tanh();
    let lam_t = params.lambda() * t;
    let diag = 0.5 * lam_t.sinh().powi(2) * pref + 0.5;
    let sh2 = (2.0 * params.lambda() * t).sinh();
    let (sl, cl) = (params.omega_l() * t).sin_cos();

    let mut m = Matrix4::zeros();
    for i in 0..4 {
        m[(i, i)] = diag;
    }
    set_sym(&mut m, PS, PK, 0.25 * sh2 * sl * pref);
    set_sym(&mut m, QS, QK, -0.25 * sh2 * sl * pref);
    set_sym(&mut m, PS, QK, -0.25 * sh2 * cl * pref);
    set_sym(&mut m, QS, PK, -0.25 * sh2 * cl * pref);
    Ok(Covariance::from_symmetric_unchecked(m))
}

/// Quoted covariance solution for the squeezed-phonon start (`eq4`), with
/// its explicit free phases `ω_s t` and `ω_k t`.
pub fn covariance_squeezed_start(t: f64, params: &ModelParams, eta: f64) -> Result<Covariance> {
    InitialState::SqueezedPhonon { eta }.validate()?;
    let lam_t = params.lambda() * t;
    let (c2, s2) = (lam_t.cosh().powi(2), lam_t.sinh().powi(2));
    let sh2 = (2.0 * params.lambda() * t).sinh();
    let (s1, c1) = (params.omega_s() * t).sin_cos();
    let (sk, ck) = (params.omega_k() * t).sin_cos();
    let (sl, cl) = (params.omega_l() * t).sin_cos();
    let e = eta;

    let mut m = Matrix4::zeros();
    m[(PS, PS)] = (e * c2 + s2 * (e * e * s1 * s1 + c1 * c1)) / (2.0 * e);
    m[(QS, QS)] = (e * c2 + s2 * (e * e * c1 * c1 + s1 * s1)) / (2.0 * e);
    m[(PK, PK)] = (e * s2 + c2 * (e * e * ck * ck + sk * sk)) / (2.0 * e);
    m[(QK, QK)] = (e * s2 + c2 * (e * e * sk * sk + ck * ck)) / (2.0 * e);

    set_sym(&mut m, PS, PK, sh2 * (e * sl + e * e * s1 * ck + c1 * sk) / (4.0 * e));
    set_sym(&mut m, PS, QS, s2 * (2.0 * params.omega_s() * t).sin() * (1.0 - e * e) / (4.0 * e));
    set_sym(&mut m, PS, QK, -sh2 * (e * cl - e * e * s1 * sk + c1 * ck) / (4.0 * e));
    set_sym(&mut m, PK, QS, -sh2 * (e * cl - s1 * sk + e * e * c1 * ck) / (4.0 * e));
    set_sym(&mut m, PK, QK, -c2 * (2.0 * params.omega_k() * t).sin() * (1.0 - e * e) / (4.0 * e));
    set_sym(&mut m, QS, QK, -sh2 * (e * sl + s1 * ck + e * e * c1 * sk) / (4.0 * e));
    Ok(Covariance::from_symmetric_unchecked(m))
}

/// Dispatches to the quoted covariance solution matching the initial state.
pub fn closed_form_covariance(
    state: &InitialState,
    t: f64,
    params: &ModelParams,
) -> Result<Covariance> {
    match *state {
        InitialState::Vacuum => Ok(covariance_vacuum_start(t, params)),
        InitialState::ThermalPhonon { theta } => covariance_thermal_start(t, params, theta),
        InitialState::SqueezedPhonon { eta } => covariance_squeezed_start(t, params, eta),
    }
}

/// Quoted closed form of the intermode-covariance measure `F` for each
/// start (`F1`, `F2`, `F3`):
///
/// ```text
/// F1 = sinh²(2λt)/2
/// F2 = sinh²(2λt)(1 + coth θ)²/8
/// F3 = sinh²(2λt)(1 + 1/η)²(η² + 1)/16
/// ```
pub fn closed_form_f(state: &InitialState, t: f64, lambda: f64) -> Result<f64> {
    state.validate()?;
    let s2 = (2.0 * lambda * t).sinh().powi(2);
    Ok(match *state {
        InitialState::Vacuum => 0.5 * s2,
        InitialState::ThermalPhonon { theta } => {
            s2 * (1.0 + 1.0 / theta.tanh()).powi(2) / 8.0
        }
        InitialState::SqueezedPhonon { eta } => {
            s2 * (1.0 + 1.0 / eta).powi(2) * (eta * eta + 1.0) / 16.0
        }
    })
}

/// Quoted closed form of the Gaussian distance measure for the vacuum and
/// thermal starts (`eG1`, `eG2`), with `x = cos²(ω_L t) sinh²(2λt)`:
///
/// ```text
/// eG1 = x(3x + 2) / ((1 + x)(4 + 3x))
/// eG2 = x(3x + 2τ) / ((τ + x)(4τ + 3x)),   τ = τ(θ)
/// ```
///
/// No closed form is quoted for the squeezed start; evaluate
/// [`crate::entanglement::measure_eg`] on [`covariance_squeezed_start`]
/// instead.
pub fn closed_form_eg(state: &InitialState, t: f64, lambda: f64, omega_l: f64) -> Result<f64> {
    state.validate()?;
    let x = (omega_l * t).cos().powi(2) * (2.0 * lambda * t).sinh().powi(2);
    match *state {
        InitialState::Vacuum => Ok(x * (3.0 * x + 2.0) / ((1.0 + x) * (4.0 + 3.0 * x))),
        InitialState::ThermalPhonon { theta } => {
            let tau = tau(theta)?;
            Ok(x * (3.0 * x + 2.0 * tau) / ((tau + x) * (4.0 * tau + 3.0 * x)))
        }
        InitialState::SqueezedPhonon { .. } => Err(Error::NoClosedForm {
            case: "squeezed-phonon",
        }),
    }
}

/// Temperature factor `τ(θ) = 2/(coth(2θ) + 1)`, strictly increasing on
/// `θ > 0` with limit 1 as `θ → ∞`.
pub fn tau(theta: f64) -> Result<f64> {
    if !(theta > 0.0) || !theta.is_finite() {
        return Err(Error::InvalidParameter {
            name: "theta",
            value: theta,
            reason: "inverse temperature must be positive and finite",
        });
    }
    Ok(2.0 / (1.0 / (2.0 * theta).tanh() + 1.0))
}

const QS: usize = 0;
const PS: usize = 1;
const QK: usize = 2;
const PK: usize = 3;

fn set_sym(m: &mut Matrix4<f64>, i: usize, j: usize, value: f64) {
    m[(i, j)] = value;
    m[(j, i)] = value;
}
