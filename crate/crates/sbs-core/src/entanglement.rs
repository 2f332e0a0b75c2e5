//! Correlation and entanglement measures evaluated on covariance matrices.
//!
//! * [`measure_f`] — sum of the squared intermode covariances, i.e. the
//!   squared Frobenius norm of the photon-phonon block. Zero exactly for a
//!   product state, invariant under local phase rotations.
//! * [`measure_eg`] — determinant-based distance between the state and the
//!   product of its marginals, built from the block inverse of σ.
//! * [`log_negativity`] — the standard monotone from the partial
//!   transpose's smallest symplectic eigenvalue, kept as an independent
//!   cross-check on the other two.

use nalgebra::{Matrix2, Matrix4};
use serde::Serialize;

use crate::cov::{block_det, symplectic_eigenvalues_from_invariants, Covariance};
use crate::error::{Error, Result};
use crate::formulas::{closed_form_eg, closed_form_f};
use crate::params::ModelParams;
use crate::state::InitialState;

/// Verdict tolerance shared by [`full_report`] and the `verify` audit:
/// well above integrator error, well below any genuine discrepancy.
pub const MATCH_TOLERANCE: f64 = 1e-6;

/// Condition-number guard for the matrix inversions in [`measure_eg`].
pub const CONDITION_LIMIT: f64 = 1e12;

/// Determinant guard below which σ is treated as singular.
pub const DET_GUARD: f64 = 1e-30;

/// Sum of squared intermode covariances:
/// `σ_qsqk² + σ_pspk² + σ_qspk² + σ_psqk²`.
pub fn measure_f(sigma: &Covariance) -> f64 {
    sigma.intermode_block().iter().map(|x| x * x).sum()
}

/// Block data of the inverse covariance and the derived marginal product.
///
/// `σ⁻¹ = [[B, C], [Cᵀ, D]]`, `σ₁⁻¹ = B − CD⁻¹Cᵀ`, `σ₂⁻¹ = D − CᵀB⁻¹C`,
/// `σ̃ = σ₁ ⊕ σ₂`. For a bona fide σ the Schur complements are positive
/// definite and `σ₁`, `σ₂` equal the marginal blocks of σ itself, which the
/// tests use as an independent consistency check.
#[derive(Clone, Copy, Debug)]
pub struct EgDecomposition {
    pub b: Matrix2<f64>,
    pub c: Matrix2<f64>,
    pub d: Matrix2<f64>,
    pub sigma1: Matrix2<f64>,
    pub sigma2: Matrix2<f64>,
    pub sigma_tilde: Matrix4<f64>,
}

/// Inverts σ and forms the marginal-product matrix σ̃ via the Schur
/// complements of the block inverse.
pub fn eg_decomposition(sigma: &Covariance) -> Result<EgDecomposition> {
    let m = sigma.matrix();

    let det = m.determinant();
    if det.abs() <= DET_GUARD {
        return Err(Error::IllConditioned {
            quantity: "det(sigma)",
            value: det,
        });
    }
    let eigs = m.symmetric_eigenvalues();
    let max_abs = eigs.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
    let min_abs = eigs.iter().fold(f64::INFINITY, |a, &x| a.min(x.abs()));
    if !(min_abs > 0.0) || max_abs / min_abs > CONDITION_LIMIT {
        return Err(Error::IllConditioned {
            quantity: "condition number of sigma",
            value: max_abs / min_abs,
        });
    }

    let inv = m.try_inverse().ok_or(Error::IllConditioned {
        quantity: "det(sigma)",
        value: det,
    })?;
    let b = inv.fixed_view::<2, 2>(0, 0).into_owned();
    let c = inv.fixed_view::<2, 2>(0, 2).into_owned();
    let d = inv.fixed_view::<2, 2>(2, 2).into_owned();

    let d_inv = d.try_inverse().ok_or(Error::IllConditioned {
        quantity: "det(D)",
        value: d.determinant(),
    })?;
    let b_inv = b.try_inverse().ok_or(Error::IllConditioned {
        quantity: "det(B)",
        value: b.determinant(),
    })?;
    let sigma1 = (b - c * d_inv * c.transpose())
        .try_inverse()
        .ok_or(Error::IllConditioned {
            quantity: "det(sigma1^-1)",
            value: (b - c * d_inv * c.transpose()).determinant(),
        })?;
    let sigma2 = (d - c.transpose() * b_inv * c)
        .try_inverse()
        .ok_or(Error::IllConditioned {
            quantity: "det(sigma2^-1)",
            value: (d - c.transpose() * b_inv * c).determinant(),
        })?;

    let mut sigma_tilde = Matrix4::zeros();
    sigma_tilde.fixed_view_mut::<2, 2>(0, 0).copy_from(&sigma1);
    sigma_tilde.fixed_view_mut::<2, 2>(2, 2).copy_from(&sigma2);

    Ok(EgDecomposition {
        b,
        c,
        d,
        sigma1,
        sigma2,
        sigma_tilde,
    })
}

/// Gaussian distance measure
/// `e_G = 1/(4√det σ) + 1/(4√det σ̃) − 2/√det(σ + σ̃)`.
///
/// Vanishes identically when σ is a product state (then σ̃ = σ). Every
/// determinant under a square root must be positive for a bona fide σ;
/// a negative one is reported as an invalid state rather than promoted to
/// complex arithmetic.
pub fn measure_eg(sigma: &Covariance) -> Result<f64> {
    let dec = eg_decomposition(sigma)?;
    let det_sigma = sigma.determinant();
    let det_tilde = dec.sigma1.determinant() * dec.sigma2.determinant();
    let det_sum = (sigma.matrix() + dec.sigma_tilde).determinant();
    for (name, value) in [
        ("det(sigma)", det_sigma),
        ("det(sigma_tilde)", det_tilde),
        ("det(sigma + sigma_tilde)", det_sum),
    ] {
        if !(value > 0.0) {
            return Err(Error::InvalidState {
                reason: name,
                value,
            });
        }
    }
    Ok(0.25 / det_sigma.sqrt() + 0.25 / det_tilde.sqrt() - 2.0 / det_sum.sqrt())
}

/// Logarithmic negativity from the partial transpose on the phonon mode:
/// `max(0, −log₂ 2ν̃)` with `ν̃` the smallest symplectic eigenvalue of the
/// partially transposed covariance. The input must be bona fide.
pub fn log_negativity(sigma: &Covariance) -> Result<f64> {
    let check = sigma.bona_fide();
    if !check.satisfied {
        return Err(Error::InvalidState {
            reason: "covariance violates the uncertainty relation",
            value: check.min_symplectic_eigenvalue,
        });
    }
    // Partial transposition negates p_k, flipping the sign of det C in the
    // two-mode invariant while leaving det σ unchanged.
    let m = sigma.matrix();
    let det_a = block_det(m, 0, 0);
    let det_b = block_det(m, 2, 2);
    let det_c = block_det(m, 0, 2);
    let delta_pt = det_a + det_b - 2.0 * det_c;
    let scale = det_a.abs() + det_b.abs() + 2.0 * det_c.abs();
    let nu_min = symplectic_eigenvalues_from_invariants(delta_pt, m.determinant(), scale)[0];
    Ok((-(2.0 * nu_min).log2()).max(0.0))
}

/// MATCH/MISMATCH decision against [`MATCH_TOLERANCE`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Match,
    Mismatch,
}

impl Verdict {
    pub fn from_deviation(dev: f64) -> Self {
        if dev <= MATCH_TOLERANCE {
            Self::Match
        } else {
            Self::Mismatch
        }
    }
}

/// All three measures of a state, optionally paired with the quoted closed
/// forms and their absolute discrepancies.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct MeasureReport {
    #[serde(rename = "F")]
    pub f: f64,
    #[serde(rename = "eG")]
    pub eg: f64,
    #[serde(rename = "logneg")]
    pub log_negativity: f64,
    #[serde(rename = "closedF", skip_serializing_if = "Option::is_none")]
    pub closed_f: Option<f64>,
    #[serde(rename = "closedEG", skip_serializing_if = "Option::is_none")]
    pub closed_eg: Option<f64>,
    #[serde(rename = "diffF", skip_serializing_if = "Option::is_none")]
    pub diff_f: Option<f64>,
    #[serde(rename = "diffEG", skip_serializing_if = "Option::is_none")]
    pub diff_eg: Option<f64>,
    #[serde(rename = "verdictF", skip_serializing_if = "Option::is_none")]
    pub verdict_f: Option<Verdict>,
    #[serde(rename = "verdictEG", skip_serializing_if = "Option::is_none")]
    pub verdict_eg: Option<Verdict>,
}

/// Evaluates all three measures on `sigma`; when `closed_form` names the
/// initial state and evolution the state came from, the matching quoted
/// closed forms are attached together with absolute differences and
/// MATCH/MISMATCH verdicts at [`MATCH_TOLERANCE`]. The squeezed case has no
/// quoted `eG`, so those fields stay absent.
pub fn full_report(
    sigma: &Covariance,
    closed_form: Option<(&InitialState, f64, &ModelParams)>,
) -> Result<MeasureReport> {
    let f = measure_f(sigma);
    let eg = measure_eg(sigma)?;
    let log_neg = log_negativity(sigma)?;

    let mut report = MeasureReport {
        f,
        eg,
        log_negativity: log_neg,
        closed_f: None,
        closed_eg: None,
        diff_f: None,
        diff_eg: None,
        verdict_f: None,
        verdict_eg: None,
    };

    if let Some((state, t, params)) = closed_form {
        let cf = closed_form_f(state, t, params.lambda())?;
        report.closed_f = Some(cf);
        report.diff_f = Some((f - cf).abs());
        report.verdict_f = Some(Verdict::from_deviation((f - cf).abs()));

        match closed_form_eg(state, t, params.lambda(), params.omega_l()) {
            Ok(ceg) => {
                report.closed_eg = Some(ceg);
                report.diff_eg = Some((eg - ceg).abs());
                report.verdict_eg = Some(Verdict::from_deviation((eg - ceg).abs()));
            }
            Err(Error::NoClosedForm { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{propagate, to_local_rotation_frame};
    use crate::formulas::covariance_vacuum_start;
    use crate::state::initial_covariance;
    use nalgebra::Vector4;
    use std::f64::consts::PI;

    fn params515() -> ModelParams {
        ModelParams::resonant(5.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn f_vanishes_on_the_vacuum() {
        assert_eq!(measure_f(&Covariance::vacuum()), 0.0);
    }

    #[test]
    fn f_matches_its_closed_form_on_the_quoted_solution() {
        // algebraic identity between the measure over the quoted vacuum
        // solution and F1, exact up to rounding
        let params = params515();
        for i in 0..=20 {
            let t = 2.0 * i as f64 / 20.0;
            let f = measure_f(&covariance_vacuum_start(t, &params));
            let f1 = closed_form_f(&InitialState::Vacuum, t, 1.0).unwrap();
            assert!((f - f1).abs() <= 1e-12, "t = {t}: {f} vs {f1}");
        }
    }

    #[test]
    fn f_is_invariant_under_local_rotations() {
        let sigma = propagate(&Covariance::vacuum(), 0.8, &params515()).unwrap();
        let f0 = measure_f(&sigma);
        for (a, b) in [(0.3, -1.2), (2.0 * PI, PI / 3.0), (-0.7, 0.7)] {
            let f = measure_f(&to_local_rotation_frame(&sigma, a, b));
            assert!((f - f0).abs() <= 1e-12);
        }
    }

    #[test]
    fn eg_vanishes_on_product_states() {
        assert!(measure_eg(&Covariance::vacuum()).unwrap().abs() <= 1e-12);
        let thermal = initial_covariance(&InitialState::ThermalPhonon { theta: 0.5 }).unwrap();
        assert!(measure_eg(&thermal).unwrap().abs() <= 1e-12);
        let squeezed = initial_covariance(&InitialState::SqueezedPhonon { eta: 3.0 }).unwrap();
        assert!(measure_eg(&squeezed).unwrap().abs() <= 1e-12);
    }

    #[test]
    fn eg_decomposition_recovers_the_marginals() {
        // block-inverse identity: sigma1 and sigma2 are the marginal blocks
        let sigma = propagate(&Covariance::vacuum(), 0.6, &params515()).unwrap();
        let dec = eg_decomposition(&sigma).unwrap();
        assert!((dec.sigma1 - sigma.photon_block()).amax() < 1e-10);
        assert!((dec.sigma2 - sigma.phonon_block()).amax() < 1e-10);
    }

    #[test]
    fn eg_frozen_value_on_the_quoted_vacuum_solution() {
        // λt = 0.5 at pump phase 2π, where the quoted eG1 and the block
        // pipeline agree
        let params = ModelParams::resonant(4.0 * PI - 1.0, 1.0, 1.0).unwrap();
        let sigma = covariance_vacuum_start(0.5, &params);
        let eg = measure_eg(&sigma).unwrap();
        assert!((eg - 0.4375708504443865).abs() < 1e-9);
        let quoted = closed_form_eg(&InitialState::Vacuum, 0.5, 1.0, params.omega_l()).unwrap();
        assert!((eg - quoted).abs() < 1e-9);
    }

    #[test]
    fn eg_is_invariant_under_local_rotations() {
        let sigma = propagate(&Covariance::vacuum(), 0.8, &params515()).unwrap();
        let e0 = measure_eg(&sigma).unwrap();
        for (a, b) in [(0.4, -0.9), (1.1, 2.2), (-PI, PI / 5.0)] {
            let e = measure_eg(&to_local_rotation_frame(&sigma, a, b)).unwrap();
            assert!((e - e0).abs() <= 1e-9);
        }
    }

    #[test]
    fn eg_rejects_near_singular_input() {
        let m = Matrix4::from_diagonal(&Vector4::new(1e-9, 1e-9, 1e9, 1e9));
        let sigma = Covariance::from_matrix(m).unwrap();
        assert!(matches!(
            measure_eg(&sigma),
            Err(Error::IllConditioned { .. })
        ));
    }

    #[test]
    fn log_negativity_vanishes_on_separable_states() {
        assert_eq!(log_negativity(&Covariance::vacuum()).unwrap(), 0.0);
        let thermal = initial_covariance(&InitialState::ThermalPhonon { theta: 0.2 }).unwrap();
        assert_eq!(log_negativity(&thermal).unwrap(), 0.0);
    }

    #[test]
    fn log_negativity_of_two_mode_squeezed_vacuum() {
        // ν̃ = e^{−2λt}/2, so the negativity is 2λt/ln 2
        let sigma = propagate(&Covariance::vacuum(), 0.5, &params515()).unwrap();
        let ln = log_negativity(&sigma).unwrap();
        assert!((ln - 1.4426950408889634).abs() < 1e-8);
    }

    #[test]
    fn log_negativity_rejects_unphysical_covariances() {
        let m = Matrix4::from_diagonal(&Vector4::new(0.1, 0.1, 0.5, 0.5));
        let sigma = Covariance::from_matrix(m).unwrap();
        assert!(matches!(
            log_negativity(&sigma),
            Err(Error::InvalidState { .. })
        ));
    }

    #[test]
    fn full_report_at_time_zero_matches_trivially() {
        let sigma = Covariance::vacuum();
        let report = full_report(&sigma, Some((&InitialState::Vacuum, 0.0, &params515()))).unwrap();
        assert_eq!(report.f, 0.0);
        assert!(report.eg.abs() <= 1e-12);
        assert_eq!(report.log_negativity, 0.0);
        assert_eq!(report.closed_f, Some(0.0));
        assert_eq!(report.closed_eg, Some(0.0));
        assert_eq!(report.verdict_f, Some(Verdict::Match));
        assert_eq!(report.verdict_eg, Some(Verdict::Match));
    }

    #[test]
    fn full_report_f_identity_at_half_coupling_time() {
        let params = params515();
        let sigma = propagate(&Covariance::vacuum(), 0.5, &params).unwrap();
        let report = full_report(&sigma, Some((&InitialState::Vacuum, 0.5, &params))).unwrap();
        assert!(report.diff_f.unwrap() <= 1e-12);
        assert_eq!(report.verdict_f, Some(Verdict::Match));
    }

    #[test]
    fn full_report_squeezed_case_has_no_quoted_eg() {
        let params = params515();
        let state = InitialState::SqueezedPhonon { eta: 2.0 };
        let sigma0 = initial_covariance(&state).unwrap();
        let sigma = propagate(&sigma0, 0.5, &params).unwrap();
        let report = full_report(&sigma, Some((&state, 0.5, &params))).unwrap();
        assert!(report.closed_f.is_some());
        assert!(report.closed_eg.is_none());
        assert!(report.diff_eg.is_none());
        assert!(report.verdict_eg.is_none());

        let json = serde_json::to_value(report).unwrap();
        assert!(json.get("closedF").is_some());
        assert!(json.get("closedEG").is_none());
        assert!(json.get("F").is_some());
        assert!(json.get("eG").is_some());
        assert!(json.get("logneg").is_some());
    }

    #[test]
    fn verdict_serializes_uppercase() {
        assert_eq!(serde_json::to_string(&Verdict::Match).unwrap(), "\"MATCH\"");
        assert_eq!(
            serde_json::to_string(&Verdict::Mismatch).unwrap(),
            "\"MISMATCH\""
        );
    }
}
