//! Covariance evolution under the pumped photon-phonon Hamiltonian.
//!
//! The Heisenberg equations of the bilinear interaction
//! `λ(e^{−iω_L t} a_s† a_k† + e^{iω_L t} a_k a_s)` on top of two free
//! oscillators are linear in the quadratures, `ẋ = A(t)x`, so second
//! moments close on themselves: `σ̇ = A(t)σ + σA(t)ᵀ`.
//!
//! Two independent routes are provided and cross-checked in the tests:
//!
//! * [`bogoliubov_propagator`] — the closed-form symplectic solution at
//!   exact resonance: free local rotations composed with a two-mode
//!   squeeze of parameter `λt`.
//! * [`integrate_moments`] — classic fourth-order Runge-Kutta on the
//!   moment equation. It works at any detuning and never consults the
//!   closed form, so it can serve as a first-principles oracle for it.

use nalgebra::{Matrix2, Matrix4};

use crate::cov::{symplectic_form, Covariance};
use crate::error::{Error, Result};
use crate::params::ModelParams;

/// Generator of the linear quadrature equations at time `t`, in the basis
/// `(q_s, p_s, q_k, p_k)`:
///
/// ```text
/// q̇_s =  ω_s p_s − λ sin(ω_L t) q_k − λ cos(ω_L t) p_k
/// ṗ_s = −ω_s q_s − λ cos(ω_L t) q_k + λ sin(ω_L t) p_k
/// q̇_k =  ω_k p_k − λ sin(ω_L t) q_s − λ cos(ω_L t) p_s
/// ṗ_k = −ω_k q_k − λ cos(ω_L t) q_s + λ sin(ω_L t) p_s
/// ```
///
/// `Ω⁻¹A(t)` is symmetric for every `t` (Hamiltonian structure).
pub fn drift_matrix(t: f64, params: &ModelParams) -> Matrix4<f64> {
    let ws = params.omega_s();
    let wk = params.omega_k();
    let lam = params.lambda();
    let (sl, cl) = (params.omega_l() * t).sin_cos();
    #[rustfmt::skip]
    let a = Matrix4::new(
        0.0,       ws,        -lam * sl, -lam * cl,
        -ws,       0.0,       -lam * cl,  lam * sl,
        -lam * sl, -lam * cl,  0.0,       wk,
        -lam * cl,  lam * sl, -wk,        0.0,
    );
    a
}

/// Quadrature transition matrix `S(t)` with `Ṡ = A(t)S`, `S(0) = I`.
///
/// Acts on covariances by congruence, `σ ↦ SσSᵀ`, and preserves the
/// symplectic form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymplecticMap {
    s: Matrix4<f64>,
}

impl SymplecticMap {
    pub fn identity() -> Self {
        Self {
            s: Matrix4::identity(),
        }
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.s
    }

    /// `max |SΩSᵀ − Ω|`; zero for an exactly symplectic matrix.
    pub fn symplectic_defect(&self) -> f64 {
        let omega = symplectic_form();
        (self.s * omega * self.s.transpose() - omega).amax()
    }

    /// Congruence action on a covariance matrix, re-symmetrized.
    pub fn apply(&self, sigma: &Covariance) -> Covariance {
        let m = self.s * sigma.matrix() * self.s.transpose();
        Covariance::from_symmetric_unchecked((m + m.transpose()) * 0.5)
    }
}

/// 2×2 rotation `R(θ) = [[cos θ, −sin θ], [sin θ, cos θ]]` acting on `(q, p)`.
/// A free oscillator of frequency `ω` evolves as `R(−ωt)`.
fn rotation2(theta: f64) -> Matrix2<f64> {
    let (s, c) = theta.sin_cos();
    Matrix2::new(c, -s, s, c)
}

fn local_rotation(angle_s: f64, angle_k: f64) -> Matrix4<f64> {
    let mut r = Matrix4::zeros();
    r.fixed_view_mut::<2, 2>(0, 0).copy_from(&rotation2(angle_s));
    r.fixed_view_mut::<2, 2>(2, 2).copy_from(&rotation2(angle_k));
    r
}

/// Two-mode squeeze of parameter `r` in the frame co-rotating with both
/// oscillators: `q_s ↦ cosh(r) q_s − sinh(r) p_k` and cyclically.
fn two_mode_squeeze(r: f64) -> Matrix4<f64> {
    let c = r.cosh();
    let s = r.sinh();
    #[rustfmt::skip]
    let q = Matrix4::new(
        c,   0.0, 0.0, -s,
        0.0, c,   -s,  0.0,
        0.0, -s,  c,   0.0,
        -s,  0.0, 0.0, c,
    );
    q
}

/// Closed-form propagator at exact resonance (`ω_L = ω_s + ω_k`):
/// `S(t) = [R(−ω_s t) ⊕ R(−ω_k t)] · Q(λt)` with `Q` the two-mode squeeze.
///
/// The phase convention is pinned by agreement with [`integrate_moments`],
/// not assumed: the tests cross-check the two routes entrywise.
pub fn bogoliubov_propagator(t: f64, params: &ModelParams) -> Result<SymplecticMap> {
    if !params.is_resonant() {
        return Err(Error::UnsupportedRegime {
            detuning: params.detuning(),
        });
    }
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::InvalidParameter {
            name: "t",
            value: t,
            reason: "propagation time must be finite and nonnegative",
        });
    }
    let s = local_rotation(-params.omega_s() * t, -params.omega_k() * t)
        * two_mode_squeeze(params.lambda() * t);
    Ok(SymplecticMap { s })
}

/// Propagates a covariance with the closed-form propagator: `S(t) σ₀ S(t)ᵀ`.
pub fn propagate(sigma0: &Covariance, t: f64, params: &ModelParams) -> Result<Covariance> {
    Ok(bogoliubov_propagator(t, params)?.apply(sigma0))
}

/// Step ceiling that resolves the fastest frequency in the problem:
/// `10⁻³ · min(1/λ, 1/max(|ω_L|, ω_s + ω_k))`.
pub fn default_step(params: &ModelParams) -> f64 {
    let fastest = params.omega_l().abs().max(params.omega_s() + params.omega_k());
    1e-3 * (1.0 / params.lambda()).min(1.0 / fastest)
}

/// Fourth-order Runge-Kutta integration of `σ̇ = A(t)σ + σA(t)ᵀ` from 0 to
/// `t`, valid at any detuning. `dt` is a ceiling on the step; the actual
/// step is `t/n` with `n = ⌈t/dt⌉` so the endpoint is hit exactly. The
/// iterate is re-symmetrized after every step.
pub fn integrate_moments(
    sigma0: &Covariance,
    t: f64,
    params: &ModelParams,
    dt: f64,
) -> Result<Covariance> {
    Ok(integrate_trajectory(sigma0, &[t], params, dt)?.pop().expect("one snapshot"))
}

/// Integrates once through `times` (nondecreasing, starting at `≥ 0`) and
/// returns the covariance snapshot at each of them.
pub fn integrate_trajectory(
    sigma0: &Covariance,
    times: &[f64],
    params: &ModelParams,
    dt: f64,
) -> Result<Vec<Covariance>> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::InvalidStep { dt });
    }
    if times.windows(2).any(|w| w[1] < w[0]) || times.first().is_some_and(|&t0| t0 < 0.0) {
        return Err(Error::InvalidParameter {
            name: "times",
            value: f64::NAN,
            reason: "snapshot times must be nonnegative and nondecreasing",
        });
    }

    let mut out = Vec::with_capacity(times.len());
    let mut sigma = *sigma0.matrix();
    let mut t_now = 0.0;
    let mut step_index = 0usize;
    for &t_snap in times {
        let span = t_snap - t_now;
        if span > 0.0 {
            let n = (span / dt).ceil().max(1.0) as usize;
            let h = span / n as f64;
            for i in 0..n {
                let t_step = t_now + i as f64 * h;
                sigma = rk4_step(&sigma, t_step, h, params);
                step_index += 1;
                if !sigma.iter().all(|x| x.is_finite()) {
                    return Err(Error::Overflow { step: step_index });
                }
            }
            t_now = t_snap;
        }
        out.push(Covariance::from_symmetric_unchecked(sigma));
    }
    Ok(out)
}

fn rk4_step(sigma: &Matrix4<f64>, t: f64, h: f64, params: &ModelParams) -> Matrix4<f64> {
    let lyap = |ti: f64, s: &Matrix4<f64>| {
        let a = drift_matrix(ti, params);
        a * s + s * a.transpose()
    };
    let k1 = lyap(t, sigma);
    let k2 = lyap(t + 0.5 * h, &(sigma + k1 * (0.5 * h)));
    let k3 = lyap(t + 0.5 * h, &(sigma + k2 * (0.5 * h)));
    let k4 = lyap(t + h, &(sigma + k3 * h));
    let next = sigma + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
    (next + next.transpose()) * 0.5
}

/// Applies the local phase rotation `R(angle_s) ⊕ R(angle_k)` to a
/// covariance, `σ ↦ RσRᵀ`. With angles `(+ω_s t, +ω_k t)` this undoes the
/// free evolution and lands in the interaction (co-rotating) frame.
pub fn to_local_rotation_frame(sigma: &Covariance, angle_s: f64, angle_k: f64) -> Covariance {
    let r = local_rotation(angle_s, angle_k);
    let m = r * sigma.matrix() * r.transpose();
    Covariance::from_symmetric_unchecked((m + m.transpose()) * 0.5)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{initial_covariance, InitialState};

    fn params515() -> ModelParams {
        ModelParams::resonant(5.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn drift_with_zero_coupling_is_free_rotation() {
        let params = ModelParams::resonant(5.0, 1.0, 0.0).unwrap();
        let a = drift_matrix(0.7, &params);
        #[rustfmt::skip]
        let expected = Matrix4::new(
            0.0,  5.0, 0.0, 0.0,
           -5.0,  0.0, 0.0, 0.0,
            0.0,  0.0, 0.0, 1.0,
            0.0,  0.0, -1.0, 0.0,
        );
        assert_eq!(a, expected);
    }

    #[test]
    fn drift_coupling_entries_at_time_zero() {
        let params = ModelParams::resonant(1.0, 1.0, 0.3).unwrap();
        let a = drift_matrix(0.0, &params);
        assert_eq!(a[(0, 3)], -0.3);
        assert_eq!(a[(1, 2)], -0.3);
        assert_eq!(a[(2, 1)], -0.3);
        assert_eq!(a[(3, 0)], -0.3);
        // in-phase (sin) couplings vanish at t = 0
        assert_eq!(a[(0, 2)], 0.0);
        assert_eq!(a[(1, 3)], 0.0);
        assert_eq!(a[(2, 0)], 0.0);
        assert_eq!(a[(3, 1)], 0.0);
    }

    #[test]
    fn drift_has_hamiltonian_structure() {
        let omega_inv = -symplectic_form();
        for (t, params) in [
            (0.0, params515()),
            (0.37, params515()),
            (2.9, ModelParams::with_detuning(2.0, 0.7, 0.4, 0.25).unwrap()),
        ] {
            let m = omega_inv * drift_matrix(t, &params);
            assert!((m - m.transpose()).amax() <= 1e-14);
        }
    }

    #[test]
    fn propagator_at_time_zero_is_identity() {
        let s = bogoliubov_propagator(0.0, &params515()).unwrap();
        assert_eq!(*s.matrix(), Matrix4::identity());
    }

    #[test]
    fn propagator_is_symplectic_with_unit_determinant() {
        for t in [0.1, 0.5, 1.0, 2.0] {
            let s = bogoliubov_propagator(t, &params515()).unwrap();
            assert!(s.symplectic_defect() <= 1e-10, "t = {t}");
            assert!((s.matrix().determinant() - 1.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn propagator_rejects_detuned_parameters() {
        let params = ModelParams::with_detuning(5.0, 1.0, 1.0, 1e-12).unwrap();
        assert!(matches!(
            bogoliubov_propagator(0.5, &params),
            Err(Error::UnsupportedRegime { .. })
        ));
    }

    #[test]
    fn propagator_rejects_negative_time() {
        assert!(matches!(
            bogoliubov_propagator(-0.1, &params515()),
            Err(Error::InvalidParameter { name: "t", .. })
        ));
    }

    #[test]
    fn propagate_at_time_zero_returns_the_input() {
        let sigma0 = initial_covariance(&InitialState::ThermalPhonon { theta: 0.5 }).unwrap();
        let sigma = propagate(&sigma0, 0.0, &params515()).unwrap();
        assert_eq!(sigma, sigma0);
    }

    #[test]
    fn propagated_vacuum_diagonal_grows_as_cosh() {
        // λt = 0.5: every diagonal entry is cosh(2λt)/2 = cosh(1)/2
        let sigma = propagate(&Covariance::vacuum(), 0.5, &params515()).unwrap();
        for i in 0..4 {
            assert!((sigma.entry(i, i) - 0.7715403174076219).abs() < 1e-12);
        }
    }

    #[test]
    fn propagation_preserves_the_vacuum_determinant() {
        for t in [0.3, 1.0, 2.0] {
            let sigma = propagate(&Covariance::vacuum(), t, &params515()).unwrap();
            assert!((sigma.determinant() - 1.0 / 16.0).abs() < 1e-10 / 16.0);
        }
    }

    #[test]
    fn decoupled_thermal_state_is_stationary() {
        // λ = 0 and an isotropic per-mode diagonal: the derivative vanishes
        // identically, so RK4 reproduces the input bitwise.
        let params = ModelParams::resonant(5.0, 1.0, 0.0).unwrap();
        let sigma0 = initial_covariance(&InitialState::ThermalPhonon { theta: 0.3 }).unwrap();
        let sigma = integrate_moments(&sigma0, 2.0, &params, 1e-3).unwrap();
        assert_eq!(sigma, sigma0);
    }

    #[test]
    fn integrator_matches_closed_form_at_unit_lambda_t() {
        let params = params515();
        let sigma_rk = integrate_moments(&Covariance::vacuum(), 1.0, &params, 1e-3).unwrap();
        let sigma_cf = propagate(&Covariance::vacuum(), 1.0, &params).unwrap();
        assert!(sigma_rk.max_abs_diff(&sigma_cf) < 1e-8);
    }

    #[test]
    fn integrator_rejects_non_positive_steps() {
        let sigma0 = Covariance::vacuum();
        for dt in [0.0, -1e-3, f64::NAN] {
            assert!(matches!(
                integrate_moments(&sigma0, 1.0, &params515(), dt),
                Err(Error::InvalidStep { .. })
            ));
        }
    }

    #[test]
    fn integrator_reports_overflow_with_step_index() {
        // a huge coupling with a coarse step blows the iterate up to ±inf
        let params = ModelParams::resonant(1.0, 1.0, 1e8).unwrap();
        match integrate_moments(&Covariance::vacuum(), 10.0, &params, 0.5) {
            Err(Error::Overflow { step }) => assert!(step >= 1),
            other => panic!("expected overflow, got {other:?}"),
        }
    }

    #[test]
    fn trajectory_times_must_be_ordered() {
        let sigma0 = Covariance::vacuum();
        let params = params515();
        assert!(integrate_trajectory(&sigma0, &[0.5, 0.2], &params, 1e-3).is_err());
        assert!(integrate_trajectory(&sigma0, &[-0.1, 0.2], &params, 1e-3).is_err());
    }

    #[test]
    fn rotation_frame_identities() {
        let sigma = propagate(&Covariance::vacuum(), 0.4, &params515()).unwrap();
        let same = to_local_rotation_frame(&sigma, 0.0, 0.0);
        assert_eq!(same, sigma);

        let full_turn = to_local_rotation_frame(
            &sigma,
            2.0 * std::f64::consts::PI,
            2.0 * std::f64::consts::PI,
        );
        assert!(full_turn.max_abs_diff(&sigma) < 1e-12);
    }

    #[test]
    fn vacuum_is_rotation_invariant() {
        let rotated = to_local_rotation_frame(&Covariance::vacuum(), 0.83, -2.4);
        assert!(rotated.max_abs_diff(&Covariance::vacuum()) < 1e-15);
    }

    #[test]
    fn default_step_resolves_pump_and_coupling() {
        let params = params515();
        assert!((default_step(&params) - 1e-3 / 6.0).abs() < 1e-18);
        let slow = ModelParams::resonant(0.01, 0.01, 2.0).unwrap();
        assert!((default_step(&slow) - 1e-3 / 2.0).abs() < 1e-18);
    }

    #[test]
    fn propagated_thermal_state_is_bona_fide() {
        let sigma0 = initial_covariance(&InitialState::ThermalPhonon { theta: 0.5 }).unwrap();
        let sigma = integrate_moments(&sigma0, 1.0, &params515(), 1e-3).unwrap();
        assert!(sigma.bona_fide().satisfied);
    }

    #[test]
    fn squeezed_start_keeps_unit_scaled_determinant() {
        let sigma0 = initial_covariance(&InitialState::SqueezedPhonon { eta: 2.0 }).unwrap();
        let d0 = sigma0.determinant();
        let sigma = propagate(&sigma0, 1.7, &params515()).unwrap();
        assert!(((sigma.determinant() - d0) / d0).abs() < 1e-10);
    }
}
