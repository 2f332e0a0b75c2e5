//! Quadrature covariance matrices of two-mode Gaussian states.
//!
//! Conventions used throughout the crate: quadratures `q = (a + a†)/√2`,
//! `p = (a − a†)/(i√2)` with `ħ = 1`, so the vacuum variance is 1/2 per
//! quadrature. The basis order is `(q_s, p_s, q_k, p_k)` — Stokes photon
//! first, acoustic phonon second — and the symplectic form is block
//! diagonal with 2×2 blocks `[[0, 1], [−1, 0]]`.

use nalgebra::{Matrix2, Matrix4};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Quadrature names in basis order; entry `(i, j)` of a covariance matrix is
/// the symmetrized second moment of `QUADRATURES[i]` and `QUADRATURES[j]`.
pub const QUADRATURES: [&str; 4] = ["qs", "ps", "qk", "pk"];

/// Largest asymmetry `max |σ_ij − σ_ji|` accepted when building a [`Covariance`].
pub const SYMMETRY_TOL: f64 = 1e-9;

/// Slack on the uncertainty bound `ν ≥ 1/2` used by [`check_bona_fide`]:
/// larger than accumulated integrator round-off, far smaller than any
/// physical violation of interest.
pub const BONA_FIDE_TOL: f64 = 1e-9;

/// The two-mode symplectic form Ω with `Ω² = −I` and `Ωᵀ = −Ω`.
pub fn symplectic_form() -> Matrix4<f64> {
    #[rustfmt::skip]
    let omega = Matrix4::new(
        0.0,  1.0,  0.0,  0.0,
       -1.0,  0.0,  0.0,  0.0,
        0.0,  0.0,  0.0,  1.0,
        0.0,  0.0, -1.0,  0.0,
    );
    omega
}

/// 4×4 real symmetric matrix of quadrature second moments.
///
/// Symmetry and a positive diagonal are enforced on construction; physical
/// validity (the uncertainty relation) is a separate check, so squeezed and
/// deliberately unphysical matrices can both be represented.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Covariance {
    m: Matrix4<f64>,
}

impl Covariance {
    /// Both modes in the ground state: `(1/2)·I`.
    pub fn vacuum() -> Self {
        Self {
            m: Matrix4::identity() * 0.5,
        }
    }

    /// Builds a covariance from a raw matrix, verifying symmetry to
    /// [`SYMMETRY_TOL`] and a strictly positive diagonal. The stored matrix
    /// is the symmetric part `(m + mᵀ)/2`.
    pub fn from_matrix(m: Matrix4<f64>) -> Result<Self> {
        let asym = (m - m.transpose()).amax();
        if !asym.is_finite() || asym > SYMMETRY_TOL {
            return Err(Error::MalformedMatrix {
                reason: "matrix is not symmetric",
                value: asym,
            });
        }
        for i in 0..4 {
            if !(m[(i, i)] > 0.0) {
                return Err(Error::MalformedMatrix {
                    reason: "non-positive diagonal variance",
                    value: m[(i, i)],
                });
            }
        }
        Ok(Self::from_symmetric_unchecked((m + m.transpose()) * 0.5))
    }

    /// For matrices that are symmetric by construction (propagated or
    /// evaluated from symmetric expressions).
    pub(crate) fn from_symmetric_unchecked(m: Matrix4<f64>) -> Self {
        Self { m }
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.m
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.m[(row, col)]
    }

    /// 2×2 photon (Stokes) marginal block.
    pub fn photon_block(&self) -> Matrix2<f64> {
        self.m.fixed_view::<2, 2>(0, 0).into_owned()
    }

    /// 2×2 phonon marginal block.
    pub fn phonon_block(&self) -> Matrix2<f64> {
        self.m.fixed_view::<2, 2>(2, 2).into_owned()
    }

    /// 2×2 photon-phonon correlation block (rows `q_s, p_s`, columns `q_k, p_k`).
    pub fn intermode_block(&self) -> Matrix2<f64> {
        self.m.fixed_view::<2, 2>(0, 2).into_owned()
    }

    /// The 10 independent entries in row-major upper-triangle order:
    /// `(qs,qs), (qs,ps), (qs,qk), (qs,pk), (ps,ps), (ps,qk), (ps,pk),
    /// (qk,qk), (qk,pk), (pk,pk)`.
    pub fn upper_triangle(&self) -> [f64; 10] {
        let m = &self.m;
        [
            m[(0, 0)],
            m[(0, 1)],
            m[(0, 2)],
            m[(0, 3)],
            m[(1, 1)],
            m[(1, 2)],
            m[(1, 3)],
            m[(2, 2)],
            m[(2, 3)],
            m[(3, 3)],
        ]
    }

    pub fn determinant(&self) -> f64 {
        self.m.determinant()
    }

    /// Largest entrywise absolute difference to another covariance.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.m - other.m).amax()
    }

    /// Entrywise worst offender against `other`: `(deviation, (row, col))`
    /// with `col ≥ row`.
    pub fn worst_entry_diff(&self, other: &Self) -> (f64, (usize, usize)) {
        let mut worst = (0.0, (0, 0));
        for i in 0..4 {
            for j in i..4 {
                let d = (self.m[(i, j)] - other.m[(i, j)]).abs();
                if d > worst.0 {
                    worst = (d, (i, j));
                }
            }
        }
        worst
    }

    /// The two symplectic eigenvalues in ascending order, from the two-mode
    /// invariants `Δ = det A + det B + 2 det C` and `det σ`:
    /// `ν±² = (Δ ± √(Δ² − 4 det σ))/2`. The smaller root is evaluated in the
    /// rationalized form `2 det σ / (Δ + √(Δ² − 4 det σ))`, which stays
    /// accurate when the discriminant nearly cancels.
    pub fn symplectic_eigenvalues(&self) -> [f64; 2] {
        let (delta, scale) = two_mode_invariants(&self.m);
        symplectic_eigenvalues_from_invariants(delta, self.m.determinant(), scale)
    }

    /// Uncertainty-relation check on this (already symmetric) matrix.
    pub fn bona_fide(&self) -> BonaFide {
        let nu_min = self.symplectic_eigenvalues()[0];
        BonaFide {
            satisfied: nu_min >= 0.5 - BONA_FIDE_TOL,
            min_symplectic_eigenvalue: nu_min,
        }
    }
}

/// Outcome of the uncertainty-relation check `σ + (i/2)Ω ⪰ 0`, decided via
/// symplectic eigenvalues `ν ≥ 1/2 −` [`BONA_FIDE_TOL`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BonaFide {
    pub satisfied: bool,
    pub min_symplectic_eigenvalue: f64,
}

/// Checks whether a raw symmetric matrix describes a physical Gaussian state.
///
/// Fails with a malformed-matrix error when the input is asymmetric beyond
/// [`SYMMETRY_TOL`]; otherwise reports the minimum symplectic eigenvalue and
/// whether it clears `1/2 −` [`BONA_FIDE_TOL`].
pub fn check_bona_fide(m: &Matrix4<f64>) -> Result<BonaFide> {
    let asym = (m - m.transpose()).amax();
    if !asym.is_finite() || asym > SYMMETRY_TOL {
        return Err(Error::MalformedMatrix {
            reason: "matrix is not symmetric",
            value: asym,
        });
    }
    let sym = (m + m.transpose()) * 0.5;
    let (delta, scale) = two_mode_invariants(&sym);
    let nu_min = symplectic_eigenvalues_from_invariants(delta, sym.determinant(), scale)[0];
    Ok(BonaFide {
        satisfied: nu_min >= 0.5 - BONA_FIDE_TOL,
        min_symplectic_eigenvalue: nu_min,
    })
}

/// `Δ = det A + det B + 2 det C` over the 2×2 blocks `[[A, C], [Cᵀ, B]]`,
/// together with the cancellation-free magnitude `|det A| + |det B| + 2|det C|`
/// that bounds the round-off carried into Δ.
pub(crate) fn two_mode_invariants(m: &Matrix4<f64>) -> (f64, f64) {
    let det_a = block_det(m, 0, 0);
    let det_b = block_det(m, 2, 2);
    let det_c = block_det(m, 0, 2);
    (
        det_a + det_b + 2.0 * det_c,
        det_a.abs() + det_b.abs() + 2.0 * det_c.abs(),
    )
}

pub(crate) fn block_det(m: &Matrix4<f64>, row: usize, col: usize) -> f64 {
    m[(row, col)] * m[(row + 1, col + 1)] - m[(row, col + 1)] * m[(row + 1, col)]
}

/// Roots of `x² − Δx + det` interpreted as squared symplectic eigenvalues.
///
/// `scale` is the cancellation-free magnitude of the terms that formed Δ.
/// Round-off puts a noise floor of `O(ε·(|Δ|·scale + scale²))` under the
/// discriminant — the `scale²` term covers the determinant's own rounding —
/// and below that floor the spectrum is degenerate as far as f64 can tell.
/// There `ν = det^{1/4}` is far more accurate than the quadratic formula,
/// whose square root amplifies the floor to `O(√ε)`.
pub(crate) fn symplectic_eigenvalues_from_invariants(
    delta: f64,
    det: f64,
    scale: f64,
) -> [f64; 2] {
    let disc_sq = delta.mul_add(delta, -4.0 * det);
    let noise_floor = f64::EPSILON * (16.0 * delta.abs() * scale + 0.25 * scale * scale);
    if disc_sq <= noise_floor {
        let nu = det.max(0.0).sqrt().sqrt();
        return [nu, nu];
    }
    let disc = disc_sq.sqrt();
    let hi = (0.5 * (delta + disc)).max(0.0).sqrt();
    let lo = if delta + disc > 0.0 {
        // rationalized smaller root, immune to cancellation for Δ² ≫ 4 det
        (2.0 * det / (delta + disc)).max(0.0).sqrt()
    } else {
        0.0
    };
    [lo, hi]
}

/// Wire form: row-major 16-number array with the basis spelled out.
#[derive(Serialize, Deserialize)]
struct CovarianceWire {
    basis: String,
    entries: Vec<f64>,
}

const BASIS: &str = "qs,ps,qk,pk";

impl Serialize for Covariance {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CovarianceWire {
            basis: BASIS.to_owned(),
            entries: self.m.transpose().as_slice().to_vec(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Covariance {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = CovarianceWire::deserialize(deserializer)?;
        if wire.basis != BASIS {
            return Err(D::Error::custom(format!(
                "unsupported basis {:?}, expected {BASIS:?}",
                wire.basis
            )));
        }
        if wire.entries.len() != 16 {
            return Err(D::Error::custom(format!(
                "expected 16 entries, got {}",
                wire.entries.len()
            )));
        }
        let m = Matrix4::from_row_slice(&wire.entries);
        Covariance::from_matrix(m).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::Vector4;

    #[test]
    fn symplectic_form_squares_to_minus_identity() {
        let omega = symplectic_form();
        assert_eq!(omega * omega, -Matrix4::identity());
        assert_eq!(omega.transpose(), -omega);
    }

    #[test]
    fn vacuum_is_bona_fide_with_nu_one_half() {
        let check = Covariance::vacuum().bona_fide();
        assert!(check.satisfied);
        assert_eq!(check.min_symplectic_eigenvalue, 0.5);
    }

    #[test]
    fn uncertainty_violating_matrix_is_rejected() {
        let m = Matrix4::from_diagonal(&Vector4::new(0.1, 0.1, 0.5, 0.5));
        let check = check_bona_fide(&m).unwrap();
        assert!(!check.satisfied);
        assert!((check.min_symplectic_eigenvalue - 0.1).abs() < 1e-14);
    }

    #[test]
    fn asymmetric_input_is_a_malformed_matrix() {
        let mut m = Matrix4::identity() * 0.5;
        m[(0, 1)] = 1e-3;
        let err = check_bona_fide(&m).unwrap_err();
        assert!(matches!(err, Error::MalformedMatrix { .. }));
        assert!(Covariance::from_matrix(m).is_err());
    }

    #[test]
    fn tiny_asymmetry_is_symmetrized_away() {
        let mut m = Matrix4::identity() * 0.5;
        m[(0, 1)] = 1e-12;
        let cov = Covariance::from_matrix(m).unwrap();
        assert_eq!(cov.entry(0, 1), cov.entry(1, 0));
    }

    #[test]
    fn non_positive_diagonal_is_rejected() {
        let m = Matrix4::from_diagonal(&Vector4::new(0.5, 0.5, 0.0, 0.5));
        assert!(Covariance::from_matrix(m).is_err());
        let m = Matrix4::from_diagonal(&Vector4::new(0.5, 0.5, -0.3, 0.5));
        assert!(Covariance::from_matrix(m).is_err());
    }

    #[test]
    fn symplectic_eigenvalues_of_isotropic_diagonal_are_exact() {
        // diag(a, a, b, b) has symplectic spectrum {a, b}; these values are
        // exact in binary so the equality is bitwise.
        let m = Matrix4::from_diagonal(&Vector4::new(0.5, 0.5, 2.0, 2.0));
        let cov = Covariance::from_matrix(m).unwrap();
        assert_eq!(cov.symplectic_eigenvalues(), [0.5, 2.0]);

        let m = Matrix4::from_diagonal(&Vector4::new(0.7, 0.7, 1.3, 1.3));
        let nus = Covariance::from_matrix(m).unwrap().symplectic_eigenvalues();
        assert!((nus[0] - 0.7).abs() < 1e-15);
        assert!((nus[1] - 1.3).abs() < 1e-15);
    }

    /// Brute-force route: symplectic eigenvalues are |eigenvalues of Ωσ|,
    /// which come in ±iν pairs.
    fn symplectic_eigenvalues_brute(m: &Matrix4<f64>) -> [f64; 2] {
        let eig = (symplectic_form() * m).complex_eigenvalues();
        let mut mags: Vec<f64> = eig.iter().map(|z| z.norm()).collect();
        mags.sort_by(f64::total_cmp);
        [mags[0], mags[2]]
    }

    #[test]
    fn invariant_route_matches_brute_force_eigenvalues() {
        #[rustfmt::skip]
        let m = Matrix4::new(
            0.9,  0.1, -0.3,  0.2,
            0.1,  1.1,  0.0, -0.4,
           -0.3,  0.0,  0.8,  0.05,
            0.2, -0.4,  0.05, 1.3,
        );
        let cov = Covariance::from_matrix(m).unwrap();
        let fast = cov.symplectic_eigenvalues();
        let brute = symplectic_eigenvalues_brute(&m);
        assert!((fast[0] - brute[0]).abs() < 1e-12, "{fast:?} vs {brute:?}");
        assert!((fast[1] - brute[1]).abs() < 1e-12);
    }

    #[test]
    fn json_wire_format_round_trips() {
        let cov = Covariance::vacuum();
        let json = serde_json::to_value(cov).unwrap();
        assert_eq!(json["basis"], "qs,ps,qk,pk");
        assert_eq!(json["entries"].as_array().unwrap().len(), 16);
        assert_eq!(json["entries"][0], 0.5);
        let back: Covariance = serde_json::from_value(json).unwrap();
        assert_eq!(back, cov);
    }

    #[test]
    fn json_with_wrong_basis_is_rejected() {
        let text = format!(
            r#"{{"basis":"ps,qs,pk,qk","entries":{:?}}}"#,
            vec![0.5; 16]
        );
        assert!(serde_json::from_str::<Covariance>(&text).is_err());
    }

    #[test]
    fn row_major_order_on_the_wire() {
        let mut m = Matrix4::identity() * 0.5;
        m[(0, 2)] = 0.25;
        m[(2, 0)] = 0.25;
        let cov = Covariance::from_matrix(m).unwrap();
        let json = serde_json::to_value(cov).unwrap();
        // row 0, column 2 sits at flat index 2 in row-major order
        assert_eq!(json["entries"][2], 0.25);
        assert_eq!(json["entries"][8], 0.25);
    }
}
