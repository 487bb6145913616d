use ndarray::Array2;
use ndarray_linalg::EigVals;
use thiserror::Error;

/// Slack allowed on the uncertainty relation: a state is accepted as physical
/// when every symplectic eigenvalue is ≥ ½ − `PHYSICALITY_TOL`. Steady states
/// of pure squeezed baths sit exactly on the boundary, so solver round-off
/// must not be rejected.
pub const PHYSICALITY_TOL: f64 = 1e-9;

/// Relative tolerance on the symmetry of a covariance matrix.
const SYMMETRY_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum GaussianError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not symmetric within tolerance")]
    NotSymmetric,
    #[error("diffusion matrix has eigenvalue {0:.3e} < 0")]
    IndefiniteDiffusion(f64),
    #[error("drift is not Hurwitz (max eigenvalue real part {max_re:.3e})")]
    NotStable { max_re: f64 },
    #[error("mode index {index} out of range for {modes} modes")]
    IndexOutOfRange { index: usize, modes: usize },
    #[error("repeated mode index {0} in selection")]
    RepeatedIndex(usize),
    #[error("state violates the uncertainty relation (min symplectic eigenvalue {nu_min:.6e})")]
    InvalidState { nu_min: f64 },
    #[error("Lyapunov residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    ResidualTooLarge { residual: f64, tol: f64 },
    #[error("linear algebra backend failure: {0}")]
    Backend(String),
}

/// The symplectic form Ω = ⊕ₖ [[0, 1], [−1, 0]] for `modes` modes; Ω² = −I.
pub fn symplectic_form(modes: usize) -> Array2<f64> {
    let mut omega = Array2::zeros((2 * modes, 2 * modes));
    for k in 0..modes {
        omega[[2 * k, 2 * k + 1]] = 1.0;
        omega[[2 * k + 1, 2 * k]] = -1.0;
    }
    omega
}

/// Symmetrized quadrature covariance matrix of an M-mode Gaussian state.
#[derive(Debug, Clone)]
pub struct CovarianceMatrix {
    modes: usize,
    mat: Array2<f64>,
}

impl CovarianceMatrix {
    /// Wrap a 2M×2M symmetric matrix. Fails if the shape is not square and
    /// even-dimensional or the asymmetry exceeds 1e-12 relative to the
    /// largest entry.
    pub fn new(mat: Array2<f64>) -> Result<Self, GaussianError> {
        let (rows, cols) = mat.dim();
        if rows != cols || rows % 2 != 0 || rows == 0 {
            return Err(GaussianError::DimensionMismatch(format!(
                "covariance must be square with even dimension, got {rows}x{cols}"
            )));
        }
        let scale = mat.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
        for i in 0..rows {
            for j in (i + 1)..rows {
                if (mat[[i, j]] - mat[[j, i]]).abs() > SYMMETRY_TOL * scale {
                    return Err(GaussianError::NotSymmetric);
                }
            }
        }
        Ok(Self { modes: rows / 2, mat })
    }

    /// Vacuum state σ = I/2.
    pub fn vacuum(modes: usize) -> Self {
        Self { modes, mat: Array2::eye(2 * modes) * 0.5 }
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn matrix(&self) -> &Array2<f64> {
        &self.mat
    }

    pub fn into_matrix(self) -> Array2<f64> {
        self.mat
    }

    /// Restriction to the selected modes, order preserved.
    pub fn reduced(&self, modes: &[usize]) -> Result<Self, GaussianError> {
        for (k, &m) in modes.iter().enumerate() {
            if m >= self.modes {
                return Err(GaussianError::IndexOutOfRange { index: m, modes: self.modes });
            }
            if modes[..k].contains(&m) {
                return Err(GaussianError::RepeatedIndex(m));
            }
        }
        let n = modes.len();
        let mut out = Array2::zeros((2 * n, 2 * n));
        for (a, &ma) in modes.iter().enumerate() {
            for (b, &mb) in modes.iter().enumerate() {
                for qa in 0..2 {
                    for qb in 0..2 {
                        out[[2 * a + qa, 2 * b + qb]] = self.mat[[2 * ma + qa, 2 * mb + qb]];
                    }
                }
            }
        }
        Ok(Self { modes: n, mat: out })
    }

    /// Symplectic eigenvalues ν₁ ≤ … ≤ ν_M, computed as the moduli of the
    /// (conjugate-paired) eigenvalues of Ωσ.
    pub fn symplectic_eigenvalues(&self) -> Vec<f64> {
        let prod = symplectic_form(self.modes).dot(&self.mat);
        let eigs = prod.eigvals().expect("eigenvalue computation failed");
        let mut mods: Vec<f64> = eigs.iter().map(|z| z.norm()).collect();
        mods.sort_by(|a, b| a.partial_cmp(b).unwrap());
        // eigenvalues come in ±iν pairs; average each pair
        (0..self.modes).map(|k| 0.5 * (mods[2 * k] + mods[2 * k + 1])).collect()
    }

    pub fn min_symplectic_eigenvalue(&self) -> f64 {
        self.symplectic_eigenvalues()
            .into_iter()
            .fold(f64::INFINITY, f64::min)
    }

    /// Uncertainty-relation check: all symplectic eigenvalues ≥ ½ − tol.
    pub fn is_physical(&self, tol: f64) -> bool {
        self.min_symplectic_eigenvalue() >= 0.5 - tol
    }

    /// Mean excitation number ⟨b†b⟩ = (σ_xx + σ_pp − 1)/2 of one mode
    /// (zero-mean states).
    pub fn mode_occupancy(&self, mode: usize) -> f64 {
        0.5 * (self.mat[[2 * mode, 2 * mode]] + self.mat[[2 * mode + 1, 2 * mode + 1]] - 1.0)
    }
}
