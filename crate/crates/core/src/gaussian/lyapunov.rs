use ndarray::{Array1, Array2};
use ndarray_linalg::{EigVals, Factorize, Solve};

use super::covariance::{CovarianceMatrix, GaussianError};
use super::generators::GaussianGenerators;

/// Eigenvalue real parts above −`STABILITY_TOL` are treated as marginal:
/// the threshold separates the exactly-marginal resonant chain from
/// numerically perturbed stable spectra at double precision.
pub const STABILITY_TOL: f64 = 1e-12;

/// Relative tolerance on the Lyapunov residual of a returned steady state.
const RESIDUAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy)]
pub struct StabilityReport {
    /// max Re λ over the drift spectrum.
    pub max_real_part: f64,
    /// true iff max Re λ < −1e-12.
    pub stable: bool,
}

/// Spectral stability of the drift matrix.
pub fn is_stable(gen: &GaussianGenerators) -> StabilityReport {
    let eigs = gen.drift().eigvals().expect("drift eigenvalue computation failed");
    let max_real_part = eigs.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    StabilityReport { max_real_part, stable: max_real_part < -STABILITY_TOL }
}

fn kron_sum(a: &Array2<f64>) -> Array2<f64> {
    let eye = Array2::eye(a.nrows());
    ndarray::linalg::kron(a, &eye) + ndarray::linalg::kron(&eye, a)
}

fn residual_matrix(a: &Array2<f64>, d: &Array2<f64>, sigma: &Array2<f64>) -> Array2<f64> {
    a.dot(sigma) + sigma.dot(&a.t()) + d
}

fn max_abs(m: &Array2<f64>) -> f64 {
    m.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
}

/// Steady-state covariance of σ̇ = Aσ + σAᵀ + D, i.e. the solution of
/// Aσ + σAᵀ + D = 0.
///
/// Solved by vectorization: (A ⊗ I + I ⊗ A) vec σ = −vec D, followed by
/// iterative refinement on the same factorization; adequate at desk scale
/// (M ≲ 25 modes). Refuses marginal or unstable drifts rather than
/// regularizing them.
pub fn solve_lyapunov(gen: &GaussianGenerators) -> Result<CovarianceMatrix, GaussianError> {
    let report = is_stable(gen);
    if !report.stable {
        return Err(GaussianError::NotStable { max_re: report.max_real_part });
    }

    let a = gen.drift();
    let d = gen.diffusion();
    let n = a.nrows();

    let k = kron_sum(a);
    let lu = k.factorize().map_err(|e| GaussianError::Backend(e.to_string()))?;

    let rhs = Array1::from_iter(d.iter().map(|v| -v));
    let x = lu.solve(&rhs).map_err(|e| GaussianError::Backend(e.to_string()))?;
    let mut sigma = x.into_shape_with_order((n, n)).expect("shape");
    sigma = 0.5 * (&sigma + &sigma.t());

    let tol = RESIDUAL_TOL * max_abs(d).max(1.0);
    for _ in 0..2 {
        let res = residual_matrix(a, d, &sigma);
        if max_abs(&res) <= 0.01 * tol {
            break;
        }
        let rhs = Array1::from_iter(res.iter().map(|v| -v));
        let corr = lu.solve(&rhs).map_err(|e| GaussianError::Backend(e.to_string()))?;
        let corr = corr.into_shape_with_order((n, n)).expect("shape");
        sigma = &sigma + &corr;
        sigma = 0.5 * (&sigma + &sigma.t());
    }

    let residual = max_abs(&residual_matrix(a, d, &sigma));
    if residual > tol {
        return Err(GaussianError::ResidualTooLarge { residual, tol });
    }
    CovarianceMatrix::new(sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::QuadraticModel;
    use approx::assert_abs_diff_eq;
    use ndarray::Array2;
    use num_complex::Complex64 as C64;

    #[test]
    fn isolated_thermal_mode() {
        // A = −γ I₂, D = 2γ(n_T + ½) I₂  →  σ = (n_T + ½) I₂
        let n_t = 1.3;
        let mut m = QuadraticModel::new(1);
        m.thermal_loss(0, 0.8, n_t);
        let sigma = solve_lyapunov(&m.generators()).unwrap();
        assert_abs_diff_eq!(sigma.matrix()[[0, 0]], n_t + 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(sigma.matrix()[[1, 1]], n_t + 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(sigma.matrix()[[0, 1]], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn squeezed_single_mode_matches_closed_form() {
        // (Γ, n̄ = 2, m̄ = √6) → σ = diag(2.5 + √6, 2.5 − √6)
        let m_bar = 6.0_f64.sqrt();
        let mut m = QuadraticModel::new(1);
        m.squeezed_loss(0, 0.7, 2.0, C64::new(m_bar, 0.0));
        let sigma = solve_lyapunov(&m.generators()).unwrap();
        assert_abs_diff_eq!(sigma.matrix()[[0, 0]], 2.5 + m_bar, epsilon = 1e-12);
        assert_abs_diff_eq!(sigma.matrix()[[1, 1]], 2.5 - m_bar, epsilon = 1e-12);
        assert_abs_diff_eq!(sigma.matrix()[[0, 1]], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn marginal_drift_is_refused() {
        // purely Hamiltonian dynamics: drift eigenvalues on the imaginary axis
        let mut m = QuadraticModel::new(2);
        m.detuning(0, 0.5).beam_splitter(0, 1, C64::new(1.0, 0.0));
        let gen = m.generators();
        let report = is_stable(&gen);
        assert!(!report.stable);
        assert!(report.max_real_part.abs() < 1e-9);
        assert!(matches!(solve_lyapunov(&gen), Err(GaussianError::NotStable { .. })));
    }

    #[test]
    fn identity_drift_stability_report() {
        let gen = GaussianGenerators::new(Array2::eye(2) * -1.0, Array2::zeros((2, 2))).unwrap();
        let rep = is_stable(&gen);
        assert!(rep.stable);
        assert_abs_diff_eq!(rep.max_real_part, -1.0, epsilon = 1e-12);
    }

    #[test]
    fn agrees_with_explicit_time_stepping() {
        // small damped coupled system integrated to late time with RK4
        let mut m = QuadraticModel::new(2);
        m.detuning(0, 0.3)
            .detuning(1, -0.2)
            .beam_splitter(0, 1, C64::new(0.9, 0.1))
            .thermal_loss(0, 0.6, 0.4)
            .thermal_loss(1, 0.25, 1.1);
        let gen = m.generators();
        let sigma_ss = solve_lyapunov(&gen).unwrap();

        let a = gen.drift();
        let d = gen.diffusion();
        let rhs = |s: &Array2<f64>| a.dot(s) + s.dot(&a.t()) + d;
        let mut s = Array2::<f64>::eye(4) * 0.5;
        let dt = 2e-3;
        for _ in 0..40_000 {
            let k1 = rhs(&s);
            let k2 = rhs(&(&s + &(&k1 * (dt / 2.0))));
            let k3 = rhs(&(&s + &(&k2 * (dt / 2.0))));
            let k4 = rhs(&(&s + &(&k3 * dt)));
            s = &s + &((k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0));
        }
        let err = (&s - sigma_ss.matrix()).iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        assert!(err < 1e-6, "integrated steady state differs by {err}");
    }
}
