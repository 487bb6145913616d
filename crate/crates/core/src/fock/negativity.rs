//! Logarithmic negativity from the trace norm of the partial transpose,
//! the route independent of the covariance-matrix closed form.

use ndarray_linalg::{Eigh, UPLO};

use super::master::FockError;
use super::operators::CMat;

/// Partial transpose on the second mode of a two-mode density matrix:
/// ρ^{T₂}[(j₁j₂),(k₁k₂)] = ρ[(j₁k₂),(k₁j₂)].
pub fn partial_transpose(rho: &CMat, dims: (usize, usize)) -> CMat {
    let (d1, d2) = dims;
    assert_eq!(rho.nrows(), d1 * d2);
    let mut out = CMat::zeros(rho.dim());
    for j1 in 0..d1 {
        for j2 in 0..d2 {
            for k1 in 0..d1 {
                for k2 in 0..d2 {
                    out[[j1 * d2 + j2, k1 * d2 + k2]] = rho[[j1 * d2 + k2, k1 * d2 + j2]];
                }
            }
        }
    }
    out
}

/// E_N = log₂ ‖ρ^{T₂}‖₁ for a two-mode state.
pub fn log_negativity_trace_norm(rho: &CMat, dims: (usize, usize)) -> Result<f64, FockError> {
    let pt = partial_transpose(rho, dims);
    let (eigs, _) = pt
        .eigh(UPLO::Lower)
        .map_err(|e| FockError::Backend(e.to_string()))?;
    let trace_norm: f64 = eigs.iter().map(|l| l.abs()).sum();
    Ok(trace_norm.log2().max(0.0))
}
