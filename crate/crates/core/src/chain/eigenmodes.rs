use ndarray_linalg::{Eigh, UPLO};

use super::generators::ChainCoefficients;
use super::ChainSpec;

/// A normal mode with |projection| onto the central site below this threshold
/// never feels the reservoir, so the steady state is not unique. The value
/// sits well below any physically chosen detuning spacing and above
/// double-precision eigensolver noise.
pub const UNIQUENESS_TOL: f64 = 1e-10;

/// Normal-mode analysis of the closed chain: eigenfrequencies of ℳ|_{Γ=0}
/// and the signed projections p_k = ṽ_kᵀ·v₀ of its eigenmodes onto the
/// central site. The steady state of the driven chain is unique iff every
/// |p_k| is nonzero.
#[derive(Debug, Clone)]
pub struct EigenmodeAnalysis {
    /// Imaginary parts of the ℳ|_{Γ=0} spectrum, sorted ascending.
    pub frequencies: Vec<f64>,
    /// Signed central-site projections, aligned with `frequencies`. Signs are
    /// an eigenvector-gauge artifact; uniqueness and optimization use |p_k|.
    pub projections: Vec<f64>,
    pub min_abs_projection: f64,
    pub unique: bool,
}

impl EigenmodeAnalysis {
    /// Spread max|p_k| − min|p_k| minimized by the detuning optimization.
    pub fn projection_spread(&self) -> f64 {
        let (mut lo, mut hi) = (f64::INFINITY, 0.0_f64);
        for p in &self.projections {
            lo = lo.min(p.abs());
            hi = hi.max(p.abs());
        }
        hi - lo
    }
}

/// Eigen-decompose the real symmetric coefficient matrix T (ℳ|_{Γ=0} = −iT)
/// and project each eigenvector onto the central oscillator.
pub fn eigenmode_analysis(chain: &ChainSpec) -> EigenmodeAnalysis {
    let coeffs: ChainCoefficients = chain.into();
    eigenmode_analysis_from(&coeffs)
}

/// Same analysis for general (e.g. disordered) chain coefficients.
pub fn eigenmode_analysis_from(coeffs: &ChainCoefficients) -> EigenmodeAnalysis {
    let t = coeffs.coefficient_matrix();
    let center = coeffs.sites() / 2;
    let (eigs, vecs) = t.eigh(UPLO::Lower).expect("symmetric eigendecomposition failed");
    // eig(−iT) = −iλ: imaginary parts −λ ascend as λ descends
    let order: Vec<usize> = (0..eigs.len()).rev().collect();
    let frequencies: Vec<f64> = order.iter().map(|&k| -eigs[k]).collect();
    let projections: Vec<f64> = order.iter().map(|&k| vecs[[center, k]]).collect();
    let min_abs_projection = projections.iter().fold(f64::INFINITY, |m, p| m.min(p.abs()));
    EigenmodeAnalysis {
        frequencies,
        projections,
        unique: min_abs_projection > UNIQUENESS_TOL,
        min_abs_projection,
    }
}
