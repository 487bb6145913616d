use super::covariance::{CovarianceMatrix, GaussianError, PHYSICALITY_TOL};

fn det2(m: [[f64; 2]; 2]) -> f64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

fn det4(sigma: &ndarray::Array2<f64>) -> f64 {
    // Laplace expansion is exact enough at this size and keeps the routine
    // free of factorization round-off.
    let m = sigma;
    let minor = |r: [usize; 3], c: [usize; 3]| -> f64 {
        m[[r[0], c[0]]] * (m[[r[1], c[1]]] * m[[r[2], c[2]]] - m[[r[1], c[2]]] * m[[r[2], c[1]]])
            - m[[r[0], c[1]]]
                * (m[[r[1], c[0]]] * m[[r[2], c[2]]] - m[[r[1], c[2]]] * m[[r[2], c[0]]])
            + m[[r[0], c[2]]]
                * (m[[r[1], c[0]]] * m[[r[2], c[1]]] - m[[r[1], c[1]]] * m[[r[2], c[0]]])
    };
    m[[0, 0]] * minor([1, 2, 3], [1, 2, 3]) - m[[0, 1]] * minor([1, 2, 3], [0, 2, 3])
        + m[[0, 2]] * minor([1, 2, 3], [0, 1, 3])
        - m[[0, 3]] * minor([1, 2, 3], [0, 1, 2])
}

/// Logarithmic negativity of a two-mode Gaussian state.
///
/// With σ in 2×2 blocks [[𝔸, ℂ], [ℂᵀ, 𝔹]], the partial transpose flips the
/// sign of det ℂ, so Δ̃ = det 𝔸 + det 𝔹 − 2 det ℂ and the smaller symplectic
/// eigenvalue of the partially transposed state is
/// ν̃₋² = (Δ̃ − √(Δ̃² − 4 det σ))/2. Then E_N = max{0, −log₂(2ν̃₋)}.
pub fn log_negativity(sigma: &CovarianceMatrix) -> Result<f64, GaussianError> {
    if sigma.modes() != 2 {
        return Err(GaussianError::DimensionMismatch(format!(
            "log_negativity needs a 2-mode state, got {} modes",
            sigma.modes()
        )));
    }
    let nu_min = sigma.min_symplectic_eigenvalue();
    if nu_min < 0.5 - PHYSICALITY_TOL {
        return Err(GaussianError::InvalidState { nu_min });
    }

    let m = sigma.matrix();
    let block = |r: usize, c: usize| [[m[[r, c]], m[[r, c + 1]]], [m[[r + 1, c]], m[[r + 1, c + 1]]]];
    let det_a = det2(block(0, 0));
    let det_b = det2(block(2, 2));
    let det_c = det2(block(0, 2));
    let delta = det_a + det_b - 2.0 * det_c;
    let disc = (delta * delta - 4.0 * det4(m)).max(0.0);
    let nu_sq = 0.5 * (delta - disc.sqrt());
    let nu = nu_sq.max(0.0).sqrt().max(f64::MIN_POSITIVE);
    Ok((-(2.0 * nu).log2()).max(0.0))
}

/// Logarithmic negativity of one mode pair.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct PairEntanglement {
    /// Chain labels (j₁, j₂) of the two modes, j₁ < j₂.
    pub pair: (i32, i32),
    pub log_negativity: f64,
    /// true when j₁ = −j₂ (sites mirrored about the driven center).
    pub opposite: bool,
}

/// E_N for every unordered pair of labeled modes.
#[derive(Debug, Clone, serde::Serialize)]
pub struct EntanglementReport {
    pub pairs: Vec<PairEntanglement>,
}

impl EntanglementReport {
    pub fn value(&self, j1: i32, j2: i32) -> Option<f64> {
        let key = (j1.min(j2), j1.max(j2));
        self.pairs.iter().find(|p| p.pair == key).map(|p| p.log_negativity)
    }

    pub fn opposite_pairs(&self) -> impl Iterator<Item = &PairEntanglement> {
        self.pairs.iter().filter(|p| p.opposite)
    }

    /// Mean E_N over the opposite-index pairs.
    pub fn mean_opposite(&self) -> f64 {
        let vals: Vec<f64> = self.opposite_pairs().map(|p| p.log_negativity).collect();
        if vals.is_empty() {
            0.0
        } else {
            vals.iter().sum::<f64>() / vals.len() as f64
        }
    }

    /// Largest E_N among pairs that are not opposite-index.
    pub fn max_off_pair(&self) -> f64 {
        self.pairs
            .iter()
            .filter(|p| !p.opposite)
            .map(|p| p.log_negativity)
            .fold(0.0, f64::max)
    }
}

/// Pairwise logarithmic negativity for all mode pairs of `sigma`, labeled by
/// chain indices (the caller excludes any ancilla modes by reducing first).
pub fn entanglement_report(
    sigma: &CovarianceMatrix,
    labels: &[i32],
) -> Result<EntanglementReport, GaussianError> {
    if labels.len() != sigma.modes() {
        return Err(GaussianError::DimensionMismatch(format!(
            "{} labels for {} modes",
            labels.len(),
            sigma.modes()
        )));
    }
    let mut pairs = Vec::with_capacity(labels.len() * (labels.len() - 1) / 2);
    for i in 0..labels.len() {
        for j in (i + 1)..labels.len() {
            let red = sigma.reduced(&[i, j])?;
            let en = log_negativity(&red)?;
            let (a, b) = (labels[i].min(labels[j]), labels[i].max(labels[j]));
            pairs.push(PairEntanglement {
                pair: (a, b),
                log_negativity: en,
                opposite: a == -b && a != b,
            });
        }
    }
    Ok(EntanglementReport { pairs })
}
