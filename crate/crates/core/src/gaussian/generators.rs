use ndarray::Array2;
use ndarray_linalg::Eigh;
use num_complex::Complex64 as C64;

use super::covariance::{symplectic_form, GaussianError};

/// Drift matrix A and diffusion matrix D of the quadrature moment dynamics
/// σ̇ = Aσ + σAᵀ + D (first moments: ṙ = Ar).
#[derive(Debug, Clone)]
pub struct GaussianGenerators {
    modes: usize,
    drift: Array2<f64>,
    diffusion: Array2<f64>,
}

impl GaussianGenerators {
    /// Wrap drift/diffusion matrices, checking shapes, symmetry of D and
    /// positive semidefiniteness of D up to −1e-12 on its eigenvalues.
    pub fn new(drift: Array2<f64>, diffusion: Array2<f64>) -> Result<Self, GaussianError> {
        let (r, c) = drift.dim();
        if r != c || r % 2 != 0 || r == 0 || diffusion.dim() != (r, c) {
            return Err(GaussianError::DimensionMismatch(format!(
                "drift {:?} and diffusion {:?} must be equal, square, even-dimensional",
                drift.dim(),
                diffusion.dim()
            )));
        }
        let scale = diffusion.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
        for i in 0..r {
            for j in (i + 1)..r {
                if (diffusion[[i, j]] - diffusion[[j, i]]).abs() > 1e-12 * scale {
                    return Err(GaussianError::NotSymmetric);
                }
            }
        }
        let (eigs, _) = diffusion
            .eigh(ndarray_linalg::UPLO::Lower)
            .map_err(|e| GaussianError::Backend(e.to_string()))?;
        if let Some(&min) = eigs.iter().min_by(|a, b| a.partial_cmp(b).unwrap()) {
            if min < -1e-12 * scale.max(1.0) {
                return Err(GaussianError::IndefiniteDiffusion(min));
            }
        }
        Ok(Self { modes: r / 2, drift, diffusion })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn drift(&self) -> &Array2<f64> {
        &self.drift
    }

    pub fn diffusion(&self) -> &Array2<f64> {
        &self.diffusion
    }
}

/// Assembles drift/diffusion generators for a quadratic bosonic model built
/// from number-conserving hoppings, two-mode-squeezing couplings, detunings,
/// and local thermal or squeezed reservoirs.
///
/// Hamiltonian terms are accumulated into the real quadratic form H_R with
/// H/ħ = ½ rᵀ H_R r (up to a constant), giving the drift contribution Ω H_R.
/// Every dissipator follows the convention 𝒟[x, y]ρ = 2xρy − yxρ − ρyx, so a
/// reservoir with rate γ damps amplitudes at γ (not γ/2) and contributes −γ
/// per quadrature to the drift.
#[derive(Debug, Clone)]
pub struct QuadraticModel {
    modes: usize,
    h_form: Array2<f64>,
    damping: Vec<f64>,
    diffusion: Array2<f64>,
}

impl QuadraticModel {
    pub fn new(modes: usize) -> Self {
        Self {
            modes,
            h_form: Array2::zeros((2 * modes, 2 * modes)),
            damping: vec![0.0; modes],
            diffusion: Array2::zeros((2 * modes, 2 * modes)),
        }
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    fn check(&self, mode: usize) {
        assert!(mode < self.modes, "mode index {mode} out of range");
    }

    /// H += Δ b†b on one mode.
    pub fn detuning(&mut self, mode: usize, delta: f64) -> &mut Self {
        self.check(mode);
        self.h_form[[2 * mode, 2 * mode]] += delta;
        self.h_form[[2 * mode + 1, 2 * mode + 1]] += delta;
        self
    }

    /// H += g bᵢ†bⱼ + g* bᵢbⱼ† (excitation-conserving coupling).
    pub fn beam_splitter(&mut self, i: usize, j: usize, g: C64) -> &mut Self {
        self.check(i);
        self.check(j);
        assert!(i != j, "beam splitter needs two distinct modes");
        let (xi, pi, xj, pj) = (2 * i, 2 * i + 1, 2 * j, 2 * j + 1);
        // g bᵢ†bⱼ + h.c. = Re g (xᵢxⱼ + pᵢpⱼ) + Im g (pᵢxⱼ − xᵢpⱼ)
        self.h_form[[xi, xj]] += g.re;
        self.h_form[[xj, xi]] += g.re;
        self.h_form[[pi, pj]] += g.re;
        self.h_form[[pj, pi]] += g.re;
        self.h_form[[pi, xj]] += g.im;
        self.h_form[[xj, pi]] += g.im;
        self.h_form[[xi, pj]] -= g.im;
        self.h_form[[pj, xi]] -= g.im;
        self
    }

    /// H += m bᵢ†bⱼ† + m* bᵢbⱼ (pair creation/annihilation).
    pub fn two_mode_squeeze(&mut self, i: usize, j: usize, m: C64) -> &mut Self {
        self.check(i);
        self.check(j);
        assert!(i != j, "two-mode squeezing needs two distinct modes");
        let (xi, pi, xj, pj) = (2 * i, 2 * i + 1, 2 * j, 2 * j + 1);
        // m bᵢ†bⱼ† + h.c. = Re m (xᵢxⱼ − pᵢpⱼ) + Im m (xᵢpⱼ + pᵢxⱼ)
        self.h_form[[xi, xj]] += m.re;
        self.h_form[[xj, xi]] += m.re;
        self.h_form[[pi, pj]] -= m.re;
        self.h_form[[pj, pi]] -= m.re;
        self.h_form[[xi, pj]] += m.im;
        self.h_form[[pj, xi]] += m.im;
        self.h_form[[pi, xj]] += m.im;
        self.h_form[[xj, pi]] += m.im;
        self
    }

    /// Thermal reservoir γ{(n+1)𝒟[b,b†] + n𝒟[b†,b]}: amplitude decay γ,
    /// diffusion 2γ(n+½)I₂.
    pub fn thermal_loss(&mut self, mode: usize, rate: f64, n_th: f64) -> &mut Self {
        self.check(mode);
        self.damping[mode] += rate;
        let d = 2.0 * rate * (n_th + 0.5);
        self.diffusion[[2 * mode, 2 * mode]] += d;
        self.diffusion[[2 * mode + 1, 2 * mode + 1]] += d;
        self
    }

    /// Squeezed reservoir Γ{(n̄+1)𝒟[b,b†] + n̄𝒟[b†,b] − m̄𝒟[b†,b†] − m̄*𝒟[b,b]}.
    ///
    /// The m̄ coefficients are assigned so the steady state of an isolated
    /// driven mode has ⟨bb⟩ = m̄ (the convention of the analytic lossless
    /// steady state, cross-checked against the Fock-space oracle).
    pub fn squeezed_loss(&mut self, mode: usize, rate: f64, n_bar: f64, m_bar: C64) -> &mut Self {
        self.check(mode);
        self.damping[mode] += rate;
        let (x, p) = (2 * mode, 2 * mode + 1);
        self.diffusion[[x, x]] += 2.0 * rate * (n_bar + 0.5 + m_bar.re);
        self.diffusion[[p, p]] += 2.0 * rate * (n_bar + 0.5 - m_bar.re);
        self.diffusion[[x, p]] += 2.0 * rate * m_bar.im;
        self.diffusion[[p, x]] += 2.0 * rate * m_bar.im;
        self
    }

    /// Assemble A = Ω H_R − diag(γ) and D.
    pub fn generators(&self) -> GaussianGenerators {
        let mut drift = symplectic_form(self.modes).dot(&self.h_form);
        for (mode, gamma) in self.damping.iter().enumerate() {
            drift[[2 * mode, 2 * mode]] -= gamma;
            drift[[2 * mode + 1, 2 * mode + 1]] -= gamma;
        }
        GaussianGenerators::new(drift, self.diffusion.clone())
            .expect("assembled generators are well-formed by construction")
    }
}
