use ndarray::Array2;
use num_complex::Complex64 as C64;

use super::{ChainSpec, SqueezedBathSpec};
use crate::gaussian::{GaussianGenerators, QuadraticModel};

/// Hamiltonian and dissipation coefficients of a general (not necessarily
/// mirror-symmetric) nearest-neighbour chain: per-site detunings, per-bond
/// couplings, and per-site thermal reservoirs, sites ordered −N…N.
///
/// Disorder draws produce these directly; the symmetric `ChainSpec` is the
/// special case with antisymmetric detunings and mirror-equal couplings.
#[derive(Debug, Clone)]
pub struct ChainCoefficients {
    pub site_detunings: Vec<f64>,
    pub bond_couplings: Vec<f64>,
    pub gamma: Vec<f64>,
    pub n_th: Vec<f64>,
}

impl ChainCoefficients {
    pub fn sites(&self) -> usize {
        self.site_detunings.len()
    }

    /// The matrix ℳ|_{Γ=0} of the mean-field equations β̇ = ℳβ equals −iT
    /// with T the real symmetric tridiagonal matrix returned here: signed
    /// detunings on the diagonal, bond couplings off it.
    pub fn coefficient_matrix(&self) -> Array2<f64> {
        let n = self.sites();
        let mut t = Array2::zeros((n, n));
        for (s, d) in self.site_detunings.iter().enumerate() {
            t[[s, s]] = *d;
        }
        for (s, eta) in self.bond_couplings.iter().enumerate() {
            t[[s, s + 1]] = *eta;
            t[[s + 1, s]] = *eta;
        }
        t
    }
}

impl From<&ChainSpec> for ChainCoefficients {
    fn from(chain: &ChainSpec) -> Self {
        Self {
            site_detunings: chain.signed_detunings(),
            bond_couplings: chain.bond_couplings(),
            gamma: chain.gamma().to_vec(),
            n_th: chain.n_th().to_vec(),
        }
    }
}

/// Drift and diffusion generators of the chain master equation: Hamiltonian
/// part from the chain coefficients, local decay −γ_j per site and −Γ at the
/// center, thermal diffusion blocks 2γ_j(n_Tj + ½)I₂, and the central
/// squeezed-bath block 2Γ[[n̄+½+Re m̄, Im m̄], [Im m̄, n̄+½−Re m̄]].
pub fn build_generators_from(
    coeffs: &ChainCoefficients,
    bath: &SqueezedBathSpec,
) -> GaussianGenerators {
    let sites = coeffs.sites();
    let center = sites / 2;
    let mut model = QuadraticModel::new(sites);
    for (s, d) in coeffs.site_detunings.iter().enumerate() {
        if *d != 0.0 {
            model.detuning(s, *d);
        }
    }
    for (s, eta) in coeffs.bond_couplings.iter().enumerate() {
        model.beam_splitter(s, s + 1, C64::new(*eta, 0.0));
    }
    for s in 0..sites {
        if coeffs.gamma[s] != 0.0 {
            model.thermal_loss(s, coeffs.gamma[s], coeffs.n_th[s]);
        }
    }
    model.squeezed_loss(center, bath.rate(), bath.n_bar(), bath.m_bar());
    model.generators()
}

/// Generators for the mirror-symmetric chain of `ChainSpec`.
pub fn build_generators(chain: &ChainSpec, bath: &SqueezedBathSpec) -> GaussianGenerators {
    build_generators_from(&chain.into(), bath)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::LinearChainParams;
    use crate::gaussian::{is_stable, solve_lyapunov};
    use approx::assert_abs_diff_eq;

    /// Complex-mode restriction of the quadrature drift: blocks
    /// [[re, −im], [im, re]] ↦ re + i·im.
    fn complex_restriction(drift: &Array2<f64>) -> Array2<C64> {
        let m = drift.nrows() / 2;
        let mut out = Array2::zeros((m, m));
        for i in 0..m {
            for j in 0..m {
                let re = drift[[2 * i, 2 * j]];
                let im = drift[[2 * i + 1, 2 * j]];
                // consistency of the real embedding
                assert_abs_diff_eq!(drift[[2 * i + 1, 2 * j + 1]], re, epsilon = 1e-14);
                assert_abs_diff_eq!(drift[[2 * i, 2 * j + 1]], -im, epsilon = 1e-14);
                out[[i, j]] = C64::new(re, im);
            }
        }
        out
    }

    #[test]
    fn drift_restriction_matches_mean_field_matrix() {
        // drift restricted to complex modes = −iT − Γ v₀v₀ᵀ − diag(γ_j)
        let chain = LinearChainParams { eta: 1.0, delta: -0.4, slope: 0.1 }
            .expand(2, 0.01, 0.0)
            .unwrap();
        let bath = SqueezedBathSpec::pure(0.7, 2.0).unwrap();
        let gen = build_generators(&chain, &bath);
        let coeffs: ChainCoefficients = (&chain).into();
        let t = coeffs.coefficient_matrix();
        let m = complex_restriction(gen.drift());
        let sites = chain.sites();
        let center = sites / 2;
        for i in 0..sites {
            for j in 0..sites {
                let mut expected = C64::new(0.0, -t[[i, j]]);
                if i == j {
                    expected -= C64::new(chain.gamma()[i], 0.0);
                    if i == center {
                        expected -= C64::new(bath.rate(), 0.0);
                    }
                }
                assert_abs_diff_eq!(m[[i, j]].re, expected.re, epsilon = 1e-14);
                assert_abs_diff_eq!(m[[i, j]].im, expected.im, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn bath_only_site_reproduces_central_correlations() {
        // N = 0: steady state is the bath state, ⟨b†b⟩ = n̄, ⟨bb⟩ = m̄
        let chain = ChainSpec::new(vec![], vec![], vec![0.0], vec![0.0]).unwrap();
        let bath = SqueezedBathSpec::new(1.3, 2.0, C64::from_polar(6.0_f64.sqrt(), 0.9)).unwrap();
        let sigma = solve_lyapunov(&build_generators(&chain, &bath)).unwrap();
        let m = sigma.matrix();
        let n_bar = 0.5 * (m[[0, 0]] + m[[1, 1]] - 1.0);
        let m_re = 0.5 * (m[[0, 0]] - m[[1, 1]]);
        let m_im = m[[0, 1]];
        assert_abs_diff_eq!(n_bar, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m_re, bath.m_bar().re, epsilon = 1e-12);
        assert_abs_diff_eq!(m_im, bath.m_bar().im, epsilon = 1e-12);
    }

    #[test]
    fn lossless_hamiltonian_only_chain_is_marginal() {
        // Γ = 0 is not representable in SqueezedBathSpec; assemble the pure
        // Hamiltonian model directly and confirm marginal stability.
        let chain = LinearChainParams { eta: 1.0, delta: 0.0, slope: 0.0 }
            .expand(1, 0.0, 0.0)
            .unwrap();
        let coeffs: ChainCoefficients = (&chain).into();
        let mut model = crate::gaussian::QuadraticModel::new(3);
        for (s, d) in coeffs.site_detunings.iter().enumerate() {
            model.detuning(s, *d);
        }
        for (s, eta) in coeffs.bond_couplings.iter().enumerate() {
            model.beam_splitter(s, s + 1, C64::new(*eta, 0.0));
        }
        let gen = model.generators();
        let rep = is_stable(&gen);
        assert!(!rep.stable);
        assert!(rep.max_real_part.abs() < 1e-10);
        assert!(gen.diffusion().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn resonant_chain_is_marginally_stable() {
        // Δ_j = 0, γ_j = 0, Γ > 0: an undriven normal mode survives
        let chain = LinearChainParams { eta: 1.0, delta: 0.0, slope: 0.0 }
            .expand(1, 0.0, 0.0)
            .unwrap();
        let bath = SqueezedBathSpec::pure(1.0, 2.0).unwrap();
        let rep = is_stable(&build_generators(&chain, &bath));
        assert!(!rep.stable);
        assert!(rep.max_real_part.abs() < 1e-10);
    }
}
