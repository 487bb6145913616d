use ndarray::{Array1, Array2};
use ndarray_linalg::Solve;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::thermal::Thermal;
use super::HardwareError;
use crate::chain::{ChainSpec, LinearChainParams, SqueezedBathSpec};
use crate::gaussian::{is_stable, GaussianGenerators, QuadraticModel};

/// Optomechanical-crystal realization: a chain of mechanical resonators at
/// frequency ω₀ whose central element couples (single-photon rate g) to one
/// optical cavity of linewidth κ, driven on both mechanical sidebands with
/// amplitudes 𝓔±. All rates are in units of ω₀; the absolute `omega0`
/// (rad/s) enters only the temperature conversion.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OptomechanicalSpec {
    pub omega0: f64,
    pub g: f64,
    pub kappa: f64,
    pub drive_plus: f64,
    pub drive_minus: f64,
    pub chain: LinearChainParams,
    pub n_half: usize,
    pub gamma: f64,
    pub thermal: Thermal,
}

impl OptomechanicalSpec {
    pub fn validate(&self) -> Result<(), HardwareError> {
        if !(self.omega0 > 0.0 && self.g > 0.0 && self.kappa > 0.0) {
            return Err(HardwareError::InvalidSpec(
                "ω₀, g and κ must all be positive".into(),
            ));
        }
        if self.gamma < 0.0 || self.drive_plus < 0.0 || self.drive_minus < 0.0 {
            return Err(HardwareError::InvalidSpec("rates must be nonnegative".into()));
        }
        Ok(())
    }

    /// Chain thermal occupancy at the mechanical frequency.
    pub fn n_th(&self) -> f64 {
        self.thermal.occupancy(self.omega0)
    }

    pub fn chain_spec(&self) -> Result<ChainSpec, HardwareError> {
        self.chain
            .expand(self.n_half, self.gamma, self.n_th())
            .map_err(|e| HardwareError::InvalidSpec(e.to_string()))
    }
}

/// Ratios that police the rotating-wave and weak-coupling approximations
/// behind the linearized model; each should stay well below one.
#[derive(Debug, Clone, Serialize)]
pub struct ValidityMetrics {
    pub kappa_over_omega0: f64,
    /// g|𝓔±|/ω₀² in ω₀ units.
    pub drive_plus_ratio: f64,
    pub drive_minus_ratio: f64,
    pub g_plus_over_omega0: f64,
    pub g_minus_over_omega0: f64,
    /// g|β₀±|/ω₀: size of the residual time-dependent terms.
    pub beta_plus_ratio: f64,
    pub beta_minus_ratio: f64,
    pub eta_over_omega0: f64,
    pub warnings: Vec<String>,
}

/// Output of the sideband linearization: cavity amplitudes α±, linearized
/// couplings G± = gα±, and the residual mechanical amplitudes β₀±.
#[derive(Debug, Clone)]
pub struct LinearizationResult {
    pub alpha_plus: C64,
    pub alpha_minus: C64,
    pub g_plus: C64,
    pub g_minus: C64,
    pub beta0_plus: C64,
    pub beta0_minus: C64,
    pub validity: ValidityMetrics,
}

/// Complex mean-field coefficient matrix 𝒲: diagonal w_{±j} = ±iΔ_j + γ_{±j}
/// and iη_j on the bonds (sites ordered −N…N).
fn mean_field_matrix(chain: &ChainSpec) -> Array2<C64> {
    let sites = chain.sites();
    let mut w = Array2::zeros((sites, sites));
    for (s, d) in chain.signed_detunings().iter().enumerate() {
        w[[s, s]] = C64::new(chain.gamma()[s], *d);
    }
    for (s, eta) in chain.bond_couplings().iter().enumerate() {
        w[[s, s + 1]] = C64::new(0.0, *eta);
        w[[s + 1, s]] = C64::new(0.0, *eta);
    }
    w
}

/// Central element of [𝒲 + iς𝟙]⁻¹ for the sideband shift ς (in ω₀ units).
fn central_resolvent(chain: &ChainSpec, shift: f64) -> Result<C64, HardwareError> {
    let sites = chain.sites();
    let mut w = mean_field_matrix(chain);
    for s in 0..sites {
        w[[s, s]] += C64::new(0.0, shift);
    }
    let mut v0 = Array1::zeros(sites);
    v0[sites / 2] = C64::new(1.0, 0.0);
    let x = w.solve(&v0).map_err(|_| HardwareError::SingularResolvent)?;
    Ok(x[sites / 2])
}

/// Lowest-order sideband expansion of the driven cavity and mechanical mean
/// fields: α± = −i𝓔±/(κ ± iω₀), G± = gα±, and
/// β₀± = −ig α±α∓* v₀ᵀ[𝒲 + i(1±2)ω₀𝟙]⁻¹v₀.
///
/// Validity ratios above 0.1 produce warnings, not failures.
pub fn linearize_om(spec: &OptomechanicalSpec) -> Result<LinearizationResult, HardwareError> {
    spec.validate()?;
    let chain = spec.chain_spec()?;

    let alpha_plus = C64::new(0.0, -spec.drive_plus) / C64::new(spec.kappa, 1.0);
    let alpha_minus = C64::new(0.0, -spec.drive_minus) / C64::new(spec.kappa, -1.0);
    let g_plus = alpha_plus * spec.g;
    let g_minus = alpha_minus * spec.g;

    let minus_i_g = C64::new(0.0, -spec.g);
    let beta0_plus =
        minus_i_g * alpha_plus * alpha_minus.conj() * central_resolvent(&chain, 3.0)?;
    let beta0_minus =
        minus_i_g * alpha_minus * alpha_plus.conj() * central_resolvent(&chain, -1.0)?;

    let mut warnings = Vec::new();
    let drive_plus_ratio = spec.g * spec.drive_plus;
    let drive_minus_ratio = spec.g * spec.drive_minus;
    for (name, value) in [
        ("kappa/omega0", spec.kappa),
        ("g*E_plus/omega0^2", drive_plus_ratio),
        ("g*E_minus/omega0^2", drive_minus_ratio),
    ] {
        if value > 0.1 {
            warnings.push(format!("{name} = {value:.3} exceeds 0.1"));
        }
    }

    Ok(LinearizationResult {
        alpha_plus,
        alpha_minus,
        g_plus,
        g_minus,
        beta0_plus,
        beta0_minus,
        validity: ValidityMetrics {
            kappa_over_omega0: spec.kappa,
            drive_plus_ratio,
            drive_minus_ratio,
            g_plus_over_omega0: g_plus.norm(),
            g_minus_over_omega0: g_minus.norm(),
            beta_plus_ratio: spec.g * beta0_plus.norm(),
            beta_minus_ratio: spec.g * beta0_minus.norm(),
            eta_over_omega0: spec.chain.eta,
            warnings,
        },
    })
}

/// Effective squeezed bath left on the central site once the fast ancilla is
/// adiabatically eliminated, with the reservoir resonator at occupancy n_a:
/// Γ = (|G₊|² − |G₋|²)/κ, n̄ = n_a + (2n_a+1)|G₋|²/(|G₊|²−|G₋|²),
/// m̄ = −(2n_a+1)G₊*G₋/(|G₊|²−|G₋|²).
pub fn effective_bath_cavity_array(
    g_plus: C64,
    g_minus: C64,
    kappa: f64,
    n_a: f64,
) -> Result<SqueezedBathSpec, HardwareError> {
    let w2 = g_plus.norm_sqr() - g_minus.norm_sqr();
    if w2 <= 0.0 {
        return Err(HardwareError::Unstable {
            g_plus: g_plus.norm(),
            g_minus: g_minus.norm(),
        });
    }
    let factor = 2.0 * n_a + 1.0;
    let gamma = w2 / kappa;
    let n_bar = n_a + factor * g_minus.norm_sqr() / w2;
    let m_bar = -g_plus.conj() * g_minus * (factor / w2);
    SqueezedBathSpec::new(gamma, n_bar, m_bar)
        .map_err(|e| HardwareError::InvalidSpec(e.to_string()))
}

/// Zero-temperature cavity case: the elimination leaves an exactly pure
/// squeezed reservoir, |m̄|² = n̄(n̄+1).
pub fn effective_bath_om(
    g_plus: C64,
    g_minus: C64,
    kappa: f64,
) -> Result<SqueezedBathSpec, HardwareError> {
    effective_bath_cavity_array(g_plus, g_minus, kappa, 0.0)
}

/// Generators of the full linearized model: the chain plus the cavity as one
/// more mode (appended last) with H = H_chain + a†(G₊b₀ + G₋b₀†) + h.c.,
/// cavity loss κ at occupancy `ancilla_n` and the chain's thermal reservoirs.
pub fn build_full_generators(
    chain: &ChainSpec,
    g_plus: C64,
    g_minus: C64,
    kappa: f64,
    ancilla_n: f64,
) -> Result<GaussianGenerators, HardwareError> {
    let sites = chain.sites();
    let center = sites / 2;
    let ancilla = sites;
    let mut model = QuadraticModel::new(sites + 1);
    for (s, d) in chain.signed_detunings().iter().enumerate() {
        if *d != 0.0 {
            model.detuning(s, *d);
        }
    }
    for (s, eta) in chain.bond_couplings().iter().enumerate() {
        model.beam_splitter(s, s + 1, C64::new(*eta, 0.0));
    }
    for s in 0..sites {
        if chain.gamma()[s] != 0.0 {
            model.thermal_loss(s, chain.gamma()[s], chain.n_th()[s]);
        }
    }
    model.beam_splitter(ancilla, center, g_plus);
    if g_minus.norm() > 0.0 {
        model.two_mode_squeeze(ancilla, center, g_minus);
    }
    model.thermal_loss(ancilla, kappa, ancilla_n);

    let gen = model.generators();
    let report = is_stable(&gen);
    if !report.stable {
        return Err(HardwareError::NotStable { max_re: report.max_real_part });
    }
    Ok(gen)
}

/// Full optomechanical model (2N+2 modes, optical ancilla at vacuum).
pub fn build_full_om_generators(
    spec: &OptomechanicalSpec,
    lin: &LinearizationResult,
) -> Result<GaussianGenerators, HardwareError> {
    let chain = spec.chain_spec()?;
    build_full_generators(&chain, lin.g_plus, lin.g_minus, spec.kappa, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    /// Parameters of the mechanical-array study: g = 5·10⁻⁵ω₀, κ = 0.01ω₀,
    /// 𝓔₊ = 160ω₀, 𝓔₋ = 136ω₀, η = 2·10⁻³ω₀, Δ = 0.8·10⁻³ω₀,
    /// δ = 0.2·10⁻³ω₀, γ = 10⁻⁵ω₀, T = 50 mK at ω₀ = 2π × 1 GHz.
    pub(crate) fn mechanical_array_spec() -> OptomechanicalSpec {
        OptomechanicalSpec {
            omega0: 2.0 * std::f64::consts::PI * 1e9,
            g: 5e-5,
            kappa: 0.01,
            drive_plus: 160.0,
            drive_minus: 136.0,
            chain: LinearChainParams { eta: 2e-3, delta: 0.8e-3, slope: 0.2e-3 },
            n_half: 4,
            gamma: 1e-5,
            thermal: Thermal::Kelvin(0.050),
        }
    }

    #[test]
    fn linearized_couplings_reach_the_reported_values() {
        let lin = linearize_om(&mechanical_array_spec()).unwrap();
        // |G₊| = 8×10⁻³ω₀ and |G₋| = 0.85|G₊| to 0.5%
        assert_relative_eq!(lin.g_plus.norm(), 8e-3, max_relative = 5e-3);
        assert_relative_eq!(lin.g_minus.norm() / lin.g_plus.norm(), 0.85, max_relative = 5e-3);
        assert!(lin.validity.warnings.is_empty());
    }

    #[test]
    fn single_tone_drive_leaves_no_residual() {
        let mut spec = mechanical_array_spec();
        spec.drive_minus = 0.0;
        let lin = linearize_om(&spec).unwrap();
        assert_eq!(lin.g_minus.norm(), 0.0);
        assert!(lin.beta0_plus.norm() < 1e-300);
        assert!(lin.beta0_minus.norm() < 1e-300);
    }

    #[test]
    fn effective_bath_values_and_purity() {
        let lin = linearize_om(&mechanical_array_spec()).unwrap();
        let bath = effective_bath_om(lin.g_plus, lin.g_minus, 0.01).unwrap();
        assert_relative_eq!(bath.rate(), 1.776e-3, max_relative = 1e-3);
        assert_relative_eq!(bath.n_bar(), 2.604, max_relative = 1e-3);
        assert_relative_eq!(bath.m_bar().norm(), 3.063, max_relative = 1e-3);
        let defect = bath.m_bar().norm_sqr() - bath.n_bar() * (bath.n_bar() + 1.0);
        assert_abs_diff_eq!(defect, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn cooling_without_blue_tone_is_a_vacuum_bath() {
        let g_plus = C64::new(8e-3, 0.0);
        let bath = effective_bath_om(g_plus, C64::new(0.0, 0.0), 0.01).unwrap();
        assert_abs_diff_eq!(bath.n_bar(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(bath.m_bar().norm(), 0.0, epsilon = 1e-15);
        assert_relative_eq!(bath.rate(), 8e-3 * 8e-3 / 0.01, max_relative = 1e-12);
    }

    #[test]
    fn balanced_tones_are_rejected() {
        let g = C64::new(5e-3, 0.0);
        assert!(matches!(
            effective_bath_om(g, g, 0.01),
            Err(HardwareError::Unstable { .. })
        ));
    }

    #[test]
    fn thermal_reservoir_factor_reduces_to_om_at_zero() {
        let gp = C64::new(8e-3, 1e-4);
        let gm = C64::new(-6e-3, 2e-3);
        let a = effective_bath_om(gp, gm, 0.01).unwrap();
        let b = effective_bath_cavity_array(gp, gm, 0.01, 0.0).unwrap();
        assert_eq!(a.rate(), b.rate());
        assert_eq!(a.n_bar(), b.n_bar());
        assert_eq!(a.m_bar(), b.m_bar());

        // any n_a > 0 makes the bath strictly impure
        for n_a in [0.1, 0.5, 2.0] {
            let bath = effective_bath_cavity_array(gp, gm, 0.01, n_a).unwrap();
            let bound = (bath.n_bar() * (bath.n_bar() + 1.0)).sqrt();
            assert!(bath.m_bar().norm() < bound - 1e-9);
        }

        // G₋ = 0 leaves a plain thermal bath at n_a
        let th = effective_bath_cavity_array(gp, C64::new(0.0, 0.0), 0.01, 0.7).unwrap();
        assert_abs_diff_eq!(th.n_bar(), 0.7, epsilon = 1e-15);
        assert_eq!(th.m_bar().norm(), 0.0);
    }

    #[test]
    fn full_model_is_stable_and_decouples_without_drive() {
        let spec = mechanical_array_spec();
        let lin = linearize_om(&spec).unwrap();
        let gen = build_full_om_generators(&spec, &lin).unwrap();
        assert_eq!(gen.modes(), 2 * spec.n_half + 2);

        // G± = 0: chain block and cavity block carry no cross terms
        let chain = spec.chain_spec().unwrap();
        let zero = C64::new(0.0, 0.0);
        let free = build_full_generators(&chain, zero, zero, spec.kappa, 0.0).unwrap();
        let a = free.drift();
        let sites = chain.sites();
        for q in 0..2 * sites {
            for p in 0..2 {
                assert_eq!(a[[q, 2 * sites + p]], 0.0);
                assert_eq!(a[[2 * sites + p, q]], 0.0);
            }
        }
    }

    #[test]
    fn overdriven_blue_tone_destabilizes_the_lossless_chain() {
        let mut spec = mechanical_array_spec();
        spec.gamma = 0.0;
        spec.drive_minus = 170.0; // |G₋| > |G₊|
        let lin = linearize_om(&spec).unwrap();
        assert!(matches!(
            build_full_om_generators(&spec, &lin),
            Err(HardwareError::NotStable { .. })
        ));
    }
}
