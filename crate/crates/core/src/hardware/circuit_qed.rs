use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::optomech::build_full_generators;
use super::thermal::Thermal;
use super::HardwareError;
use crate::chain::{ChainSpec, LinearChainParams};
use crate::gaussian::GaussianGenerators;

/// Coplanar-waveguide chain whose central resonator couples to a flux qubit
/// (splitting ε, coupling g) with a bichromatically modulated gap; engineered
/// qubit relaxation at rate κ. Rates in units of ω₀; `omega0` in rad/s for
/// the temperature conversion.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CircuitQedSpec {
    pub omega0: f64,
    pub g: f64,
    pub epsilon: f64,
    pub drive_plus: f64,
    pub drive_minus: f64,
    pub kappa: f64,
    pub chain: LinearChainParams,
    pub n_half: usize,
    pub gamma: f64,
    pub thermal: Thermal,
}

impl CircuitQedSpec {
    pub fn validate(&self) -> Result<(), HardwareError> {
        if !(self.omega0 > 0.0 && self.g > 0.0 && self.kappa > 0.0) {
            return Err(HardwareError::InvalidSpec("ω₀, g, κ must be positive".into()));
        }
        Ok(())
    }

    pub fn n_th(&self) -> f64 {
        self.thermal.occupancy(self.omega0)
    }

    pub fn chain_spec(&self) -> Result<ChainSpec, HardwareError> {
        self.chain
            .expand(self.n_half, self.gamma, self.n_th())
            .map_err(|e| HardwareError::InvalidSpec(e.to_string()))
    }

    /// Modulation ratios 𝓔±/(ε ± ω₀) controlling the resonant-term expansion.
    pub fn modulation_ratios(&self) -> (f64, f64) {
        (
            self.drive_plus / (self.epsilon + 1.0).abs(),
            self.drive_minus / (self.epsilon - 1.0).abs(),
        )
    }
}

/// Effective sideband couplings G± = g𝓔±/(ε ± ω₀) of the modulated qubit,
/// keeping only the dominant resonant terms.
pub fn circuit_qed_couplings(spec: &CircuitQedSpec) -> Result<(C64, C64), HardwareError> {
    spec.validate()?;
    let denom_plus = spec.epsilon + 1.0;
    let denom_minus = spec.epsilon - 1.0;
    if denom_plus == 0.0 || denom_minus == 0.0 {
        return Err(HardwareError::DivisionByZero);
    }
    Ok((
        C64::new(spec.g * spec.drive_plus / denom_plus, 0.0),
        C64::new(spec.g * spec.drive_minus / denom_minus, 0.0),
    ))
}

/// Full model with the qubit bosonized into a harmonic ancilla (no
/// Hilbert-space truncation): same structure as the optomechanical model
/// with (κ, G±) from the circuit-QED mapping. The bosonization is justified
/// a posteriori by the steady-state ancilla occupancy staying ≲ 0.02.
pub fn build_full_cqed_generators(
    spec: &CircuitQedSpec,
) -> Result<GaussianGenerators, HardwareError> {
    let (g_plus, g_minus) = circuit_qed_couplings(spec)?;
    let chain = spec.chain_spec()?;
    build_full_generators(&chain, g_plus, g_minus, spec.kappa, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::solve_lyapunov;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    /// CPW-array parameters: ω₀ = 2π × 5 GHz, g = 0.06ω₀, ε = 2ω₀,
    /// 𝓔₊ = 0.25ω₀, κ = 0.02ω₀, η = 2·10⁻³ω₀, Δ = 0.8·10⁻³ω₀,
    /// δ = 0.2·10⁻³ω₀.
    pub(crate) fn cpw_array_spec() -> CircuitQedSpec {
        CircuitQedSpec {
            omega0: 2.0 * std::f64::consts::PI * 5e9,
            g: 0.06,
            epsilon: 2.0,
            drive_plus: 0.25,
            // ξ = |G₋|/|G₊| = 0.85: the ε − ω₀ denominator makes the minus
            // tone three times as effective, so 𝓔₋ = 0.85·𝓔₊/3
            drive_minus: 0.85 * 0.25 / 3.0,
            kappa: 0.02,
            chain: LinearChainParams { eta: 2e-3, delta: 0.8e-3, slope: 0.2e-3 },
            n_half: 4,
            gamma: 1e-5,
            thermal: Thermal::Kelvin(0.020),
        }
    }

    #[test]
    fn coupling_formula() {
        let spec = cpw_array_spec();
        let (g_plus, g_minus) = circuit_qed_couplings(&spec).unwrap();
        // g𝓔₊/(ε + ω₀) = 0.06·0.25/3 = 5×10⁻³ω₀
        assert_relative_eq!(g_plus.re, 5e-3, max_relative = 1e-12);
        // same drive on both tones: G₋/G₊ = (ε+ω₀)/(ε−ω₀) = 3
        let mut equal = spec;
        equal.drive_minus = equal.drive_plus;
        let (gp, gm) = circuit_qed_couplings(&equal).unwrap();
        assert_relative_eq!(gm.re / gp.re, 3.0, max_relative = 1e-12);

        let mut zero = cpw_array_spec();
        zero.drive_plus = 0.0;
        let (gp, _) = circuit_qed_couplings(&zero).unwrap();
        assert_eq!(gp.norm(), 0.0);
    }

    #[test]
    fn resonant_qubit_rejected() {
        let mut spec = cpw_array_spec();
        spec.epsilon = 1.0; // ε = ω₀
        assert!(matches!(circuit_qed_couplings(&spec), Err(HardwareError::DivisionByZero)));
    }

    #[test]
    fn bosonized_qubit_stays_nearly_empty() {
        let spec = cpw_array_spec();
        let gen = build_full_cqed_generators(&spec).unwrap();
        let sigma = solve_lyapunov(&gen).unwrap();
        let occupancy = sigma.mode_occupancy(gen.modes() - 1);
        assert!(occupancy <= 0.02, "ancilla occupancy {occupancy}");
    }

    #[test]
    fn undriven_ancilla_sits_in_vacuum() {
        let mut spec = cpw_array_spec();
        spec.drive_plus = 1e-9;
        spec.drive_minus = 0.0;
        let gen = build_full_cqed_generators(&spec).unwrap();
        let sigma = solve_lyapunov(&gen).unwrap();
        assert_abs_diff_eq!(sigma.mode_occupancy(gen.modes() - 1), 0.0, epsilon = 1e-9);
    }
}
