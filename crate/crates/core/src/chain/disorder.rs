use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::generators::ChainCoefficients;
use super::LinearChainParams;

/// Uniform multiplicative disorder on the structured chain: detunings become
/// ±(Δ + jδ)(1 + ζ_{Δ,±j}) and couplings η(1 + ζ_{η,±j}), with every ζ drawn
/// independently and uniformly from [−δζ, δζ].
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct DisorderSpec {
    pub range_eta: f64,
    pub range_delta: f64,
    pub realizations: usize,
    pub seed: u64,
}

/// One disorder realization: the perturbed Hamiltonian coefficients. The
/// mirror symmetry is broken (left and right draws are independent), so the
/// result no longer fits `ChainSpec` and is consumed by the general
/// coefficient builder.
#[derive(Debug, Clone)]
pub struct DisorderDraw {
    pub site_detunings: Vec<f64>,
    pub bond_couplings: Vec<f64>,
}

impl DisorderDraw {
    /// Attach uniform dissipation to obtain buildable chain coefficients.
    pub fn with_dissipation(self, gamma: f64, n_th: f64) -> ChainCoefficients {
        let sites = self.site_detunings.len();
        ChainCoefficients {
            site_detunings: self.site_detunings,
            bond_couplings: self.bond_couplings,
            gamma: vec![gamma; sites],
            n_th: vec![n_th; sites],
        }
    }
}

fn uniform_in(rng: &mut ChaCha8Rng, half_range: f64) -> f64 {
    // standard [0,1) variate scaled to [−δζ, δζ]
    let u: f64 = rng.random();
    half_range * (2.0 * u - 1.0)
}

/// Draw realization `index` of the disordered chain. Every realization gets
/// its own counter-derived ChaCha stream from (seed, index), so draws are
/// reproducible and independent of evaluation order or parallelism.
///
/// Draw order per rung j = 1…N: ζ_{η,+j}, ζ_{η,−j}, ζ_{Δ,+j}, ζ_{Δ,−j}.
pub fn disordered_chain(
    base: &LinearChainParams,
    n_half: usize,
    disorder: &DisorderSpec,
    index: u64,
) -> DisorderDraw {
    let mut rng = ChaCha8Rng::seed_from_u64(disorder.seed);
    rng.set_stream(index);

    let n = n_half;
    let mut site_detunings = vec![0.0; 2 * n + 1];
    let mut bond_couplings = vec![0.0; 2 * n];
    for j in 1..=n {
        let zeta_eta_plus = uniform_in(&mut rng, disorder.range_eta);
        let zeta_eta_minus = uniform_in(&mut rng, disorder.range_eta);
        let zeta_delta_plus = uniform_in(&mut rng, disorder.range_delta);
        let zeta_delta_minus = uniform_in(&mut rng, disorder.range_delta);

        bond_couplings[n + j - 1] = base.eta * (1.0 + zeta_eta_plus); // bond (j−1, j)
        bond_couplings[n - j] = base.eta * (1.0 + zeta_eta_minus); // bond (−j, −j+1)

        let detuning = base.detuning(j);
        site_detunings[n + j] = detuning * (1.0 + zeta_delta_plus);
        site_detunings[n - j] = -detuning * (1.0 + zeta_delta_minus);
    }
    DisorderDraw { site_detunings, bond_couplings }
}
