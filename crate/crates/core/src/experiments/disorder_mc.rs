use rayon::prelude::*;
use serde::Serialize;

use super::{spec_hash, IdealConfig};
use crate::chain::{build_generators_from, disordered_chain, ChainError, DisorderSpec};
use crate::gaussian::{entanglement_report, is_stable, solve_lyapunov, EntanglementReport};

/// One disorder realization; `report` is absent when the drawn chain is not
/// stable (such draws are excluded from the aggregates but counted).
#[derive(Debug, Clone, Serialize)]
pub struct DisorderRealization {
    pub index: u64,
    pub stable: bool,
    pub report: Option<EntanglementReport>,
}

/// Per-pair aggregate over the stable realizations.
#[derive(Debug, Clone, Serialize)]
pub struct PairStats {
    pub pair: (i32, i32),
    pub reference: f64,
    pub median: f64,
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DisorderStats {
    pub reference: EntanglementReport,
    pub realizations: Vec<DisorderRealization>,
    pub unstable_count: usize,
    /// Opposite-index pairs only.
    pub pair_stats: Vec<PairStats>,
    /// Median over realizations of (reference − realization) mean
    /// opposite-pair entanglement.
    pub median_mean_opposite_degradation: f64,
    pub spec_hash: String,
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = values.len();
    if n == 0 {
        f64::NAN
    } else if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

/// Monte Carlo over disorder draws around the symmetric configuration.
/// Realization k uses the ChaCha stream (seed, k), so results are identical
/// under any parallel schedule.
pub fn disorder_monte_carlo(
    cfg: &IdealConfig,
    disorder: &DisorderSpec,
) -> Result<DisorderStats, ChainError> {
    let hash = spec_hash(&(cfg, disorder));
    let chain = cfg.chain_spec()?;
    let labels = chain.site_labels();
    let gen = crate::chain::build_generators(&chain, &cfg.bath);
    let reference = entanglement_report(
        &solve_lyapunov(&gen).map_err(|e| ChainError::InvalidSpec(e.to_string()))?,
        &labels,
    )
    .map_err(|e| ChainError::InvalidSpec(e.to_string()))?;

    let realizations: Vec<DisorderRealization> = (0..disorder.realizations as u64)
        .into_par_iter()
        .map(|index| {
            let draw = disordered_chain(&cfg.chain, cfg.n_half, disorder, index);
            let coeffs = draw.with_dissipation(cfg.gamma, cfg.n_th);
            let gen = build_generators_from(&coeffs, &cfg.bath);
            if !is_stable(&gen).stable {
                return DisorderRealization { index, stable: false, report: None };
            }
            let report = solve_lyapunov(&gen)
                .ok()
                .and_then(|sigma| entanglement_report(&sigma, &labels).ok());
            DisorderRealization { index, stable: report.is_some(), report }
        })
        .collect();

    let unstable_count = realizations.iter().filter(|r| r.report.is_none()).count();

    let mut pair_stats = Vec::new();
    for p in reference.opposite_pairs() {
        let mut values: Vec<f64> = realizations
            .iter()
            .filter_map(|r| r.report.as_ref())
            .filter_map(|rep| rep.value(p.pair.0, p.pair.1))
            .collect();
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        pair_stats.push(PairStats {
            pair: p.pair,
            reference: p.log_negativity,
            median: median(&mut values),
            min,
            max,
        });
    }

    let ref_mean = reference.mean_opposite();
    let mut degradations: Vec<f64> = realizations
        .iter()
        .filter_map(|r| r.report.as_ref())
        .map(|rep| ref_mean - rep.mean_opposite())
        .collect();
    let median_mean_opposite_degradation = median(&mut degradations);

    Ok(DisorderStats {
        reference,
        realizations,
        unstable_count,
        pair_stats,
        median_mean_opposite_degradation,
        spec_hash: hash,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{LinearChainParams, SqueezedBathSpec};

    fn base() -> IdealConfig {
        IdealConfig {
            chain: LinearChainParams { eta: 1.0, delta: -0.4, slope: 0.1 },
            n_half: 2,
            gamma: 0.01,
            n_th: 0.0,
            bath: SqueezedBathSpec::pure(1.0, 2.0).unwrap(),
        }
    }

    #[test]
    fn zero_disorder_reproduces_the_reference() {
        let spec = DisorderSpec { range_eta: 0.0, range_delta: 0.0, realizations: 4, seed: 3 };
        let stats = disorder_monte_carlo(&base(), &spec).unwrap();
        assert_eq!(stats.unstable_count, 0);
        for ps in &stats.pair_stats {
            assert!((ps.median - ps.reference).abs() < 1e-12);
            assert!((ps.min - ps.max).abs() < 1e-12);
        }
        assert!(stats.median_mean_opposite_degradation.abs() < 1e-12);
    }

    #[test]
    fn small_disorder_scatters_near_the_reference() {
        let spec = DisorderSpec { range_eta: 0.01, range_delta: 0.01, realizations: 24, seed: 3 };
        let stats = disorder_monte_carlo(&base(), &spec).unwrap();
        assert_eq!(stats.unstable_count, 0);
        for ps in &stats.pair_stats {
            assert!(ps.min > 0.0);
            assert!((ps.median - ps.reference).abs() < 0.5);
        }
    }

    #[test]
    fn identical_seed_gives_identical_statistics() {
        let spec = DisorderSpec { range_eta: 0.05, range_delta: 0.0, realizations: 8, seed: 9 };
        let a = disorder_monte_carlo(&base(), &spec).unwrap();
        let b = disorder_monte_carlo(&base(), &spec).unwrap();
        assert_eq!(
            a.median_mean_opposite_degradation.to_bits(),
            b.median_mean_opposite_degradation.to_bits()
        );
        assert_eq!(a.spec_hash, b.spec_hash);
    }
}
