use rayon::prelude::*;

use super::{spec_hash, IdealConfig, RunDiagnostics, RunResult, SweepParameter};
use crate::chain::{build_generators, eigenmode_analysis};
use crate::gaussian::{entanglement_report, is_stable, solve_lyapunov};

fn patched(cfg: &IdealConfig, parameter: SweepParameter, value: f64) -> IdealConfig {
    let mut out = cfg.clone();
    match parameter {
        SweepParameter::Gamma => out.gamma = value,
        SweepParameter::Eta => out.chain.eta = value,
        SweepParameter::Delta => out.chain.delta = value,
        SweepParameter::ChainSize => out.n_half = value.round() as usize,
    }
    out
}

/// Evaluate the steady state of one ideal-model configuration.
pub(crate) fn ideal_point(cfg: &IdealConfig, parameter: f64, seed: u64, hash: &str) -> RunResult {
    let make = |report, diagnostics, error| RunResult {
        parameter,
        report,
        diagnostics,
        error,
        seed,
        spec_hash: hash.to_string(),
    };
    let chain = match cfg.chain_spec() {
        Ok(chain) => chain,
        Err(e) => {
            return make(
                None,
                RunDiagnostics {
                    stable: false,
                    max_real_part: f64::NAN,
                    unique: None,
                    min_abs_projection: None,
                    ancilla_occupancy: None,
                },
                Some(e.to_string()),
            )
        }
    };
    let modes = eigenmode_analysis(&chain);
    let gen = build_generators(&chain, &cfg.bath);
    let stability = is_stable(&gen);
    let diagnostics = RunDiagnostics {
        stable: stability.stable,
        max_real_part: stability.max_real_part,
        unique: Some(modes.unique),
        min_abs_projection: Some(modes.min_abs_projection),
        ancilla_occupancy: None,
    };
    if !stability.stable {
        return make(None, diagnostics, Some("drift is not Hurwitz".into()));
    }
    match solve_lyapunov(&gen).and_then(|sigma| entanglement_report(&sigma, &chain.site_labels()))
    {
        Ok(report) => make(Some(report), diagnostics, None),
        Err(e) => make(None, diagnostics, Some(e.to_string())),
    }
}

/// One steady state per grid point; unstable points are flagged in place.
pub fn sweep_ideal(
    cfg: &IdealConfig,
    parameter: SweepParameter,
    grid: &[f64],
    seed: u64,
) -> Vec<RunResult> {
    let hash = spec_hash(&(cfg, parameter, grid));
    grid.par_iter()
        .map(|&value| ideal_point(&patched(cfg, parameter, value), value, seed, &hash))
        .collect()
}
