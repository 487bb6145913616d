use rayon::prelude::*;
use serde::Serialize;

use super::optimize::maximize_g_ratio;
use super::{spec_hash, RunDiagnostics, RunResult};
use crate::chain::{build_generators, ChainSpec, SqueezedBathSpec};
use crate::gaussian::{
    entanglement_report, is_stable, solve_lyapunov, EntanglementReport, GaussianGenerators,
};
use crate::hardware::{
    build_full_cqed_generators, build_full_om_generators, circuit_qed_couplings,
    effective_bath_om, linearize_om, CircuitQedSpec, HardwareError, OptomechanicalSpec,
};

/// Search window and tolerance of the per-point |G₋|/|G₊| optimization.
const XI_RANGE: (f64, f64) = (0.05, 0.99);
const XI_TOL: f64 = 1e-3;

/// Paired steady-state results of the full (chain + ancilla) model and the
/// ideal chain with the adiabatically eliminated bath.
#[derive(Debug, Clone, Serialize)]
pub struct ComparePoint {
    pub parameter: f64,
    /// |G₋|/|G₊| realized at this point.
    pub xi: f64,
    pub full: RunResult,
    pub effective: RunResult,
    /// max over opposite pairs of the relative E_N deviation.
    pub max_pair_deviation: Option<f64>,
}

/// Bosonized-qubit comparison point with the occupancy that polices the
/// two-level → oscillator replacement.
#[derive(Debug, Clone, Serialize)]
pub struct CqedPoint {
    pub parameter: f64,
    pub xi: f64,
    pub ancilla_occupancy: Option<f64>,
    pub full: RunResult,
    pub effective: RunResult,
    pub max_pair_deviation: Option<f64>,
}

/// Largest relative deviation of E_N over the opposite-index pairs; pairs
/// where both models give (numerically) zero do not count.
pub fn pair_deviation(full: &EntanglementReport, effective: &EntanglementReport) -> f64 {
    let mut worst = 0.0_f64;
    for p in effective.opposite_pairs() {
        let e = p.log_negativity;
        let f = full.value(p.pair.0, p.pair.1).unwrap_or(0.0);
        let scale = e.max(f);
        if scale > 1e-9 {
            worst = worst.max((f - e).abs() / scale);
        }
    }
    worst
}

fn failed_result(parameter: f64, seed: u64, hash: &str, error: String) -> RunResult {
    RunResult {
        parameter,
        report: None,
        diagnostics: RunDiagnostics {
            stable: false,
            max_real_part: f64::NAN,
            unique: None,
            min_abs_projection: None,
            ancilla_occupancy: None,
        },
        error: Some(error),
        seed,
        spec_hash: hash.to_string(),
    }
}

fn solve_report(
    gen: &GaussianGenerators,
    chain: &ChainSpec,
    parameter: f64,
    seed: u64,
    hash: &str,
) -> RunResult {
    let stability = is_stable(gen);
    let chain_modes: Vec<usize> = (0..chain.sites()).collect();
    let mut diagnostics = RunDiagnostics {
        stable: stability.stable,
        max_real_part: stability.max_real_part,
        unique: None,
        min_abs_projection: None,
        ancilla_occupancy: None,
    };
    if !stability.stable {
        return RunResult {
            parameter,
            report: None,
            diagnostics,
            error: Some("drift is not Hurwitz".into()),
            seed,
            spec_hash: hash.to_string(),
        };
    }
    let outcome = solve_lyapunov(gen).and_then(|sigma| {
        if gen.modes() > chain.sites() {
            diagnostics.ancilla_occupancy = Some(sigma.mode_occupancy(gen.modes() - 1));
        }
        let reduced = sigma.reduced(&chain_modes)?;
        entanglement_report(&reduced, &chain.site_labels())
    });
    match outcome {
        Ok(report) => RunResult {
            parameter,
            report: Some(report),
            diagnostics,
            error: None,
            seed,
            spec_hash: hash.to_string(),
        },
        Err(e) => RunResult {
            parameter,
            report: None,
            diagnostics,
            error: Some(e.to_string()),
            seed,
            spec_hash: hash.to_string(),
        },
    }
}

/// Solve both routes for one optomechanical configuration.
fn om_point(spec: &OptomechanicalSpec, parameter: f64, seed: u64, hash: &str) -> ComparePoint {
    let (full, effective, xi) = match om_both(spec, parameter, seed, hash) {
        Ok(v) => v,
        Err(e) => {
            let f = failed_result(parameter, seed, hash, e.to_string());
            return ComparePoint {
                parameter,
                xi: f64::NAN,
                effective: f.clone(),
                full: f,
                max_pair_deviation: None,
            };
        }
    };
    let max_pair_deviation = match (&full.report, &effective.report) {
        (Some(f), Some(e)) => Some(pair_deviation(f, e)),
        _ => None,
    };
    ComparePoint { parameter, xi, full, effective, max_pair_deviation }
}

fn om_both(
    spec: &OptomechanicalSpec,
    parameter: f64,
    seed: u64,
    hash: &str,
) -> Result<(RunResult, RunResult, f64), HardwareError> {
    let chain = spec.chain_spec()?;
    let lin = linearize_om(spec)?;
    let xi = lin.g_minus.norm() / lin.g_plus.norm();

    let full = match build_full_om_generators(spec, &lin) {
        Ok(gen) => solve_report(&gen, &chain, parameter, seed, hash),
        Err(e) => failed_result(parameter, seed, hash, e.to_string()),
    };
    let effective = match effective_bath_om(lin.g_plus, lin.g_minus, spec.kappa) {
        Ok(bath) => {
            let gen = build_generators(&chain, &bath);
            solve_report(&gen, &chain, parameter, seed, hash)
        }
        Err(e) => failed_result(parameter, seed, hash, e.to_string()),
    };
    Ok((full, effective, xi))
}

/// Sideband-ratio sweep: 𝓔₋ = ξ𝓔₊ realizes |G₋| = ξ|G₊| exactly.
pub fn compare_om_over_gminus(
    spec: &OptomechanicalSpec,
    ratios: &[f64],
    seed: u64,
) -> Vec<ComparePoint> {
    let hash = spec_hash(&(spec, "gminus", ratios));
    ratios
        .par_iter()
        .map(|&xi| {
            let mut s = spec.clone();
            s.drive_minus = xi * s.drive_plus;
            om_point(&s, xi, seed, &hash)
        })
        .collect()
}

/// Cavity-linewidth sweep at fixed drives.
pub fn compare_om_over_kappa(
    spec: &OptomechanicalSpec,
    kappas: &[f64],
    seed: u64,
) -> Vec<ComparePoint> {
    let hash = spec_hash(&(spec, "kappa", kappas));
    kappas
        .par_iter()
        .map(|&kappa| {
            let mut s = spec.clone();
            s.kappa = kappa;
            om_point(&s, kappa, seed, &hash)
        })
        .collect()
}

/// Mean opposite-pair E_N of the effective model as a function of ξ, the
/// objective of the per-point sideband optimization.
fn effective_objective(spec: &OptomechanicalSpec, xi: f64) -> f64 {
    let mut s = spec.clone();
    s.drive_minus = xi * s.drive_plus;
    let Ok(chain) = s.chain_spec() else { return 0.0 };
    let Ok(lin) = linearize_om(&s) else { return 0.0 };
    let Ok(bath) = effective_bath_om(lin.g_plus, lin.g_minus, s.kappa) else {
        return 0.0;
    };
    let gen = build_generators(&chain, &bath);
    if !is_stable(&gen).stable {
        return 0.0;
    }
    solve_lyapunov(&gen)
        .and_then(|sigma| entanglement_report(&sigma, &chain.site_labels()))
        .map(|r| r.mean_opposite())
        .unwrap_or(0.0)
}

/// Mechanical-dissipation sweep with the sideband ratio re-optimized at
/// every point (golden section on the effective model).
pub fn compare_om_over_gamma(
    spec: &OptomechanicalSpec,
    gammas: &[f64],
    seed: u64,
) -> Vec<ComparePoint> {
    let hash = spec_hash(&(spec, "gamma", gammas));
    gammas
        .par_iter()
        .map(|&gamma| {
            let mut s = spec.clone();
            s.gamma = gamma;
            let (xi, _) =
                maximize_g_ratio(|xi| effective_objective(&s, xi), XI_RANGE.0, XI_RANGE.1, XI_TOL);
            s.drive_minus = xi * s.drive_plus;
            om_point(&s, gamma, seed, &hash)
        })
        .collect()
}

/// Resonator-dissipation sweep of the circuit-QED scheme with ξ optimized
/// per point; reports the bosonized-qubit occupancy of the full model.
pub fn cqed_gamma_sweep(spec: &CircuitQedSpec, gammas: &[f64], seed: u64) -> Vec<CqedPoint> {
    let hash = spec_hash(&(spec, "cqed-gamma", gammas));
    // 𝓔₋ realizing |G₋| = ξ|G₊|: the sideband denominators differ
    let drive_for_xi = |s: &CircuitQedSpec, xi: f64| {
        xi * s.drive_plus * (s.epsilon - 1.0).abs() / (s.epsilon + 1.0).abs()
    };
    gammas
        .par_iter()
        .map(|&gamma| {
            let mut s = spec.clone();
            s.gamma = gamma;
            let objective = |xi: f64| {
                let mut c = s.clone();
                c.drive_minus = drive_for_xi(&c, xi);
                let Ok(chain) = c.chain_spec() else { return 0.0 };
                let Ok((gp, gm)) = circuit_qed_couplings(&c) else { return 0.0 };
                let Ok(bath) = effective_bath_om(gp, gm, c.kappa) else { return 0.0 };
                let gen = build_generators(&chain, &bath);
                if !is_stable(&gen).stable {
                    return 0.0;
                }
                solve_lyapunov(&gen)
                    .and_then(|sigma| entanglement_report(&sigma, &chain.site_labels()))
                    .map(|r| r.mean_opposite())
                    .unwrap_or(0.0)
            };
            let (xi, _) = maximize_g_ratio(objective, XI_RANGE.0, XI_RANGE.1, XI_TOL);
            s.drive_minus = drive_for_xi(&s, xi);

            let chain = match s.chain_spec() {
                Ok(c) => c,
                Err(e) => {
                    let f = failed_result(gamma, seed, &hash, e.to_string());
                    return CqedPoint {
                        parameter: gamma,
                        xi,
                        ancilla_occupancy: None,
                        effective: f.clone(),
                        full: f,
                        max_pair_deviation: None,
                    };
                }
            };
            let full = match build_full_cqed_generators(&s) {
                Ok(gen) => solve_report(&gen, &chain, gamma, seed, &hash),
                Err(e) => failed_result(gamma, seed, &hash, e.to_string()),
            };
            let effective = match circuit_qed_couplings(&s)
                .and_then(|(gp, gm)| effective_bath_om(gp, gm, s.kappa))
            {
                Ok(bath) => {
                    let gen = build_generators(&chain, &bath);
                    solve_report(&gen, &chain, gamma, seed, &hash)
                }
                Err(e) => failed_result(gamma, seed, &hash, e.to_string()),
            };
            let max_pair_deviation = match (&full.report, &effective.report) {
                (Some(f), Some(e)) => Some(pair_deviation(f, e)),
                _ => None,
            };
            CqedPoint {
                parameter: gamma,
                xi,
                ancilla_occupancy: full.diagnostics.ancilla_occupancy,
                full,
                effective,
                max_pair_deviation,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::LinearChainParams;
    use crate::hardware::Thermal;

    fn om_spec() -> OptomechanicalSpec {
        OptomechanicalSpec {
            omega0: 2.0 * std::f64::consts::PI * 1e9,
            g: 5e-5,
            kappa: 0.01,
            drive_plus: 160.0,
            drive_minus: 136.0,
            chain: LinearChainParams { eta: 2e-3, delta: 0.8e-3, slope: 0.2e-3 },
            n_half: 2,
            gamma: 1e-5,
            thermal: Thermal::Kelvin(0.050),
        }
    }

    #[test]
    fn models_agree_closely_at_the_reference_point() {
        let points = compare_om_over_gminus(&om_spec(), &[0.85], 1);
        let p = &points[0];
        assert!(p.full.report.is_some() && p.effective.report.is_some());
        let dev = p.max_pair_deviation.unwrap();
        assert!(dev < 0.05, "full vs effective deviation {dev}");
        assert!((p.xi - 0.85).abs() < 1e-12);
        // adiabatic elimination assumes a nearly empty cavity
        assert!(p.full.diagnostics.ancilla_occupancy.unwrap() < 0.5);
    }

    #[test]
    fn zero_blue_tone_gives_zero_entanglement_in_both_models() {
        let mut spec = om_spec();
        spec.drive_minus = 0.0;
        let points = compare_om_over_gminus(&spec, &[0.0], 1);
        let p = &points[0];
        let f = p.full.report.as_ref().unwrap();
        let e = p.effective.report.as_ref().unwrap();
        assert!(f.mean_opposite() < 1e-9);
        assert!(e.mean_opposite() < 1e-9);
    }

    #[test]
    fn deviation_of_identical_reports_is_zero() {
        let points = compare_om_over_gminus(&om_spec(), &[0.7], 1);
        let r = points[0].effective.report.as_ref().unwrap();
        assert_eq!(pair_deviation(r, r), 0.0);
    }
}
