//! Study drivers on top of the model modules: parameter sweeps, detuning
//! optimization, disorder Monte Carlo, size scans, and full-vs-effective
//! model comparisons. Every driver is deterministic given its inputs and a
//! seed, independent of worker count: parallel points are collected by
//! index and all randomness flows through counter-derived ChaCha streams.

mod compare;
mod disorder_mc;
mod optimize;
mod size_scan;
mod sweep;

pub use compare::{
    compare_om_over_gamma, compare_om_over_gminus, compare_om_over_kappa, cqed_gamma_sweep,
    pair_deviation, ComparePoint, CqedPoint,
};
pub use disorder_mc::{disorder_monte_carlo, DisorderRealization, DisorderStats, PairStats};
pub use optimize::{maximize_g_ratio, optimize_detuning, DetuningOptimum};
pub use size_scan::{size_scan, SizeScanRow};
pub use sweep::sweep_ideal;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::chain::{ChainError, ChainSpec, LinearChainParams, SqueezedBathSpec};
use crate::gaussian::EntanglementReport;

/// Ideal-model configuration: structured chain, uniform dissipation, and the
/// central squeezed reservoir. Rates in units of Γ unless stated otherwise.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdealConfig {
    pub chain: LinearChainParams,
    pub n_half: usize,
    pub gamma: f64,
    pub n_th: f64,
    pub bath: SqueezedBathSpec,
}

impl IdealConfig {
    pub fn chain_spec(&self) -> Result<ChainSpec, ChainError> {
        self.chain.expand(self.n_half, self.gamma, self.n_th)
    }
}

/// Swept parameter of an ideal-model study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    Gamma,
    Eta,
    Delta,
    ChainSize,
}

/// Sweep grid: explicit values or a linear/log range.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "scale", rename_all = "snake_case")]
pub enum Grid {
    Values { values: Vec<f64> },
    Linear { start: f64, stop: f64, count: usize },
    Log { start: f64, stop: f64, count: usize },
}

impl Grid {
    /// Expand to a nonempty strictly monotone list of grid points.
    pub fn values(&self) -> Result<Vec<f64>, String> {
        let values = match self {
            Grid::Values { values } => values.clone(),
            Grid::Linear { start, stop, count } => {
                if *count < 2 {
                    return Err("range grids need count ≥ 2".into());
                }
                let step = (stop - start) / (*count as f64 - 1.0);
                (0..*count).map(|k| start + k as f64 * step).collect()
            }
            Grid::Log { start, stop, count } => {
                if *count < 2 {
                    return Err("range grids need count ≥ 2".into());
                }
                if *start <= 0.0 || *stop <= 0.0 {
                    return Err("log grids need positive endpoints".into());
                }
                let ratio = (stop / start).ln() / (*count as f64 - 1.0);
                (0..*count).map(|k| start * (k as f64 * ratio).exp()).collect()
            }
        };
        if values.is_empty() {
            return Err("empty grid".into());
        }
        let ascending = values.windows(2).all(|w| w[0] < w[1]);
        let descending = values.windows(2).all(|w| w[0] > w[1]);
        if values.len() > 1 && !ascending && !descending {
            return Err("grid must be strictly monotone".into());
        }
        Ok(values)
    }
}

/// Stability and uniqueness flags attached to every computed point.
#[derive(Debug, Clone, Serialize)]
pub struct RunDiagnostics {
    pub stable: bool,
    pub max_real_part: f64,
    pub unique: Option<bool>,
    pub min_abs_projection: Option<f64>,
    pub ancilla_occupancy: Option<f64>,
}

/// Outcome at one parameter point. Unstable points are flagged, not fatal:
/// `report` is absent and `error` says why.
#[derive(Debug, Clone, Serialize)]
pub struct RunResult {
    pub parameter: f64,
    pub report: Option<EntanglementReport>,
    pub diagnostics: RunDiagnostics,
    pub error: Option<String>,
    pub seed: u64,
    pub spec_hash: String,
}

/// SHA-256 of the canonical JSON serialization, stamped on every result so
/// any point can be re-run standalone.
pub fn spec_hash<T: Serialize>(value: &T) -> String {
    let json = serde_json::to_string(value).expect("serializable spec");
    let mut hasher = Sha256::new();
    hasher.update(json.as_bytes());
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}
