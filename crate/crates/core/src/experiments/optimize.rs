use crate::chain::{eigenmode_analysis, EigenmodeAnalysis, LinearChainParams};

/// Result of the detuning search: the Δ* whose normal-mode projections onto
/// the central site are as uniform as possible.
#[derive(Debug, Clone)]
pub struct DetuningOptimum {
    pub delta_star: f64,
    pub spread: f64,
    pub analysis: EigenmodeAnalysis,
}

fn spread_at(eta: f64, slope: f64, n_half: usize, delta: f64) -> f64 {
    let chain = LinearChainParams { eta, delta, slope }
        .expand(n_half, 0.0, 0.0)
        .expect("scan parameters are valid");
    eigenmode_analysis(&chain).projection_spread()
}

/// Minimize spread(Δ) = max_k|p_k| − min_k|p_k| over `range` by a coarse
/// scan plus one refinement pass (final grid step ≤ 2.5·10⁻⁵ of the range
/// width); exact ties break toward smaller |Δ|.
pub fn optimize_detuning(
    eta: f64,
    slope: f64,
    n_half: usize,
    range: (f64, f64),
) -> DetuningOptimum {
    let (lo, hi) = range;
    assert!(hi > lo, "empty search range");

    let better = |s: f64, d: f64, best_s: f64, best_d: f64| -> bool {
        s < best_s || (s == best_s && d.abs() < best_d.abs())
    };

    let scan = |from: f64, to: f64, points: usize, mut best: (f64, f64)| -> (f64, f64) {
        for k in 0..=points {
            let delta = from + (to - from) * k as f64 / points as f64;
            let s = spread_at(eta, slope, n_half, delta);
            if better(s, delta, best.0, best.1) {
                best = (s, delta);
            }
        }
        best
    };

    let coarse_step = (hi - lo) / 400.0;
    let best = scan(lo, hi, 400, (f64::INFINITY, hi));
    let refined = scan(
        (best.1 - coarse_step).max(lo),
        (best.1 + coarse_step).min(hi),
        800,
        best,
    );

    let delta_star = refined.1;
    let chain = LinearChainParams { eta, delta: delta_star, slope }
        .expand(n_half, 0.0, 0.0)
        .expect("optimum parameters are valid");
    DetuningOptimum { delta_star, spread: refined.0, analysis: eigenmode_analysis(&chain) }
}

/// Golden-section maximization of a unimodal function on [lo, hi] to
/// absolute abscissa tolerance `tol`; returns (argmax, max).
pub fn maximize_g_ratio(mut eval: impl FnMut(f64) -> f64, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let inv_phi = 0.5 * (5.0_f64.sqrt() - 1.0);
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = eval(c);
    let mut fd = eval(d);
    while (b - a) > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = eval(d);
        }
    }
    if fc > fd {
        (c, fc)
    } else {
        (d, fd)
    }
}
