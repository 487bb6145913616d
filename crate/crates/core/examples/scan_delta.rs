use chainsq_core::chain::{eigenmode_analysis, LinearChainParams};

fn main() {
    // landscape of spread(Δ) for N = 4, η = 1, δ = 0.1
    let mut best = (f64::INFINITY, 0.0);
    for k in 0..=800 {
        let delta = -2.0 + 4.0 * k as f64 / 800.0;
        let chain = LinearChainParams { eta: 1.0, delta, slope: 0.1 }.expand(4, 0.0, 0.0).unwrap();
        let a = eigenmode_analysis(&chain);
        let s = a.projection_spread();
        if s < best.0 { best = (s, delta); }
        if k % 40 == 0 {
            println!("delta {delta:7.3}  spread {s:.4}  min|p| {:.4}", a.min_abs_projection);
        }
    }
    println!("best: spread {:.5} at delta {:.4}", best.0, best.1);
    // local landscape near -0.4
    for k in 0..=20 {
        let delta = -0.6 + 0.4 * k as f64 / 20.0;
        let chain = LinearChainParams { eta: 1.0, delta, slope: 0.1 }.expand(4, 0.0, 0.0).unwrap();
        let s = eigenmode_analysis(&chain).projection_spread();
        println!("  near: delta {delta:7.3}  spread {s:.4}");
    }
}
