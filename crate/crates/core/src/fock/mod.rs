//! Truncated Fock-space master-equation oracle.
//!
//! This module is the brute-force validator for the Gaussian machinery: it
//! integrates (or null-space solves) the Lindblad dynamics with no Gaussian
//! assumptions and is used to pin the sign and factor conventions of the
//! squeezed dissipator and to cross-check the logarithmic-negativity closed
//! form through the partial-transpose trace norm.

mod banded;
mod master;
mod negativity;
mod operators;
pub mod states;

pub use master::{FockError, FockModel, Liouvillian, TruncatedState, STEADY_RESIDUAL_TOL, TAIL_TOL};
pub use negativity::{log_negativity_trace_norm, partial_transpose};
pub use operators::{annihilation, creation, identity, mode_op, number, CMat};

use num_complex::Complex64 as C64;

use crate::chain::SqueezedBathSpec;
use crate::gaussian::{solve_lyapunov, QuadraticModel};

/// Side-by-side steady moments of a single squeezed-damped mode from the
/// Fock oracle and from the Gaussian generators.
#[derive(Debug, Clone, Copy)]
pub struct ConventionCheck {
    pub n_bar: f64,
    pub m_bar: C64,
    pub dim: usize,
    pub fock_n: f64,
    pub fock_m: C64,
    pub gauss_n: f64,
    pub gauss_m: C64,
    /// max over |Δ⟨b†b⟩|, |Δ⟨bb⟩| between the two routes.
    pub deviation: f64,
}

/// Truncation adequate for ~1e-6 tail population of a squeezed thermal state.
/// Pure strongly squeezed baths have the heaviest Fock tails.
pub fn suggested_dim(n_bar: f64, m_abs: f64) -> usize {
    let bound = (n_bar * (n_bar + 1.0)).sqrt();
    let purity = if bound > 0.0 { m_abs / bound } else { 0.0 };
    match () {
        _ if n_bar <= 0.01 => 6,
        _ if n_bar <= 0.75 => {
            if purity > 0.99 {
                34
            } else {
                26
            }
        }
        _ => {
            if purity > 0.99 {
                80
            } else if purity > 0.1 {
                64
            } else {
                40
            }
        }
    }
}

/// Solve the same single-mode squeezed-bath problem in both frameworks and
/// report the moment deviation. This check fixes the orientation of m̄ in
/// the diffusion block once and for all.
pub fn single_mode_convention_check(
    bath: &SqueezedBathSpec,
    dim: usize,
) -> Result<ConventionCheck, FockError> {
    let mut model = FockModel::new(vec![dim])?;
    model.squeezed_bath(0, bath.rate(), bath.n_bar(), bath.m_bar());
    let state = model.steady_state()?;
    let fock_n = state.occupancy(0);
    let fock_m = state.quadratic_moments()[[0, 0]];

    let mut quad = QuadraticModel::new(1);
    quad.squeezed_loss(0, bath.rate(), bath.n_bar(), bath.m_bar());
    let sigma = solve_lyapunov(&quad.generators())
        .map_err(|e| FockError::Backend(e.to_string()))?;
    let s = sigma.matrix();
    let gauss_n = 0.5 * (s[[0, 0]] + s[[1, 1]] - 1.0);
    let gauss_m = C64::new(0.5 * (s[[0, 0]] - s[[1, 1]]), s[[0, 1]]);

    let deviation = (fock_n - gauss_n).abs().max((fock_m - gauss_m).norm());
    Ok(ConventionCheck {
        n_bar: bath.n_bar(),
        m_bar: bath.m_bar(),
        dim,
        fock_n,
        fock_m,
        gauss_n,
        gauss_m,
        deviation,
    })
}

/// The (n̄, |m̄|, phase) grid over which the convention lock is enforced:
/// n̄ ∈ {0, 0.5, 2}, |m̄| ∈ {0, ½, 1}·√(n̄(n̄+1)), phases {0, π/3}.
pub fn convention_grid() -> Vec<SqueezedBathSpec> {
    let mut grid = Vec::new();
    for &n_bar in &[0.0, 0.5, 2.0] {
        let bound = (n_bar * (n_bar + 1.0_f64)).sqrt();
        for &frac in &[0.0, 0.5, 1.0] {
            let m_abs = frac * bound;
            if m_abs == 0.0 {
                grid.push(SqueezedBathSpec::new(1.0, n_bar, C64::new(0.0, 0.0)).unwrap());
                continue;
            }
            for &phase in &[0.0, std::f64::consts::FRAC_PI_3] {
                grid.push(
                    SqueezedBathSpec::new(1.0, n_bar, C64::from_polar(m_abs, phase)).unwrap(),
                );
            }
        }
    }
    grid.dedup_by(|a, b| a.n_bar() == b.n_bar() && (a.m_bar() - b.m_bar()).norm() == 0.0);
    grid
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_covers_the_stated_points() {
        let grid = convention_grid();
        // n̄ = 0 contributes one vacuum point; n̄ ∈ {0.5, 2} contribute
        // 1 thermal + 2·2 squeezed points each
        assert_eq!(grid.len(), 11);
        assert!(grid.iter().any(|b| b.n_bar() == 0.0));
        assert!(grid.iter().any(
            |b| b.n_bar() == 2.0 && (b.m_bar().arg() - std::f64::consts::FRAC_PI_3).abs() < 1e-12
        ));
    }

    #[test]
    fn suggested_dims_are_within_caps() {
        for bath in convention_grid() {
            let d = suggested_dim(bath.n_bar(), bath.m_bar().norm());
            assert!((6..=96).contains(&d));
        }
    }
}
