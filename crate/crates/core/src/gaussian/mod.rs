//! Covariance-matrix algebra for Gaussian open-system dynamics.
//!
//! Quadrature convention: x = (b + b†)/√2, p = −i(b − b†)/√2, interleaved as
//! r = (x₁, p₁, x₂, p₂, …). Covariances are the symmetrized second moments
//! σ_kl = ½⟨Δr_k Δr_l + Δr_l Δr_k⟩, so the vacuum is σ = I/2 and the
//! symplectic eigenvalues of any physical state are ≥ ½.
//!
//! First and second moments of a linear open system evolve with a drift
//! matrix A and a diffusion matrix D as σ̇ = Aσ + σAᵀ + D; the steady state
//! solves the Lyapunov equation Aσ + σAᵀ + D = 0.

mod covariance;
mod generators;
mod lyapunov;
mod negativity;

pub use covariance::{symplectic_form, CovarianceMatrix, GaussianError, PHYSICALITY_TOL};
pub use generators::{GaussianGenerators, QuadraticModel};
pub use lyapunov::{is_stable, solve_lyapunov, StabilityReport, STABILITY_TOL};
pub use negativity::{entanglement_report, log_negativity, EntanglementReport, PairEntanglement};
