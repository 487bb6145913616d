//! Hardware realizations of the squeezed reservoir by bichromatic driving:
//! the optomechanical-crystal mechanical array (optical cavity ancilla), the
//! circuit-QED coplanar-waveguide array (bosonized flux qubit ancilla), and
//! the complementary optical-cavity array with a mechanical reservoir. Each
//! scheme maps onto either the full linearized model (chain + ancilla mode)
//! or, after adiabatic elimination, the ideal chain with an effective
//! squeezed bath.

mod cavity_array;
mod circuit_qed;
mod optomech;
mod thermal;

pub use cavity_array::{cavity_array_couplings, CavityArraySpec};
pub use circuit_qed::{build_full_cqed_generators, circuit_qed_couplings, CircuitQedSpec};
pub use optomech::{
    build_full_generators, build_full_om_generators, effective_bath_cavity_array,
    effective_bath_om, linearize_om, LinearizationResult, OptomechanicalSpec, ValidityMetrics,
};
pub use thermal::{bose_occupancy, Thermal, HBAR, KB};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HardwareError {
    #[error("invalid hardware spec: {0}")]
    InvalidSpec(String),
    #[error("unstable sideband balance: |G₊| = {g_plus:.3e} ≤ |G₋| = {g_minus:.3e}")]
    Unstable { g_plus: f64, g_minus: f64 },
    #[error("mean-field resolvent is singular (degenerate parameters)")]
    SingularResolvent,
    #[error("resonant denominator ε ± ω₀ = 0")]
    DivisionByZero,
    #[error("assembled model is not stable (max drift eigenvalue {max_re:.3e})")]
    NotStable { max_re: f64 },
}
