//! Steady states of linearly coupled harmonic-oscillator chains whose central
//! site is damped by a squeezed reservoir, together with the covariance-matrix
//! machinery needed to quantify the resulting pairwise entanglement and the
//! reservoir-engineering schemes (optomechanical, circuit-QED, cavity-array)
//! that realize the squeezed bath with bichromatic drives.
//!
//! Module map:
//! - [`gaussian`]: drift/diffusion generators, Lyapunov steady states,
//!   stability, reduced states, symplectic spectra, logarithmic negativity.
//! - [`chain`]: the symmetric chain model, its analytic lossless steady state,
//!   normal-mode projections and the uniqueness criterion, disorder draws.
//! - [`hardware`]: linearized optomechanics, flux-qubit circuit QED, and the
//!   optical-cavity-array variant mapped onto full or effective generators.
//! - [`fock`]: truncated Fock-space master-equation oracle used to pin the
//!   sign and factor conventions of the squeezed dissipator.
//! - [`experiments`]: parameter sweeps, detuning optimization, disorder Monte
//!   Carlo, size scans, and full-vs-effective model comparisons.

pub mod chain;
pub mod experiments;
pub mod fock;
pub mod gaussian;
pub mod hardware;
