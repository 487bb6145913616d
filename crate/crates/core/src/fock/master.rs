//! Lindblad master equation on a truncated Fock space, for one or two modes.
//!
//! Every dissipator uses the convention 𝒟[x, y]ρ = 2xρy − yxρ − ρyx, and the
//! squeezed reservoir is assembled so that an isolated driven mode relaxes to
//! ⟨b†b⟩ = n̄, ⟨bb⟩ = m̄ — the orientation this oracle exists to pin down.
//!
//! Steady states: single-mode models go through the banded superoperator and
//! a shifted inverse iteration on its null space; two-mode models are
//! integrated (RK4, chunk lengths doubling) until the residual ‖ρ̇‖ meets the
//! tolerance.

use ndarray::Array2;
use num_complex::Complex64 as C64;
use thiserror::Error;

use super::banded::BandedMatrix;
use super::operators::{annihilation, bandwidth, creation, mode_op, CMat};
use crate::gaussian::CovarianceMatrix;

/// Residual tolerance ‖ρ̇‖_max for a converged steady state.
pub const STEADY_RESIDUAL_TOL: f64 = 1e-8;
/// Largest admissible population of the top Fock level of any mode.
pub const TAIL_TOL: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum FockError {
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("truncation insufficient: mode {mode} holds {tail:.3e} at its top level")]
    TruncationInsufficient { mode: usize, tail: f64 },
    #[error("no convergence: residual {residual:.3e} after t = {t_final}")]
    NoConvergence { residual: f64, t_final: f64 },
    #[error("linear algebra backend failure: {0}")]
    Backend(String),
}

/// Truncated-Fock-space density matrix with its mode dimensions.
#[derive(Debug, Clone)]
pub struct TruncatedState {
    dims: Vec<usize>,
    rho: CMat,
}

impl TruncatedState {
    pub fn new(dims: Vec<usize>, rho: CMat) -> Self {
        let total: usize = dims.iter().product();
        assert_eq!(rho.dim(), (total, total));
        Self { dims, rho }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn rho(&self) -> &CMat {
        &self.rho
    }

    pub fn trace(&self) -> C64 {
        self.rho.diag().sum()
    }

    fn expectation(&self, op: &CMat) -> C64 {
        // tr(op ρ)
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..self.rho.nrows() {
            for k in 0..self.rho.nrows() {
                acc += op[[i, k]] * self.rho[[k, i]];
            }
        }
        acc
    }

    /// ⟨bᵢ†bⱼ⟩ matrix.
    pub fn quadratic_moments_dag(&self) -> CMat {
        let m = self.dims.len();
        let mut c = CMat::zeros((m, m));
        for i in 0..m {
            let bdi = mode_op(&self.dims, i, &creation(self.dims[i]));
            for j in 0..m {
                let bj = mode_op(&self.dims, j, &annihilation(self.dims[j]));
                c[[i, j]] = self.expectation(&bdi.dot(&bj));
            }
        }
        c
    }

    /// ⟨bᵢbⱼ⟩ matrix (symmetric).
    pub fn quadratic_moments(&self) -> CMat {
        let m = self.dims.len();
        let mut s = CMat::zeros((m, m));
        for i in 0..m {
            let bi = mode_op(&self.dims, i, &annihilation(self.dims[i]));
            for j in 0..m {
                let bj = mode_op(&self.dims, j, &annihilation(self.dims[j]));
                s[[i, j]] = self.expectation(&bi.dot(&bj));
            }
        }
        s
    }

    pub fn occupancy(&self, mode: usize) -> f64 {
        let n = mode_op(&self.dims, mode, &super::operators::number(self.dims[mode]));
        self.expectation(&n).re
    }

    /// Population of the top Fock level of `mode` (marginal).
    pub fn tail_population(&self, mode: usize) -> f64 {
        let total = self.rho.nrows();
        let mut strides = vec![1usize; self.dims.len()];
        for k in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.dims[k + 1];
        }
        let top = self.dims[mode] - 1;
        (0..total)
            .filter(|idx| (idx / strides[mode]) % self.dims[mode] == top)
            .map(|idx| self.rho[[idx, idx]].re)
            .sum()
    }

    /// Quadrature covariance of the state's second moments, for direct
    /// comparison with the Gaussian machinery. Assumes zero mean fields
    /// (true for every model built here).
    pub fn covariance(&self) -> CovarianceMatrix {
        let m = self.dims.len();
        let c = self.quadratic_moments_dag();
        let s = self.quadratic_moments();
        let mut sigma = Array2::<f64>::zeros((2 * m, 2 * m));
        for i in 0..m {
            for j in 0..m {
                let half = if i == j { 0.5 } else { 0.0 };
                sigma[[2 * i, 2 * j]] = s[[i, j]].re + c[[i, j]].re + half;
                sigma[[2 * i + 1, 2 * j + 1]] = -s[[i, j]].re + c[[i, j]].re + half;
                sigma[[2 * i, 2 * j + 1]] = s[[i, j]].im + c[[i, j]].im;
                sigma[[2 * i + 1, 2 * j]] = s[[i, j]].im - c[[i, j]].im;
            }
        }
        let sigma = 0.5 * (&sigma + &sigma.t());
        CovarianceMatrix::new(sigma).expect("covariance from symmetrized moments")
    }

    /// Trace, Hermiticity, positivity, and truncation-tail checks.
    pub fn validate(&self) -> Result<(), FockError> {
        let tr = self.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > 1e-8 {
            return Err(FockError::InvalidModel(format!("trace = {tr}")));
        }
        let herm_err = self
            .rho
            .indexed_iter()
            .map(|((i, j), v)| (v - self.rho[[j, i]].conj()).norm())
            .fold(0.0_f64, f64::max);
        if herm_err > 1e-8 {
            return Err(FockError::InvalidModel(format!("Hermiticity defect {herm_err:.3e}")));
        }
        use ndarray_linalg::Eigh;
        let (eigs, _) = self
            .rho
            .eigh(ndarray_linalg::UPLO::Lower)
            .map_err(|e| FockError::Backend(e.to_string()))?;
        if let Some(&min) = eigs.iter().min_by(|a, b| a.partial_cmp(b).unwrap()) {
            if min < -1e-8 {
                return Err(FockError::InvalidModel(format!("negative eigenvalue {min:.3e}")));
            }
        }
        for mode in 0..self.dims.len() {
            let tail = self.tail_population(mode);
            if tail > TAIL_TOL {
                return Err(FockError::TruncationInsufficient { mode, tail });
            }
        }
        Ok(())
    }
}

/// Hamiltonian plus dissipator list on a truncated Fock space.
pub struct FockModel {
    dims: Vec<usize>,
    hamiltonian: CMat,
    /// (coefficient, x, y) contributing coefficient·xρy to ρ̇.
    sandwiches: Vec<(C64, CMat, CMat)>,
    /// Σ rate·y·x from the anticommutator parts (Hermitian).
    damping: CMat,
}

impl FockModel {
    pub fn new(dims: Vec<usize>) -> Result<Self, FockError> {
        if dims.is_empty() || dims.len() > 2 {
            return Err(FockError::InvalidModel(format!(
                "oracle supports 1 or 2 modes, got {}",
                dims.len()
            )));
        }
        if dims.iter().any(|&d| d < 2) {
            return Err(FockError::InvalidModel("each mode needs ≥ 2 levels".into()));
        }
        let total: usize = dims.iter().product();
        // multi-mode runs stay within the 40-per-mode / 1600-total budget;
        // single-mode runs may use a deeper ladder, which the heavy-tailed
        // strongly squeezed baths need for 1e-5 moment accuracy
        let per_mode_cap = if dims.len() == 1 { 96 } else { 40 };
        if dims.iter().any(|&d| d > per_mode_cap) || total > 1600.max(per_mode_cap) {
            return Err(FockError::InvalidModel(format!("truncation {dims:?} too large")));
        }
        let h = CMat::zeros((total, total));
        Ok(Self { dims, hamiltonian: h.clone(), sandwiches: Vec::new(), damping: h })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    fn b(&self, mode: usize) -> CMat {
        mode_op(&self.dims, mode, &annihilation(self.dims[mode]))
    }

    fn bd(&self, mode: usize) -> CMat {
        mode_op(&self.dims, mode, &creation(self.dims[mode]))
    }

    /// H += Δ b†b.
    pub fn detuning(&mut self, mode: usize, delta: f64) -> &mut Self {
        let n = mode_op(&self.dims, mode, &super::operators::number(self.dims[mode]));
        self.hamiltonian = &self.hamiltonian + &n.mapv(|z| z * delta);
        self
    }

    /// H += g bᵢ†bⱼ + g* bᵢbⱼ†.
    pub fn beam_splitter(&mut self, i: usize, j: usize, g: C64) -> &mut Self {
        let term = self.bd(i).dot(&self.b(j));
        let herm = term.t().mapv(|z| z.conj());
        self.hamiltonian = &self.hamiltonian + &(term.mapv(|z| z * g) + herm.mapv(|z| z * g.conj()));
        self
    }

    /// rate·𝒟[x, y]ρ = 2·rate·xρy − rate(yxρ + ρyx).
    fn dissipator(&mut self, rate: C64, x: CMat, y: CMat) {
        self.damping = &self.damping + &y.dot(&x).mapv(|z| z * rate);
        self.sandwiches.push((2.0 * rate, x, y));
    }

    /// Thermal reservoir γ{(n_T+1)𝒟[b,b†] + n_T𝒟[b†,b]}.
    pub fn thermal_bath(&mut self, mode: usize, rate: f64, n_th: f64) -> &mut Self {
        self.dissipator(C64::new(rate * (n_th + 1.0), 0.0), self.b(mode), self.bd(mode));
        if n_th > 0.0 {
            self.dissipator(C64::new(rate * n_th, 0.0), self.bd(mode), self.b(mode));
        }
        self
    }

    /// Squeezed reservoir
    /// Γ{(n̄+1)𝒟[b,b†] + n̄𝒟[b†,b] − m̄𝒟[b†,b†] − m̄*𝒟[b,b]},
    /// oriented so the driven mode's steady moments are ⟨b†b⟩ = n̄, ⟨bb⟩ = m̄.
    pub fn squeezed_bath(&mut self, mode: usize, rate: f64, n_bar: f64, m_bar: C64) -> &mut Self {
        self.dissipator(C64::new(rate * (n_bar + 1.0), 0.0), self.b(mode), self.bd(mode));
        if n_bar > 0.0 {
            self.dissipator(C64::new(rate * n_bar, 0.0), self.bd(mode), self.b(mode));
        }
        if m_bar.norm() > 0.0 {
            self.dissipator(-m_bar * rate, self.bd(mode), self.bd(mode));
            self.dissipator(-m_bar.conj() * rate, self.b(mode), self.b(mode));
        }
        self
    }

    /// Compile into the Liouvillian ρ̇ = Gρ + ρG† + Σ cᵢ xᵢρyᵢ. Sandwich
    /// terms sharing the same left operator are merged (x ρ Σcᵢyᵢ), which
    /// halves the matrix products for a squeezed reservoir.
    pub fn liouvillian(&self) -> Liouvillian {
        let minus_i = C64::new(0.0, -1.0);
        let g = self.hamiltonian.mapv(|z| z * minus_i) - &self.damping;
        let mut merged: Vec<(C64, CMat, CMat)> = Vec::new();
        for (c, x, y) in &self.sandwiches {
            if let Some((_, _, acc)) = merged.iter_mut().find(|(_, mx, _)| mx == x) {
                *acc = &*acc + &y.mapv(|z| z * *c);
            } else {
                merged.push((C64::new(1.0, 0.0), x.clone(), y.mapv(|z| z * *c)));
            }
        }
        Liouvillian { dims: self.dims.clone(), g, sandwiches: merged }
    }

    /// Steady state ρ with L(ρ) = 0, tr ρ = 1.
    pub fn steady_state(&self) -> Result<TruncatedState, FockError> {
        if self.sandwiches.is_empty() {
            return Err(FockError::InvalidModel("no dissipation: steady state undefined".into()));
        }
        let liouv = self.liouvillian();
        let state = if self.dims.len() == 1 {
            liouv.steady_by_null_space()?
        } else {
            liouv.steady_by_integration()?
        };
        state.validate()?;
        Ok(state)
    }
}

/// Compiled master-equation action.
pub struct Liouvillian {
    dims: Vec<usize>,
    g: CMat,
    sandwiches: Vec<(C64, CMat, CMat)>,
}

impl Liouvillian {
    pub fn apply(&self, rho: &CMat) -> CMat {
        let g_dag = self.g.t().mapv(|z| z.conj());
        let mut out = self.g.dot(rho) + rho.dot(&g_dag);
        for (c, x, y) in &self.sandwiches {
            out = out + x.dot(rho).dot(y).mapv(|z| z * *c);
        }
        out
    }

    fn residual(&self, rho: &CMat) -> f64 {
        self.apply(rho).iter().fold(0.0_f64, |m, z| m.max(z.norm()))
    }

    /// Null vector of the banded single-mode superoperator via shifted
    /// inverse iteration (the factorization of L − εI is reused across
    /// iterations; ε sits far below the spectral gap).
    fn steady_by_null_space(&self) -> Result<TruncatedState, FockError> {
        let d = self.dims[0];
        let n = d * d;
        let mut bw = bandwidth(&self.g);
        for (_, x, y) in &self.sandwiches {
            bw = bw.max(bandwidth(x)).max(bandwidth(y));
        }
        let half_band = bw * d + bw;
        let scale = self
            .g
            .diag()
            .iter()
            .fold(0.0_f64, |m, z| m.max(z.norm()))
            .max(1.0);
        let shift = C64::new(1e-9 * scale, 0.0);

        let mut banded = BandedMatrix::zeros(n, half_band, half_band);
        // row r = (j, k), column c = (l, m): Gρ gives G[j,l]δ_km, ρG† gives
        // conj(G[k,m])δ_jl, a sandwich gives c·x[j,l]·y[m,k]
        for j in 0..d {
            for k in 0..d {
                let r = j * d + k;
                for l in j.saturating_sub(bw)..(j + bw + 1).min(d) {
                    for m in k.saturating_sub(bw)..(k + bw + 1).min(d) {
                        let mut val = C64::new(0.0, 0.0);
                        if m == k {
                            val += self.g[[j, l]];
                        }
                        if l == j {
                            val += self.g[[k, m]].conj();
                        }
                        for (c, x, y) in &self.sandwiches {
                            val += *c * x[[j, l]] * y[[m, k]];
                        }
                        let col = l * d + m;
                        if r == col {
                            val -= shift;
                        }
                        if val.norm() > 0.0 || r == col {
                            banded.add(r, col, val);
                        }
                    }
                }
            }
        }
        let lu = banded.factorize().map_err(FockError::Backend)?;

        // start from the maximally mixed state; iterate to the round-off
        // floor (a residual of ~1e-9 still leaves ~1e-6 moment error after
        // amplification by the moment weights)
        let mut rho = CMat::eye(d).mapv(|z| z / d as f64);
        let mut best = rho.clone();
        let mut best_residual = f64::INFINITY;
        for _ in 0..8 {
            let mut v: Vec<C64> = rho.iter().copied().collect();
            lu.solve(&mut v);
            let mut next = CMat::from_shape_vec((d, d), v).expect("shape");
            next = (&next + &next.t().mapv(|z| z.conj())).mapv(|z| z * 0.5);
            let tr = next.diag().sum();
            if tr.norm() == 0.0 {
                return Err(FockError::Backend("inverse iteration collapsed".into()));
            }
            next.mapv_inplace(|z| z / tr);
            rho = next;
            let res = self.residual(&rho);
            if res < best_residual {
                best_residual = res;
                best = rho.clone();
            }
            if res <= 1e-13 * scale {
                break;
            }
        }
        if best_residual > STEADY_RESIDUAL_TOL {
            return Err(FockError::NoConvergence { residual: best_residual, t_final: 0.0 });
        }
        Ok(TruncatedState::new(self.dims.clone(), best))
    }

    /// Spectral radius of the superoperator by power iteration, to place the
    /// RK4 step near the stability limit (norm bounds overshoot severely on
    /// Fock ladders).
    fn spectral_radius_estimate(&self) -> f64 {
        let total: usize = self.dims.iter().product();
        let mut v = CMat::from_shape_fn((total, total), |(i, j)| {
            C64::new(((3 * i + 5 * j + 1) % 17) as f64 - 8.0, ((i * j + 3) % 13) as f64 - 6.0)
        });
        let mut lambda = 1.0;
        for _ in 0..10 {
            let w = self.apply(&v);
            lambda = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if lambda == 0.0 {
                return 1.0;
            }
            v = w.mapv(|z| z / lambda);
        }
        lambda
    }

    /// RK4 relaxation from vacuum with doubling integration chunks until the
    /// residual criterion is met.
    fn steady_by_integration(&self) -> Result<TruncatedState, FockError> {
        let total: usize = self.dims.iter().product();
        let dt = 2.2 / self.spectral_radius_estimate().max(1e-12);

        let mut rho = CMat::zeros((total, total));
        rho[[0, 0]] = C64::new(1.0, 0.0);

        let mut chunk = 8.0_f64;
        let mut t = 0.0;
        let t_max = 4000.0;
        while t < t_max {
            let steps = (chunk / dt).ceil() as usize;
            let h = C64::new(chunk / steps as f64, 0.0);
            for _ in 0..steps {
                let k1 = self.apply(&rho);
                let k2 = self.apply(&(&rho + &k1.mapv(|z| z * h * 0.5)));
                let k3 = self.apply(&(&rho + &k2.mapv(|z| z * h * 0.5)));
                let k4 = self.apply(&(&rho + &k3.mapv(|z| z * h)));
                rho = &rho
                    + &(k1 + k2.mapv(|z| z * 2.0) + k3.mapv(|z| z * 2.0) + k4)
                        .mapv(|z| z * h / 6.0);
            }
            t += chunk;
            chunk *= 2.0;
            // guard trace drift and Hermiticity between chunks
            rho = (&rho + &rho.t().mapv(|z| z.conj())).mapv(|z| z * 0.5);
            let tr = rho.diag().sum();
            rho.mapv_inplace(|z| z / tr);
            let res = self.residual(&rho);
            if res <= STEADY_RESIDUAL_TOL {
                return Ok(TruncatedState::new(self.dims.clone(), rho));
            }
        }
        Err(FockError::NoConvergence { residual: self.residual(&rho), t_final: t })
    }

    /// Integrate ρ̇ = L(ρ) from `rho0` for time `t` with fixed step count.
    pub fn evolve(&self, rho0: &CMat, t: f64, steps: usize) -> TruncatedState {
        let h = C64::new(t / steps as f64, 0.0);
        let mut rho = rho0.clone();
        for _ in 0..steps {
            let k1 = self.apply(&rho);
            let k2 = self.apply(&(&rho + &k1.mapv(|z| z * h * 0.5)));
            let k3 = self.apply(&(&rho + &k2.mapv(|z| z * h * 0.5)));
            let k4 = self.apply(&(&rho + &k3.mapv(|z| z * h)));
            rho = &rho
                + &(k1 + k2.mapv(|z| z * 2.0) + k3.mapv(|z| z * 2.0) + k4).mapv(|z| z * h / 6.0);
        }
        TruncatedState::new(self.dims.clone(), rho)
    }
}
