//! Direct construction of Gaussian reference states in Fock space.

use num_complex::Complex64 as C64;

use super::operators::{annihilation, creation, identity, mode_op, CMat};

/// Matrix exponential by scaling and squaring with a Taylor kernel; accurate
/// to machine precision for the anti-Hermitian generators used here.
pub fn expm(a: &CMat) -> CMat {
    let n = a.nrows();
    let norm = (0..n)
        .map(|i| a.row(i).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0_f64, f64::max);
    let squarings = if norm > 0.25 { (norm / 0.25).log2().ceil() as u32 } else { 0 };
    let scaled = a.mapv(|z| z / 2.0_f64.powi(squarings as i32));

    // Horner evaluation of Σ_{k≤K} B^k/k!
    const K: usize = 16;
    let mut result: CMat = identity(n);
    for k in (1..=K).rev() {
        result = identity(n) + scaled.dot(&result).mapv(|z| z / k as f64);
    }
    for _ in 0..squarings {
        result = result.dot(&result);
    }
    result
}

/// Thermal state with mean occupation `n`, renormalized over the truncation.
pub fn thermal_state(dim: usize, n: f64) -> CMat {
    let mut rho = CMat::zeros((dim, dim));
    if n <= 0.0 {
        rho[[0, 0]] = C64::new(1.0, 0.0);
        return rho;
    }
    let ratio = n / (n + 1.0);
    let mut w = 1.0;
    let mut total = 0.0;
    for k in 0..dim {
        rho[[k, k]] = C64::new(w, 0.0);
        total += w;
        w *= ratio;
    }
    rho.mapv(|z| z / total)
}

/// Two-mode squeeze operator exp[r(e^{iφ} b₁†b₂† − e^{−iφ} b₁b₂)].
pub fn two_mode_squeeze_op(dims: (usize, usize), r: f64, phase: f64) -> CMat {
    let all = [dims.0, dims.1];
    let bd1 = mode_op(&all, 0, &creation(dims.0));
    let bd2 = mode_op(&all, 1, &creation(dims.1));
    let b1 = mode_op(&all, 0, &annihilation(dims.0));
    let b2 = mode_op(&all, 1, &annihilation(dims.1));
    let up = bd1.dot(&bd2).mapv(|z| z * C64::from_polar(r, phase));
    let down = b1.dot(&b2).mapv(|z| z * C64::from_polar(r, -phase));
    expm(&(up - down))
}

/// Two-mode squeezed thermal state S(ρ_n ⊗ ρ_n)S†: the steady state of the
/// pair (j, −j) in the lossless chain with tanh r = (n̄ − ñ_r)/|m̄| and
/// residual occupancy ñ_r on each transformed mode.
pub fn two_mode_squeezed_thermal(dims: (usize, usize), r: f64, phase: f64, n_each: f64) -> CMat {
    let s = two_mode_squeeze_op(dims, r, phase);
    let s_dag = s.t().mapv(|z| z.conj());
    let product = ndarray::linalg::kron(&thermal_state(dims.0, n_each), &thermal_state(dims.1, n_each));
    s.dot(&product).dot(&s_dag)
}

/// Build from bath parameters (n̄, m̄) directly.
pub fn pair_state_from_bath(dims: (usize, usize), n_bar: f64, m_bar: C64) -> CMat {
    let m_abs = m_bar.norm();
    if m_abs == 0.0 {
        return ndarray::linalg::kron(&thermal_state(dims.0, n_bar), &thermal_state(dims.1, n_bar));
    }
    let two_n1 = 2.0 * n_bar + 1.0;
    let residual = (0.5 * ((two_n1 * two_n1 - 4.0 * m_abs * m_abs).max(0.0).sqrt() - 1.0)).max(0.0);
    let r = ((n_bar - residual) / m_abs).atanh();
    two_mode_squeezed_thermal(dims, r, m_bar.arg(), residual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::TruncatedState;
    use approx::assert_abs_diff_eq;

    #[test]
    fn expm_matches_scalar_exponential() {
        let mut a = CMat::zeros((2, 2));
        a[[0, 0]] = C64::new(0.0, 1.3);
        a[[1, 1]] = C64::new(-0.7, 0.0);
        let e = expm(&a);
        assert!((e[[0, 0]] - C64::from_polar(1.0, 1.3)).norm() < 1e-14);
        assert!((e[[1, 1]] - C64::new((-0.7_f64).exp(), 0.0)).norm() < 1e-14);
    }

    #[test]
    fn expm_of_large_rotation() {
        // exp of a 2x2 real rotation generator scaled past the Taylor radius
        let theta = 7.0;
        let mut a = CMat::zeros((2, 2));
        a[[0, 1]] = C64::new(theta, 0.0);
        a[[1, 0]] = C64::new(-theta, 0.0);
        let e = expm(&a);
        assert!((e[[0, 0]].re - theta.cos()).abs() < 1e-12);
        assert!((e[[0, 1]].re - theta.sin()).abs() < 1e-12);
    }

    #[test]
    fn thermal_state_mean_occupation() {
        let rho = thermal_state(40, 0.8);
        let state = TruncatedState::new(vec![40], rho);
        assert_abs_diff_eq!(state.occupancy(0), 0.8, epsilon = 1e-6);
    }

    #[test]
    fn two_mode_squeezed_vacuum_moments() {
        // n̄ = sinh² r on each mode, ⟨b₁b₂⟩ = e^{iφ} cosh r sinh r
        let r = 0.6585;
        let phase = 0.4;
        let rho = two_mode_squeezed_thermal((18, 18), r, phase, 0.0);
        let state = TruncatedState::new(vec![18, 18], rho);
        let expected_n = r.sinh().powi(2);
        assert_abs_diff_eq!(state.occupancy(0), expected_n, epsilon = 1e-6);
        assert_abs_diff_eq!(state.occupancy(1), expected_n, epsilon = 1e-6);
        let s = state.quadratic_moments();
        let expected_m = C64::from_polar(r.cosh() * r.sinh(), phase);
        assert!((s[[0, 1]] - expected_m).norm() < 1e-6);
        assert!(s[[0, 0]].norm() < 1e-8);
    }
}
