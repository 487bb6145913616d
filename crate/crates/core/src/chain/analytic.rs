use ndarray::Array2;
use num_complex::Complex64 as C64;

use super::{ChainError, ChainSpec, SqueezedBathSpec};
use crate::gaussian::CovarianceMatrix;

/// Closed-form steady state of the lossless chain (γ_j = 0): the center in a
/// squeezed thermal state with moments ⟨b₀†b₀⟩ = n̄, ⟨b₀b₀⟩ = m̄, and every
/// pair (j, −j) in a two-mode squeezed thermal state whose only nonzero
/// cross-moment is ⟨b_j b_{−j}⟩ = (−1)^j m̄. All correlations between
/// different pairs vanish, independent of η_j and Δ_j.
#[derive(Debug, Clone)]
pub struct AnalyticSteadyState {
    n_half: usize,
    n_bar: f64,
    m_bar: C64,
}

impl AnalyticSteadyState {
    pub fn n_half(&self) -> usize {
        self.n_half
    }

    /// 2×2 quadrature block of the central site.
    pub fn central_block(&self) -> Array2<f64> {
        let mut c = Array2::zeros((2, 2));
        c[[0, 0]] = self.n_bar + 0.5 + self.m_bar.re;
        c[[1, 1]] = self.n_bar + 0.5 - self.m_bar.re;
        c[[0, 1]] = self.m_bar.im;
        c[[1, 0]] = self.m_bar.im;
        c
    }

    /// Cross block between the quadratures of sites +j and −j, carrying the
    /// alternating correlation m_j = (−1)^j m̄.
    pub fn pair_cross_block(&self, j: usize) -> Array2<f64> {
        assert!(j >= 1 && j <= self.n_half);
        let m = if j % 2 == 0 { self.m_bar } else { -self.m_bar };
        let mut k = Array2::zeros((2, 2));
        k[[0, 0]] = m.re;
        k[[1, 1]] = -m.re;
        k[[0, 1]] = m.im;
        k[[1, 0]] = m.im;
        k
    }

    /// 4×4 covariance of the pair (j, −j), modes ordered (+j, −j).
    pub fn pair_block(&self, j: usize) -> Array2<f64> {
        let mut s = Array2::eye(4) * (self.n_bar + 0.5);
        let k = self.pair_cross_block(j);
        for a in 0..2 {
            for b in 0..2 {
                s[[a, 2 + b]] = k[[a, b]];
                s[[2 + b, a]] = k[[a, b]];
            }
        }
        s
    }

    /// Full 2(2N+1)-dimensional covariance, sites ordered −N…N.
    pub fn covariance(&self) -> CovarianceMatrix {
        let n = self.n_half;
        let sites = 2 * n + 1;
        let mut s = Array2::eye(2 * sites) * (self.n_bar + 0.5);
        let c = self.central_block();
        for a in 0..2 {
            for b in 0..2 {
                s[[2 * n + a, 2 * n + b]] = c[[a, b]];
            }
        }
        for j in 1..=n {
            let k = self.pair_cross_block(j);
            let plus = 2 * (n + j);
            let minus = 2 * (n - j);
            for a in 0..2 {
                for b in 0..2 {
                    s[[plus + a, minus + b]] = k[[a, b]];
                    s[[minus + b, plus + a]] = k[[a, b]];
                }
            }
        }
        CovarianceMatrix::new(s).expect("analytic covariance is symmetric by construction")
    }
}

/// Analytic steady state of the lossless chain. Valid only when every γ_j is
/// zero; any dissipative site puts the configuration outside the validity
/// domain of the closed form.
pub fn analytic_steady_state(
    chain: &ChainSpec,
    bath: &SqueezedBathSpec,
) -> Result<AnalyticSteadyState, ChainError> {
    if let Some((s, g)) = chain
        .gamma()
        .iter()
        .enumerate()
        .find(|(_, g)| **g > 0.0)
    {
        return Err(ChainError::OutOfValidityDomain {
            site: s as i32 - chain.n_half() as i32,
            gamma: *g,
        });
    }
    Ok(AnalyticSteadyState {
        n_half: chain.n_half(),
        n_bar: bath.n_bar(),
        m_bar: bath.m_bar(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::LinearChainParams;
    use crate::gaussian::{entanglement_report, log_negativity};
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn fig2a_chain(gamma: f64) -> ChainSpec {
        LinearChainParams { eta: 1.0, delta: -0.4, slope: 0.1 }
            .expand(4, gamma, 0.0)
            .unwrap()
    }

    #[test]
    fn vacuum_bath_gives_vacuum_chain() {
        let chain = fig2a_chain(0.0);
        let bath = SqueezedBathSpec::vacuum(1.0).unwrap();
        let ss = analytic_steady_state(&chain, &bath).unwrap();
        let sigma = ss.covariance();
        let eye_half: Array2<f64> = Array2::eye(18) * 0.5;
        let diff = (sigma.matrix() - &eye_half)
            .iter()
            .fold(0.0_f64, |m, v| m.max(v.abs()));
        assert!(diff < 1e-15);
    }

    #[test]
    fn pair_blocks_alternate_sign() {
        let chain = fig2a_chain(0.0);
        let bath = SqueezedBathSpec::pure(1.0, 2.0).unwrap();
        let ss = analytic_steady_state(&chain, &bath).unwrap();
        let k1 = ss.pair_cross_block(1);
        let k2 = ss.pair_cross_block(2);
        assert_abs_diff_eq!(k1[[0, 0]], -k2[[0, 0]], epsilon = 1e-15);
        assert_abs_diff_eq!(k1[[0, 0]], -(6.0_f64.sqrt()), epsilon = 1e-15);
    }

    #[test]
    fn every_pair_block_carries_the_ideal_entanglement() {
        let chain = fig2a_chain(0.0);
        let bath = SqueezedBathSpec::pure(1.0, 2.0).unwrap();
        let ss = analytic_steady_state(&chain, &bath).unwrap();
        let expected = bath.ideal_pair_log_negativity();
        for j in 1..=4 {
            let block = CovarianceMatrix::new(ss.pair_block(j)).unwrap();
            assert_relative_eq!(log_negativity(&block).unwrap(), expected, max_relative = 1e-12);
        }
        // and nothing else is entangled in the full state
        let report = entanglement_report(&ss.covariance(), &chain.site_labels()).unwrap();
        assert!(report.max_off_pair() < 1e-12);
        for p in report.opposite_pairs() {
            assert_relative_eq!(p.log_negativity, expected, max_relative = 1e-12);
        }
    }

    #[test]
    fn dissipative_chain_is_out_of_domain() {
        let chain = fig2a_chain(0.01);
        let bath = SqueezedBathSpec::pure(1.0, 2.0).unwrap();
        assert!(matches!(
            analytic_steady_state(&chain, &bath),
            Err(ChainError::OutOfValidityDomain { .. })
        ));
    }
}
