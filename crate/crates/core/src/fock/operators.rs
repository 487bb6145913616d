use ndarray::Array2;
use num_complex::Complex64 as C64;

pub type CMat = Array2<C64>;

/// Annihilation operator on a `dim`-level truncation: ⟨n−1|b|n⟩ = √n.
pub fn annihilation(dim: usize) -> CMat {
    let mut b = CMat::zeros((dim, dim));
    for n in 1..dim {
        b[[n - 1, n]] = C64::new((n as f64).sqrt(), 0.0);
    }
    b
}

pub fn creation(dim: usize) -> CMat {
    annihilation(dim).t().mapv(|z| z.conj())
}

pub fn number(dim: usize) -> CMat {
    CMat::from_diag(&ndarray::Array1::from_iter(
        (0..dim).map(|n| C64::new(n as f64, 0.0)),
    ))
}

pub fn identity(dim: usize) -> CMat {
    CMat::eye(dim)
}

/// Embed a single-mode operator into the tensor product over all modes:
/// I ⊗ … ⊗ op ⊗ … ⊗ I with `op` acting on `mode`.
pub fn mode_op(dims: &[usize], mode: usize, op: &CMat) -> CMat {
    assert!(mode < dims.len());
    assert_eq!(op.nrows(), dims[mode]);
    let mut out = CMat::eye(1);
    for (k, &d) in dims.iter().enumerate() {
        let factor = if k == mode { op.clone() } else { identity(d) };
        out = ndarray::linalg::kron(&out, &factor);
    }
    out
}

/// Bandwidth max|i − j| over the nonzero entries of `m`.
pub fn bandwidth(m: &CMat) -> usize {
    let mut bw = 0usize;
    for ((i, j), v) in m.indexed_iter() {
        if v.norm() > 0.0 {
            bw = bw.max(i.abs_diff(j));
        }
    }
    bw
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutator_is_identity_away_from_the_truncation_edge() {
        let d = 6;
        let b = annihilation(d);
        let bd = creation(d);
        let comm = b.dot(&bd) - bd.dot(&b);
        for i in 0..d - 1 {
            assert!((comm[[i, i]] - C64::new(1.0, 0.0)).norm() < 1e-14);
        }
        // the last diagonal entry is spoiled by the truncation
        assert!((comm[[d - 1, d - 1]] + C64::new(d as f64 - 1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn number_operator_from_ladder_product() {
        let d = 5;
        let n = creation(d).dot(&annihilation(d));
        let diff = &n - &number(d);
        assert!(diff.iter().all(|z| z.norm() < 1e-14));
    }

    #[test]
    fn embedding_acts_on_the_right_factor() {
        let dims = [2, 3];
        let n1 = mode_op(&dims, 1, &number(3));
        // basis ordering (n₀, n₁) row-major: index = n₀·3 + n₁
        for n0 in 0..2 {
            for n1_ in 0..3 {
                let idx = n0 * 3 + n1_;
                assert!((n1[[idx, idx]] - C64::new(n1_ as f64, 0.0)).norm() < 1e-14);
            }
        }
        assert_eq!(bandwidth(&annihilation(4)), 1);
        assert_eq!(bandwidth(&number(4)), 0);
    }
}
