//! LU factorization of complex banded matrices with partial pivoting, in
//! LAPACK band storage: entry A(i, j) lives at AB[kl + ku + i − j, j], with
//! `kl` extra superdiagonal rows reserved for pivoting fill-in. Dense LU on
//! the vectorized single-mode superoperator (d² × d² with bandwidth ~2d)
//! would be orders of magnitude more work than the band algorithm.

use ndarray::Array2;
use num_complex::Complex64 as C64;

#[derive(Debug)]
pub struct BandedLu {
    n: usize,
    kl: usize,
    ku: usize,
    ab: Array2<C64>,
    ipiv: Vec<usize>,
}

/// Assembly buffer for a banded matrix before factorization.
pub struct BandedMatrix {
    n: usize,
    kl: usize,
    ku: usize,
    ab: Array2<C64>,
}

impl BandedMatrix {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        Self { n, kl, ku, ab: Array2::zeros((2 * kl + ku + 1, n)) }
    }

    /// Add `value` at (row, col); the position must be inside the band.
    pub fn add(&mut self, row: usize, col: usize, value: C64) {
        debug_assert!(row < self.n && col < self.n);
        debug_assert!(
            col + self.kl >= row && row + self.ku >= col,
            "entry ({row},{col}) outside band (kl={}, ku={})",
            self.kl,
            self.ku
        );
        self.ab[[self.kl + self.ku + row - col, col]] += value;
    }

    pub fn factorize(self) -> Result<BandedLu, String> {
        let (n, kl, ku) = (self.n, self.kl, self.ku);
        let mut ab = self.ab;
        let mut ipiv = vec![0usize; n];
        let band_rows = 2 * kl + ku;

        for j in 0..n {
            let km = kl.min(n - 1 - j);
            // pivot among A(j..=j+km, j), stored at rows kl+ku .. kl+ku+km
            let mut p = 0usize;
            let mut best = ab[[kl + ku, j]].norm();
            for i in 1..=km {
                let v = ab[[kl + ku + i, j]].norm();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            ipiv[j] = j + p;
            let pivot = ab[[kl + ku + p, j]];
            if pivot.norm() == 0.0 {
                return Err(format!("exactly singular at column {j}"));
            }
            if p > 0 {
                // swap rows j and j+p across every column they share
                for c in j..=(j + ku + kl).min(n - 1) {
                    let r1 = kl + ku + j - c;
                    let r2 = r1 + p;
                    if r2 <= band_rows {
                        ab.swap([r1, c], [r2, c]);
                    }
                }
            }
            let pivot = ab[[kl + ku, j]];
            for i in 1..=km {
                let m = ab[[kl + ku + i, j]] / pivot;
                ab[[kl + ku + i, j]] = m;
            }
            for c in (j + 1)..=(j + ku + kl).min(n - 1) {
                let ajc = ab[[kl + ku + j - c, c]];
                if ajc.norm() == 0.0 {
                    continue;
                }
                for i in 1..=km {
                    let m = ab[[kl + ku + i, j]];
                    ab[[kl + ku + j + i - c, c]] -= m * ajc;
                }
            }
        }
        Ok(BandedLu { n, kl, ku, ab, ipiv })
    }
}

impl BandedLu {
    /// Solve Ax = b in place.
    pub fn solve(&self, b: &mut [C64]) {
        let (n, kl, ku) = (self.n, self.kl, self.ku);
        assert_eq!(b.len(), n);
        // forward: apply P and L
        for j in 0..n {
            if self.ipiv[j] != j {
                b.swap(j, self.ipiv[j]);
            }
            let bj = b[j];
            if bj.norm() == 0.0 {
                continue;
            }
            for i in 1..=kl.min(n - 1 - j) {
                let m = self.ab[[kl + ku + i, j]];
                b[j + i] -= m * bj;
            }
        }
        // backward: U has bandwidth ku + kl after pivoting
        for j in (0..n).rev() {
            let x = b[j] / self.ab[[kl + ku, j]];
            b[j] = x;
            if x.norm() == 0.0 {
                continue;
            }
            let lo = j.saturating_sub(ku + kl);
            for i in lo..j {
                let u = self.ab[[kl + ku + i - j, j]];
                b[i] -= u * x;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::Array1;
    use ndarray_linalg::Solve;
    use rand::Rng;
    use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};

    #[test]
    fn matches_dense_solver_on_random_band_systems() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &(n, kl, ku) in &[(12usize, 2usize, 3usize), (40, 5, 5), (81, 9, 9)] {
            let mut banded = BandedMatrix::zeros(n, kl, ku);
            let mut dense = Array2::<C64>::zeros((n, n));
            for i in 0..n {
                for j in i.saturating_sub(kl)..(i + ku + 1).min(n) {
                    let v = C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
                    banded.add(i, j, v);
                    dense[[i, j]] = v;
                }
                dense[[i, i]] += C64::new(2.0, 0.0); // keep well conditioned
                banded.add(i, i, C64::new(2.0, 0.0));
            }
            let rhs: Array1<C64> = Array1::from_iter(
                (0..n).map(|_| C64::new(rng.random::<f64>(), rng.random::<f64>())),
            );
            let expected = dense.solve(&rhs).unwrap();
            let lu = banded.factorize().unwrap();
            let mut x = rhs.to_vec();
            lu.solve(&mut x);
            for (a, b) in x.iter().zip(expected.iter()) {
                assert!((a - b).norm() < 1e-9, "banded vs dense mismatch");
            }
        }
    }

    #[test]
    fn singular_matrix_reported() {
        let banded = BandedMatrix::zeros(3, 1, 1);
        assert!(banded.factorize().is_err());
    }
}
