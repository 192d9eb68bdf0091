use nalgebra::{DMatrix, Matrix4};
use num_complex::Complex64;

use crate::coeff::Coeff;

pub type C4 = Matrix4<Complex64>;

/// Dirac-representation gamma matrices with metric `diag(1,−1,−1,−1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaSet {
    pub gamma: [C4; 4],
    pub eta: [f64; 4],
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Entries of `γ^a` as `(row, col, value)` with exact values `±1`, `±i`.
fn gamma_entries(a: usize) -> Vec<(usize, usize, (i64, i64))> {
    match a {
        0 => vec![
            (0, 0, (1, 0)),
            (1, 1, (1, 0)),
            (2, 2, (-1, 0)),
            (3, 3, (-1, 0)),
        ],
        _ => {
            // γ^j = [[0, σ_j], [−σ_j, 0]]
            let sigma: [(usize, usize, (i64, i64)); 2] = match a {
                1 => [(0, 1, (1, 0)), (1, 0, (1, 0))],
                2 => [(0, 1, (0, -1)), (1, 0, (0, 1))],
                _ => [(0, 0, (1, 0)), (1, 1, (-1, 0))],
            };
            let mut out = Vec::new();
            for (r, col, (re, im)) in sigma {
                out.push((r, col + 2, (re, im)));
                out.push((r + 2, col, (-re, -im)));
            }
            out
        }
    }
}

impl GammaSet {
    pub fn dirac() -> Self {
        let gamma = std::array::from_fn(|a| {
            let mut m = C4::zeros();
            for (r, col, (re, im)) in gamma_entries(a) {
                m[(r, col)] = c(re as f64, im as f64);
            }
            m
        });
        GammaSet {
            gamma,
            eta: [1.0, -1.0, -1.0, -1.0],
        }
    }

    /// Exact form of `γ^a` as row-major entries.
    pub fn exact(a: usize) -> [[Coeff; 4]; 4] {
        let mut m: [[Coeff; 4]; 4] =
            std::array::from_fn(|_| std::array::from_fn(|_| Coeff::zero()));
        for (r, col, (re, im)) in gamma_entries(a) {
            m[r][col] = Coeff::from_int(re) + Coeff::i() * Coeff::from_int(im);
        }
        m
    }

    /// Largest deviation from `{γ^a, γ^b} = 2η^{ab}`.
    pub fn clifford_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                let anti = self.gamma[a] * self.gamma[b] + self.gamma[b] * self.gamma[a];
                let want = if a == b {
                    C4::identity() * c(2.0 * self.eta[a], 0.0)
                } else {
                    C4::zeros()
                };
                worst = (anti - want).iter().fold(worst, |m, z| m.max(z.norm()));
            }
        }
        worst
    }

    pub fn dyn_gamma(&self, a: usize) -> DMatrix<Complex64> {
        DMatrix::from_fn(4, 4, |r, col| self.gamma[a][(r, col)])
    }
}

impl Default for GammaSet {
    fn default() -> Self {
        Self::dirac()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clifford_algebra_exact() {
        assert_eq!(GammaSet::dirac().clifford_residual(), 0.0);
    }

    #[test]
    fn exact_matches_numeric() {
        let g = GammaSet::dirac();
        for a in 0..4 {
            let e = GammaSet::exact(a);
            for r in 0..4 {
                for col in 0..4 {
                    assert_eq!(e[r][col].to_c64(), g.gamma[a][(r, col)]);
                }
            }
        }
    }
}
