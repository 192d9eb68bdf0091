//! Dense matrices over exact complex rationals.

use crate::coeff::Coeff;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Coeff>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Coeff::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for k in 0..n {
            m.set(k, k, Coeff::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Coeff) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Coeff {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Coeff) {
        self.data[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> Self {
        ExactMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        ExactMatrix::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = Coeff::zero();
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                acc += &(a * other.get(k, c));
            }
            acc
        })
    }

    pub fn add(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        ExactMatrix::from_fn(self.rows, self.cols, |r, c| {
            self.get(r, c) + other.get(r, c)
        })
    }

    pub fn scale(&self, k: &Coeff) -> ExactMatrix {
        ExactMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c) * k)
    }

    /// `(self ⊗ other)[(r·p + i, c·q + j)] = self[r,c]·other[i,j]`.
    pub fn kronecker(&self, other: &ExactMatrix) -> ExactMatrix {
        let (p, q) = (other.rows, other.cols);
        ExactMatrix::from_fn(self.rows * p, self.cols * q, |r, c| {
            self.get(r / p, c / q) * other.get(r % p, c % q)
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Coeff::is_zero)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv().expect("nonzero pivot");
            for c in 0..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in 0..m.cols {
                    let v = m.get(r, c) - &(&factor * m.get(row, c));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self · x = 0}`, one vector per free column.
    pub fn null_space(&self) -> Vec<Vec<Coeff>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Coeff::zero(); self.cols];
                v[f] = Coeff::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, f);
                }
                v
            })
            .collect()
    }

    /// Basis of `{y : yᵀ · self = 0}`.
    pub fn left_null_space(&self) -> Vec<Vec<Coeff>> {
        self.transpose().null_space()
    }

    pub fn inverse(&self) -> Option<ExactMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = ExactMatrix::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                Coeff::one()
            } else {
                Coeff::zero()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots.last().is_some_and(|&p| p >= n) {
            return None;
        }
        Some(ExactMatrix::from_fn(n, n, |r, c| red.get(r, c + n).clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_fn(rows.len(), rows[0].len(), |r, c| {
            Coeff::from_int(rows[r][c])
        })
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1], &[5, 3]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), ExactMatrix::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert_eq!(
            ExactMatrix::zeros(0, 0).inverse(),
            Some(ExactMatrix::zeros(0, 0))
        );
    }

    #[test]
    fn null_spaces() {
        let a = m(&[&[1, 0, 0], &[0, 0, 0]]);
        let ns = a.null_space();
        assert_eq!(ns.len(), 2);
        let left = a.left_null_space();
        assert_eq!(left, vec![vec![Coeff::zero(), Coeff::one()]]);
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn complex_inverse() {
        let i = Coeff::i();
        let c = ExactMatrix::from_fn(2, 2, |r, c| if r != c { i.clone() } else { Coeff::zero() });
        let inv = c.inverse().unwrap();
        assert_eq!(inv.get(0, 1), &-Coeff::i());
        assert_eq!(inv.get(0, 0), &Coeff::zero());
    }
}
