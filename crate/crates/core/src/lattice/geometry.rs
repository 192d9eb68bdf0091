//! Periodic site enumeration and the symmetric difference operator.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::coeff::Coeff;
use crate::linalg::ExactMatrix;

use super::LatticeModel;

/// Integer coordinates of site `s`; axis 0 varies fastest.
pub fn site_coords(model: &LatticeModel, s: usize) -> Vec<usize> {
    let n = model.sites;
    (0..model.dim).map(|j| (s / n.pow(j as u32)) % n).collect()
}

pub fn site_index(model: &LatticeModel, coords: &[usize]) -> usize {
    let n = model.sites;
    coords
        .iter()
        .enumerate()
        .map(|(j, &c)| (c % n) * n.pow(j as u32))
        .sum()
}

/// Site reached from `s` by `step` units along `axis`, with wrap-around.
pub fn shift(model: &LatticeModel, s: usize, axis: usize, step: isize) -> usize {
    let n = model.sites as isize;
    let mut c = site_coords(model, s);
    c[axis] = (((c[axis] as isize + step) % n + n) % n) as usize;
    site_index(model, &c)
}

/// Site of `x − y` (periodic displacement).
pub fn displacement(model: &LatticeModel, x: usize, y: usize) -> usize {
    let n = model.sites;
    let (cx, cy) = (site_coords(model, x), site_coords(model, y));
    let d: Vec<usize> = cx.iter().zip(&cy).map(|(a, b)| (a + n - b) % n).collect();
    site_index(model, &d)
}

/// `(∂_j f)(x) = (f(x + e_j) − f(x − e_j)) / 2a` over sites.
pub fn difference(model: &LatticeModel, axis: usize) -> DMatrix<f64> {
    let s = model.site_count();
    let h = 1.0 / (2.0 * model.spacing);
    let mut d = DMatrix::zeros(s, s);
    for x in 0..s {
        d[(x, shift(model, x, axis, 1))] += h;
        d[(x, shift(model, x, axis, -1))] -= h;
    }
    d
}

pub fn difference_exact(model: &LatticeModel, axis: usize) -> ExactMatrix {
    let s = model.site_count();
    let h = Coeff::one() / (Coeff::from_int(2) * model.spacing_exact());
    let mut d = ExactMatrix::zeros(s, s);
    for x in 0..s {
        let fwd = shift(model, x, axis, 1);
        let v = d.get(x, fwd) + &h;
        d.set(x, fwd, v);
        let bwd = shift(model, x, axis, -1);
        let v = d.get(x, bwd) - &h;
        d.set(x, bwd, v);
    }
    d
}

/// `Σ_j ∂_j ∂_j` over sites.
pub fn laplacian(model: &LatticeModel) -> DMatrix<f64> {
    let s = model.site_count();
    (0..model.dim).fold(DMatrix::zeros(s, s), |acc, j| {
        let d = difference(model, j);
        acc + &d * &d
    })
}

pub fn complexify(m: &DMatrix<f64>) -> DMatrix<Complex64> {
    m.map(|x| Complex64::new(x, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn difference_is_antisymmetric_and_odd() {
        for (dim, n) in [(1, 5), (2, 4), (3, 3)] {
            let m = LatticeModel::new(dim, n, 0.5, 1.0).unwrap();
            for j in 0..dim {
                let d = difference(&m, j);
                assert_eq!(&d + d.transpose(), DMatrix::zeros(d.nrows(), d.ncols()));
                // ∂δ(−x) = −∂δ(x): column of the kernel at the origin
                for x in 0..m.site_count() {
                    let minus = displacement(&m, 0, x);
                    assert_eq!(d[(x, 0)], -d[(minus, 0)]);
                }
            }
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let m = LatticeModel::new(3, 3, 1.0, 1.0).unwrap();
        for s in 0..m.site_count() {
            assert_eq!(site_index(&m, &site_coords(&m, s)), s);
        }
        assert_eq!(shift(&m, 0, 1, -1), site_index(&m, &[0, 2, 0]));
    }

    #[test]
    fn exact_difference_matches_float() {
        let m = LatticeModel::new(1, 4, 0.25, 1.0).unwrap();
        let (d, e) = (difference(&m, 0), difference_exact(&m, 0));
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(e.get(r, c).to_c64().re, d[(r, c)]);
            }
        }
    }
}
