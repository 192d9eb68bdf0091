//! Plane-wave spinors and the ladder-operator algebra.

use nalgebra::{DMatrix, DVector, Matrix4, Vector4};
use num_complex::Complex64;
use serde::Serialize;

use super::delta::{energy, lattice_momentum};
use super::geometry::{site_coords, site_index};
use super::numeric::{b_operator, build_dirac_model, equal_time_gdb, max_abs, quantize};
use super::{LatticeError, LatticeModel};

type C4 = Matrix4<Complex64>;
type V4 = Vector4<Complex64>;

const CONDITION_LIMIT: f64 = 1e8;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[derive(Debug, Clone)]
pub struct ModeSpinors {
    /// Momentum index, laid out like a site index.
    pub momentum: usize,
    pub energy: f64,
    pub p_tilde: Vec<f64>,
    pub u: [V4; 2],
    pub v: [V4; 2],
    /// Dimension of the kernels of `p̸ − m` and `p̸ + m`.
    pub nullity: (usize, usize),
    /// `max |(p̸ − m)u|, |(p̸ + m)v|`.
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct ModeBasis {
    pub modes: Vec<ModeSpinors>,
    /// `max |u†(p,σ)v(−p,σ′)|`.
    pub orthogonality_residual: f64,
    /// `max |u†u − 2Eδ|, |v†v − 2Eδ|`.
    pub normalization_residual: f64,
    /// Condition number of the plane-wave matrix inverted by the ladder formulas.
    pub condition_number: f64,
}

fn slash(model: &LatticeModel, e: f64, p: &[f64]) -> C4 {
    let g = &model.gammas.gamma;
    let mut s = g[0] * c(e, 0.0);
    for (j, q) in p.iter().enumerate() {
        s -= g[j + 1] * c(*q, 0.0);
    }
    s
}

fn nullity(m: &C4) -> usize {
    let sv = m.svd(false, false).singular_values;
    let top = sv.max().max(1.0);
    sv.iter().filter(|s| **s < 1e-10 * top).count()
}

/// Orthonormalizes two columns and scales them to norm² `2E`.
fn gram_schmidt(a: V4, b: V4, e: f64) -> [V4; 2] {
    let q1 = a.normalize();
    let b = b - q1 * q1.dotc(&b);
    let q2 = b.normalize();
    let k = c((2.0 * e).sqrt(), 0.0);
    [q1 * k, q2 * k]
}

fn negate_momentum(model: &LatticeModel, p: usize) -> usize {
    let n = model.sites;
    let coords: Vec<usize> = site_coords(model, p).iter().map(|&k| (n - k) % n).collect();
    site_index(model, &coords)
}

pub fn mode_expansion(model: &LatticeModel) -> Result<ModeBasis, LatticeError> {
    if model.mass == 0.0 {
        return Err(LatticeError::Unsupported(
            "mode expansion needs m > 0 (massless zero modes are degenerate)".into(),
        ));
    }
    let m = model.mass;
    let mut modes = Vec::new();
    for p in 0..model.site_count() {
        let e = energy(model, p);
        let pt = lattice_momentum(model, p);
        let s = slash(model, e, &pt);
        let id = C4::identity() * c(m, 0.0);
        let (minus, plus) = (s - id, s + id);
        let u = gram_schmidt(plus.column(0).into(), plus.column(1).into(), e);
        let v = gram_schmidt(minus.column(2).into(), minus.column(3).into(), e);
        let residual = u
            .iter()
            .map(|x| (minus * x).norm())
            .chain(v.iter().map(|x| (plus * x).norm()))
            .fold(0.0, f64::max);
        modes.push(ModeSpinors {
            momentum: p,
            energy: e,
            p_tilde: pt,
            u,
            v,
            nullity: (nullity(&minus), nullity(&plus)),
            residual,
        });
    }

    let mut orthogonality_residual: f64 = 0.0;
    let mut normalization_residual: f64 = 0.0;
    for mode in &modes {
        let opposite = &modes[negate_momentum(model, mode.momentum)];
        for a in 0..2 {
            for b in 0..2 {
                orthogonality_residual =
                    orthogonality_residual.max(mode.u[a].dotc(&opposite.v[b]).norm());
                let want = if a == b { 2.0 * mode.energy } else { 0.0 };
                normalization_residual = normalization_residual
                    .max((mode.u[a].dotc(&mode.u[b]) - want).norm())
                    .max((mode.v[a].dotc(&mode.v[b]) - want).norm());
            }
        }
    }

    let condition_number = plane_wave_matrix(model, &modes)
        .svd(false, false)
        .singular_values
        .as_slice()
        .iter()
        .fold((f64::INFINITY, 0.0_f64), |(lo, hi), s| {
            (lo.min(*s), hi.max(*s))
        });
    let condition_number = condition_number.1 / condition_number.0;
    if !(condition_number < CONDITION_LIMIT) {
        return Err(LatticeError::IllConditioned {
            condition: condition_number,
            limit: CONDITION_LIMIT,
        });
    }
    Ok(ModeBasis {
        modes,
        orthogonality_residual,
        normalization_residual,
        condition_number,
    })
}

/// `e^{ipx}u(p,σ)` and `e^{−ipx}v(p,σ)` as columns over `site * 4 + spinor`.
fn wave(model: &LatticeModel, p: usize, spinor: &V4, sign: f64) -> DVector<Complex64> {
    let s = model.site_count();
    let pc = site_coords(model, p);
    DVector::from_fn(4 * s, |k, _| {
        let x = site_coords(model, k / 4);
        let dot: usize = pc.iter().zip(&x).map(|(a, b)| a * b).sum();
        let theta = 2.0 * std::f64::consts::PI * (dot % model.sites) as f64 / model.sites as f64;
        spinor[k % 4] * c(0.0, sign * theta).exp()
    })
}

fn plane_wave_matrix(model: &LatticeModel, modes: &[ModeSpinors]) -> DMatrix<Complex64> {
    let cols: Vec<DVector<Complex64>> = modes
        .iter()
        .flat_map(|m| {
            [
                wave(model, m.momentum, &m.u[0], 1.0),
                wave(model, m.momentum, &m.u[1], 1.0),
            ]
            .into_iter()
            .chain([
                wave(model, m.momentum, &m.v[0], -1.0),
                wave(model, m.momentum, &m.v[1], -1.0),
            ])
        })
        .collect();
    DMatrix::from_columns(&cols)
}

#[derive(Debug, Clone, Serialize)]
pub struct LadderReport {
    pub operators: usize,
    /// `max |{a,a†}_diag / (2E N^d a^d) − 1|` and likewise for `b`.
    pub diagonal_relative_error: f64,
    /// Largest off-diagonal entry of `{a_i, a_j†}` and `{b_i, b_j†}`.
    pub off_diagonal_max: f64,
    /// Largest entry of `{a,a}`, `{b,b}`, `{a,b}`, `{a,b†}`.
    pub vanishing_max: f64,
    pub condition_number: f64,
    /// `(momentum, energy, {a,a†} diagonal)` for each mode, first spin state.
    pub diagonal: Vec<(usize, f64, f64)>,
}

/// Ladder operators from the inversion formulas
/// `a_σ(p) = (a^d/2E) u† Σ_x e^{−ipx}(E + i∂_t)ψ` and
/// `b†_σ(p) = (a^d/2E) v† Σ_x e^{ipx}(E − i∂_t)ψ`, with `∂_tψ = 𝓑ψ`,
/// contracted against the quantized field kernels.
pub fn ladder_algebra(
    model: &LatticeModel,
    basis: &ModeBasis,
) -> Result<LadderReport, LatticeError> {
    let n = model.components();
    let ad = model.measure();
    let b = b_operator(model);
    let id = DMatrix::<Complex64>::identity(n, n);
    let kernels = equal_time_gdb(&build_dirac_model(model))?;
    let psi_psibar = quantize(&kernels[8]).matrix;
    let psi_psi = quantize(&kernels[0]).matrix;
    let g0 = DMatrix::identity(model.site_count(), model.site_count())
        .kronecker(&model.gammas.dyn_gamma(0));
    // {ψ_k, ψ†_k′} and {ψ_k, ψ_k′}
    let q = psi_psibar * g0;
    let pp = psi_psi;

    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    let mut expected = Vec::new();
    for mode in &basis.modes {
        let e = mode.energy;
        let k = c(ad / (2.0 * e), 0.0);
        let fwd = &id * c(e, 0.0) + &b * c(0.0, 1.0);
        let bwd = &id * c(e, 0.0) - &b * c(0.0, 1.0);
        for sigma in 0..2 {
            alpha.push(wave(model, mode.momentum, &mode.u[sigma], 1.0).adjoint() * &fwd * k);
            beta.push(wave(model, mode.momentum, &mode.v[sigma], -1.0).adjoint() * &bwd * k);
            expected.push(2.0 * e * model.site_count() as f64 * ad);
        }
    }
    let stack = |rows: &[nalgebra::RowDVector<Complex64>]| DMatrix::from_rows(rows);
    let (al, be) = (stack(&alpha), stack(&beta));

    let aad = &al * &q * al.adjoint();
    let bbd = (&be * &q * be.adjoint()).transpose();
    let ab = &al * &q * be.adjoint();
    let aa = &al * &pp * al.transpose();
    let abd = &al * &pp * be.transpose();
    let bb = (&be * &pp * be.transpose()).map(|z| z.conj());

    let ops = alpha.len();
    let mut diagonal_relative_error: f64 = 0.0;
    let mut off_diagonal_max: f64 = 0.0;
    for i in 0..ops {
        for j in 0..ops {
            if i == j {
                for m in [&aad, &bbd] {
                    diagonal_relative_error =
                        diagonal_relative_error.max((m[(i, i)] / expected[i] - 1.0).norm());
                }
            } else {
                off_diagonal_max = off_diagonal_max
                    .max(aad[(i, j)].norm())
                    .max(bbd[(i, j)].norm());
            }
        }
    }
    let vanishing_max = [&ab, &aa, &abd, &bb]
        .iter()
        .map(|m| max_abs(m))
        .fold(0.0, f64::max);
    let diagonal = basis
        .modes
        .iter()
        .enumerate()
        .map(|(k, m)| (m.momentum, m.energy, aad[(2 * k, 2 * k)].re))
        .collect();
    Ok(LadderReport {
        operators: 2 * ops,
        diagonal_relative_error,
        off_diagonal_max,
        vanishing_max,
        condition_number: basis.condition_number,
        diagonal,
    })
}
