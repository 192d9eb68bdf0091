//! Mode sums: the lattice `Δ` function, the `(∂∂ − m²)^k δ_lat` identity, and both forms of the
//! unequal-time anticommutator kernel.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use super::geometry::{displacement, laplacian, shift, site_coords};
use super::kernel::BracketKernel;
use super::numeric::b_operator;
use super::LatticeModel;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `(cos, sin)` of `2π·k/N` with exact zeros on the real axis.
fn unit_phase(k: usize, n: usize) -> (f64, f64) {
    let k = k % n;
    if k == 0 {
        (1.0, 0.0)
    } else if 2 * k == n {
        (-1.0, 0.0)
    } else {
        let t = 2.0 * PI * k as f64 / n as f64;
        (t.cos(), t.sin())
    }
}

/// `p̃_j = sin(p_j a)/a` for the momentum mode with the same index as site `p`.
pub fn lattice_momentum(model: &LatticeModel, p: usize) -> Vec<f64> {
    site_coords(model, p)
        .iter()
        .map(|&k| unit_phase(k, model.sites).1 / model.spacing)
        .collect()
}

/// `E_p = sqrt(Σ_j p̃_j² + m²)`.
pub fn energy(model: &LatticeModel, p: usize) -> f64 {
    let s: f64 = lattice_momentum(model, p).iter().map(|q| q * q).sum();
    (s + model.mass * model.mass).sqrt()
}

/// `(cos, sin)` of `p·x`.
fn plane_wave(model: &LatticeModel, p: usize, x: usize) -> (f64, f64) {
    let (cp, cx) = (site_coords(model, p), site_coords(model, x));
    let k: usize = cp.iter().zip(&cx).map(|(a, b)| a * b).sum();
    unit_phase(k, model.sites)
}

/// `Δ(t, x)` on all sites, with its analytic time derivatives.
#[derive(Debug, Clone)]
pub struct DeltaFunction {
    pub t: f64,
    pub energies: Vec<f64>,
    model: LatticeModel,
}

pub fn delta_function(model: &LatticeModel, t: f64) -> DeltaFunction {
    let energies = (0..model.site_count()).map(|p| energy(model, p)).collect();
    DeltaFunction {
        t,
        energies,
        model: model.clone(),
    }
}

impl DeltaFunction {
    pub fn e_max(&self) -> f64 {
        self.energies.iter().cloned().fold(0.0, f64::max)
    }

    /// `∂_t^order Δ(t, x) = Σ_p w_p((−iE)ⁿe^{−iEt+ipx} − (iE)ⁿe^{iEt−ipx})`.
    pub fn derivative(&self, order: u32, x: usize) -> Complex64 {
        let m = &self.model;
        let volume = m.site_count() as f64 * m.measure();
        let mut acc = c(0.0, 0.0);
        for (p, &e) in self.energies.iter().enumerate() {
            let (cos, sin) = plane_wave(m, p, x);
            if e == 0.0 {
                // E → 0 limit of w_p(f(−iE) − f(iE)) with f(s) = sⁿe^{st}: −i f′(0).
                let df = match order {
                    0 => self.t,
                    1 => 1.0,
                    _ => 0.0,
                };
                acc += c(0.0, -df) * cos / volume;
                continue;
            }
            let f = |s: Complex64| s.powu(order) * (s * self.t).exp();
            let (a, b) = (f(c(0.0, -e)), f(c(0.0, e)));
            let wave = c(cos, sin);
            acc += (a * wave - b * wave.conj()) / (2.0 * e * volume);
        }
        acc
    }

    pub fn value(&self, x: usize) -> Complex64 {
        self.derivative(0, x)
    }

    pub fn values(&self, order: u32) -> Vec<Complex64> {
        (0..self.model.site_count())
            .map(|x| self.derivative(order, x))
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub k: u32,
    /// `max |(∂∂ − m²)^k δ_lat − iΔ^{(2k+1)}(0)| / max(1, max |lhs|)`.
    pub residual: f64,
    pub lhs_scale: f64,
}

/// `(∂_j∂_j − m²)^k δ_lat = iΔ^{(2k+1)}(0, ·)`.
pub fn verify_lemma(model: &LatticeModel, k: u32) -> LemmaReport {
    let s = model.site_count();
    let op = laplacian(model) - DMatrix::identity(s, s) * (model.mass * model.mass);
    let mut lhs = DVector::zeros(s);
    lhs[0] = 1.0 / model.measure();
    for _ in 0..k {
        lhs = &op * lhs;
    }
    let rhs = delta_function(model, 0.0).values(2 * k + 1);
    let lhs_scale = lhs.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let diff = lhs.iter().zip(&rhs).fold(0.0_f64, |m, (l, r)| {
        m.max((c(*l, 0.0) - c(0.0, 1.0) * r).norm())
    });
    LemmaReport {
        k,
        residual: diff / lhs_scale.max(1.0),
        lhs_scale,
    }
}

/// `Σ_{n≤n_max} (τⁿ/n!)(−i)𝓑ⁿ δ_lat γ⁰` as the kernel of `[ψ(t+τ,x′), ψ̄(t,x)]_GD`.
pub fn series_anticommutator(model: &LatticeModel, tau: f64, n_max: u32) -> BracketKernel {
    let b = b_operator(model);
    let g0 = model.gammas.dyn_gamma(0);
    let s = model.site_count();
    let mut term = DMatrix::identity(s, s).kronecker(&g0) * c(0.0, -1.0 / model.measure());
    let mut sum = term.clone();
    for n in 1..=n_max {
        term = &b * term * c(tau / n as f64, 0.0);
        sum += &term;
    }
    BracketKernel::new("[psi(t+tau),psibar(t)]", model, sum)
}

/// `−i(iγ⁰∂_t + iγ^j∂_j + m)Δ(τ, x′ − x)`.
pub fn closed_form_anticommutator(model: &LatticeModel, tau: f64) -> BracketKernel {
    let delta = delta_function(model, tau);
    let (d0, d1) = (delta.values(0), delta.values(1));
    let g = |a: usize| model.gammas.gamma[a];
    let s = model.site_count();
    let h = 1.0 / (2.0 * model.spacing);
    let mut k = DMatrix::zeros(4 * s, 4 * s);
    for y in 0..s {
        for x in 0..s {
            let r = displacement(model, y, x);
            let mut block = g(0) * (c(0.0, 1.0) * d1[r]);
            for j in 0..model.dim {
                let dj = (d0[shift(model, r, j, 1)] - d0[shift(model, r, j, -1)]) * h;
                block += g(j + 1) * (c(0.0, 1.0) * dj);
            }
            for l in 0..4 {
                block[(l, l)] += d0[r] * model.mass;
            }
            for l in 0..4 {
                for lp in 0..4 {
                    k[(4 * y + l, 4 * x + lp)] = c(0.0, -1.0) * block[(l, lp)];
                }
            }
        }
    }
    BracketKernel::new("[psi(t+tau),psibar(t)]", model, k)
}
