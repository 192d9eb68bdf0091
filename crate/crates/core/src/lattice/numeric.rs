//! Complex-matrix route: canonical structure, constraint matrix, Dirac
//! brackets of the basic fields, flows and the `𝓑` operator.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::geometry::{complexify, difference};
use super::kernel::BracketKernel;
use super::{LatticeError, LatticeModel};

type CMat = DMatrix<Complex64>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The four basic field families; canonical coordinates are ordered
/// `ψ, ψ̄, π, π̄`, each block spanning all spinor-site components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Psi,
    PsiBar,
    Pi,
    PiBar,
}

impl Field {
    pub const ALL: [Field; 4] = [Field::Psi, Field::PsiBar, Field::Pi, Field::PiBar];

    pub fn block(self) -> usize {
        self as usize
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Field::Psi => "psi",
            Field::PsiBar => "psibar",
            Field::Pi => "pi",
            Field::PiBar => "pibar",
        }
    }
}

/// The ten independent equal-time pairs of basic fields.
pub const EQUAL_TIME_PAIRS: [(Field, Field); 10] = [
    (Field::Psi, Field::Psi),
    (Field::Pi, Field::Pi),
    (Field::PsiBar, Field::PsiBar),
    (Field::PiBar, Field::PiBar),
    (Field::Psi, Field::PiBar),
    (Field::PsiBar, Field::Pi),
    (Field::Psi, Field::Pi),
    (Field::PsiBar, Field::PiBar),
    (Field::Psi, Field::PsiBar),
    (Field::Pi, Field::PiBar),
];

fn site_identity(model: &LatticeModel) -> CMat {
    CMat::identity(model.site_count(), model.site_count())
}

fn derivatives(model: &LatticeModel) -> Vec<CMat> {
    (0..model.dim)
        .map(|j| complexify(&difference(model, j)))
        .collect()
}

/// `Σ_j ∂_j ⊗ A_j + 𝟙 ⊗ A_m`, the shape shared by every first-order
/// operator on the lattice.
fn first_order(model: &LatticeModel, spatial: impl Fn(usize) -> CMat, local: CMat) -> CMat {
    let mut out = site_identity(model).kronecker(&local);
    for (j, d) in derivatives(model).iter().enumerate() {
        out += d.kronecker(&spatial(j + 1));
    }
    out
}

/// `𝓑 = −γ⁰γ^j∂_j − imγ⁰` acting on `ψ`.
pub fn b_operator(model: &LatticeModel) -> CMat {
    let g = |a| model.gammas.dyn_gamma(a);
    let m = model.mass;
    first_order(model, |j| -(g(0) * g(j)), g(0) * c(0.0, -m))
}

/// Kernel of `H = Σ a^d ψ̄(−iγ^j∂_j + m)ψ` between `ψ̄` and `ψ`.
fn dirac_kernel(model: &LatticeModel) -> CMat {
    let g = |a| model.gammas.dyn_gamma(a);
    first_order(
        model,
        |j| g(j) * c(0.0, -1.0),
        CMat::identity(4, 4) * c(model.mass, 0.0),
    )
}

/// Rows give `U² = −∂_jψ̄γ^jγ⁰ + imψ̄γ⁰` as linear forms in `ψ̄`.
fn u2_kernel(model: &LatticeModel) -> CMat {
    let g = |a| model.gammas.dyn_gamma(a);
    let m = model.mass;
    first_order(
        model,
        |j| -(g(j) * g(0)).transpose(),
        g(0).transpose() * c(0.0, m),
    )
}

/// Numeric image of the field model: odd canonical coordinates
/// `z = (ψ, ψ̄, π, π̄)` with field momenta `π = p/a^d`.
#[derive(Debug, Clone)]
pub struct DiracLattice {
    pub model: LatticeModel,
    /// `J_ij = [z_i, z_j]_GP`.
    pub poisson: CMat,
    /// Rows of `χ₁` then `χ₂` as linear forms in `z`.
    pub constraints: CMat,
    /// `H = Σ h_ij z_i z_j`.
    pub hamiltonian: CMat,
    /// `H′ = H + Σ_x a^d (χ₁U¹ + U²χ₂)`.
    pub first_class_hamiltonian: CMat,
    pub u1: CMat,
    pub u2: CMat,
}

pub fn build_dirac_model(model: &LatticeModel) -> DiracLattice {
    let n = model.components();
    let ad = model.measure();
    let at = |f: Field, k: usize| f.block() * n + k;
    let g0 = model.gammas.dyn_gamma(0);
    let half_i = c(0.0, 0.5);

    let mut j = CMat::zeros(4 * n, 4 * n);
    for k in 0..n {
        for (a, b, v) in [
            (Field::Psi, Field::Pi, 1.0),
            (Field::PsiBar, Field::PiBar, -1.0),
        ] {
            j[(at(a, k), at(b, k))] = c(v / ad, 0.0);
            j[(at(b, k), at(a, k))] = c(v / ad, 0.0);
        }
    }

    let mut x = CMat::zeros(2 * n, 4 * n);
    for s in 0..model.site_count() {
        for l in 0..4 {
            let k = 4 * s + l;
            x[(k, at(Field::Pi, k))] = c(1.0, 0.0);
            x[(n + k, at(Field::PiBar, k))] = c(1.0, 0.0);
            for lp in 0..4 {
                x[(k, at(Field::PsiBar, 4 * s + lp))] -= half_i * g0[(lp, l)];
                x[(n + k, at(Field::Psi, 4 * s + lp))] += half_i * g0[(l, lp)];
            }
        }
    }

    let mut h = CMat::zeros(4 * n, 4 * n);
    h.view_mut((n, 0), (n, n))
        .copy_from(&(dirac_kernel(model) * c(ad, 0.0)));

    let u1 = b_operator(model);
    let u2 = u2_kernel(model);
    let mut u1z = CMat::zeros(n, 4 * n);
    u1z.view_mut((0, 0), (n, n)).copy_from(&u1);
    let mut u2z = CMat::zeros(n, 4 * n);
    u2z.view_mut((0, n), (n, n)).copy_from(&u2);
    let chi1 = x.rows(0, n).into_owned();
    let chi2 = x.rows(n, n).into_owned();
    let hp = &h + (chi1.transpose() * &u1z + u2z.transpose() * &chi2) * c(ad, 0.0);

    DiracLattice {
        model: model.clone(),
        poisson: j,
        constraints: x,
        hamiltonian: h,
        first_class_hamiltonian: hp,
        u1,
        u2,
    }
}

impl DiracLattice {
    pub fn components(&self) -> usize {
        self.model.components()
    }

    /// `ż = F z` for `H = Σ h_ij z_i z_j`: `F = J(h − hᵀ)`.
    pub fn flow(&self, h: &CMat) -> CMat {
        &self.poisson * (h - h.transpose())
    }

    pub fn block(&self, m: &CMat, row: Field, col: Field) -> CMat {
        let n = self.components();
        m.view((row.block() * n, col.block() * n), (n, n))
            .into_owned()
    }

    fn rows_of(&self, m: &CMat, f: Field) -> CMat {
        let n = self.components();
        m.rows(f.block() * n, n).into_owned()
    }

    /// Deviation of `(𝟙⊗γ⁰)·K` from its adjoint, `K` the kernel of `H`.
    pub fn hermiticity_residual(&self) -> f64 {
        let n = self.components();
        let k = self.hamiltonian.view((n, 0), (n, n)).into_owned();
        let a = site_identity(&self.model).kronecker(&self.model.gammas.dyn_gamma(0)) * k;
        max_abs(&(&a - a.adjoint()))
    }

    /// `[z_i, z_j]_GD = J − J Xᵀ C⁻¹ X J`.
    pub fn dirac_matrix(&self) -> Result<CMat, LatticeError> {
        let x = &self.constraints;
        let cm = x * &self.poisson * x.transpose();
        let inv = cm
            .try_inverse()
            .ok_or_else(|| LatticeError::Singular("constraint matrix C".into()))?;
        let jx = &self.poisson * x.transpose();
        Ok(&self.poisson - &jx * inv * x * &self.poisson)
    }
}

pub(crate) fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// `C_{αβ} = [χ_α, χ_β]_GP` and its inverse kernel, in 2×2 constraint blocks.
#[derive(Debug, Clone)]
pub struct ConstraintKernels {
    pub blocks: Vec<BracketKernel>,
    pub inverse_blocks: Vec<BracketKernel>,
    /// `max |Σ_x′ a^d C C⁻¹ − δ_lat|·a^d`.
    pub identity_residual: f64,
}

impl ConstraintKernels {
    pub fn block(&self, a: usize, b: usize) -> &BracketKernel {
        &self.blocks[2 * (a - 1) + (b - 1)]
    }

    pub fn inverse_block(&self, a: usize, b: usize) -> &BracketKernel {
        &self.inverse_blocks[2 * (a - 1) + (b - 1)]
    }
}

pub fn constraint_matrix(dl: &DiracLattice) -> Result<ConstraintKernels, LatticeError> {
    let model = &dl.model;
    let n = dl.components();
    let ad = model.measure();
    let x = &dl.constraints;
    let cm = x * &dl.poisson * x.transpose();
    let inv = cm
        .clone()
        .try_inverse()
        .ok_or_else(|| LatticeError::Singular("constraint matrix C".into()))?;
    // Kernel inverse with the lattice measure: Σ_x′ a^d C(x,x′) K(x′,y) = δ_lat(x−y).
    let inv_kernel = inv / c(ad * ad, 0.0);
    let ident = &cm * &inv_kernel * c(ad * ad, 0.0);
    let identity_residual = max_abs(&(ident - CMat::identity(2 * n, 2 * n)));
    let split = |m: &CMat, up: bool| -> Vec<BracketKernel> {
        let mut out = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                let label = if up {
                    format!("Cinv[chi{},chi{}]", a + 1, b + 1)
                } else {
                    format!("C[chi{},chi{}]", a + 1, b + 1)
                };
                out.push(BracketKernel::new(
                    label,
                    model,
                    m.view((a * n, b * n), (n, n)).into_owned(),
                ));
            }
        }
        out
    };
    Ok(ConstraintKernels {
        blocks: split(&cm, false),
        inverse_blocks: split(&inv_kernel, true),
        identity_residual,
    })
}

/// All ten equal-time Dirac-bracket kernels of the basic fields.
pub fn equal_time_gdb(dl: &DiracLattice) -> Result<Vec<BracketKernel>, LatticeError> {
    let jd = dl.dirac_matrix()?;
    Ok(EQUAL_TIME_PAIRS
        .iter()
        .map(|&(a, b)| {
            BracketKernel::new(
                format!("[{},{}]", a.symbol(), b.symbol()),
                &dl.model,
                dl.block(&jd, a, b),
            )
        })
        .collect())
}

/// Reference values of the equal-time table: `{0, ±½, −i, −i/4}` times
/// spinor structure times `δ_lat`.
pub fn expected_equal_time(model: &LatticeModel, a: Field, b: Field) -> CMat {
    let g0 = model.gammas.dyn_gamma(0);
    let one = CMat::identity(4, 4);
    let local = match (a, b) {
        (Field::Psi, Field::Pi) => one * c(0.5, 0.0),
        (Field::PsiBar, Field::PiBar) => one * c(-0.5, 0.0),
        (Field::Psi, Field::PsiBar) => g0 * c(0.0, -1.0),
        (Field::Pi, Field::PiBar) => g0 * c(0.0, -0.25),
        _ => CMat::zeros(4, 4),
    };
    site_identity(model).kronecker(&local) / c(model.measure(), 0.0)
}

/// Anticommutator kernel `{F̂, Ĝ} = i[F, G]_GD`.
pub fn quantize(kernel: &BracketKernel) -> BracketKernel {
    let label = kernel.label.replacen('[', "{", 1).replacen(']', "}", 1);
    kernel.scale(c(0.0, 1.0)).relabel(label)
}

#[derive(Debug, Clone, Serialize)]
pub struct Theorem1Report {
    /// `(n, max|Fⁿ − 𝓑ⁿ| / max(1, max|𝓑ⁿ|))` on the `ψ` rows.
    pub orders: Vec<(usize, f64)>,
    pub max_residual: f64,
}

/// Compares the `ψ` rows of the n-th power of the `H′` flow with `𝓑ⁿ`.
pub fn theorem1_numeric(dl: &DiracLattice, n_max: usize) -> Theorem1Report {
    let n = dl.components();
    let f = dl.flow(&dl.first_class_hamiltonian);
    let b = b_operator(&dl.model);
    let mut rows = CMat::identity(n, 4 * n);
    let mut bn = CMat::identity(n, n);
    let mut orders = Vec::new();
    for order in 1..=n_max {
        rows = &rows * &f;
        bn = &b * &bn;
        let mut want = CMat::zeros(n, 4 * n);
        want.view_mut((0, 0), (n, n)).copy_from(&bn);
        let scale = max_abs(&bn).max(1.0);
        orders.push((order, max_abs(&(&rows - want)) / scale));
    }
    let max_residual = orders.iter().fold(0.0_f64, |m, &(_, r)| m.max(r));
    Theorem1Report {
        orders,
        max_residual,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EomLine {
    pub field: Field,
    pub formula: &'static str,
    /// Hamilton flow of `H′` against the displayed formula, strongly.
    pub flow_residual: f64,
    /// The same line on the constraint surface against the Dirac equation.
    pub collapse_residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EomReport {
    pub lines: Vec<EomLine>,
    /// `χ̇` on the constraint surface.
    pub tangency_residual: f64,
    /// `(iγ^a∂_a − m)ψ` along the flow.
    pub dirac_residual: f64,
    /// `ψ̄(iγ^a∂⃖_a + m)` along the flow.
    pub conjugate_residual: f64,
}

impl EomReport {
    pub fn max_residual(&self) -> f64 {
        self.lines
            .iter()
            .flat_map(|l| [l.flow_residual, l.collapse_residual])
            .chain([
                self.tangency_residual,
                self.dirac_residual,
                self.conjugate_residual,
            ])
            .fold(0.0, f64::max)
    }
}

pub(crate) const EOM_FORMULAS: [(Field, &str); 4] = [
    (Field::Psi, "psi' = -g0 gj dj psi - i m g0 psi"),
    (Field::PsiBar, "psibar' = -(dj psibar gj - i m psibar) g0"),
    (Field::Pi, "pi' = -dj pi g0 gj + i m pi g0"),
    (Field::PiBar, "pibar' = -gj g0 dj pibar - i m g0 pibar"),
];

/// Right-hand side of each equation of motion as a matrix on its own field.
pub(crate) fn eom_line_matrix(model: &LatticeModel, f: Field) -> CMat {
    let g = |a| model.gammas.dyn_gamma(a);
    let m = model.mass;
    match f {
        Field::Psi => first_order(model, |j| -(g(0) * g(j)), g(0) * c(0.0, -m)),
        Field::PsiBar => first_order(
            model,
            |j| -(g(j) * g(0)).transpose(),
            g(0).transpose() * c(0.0, m),
        ),
        Field::Pi => first_order(
            model,
            |j| -(g(0) * g(j)).transpose(),
            g(0).transpose() * c(0.0, m),
        ),
        Field::PiBar => first_order(model, |j| -(g(j) * g(0)), g(0) * c(0.0, -m)),
    }
}

/// Embedding of the constraint surface, parametrized by `(ψ, ψ̄)`.
pub(crate) fn surface_embedding(model: &LatticeModel) -> CMat {
    let n = model.components();
    let g0 = model.gammas.dyn_gamma(0);
    let id = site_identity(model);
    let mut e = CMat::zeros(4 * n, 2 * n);
    e.view_mut((0, 0), (n, n)).fill_with_identity();
    e.view_mut((n, n), (n, n)).fill_with_identity();
    e.view_mut((2 * n, n), (n, n))
        .copy_from(&(id.kronecker(&g0.transpose()) * c(0.0, 0.5)));
    e.view_mut((3 * n, 0), (n, n))
        .copy_from(&(id.kronecker(&g0) * c(0.0, -0.5)));
    e
}

/// `(iγ⁰∂_t + iγ^j∂_j − m)ψ = 0` as `A₀ψ̇ + A_s ψ = 0`, and the conjugate
/// `ψ̄̇(iγ⁰) + ∂_jψ̄(iγ^j) + mψ̄ = 0` in column form.
pub(crate) fn dirac_equation(model: &LatticeModel) -> [(CMat, CMat); 2] {
    let g = |a| model.gammas.dyn_gamma(a);
    let id = site_identity(model);
    let m = model.mass;
    let a0 = id.kronecker(&(g(0) * c(0.0, 1.0)));
    let a_s = first_order(
        model,
        |j| g(j) * c(0.0, 1.0),
        CMat::identity(4, 4) * c(-m, 0.0),
    );
    let b0 = id.kronecker(&(g(0).transpose() * c(0.0, 1.0)));
    let b_s = first_order(
        model,
        |j| g(j).transpose() * c(0.0, 1.0),
        CMat::identity(4, 4) * c(m, 0.0),
    );
    [(a0, a_s), (b0, b_s)]
}

/// Velocities `(ψ̇, ψ̄̇)` solved from the Dirac equation and its conjugate.
pub(crate) fn dirac_velocities(model: &LatticeModel) -> Result<CMat, LatticeError> {
    let n = model.components();
    let mut v = CMat::zeros(2 * n, 2 * n);
    for (k, (t, s)) in dirac_equation(model).into_iter().enumerate() {
        let inv = t
            .try_inverse()
            .ok_or_else(|| LatticeError::Singular("time part of the Dirac operator".into()))?;
        v.view_mut((k * n, k * n), (n, n)).copy_from(&(-(inv * s)));
    }
    Ok(v)
}

pub fn equations_of_motion_check(dl: &DiracLattice) -> Result<EomReport, LatticeError> {
    let model = &dl.model;
    let n = dl.components();
    let f = dl.flow(&dl.first_class_hamiltonian);
    let e = surface_embedding(model);
    let ydot = dirac_velocities(model)?;
    let on_surface = &e * &ydot;
    let flow_on_surface = &f * &e;

    let mut lines = Vec::new();
    for (field, formula) in EOM_FORMULAS {
        let mut line = CMat::zeros(n, 4 * n);
        line.view_mut((0, field.block() * n), (n, n))
            .copy_from(&eom_line_matrix(model, field));
        let flow_residual = max_abs(&(dl.rows_of(&f, field) - &line));
        let want = dl.rows_of(&on_surface, field);
        let collapse_residual = max_abs(&(&line * &e - &want))
            .max(max_abs(&(dl.rows_of(&flow_on_surface, field) - &want)));
        lines.push(EomLine {
            field,
            formula,
            flow_residual,
            collapse_residual,
        });
    }

    let tangency_residual = max_abs(&(&dl.constraints * &flow_on_surface));
    let [(a0, a_s), (b0, b_s)] = dirac_equation(model);
    let psi_dot = dl.rows_of(&flow_on_surface, Field::Psi);
    let mut a_full = CMat::zeros(n, 2 * n);
    a_full.view_mut((0, 0), (n, n)).copy_from(&a_s);
    let dirac_residual = max_abs(&(a0 * psi_dot + a_full));
    let bar_dot = dl.rows_of(&flow_on_surface, Field::PsiBar);
    let mut b_full = CMat::zeros(n, 2 * n);
    b_full.view_mut((0, n), (n, n)).copy_from(&b_s);
    let conjugate_residual = max_abs(&(b0 * bar_dot + b_full));

    Ok(EomReport {
        lines,
        tangency_residual,
        dirac_residual,
        conjugate_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::super::geometry::laplacian;
    use super::*;

    fn model(n: usize, m: f64) -> LatticeModel {
        LatticeModel::new(1, n, 0.5, m).unwrap()
    }

    #[test]
    fn b_squared_is_laplacian_minus_mass() {
        for (dim, n) in [(1, 6), (2, 3), (3, 2)] {
            let m = LatticeModel::new(dim, n, 0.5, 1.3).unwrap();
            let b = b_operator(&m);
            let lap = complexify(&laplacian(&m)).kronecker(&CMat::identity(4, 4));
            let want = lap - CMat::identity(m.components(), m.components()) * c(1.69, 0.0);
            assert!(max_abs(&(&b * &b - want)) < 1e-14);
        }
    }

    #[test]
    fn massless_b_kills_constant_spinor() {
        let m = model(4, 0.0);
        let b = b_operator(&m);
        let v = CMat::from_fn(16, 1, |k, _| c((k % 4) as f64 + 1.0, 0.5));
        assert!(max_abs(&(b * v)) < 1e-15);
    }

    #[test]
    fn hamiltonian_is_hermitian() {
        let dl = build_dirac_model(&model(4, 0.0));
        assert!(dl.hermiticity_residual() < 1e-15);
    }

    #[test]
    fn constraint_matrix_and_inverse() {
        let m = model(8, 1.0);
        let dl = build_dirac_model(&m);
        let ck = constraint_matrix(&dl).unwrap();
        assert!(ck.identity_residual < 1e-14);
        assert!(ck.block(1, 1).max_abs() == 0.0 && ck.block(2, 2).max_abs() == 0.0);
        let g0 = m.gammas.dyn_gamma(0);
        for l in 0..4 {
            for lp in 0..4 {
                let want = g0[(lp, l)] * c(0.0, 1.0) / m.measure();
                assert!((ck.block(1, 2).entry(l, 3, lp, 3) - want).norm() < 1e-15);
                let want_inv = g0[(l, lp)] * c(0.0, -1.0) / m.measure();
                assert!((ck.inverse_block(1, 2).entry(l, 3, lp, 3) - want_inv).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn equal_time_table() {
        let m = model(4, 1.0);
        let dl = build_dirac_model(&m);
        for (k, &(a, b)) in equal_time_gdb(&dl)
            .unwrap()
            .iter()
            .zip(EQUAL_TIME_PAIRS.iter())
        {
            assert!(
                k.max_abs_diff(&expected_equal_time(&m, a, b)) < 1e-14,
                "{}",
                k.label
            );
            assert!(k.translation_residual(&m) < 1e-15);
        }
    }

    #[test]
    fn quantized_psi_psibar() {
        let m = model(4, 1.0);
        let k = equal_time_gdb(&build_dirac_model(&m)).unwrap().remove(8);
        let q = quantize(&k);
        assert_eq!(q.label, "{psi,psibar}");
        let want = site_identity(&m).kronecker(&m.gammas.dyn_gamma(0)) / c(m.measure(), 0.0);
        assert!(q.max_abs_diff(&want) < 1e-14);
    }

    #[test]
    fn flows_match_equations_of_motion() {
        let dl = build_dirac_model(&model(6, 0.7));
        let r = equations_of_motion_check(&dl).unwrap();
        assert!(r.max_residual() < 1e-13, "{r:?}");
        let t = theorem1_numeric(&dl, 12);
        assert!(t.max_residual < 1e-12);
    }
}
