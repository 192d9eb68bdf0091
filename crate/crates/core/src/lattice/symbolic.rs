//! Exact route: the lattice Lagrangian fed through the constraint engine.

use num_complex::Complex64;
use serde::Serialize;

use crate::bracket::{gpb, Bracket};
use crate::coeff::Coeff;
use crate::constraints::{analyze, Analysis, BracketVariant, ModelBuilder, Stage};
use crate::grassmann::{Generator, Poly};
use crate::linalg::ExactMatrix;

use super::gamma::GammaSet;
use super::geometry::difference_exact;
use super::kernel::BracketKernel;
use super::numeric::{Field, EQUAL_TIME_PAIRS};
use super::{LatticeError, LatticeModel};

/// Largest lattice handled exactly (sites in total).
pub const MAX_SYMBOLIC_SITES: usize = 8;

fn gamma(a: usize) -> ExactMatrix {
    let g = GammaSet::exact(a);
    ExactMatrix::from_fn(4, 4, |r, c| g[r][c].clone())
}

fn ci(re: (i64, i64), im: (i64, i64)) -> Coeff {
    Coeff::ratio(re.0, re.1) + Coeff::i() * Coeff::ratio(im.0, im.1)
}

/// Exact counterpart of `Σ_j ∂_j ⊗ A_j + 𝟙 ⊗ A_m`.
fn first_order(
    model: &LatticeModel,
    spatial: impl Fn(usize) -> ExactMatrix,
    local: ExactMatrix,
) -> ExactMatrix {
    let s = model.site_count();
    let mut out = ExactMatrix::identity(s).kronecker(&local);
    for j in 0..model.dim {
        out = out.add(&difference_exact(model, j).kronecker(&spatial(j + 1)));
    }
    out
}

fn site_local(model: &LatticeModel, m: &ExactMatrix) -> ExactMatrix {
    ExactMatrix::identity(model.site_count()).kronecker(m)
}

/// `𝓑 = −γ⁰γ^j∂_j − imγ⁰`, exactly.
pub fn b_operator_exact(model: &LatticeModel) -> ExactMatrix {
    let m = model.mass_exact();
    first_order(
        model,
        |j| gamma(0).mul(&gamma(j)).scale(&-Coeff::one()),
        gamma(0).scale(&(-Coeff::i() * m)),
    )
}

fn eom_line(model: &LatticeModel, f: Field) -> ExactMatrix {
    let m = model.mass_exact();
    let neg = -Coeff::one();
    let im = Coeff::i() * m;
    match f {
        Field::Psi => b_operator_exact(model),
        Field::PsiBar => first_order(
            model,
            |j| gamma(j).mul(&gamma(0)).transpose().scale(&neg),
            gamma(0).transpose().scale(&im),
        ),
        Field::Pi => first_order(
            model,
            |j| gamma(0).mul(&gamma(j)).transpose().scale(&neg),
            gamma(0).transpose().scale(&im),
        ),
        Field::PiBar => first_order(
            model,
            |j| gamma(j).mul(&gamma(0)).scale(&neg),
            gamma(0).scale(&-im),
        ),
    }
}

fn apply(m: &ExactMatrix, v: &[Poly]) -> Vec<Poly> {
    (0..m.rows())
        .map(|r| {
            let mut acc = Poly::zero(v[0].universe());
            for (c, p) in v.iter().enumerate() {
                let k = m.get(r, c);
                if !k.is_zero() {
                    acc = acc + p.scale(k);
                }
            }
            acc
        })
        .collect()
}

fn row_apply(v: &[Poly], m: &ExactMatrix) -> Vec<Poly> {
    apply(&m.transpose(), v)
}

/// The lattice Dirac field run through the Dirac–Bergmann pipeline.
#[derive(Debug, Clone)]
pub struct SymbolicDirac {
    pub model: LatticeModel,
    pub analysis: Analysis,
    pub psi: Vec<Generator>,
    pub psibar: Vec<Generator>,
    /// Canonical momenta `p = a^d π`.
    pub p_psi: Vec<Generator>,
    pub p_psibar: Vec<Generator>,
}

/// `L = Σ_x a^d [(i/2)(ψ̄γ⁰ψ̇ − ψ̄̇γ⁰ψ) + iψ̄γ^j∂_jψ − mψ̄ψ]`, analyzed exactly.
pub fn build_symbolic(model: &LatticeModel) -> Result<SymbolicDirac, LatticeError> {
    if model.site_count() > MAX_SYMBOLIC_SITES {
        return Err(LatticeError::Unsupported(format!(
            "symbolic route limited to {MAX_SYMBOLIC_SITES} sites, got {}",
            model.site_count()
        )));
    }
    let n = model.components();
    let mut b = ModelBuilder::new();
    let mut psi = Vec::new();
    let mut psibar = Vec::new();
    for k in 0..n {
        let (s, l) = (k / 4, k % 4);
        psi.push(b.odd_right(&format!("psi[{s},{l}]"))?);
        psibar.push(b.odd_left(&format!("psibar[{s},{l}]"))?);
    }
    let vars = |g: &[Generator]| g.iter().map(|&x| Poly::var(x)).collect::<Vec<_>>();
    let (v_psi, v_bar) = (vars(&psi), vars(&psibar));
    let d_psi: Vec<Poly> = psi.iter().map(|&g| b.velocity(g)).collect();
    let d_bar: Vec<Poly> = psibar.iter().map(|&g| b.velocity(g)).collect();

    let g0 = site_local(model, &gamma(0));
    let half_i = ci((0, 1), (1, 2));
    let kinetic = dot(&v_bar, &apply(&g0, &d_psi)) - dot(&d_bar, &apply(&g0, &v_psi));
    let h_density = dot(&v_bar, &apply(&dirac_kernel(model), &v_psi));
    let lagrangian = (kinetic.scale(&half_i) - h_density).scale(&model.measure_exact());

    let lm = b.build(lagrangian)?;
    let analysis = analyze(&lm)?;
    let sys = &analysis.system;
    let p_psi = psi
        .iter()
        .map(|&g| sys.momentum_of(g).expect("declared"))
        .collect();
    let p_psibar = psibar
        .iter()
        .map(|&g| sys.momentum_of(g).expect("declared"))
        .collect();
    Ok(SymbolicDirac {
        model: model.clone(),
        analysis,
        psi,
        psibar,
        p_psi,
        p_psibar,
    })
}

fn dirac_kernel(model: &LatticeModel) -> ExactMatrix {
    first_order(
        model,
        |j| gamma(j).scale(&-Coeff::i()),
        ExactMatrix::identity(4).scale(&model.mass_exact()),
    )
}

fn dot(a: &[Poly], b: &[Poly]) -> Poly {
    a.iter()
        .zip(b)
        .fold(Poly::zero(a[0].universe()), |acc, (x, y)| acc + x * y)
}

#[derive(Debug, Clone, Serialize)]
pub struct SymbolicEomLine {
    pub field: Field,
    pub flow_exact: bool,
    pub collapse_exact: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SymbolicEom {
    pub lines: Vec<SymbolicEomLine>,
    pub tangency_exact: bool,
    pub dirac_exact: bool,
    pub conjugate_exact: bool,
}

impl SymbolicEom {
    pub fn all_exact(&self) -> bool {
        self.tangency_exact
            && self.dirac_exact
            && self.conjugate_exact
            && self.lines.iter().all(|l| l.flow_exact && l.collapse_exact)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BridgeReport {
    /// Every symbolic bracket of basic fields reduced to a constant.
    pub all_constant: bool,
    pub max_abs_diff: f64,
}

impl SymbolicDirac {
    pub fn pair_count(&self) -> usize {
        self.analysis.system.phase_space.pairs().len()
    }

    pub fn constraint_count(&self) -> usize {
        self.analysis.constraints.len()
    }

    pub fn secondary_count(&self) -> usize {
        self.analysis
            .constraints
            .iter()
            .filter(|c| matches!(c.stage, Stage::Secondary(_)))
            .count()
    }

    /// Field components; momenta carry the density factor `1/a^d`.
    pub fn field(&self, f: Field) -> Vec<Poly> {
        let inv = self.model.measure_exact().inv().expect("positive spacing");
        let gens = match f {
            Field::Psi => &self.psi,
            Field::PsiBar => &self.psibar,
            Field::Pi => &self.p_psi,
            Field::PiBar => &self.p_psibar,
        };
        gens.iter()
            .map(|&g| match f {
                Field::Pi | Field::PiBar => Poly::var(g).scale(&inv),
                _ => Poly::var(g),
            })
            .collect()
    }

    /// `(χ₁, χ₂)` in field form.
    pub fn field_constraints(&self) -> (Vec<Poly>, Vec<Poly>) {
        let g0 = site_local(&self.model, &gamma(0));
        let half_i = ci((0, 1), (1, 2));
        let bar_g0 = row_apply(&self.field(Field::PsiBar), &g0);
        let g0_psi = apply(&g0, &self.field(Field::Psi));
        let chi1 = self
            .field(Field::Pi)
            .iter()
            .zip(&bar_g0)
            .map(|(p, b)| p - b.scale(&half_i))
            .collect();
        let chi2 = self
            .field(Field::PiBar)
            .iter()
            .zip(&g0_psi)
            .map(|(p, b)| p + b.scale(&half_i))
            .collect();
        (chi1, chi2)
    }

    /// `U¹ = 𝓑ψ` and `U² = −∂_jψ̄γ^jγ⁰ + imψ̄γ⁰`.
    pub fn field_multipliers(&self) -> (Vec<Poly>, Vec<Poly>) {
        (
            apply(&eom_line(&self.model, Field::Psi), &self.field(Field::Psi)),
            apply(
                &eom_line(&self.model, Field::PsiBar),
                &self.field(Field::PsiBar),
            ),
        )
    }

    /// The engine's canonical and first-class Hamiltonians coincide with
    /// `Σ a^d ψ̄(−iγ^j∂_j + m)ψ` and `H + Σ a^d(χ₁U¹ + U²χ₂)`.
    pub fn hamiltonians_match(&self) -> bool {
        let ad = self.model.measure_exact();
        let h = dot(
            &self.field(Field::PsiBar),
            &apply(&dirac_kernel(&self.model), &self.field(Field::Psi)),
        )
        .scale(&ad);
        let (chi1, chi2) = self.field_constraints();
        let (u1, u2) = self.field_multipliers();
        let extra = dot(&chi1, &u1) + dot(&u2, &chi2);
        let suite = &self.analysis.suite;
        suite.canonical == h && suite.first_class == h + extra.scale(&ad)
    }

    /// Each particular multiplier equals the field form `U¹` or `U²` after
    /// accounting for how the engine normalized its primary constraint.
    pub fn multipliers_match(&self) -> bool {
        let ad = self.model.measure_exact();
        let (chi1, chi2) = self.field_constraints();
        let (u1, u2) = self.field_multipliers();
        let ms = &self.analysis.multipliers;
        ms.primary.iter().zip(&ms.particular).all(|(phi, u)| {
            let find = |gens: &[Generator]| gens.iter().position(|&g| phi.mentions(g));
            // a^d χ₁U¹ = −U¹·a^dχ₁ for odd factors
            let (chi, want) = if let Some(k) = find(&self.p_psi) {
                (&chi1[k], -&u1[k])
            } else if let Some(k) = find(&self.p_psibar) {
                (&chi2[k], u2[k].clone())
            } else {
                return false;
            };
            let target = chi.scale(&ad);
            let Some(ratio) = ratio_of(phi, &target) else {
                return false;
            };
            u.scale(&ratio) == want
        })
    }

    /// Symbolic Dirac brackets of basic fields against numeric kernels.
    pub fn bridge(&self, numeric: &[BracketKernel]) -> Result<BridgeReport, LatticeError> {
        let gd = self.analysis.dirac_bracket(BracketVariant::Standard)?;
        let mut all_constant = true;
        let mut max_abs_diff: f64 = 0.0;
        for (&(a, b), kernel) in EQUAL_TIME_PAIRS.iter().zip(numeric) {
            let (fa, fb) = (self.field(a), self.field(b));
            for (i, x) in fa.iter().enumerate() {
                for (j, y) in fb.iter().enumerate() {
                    let v = gd
                        .bracket(x, y)
                        .map_err(crate::constraints::ConstraintError::from)?;
                    let value = match v.as_constant() {
                        Some(c) => c.to_c64(),
                        None => {
                            all_constant = false;
                            Complex64::new(f64::NAN, f64::NAN)
                        }
                    };
                    let d = (value - kernel.matrix[(i, j)]).norm();
                    max_abs_diff = if d.is_nan() {
                        f64::INFINITY
                    } else {
                        max_abs_diff.max(d)
                    };
                }
            }
        }
        Ok(BridgeReport {
            all_constant,
            max_abs_diff,
        })
    }

    /// For `n = 1..=n_max`, whether `[⋯[ψ, H′]⋯, H′] = 𝓑ⁿψ` exactly.
    pub fn theorem1(&self, n_max: u32) -> Result<Vec<(u32, bool)>, LatticeError> {
        let ps = &self.analysis.system.phase_space;
        let hp = &self.analysis.suite.first_class;
        let b = b_operator_exact(&self.model);
        let psi = self.field(Field::Psi);
        let mut current = psi.clone();
        let mut power = ExactMatrix::identity(b.rows());
        let mut out = Vec::new();
        for n in 1..=n_max {
            current = current
                .iter()
                .map(|f| gpb(f, hp, ps))
                .collect::<Result<_, _>>()
                .map_err(crate::constraints::ConstraintError::from)?;
            power = b.mul(&power);
            out.push((n, current == apply(&power, &psi)));
        }
        Ok(out)
    }

    pub fn equations_of_motion(&self) -> Result<SymbolicEom, LatticeError> {
        let ps = &self.analysis.system.phase_space;
        let hp = &self.analysis.suite.first_class;
        let reducer = self.analysis.reducer()?;
        let flow = |v: &[Poly]| -> Result<Vec<Poly>, LatticeError> {
            v.iter()
                .map(|f| {
                    gpb(f, hp, ps).map_err(|e| {
                        LatticeError::from(crate::constraints::ConstraintError::from(e))
                    })
                })
                .collect()
        };
        let reduce = |v: &[Poly]| -> Result<Vec<Poly>, LatticeError> {
            v.iter()
                .map(|f| reducer.reduce(f).map_err(LatticeError::from))
                .collect()
        };

        let psi = self.field(Field::Psi);
        let bar = self.field(Field::PsiBar);
        let [psi_dot, bar_dot] = self.dirac_velocities(&psi, &bar)?;
        let g0 = site_local(&self.model, &gamma(0));
        let half_i = ci((0, 1), (1, 2));
        let surface = |f: Field| -> Vec<Poly> {
            match f {
                Field::Psi => psi_dot.clone(),
                Field::PsiBar => bar_dot.clone(),
                Field::Pi => row_apply(&bar_dot, &g0)
                    .iter()
                    .map(|p| p.scale(&half_i))
                    .collect(),
                Field::PiBar => apply(&g0, &psi_dot)
                    .iter()
                    .map(|p| p.scale(&-&half_i))
                    .collect(),
            }
        };

        let mut lines = Vec::new();
        let mut flows = Vec::new();
        for f in Field::ALL {
            let v = self.field(f);
            let got = flow(&v)?;
            let line = apply(&eom_line(&self.model, f), &v);
            let want = surface(f);
            let collapse_exact = reduce(&got)? == want && reduce(&line)? == want;
            lines.push(SymbolicEomLine {
                field: f,
                flow_exact: got == line,
                collapse_exact,
            });
            flows.push(reduce(&got)?);
        }

        let mut tangency_exact = true;
        for chi in self.analysis.constraints.exprs() {
            tangency_exact &= reducer
                .reduce(&gpb(&chi, hp, ps).map_err(crate::constraints::ConstraintError::from)?)?
                .is_zero();
        }
        let [(a0, a_s), (b0, b_s)] = self.dirac_operator();
        let residual = |t: &ExactMatrix, dotv: &[Poly], s: &ExactMatrix, v: &[Poly]| {
            apply(t, dotv)
                .iter()
                .zip(apply(s, v))
                .all(|(x, y)| (x + &y).is_zero())
        };
        let dirac_exact = residual(&a0, &flows[0], &a_s, &psi);
        let conjugate_exact = residual(&b0, &flows[1], &b_s, &bar);
        Ok(SymbolicEom {
            lines,
            tangency_exact,
            dirac_exact,
            conjugate_exact,
        })
    }

    fn dirac_operator(&self) -> [(ExactMatrix, ExactMatrix); 2] {
        let m = self.model.mass_exact();
        let i = Coeff::i();
        let a0 = site_local(&self.model, &gamma(0).scale(&i));
        let a_s = first_order(
            &self.model,
            |j| gamma(j).scale(&i),
            ExactMatrix::identity(4).scale(&-m.clone()),
        );
        let b0 = site_local(&self.model, &gamma(0).transpose().scale(&i));
        let b_s = first_order(
            &self.model,
            |j| gamma(j).transpose().scale(&i),
            ExactMatrix::identity(4).scale(&m),
        );
        [(a0, a_s), (b0, b_s)]
    }

    fn dirac_velocities(&self, psi: &[Poly], bar: &[Poly]) -> Result<[Vec<Poly>; 2], LatticeError> {
        let [(a0, a_s), (b0, b_s)] = self.dirac_operator();
        let solve =
            |t: &ExactMatrix, s: &ExactMatrix, v: &[Poly]| -> Result<Vec<Poly>, LatticeError> {
                let inv = t.inverse().ok_or_else(|| {
                    LatticeError::Singular("time part of the Dirac operator".into())
                })?;
                Ok(apply(&inv.mul(s).scale(&-Coeff::one()), v))
            };
        Ok([solve(&a0, &a_s, psi)?, solve(&b0, &b_s, bar)?])
    }
}

/// `c` with `c·a = b`, if `a` and `b` are proportional.
fn ratio_of(a: &Poly, b: &Poly) -> Option<Coeff> {
    let (m, ca) = a.terms().next()?;
    let c = b.coefficient(m) / ca.clone();
    (a.scale(&c) == *b).then_some(c)
}
