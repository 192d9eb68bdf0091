//! Named lattice checks with residuals and tolerances, as run by the CLI.

use num_complex::Complex64;
use serde::Serialize;

use super::delta::{
    closed_form_anticommutator, delta_function, series_anticommutator, verify_lemma,
};
use super::modes::{ladder_algebra, mode_expansion};
use super::numeric::{
    build_dirac_model, constraint_matrix, equal_time_gdb, equations_of_motion_check,
    expected_equal_time, quantize, theorem1_numeric, DiracLattice, EQUAL_TIME_PAIRS,
};
use super::symbolic::{build_symbolic, SymbolicDirac};
use super::{LatticeError, LatticeModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Constraints,
    CInverse,
    Eqtime,
    Bridge,
    Quantize,
    Theorem1,
    Lemma,
    Theorem2,
    Eom,
    Modes,
    Ladder,
}

impl Check {
    pub const ALL: [Check; 11] = [
        Check::Constraints,
        Check::CInverse,
        Check::Eqtime,
        Check::Bridge,
        Check::Quantize,
        Check::Theorem1,
        Check::Lemma,
        Check::Theorem2,
        Check::Eom,
        Check::Modes,
        Check::Ladder,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Constraints => "constraints",
            Check::CInverse => "cinverse",
            Check::Eqtime => "eqtime",
            Check::Bridge => "bridge",
            Check::Quantize => "quantize",
            Check::Theorem1 => "theorem1",
            Check::Lemma => "lemma",
            Check::Theorem2 => "theorem2",
            Check::Eom => "eom",
            Check::Modes => "modes",
            Check::Ladder => "ladder",
        }
    }

    pub fn parse(s: &str) -> Option<Check> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        let key = if key == "c-inverse" {
            "cinverse".to_string()
        } else {
            key
        };
        Check::ALL.into_iter().find(|c| c.name() == key)
    }

    fn needs_mass(self) -> bool {
        matches!(self, Check::Modes | Check::Ladder)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Equalities obtained by independent computations.
    pub derived: f64,
    /// Identities that hold by construction up to roundoff.
    pub constructional: f64,
    pub lemma: f64,
    pub theorem1: f64,
    pub eom: f64,
    /// Largest admissible series truncation bound `(τE_max)^{n+1}/(n+1)!`.
    pub series_tail: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            derived: 1e-10,
            constructional: 1e-14,
            lemma: 1e-11,
            theorem1: 1e-12,
            eom: 1e-13,
            series_tail: 1e-12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MetricValue {
    Residual { residual: f64, tolerance: f64 },
    Exact { holds: bool },
    Count { found: usize, expected: usize },
    Info { value: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metric {
    pub name: String,
    pub passed: bool,
    #[serde(flatten)]
    pub value: MetricValue,
}

impl Metric {
    pub fn residual(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Metric {
            name: name.into(),
            passed: residual <= tolerance,
            value: MetricValue::Residual {
                residual,
                tolerance,
            },
        }
    }

    pub fn exact(name: impl Into<String>, holds: bool) -> Self {
        Metric {
            name: name.into(),
            passed: holds,
            value: MetricValue::Exact { holds },
        }
    }

    pub fn count(name: impl Into<String>, found: usize, expected: usize) -> Self {
        Metric {
            name: name.into(),
            passed: found == expected,
            value: MetricValue::Count { found, expected },
        }
    }

    pub fn info(name: impl Into<String>, value: f64) -> Self {
        Metric {
            name: name.into(),
            passed: true,
            value: MetricValue::Info { value },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub check: Check,
    pub passed: bool,
    pub metrics: Vec<Metric>,
}

/// Lattice used by the exact route: the configured one when small, else
/// the two-site chain with the same spacing and mass.
pub fn symbolic_companion(model: &LatticeModel) -> Result<LatticeModel, LatticeError> {
    if model.site_count() <= 4 {
        Ok(model.clone())
    } else {
        LatticeModel::new(1, 2, model.spacing, model.mass)
    }
}

struct Context<'a> {
    model: &'a LatticeModel,
    tol: &'a Tolerances,
    numeric: DiracLattice,
    symbolic: Option<(SymbolicDirac, DiracLattice)>,
}

impl Context<'_> {
    fn symbolic(&mut self) -> Result<&(SymbolicDirac, DiracLattice), LatticeError> {
        if self.symbolic.is_none() {
            let m = symbolic_companion(self.model)?;
            self.symbolic = Some((build_symbolic(&m)?, build_dirac_model(&m)));
        }
        Ok(self.symbolic.as_ref().expect("just built"))
    }
}

fn tag(model: &LatticeModel) -> String {
    format!("d={},N={}", model.dim, model.sites)
}

pub fn run_checks(
    model: &LatticeModel,
    checks: &[Check],
    tol: &Tolerances,
) -> Result<Vec<CheckOutcome>, LatticeError> {
    if model.mass == 0.0 {
        if let Some(c) = checks.iter().find(|c| c.needs_mass()) {
            return Err(LatticeError::Unsupported(format!(
                "check `{}` needs m > 0 (massless zero modes are degenerate)",
                c.name()
            )));
        }
    }
    let mut ctx = Context {
        model,
        tol,
        numeric: build_dirac_model(model),
        symbolic: None,
    };
    let mut out = Vec::new();
    for &check in checks {
        let metrics = run_one(&mut ctx, check)?;
        let passed = metrics.iter().all(|m| m.passed);
        out.push(CheckOutcome {
            check,
            passed,
            metrics,
        });
    }
    Ok(out)
}

fn run_one(ctx: &mut Context<'_>, check: Check) -> Result<Vec<Metric>, LatticeError> {
    let model = ctx.model;
    let tol = *ctx.tol;
    let n = model.components();
    let c = |re, im| Complex64::new(re, im);
    let mut m = Vec::new();
    match check {
        Check::Constraints => {
            m.push(Metric::count(
                "odd canonical pairs",
                ctx.numeric.poisson.nrows() / 2,
                2 * n,
            ));
            m.push(Metric::count(
                "constraints",
                ctx.numeric.constraints.nrows(),
                2 * n,
            ));
            m.push(Metric::residual(
                "H hermitian",
                ctx.numeric.hermiticity_residual(),
                tol.constructional,
            ));
            let (s, _) = ctx.symbolic()?;
            let t = tag(&s.model);
            m.push(Metric::count(
                format!("symbolic pairs ({t})"),
                s.pair_count(),
                s.model.components() * 2,
            ));
            m.push(Metric::count(
                format!("symbolic secondary constraints ({t})"),
                s.secondary_count(),
                0,
            ));
            m.push(Metric::exact(
                format!("engine H and H' equal field forms ({t})"),
                s.hamiltonians_match(),
            ));
            m.push(Metric::exact(
                format!("particular multipliers equal U1, U2 ({t})"),
                s.multipliers_match(),
            ));
        }
        Check::CInverse => {
            let ck = constraint_matrix(&ctx.numeric)?;
            let site =
                nalgebra::DMatrix::<Complex64>::identity(model.site_count(), model.site_count());
            let g0 = model.gammas.dyn_gamma(0);
            let ad = model.measure();
            let want12 = site.kronecker(&(g0.transpose() * c(0.0, 1.0 / ad)));
            let want_inv = site.kronecker(&(&g0 * c(0.0, -1.0 / ad)));
            m.push(Metric::residual(
                "C11 = 0",
                ck.block(1, 1).max_abs(),
                tol.constructional,
            ));
            m.push(Metric::residual(
                "C22 = 0",
                ck.block(2, 2).max_abs(),
                tol.constructional,
            ));
            m.push(Metric::residual(
                "C12 = i g0^T delta",
                ck.block(1, 2).max_abs_diff(&want12),
                tol.constructional,
            ));
            m.push(Metric::residual(
                "Cinv12 = -i g0 delta",
                ck.inverse_block(1, 2).max_abs_diff(&want_inv),
                tol.constructional,
            ));
            m.push(Metric::residual(
                "C Cinv = identity",
                ck.identity_residual,
                tol.constructional,
            ));
        }
        Check::Eqtime => {
            for (k, &(a, b)) in equal_time_gdb(&ctx.numeric)?
                .iter()
                .zip(EQUAL_TIME_PAIRS.iter())
            {
                m.push(Metric::residual(
                    k.label.clone(),
                    k.max_abs_diff(&expected_equal_time(model, a, b)),
                    tol.constructional,
                ));
                m.push(Metric::residual(
                    format!("{} translation invariance", k.label),
                    k.translation_residual(model),
                    tol.constructional,
                ));
            }
        }
        Check::Bridge => {
            let (s, dl) = ctx.symbolic()?;
            let report = s.bridge(&equal_time_gdb(dl)?)?;
            let t = tag(&s.model);
            m.push(Metric::exact(
                format!("symbolic brackets constant ({t})"),
                report.all_constant,
            ));
            m.push(Metric::residual(
                format!("symbolic vs numeric kernels ({t})"),
                report.max_abs_diff,
                tol.constructional,
            ));
        }
        Check::Quantize => {
            let kernels = equal_time_gdb(&ctx.numeric)?;
            let site =
                nalgebra::DMatrix::<Complex64>::identity(model.site_count(), model.site_count());
            let g0 = model.gammas.dyn_gamma(0);
            let ad = model.measure();
            let anti = quantize(&kernels[8]);
            m.push(Metric::residual(
                "{psi,psibar} = g0 delta",
                anti.max_abs_diff(&site.kronecker(&(g0 / c(ad, 0.0)))),
                tol.constructional,
            ));
            let half = quantize(&kernels[6]);
            let want = site.kronecker(&nalgebra::DMatrix::identity(4, 4)) * c(0.0, 0.5 / ad);
            m.push(Metric::residual(
                "{psi,pi} = (i/2) delta",
                half.max_abs_diff(&want),
                tol.constructional,
            ));
            m.push(Metric::residual(
                "{psi,psi} = 0",
                quantize(&kernels[0]).max_abs(),
                tol.constructional,
            ));
        }
        Check::Theorem1 => {
            let r = theorem1_numeric(&ctx.numeric, 30);
            m.push(Metric::residual(
                "flow^n = B^n on psi, n <= 30 (relative)",
                r.max_residual,
                tol.theorem1,
            ));
            let (s, _) = ctx.symbolic()?;
            let t = tag(&s.model);
            for (order, ok) in s.theorem1(6)? {
                m.push(Metric::exact(format!("symbolic n={order} ({t})"), ok));
            }
        }
        Check::Lemma => {
            for k in 0..=8 {
                let r = verify_lemma(model, k);
                m.push(Metric::residual(
                    format!("k={k} (relative)"),
                    r.residual,
                    tol.lemma,
                ));
            }
        }
        Check::Theorem2 => {
            let tau = if model.mass > 0.0 {
                0.1 / model.mass
            } else {
                0.1 * model.spacing
            };
            let n_max = 30;
            let e_max = delta_function(model, tau).e_max();
            let tail = (1..=n_max + 1).fold(1.0, |acc, k| acc * tau * e_max / k as f64);
            m.push(Metric::residual(
                "series truncation bound",
                tail,
                tol.series_tail,
            ));
            let series = series_anticommutator(model, tau, n_max);
            let closed = closed_form_anticommutator(model, tau);
            m.push(Metric::residual(
                format!("series vs closed form, tau={tau}"),
                series.max_abs_diff(&closed.matrix),
                tol.derived,
            ));
            let eq = &equal_time_gdb(&ctx.numeric)?[8];
            m.push(Metric::residual(
                "closed form at tau=0 = equal-time kernel",
                closed_form_anticommutator(model, 0.0).max_abs_diff(&eq.matrix),
                tol.constructional,
            ));
            m.push(Metric::residual(
                "series at tau=0 = equal-time kernel",
                series_anticommutator(model, 0.0, n_max).max_abs_diff(&eq.matrix),
                tol.constructional,
            ));
        }
        Check::Eom => {
            let r = equations_of_motion_check(&ctx.numeric)?;
            for line in &r.lines {
                m.push(Metric::residual(
                    format!("{} flow", line.formula),
                    line.flow_residual,
                    tol.eom,
                ));
                m.push(Metric::residual(
                    format!("{} on constraint surface", line.field.symbol()),
                    line.collapse_residual,
                    tol.eom,
                ));
            }
            m.push(Metric::residual(
                "constraints preserved",
                r.tangency_residual,
                tol.eom,
            ));
            m.push(Metric::residual(
                "Dirac equation",
                r.dirac_residual,
                tol.eom,
            ));
            m.push(Metric::residual(
                "conjugate Dirac equation",
                r.conjugate_residual,
                tol.eom,
            ));
            let (s, _) = ctx.symbolic()?;
            let t = tag(&s.model);
            let sym = s.equations_of_motion()?;
            for line in &sym.lines {
                m.push(Metric::exact(
                    format!("symbolic {} flow ({t})", line.field.symbol()),
                    line.flow_exact,
                ));
                m.push(Metric::exact(
                    format!("symbolic {} collapse ({t})", line.field.symbol()),
                    line.collapse_exact,
                ));
            }
            m.push(Metric::exact(
                format!("symbolic Dirac equations ({t})"),
                sym.tangency_exact && sym.dirac_exact && sym.conjugate_exact,
            ));
        }
        Check::Modes => {
            let b = mode_expansion(model)?;
            let worst_nullity = b.modes.iter().filter(|md| md.nullity != (2, 2)).count();
            m.push(Metric::count(
                "modes with solution spaces of rank 2",
                b.modes.len() - worst_nullity,
                b.modes.len(),
            ));
            let residual = b.modes.iter().map(|md| md.residual).fold(0.0, f64::max);
            m.push(Metric::residual(
                "(pslash - m)u, (pslash + m)v",
                residual,
                1e-12_f64.max(tol.constructional),
            ));
            m.push(Metric::residual(
                "u(p)^dag v(-p)",
                b.orthogonality_residual,
                tol.derived,
            ));
            m.push(Metric::residual(
                "u^dag u = v^dag v = 2E",
                b.normalization_residual,
                tol.derived,
            ));
            m.push(Metric::info("condition number", b.condition_number));
        }
        Check::Ladder => {
            let b = mode_expansion(model)?;
            let r = ladder_algebra(model, &b)?;
            m.push(Metric::residual(
                "diagonal / (2E N^d a^d) - 1",
                r.diagonal_relative_error,
                tol.derived,
            ));
            m.push(Metric::residual(
                "off-diagonal {a,a^dag}, {b,b^dag}",
                r.off_diagonal_max,
                tol.derived,
            ));
            m.push(Metric::residual(
                "{a,a}, {b,b}, {a,b}, {a,b^dag}",
                r.vanishing_max,
                tol.derived,
            ));
            m.push(Metric::info("condition number", r.condition_number));
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_names() {
        for c in Check::ALL {
            assert_eq!(Check::parse(c.name()), Some(c));
        }
        assert_eq!(Check::parse("c-inverse"), Some(Check::CInverse));
        assert_eq!(Check::parse("nope"), None);
    }

    #[test]
    fn massless_modes_rejected_up_front() {
        let m = LatticeModel::new(1, 4, 0.5, 0.0).unwrap();
        let err =
            run_checks(&m, &[Check::Eqtime, Check::Ladder], &Tolerances::default()).unwrap_err();
        assert!(matches!(err, LatticeError::Unsupported(_)));
    }

    #[test]
    fn small_suite_passes() {
        let m = LatticeModel::new(1, 4, 0.5, 1.0).unwrap();
        let out = run_checks(&m, &Check::ALL, &Tolerances::default()).unwrap();
        for o in &out {
            assert!(o.passed, "{:?}", o);
        }
    }
}
