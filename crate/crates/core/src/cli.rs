//! Command front end: `analyze`, `bracket` and `lattice`, their reports and
//! exit statuses. The `gdirac` binary is a thin wrapper around this module.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use crate::bracket::{
    gpb, verify_graded_algebra, AlgebraReport, Bracket, BracketError, PairKind, PoissonBracket,
    SampleConfig,
};
use crate::constraints::{
    analyze, check_flow_matches_euler_lagrange, Analysis, BracketVariant, ClassTag,
    ConstraintError, Stage,
};
use crate::dsl::{self, ConfigValue, DslError, ExprKind, ModelSpec};
use crate::grassmann::{Poly, Universe};
use crate::lattice::{
    run_checks, symbolic_companion, Check, CheckOutcome, LatticeError, LatticeModel, MetricValue,
    Tolerances,
};

/// Version tag written at the top of every JSON report.
pub const SCHEMA: &str = "grassmann-dirac/run-report/v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExitStatus {
    Pass,
    CheckFailure,
    InputError,
    InconsistentModel,
    Unsupported,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Pass => 0,
            ExitStatus::CheckFailure => 1,
            ExitStatus::InputError => 2,
            ExitStatus::InconsistentModel => 3,
            ExitStatus::Unsupported => 4,
        }
    }
}

#[derive(Debug, Clone, Error)]
#[error("{message}")]
pub struct CliError {
    pub status: ExitStatus,
    pub message: String,
}

impl CliError {
    pub fn new(status: ExitStatus, message: impl Into<String>) -> Self {
        CliError {
            status,
            message: message.into(),
        }
    }

    fn input(message: impl Into<String>) -> Self {
        Self::new(ExitStatus::InputError, message)
    }

    fn dsl(source: &str, e: &DslError) -> Self {
        Self::input(format!("{source}:{e}"))
    }
}

impl From<ConstraintError> for CliError {
    fn from(e: ConstraintError) -> Self {
        let status = match &e {
            ConstraintError::Inconsistent(_) | ConstraintError::SingularConstraintMatrix => {
                ExitStatus::InconsistentModel
            }
            ConstraintError::Unsupported(_) | ConstraintError::NoConvergence(_) => {
                ExitStatus::Unsupported
            }
            _ => ExitStatus::InputError,
        };
        CliError::new(status, e.to_string())
    }
}

impl From<BracketError> for CliError {
    fn from(e: BracketError) -> Self {
        ConstraintError::from(e).into()
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::Constraint(c) => c.into(),
            LatticeError::Invalid(_) => CliError::input(e.to_string()),
            LatticeError::Singular(_) => {
                CliError::new(ExitStatus::InconsistentModel, e.to_string())
            }
            LatticeError::Unsupported(_) | LatticeError::IllConditioned { .. } => {
                CliError::new(ExitStatus::Unsupported, e.to_string())
            }
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

#[derive(Debug, Clone, Serialize)]
pub struct CoordinateRow {
    pub name: String,
    pub kind: String,
    pub momentum: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModelSummary {
    pub coordinates: Vec<CoordinateRow>,
    pub parameters: Vec<String>,
    pub lagrangian: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstraintRow {
    pub name: String,
    pub expr: String,
    pub stage: String,
    pub class: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct MultiplierReport {
    pub multipliers: Vec<String>,
    pub particular: Vec<String>,
    pub homogeneous_basis: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HamiltonianReport {
    pub canonical: String,
    pub first_class: String,
    pub total: String,
    pub extended: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct BracketRow {
    pub f: String,
    pub g: String,
    pub gp: String,
    pub gd: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    /// Whether failures count against the exit status.
    pub required: bool,
    pub report: AlgebraReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeConfig {
    pub dim: usize,
    pub sites: usize,
    pub spacing: f64,
    pub mass: f64,
}

impl From<&LatticeModel> for LatticeConfig {
    fn from(m: &LatticeModel) -> Self {
        LatticeConfig {
            dim: m.dim,
            sites: m.sites,
            spacing: m.spacing,
            mass: m.mass,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeSection {
    pub config: LatticeConfig,
    pub symbolic_lattice: LatticeConfig,
    pub tolerances: Tolerances,
    pub checks: Vec<CheckOutcome>,
}

/// Everything a run produced; serialized as the JSON report.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub source: String,
    pub seed: u64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub constraints: Vec<ConstraintRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multipliers: Option<MultiplierReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hamiltonians: Option<HamiltonianReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub brackets: Vec<BracketRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub identity_checks: Vec<IdentityCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub euler_lagrange_flow: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeSection>,
}

impl RunReport {
    fn new(command: &'static str, source: &str, seed: u64) -> Self {
        RunReport {
            schema: SCHEMA,
            command,
            source: source.to_string(),
            seed,
            passed: true,
            model: None,
            constraints: Vec::new(),
            multipliers: None,
            hamiltonians: None,
            brackets: Vec::new(),
            identity_checks: Vec::new(),
            euler_lagrange_flow: None,
            lattice: None,
        }
    }

    pub fn status(&self) -> ExitStatus {
        if self.passed {
            ExitStatus::Pass
        } else {
            ExitStatus::CheckFailure
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Human-readable summary.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let mark = |ok: bool| if ok { "PASS" } else { "FAIL" };
        if let Some(m) = &self.model {
            let _ = writeln!(out, "model {}", self.source);
            let _ = writeln!(out, "  L = {}", m.lagrangian);
            for c in &m.coordinates {
                let _ = writeln!(out, "  {} ({}), momentum {}", c.name, c.kind, c.momentum);
            }
        }
        if !self.constraints.is_empty() {
            let _ = writeln!(out, "constraints");
            for c in &self.constraints {
                let _ = writeln!(
                    out,
                    "  {} = {}   [{}, {} class]",
                    c.name, c.expr, c.stage, c.class
                );
            }
        }
        if let Some(mu) = &self.multipliers {
            for (u, v) in mu.multipliers.iter().zip(&mu.particular) {
                let _ = writeln!(out, "  {u} = {v}");
            }
            if !mu.homogeneous_basis.is_empty() {
                let _ = writeln!(
                    out,
                    "  {} free multiplier direction(s)",
                    mu.homogeneous_basis.len()
                );
            }
        }
        if let Some(h) = &self.hamiltonians {
            let _ = writeln!(out, "hamiltonians");
            let _ = writeln!(out, "  H   = {}", h.canonical);
            let _ = writeln!(out, "  H'  = {}", h.first_class);
            let _ = writeln!(out, "  H_T = {}", h.total);
            let _ = writeln!(out, "  H_E = {}", h.extended);
        }
        if !self.brackets.is_empty() {
            let _ = writeln!(out, "brackets");
            for b in &self.brackets {
                let gd =
                    b.gd.as_deref()
                        .map(|v| format!(", gd = {v}"))
                        .unwrap_or_default();
                let _ = writeln!(out, "  [{}, {}]: gp = {}{gd}", b.f, b.g, b.gp);
            }
        }
        for ic in &self.identity_checks {
            let tag = if ic.required { "" } else { " (informational)" };
            let _ = writeln!(out, "identities for {}{tag}", ic.report.bracket);
            for r in &ic.report.results {
                let _ = writeln!(out, "  {} {}", mark(r.passed), r.label);
                if let Some(cx) = &r.counterexample {
                    let _ = writeln!(out, "       args {:?} -> {}", cx.arguments, cx.residual);
                }
            }
        }
        if let Some(ok) = self.euler_lagrange_flow {
            let _ = writeln!(
                out,
                "{} Hamilton flow reproduces the Euler-Lagrange equations",
                mark(ok)
            );
        }
        if let Some(l) = &self.lattice {
            let c = &l.config;
            let _ = writeln!(
                out,
                "lattice d={} N={} a={} m={}",
                c.dim, c.sites, c.spacing, c.mass
            );
            for o in &l.checks {
                let _ = writeln!(out, "{} {}", mark(o.passed), o.check.name());
                for m in &o.metrics {
                    let detail = match &m.value {
                        MetricValue::Residual {
                            residual,
                            tolerance,
                        } => format!("{residual:.3e} (tol {tolerance:.0e})"),
                        MetricValue::Exact { holds } => format!("exact: {holds}"),
                        MetricValue::Count { found, expected } => {
                            format!("{found} (expected {expected})")
                        }
                        MetricValue::Info { value } => format!("{value:.6e}"),
                    };
                    let _ = writeln!(
                        out,
                        "    {} {}: {detail}",
                        if m.passed { " " } else { "!" },
                        m.name
                    );
                }
            }
        }
        let _ = writeln!(
            out,
            "{}",
            if self.passed {
                "all checks passed"
            } else {
                "some checks FAILED"
            }
        );
        out
    }
}

#[derive(Debug, Clone)]
pub struct AnalyzeOptions {
    pub seed: u64,
    pub samples: usize,
    /// Run the graded-algebra identities on the GP and GD brackets.
    pub identities: bool,
    /// Also run them on GD₁ and GD₂ (informational, expected to fail).
    pub variants: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            seed: SampleConfig::default().seed,
            samples: 60,
            identities: true,
            variants: false,
        }
    }
}

fn load(source: &str, text: &str) -> Result<(ModelSpec, Analysis), CliError> {
    let spec = dsl::parse(text).map_err(|e| CliError::dsl(source, &e))?;
    if spec.lagrangian.is_none() {
        return Err(CliError::input(format!(
            "{source}: no Lagrangian (`L = ...;`) in file"
        )));
    }
    let model = dsl::elaborate(&spec).map_err(|e| CliError::dsl(source, &e))?;
    Ok((spec, analyze(&model)?))
}

fn stage_label(s: Stage) -> String {
    match s {
        Stage::Primary => "primary".into(),
        Stage::Secondary(k) => format!("secondary({k})"),
    }
}

fn class_label(c: ClassTag) -> &'static str {
    match c {
        ClassTag::First => "first",
        ClassTag::Second => "second",
        ClassTag::Unclassified => "unclassified",
    }
}

/// Largest phase space for which the bracket table is printed.
const TABLE_LIMIT: usize = 6;

pub fn cmd_analyze(path: &Path, opts: &AnalyzeOptions) -> Result<RunReport, CliError> {
    analyze_source(&path.display().to_string(), &read(path)?, opts)
}

pub fn analyze_source(
    source: &str,
    text: &str,
    opts: &AnalyzeOptions,
) -> Result<RunReport, CliError> {
    let (_, a) = load(source, text)?;
    let u = a.universe();
    let sys = &a.system;
    let show = |p: &Poly| p.display(u).to_string();
    let mut report = RunReport::new("analyze", source, opts.seed);

    report.model = Some(ModelSummary {
        coordinates: sys
            .coordinates
            .iter()
            .zip(&sys.momenta)
            .map(|(c, &p)| CoordinateRow {
                name: u.name(c.position).to_string(),
                kind: match c.kind {
                    PairKind::Even => "even",
                    PairKind::OddRight => "odd-right",
                    PairKind::OddLeft => "odd-left",
                }
                .into(),
                momentum: u.name(p).to_string(),
            })
            .collect(),
        parameters: sys
            .parameters
            .iter()
            .map(|&g| u.name(g).to_string())
            .collect(),
        lagrangian: show(&sys.lagrangian),
    });
    report.constraints = a
        .constraints
        .iter()
        .enumerate()
        .map(|(k, c)| ConstraintRow {
            name: format!("chi{}", k + 1),
            expr: show(&c.expr),
            stage: stage_label(c.stage),
            class: class_label(c.class).into(),
        })
        .collect();
    let ms = &a.multipliers;
    report.multipliers = Some(MultiplierReport {
        multipliers: ms
            .multipliers
            .iter()
            .map(|&g| u.name(g).to_string())
            .collect(),
        particular: ms.particular.iter().map(show).collect(),
        homogeneous_basis: ms
            .homogeneous_basis
            .iter()
            .map(|v| v.iter().map(|c| c.to_string()).collect())
            .collect(),
    });
    let s = &a.suite;
    report.hamiltonians = Some(HamiltonianReport {
        canonical: show(&s.canonical),
        first_class: show(&s.first_class),
        total: show(&s.total),
        extended: show(&s.extended),
    });

    let ps = &sys.phase_space;
    let has_second = !a.constraints.second_class().is_empty();
    let gd = if has_second {
        Some(a.dirac_bracket(BracketVariant::Standard)?)
    } else {
        None
    };
    if ps.pairs().len() <= TABLE_LIMIT {
        let gens = ps.canonical_generators();
        for (i, &x) in gens.iter().enumerate() {
            for &y in &gens[i..] {
                let (f, g) = (Poly::var(x), Poly::var(y));
                let gp = gpb(&f, &g, ps)?;
                let dirac = gd.as_ref().map(|b| b.bracket(&f, &g)).transpose()?;
                if gp.is_zero() && dirac.as_ref().is_none_or(Poly::is_zero) {
                    continue;
                }
                report.brackets.push(BracketRow {
                    f: u.name(x).to_string(),
                    g: u.name(y).to_string(),
                    gp: show(&gp),
                    gd: dirac.as_ref().map(show),
                });
            }
        }
    }

    if opts.identities {
        let cfg = SampleConfig {
            samples: opts.samples,
            seed: opts.seed,
            ..SampleConfig::default()
        };
        let gp = PoissonBracket::new(ps);
        report.identity_checks.push(IdentityCheck {
            required: true,
            report: verify_graded_algebra(&gp, cfg, u)?,
        });
        if let Some(b) = &gd {
            report.identity_checks.push(IdentityCheck {
                required: true,
                report: verify_graded_algebra(b, cfg, u)?,
            });
        }
        if opts.variants && has_second {
            for v in [BracketVariant::Gd1, BracketVariant::Gd2] {
                let b = a.dirac_bracket(v)?;
                report.identity_checks.push(IdentityCheck {
                    required: false,
                    report: verify_graded_algebra(&b, cfg, u)?,
                });
            }
        }
    }
    report.euler_lagrange_flow = check_flow_matches_euler_lagrange(&a).ok().map(|f| f.passed);
    report.passed = report
        .identity_checks
        .iter()
        .all(|c| !c.required || c.report.all_passed())
        && report.euler_lagrange_flow != Some(false);
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketChoice {
    Gp,
    Gd,
    Gd1,
    Gd2,
}

impl BracketChoice {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "gp" => Some(BracketChoice::Gp),
            "gd" => Some(BracketChoice::Gd),
            "gd1" => Some(BracketChoice::Gd1),
            "gd2" => Some(BracketChoice::Gd2),
            _ => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            BracketChoice::Gp => "gp",
            BracketChoice::Gd => "gd",
            BracketChoice::Gd1 => "gd1",
            BracketChoice::Gd2 => "gd2",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketOutput {
    pub bracket: BracketChoice,
    pub value: String,
    /// For GD₁/GD₂: the standard Dirac bracket when it differs.
    pub differs_from_gd: Option<String>,
}

impl BracketOutput {
    pub fn render(&self) -> String {
        let mut s = format!("{}\n", self.value);
        if let Some(gd) = &self.differs_from_gd {
            let _ = writeln!(s, "note: {} differs from gd = {gd}", self.bracket.label());
        }
        s
    }
}

/// Names usable in bracket arguments: model variables, momenta, parameters,
/// `chi<k>` for the k-th constraint and `H` for the canonical Hamiltonian.
fn resolve_name(a: &Analysis, name: &str) -> Option<Poly> {
    let u: &Universe = a.universe();
    if let Some(g) = u.find(name) {
        let declared = a.system.phase_space.canonical_generators().contains(&g)
            || a.system.parameters.contains(&g);
        if declared {
            return Some(Poly::var(g));
        }
    }
    if let Some(k) = name
        .strip_prefix("chi")
        .and_then(|k| k.parse::<usize>().ok())
    {
        return a
            .constraints
            .constraints
            .get(k.checked_sub(1)?)
            .map(|c| c.expr.clone());
    }
    (name == "H").then(|| a.suite.canonical.clone())
}

fn bracket_argument(a: &Analysis, text: &str) -> Result<Poly, CliError> {
    let e = dsl::parse_expr(text).map_err(|e| CliError::dsl("argument", &e))?;
    let uid = a.universe().id();
    let mut resolve = |k: &ExprKind, span: dsl::Span| -> Result<Poly, DslError> {
        match k {
            ExprKind::Var(n) => resolve_name(a, n).ok_or_else(|| {
                DslError::new(
                    dsl::ErrorKind::Undeclared,
                    span,
                    format!("undeclared name `{n}`"),
                )
            }),
            _ => Err(DslError::new(
                dsl::ErrorKind::Misuse,
                span,
                "velocities are not phase-space functions",
            )),
        }
    };
    dsl::expr_to_poly(&e, uid, &mut resolve).map_err(|e| CliError::dsl("argument", &e))
}

pub fn cmd_bracket(
    path: &Path,
    f: &str,
    g: &str,
    choice: BracketChoice,
) -> Result<BracketOutput, CliError> {
    bracket_source(&path.display().to_string(), &read(path)?, f, g, choice)
}

pub fn bracket_source(
    source: &str,
    text: &str,
    f: &str,
    g: &str,
    choice: BracketChoice,
) -> Result<BracketOutput, CliError> {
    let (_, a) = load(source, text)?;
    let (pf, pg) = (bracket_argument(&a, f)?, bracket_argument(&a, g)?);
    let u = a.universe();
    let ps = &a.system.phase_space;
    let eval = |v: BracketVariant| -> Result<Poly, CliError> {
        if a.constraints.second_class().is_empty() {
            return Ok(gpb(&pf, &pg, ps)?);
        }
        Ok(a.dirac_bracket(v)?.bracket(&pf, &pg)?)
    };
    let value = match choice {
        BracketChoice::Gp => gpb(&pf, &pg, ps)?,
        BracketChoice::Gd => eval(BracketVariant::Standard)?,
        BracketChoice::Gd1 => eval(BracketVariant::Gd1)?,
        BracketChoice::Gd2 => eval(BracketVariant::Gd2)?,
    };
    let differs_from_gd = match choice {
        BracketChoice::Gd1 | BracketChoice::Gd2 => {
            let gd = eval(BracketVariant::Standard)?;
            (gd != value).then(|| gd.display(u).to_string())
        }
        _ => None,
    };
    Ok(BracketOutput {
        bracket: choice,
        value: value.display(u).to_string(),
        differs_from_gd,
    })
}

#[derive(Debug, Clone, Default)]
pub struct LatticeOptions {
    /// Overrides the `checks` list of the config block.
    pub checks: Option<Vec<Check>>,
    pub seed: u64,
    pub tolerances: Tolerances,
}

pub fn parse_checks(items: &[String]) -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    for item in items {
        if item == "all" {
            out.extend(Check::ALL);
            continue;
        }
        let c = Check::parse(item).ok_or_else(|| {
            let known: Vec<&str> = Check::ALL.iter().map(|c| c.name()).collect();
            CliError::input(format!(
                "unknown check `{item}`; expected `all` or one of {}",
                known.join(", ")
            ))
        })?;
        out.push(c);
    }
    out.dedup();
    Ok(out)
}

/// Reads `dim`, `sites`, `spacing`, `mass` and `checks` from the
/// `lattice { ... }` block.
pub fn lattice_config(
    source: &str,
    spec: &ModelSpec,
) -> Result<(LatticeModel, Option<Vec<Check>>), CliError> {
    let block = spec
        .lattice
        .as_ref()
        .ok_or_else(|| CliError::input(format!("{source}: no `lattice {{ ... }}` block")))?;
    let (mut dim, mut sites, mut spacing, mut mass, mut checks) = (1usize, None, None, None, None);
    for e in &block.entries {
        let at = format!("{source}:{}", e.span);
        let number = || match &e.value {
            ConfigValue::Number(t) => t
                .parse::<f64>()
                .map_err(|_| CliError::input(format!("{at}: bad number `{t}`"))),
            ConfigValue::List(_) => Err(CliError::input(format!(
                "{at}: `{}` expects a number",
                e.key
            ))),
        };
        let count = || -> Result<usize, CliError> {
            let x = number()?;
            if x.fract() != 0.0 || x < 0.0 {
                return Err(CliError::input(format!(
                    "{at}: `{}` must be a non-negative integer",
                    e.key
                )));
            }
            Ok(x as usize)
        };
        match e.key.as_str() {
            "dim" => dim = count()?,
            "sites" => sites = Some(count()?),
            "spacing" => spacing = Some(number()?),
            "mass" => mass = Some(number()?),
            "checks" => match &e.value {
                ConfigValue::List(items) => checks = Some(parse_checks(items)?),
                ConfigValue::Number(_) => {
                    return Err(CliError::input(format!("{at}: `checks` expects a [list]")))
                }
            },
            other => {
                return Err(CliError::input(format!(
                    "{at}: unknown lattice key `{other}`"
                )))
            }
        }
    }
    let missing = |key: &str| CliError::input(format!("{source}: lattice block lacks `{key}`"));
    let sites = sites.ok_or_else(|| missing("sites"))?;
    let spacing = spacing.ok_or_else(|| missing("spacing"))?;
    let mass = mass.ok_or_else(|| missing("mass"))?;
    let model = LatticeModel::new(dim, sites, spacing, mass)?;
    Ok((model, checks))
}

pub fn cmd_lattice(path: &Path, opts: &LatticeOptions) -> Result<RunReport, CliError> {
    lattice_source(&path.display().to_string(), &read(path)?, opts)
}

pub fn lattice_source(
    source: &str,
    text: &str,
    opts: &LatticeOptions,
) -> Result<RunReport, CliError> {
    let spec = dsl::parse(text).map_err(|e| CliError::dsl(source, &e))?;
    let (model, from_file) = lattice_config(source, &spec)?;
    let checks = opts
        .checks
        .clone()
        .or(from_file)
        .unwrap_or_else(|| Check::ALL.to_vec());
    let outcomes = run_checks(&model, &checks, &opts.tolerances)?;
    let mut report = RunReport::new("lattice", source, opts.seed);
    report.passed = outcomes.iter().all(|o| o.passed);
    report.lattice = Some(LatticeSection {
        config: (&model).into(),
        symbolic_lattice: (&symbolic_companion(&model)?).into(),
        tolerances: opts.tolerances,
        checks: outcomes,
    });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    const OSC: &str =
        "odd theta, thetabar; param m; L = (i/2)*(thetabar*dot(theta) - dot(thetabar)*theta) - m*thetabar*theta;";

    #[test]
    fn oscillator_report() {
        let r = analyze_source(
            "osc",
            OSC,
            &AnalyzeOptions {
                samples: 10,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(r.passed);
        assert_eq!(r.constraints.len(), 2);
        assert!(r.constraints.iter().all(|c| c.class == "second"));
        let row = r
            .brackets
            .iter()
            .find(|b| b.f == "theta" && b.g == "thetabar")
            .unwrap();
        assert_eq!(row.gd.as_deref(), Some("-i"));
        assert!(r.to_json().starts_with("{\n  \"schema\""));
    }

    #[test]
    fn bracket_names() {
        let out = bracket_source("osc", OSC, "theta", "chi1", BracketChoice::Gd).unwrap();
        assert_eq!(out.value, "0");
        let out = bracket_source("osc", OSC, "theta", "thetabar", BracketChoice::Gd1).unwrap();
        assert!(out.differs_from_gd.is_some());
        let err = bracket_source("osc", OSC, "theta", "nope", BracketChoice::Gd).unwrap_err();
        assert_eq!(err.status, ExitStatus::InputError);
    }

    #[test]
    fn exit_statuses() {
        let bad = analyze_source("bad", "odd theta L = ;", &AnalyzeOptions::default()).unwrap_err();
        assert_eq!(bad.status.code(), 2);
        assert!(bad.message.starts_with("bad:1:"));
        let inconsistent =
            analyze_source("x", "even q; L = q;", &AnalyzeOptions::default()).unwrap_err();
        assert_eq!(inconsistent.status.code(), 3);
        let cfg = "lattice { sites = 4; spacing = 0.5; mass = 0; checks = [modes]; }";
        let unsupported = lattice_source("cfg", cfg, &LatticeOptions::default()).unwrap_err();
        assert_eq!(unsupported.status.code(), 4);
        let unknown = lattice_source(
            "cfg",
            "lattice { sites = 4; spacing = 1; mass = 1; colour = 3; }",
            &LatticeOptions::default(),
        );
        assert_eq!(unknown.unwrap_err().status.code(), 2);
    }
}
