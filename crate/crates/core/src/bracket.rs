//! The graded Poisson bracket and a verifier for the graded algebra
//! identities any quantizable bracket must satisfy.
//!
//! Derivative conventions: with respect to positions of [`PairKind::OddRight`]
//! pairs and momenta of [`PairKind::OddLeft`] pairs the bracket uses right
//! derivatives; with respect to positions of `OddLeft` pairs and momenta of
//! `OddRight` pairs it uses left derivatives.

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::coeff::Coeff;
use crate::grassmann::{Generator, GrassmannError, Parity, Poly, Side, Universe, UniverseId};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BracketError {
    #[error(transparent)]
    Grassmann(#[from] GrassmannError),
    #[error("generator #{0} is not a canonical variable or parameter of the phase space")]
    OutsidePhaseSpace(u32),
    #[error("canonical pair #{0}: position and momentum must share parity matching the pair kind")]
    InvalidPair(usize),
    #[error("generator #{0} is used more than once in the phase space")]
    DuplicateGenerator(u32),
    #[error("the Hamiltonian must be even")]
    OddHamiltonian,
    #[error("{0}")]
    Other(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PairKind {
    Even,
    /// θ-type: right derivative w.r.t. the position, left w.r.t. the momentum.
    OddRight,
    /// θ̄-type: left derivative w.r.t. the position, right w.r.t. the momentum.
    OddLeft,
}

impl PairKind {
    pub fn parity(self) -> Parity {
        match self {
            PairKind::Even => Parity::Even,
            _ => Parity::Odd,
        }
    }

    /// Side used when differentiating with respect to the position.
    pub fn position_side(self) -> Side {
        match self {
            PairKind::OddLeft => Side::Left,
            _ => Side::Right,
        }
    }

    /// Side used when differentiating with respect to the momentum.
    pub fn momentum_side(self) -> Side {
        match self {
            PairKind::OddLeft => Side::Right,
            _ => Side::Left,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CanonicalPair {
    pub position: Generator,
    pub momentum: Generator,
    pub kind: PairKind,
}

impl CanonicalPair {
    pub fn new(position: Generator, momentum: Generator, kind: PairKind) -> Self {
        CanonicalPair {
            position,
            momentum,
            kind,
        }
    }
}

/// Canonical pairs plus central parameters (constants, multipliers) that
/// have vanishing brackets with everything.
#[derive(Debug, Clone)]
pub struct PhaseSpace {
    universe: UniverseId,
    pairs: Vec<CanonicalPair>,
    central: Vec<Generator>,
    known: HashSet<u32>,
}

impl PhaseSpace {
    pub fn new(
        universe: UniverseId,
        pairs: Vec<CanonicalPair>,
        central: Vec<Generator>,
    ) -> Result<PhaseSpace, BracketError> {
        let mut ps = PhaseSpace {
            universe,
            pairs: Vec::new(),
            central: Vec::new(),
            known: HashSet::new(),
        };
        for pair in pairs {
            ps.push_pair(pair)?;
        }
        for g in central {
            ps.add_central(g)?;
        }
        Ok(ps)
    }

    fn claim(&mut self, g: Generator) -> Result<(), BracketError> {
        if g.universe() != self.universe {
            return Err(GrassmannError::UniverseMismatch.into());
        }
        if !self.known.insert(g.id()) {
            return Err(BracketError::DuplicateGenerator(g.id()));
        }
        Ok(())
    }

    pub fn push_pair(&mut self, pair: CanonicalPair) -> Result<(), BracketError> {
        let want = pair.kind.parity();
        if pair.position.parity() != want || pair.momentum.parity() != want {
            return Err(BracketError::InvalidPair(self.pairs.len()));
        }
        self.claim(pair.position)?;
        self.claim(pair.momentum)?;
        self.pairs.push(pair);
        Ok(())
    }

    pub fn add_central(&mut self, g: Generator) -> Result<(), BracketError> {
        self.claim(g)?;
        self.central.push(g);
        Ok(())
    }

    pub fn universe(&self) -> UniverseId {
        self.universe
    }

    pub fn pairs(&self) -> &[CanonicalPair] {
        &self.pairs
    }

    pub fn central(&self) -> &[Generator] {
        &self.central
    }

    pub fn is_central(&self, g: Generator) -> bool {
        self.central.contains(&g)
    }

    pub fn pair_of(&self, g: Generator) -> Option<&CanonicalPair> {
        self.pairs
            .iter()
            .find(|p| p.position == g || p.momentum == g)
    }

    pub fn canonical_generators(&self) -> Vec<Generator> {
        self.pairs
            .iter()
            .flat_map(|p| [p.position, p.momentum])
            .collect()
    }

    pub fn check(&self, f: &Poly) -> Result<(), BracketError> {
        if f.universe() != self.universe {
            return Err(GrassmannError::UniverseMismatch.into());
        }
        match f.support().into_iter().find(|id| !self.known.contains(id)) {
            Some(id) => Err(BracketError::OutsidePhaseSpace(id)),
            None => Ok(()),
        }
    }
}

/// Generalized Poisson bracket `[F, G]`.
///
/// Inputs of indefinite parity are split into even and odd parts and the
/// bracket is extended bilinearly.
pub fn gpb(f: &Poly, g: &Poly, ps: &PhaseSpace) -> Result<Poly, BracketError> {
    ps.check(f)?;
    ps.check(g)?;
    let (fe, fo) = f.parity_split();
    let (ge, go) = g.parity_split();
    let mut out = Poly::zero(ps.universe);
    if !ge.is_zero() {
        out = out + with_even(f, &ge, ps)?;
    }
    if !fe.is_zero() && !go.is_zero() {
        out = out - with_even(&go, &fe, ps)?;
    }
    if !fo.is_zero() && !go.is_zero() {
        out = out + both_odd(&fo, &go, ps)?;
    }
    Ok(out)
}

struct Support(HashSet<u32>);

impl Support {
    fn of(p: &Poly) -> Self {
        Support(p.support().into_iter().collect())
    }

    fn has(&self, g: Generator) -> bool {
        self.0.contains(&g.id())
    }
}

fn d(p: &Poly, g: Generator, side: Side) -> Result<Poly, BracketError> {
    Ok(p.derivative(g, side)?)
}

/// `[F, E]` for even `E` and arbitrary `F`.
fn with_even(f: &Poly, e: &Poly, ps: &PhaseSpace) -> Result<Poly, BracketError> {
    let (sf, se) = (Support::of(f), Support::of(e));
    let mut out = Poly::zero(ps.universe);
    for pair in &ps.pairs {
        let (x, p) = (pair.position, pair.momentum);
        let (xs, ps_) = (pair.kind.position_side(), pair.kind.momentum_side());
        match pair.kind {
            PairKind::Even | PairKind::OddRight => {
                if sf.has(x) && se.has(p) {
                    out = out + d(f, x, xs)? * d(e, p, ps_)?;
                }
                if se.has(x) && sf.has(p) {
                    out = out - d(e, x, xs)? * d(f, p, ps_)?;
                }
            }
            PairKind::OddLeft => {
                if se.has(p) && sf.has(x) {
                    out = out + d(e, p, ps_)? * d(f, x, xs)?;
                }
                if sf.has(p) && se.has(x) {
                    out = out - d(f, p, ps_)? * d(e, x, xs)?;
                }
            }
        }
    }
    Ok(out)
}

/// `[A, B]` for odd `A`, `B`.
fn both_odd(a: &Poly, b: &Poly, ps: &PhaseSpace) -> Result<Poly, BracketError> {
    let (sa, sb) = (Support::of(a), Support::of(b));
    let mut out = Poly::zero(ps.universe);
    for pair in &ps.pairs {
        let (x, p) = (pair.position, pair.momentum);
        let (xs, ps_) = (pair.kind.position_side(), pair.kind.momentum_side());
        match pair.kind {
            PairKind::Even => {
                if sa.has(x) && sb.has(p) {
                    out = out + d(a, x, xs)? * d(b, p, ps_)?;
                }
                if sa.has(p) && sb.has(x) {
                    out = out - d(a, p, ps_)? * d(b, x, xs)?;
                }
            }
            PairKind::OddRight => {
                if sa.has(x) && sb.has(p) {
                    out = out + d(a, x, xs)? * d(b, p, ps_)?;
                }
                if sb.has(x) && sa.has(p) {
                    out = out + d(b, x, xs)? * d(a, p, ps_)?;
                }
            }
            PairKind::OddLeft => {
                if sb.has(p) && sa.has(x) {
                    out = out - d(b, p, ps_)? * d(a, x, xs)?;
                }
                if sa.has(p) && sb.has(x) {
                    out = out - d(a, p, ps_)? * d(b, x, xs)?;
                }
            }
        }
    }
    Ok(out)
}

/// `Ḟ = [F, H_T]`. Constraints are not imposed here.
pub fn time_derivative(f: &Poly, h_total: &Poly, ps: &PhaseSpace) -> Result<Poly, BracketError> {
    if h_total.parity() != Some(Parity::Even) {
        return Err(BracketError::OddHamiltonian);
    }
    gpb(f, h_total, ps)
}

/// A bilinear bracket on phase-space functions.
pub trait Bracket: Sync {
    fn name(&self) -> &str;
    fn phase_space(&self) -> &PhaseSpace;
    fn bracket(&self, f: &Poly, g: &Poly) -> Result<Poly, BracketError>;
}

pub struct PoissonBracket<'a> {
    ps: &'a PhaseSpace,
}

impl<'a> PoissonBracket<'a> {
    pub fn new(ps: &'a PhaseSpace) -> Self {
        PoissonBracket { ps }
    }
}

impl Bracket for PoissonBracket<'_> {
    fn name(&self) -> &str {
        "gp"
    }

    fn phase_space(&self) -> &PhaseSpace {
        self.ps
    }

    fn bracket(&self, f: &Poly, g: &Poly) -> Result<Poly, BracketError> {
        gpb(f, g, self.ps)
    }
}

/// The eight graded identities, in the order antisymmetry, odd symmetry,
/// three Leibniz rules, three Jacobi identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Identity {
    /// `[F₁,E₁] = −[E₁,F₁]`
    Antisymmetry,
    /// `[A₁,A₂] = [A₂,A₁]`
    OddSymmetry,
    /// `[E₁,F₁F₂] = [E₁,F₁]F₂ + F₁[E₁,F₂]`
    LeibnizEven,
    /// `[A₁,E₁F₂] = [A₁,E₁]F₂ + E₁[A₁,F₂]`
    LeibnizOddEven,
    /// `[A₁,A₂F₁] = [A₁,A₂]F₁ − A₂[A₁,F₁]`
    LeibnizOddOdd,
    /// `[F₁,[E₂,E₃]] + [E₃,[F₁,E₂]] + [E₂,[E₃,F₁]] = 0`
    JacobiEven,
    /// `[E₁,[A₂,A₃]] − [A₃,[E₁,A₂]] + [A₂,[A₃,E₁]] = 0`
    JacobiMixed,
    /// `[A₁,[A₂,A₃]] + [A₃,[A₁,A₂]] + [A₂,[A₃,A₁]] = 0`
    JacobiOdd,
}

/// Parity constraint on an identity argument; `None` means arbitrary.
type Slot = Option<Parity>;

impl Identity {
    pub const ALL: [Identity; 8] = [
        Identity::Antisymmetry,
        Identity::OddSymmetry,
        Identity::LeibnizEven,
        Identity::LeibnizOddEven,
        Identity::LeibnizOddOdd,
        Identity::JacobiEven,
        Identity::JacobiMixed,
        Identity::JacobiOdd,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Identity::Antisymmetry => "antisymmetry",
            Identity::OddSymmetry => "odd-symmetry",
            Identity::LeibnizEven => "leibniz-even",
            Identity::LeibnizOddEven => "leibniz-odd-even",
            Identity::LeibnizOddOdd => "leibniz-odd-odd",
            Identity::JacobiEven => "jacobi-even",
            Identity::JacobiMixed => "jacobi-mixed",
            Identity::JacobiOdd => "jacobi-odd",
        }
    }

    /// Parity requirements of the arguments.
    pub fn slots(self) -> Vec<Slot> {
        use Parity::{Even, Odd};
        match self {
            Identity::Antisymmetry => vec![None, Some(Even)],
            Identity::OddSymmetry => vec![Some(Odd), Some(Odd)],
            Identity::LeibnizEven => vec![Some(Even), None, None],
            Identity::LeibnizOddEven => vec![Some(Odd), Some(Even), None],
            Identity::LeibnizOddOdd => vec![Some(Odd), Some(Odd), None],
            Identity::JacobiEven => vec![None, Some(Even), Some(Even)],
            Identity::JacobiMixed => vec![Some(Even), Some(Odd), Some(Odd)],
            Identity::JacobiOdd => vec![Some(Odd), Some(Odd), Some(Odd)],
        }
    }

    /// Left side minus right side; zero when the identity holds.
    pub fn residual(self, br: &dyn Bracket, args: &[Poly]) -> Result<Poly, BracketError> {
        let b = |x: &Poly, y: &Poly| br.bracket(x, y);
        Ok(match self {
            Identity::Antisymmetry => {
                let (f1, e1) = (&args[0], &args[1]);
                b(f1, e1)? + b(e1, f1)?
            }
            Identity::OddSymmetry => {
                let (a1, a2) = (&args[0], &args[1]);
                b(a1, a2)? - b(a2, a1)?
            }
            Identity::LeibnizEven => {
                let (e1, f1, f2) = (&args[0], &args[1], &args[2]);
                b(e1, &(f1 * f2))? - b(e1, f1)? * f2 - f1 * b(e1, f2)?
            }
            Identity::LeibnizOddEven => {
                let (a1, e1, f2) = (&args[0], &args[1], &args[2]);
                b(a1, &(e1 * f2))? - b(a1, e1)? * f2 - e1 * b(a1, f2)?
            }
            Identity::LeibnizOddOdd => {
                let (a1, a2, f1) = (&args[0], &args[1], &args[2]);
                b(a1, &(a2 * f1))? - b(a1, a2)? * f1 + a2 * b(a1, f1)?
            }
            Identity::JacobiEven => {
                let (f1, e2, e3) = (&args[0], &args[1], &args[2]);
                b(f1, &b(e2, e3)?)? + b(e3, &b(f1, e2)?)? + b(e2, &b(e3, f1)?)?
            }
            Identity::JacobiMixed => {
                let (e1, a2, a3) = (&args[0], &args[1], &args[2]);
                b(e1, &b(a2, a3)?)? - b(a3, &b(e1, a2)?)? + b(a2, &b(a3, e1)?)?
            }
            Identity::JacobiOdd => {
                let (a1, a2, a3) = (&args[0], &args[1], &args[2]);
                b(a1, &b(a2, a3)?)? + b(a3, &b(a1, a2)?)? + b(a2, &b(a3, a1)?)?
            }
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub arguments: Vec<String>,
    pub residual: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityResult {
    pub identity: Identity,
    pub label: &'static str,
    pub passed: bool,
    pub checked: usize,
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AlgebraReport {
    pub bracket: String,
    pub seed: Option<u64>,
    pub results: Vec<IdentityResult>,
}

impl AlgebraReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn result(&self, id: Identity) -> &IdentityResult {
        self.results
            .iter()
            .find(|r| r.identity == id)
            .expect("every identity is reported")
    }
}

/// Drops terms from the arguments while the identity keeps failing.
fn shrink(
    id: Identity,
    br: &dyn Bracket,
    mut args: Vec<Poly>,
) -> Result<(Vec<Poly>, Poly), BracketError> {
    let mut residual = id.residual(br, &args)?;
    for k in 0..args.len() {
        let mut changed = true;
        while changed {
            changed = false;
            let terms: Vec<_> = args[k]
                .terms()
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect();
            if terms.len() <= 1 {
                break;
            }
            for skip in 0..terms.len() {
                let candidate = terms.iter().enumerate().filter(|(j, _)| *j != skip).fold(
                    Poly::zero(args[k].universe()),
                    |acc, (_, (m, c))| {
                        acc + Poly::from_term(args[k].universe(), m.clone(), c.clone())
                    },
                );
                let mut trial = args.clone();
                trial[k] = candidate;
                let r = id.residual(br, &trial)?;
                if !r.is_zero() {
                    args = trial;
                    residual = r;
                    changed = true;
                    break;
                }
            }
        }
    }
    Ok((args, residual))
}

fn record_failure(
    id: Identity,
    br: &dyn Bracket,
    args: &[Poly],
    universe: &Universe,
) -> Result<Counterexample, BracketError> {
    let (args, residual) = shrink(id, br, args.to_vec())?;
    Ok(Counterexample {
        arguments: args
            .iter()
            .map(|a| a.display(universe).to_string())
            .collect(),
        residual: residual.display(universe).to_string(),
    })
}

/// Options for random sampling of test polynomials.
#[derive(Debug, Clone, Copy)]
pub struct SampleConfig {
    pub samples: usize,
    pub seed: u64,
    pub max_degree: u32,
    pub max_terms: usize,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            samples: 100,
            seed: 0x5eed,
            max_degree: 3,
            max_terms: 3,
        }
    }
}

/// Random homogeneous polynomials over the canonical generators of a
/// phase space. Deterministic for a fixed seed.
pub struct PolySampler<'a> {
    ps: &'a PhaseSpace,
    rng: ChaCha8Rng,
    cfg: SampleConfig,
    extra: Vec<Poly>,
}

impl<'a> PolySampler<'a> {
    pub fn new(ps: &'a PhaseSpace, cfg: SampleConfig) -> Self {
        PolySampler {
            ps,
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            cfg,
            extra: Vec::new(),
        }
    }

    /// Adds homogeneous building blocks (e.g. constraints) that are mixed
    /// into samples alongside plain monomials.
    pub fn with_building_blocks(mut self, blocks: Vec<Poly>) -> Self {
        self.extra = blocks
            .into_iter()
            .filter(|b| b.is_homogeneous() && !b.is_zero())
            .collect();
        self
    }

    fn coefficient(&mut self) -> Coeff {
        let choices = [
            (1, 1, 0),
            (-1, 1, 0),
            (2, 1, 0),
            (1, 2, 0),
            (-3, 2, 0),
            (0, 1, 1),
            (0, 1, -1),
            (1, 1, 1),
        ];
        let (n, dnm, im) = *choices.choose(&mut self.rng).expect("nonempty");
        Coeff::ratio(n, dnm) + Coeff::i() * Coeff::from_int(im)
    }

    fn monomial(&mut self, parity: Parity) -> Option<Poly> {
        let gens = self.ps.canonical_generators();
        if gens.is_empty() {
            return (parity == Parity::Even)
                .then(|| Poly::constant(self.ps.universe(), Coeff::one()));
        }
        for _ in 0..64 {
            let deg = self.rng.gen_range(0..=self.cfg.max_degree);
            let picked: Vec<Generator> = (0..deg)
                .map(|_| *gens.choose(&mut self.rng).expect("nonempty"))
                .collect();
            let p = Poly::product_of(self.ps.universe(), &picked);
            if !p.is_zero() && p.parity() == Some(parity) {
                return Some(p);
            }
        }
        None
    }

    pub fn sample(&mut self, parity: Parity) -> Poly {
        let n = self.rng.gen_range(1..=self.cfg.max_terms);
        let mut out = Poly::zero(self.ps.universe());
        for _ in 0..n {
            let c = self.coefficient();
            let use_block = !self.extra.is_empty() && self.rng.gen_bool(0.3);
            let term = if use_block {
                // block · monomial with the parity that makes the product right
                let block = self.extra.choose(&mut self.rng).expect("nonempty").clone();
                let bp = block.parity().expect("homogeneous");
                let rest = if bp == parity {
                    Parity::Even
                } else {
                    Parity::Odd
                };
                self.monomial(rest).map(|m| block * m)
            } else {
                self.monomial(parity)
            };
            if let Some(t) = term {
                out = out + t.scale(&c);
            }
        }
        out
    }

    pub fn sample_slot(&mut self, slot: Slot) -> Poly {
        let parity = slot.unwrap_or_else(|| {
            if self.rng.gen_bool(0.5) {
                Parity::Even
            } else {
                Parity::Odd
            }
        });
        self.sample(parity)
    }
}

/// Checks all eight identities on `cfg.samples` random argument tuples each.
pub fn verify_graded_algebra(
    br: &dyn Bracket,
    cfg: SampleConfig,
    universe: &Universe,
) -> Result<AlgebraReport, BracketError> {
    verify_graded_algebra_with_blocks(br, cfg, universe, Vec::new())
}

/// As [`verify_graded_algebra`], mixing the given building blocks into the
/// random samples.
pub fn verify_graded_algebra_with_blocks(
    br: &dyn Bracket,
    cfg: SampleConfig,
    universe: &Universe,
    blocks: Vec<Poly>,
) -> Result<AlgebraReport, BracketError> {
    let mut sampler = PolySampler::new(br.phase_space(), cfg).with_building_blocks(blocks);
    let mut results = Vec::new();
    for id in Identity::ALL {
        let slots = id.slots();
        let mut counterexample = None;
        let mut checked = 0;
        for _ in 0..cfg.samples {
            let args: Vec<Poly> = slots.iter().map(|&s| sampler.sample_slot(s)).collect();
            checked += 1;
            if !id.residual(br, &args)?.is_zero() {
                counterexample = Some(record_failure(id, br, &args, universe)?);
                break;
            }
        }
        results.push(IdentityResult {
            identity: id,
            label: id.label(),
            passed: counterexample.is_none(),
            checked,
            counterexample,
        });
    }
    Ok(AlgebraReport {
        bracket: br.name().to_string(),
        seed: Some(cfg.seed),
        results,
    })
}

/// Every monomial (coefficient one) over the canonical generators with
/// total degree at most `max_degree`.
pub fn monomial_basis(ps: &PhaseSpace, max_degree: u32) -> Vec<Poly> {
    fn go(
        gens: &[Generator],
        start: usize,
        left: u32,
        acc: &mut Vec<Generator>,
        out: &mut Vec<Vec<Generator>>,
    ) {
        out.push(acc.clone());
        if left == 0 {
            return;
        }
        for k in start..gens.len() {
            let g = gens[k];
            // odd generators at most once; even ones may repeat
            let next = if g.parity() == Parity::Odd { k + 1 } else { k };
            acc.push(g);
            go(gens, next, left - 1, acc, out);
            acc.pop();
        }
    }
    let gens = ps.canonical_generators();
    let mut seqs = Vec::new();
    go(&gens, 0, max_degree, &mut Vec::new(), &mut seqs);
    seqs.iter()
        .map(|s| Poly::product_of(ps.universe(), s))
        .collect()
}

/// Checks every identity on every tuple drawn from `basis` that fits the
/// identity's parity slots.
pub fn verify_graded_algebra_exhaustive(
    br: &dyn Bracket,
    basis: &[Poly],
    universe: &Universe,
) -> Result<AlgebraReport, BracketError> {
    let mut by_parity: HashMap<Parity, Vec<&Poly>> = HashMap::new();
    for p in basis {
        if let Some(par) = p.parity() {
            by_parity.entry(par).or_default().push(p);
        }
    }
    let all: Vec<&Poly> = basis.iter().collect();
    let pool = |s: Slot| -> Vec<&Poly> {
        match s {
            None => all.clone(),
            Some(p) => by_parity.get(&p).cloned().unwrap_or_default(),
        }
    };
    let mut results = Vec::new();
    for id in Identity::ALL {
        let pools: Vec<Vec<&Poly>> = id.slots().into_iter().map(pool).collect();
        let mut checked = 0;
        let mut counterexample = None;
        let mut idx = vec![0usize; pools.len()];
        if pools.iter().all(|p| !p.is_empty()) {
            'outer: loop {
                let args: Vec<Poly> = idx.iter().zip(&pools).map(|(&i, p)| p[i].clone()).collect();
                checked += 1;
                if !id.residual(br, &args)?.is_zero() {
                    counterexample = Some(record_failure(id, br, &args, universe)?);
                    break;
                }
                // odometer increment
                let mut k = idx.len();
                loop {
                    if k == 0 {
                        break 'outer;
                    }
                    k -= 1;
                    idx[k] += 1;
                    if idx[k] < pools[k].len() {
                        break;
                    }
                    idx[k] = 0;
                }
            }
        }
        results.push(IdentityResult {
            identity: id,
            label: id.label(),
            passed: counterexample.is_none(),
            checked,
            counterexample,
        });
    }
    Ok(AlgebraReport {
        bracket: br.name().to_string(),
        seed: None,
        results,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Toy {
        u: Universe,
        ps: PhaseSpace,
        q: Generator,
        p: Generator,
        th: Generator,
        pi: Generator,
        tb: Generator,
        pib: Generator,
    }

    fn toy() -> Toy {
        let mut u = Universe::new();
        let q = u.add("q", Parity::Even).unwrap();
        let p = u.add("p", Parity::Even).unwrap();
        let th = u.add("th", Parity::Odd).unwrap();
        let pi = u.add("pi", Parity::Odd).unwrap();
        let tb = u.add("thbar", Parity::Odd).unwrap();
        let pib = u.add("pibar", Parity::Odd).unwrap();
        let ps = PhaseSpace::new(
            u.id(),
            vec![
                CanonicalPair::new(q, p, PairKind::Even),
                CanonicalPair::new(th, pi, PairKind::OddRight),
                CanonicalPair::new(tb, pib, PairKind::OddLeft),
            ],
            vec![],
        )
        .unwrap();
        Toy {
            u,
            ps,
            q,
            p,
            th,
            pi,
            tb,
            pib,
        }
    }

    #[test]
    fn canonical_pairs() {
        let t = toy();
        let v = Poly::var;
        let one = t.u.one();
        assert_eq!(gpb(&v(t.q), &v(t.p), &t.ps).unwrap(), one);
        assert_eq!(gpb(&v(t.th), &v(t.pi), &t.ps).unwrap(), one);
        assert_eq!(gpb(&v(t.pi), &v(t.th), &t.ps).unwrap(), one);
        assert_eq!(gpb(&v(t.tb), &v(t.pib), &t.ps).unwrap(), -&one);
        assert_eq!(gpb(&v(t.pib), &v(t.tb), &t.ps).unwrap(), -&one);
        assert!(gpb(&v(t.th), &v(t.tb), &t.ps).unwrap().is_zero());
    }

    #[test]
    fn outside_generators_rejected() {
        let mut t = toy();
        let stray = t.u.add("stray", Parity::Even).unwrap();
        assert!(matches!(
            gpb(&Poly::var(stray), &Poly::var(t.q), &t.ps),
            Err(BracketError::OutsidePhaseSpace(_))
        ));
    }

    #[test]
    fn pair_kind_parity_enforced() {
        let mut u = Universe::new();
        let q = u.add("q", Parity::Even).unwrap();
        let pi = u.add("pi", Parity::Odd).unwrap();
        assert!(PhaseSpace::new(
            u.id(),
            vec![CanonicalPair::new(q, pi, PairKind::Even)],
            vec![]
        )
        .is_err());
    }

    #[test]
    fn free_particle_time_derivative() {
        let t = toy();
        let h = Poly::var(t.p).pow(2).scale(&Coeff::ratio(1, 2));
        assert_eq!(
            time_derivative(&Poly::var(t.q), &h, &t.ps).unwrap(),
            Poly::var(t.p)
        );
        assert!(
            time_derivative(&t.u.constant(Coeff::from_int(7)), &h, &t.ps)
                .unwrap()
                .is_zero()
        );
        assert_eq!(
            time_derivative(&Poly::var(t.q), &Poly::var(t.th), &t.ps),
            Err(BracketError::OddHamiltonian)
        );
    }

    #[test]
    fn fermionic_flow_matches_even_odd_formula() {
        // H = i m thbar th ; [th, H] by direct expansion of the even-slot
        // formula: only the θ̄/π̄ and θ/π terms can contribute and both
        // need momenta in H, so the flow vanishes.
        let t = toy();
        let h = (Poly::var(t.tb) * Poly::var(t.th)).scale(&Coeff::i());
        assert!(time_derivative(&Poly::var(t.th), &h, &t.ps)
            .unwrap()
            .is_zero());
        // [pi, H] = -∂ᴿH/∂θ = -(i thbar)
        let flow = time_derivative(&Poly::var(t.pi), &h, &t.ps).unwrap();
        assert_eq!(flow, -Poly::var(t.tb).scale(&Coeff::i()));
        // [pibar, H] = -∂ᴸH/∂θ̄ · ... = -(i th)
        let flow = time_derivative(&Poly::var(t.pib), &h, &t.ps).unwrap();
        assert_eq!(flow, -Poly::var(t.th).scale(&Coeff::i()));
    }

    #[test]
    fn gpb_graded_algebra_random() {
        let t = toy();
        let br = PoissonBracket::new(&t.ps);
        let report = verify_graded_algebra(
            &br,
            SampleConfig {
                samples: 60,
                ..Default::default()
            },
            &t.u,
        )
        .unwrap();
        assert!(report.all_passed(), "{report:#?}");
    }

    #[test]
    fn parity_of_bracket() {
        let t = toy();
        let mut s = PolySampler::new(&t.ps, SampleConfig::default());
        for _ in 0..40 {
            for (pa, pb) in [
                (Parity::Even, Parity::Even),
                (Parity::Even, Parity::Odd),
                (Parity::Odd, Parity::Odd),
            ] {
                let (a, b) = (s.sample(pa), s.sample(pb));
                let r = gpb(&a, &b, &t.ps).unwrap();
                if !r.is_zero() {
                    assert_eq!(r.parity(), Some(pa.combine(pb)));
                }
            }
        }
    }

    #[test]
    fn derivation_in_even_slot() {
        let t = toy();
        let mut s = PolySampler::new(
            &t.ps,
            SampleConfig {
                seed: 7,
                ..Default::default()
            },
        );
        for _ in 0..40 {
            let e = s.sample(Parity::Even);
            let f = s.sample_slot(None);
            let g = s.sample_slot(None);
            let lhs = gpb(&e, &(&f * &g), &t.ps).unwrap();
            let rhs = gpb(&e, &f, &t.ps).unwrap() * &g + &f * gpb(&e, &g, &t.ps).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn monomial_basis_counts() {
        let t = toy();
        // 2 even + 4 odd generators, degree ≤ 2: 1 + 6 + (3 + 8 + 6)
        assert_eq!(monomial_basis(&t.ps, 2).len(), 24);
    }

    #[test]
    fn shrinking_keeps_a_failing_witness() {
        struct Broken<'a>(&'a PhaseSpace);
        impl Bracket for Broken<'_> {
            fn name(&self) -> &str {
                "broken"
            }
            fn phase_space(&self) -> &PhaseSpace {
                self.0
            }
            fn bracket(&self, f: &Poly, g: &Poly) -> Result<Poly, BracketError> {
                // plain product: symmetric on even arguments
                Ok(f * g)
            }
        }
        let t = toy();
        let br = Broken(&t.ps);
        let report = verify_graded_algebra(&br, SampleConfig::default(), &t.u).unwrap();
        let anti = report.result(Identity::Antisymmetry);
        assert!(!anti.passed);
        assert!(anti.counterexample.is_some());
        let _ = (t.pib, t.pi);
    }
}
