use serde::Serialize;

use crate::bracket::{Bracket, PairKind};
use crate::coeff::Coeff;
use crate::grassmann::{Generator, Monomial, Poly, Side};

use super::dirac::BracketVariant;
use super::model::{library, LagrangianModel};
use super::{analyze, ConstraintError};

/// The shortcut of treating `θ̄` as `π/c` (from the constraint `π ≈ cθ̄`)
/// and using an ordinary Poisson bracket on the pair `(θ, π)`.
#[derive(Debug, Clone, Serialize)]
pub struct NaiveReport {
    /// `c` in `π ≈ c θ̄`.
    pub momentum_coefficient: String,
    /// Shortcut value of `[θ, θ̄]`.
    pub forward: String,
    /// Shortcut value of `[θ̄, θ]`.
    pub reverse: String,
    /// Dirac-bracket value of `[θ, θ̄]`.
    pub dirac: String,
    /// Dirac-bracket value of `[θ̄, θ]`.
    pub dirac_reverse: String,
    pub forward_agrees: bool,
    /// Whether the shortcut `[θ̄, θ]` equals the Dirac-bracket `[θ̄, θ]`.
    pub reverse_agrees: bool,
}

/// Ordinary (ungraded) Poisson bracket on one pair.
fn plain_pb(x: &Poly, y: &Poly, q: Generator, p: Generator) -> Result<Poly, ConstraintError> {
    let d = |f: &Poly, g| f.derivative(g, Side::Left);
    Ok(d(x, q)? * d(y, p)? - d(x, p)? * d(y, q)?)
}

fn constant(p: &Poly) -> Result<Coeff, ConstraintError> {
    p.as_constant()
        .ok_or_else(|| ConstraintError::Unsupported("non-constant bracket in the shortcut".into()))
}

pub fn naive_quantization_check(model: &LagrangianModel) -> Result<NaiveReport, ConstraintError> {
    let unsupported =
        || ConstraintError::Unsupported("expected one θ-type and one θ̄-type variable".into());
    let [a, b] = model.coordinates.as_slice() else {
        return Err(unsupported());
    };
    let (right, left) = match (a.kind, b.kind) {
        (PairKind::OddRight, PairKind::OddLeft) => (a, b),
        (PairKind::OddLeft, PairKind::OddRight) => (b, a),
        _ => return Err(unsupported()),
    };
    let analysis = analyze(model)?;
    let sys = &analysis.system;
    let (th, tb) = (right.position, left.position);
    let pi = sys.momentum_of(th).expect("momentum exists");
    let chi = sys
        .primary
        .iter()
        .map(|c| &c.expr)
        .find(|e| e.mentions(pi))
        .ok_or_else(|| ConstraintError::Unsupported("no primary constraint for π".into()))?;
    let c = -chi.coefficient(&Monomial::linear(tb));
    let expected = Poly::var(pi) - Poly::var(tb).scale(&c);
    if c.is_zero() || chi != &expected {
        return Err(ConstraintError::Unsupported(
            "the constraint on π is not of the form π − cθ̄".into(),
        ));
    }

    let theta = Poly::var(th);
    let thetabar = Poly::var(pi).scale(&c.inv().expect("nonzero"));
    let forward = constant(&plain_pb(&theta, &thetabar, th, pi)?)?;
    let reverse = constant(&plain_pb(&thetabar, &theta, th, pi)?)?;

    let gd = analysis.dirac_bracket(BracketVariant::Standard)?;
    let dirac = constant(&gd.bracket(&Poly::var(th), &Poly::var(tb))?)?;
    let dirac_rev = constant(&gd.bracket(&Poly::var(tb), &Poly::var(th))?)?;
    Ok(NaiveReport {
        momentum_coefficient: c.to_string(),
        forward: forward.to_string(),
        reverse: reverse.to_string(),
        dirac: dirac.to_string(),
        dirac_reverse: dirac_rev.to_string(),
        forward_agrees: forward == dirac,
        reverse_agrees: reverse == dirac_rev,
    })
}

/// One cell of the (Lagrangian × argument order) table.
#[derive(Debug, Clone, Serialize)]
pub struct NaiveCell {
    pub lagrangian: &'static str,
    pub ordering: &'static str,
    pub shortcut: String,
    pub dirac: String,
    pub agrees: bool,
}

/// The shortcut for `L = iθ̄θ̇ − mθ̄θ` and for the symmetrized Lagrangian,
/// in both argument orders.
pub fn naive_fragility_table() -> Result<Vec<NaiveCell>, ConstraintError> {
    let mut cells = Vec::new();
    for (label, model) in [
        ("simple", library::simple_fermion()),
        ("symmetrized", library::fermionic_oscillator()),
    ] {
        let r = naive_quantization_check(&model)?;
        cells.push(NaiveCell {
            lagrangian: label,
            ordering: "(theta, thetabar)",
            shortcut: r.forward.clone(),
            dirac: r.dirac.clone(),
            agrees: r.forward_agrees,
        });
        cells.push(NaiveCell {
            lagrangian: label,
            ordering: "(thetabar, theta)",
            shortcut: r.reverse.clone(),
            dirac: r.dirac_reverse.clone(),
            agrees: r.reverse_agrees,
        });
    }
    Ok(cells)
}
