use crate::bracket::PhaseSpace;
use crate::coeff::Coeff;
use crate::grassmann::{Generator, Monomial, Poly};

use super::ConstraintError;

/// Outcome of adding a constraint to a [`Reducer`].
#[derive(Debug, Clone, PartialEq)]
pub enum Extension {
    /// Already implied by the existing constraints.
    Dependent,
    /// Reduces to a nonzero constant.
    Inconsistent(Coeff),
    /// Solved for `generator`; `normalized` is the reduced constraint scaled
    /// so that generator has coefficient one.
    Added {
        generator: Generator,
        normalized: Poly,
    },
}

/// Imposes constraints by eliminating one canonical variable per
/// constraint. Only constraints that are linear in some variable which
/// occurs nowhere else in them can be solved.
#[derive(Debug, Clone)]
pub struct Reducer {
    momenta: Vec<Generator>,
    positions: Vec<Generator>,
    subs: Vec<(Generator, Poly)>,
}

impl Reducer {
    pub fn empty(ps: &PhaseSpace) -> Self {
        Reducer {
            momenta: ps.pairs().iter().map(|p| p.momentum).collect(),
            positions: ps.pairs().iter().map(|p| p.position).collect(),
            subs: Vec::new(),
        }
    }

    pub fn new(constraints: &[Poly], ps: &PhaseSpace) -> Result<Self, ConstraintError> {
        let mut r = Reducer::empty(ps);
        for c in constraints {
            if let Extension::Inconsistent(_) = r.extend(c)? {
                return Err(ConstraintError::Inconsistent(format!("{c:?}")));
            }
        }
        Ok(r)
    }

    /// Substitutions `g → expr` applied by [`Reducer::reduce`].
    pub fn solved(&self) -> &[(Generator, Poly)] {
        &self.subs
    }

    pub fn reduce(&self, f: &Poly) -> Result<Poly, ConstraintError> {
        Ok(f.substitute_all(&self.subs)?)
    }

    pub fn weakly_zero(&self, f: &Poly) -> Result<bool, ConstraintError> {
        Ok(self.reduce(f)?.is_zero())
    }

    pub fn weakly_equal(&self, a: &Poly, b: &Poly) -> Result<bool, ConstraintError> {
        self.weakly_zero(&(a - b))
    }

    fn pick(&self, r: &Poly) -> Option<(Generator, Coeff)> {
        let support = r.support();
        let candidates = self.momenta.iter().chain(&self.positions);
        for &g in candidates {
            if !support.contains(&g.id()) {
                continue;
            }
            let lin = Monomial::linear(g);
            let c = r.coefficient(&lin);
            if c.is_zero() {
                continue;
            }
            let elsewhere = r.terms().any(|(m, _)| m != &lin && m.mentions(g.id()));
            if !elsewhere {
                return Some((g, c));
            }
        }
        None
    }

    pub fn extend(&mut self, constraint: &Poly) -> Result<Extension, ConstraintError> {
        let r = self.reduce(constraint)?;
        if r.is_zero() {
            return Ok(Extension::Dependent);
        }
        if let Some(c) = r.as_constant() {
            return Ok(Extension::Inconsistent(c));
        }
        let Some((g, c)) = self.pick(&r) else {
            return Err(ConstraintError::Unsupported(
                "constraint is not linear in any canonical variable that it contains once".into(),
            ));
        };
        let inv = c.inv().expect("nonzero coefficient");
        let normalized = r.scale(&inv);
        let solution = -(normalized.clone() - Poly::var(g));
        for (_, e) in &mut self.subs {
            *e = e.substitute(g, &solution)?;
        }
        self.subs.push((g, solution));
        Ok(Extension::Added {
            generator: g,
            normalized,
        })
    }
}

/// Scales a constraint so the variable a reducer would solve for has unit
/// coefficient; constraints that cannot be solved are returned unchanged.
pub fn normalize(constraint: &Poly, ps: &PhaseSpace) -> Poly {
    match Reducer::empty(ps).pick(constraint) {
        Some((_, c)) => constraint.scale(&c.inv().expect("nonzero")),
        None => constraint.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::{CanonicalPair, PairKind};
    use crate::grassmann::{Parity, Universe};

    #[test]
    fn solves_momenta_and_back_substitutes() {
        let mut u = Universe::new();
        let q1 = u.add("q1", Parity::Even).unwrap();
        let p1 = u.add("p1", Parity::Even).unwrap();
        let q2 = u.add("q2", Parity::Even).unwrap();
        let p2 = u.add("p2", Parity::Even).unwrap();
        let ps = PhaseSpace::new(
            u.id(),
            vec![
                CanonicalPair::new(q1, p1, PairKind::Even),
                CanonicalPair::new(q2, p2, PairKind::Even),
            ],
            vec![],
        )
        .unwrap();
        let v = Poly::var;
        // p1 - p2 ≈ 0 and 2 p2 - q1 ≈ 0
        let mut r = Reducer::empty(&ps);
        assert!(matches!(
            r.extend(&(v(p1) - v(p2))).unwrap(),
            Extension::Added { .. }
        ));
        let e = r
            .extend(&(v(p2).scale(&Coeff::from_int(2)) - v(q1)))
            .unwrap();
        let Extension::Added { normalized, .. } = e else {
            panic!()
        };
        assert_eq!(normalized, v(p2) - v(q1).scale(&Coeff::ratio(1, 2)));
        assert!(r
            .weakly_zero(&(v(p1) - v(q1).scale(&Coeff::ratio(1, 2))))
            .unwrap());
        assert_eq!(r.extend(&(v(p1) - v(p2))).unwrap(), Extension::Dependent);
        assert!(matches!(
            r.extend(&(v(p1) - v(p2) + u.one())).unwrap(),
            Extension::Inconsistent(_)
        ));
    }
}
