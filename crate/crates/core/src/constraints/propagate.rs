use crate::bracket::gpb;
use crate::coeff::Coeff;
use crate::grassmann::{Generator, Poly, Side};
use crate::linalg::ExactMatrix;

use super::legendre::HamiltonianSystem;
use super::reduce::{Extension, Reducer};
use super::{Constraint, ConstraintError, ConstraintSet, Stage};

const MAX_STAGES: usize = 64;

/// Solution of the consistency conditions for the primary multipliers:
/// `u^m = U^m + Σ_a v^a V_a^m` with the `v^a` arbitrary.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplierSolution {
    /// One multiplier per primary constraint.
    pub multipliers: Vec<Generator>,
    pub primary: Vec<Poly>,
    /// `U^m`, with every undetermined multiplier set to zero.
    pub particular: Vec<Poly>,
    /// The `V_a`, one coefficient vector over primary constraints each.
    pub homogeneous_basis: Vec<Vec<Coeff>>,
}

impl MultiplierSolution {
    /// `Σ_m coeffs_m φ_m`.
    pub fn combine(&self, coeffs: &[Coeff], universe: crate::grassmann::UniverseId) -> Poly {
        coeffs
            .iter()
            .zip(&self.primary)
            .fold(Poly::zero(universe), |acc, (c, phi)| acc + phi.scale(c))
    }
}

/// `H + Σ u^m φ_m`, multiplier on the left.
pub(crate) fn with_multipliers(h: &Poly, multipliers: &[Generator], phis: &[Poly]) -> Poly {
    multipliers
        .iter()
        .zip(phis)
        .fold(h.clone(), |acc, (&u, phi)| acc + Poly::var(u) * phi)
}

/// Demands `[φ_j, H_T] ≈ 0` for every constraint, adding secondary
/// constraints until the conditions only restrict the multipliers.
pub fn propagate_constraints(
    sys: &mut HamiltonianSystem,
) -> Result<(ConstraintSet, MultiplierSolution), ConstraintError> {
    let primary: Vec<Poly> = sys.primary.iter().map(|c| c.expr.clone()).collect();
    let mut multipliers = Vec::with_capacity(primary.len());
    for (m, phi) in primary.iter().enumerate() {
        let parity = phi
            .parity()
            .ok_or_else(|| ConstraintError::Unsupported("constraint of mixed parity".into()))?;
        multipliers.push(sys.add_central(&format!("u{}", m + 1), parity)?);
    }
    let u_ids: Vec<u32> = multipliers.iter().map(|g| g.id()).collect();
    let h_total = with_multipliers(&sys.hamiltonian, &multipliers, &primary);
    let ps = sys.phase_space.clone();
    let uid = sys.universe.id();

    let mut constraints: Vec<Constraint> = sys.primary.clone();
    let mut reducer = Reducer::new(&primary, &ps)?;
    let n_u = multipliers.len();

    for level in 1..=MAX_STAGES {
        let rows = constraints.len();
        let mut g = ExactMatrix::zeros(rows, n_u);
        let mut b = Vec::with_capacity(rows);
        for (j, c) in constraints.iter().enumerate() {
            let e = reducer.reduce(&gpb(&c.expr, &h_total, &ps)?)?;
            for (m, &u) in multipliers.iter().enumerate() {
                let coeff = e.derivative(u, Side::Left)?;
                let coeff = coeff.as_constant().ok_or_else(|| {
                    ConstraintError::Unsupported(
                        "consistency conditions with field-dependent multiplier coefficients"
                            .into(),
                    )
                })?;
                g.set(j, m, coeff);
            }
            b.push(e.set_to_zero(&u_ids));
        }

        let aug = ExactMatrix::from_fn(rows, n_u + rows, |r, c| {
            if c < n_u {
                g.get(r, c).clone()
            } else if c - n_u == r {
                Coeff::one()
            } else {
                Coeff::zero()
            }
        });
        let (red, pivots) = aug.rref();
        let combine = |row: usize| -> Poly {
            (0..rows).fold(Poly::zero(uid), |acc, k| {
                let t = red.get(row, n_u + k);
                if t.is_zero() {
                    acc
                } else {
                    acc + b[k].scale(t)
                }
            })
        };

        let mut fresh = Vec::new();
        for (row, &pc) in pivots.iter().enumerate() {
            if pc < n_u {
                continue;
            }
            match reducer.extend(&combine(row))? {
                Extension::Dependent => {}
                Extension::Inconsistent(c) => {
                    return Err(ConstraintError::Inconsistent(c.to_string()))
                }
                Extension::Added { normalized, .. } => fresh.push(Constraint {
                    expr: normalized,
                    stage: Stage::Secondary(level as u32),
                    class: super::ClassTag::Unclassified,
                }),
            }
        }
        if !fresh.is_empty() {
            constraints.extend(fresh);
            continue;
        }

        let mut particular = vec![Poly::zero(uid); n_u];
        for (row, &pc) in pivots.iter().enumerate() {
            if pc < n_u {
                particular[pc] = reducer.reduce(&-combine(row))?;
            }
        }
        let solution = MultiplierSolution {
            multipliers,
            primary,
            particular,
            homogeneous_basis: g.null_space(),
        };
        return Ok((ConstraintSet::new(constraints), solution));
    }
    Err(ConstraintError::NoConvergence(MAX_STAGES))
}

#[cfg(test)]
mod tests {
    use super::super::legendre::legendre;
    use super::super::model::{library, ModelBuilder};
    use super::*;

    #[test]
    fn gauge_toy_secondary() {
        let mut sys = legendre(&library::gauge_toy()).unwrap();
        let (set, sol) = propagate_constraints(&mut sys).unwrap();
        let p1 = Poly::var(sys.universe.lookup("p_q1").unwrap());
        let p2 = Poly::var(sys.universe.lookup("p_q2").unwrap());
        assert_eq!(set.exprs(), vec![p2, p1]);
        assert_eq!(set.constraints[1].stage, Stage::Secondary(1));
        assert_eq!(sol.particular, vec![Poly::zero(sys.universe.id())]);
        assert_eq!(sol.homogeneous_basis, vec![vec![Coeff::one()]]);
    }

    #[test]
    fn fermionic_oscillator_fixes_multipliers() {
        let mut sys = legendre(&library::fermionic_oscillator()).unwrap();
        let (set, sol) = propagate_constraints(&mut sys).unwrap();
        assert_eq!(set.len(), 2);
        assert!(sol.homogeneous_basis.is_empty());
        assert!(sol.particular.iter().all(|u| !u.is_zero()));
    }

    #[test]
    fn regular_system_is_empty() {
        let mut sys = legendre(&library::harmonic_oscillator()).unwrap();
        let (set, sol) = propagate_constraints(&mut sys).unwrap();
        assert!(set.is_empty());
        assert!(sol.multipliers.is_empty() && sol.homogeneous_basis.is_empty());
    }

    #[test]
    fn contradictory_dynamics_detected() {
        // L = q₁: p₁ ≈ 0 but [p₁, H] = 1
        let mut b = ModelBuilder::new();
        let q1 = b.even("q1").unwrap();
        let _q2 = b.even("q2").unwrap();
        let l = Poly::var(q1);
        let model = b.build(l).unwrap();
        let mut sys = legendre(&model).unwrap();
        assert!(matches!(
            propagate_constraints(&mut sys),
            Err(ConstraintError::Inconsistent(_))
        ));
    }
}
