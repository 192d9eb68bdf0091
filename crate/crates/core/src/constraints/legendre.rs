use crate::bracket::{CanonicalPair, PairKind, PhaseSpace};
use crate::coeff::Coeff;
use crate::grassmann::{Generator, Monomial, Poly, Side, Universe};
use crate::linalg::ExactMatrix;

use super::model::{Coordinate, LagrangianModel};
use super::reduce::normalize;
use super::{Constraint, ConstraintError};

/// Result of the Legendre transform: canonical variables, momentum
/// definitions, primary constraints and the canonical Hamiltonian.
#[derive(Debug, Clone)]
pub struct HamiltonianSystem {
    pub universe: Universe,
    pub phase_space: PhaseSpace,
    pub coordinates: Vec<Coordinate>,
    /// Momentum conjugate to each coordinate, in the same order.
    pub momenta: Vec<Generator>,
    /// `∂L/∂ẋ` for each coordinate, as functions of positions and velocities.
    pub momentum_definitions: Vec<Poly>,
    /// Velocities expressed through momenta; undetermined velocities map to zero.
    pub velocity_solution: Vec<(Generator, Poly)>,
    pub free_velocities: Vec<Generator>,
    pub parameters: Vec<Generator>,
    pub lagrangian: Poly,
    pub hamiltonian: Poly,
    pub primary: Vec<Constraint>,
}

impl HamiltonianSystem {
    pub fn momentum_of(&self, position: Generator) -> Option<Generator> {
        self.coordinates
            .iter()
            .position(|c| c.position == position)
            .map(|k| self.momenta[k])
    }

    /// Adds a central parameter (multiplier, evolution parameter).
    pub fn add_central(
        &mut self,
        stem: &str,
        parity: crate::grassmann::Parity,
    ) -> Result<Generator, ConstraintError> {
        let g = self.universe.fresh(stem, parity);
        self.phase_space.add_central(g)?;
        Ok(g)
    }
}

/// Side for `p = ∂L/∂ẋ`: right for even and θ-type, left for θ̄-type.
pub(crate) fn momentum_side(kind: PairKind) -> Side {
    match kind {
        PairKind::OddLeft => Side::Left,
        _ => Side::Right,
    }
}

/// `Σ p q̇ + Σ π θ̇ + Σ θ̄̇ π̄`, the velocity-momentum pairing in `H`.
fn pairing(c: &Coordinate, p: Generator) -> Poly {
    match c.kind {
        PairKind::OddLeft => Poly::var(c.velocity) * Poly::var(p),
        _ => Poly::var(p) * Poly::var(c.velocity),
    }
}

pub fn legendre(model: &LagrangianModel) -> Result<HamiltonianSystem, ConstraintError> {
    let mut universe = model.universe.clone();
    let coords = model.coordinates.clone();
    let n = coords.len();
    let velocities: Vec<Generator> = coords.iter().map(|c| c.velocity).collect();

    let mut momenta = Vec::with_capacity(n);
    for c in &coords {
        let stem = match c.kind {
            PairKind::Even => format!("p_{}", universe.name(c.position)),
            _ => format!("pi_{}", universe.name(c.position)),
        };
        momenta.push(universe.fresh(&stem, c.kind.parity()));
    }
    let pairs = coords
        .iter()
        .zip(&momenta)
        .map(|(c, &p)| CanonicalPair::new(c.position, p, c.kind))
        .collect();
    let phase_space = PhaseSpace::new(universe.id(), pairs, model.parameters.clone())?;

    // p_k = A_k + Σ_j M_kj v_j
    let mut definitions = Vec::with_capacity(n);
    let mut affine = Vec::with_capacity(n);
    let mut hessian = ExactMatrix::zeros(n, n);
    for (k, c) in coords.iter().enumerate() {
        let def = model
            .lagrangian
            .derivative(c.velocity, momentum_side(c.kind))?;
        let mut a = Poly::zero(universe.id());
        for (m, coeff) in def.terms() {
            let vel_count: u32 = velocities.iter().map(|&v| m.exponent(v)).sum();
            if vel_count == 0 {
                a = a + Poly::from_term(universe.id(), m.clone(), coeff.clone());
                continue;
            }
            let j = velocities.iter().position(|&v| m == &Monomial::linear(v));
            match j {
                Some(j) if vel_count == 1 => hessian.set(k, j, hessian.get(k, j) + coeff),
                _ => {
                    return Err(ConstraintError::Unsupported(format!(
                        "momentum of {} is not affine in the velocities with constant coefficients",
                        universe.name(c.position)
                    )))
                }
            }
        }
        definitions.push(def);
        affine.push(a);
    }

    let augmented = ExactMatrix::from_fn(n, 2 * n, |r, c| {
        if c < n {
            hessian.get(r, c).clone()
        } else if c - n == r {
            Coeff::one()
        } else {
            Coeff::zero()
        }
    });
    let (red, pivots) = augmented.rref();
    let combination = |row: usize| -> Poly {
        (0..n).fold(Poly::zero(universe.id()), |acc, k| {
            let t = red.get(row, n + k);
            if t.is_zero() {
                acc
            } else {
                acc + (Poly::var(momenta[k]) - affine[k].clone()).scale(t)
            }
        })
    };
    let mut solution = Vec::new();
    let mut primary = Vec::new();
    let mut pivot_velocities = Vec::new();
    for (row, &pc) in pivots.iter().enumerate() {
        if pc < n {
            pivot_velocities.push(velocities[pc]);
            solution.push((velocities[pc], combination(row)));
        } else {
            let phi = combination(row);
            primary.push(Constraint::primary(normalize(&phi, &phase_space)));
        }
    }
    let free: Vec<Generator> = velocities
        .iter()
        .copied()
        .filter(|v| !pivot_velocities.contains(v))
        .collect();
    for &v in &free {
        solution.push((v, Poly::zero(universe.id())));
    }

    let pairing_sum = coords
        .iter()
        .zip(&momenta)
        .fold(Poly::zero(universe.id()), |acc, (c, &p)| {
            acc + pairing(c, p)
        });
    let hamiltonian = (pairing_sum - model.lagrangian.clone()).substitute_all(&solution)?;
    if let Some(&v) = velocities.iter().find(|&&v| hamiltonian.mentions(v)) {
        return Err(ConstraintError::Unsupported(format!(
            "velocity {} could not be eliminated from the Hamiltonian",
            universe.name(v)
        )));
    }
    Ok(HamiltonianSystem {
        universe,
        phase_space,
        coordinates: coords,
        momenta,
        momentum_definitions: definitions,
        velocity_solution: solution,
        free_velocities: free,
        parameters: model.parameters.clone(),
        lagrangian: model.lagrangian.clone(),
        hamiltonian,
        primary,
    })
}
