use crate::bracket::{gpb, PhaseSpace};
use crate::coeff::Coeff;
use crate::grassmann::{Generator, Parity, Poly};

use super::legendre::HamiltonianSystem;
use super::propagate::{with_multipliers, MultiplierSolution};
use super::{ConstraintError, ConstraintSet};

/// `H`, `H′ = H + U^m φ_m`, `H_T = H′ + v^a φ_a`, `H_E = H′ + w^b γ_b`.
#[derive(Debug, Clone)]
pub struct HamiltonianSuite {
    pub canonical: Poly,
    pub first_class: Poly,
    pub total: Poly,
    pub extended: Poly,
    /// `φ_a = V_a^m φ_m`, the primary combinations with free multipliers.
    pub gauge_generators: Vec<Poly>,
    pub total_multipliers: Vec<Generator>,
    /// Every first-class constraint `γ_b`.
    pub first_class_constraints: Vec<Poly>,
    pub extended_multipliers: Vec<Generator>,
    /// Evolution parameter used by [`gauge_transform`].
    pub tau: Generator,
}

fn parity_of(p: &Poly) -> Result<Parity, ConstraintError> {
    p.parity()
        .ok_or_else(|| ConstraintError::Unsupported("constraint of mixed parity".into()))
}

pub fn build_hamiltonian_suite(
    sys: &mut HamiltonianSystem,
    constraints: &ConstraintSet,
    sol: &MultiplierSolution,
) -> Result<HamiltonianSuite, ConstraintError> {
    let uid = sys.universe.id();
    let h = sys.hamiltonian.clone();
    let h_prime = sol
        .particular
        .iter()
        .zip(&sol.primary)
        .fold(h.clone(), |acc, (u, phi)| acc + u * phi);

    let gauge_generators: Vec<Poly> = sol
        .homogeneous_basis
        .iter()
        .map(|v| sol.combine(v, uid))
        .collect();
    let mut total_multipliers = Vec::new();
    for (a, phi) in gauge_generators.iter().enumerate() {
        total_multipliers.push(sys.add_central(&format!("v{}", a + 1), parity_of(phi)?)?);
    }
    let total = with_multipliers(&h_prime, &total_multipliers, &gauge_generators);

    let first_class_constraints = constraints.first_class();
    let mut extended_multipliers = Vec::new();
    for (b, gamma) in first_class_constraints.iter().enumerate() {
        extended_multipliers.push(sys.add_central(&format!("w{}", b + 1), parity_of(gamma)?)?);
    }
    let extended = with_multipliers(&h_prime, &extended_multipliers, &first_class_constraints);
    let tau = sys.add_central("tau", Parity::Even)?;

    Ok(HamiltonianSuite {
        canonical: h,
        first_class: h_prime,
        total,
        extended,
        gauge_generators,
        total_multipliers,
        first_class_constraints,
        extended_multipliers,
        tau,
    })
}

/// Change of `F` after evolving for time `τ` with `v^a → v^a + δv^a`,
/// expanded to first or second order in `τ`.
///
/// `delta` maps constraint indices into `constraints` to central
/// coefficients; every indexed constraint must be first-class primary.
pub fn gauge_transform(
    f: &Poly,
    delta: &[(usize, Poly)],
    order: u8,
    suite: &HamiltonianSuite,
    constraints: &ConstraintSet,
    ps: &PhaseSpace,
) -> Result<Poly, ConstraintError> {
    if !(1..=2).contains(&order) {
        return Err(ConstraintError::Unsupported(format!(
            "gauge expansion of order {order}"
        )));
    }
    let mut shift = Poly::zero(ps.universe());
    for (idx, dv) in delta {
        let c = constraints
            .constraints
            .get(*idx)
            .filter(|c| c.is_first_class_primary())
            .ok_or(ConstraintError::NotFirstClassPrimary(*idx))?;
        if let Some(id) = dv
            .support()
            .into_iter()
            .find(|&id| !ps.central().iter().any(|g| g.id() == id))
        {
            return Err(ConstraintError::Unsupported(format!(
                "gauge parameter depends on canonical variable #{id}"
            )));
        }
        shift = shift + dv * &c.expr;
    }
    if shift.parity() != Some(Parity::Even) {
        return Err(ConstraintError::Unsupported(
            "gauge parameters of the wrong parity".into(),
        ));
    }
    let tau = Poly::var(suite.tau);
    let h = &suite.total;
    let h2 = h + &shift;
    let first = gpb(f, &h2, ps)? - gpb(f, h, ps)?;
    let mut out = &tau * &first;
    if order == 2 {
        let second = gpb(&gpb(f, &h2, ps)?, &h2, ps)? - gpb(&gpb(f, h, ps)?, h, ps)?;
        out = out + (tau.pow(2) * second).scale(&Coeff::ratio(1, 2));
    }
    Ok(out)
}
