use serde::Serialize;

use crate::bracket::gpb;
use crate::grassmann::{Generator, Poly};

use super::legendre::momentum_side;
use super::{Analysis, ConstraintError};

/// Residuals of `p ≈ ∂L/∂ẋ` and `ṗ ≈ ∂L/∂x` with every velocity replaced
/// by its Hamiltonian flow `[x, H_T]`.
#[derive(Debug, Clone, Serialize)]
pub struct FlowCheck {
    pub coordinates: Vec<String>,
    pub momentum_residuals: Vec<String>,
    pub euler_lagrange_residuals: Vec<String>,
    pub passed: bool,
}

pub fn check_flow_matches_euler_lagrange(a: &Analysis) -> Result<FlowCheck, ConstraintError> {
    let sys = &a.system;
    let ps = &sys.phase_space;
    let h = &a.suite.total;
    let reducer = a.reducer()?;
    let flows: Vec<(Generator, Poly)> = sys
        .coordinates
        .iter()
        .map(|c| Ok((c.velocity, gpb(&Poly::var(c.position), h, ps)?)))
        .collect::<Result<_, ConstraintError>>()?;

    let u = &sys.universe;
    let mut out = FlowCheck {
        coordinates: Vec::new(),
        momentum_residuals: Vec::new(),
        euler_lagrange_residuals: Vec::new(),
        passed: true,
    };
    for (k, c) in sys.coordinates.iter().enumerate() {
        let p = Poly::var(sys.momenta[k]);
        let def = sys.momentum_definitions[k].substitute_all(&flows)?;
        let r1 = reducer.reduce(&(def - &p))?;
        let force = sys
            .lagrangian
            .derivative(c.position, momentum_side(c.kind))?
            .substitute_all(&flows)?;
        let r2 = reducer.reduce(&(gpb(&p, h, ps)? - force))?;
        out.passed &= r1.is_zero() && r2.is_zero();
        out.coordinates.push(u.name(c.position).to_string());
        out.momentum_residuals.push(r1.display(u).to_string());
        out.euler_lagrange_residuals.push(r2.display(u).to_string());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::{analyze, library};
    use super::*;

    #[test]
    fn bundled_models_flow_correctly() {
        for model in [
            library::gauge_toy(),
            library::fermionic_oscillator(),
            library::simple_fermion(),
            library::harmonic_oscillator(),
        ] {
            let a = analyze(&model).unwrap();
            let check = check_flow_matches_euler_lagrange(&a).unwrap();
            assert!(check.passed, "{check:?}");
        }
    }
}
