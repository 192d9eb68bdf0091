//! Dirac–Bergmann analysis of Lagrangians with even and odd variables:
//! Legendre transform, constraint propagation, first/second-class
//! separation, Hamiltonians, gauge transformations and Dirac brackets.

mod classify;
mod dirac;
mod flow;
mod hamiltonian;
mod legendre;
mod model;
mod naive;
mod propagate;
mod reduce;

use serde::Serialize;
use thiserror::Error;

use crate::bracket::BracketError;
use crate::grassmann::{GrassmannError, Poly, Universe};

pub use classify::{classify, gram_matrix};
pub use dirac::{BracketVariant, DiracBracket};
pub use flow::{check_flow_matches_euler_lagrange, FlowCheck};
pub use hamiltonian::{build_hamiltonian_suite, gauge_transform, HamiltonianSuite};
pub use legendre::{legendre, HamiltonianSystem};
pub use model::{library, Coordinate, LagrangianModel, ModelBuilder};
pub use naive::{naive_fragility_table, naive_quantization_check, NaiveCell, NaiveReport};
pub use propagate::{propagate_constraints, MultiplierSolution};
pub use reduce::{normalize, Extension, Reducer};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstraintError {
    #[error(transparent)]
    Bracket(#[from] BracketError),
    #[error(transparent)]
    Grassmann(#[from] GrassmannError),
    #[error("the Lagrangian must be even; offending term: {0}")]
    OddLagrangian(String),
    #[error("contradictory Euler-Lagrange equations: consistency requires {0} = 0")]
    Inconsistent(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("constraint #{0} is not a first-class primary constraint")]
    NotFirstClassPrimary(usize),
    #[error("the second-class constraint matrix is singular")]
    SingularConstraintMatrix,
    #[error("constraint propagation did not terminate after {0} stages")]
    NoConvergence(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Stage {
    Primary,
    /// Produced at the given propagation level (1 for the first secondary stage).
    Secondary(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClassTag {
    First,
    Second,
    Unclassified,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub expr: Poly,
    pub stage: Stage,
    pub class: ClassTag,
}

impl Constraint {
    pub fn primary(expr: Poly) -> Self {
        Constraint {
            expr,
            stage: Stage::Primary,
            class: ClassTag::Unclassified,
        }
    }

    pub fn is_first_class_primary(&self) -> bool {
        self.stage == Stage::Primary && self.class == ClassTag::First
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConstraintSet {
    pub constraints: Vec<Constraint>,
}

impl ConstraintSet {
    pub fn new(constraints: Vec<Constraint>) -> Self {
        ConstraintSet { constraints }
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Constraint> {
        self.constraints.iter()
    }

    pub fn exprs(&self) -> Vec<Poly> {
        self.constraints.iter().map(|c| c.expr.clone()).collect()
    }

    pub fn of_class(&self, class: ClassTag) -> Vec<&Constraint> {
        self.constraints
            .iter()
            .filter(|c| c.class == class)
            .collect()
    }

    pub fn second_class(&self) -> Vec<Poly> {
        self.of_class(ClassTag::Second)
            .into_iter()
            .map(|c| c.expr.clone())
            .collect()
    }

    pub fn first_class(&self) -> Vec<Poly> {
        self.of_class(ClassTag::First)
            .into_iter()
            .map(|c| c.expr.clone())
            .collect()
    }

    /// Rows for a report: (expression, stage, class).
    pub fn table(&self, universe: &Universe) -> Vec<(String, Stage, ClassTag)> {
        self.constraints
            .iter()
            .map(|c| (c.expr.display(universe).to_string(), c.stage, c.class))
            .collect()
    }
}

/// Everything the pipeline derives from a Lagrangian model.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub system: HamiltonianSystem,
    pub constraints: ConstraintSet,
    pub multipliers: MultiplierSolution,
    pub suite: HamiltonianSuite,
}

impl Analysis {
    pub fn universe(&self) -> &Universe {
        &self.system.universe
    }

    pub fn reducer(&self) -> Result<Reducer, ConstraintError> {
        Reducer::new(&self.constraints.exprs(), &self.system.phase_space)
    }

    pub fn dirac_bracket(
        &self,
        variant: BracketVariant,
    ) -> Result<DiracBracket<'_>, ConstraintError> {
        DiracBracket::new(&self.system.phase_space, &self.constraints, variant)
    }
}

/// Legendre transform, propagation, classification and Hamiltonian suite.
pub fn analyze(model: &LagrangianModel) -> Result<Analysis, ConstraintError> {
    let mut system = legendre(model)?;
    let (found, multipliers) = propagate_constraints(&mut system)?;
    let constraints = classify(&found, &system.phase_space)?;
    let suite = build_hamiltonian_suite(&mut system, &constraints, &multipliers)?;
    Ok(Analysis {
        system,
        constraints,
        multipliers,
        suite,
    })
}
