//! The free Dirac field on a periodic spatial lattice.
//!
//! Fields carry a combined index `site * 4 + spinor`; sites are numbered
//! with axis 0 varying fastest. The spatial derivative is the symmetric
//! difference, so `𝓑² = Σ∂_j∂_j − m²` holds exactly as matrices and the
//! series and closed-form anticommutators agree up to float roundoff.
//!
//! Two routes compute the same objects: [`numeric`] works with complex
//! matrices at any size, [`symbolic`] runs the exact constraint engine on
//! tiny lattices, and the bridge checks compare the two.

pub mod delta;
pub mod gamma;
pub mod geometry;
pub mod kernel;
pub mod modes;
pub mod numeric;
pub mod suite;
pub mod symbolic;

use serde::Serialize;
use thiserror::Error;

use crate::coeff::Coeff;
use crate::constraints::ConstraintError;

pub use delta::{
    closed_form_anticommutator, delta_function, series_anticommutator, verify_lemma, DeltaFunction,
    LemmaReport,
};
pub use gamma::GammaSet;
pub use kernel::BracketKernel;
pub use modes::{ladder_algebra, mode_expansion, LadderReport, ModeBasis};
pub use numeric::{
    b_operator, build_dirac_model, constraint_matrix, equal_time_gdb, equations_of_motion_check,
    quantize, theorem1_numeric, ConstraintKernels, DiracLattice, EomReport, Field,
};
pub use suite::{
    run_checks, symbolic_companion, Check, CheckOutcome, Metric, MetricValue, Tolerances,
};
pub use symbolic::{build_symbolic, SymbolicDirac};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LatticeError {
    #[error("invalid lattice configuration: {0}")]
    Invalid(String),
    #[error("unsupported lattice configuration: {0}")]
    Unsupported(String),
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error(
        "ill-conditioned mode inversion: condition number {condition:.3e} exceeds {limit:.1e}"
    )]
    IllConditioned { condition: f64, limit: f64 },
    #[error(transparent)]
    Constraint(#[from] ConstraintError),
}

/// Periodic lattice with `sites` points per axis in `dim` spatial dimensions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LatticeModel {
    pub dim: usize,
    pub sites: usize,
    pub spacing: f64,
    pub mass: f64,
    #[serde(skip)]
    pub gammas: GammaSet,
}

impl LatticeModel {
    pub fn new(dim: usize, sites: usize, spacing: f64, mass: f64) -> Result<Self, LatticeError> {
        if !(1..=3).contains(&dim) {
            return Err(LatticeError::Unsupported(format!(
                "spatial dimension {dim}; expected 1, 2 or 3"
            )));
        }
        if sites < 2 {
            return Err(LatticeError::Invalid(format!(
                "need at least 2 sites per axis, got {sites}"
            )));
        }
        if !(spacing.is_finite() && spacing > 0.0) {
            return Err(LatticeError::Invalid(format!(
                "spacing must be positive, got {spacing}"
            )));
        }
        if !(mass.is_finite() && mass >= 0.0) {
            return Err(LatticeError::Invalid(format!(
                "mass must be non-negative, got {mass}"
            )));
        }
        let gammas = GammaSet::dirac();
        if gammas.clifford_residual() != 0.0 {
            return Err(LatticeError::Invalid(
                "gamma matrices violate the Clifford relation".into(),
            ));
        }
        Ok(LatticeModel {
            dim,
            sites,
            spacing,
            mass,
            gammas,
        })
    }

    pub fn site_count(&self) -> usize {
        self.sites.pow(self.dim as u32)
    }

    /// Number of spinor-site components of one field.
    pub fn components(&self) -> usize {
        4 * self.site_count()
    }

    /// Cell volume `a^d`; `δ_lat` at coincidence is its inverse.
    pub fn measure(&self) -> f64 {
        self.spacing.powi(self.dim as i32)
    }

    pub fn spacing_exact(&self) -> Coeff {
        Coeff::from_f64(self.spacing).expect("finite spacing")
    }

    pub fn mass_exact(&self) -> Coeff {
        Coeff::from_f64(self.mass).expect("finite mass")
    }

    pub fn measure_exact(&self) -> Coeff {
        self.spacing_exact().pow(self.dim as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_configs() {
        assert!(matches!(
            LatticeModel::new(4, 4, 1.0, 1.0),
            Err(LatticeError::Unsupported(_))
        ));
        assert!(matches!(
            LatticeModel::new(1, 1, 1.0, 1.0),
            Err(LatticeError::Invalid(_))
        ));
        assert!(matches!(
            LatticeModel::new(1, 4, 0.0, 1.0),
            Err(LatticeError::Invalid(_))
        ));
        assert!(matches!(
            LatticeModel::new(1, 4, 1.0, -1.0),
            Err(LatticeError::Invalid(_))
        ));
    }

    #[test]
    fn exact_parameters() {
        let m = LatticeModel::new(2, 3, 0.5, 1.0).unwrap();
        assert_eq!(m.site_count(), 9);
        assert_eq!(m.measure_exact(), Coeff::ratio(1, 4));
    }
}
