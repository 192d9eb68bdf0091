use crate::bracket::{gpb, Bracket, BracketError, PhaseSpace};
use crate::grassmann::Poly;
use crate::linalg::ExactMatrix;

use super::classify::gram_matrix;
use super::reduce::Reducer;
use super::{ConstraintError, ConstraintSet};

/// Which correction term to subtract from the Poisson bracket.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BracketVariant {
    /// `[F,G] − [F,χ_β] C^{ββ′} [χ_β′,G]`
    Standard,
    /// `[F,G] + [χ_β,F] C^{ββ′} [χ_β′,G]`; not graded antisymmetric.
    Gd1,
    /// `[F,G] − [χ_β′,G] C^{ββ′} [F,χ_β]`; violates the Leibniz rule.
    Gd2,
}

impl BracketVariant {
    pub fn label(self) -> &'static str {
        match self {
            BracketVariant::Standard => "gd",
            BracketVariant::Gd1 => "gd1",
            BracketVariant::Gd2 => "gd2",
        }
    }
}

/// Dirac bracket built from the second-class constraints of a set.
#[derive(Debug, Clone)]
pub struct DiracBracket<'a> {
    ps: &'a PhaseSpace,
    chi: Vec<Poly>,
    c: ExactMatrix,
    c_inv: ExactMatrix,
    variant: BracketVariant,
}

impl<'a> DiracBracket<'a> {
    pub fn new(
        ps: &'a PhaseSpace,
        set: &ConstraintSet,
        variant: BracketVariant,
    ) -> Result<Self, ConstraintError> {
        Self::from_parts(ps, set.second_class(), &set.exprs(), variant)
    }

    /// `chi` are the second-class constraints; `surface` all constraints
    /// used to evaluate `C` weakly.
    pub fn from_parts(
        ps: &'a PhaseSpace,
        chi: Vec<Poly>,
        surface: &[Poly],
        variant: BracketVariant,
    ) -> Result<Self, ConstraintError> {
        let reducer = Reducer::new(surface, ps)?;
        let c = gram_matrix(&chi, ps, &reducer)?;
        let c_inv = c
            .inverse()
            .ok_or(ConstraintError::SingularConstraintMatrix)?;
        Ok(DiracBracket {
            ps,
            chi,
            c,
            c_inv,
            variant,
        })
    }

    pub fn second_class(&self) -> &[Poly] {
        &self.chi
    }

    pub fn constraint_matrix(&self) -> &ExactMatrix {
        &self.c
    }

    pub fn inverse_matrix(&self) -> &ExactMatrix {
        &self.c_inv
    }

    pub fn variant(&self) -> BracketVariant {
        self.variant
    }

    fn correction(&self, f: &Poly, g: &Poly) -> Result<Poly, BracketError> {
        let n = self.chi.len();
        let mut out = Poly::zero(self.ps.universe());
        if n == 0 {
            return Ok(out);
        }
        let left: Vec<Poly> = match self.variant {
            BracketVariant::Standard | BracketVariant::Gd2 => self
                .chi
                .iter()
                .map(|x| gpb(f, x, self.ps))
                .collect::<Result<_, _>>()?,
            BracketVariant::Gd1 => self
                .chi
                .iter()
                .map(|x| gpb(x, f, self.ps))
                .collect::<Result<_, _>>()?,
        };
        let right: Vec<Poly> = self
            .chi
            .iter()
            .map(|x| gpb(x, g, self.ps))
            .collect::<Result<_, _>>()?;
        for b in 0..n {
            if left[b].is_zero() {
                continue;
            }
            for b2 in 0..n {
                let c = self.c_inv.get(b, b2);
                if c.is_zero() || right[b2].is_zero() {
                    continue;
                }
                let term = match self.variant {
                    BracketVariant::Gd2 => &right[b2] * &left[b],
                    _ => &left[b] * &right[b2],
                };
                out = out + term.scale(c);
            }
        }
        Ok(out)
    }
}

impl Bracket for DiracBracket<'_> {
    fn name(&self) -> &str {
        self.variant.label()
    }

    fn phase_space(&self) -> &PhaseSpace {
        self.ps
    }

    fn bracket(&self, f: &Poly, g: &Poly) -> Result<Poly, BracketError> {
        let base = gpb(f, g, self.ps)?;
        let corr = self.correction(f, g)?;
        Ok(match self.variant {
            BracketVariant::Gd1 => base + corr,
            _ => base - corr,
        })
    }
}
