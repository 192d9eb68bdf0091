//! The `.gham` model language.
//!
//! ```text
//! odd theta, thetabar;          # θ̄-type inferred from the `bar` suffix
//! param m;
//! L = (i/2)*(thetabar*dot(theta) - dot(thetabar)*theta) - m*thetabar*theta;
//! ```
//!
//! Statements end with `;`. Declarations are `even`, `odd`, `odd-left`,
//! `odd-right` and `param`, and may follow their use. `dot(x)` is the
//! velocity of `x`, `i` the imaginary unit; `/` divides by an integer
//! literal only. A file may also carry a `lattice { key = value; ... }`
//! block. Comments start with `#` or `//`.

mod ast;
mod elaborate;
mod lexer;
mod parser;
mod print;

use std::fmt;

use thiserror::Error;

pub use ast::{ConfigEntry, ConfigValue, Decl, DeclKind, Expr, ExprKind, LatticeBlock, ModelSpec};
pub use elaborate::{elaborate, elaborate_with, expr_to_poly, literal_value, ElaborateOptions};
pub use parser::{parse, parse_expr};
pub use print::{print_expr, print_spec};

/// Byte range plus 1-based line and column of its start.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub line: u32,
    pub col: u32,
}

impl Span {
    pub fn new(start: usize, end: usize, line: u32, col: u32) -> Self {
        Span {
            start,
            end,
            line,
            col,
        }
    }

    pub fn to(self, other: Span) -> Span {
        Span {
            start: self.start,
            end: other.end.max(self.end),
            line: self.line,
            col: self.col,
        }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Lexical,
    Syntax,
    Undeclared,
    Duplicate,
    Parity,
    Misuse,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("{span}: {message}")]
pub struct DslError {
    pub kind: ErrorKind,
    pub span: Span,
    pub message: String,
}

impl DslError {
    pub fn new(kind: ErrorKind, span: Span, message: impl Into<String>) -> Self {
        DslError {
            kind,
            span,
            message: message.into(),
        }
    }
}

/// Parses and elaborates in one step.
pub fn load_model(src: &str) -> Result<crate::constraints::LagrangianModel, DslError> {
    elaborate(&parse(src)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::PairKind;
    use crate::constraints::legendre;

    const OSC: &str =
        "odd theta, thetabar; L = (i/2)*(thetabar*dot(theta) - dot(thetabar)*theta) - m*thetabar*theta; param m;";

    #[test]
    fn oscillator_elaborates_with_sides() {
        let model = load_model(OSC).unwrap();
        let kinds: Vec<PairKind> = model.coordinates.iter().map(|c| c.kind).collect();
        assert_eq!(kinds, vec![PairKind::OddRight, PairKind::OddLeft]);
        assert_eq!(model.parameters.len(), 1);
        assert_eq!(legendre(&model).unwrap().primary.len(), 2);
    }

    #[test]
    fn explicit_side_overrides_suffix() {
        let model = load_model("odd-right thetabar; odd-left chi; L = i*thetabar*chi;").unwrap();
        let kinds: Vec<PairKind> = model.coordinates.iter().map(|c| c.kind).collect();
        assert_eq!(kinds, vec![PairKind::OddRight, PairKind::OddLeft]);
    }

    #[test]
    fn undeclared_velocity_points_at_name() {
        let e = load_model("L = dot(x);").unwrap_err();
        assert_eq!(e.kind, ErrorKind::Undeclared);
        assert_eq!((e.span.line, e.span.col), (1, 5));
    }

    #[test]
    fn odd_lagrangian_rejected() {
        let e = load_model("odd theta; L = theta;").unwrap_err();
        assert_eq!(e.kind, ErrorKind::Parity);
        assert!(e.message.contains("theta"));
    }

    #[test]
    fn gauge_toy_text() {
        let model = load_model("even q1, q2; L = (1/2)*(dot(q1) - q2)^2;").unwrap();
        let sys = legendre(&model).unwrap();
        assert_eq!(sys.primary.len(), 1);
    }

    #[test]
    fn decimals_are_exact() {
        assert_eq!(literal_value("0.125"), crate::coeff::Coeff::ratio(1, 8));
        assert_eq!(literal_value("12"), crate::coeff::Coeff::from_int(12));
    }

    #[test]
    fn print_round_trip() {
        let spec = parse(OSC).unwrap();
        let again = parse(&print_spec(&spec)).unwrap();
        assert_eq!(spec.without_spans(), again.without_spans());
    }
}
