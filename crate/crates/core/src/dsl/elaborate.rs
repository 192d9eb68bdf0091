use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;

use super::ast::*;
use super::{DslError, ErrorKind, Span};
use crate::bracket::PairKind;
use crate::coeff::Coeff;
use crate::constraints::{ConstraintError, LagrangianModel, ModelBuilder};
use crate::grassmann::{Generator, Poly, UniverseId};

/// How undecorated `odd` declarations pick their derivative side.
#[derive(Debug, Clone)]
pub struct ElaborateOptions {
    /// Names ending in this suffix are θ̄-type (left); others θ-type (right).
    pub conjugate_suffix: String,
}

impl Default for ElaborateOptions {
    fn default() -> Self {
        ElaborateOptions {
            conjugate_suffix: "bar".into(),
        }
    }
}

/// Exact value of a literal such as `12` or `0.125`.
pub fn literal_value(text: &str) -> Coeff {
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    let digits: BigInt = format!("{int}{frac}")
        .parse()
        .expect("lexer guarantees digits");
    let scale = BigInt::from(10).pow(frac.len() as u32);
    Coeff::real(BigRational::new(digits, scale))
}

/// Expands an expression into a polynomial, resolving names through `resolve`.
pub fn expr_to_poly(
    e: &Expr,
    universe: UniverseId,
    resolve: &mut dyn FnMut(&ExprKind, Span) -> Result<Poly, DslError>,
) -> Result<Poly, DslError> {
    let mut go = |x: &Expr| expr_to_poly(x, universe, resolve);
    Ok(match &e.kind {
        ExprKind::Number(n) => Poly::constant(universe, literal_value(n)),
        ExprKind::ImaginaryUnit => Poly::constant(universe, Coeff::i()),
        ExprKind::Var(_) | ExprKind::Velocity(_) => resolve(&e.kind, e.span)?,
        ExprKind::Neg(a) => -go(a)?,
        ExprKind::Add(a, b) => {
            let x = go(a)?;
            x + go(b)?
        }
        ExprKind::Sub(a, b) => {
            let x = go(a)?;
            x - go(b)?
        }
        ExprKind::Mul(a, b) => {
            let x = go(a)?;
            x * go(b)?
        }
        ExprKind::Div(a, d) => {
            let d = literal_value(d);
            go(a)?.scale(&d.inv().expect("parser rejects zero"))
        }
        ExprKind::Pow(a, n) => go(a)?.pow(*n),
    })
}

pub fn elaborate(spec: &ModelSpec) -> Result<LagrangianModel, DslError> {
    elaborate_with(spec, &ElaborateOptions::default())
}

pub fn elaborate_with(
    spec: &ModelSpec,
    opts: &ElaborateOptions,
) -> Result<LagrangianModel, DslError> {
    let Some(lagrangian) = &spec.lagrangian else {
        return Err(DslError::new(
            ErrorKind::Misuse,
            Span::default(),
            "no Lagrangian 'L = ...;' given",
        ));
    };
    let mut builder = ModelBuilder::new();
    let mut coords: HashMap<String, Generator> = HashMap::new();
    let mut params: HashMap<String, Generator> = HashMap::new();
    for d in &spec.declarations {
        for (name, span) in &d.names {
            if coords.contains_key(name) || params.contains_key(name) {
                return Err(DslError::new(
                    ErrorKind::Duplicate,
                    *span,
                    format!("'{name}' is declared twice"),
                ));
            }
            let kind = match d.kind {
                DeclKind::Param => {
                    let g = builder.param(name).map_err(|e| model_error(e, *span))?;
                    params.insert(name.clone(), g);
                    continue;
                }
                DeclKind::Even => PairKind::Even,
                DeclKind::OddLeft => PairKind::OddLeft,
                DeclKind::OddRight => PairKind::OddRight,
                DeclKind::Odd if name.ends_with(&opts.conjugate_suffix) => PairKind::OddLeft,
                DeclKind::Odd => PairKind::OddRight,
            };
            let g = builder
                .coordinate(name, kind)
                .map_err(|e| model_error(e, *span))?;
            coords.insert(name.clone(), g);
        }
    }
    let uid = builder.universe().id();
    let mut resolve = |k: &ExprKind, span: Span| -> Result<Poly, DslError> {
        match k {
            ExprKind::Var(n) => coords
                .get(n)
                .or_else(|| params.get(n))
                .map(|&g| Poly::var(g))
                .ok_or_else(|| {
                    DslError::new(
                        ErrorKind::Undeclared,
                        span,
                        format!("undeclared identifier '{n}'"),
                    )
                }),
            ExprKind::Velocity(n) => match coords.get(n) {
                Some(&g) => Ok(builder.velocity(g)),
                None if params.contains_key(n) => Err(DslError::new(
                    ErrorKind::Misuse,
                    span,
                    format!("'{n}' is a parameter and has no velocity"),
                )),
                None => Err(DslError::new(
                    ErrorKind::Undeclared,
                    span,
                    format!("undeclared identifier '{n}'"),
                )),
            },
            _ => unreachable!("only names are resolved"),
        }
    };
    let l = expr_to_poly(lagrangian, uid, &mut resolve)?;
    builder
        .build(l)
        .map_err(|e| model_error(e, lagrangian.span))
}

fn model_error(e: ConstraintError, span: Span) -> DslError {
    let kind = match e {
        ConstraintError::OddLagrangian(_) => ErrorKind::Parity,
        _ => ErrorKind::Misuse,
    };
    DslError::new(kind, span, e.to_string())
}
