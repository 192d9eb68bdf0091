use std::fmt::Write;

use super::ast::*;

pub fn print_expr(e: &Expr) -> String {
    let mut s = String::new();
    write_expr(e, &mut s);
    s
}

fn wrap(e: &Expr, parens: bool, out: &mut String) {
    if parens {
        out.push('(');
        write_expr(e, out);
        out.push(')');
    } else {
        write_expr(e, out);
    }
}

fn binary(op: &str, prec: u8, l: &Expr, r: &Expr, out: &mut String) {
    wrap(l, l.precedence() < prec, out);
    out.push_str(op);
    wrap(r, r.precedence() <= prec, out);
}

fn write_expr(e: &Expr, out: &mut String) {
    match &e.kind {
        ExprKind::Number(n) => out.push_str(n),
        ExprKind::ImaginaryUnit => out.push('i'),
        ExprKind::Var(v) => out.push_str(v),
        ExprKind::Velocity(v) => {
            let _ = write!(out, "dot({v})");
        }
        ExprKind::Neg(a) => {
            out.push('-');
            wrap(a, a.precedence() < 3, out);
        }
        ExprKind::Add(l, r) => binary(" + ", 1, l, r, out),
        ExprKind::Sub(l, r) => binary(" - ", 1, l, r, out),
        ExprKind::Mul(l, r) => binary("*", 2, l, r, out),
        ExprKind::Div(l, d) => {
            wrap(l, l.precedence() < 2, out);
            let _ = write!(out, "/{d}");
        }
        ExprKind::Pow(b, n) => {
            wrap(b, b.precedence() < 5, out);
            let _ = write!(out, "^{n}");
        }
    }
}

/// Canonical text of a spec; parsing it gives back the same spec up to spans.
pub fn print_spec(spec: &ModelSpec) -> String {
    let mut out = String::new();
    for d in &spec.declarations {
        let names: Vec<&str> = d.names.iter().map(|(n, _)| n.as_str()).collect();
        let _ = writeln!(out, "{} {};", d.kind.keyword(), names.join(", "));
    }
    if let Some(l) = &spec.lagrangian {
        let _ = writeln!(out, "L = {};", print_expr(l));
    }
    if let Some(b) = &spec.lattice {
        out.push_str("lattice {\n");
        for e in &b.entries {
            let value = match &e.value {
                ConfigValue::Number(n) => n.clone(),
                ConfigValue::List(items) => format!("[{}]", items.join(", ")),
            };
            let _ = writeln!(out, "  {} = {};", e.key, value);
        }
        out.push_str("}\n");
    }
    out
}
