use super::ast::*;
use super::lexer::{lex, Tok, Token};
use super::{DslError, ErrorKind, Span};

const RESERVED: [&str; 9] = [
    "even",
    "odd",
    "odd-left",
    "odd-right",
    "param",
    "dot",
    "i",
    "L",
    "lattice",
];

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: Span,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn span(&self) -> Span {
        self.toks.get(self.pos).map(|t| t.span).unwrap_or(self.end)
    }

    fn prev_span(&self) -> Span {
        self.toks[self.pos.saturating_sub(1)].span
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T, DslError> {
        Err(DslError::new(ErrorKind::Syntax, self.span(), msg))
    }

    fn eat_punct(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_punct(&mut self, c: char) -> Result<Span, DslError> {
        if self.eat_punct(c) {
            Ok(self.prev_span())
        } else {
            self.error(format!("expected '{c}'"))
        }
    }

    fn ident(&mut self) -> Result<(String, Span), DslError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok((s, self.prev_span()))
            }
            _ => self.error("expected an identifier"),
        }
    }

    fn name(&mut self) -> Result<(String, Span), DslError> {
        let (n, span) = self.ident()?;
        if RESERVED.contains(&n.as_str()) {
            return Err(DslError::new(
                ErrorKind::Syntax,
                span,
                format!("'{n}' is reserved"),
            ));
        }
        Ok((n, span))
    }

    fn file(&mut self) -> Result<ModelSpec, DslError> {
        let mut spec = ModelSpec::default();
        while let Some(tok) = self.peek().cloned() {
            let start = self.span();
            match tok {
                Tok::Ident(w) if DeclKind::from_keyword(&w).is_some() => {
                    self.pos += 1;
                    let kind = DeclKind::from_keyword(&w).expect("checked");
                    let mut names = vec![self.name()?];
                    while self.eat_punct(',') {
                        names.push(self.name()?);
                    }
                    let end = self.expect_punct(';')?;
                    spec.declarations.push(Decl {
                        kind,
                        names,
                        span: start.to(end),
                    });
                }
                Tok::Ident(w) if w == "L" => {
                    self.pos += 1;
                    self.expect_punct('=')?;
                    let e = self.expr()?;
                    self.expect_punct(';')?;
                    if spec.lagrangian.is_some() {
                        return Err(DslError::new(
                            ErrorKind::Duplicate,
                            start,
                            "the Lagrangian is defined twice",
                        ));
                    }
                    spec.lagrangian = Some(e);
                }
                Tok::Ident(w) if w == "lattice" => {
                    self.pos += 1;
                    let block = self.lattice_block(start)?;
                    if spec.lattice.is_some() {
                        return Err(DslError::new(
                            ErrorKind::Duplicate,
                            start,
                            "more than one lattice block",
                        ));
                    }
                    spec.lattice = Some(block);
                }
                _ => return self.error("expected a declaration, 'L = ...;' or a lattice block"),
            }
        }
        Ok(spec)
    }

    fn lattice_block(&mut self, start: Span) -> Result<LatticeBlock, DslError> {
        self.expect_punct('{')?;
        let mut entries = Vec::new();
        while !self.eat_punct('}') {
            let (key, kspan) = self.ident()?;
            self.expect_punct('=')?;
            let value = if self.eat_punct('[') {
                let mut items = Vec::new();
                if !self.eat_punct(']') {
                    items.push(self.ident()?.0);
                    while self.eat_punct(',') {
                        items.push(self.ident()?.0);
                    }
                    self.expect_punct(']')?;
                }
                ConfigValue::List(items)
            } else {
                let neg = self.eat_punct('-');
                match self.peek() {
                    Some(Tok::Number(n)) => {
                        let n = if neg { format!("-{n}") } else { n.clone() };
                        self.pos += 1;
                        ConfigValue::Number(n)
                    }
                    _ => return self.error("expected a number or a [list]"),
                }
            };
            let end = self.expect_punct(';')?;
            entries.push(ConfigEntry {
                key,
                value,
                span: kspan.to(end),
            });
        }
        Ok(LatticeBlock {
            entries,
            span: start.to(self.prev_span()),
        })
    }

    fn expr(&mut self) -> Result<Expr, DslError> {
        let mut lhs = self.term()?;
        loop {
            let kind: fn(Box<Expr>, Box<Expr>) -> ExprKind = if self.eat_punct('+') {
                ExprKind::Add
            } else if self.eat_punct('-') {
                ExprKind::Sub
            } else {
                return Ok(lhs);
            };
            let rhs = self.term()?;
            let span = lhs.span.to(rhs.span);
            lhs = Expr::new(kind(Box::new(lhs), Box::new(rhs)), span);
        }
    }

    fn term(&mut self) -> Result<Expr, DslError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat_punct('*') {
                let rhs = self.unary()?;
                let span = lhs.span.to(rhs.span);
                lhs = Expr::new(ExprKind::Mul(Box::new(lhs), Box::new(rhs)), span);
            } else if self.eat_punct('/') {
                match self.peek() {
                    Some(Tok::Number(n))
                        if n.chars().all(|c| c.is_ascii_digit())
                            && n.trim_start_matches('0') != "" =>
                    {
                        let n = n.clone();
                        self.pos += 1;
                        let span = lhs.span.to(self.prev_span());
                        lhs = Expr::new(ExprKind::Div(Box::new(lhs), n), span);
                    }
                    _ => return self.error("'/' must be followed by a positive integer literal"),
                }
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, DslError> {
        let start = self.span();
        if self.eat_punct('-') {
            let inner = self.unary()?;
            let span = start.to(inner.span);
            return Ok(Expr::new(ExprKind::Neg(Box::new(inner)), span));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, DslError> {
        let base = self.atom()?;
        if !self.eat_punct('^') {
            return Ok(base);
        }
        match self.peek() {
            Some(Tok::Number(n)) if n.chars().all(|c| c.is_ascii_digit()) => {
                let e: u32 = n.parse().map_err(|_| {
                    DslError::new(ErrorKind::Syntax, self.span(), "exponent too large")
                })?;
                self.pos += 1;
                let span = base.span.to(self.prev_span());
                Ok(Expr::new(ExprKind::Pow(Box::new(base), e), span))
            }
            _ => self.error("'^' must be followed by a nonnegative integer literal"),
        }
    }

    fn atom(&mut self) -> Result<Expr, DslError> {
        let start = self.span();
        match self.peek().cloned() {
            Some(Tok::Number(n)) => {
                self.pos += 1;
                Ok(Expr::new(ExprKind::Number(n), start))
            }
            Some(Tok::Punct('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                let end = self.expect_punct(')')?;
                Ok(Expr::new(e.kind, start.to(end)))
            }
            Some(Tok::Ident(w)) if w == "i" => {
                self.pos += 1;
                Ok(Expr::new(ExprKind::ImaginaryUnit, start))
            }
            Some(Tok::Ident(w)) if w == "dot" => {
                self.pos += 1;
                self.expect_punct('(')?;
                let (name, _) = self.name()?;
                let end = self.expect_punct(')')?;
                Ok(Expr::new(ExprKind::Velocity(name), start.to(end)))
            }
            Some(Tok::Ident(_)) => {
                let (name, span) = self.name()?;
                Ok(Expr::new(ExprKind::Var(name), span))
            }
            _ => self.error("expected an expression"),
        }
    }
}

fn parser(src: &str) -> Result<Parser, DslError> {
    let toks = lex(src)?;
    let end = toks
        .last()
        .map(|t| Span::new(t.span.end, t.span.end, t.span.line, t.span.col + 1))
        .unwrap_or_default();
    Ok(Parser { toks, pos: 0, end })
}

/// Parses a `.gham` model or lattice configuration.
pub fn parse(src: &str) -> Result<ModelSpec, DslError> {
    parser(src)?.file()
}

/// Parses a single expression (for bracket queries).
pub fn parse_expr(src: &str) -> Result<Expr, DslError> {
    let mut p = parser(src)?;
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.error("unexpected input after the expression");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fermionic_oscillator_file() {
        let spec = parse(
            "odd theta, thetabar; L = (i/2)*(thetabar*dot(theta) - dot(thetabar)*theta) - m*thetabar*theta; param m;",
        )
        .unwrap();
        assert_eq!(spec.declarations.len(), 2);
        assert!(matches!(spec.lagrangian.unwrap().kind, ExprKind::Sub(..)));
    }

    #[test]
    fn precedence() {
        let e = parse_expr("-a^2*b + c").unwrap().without_spans();
        let ExprKind::Add(lhs, _) = e.kind else {
            panic!()
        };
        let ExprKind::Mul(neg, _) = lhs.kind else {
            panic!()
        };
        assert!(matches!(neg.kind, ExprKind::Neg(_)));
    }

    #[test]
    fn division_only_by_integers() {
        assert!(parse_expr("q/2").is_ok());
        assert!(parse_expr("q/p").is_err());
        assert!(parse_expr("q/0").is_err());
    }

    #[test]
    fn lattice_block() {
        let spec = parse(
            "lattice { dim = 1; sites = 16; mass = 1; spacing = 0.5; checks = [eqtime, lemma]; }",
        )
        .unwrap();
        let b = spec.lattice.unwrap();
        assert_eq!(b.entries.len(), 5);
        assert_eq!(
            b.entries[4].value,
            ConfigValue::List(vec!["eqtime".into(), "lemma".into()])
        );
    }

    #[test]
    fn missing_semicolon_position() {
        let e = parse("even q\nL = dot(q);").unwrap_err();
        assert_eq!((e.span.line, e.span.col), (2, 1));
    }
}
