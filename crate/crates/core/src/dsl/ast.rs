use super::Span;

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    /// Nonnegative literal as written, e.g. `3` or `0.25`.
    Number(String),
    ImaginaryUnit,
    Var(String),
    Velocity(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Division by a positive integer literal.
    Div(Box<Expr>, String),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Self {
        Expr { kind, span }
    }

    /// Binding strength used by the printer; atoms bind tightest.
    pub(crate) fn precedence(&self) -> u8 {
        match self.kind {
            ExprKind::Add(..) | ExprKind::Sub(..) => 1,
            ExprKind::Mul(..) | ExprKind::Div(..) => 2,
            ExprKind::Neg(_) => 3,
            ExprKind::Pow(..) => 4,
            _ => 5,
        }
    }

    pub fn without_spans(&self) -> Expr {
        let b = |e: &Expr| Box::new(e.without_spans());
        let kind = match &self.kind {
            ExprKind::Neg(a) => ExprKind::Neg(b(a)),
            ExprKind::Add(x, y) => ExprKind::Add(b(x), b(y)),
            ExprKind::Sub(x, y) => ExprKind::Sub(b(x), b(y)),
            ExprKind::Mul(x, y) => ExprKind::Mul(b(x), b(y)),
            ExprKind::Div(x, d) => ExprKind::Div(b(x), d.clone()),
            ExprKind::Pow(x, n) => ExprKind::Pow(b(x), *n),
            other => other.clone(),
        };
        Expr {
            kind,
            span: Span::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeclKind {
    Even,
    /// Odd; side inferred from the name.
    Odd,
    OddLeft,
    OddRight,
    Param,
}

impl DeclKind {
    pub fn keyword(self) -> &'static str {
        match self {
            DeclKind::Even => "even",
            DeclKind::Odd => "odd",
            DeclKind::OddLeft => "odd-left",
            DeclKind::OddRight => "odd-right",
            DeclKind::Param => "param",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Self> {
        Some(match word {
            "even" => DeclKind::Even,
            "odd" => DeclKind::Odd,
            "odd-left" => DeclKind::OddLeft,
            "odd-right" => DeclKind::OddRight,
            "param" => DeclKind::Param,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decl {
    pub kind: DeclKind,
    pub names: Vec<(String, Span)>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConfigValue {
    Number(String),
    List(Vec<String>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigEntry {
    pub key: String,
    pub value: ConfigValue,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LatticeBlock {
    pub entries: Vec<ConfigEntry>,
    pub span: Span,
}

/// A parsed `.gham` file.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ModelSpec {
    pub declarations: Vec<Decl>,
    pub lagrangian: Option<Expr>,
    pub lattice: Option<LatticeBlock>,
}

impl ModelSpec {
    pub fn without_spans(&self) -> ModelSpec {
        ModelSpec {
            declarations: self
                .declarations
                .iter()
                .map(|d| Decl {
                    kind: d.kind,
                    names: d
                        .names
                        .iter()
                        .map(|(n, _)| (n.clone(), Span::default()))
                        .collect(),
                    span: Span::default(),
                })
                .collect(),
            lagrangian: self.lagrangian.as_ref().map(Expr::without_spans),
            lattice: self.lattice.as_ref().map(|b| LatticeBlock {
                entries: b
                    .entries
                    .iter()
                    .map(|e| ConfigEntry {
                        key: e.key.clone(),
                        value: e.value.clone(),
                        span: Span::default(),
                    })
                    .collect(),
                span: Span::default(),
            }),
        }
    }
}
