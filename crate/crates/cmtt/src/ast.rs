//! Surface syntax. Equality ignores spans, so a reparsed printout compares
//! equal to the original tree.

use std::fmt;

#[derive(Clone, Copy, Debug, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Span {
        Span { start, end }
    }

    pub fn to(self, other: Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }
}

impl PartialEq for Span {
    fn eq(&self, _: &Span) -> bool {
        true
    }
}

/// A modality written as a composite of generator names, leftmost outermost.
#[derive(Clone, Debug, PartialEq)]
pub struct ModExpr {
    pub parts: Vec<String>,
    pub span: Span,
}

impl fmt::Display for ModExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.parts.join("∘"))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum IExpr {
    Zero,
    One,
    Var(String, Span),
    Neg(Box<IExpr>),
    Meet(Box<IExpr>, Box<IExpr>),
    Join(Box<IExpr>, Box<IExpr>),
    /// `r ^ μ`: the exchange of `r` across a lock `μ`.
    Exc(Box<IExpr>, ModExpr),
}

#[derive(Clone, Debug, PartialEq)]
pub enum FExpr {
    Top,
    Bot,
    Eq0(IExpr),
    Eq1(IExpr),
    Meet(Box<FExpr>, Box<FExpr>),
    Join(Box<FExpr>, Box<FExpr>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

/// A motive `z. T` for an eliminator.
#[derive(Clone, Debug, PartialEq)]
pub struct Motive {
    pub var: String,
    pub ty: Box<Expr>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Var(String),
    Univ(u32),
    Bool,
    True,
    False,
    /// `(μ | x : A) → B`; name and modality are optional.
    Pi {
        modality: Option<ModExpr>,
        name: Option<String>,
        dom: Box<Expr>,
        cod: Box<Expr>,
    },
    Sigma {
        name: Option<String>,
        fst: Box<Expr>,
        snd: Box<Expr>,
    },
    Lam(String, Box<Expr>),
    App(Box<Expr>, Box<Expr>),
    Path(Box<Expr>, Box<Expr>, Box<Expr>),
    PLam(String, Box<Expr>),
    PApp(Box<Expr>, IExpr),
    Modal(ModExpr, Box<Expr>),
    Later(Box<Expr>),
    Next(Box<Expr>),
    Zapp(Box<Expr>, Box<Expr>),
    MkBox(ModExpr, Box<Expr>),
    LetBox {
        lock: Option<ModExpr>,
        nu: ModExpr,
        name: String,
        scrut: Box<Expr>,
        motive: Option<Motive>,
        body: Box<Expr>,
    },
    If {
        scrut: Box<Expr>,
        motive: Option<Motive>,
        then_: Box<Expr>,
        else_: Box<Expr>,
    },
    Sys(Vec<(FExpr, Expr)>),
    Comp {
        var: String,
        line: Box<Expr>,
        branches: Vec<(FExpr, Expr)>,
        cap: Box<Expr>,
    },
    Pair(Box<Expr>, Box<Expr>),
    Fst(Box<Expr>),
    Snd(Box<Expr>),
    Ann(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Expr {
        Expr { kind, span }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Param {
    pub modality: Option<ModExpr>,
    pub name: String,
    pub ty: Expr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeclKind {
    Def,
    Theorem,
    Axiom,
}

impl DeclKind {
    pub fn keyword(self) -> &'static str {
        match self {
            DeclKind::Def => "def",
            DeclKind::Theorem => "theorem",
            DeclKind::Axiom => "axiom",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Decl {
    pub kind: DeclKind,
    pub name: String,
    pub mode: Option<String>,
    pub params: Vec<Param>,
    pub ty: Expr,
    pub body: Option<Expr>,
    /// For axioms: an unfolding conversion may use, over the same parameters.
    pub rewrite: Option<Expr>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Item {
    Decl(Box<Decl>),
    /// `import modes guarded` or `import modes "file"`.
    ImportModes {
        theory: String,
        quoted: bool,
        span: Span,
    },
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Module {
    pub items: Vec<Item>,
}
