//! Recursive-descent parser with local backtracking for binder groups and
//! parenthesised faces.

use crate::ast::*;
use crate::diag::Diagnostic;
use crate::lexer::{lex, Tok, Token};

pub type PResult<T> = Result<T, Diagnostic>;

const KEYWORDS: &[&str] = &[
    "def", "theorem", "axiom", "import", "modes", "rewrite", "let", "in", "if", "then", "else",
    "return", "comp", "Path", "Bool", "true", "false", "next", "Later", "zapp", "top", "bot",
    "fun",
];

pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s) || universe_level(s).is_some()
}

fn universe_level(s: &str) -> Option<u32> {
    let rest = s.strip_prefix('U')?;
    if rest.is_empty() {
        Some(0)
    } else if rest.chars().all(|c| c.is_ascii_digit()) {
        rest.parse().ok()
    } else {
        None
    }
}

pub fn parse_module(src: &str) -> PResult<Module> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
    };
    let mut items = Vec::new();
    while p.peek() != &Tok::Eof {
        items.push(p.item()?);
    }
    Ok(Module { items })
}

pub fn parse_expr(src: &str) -> PResult<Expr> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
    };
    let e = p.expr()?;
    p.expect(&Tok::Eof)?;
    Ok(e)
}

/// Parses a binder telescope such as `(A : U) (ℓ | x : A)`.
pub fn parse_telescope(src: &str) -> PResult<Vec<Param>> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
    };
    let mut out = Vec::new();
    while p.peek() == &Tok::LParen {
        out.extend(p.param_group()?);
    }
    p.expect(&Tok::Eof)?;
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
}

struct Group {
    modality: Option<ModExpr>,
    names: Vec<(String, Span)>,
    ty: Expr,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn prev_end(&self) -> usize {
        if self.pos == 0 {
            0
        } else {
            self.toks[self.pos - 1].span.end
        }
    }

    fn since(&self, start: Span) -> Span {
        Span::new(start.start, self.prev_end().max(start.start))
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn eat_kw(&mut self, kw: &str) -> bool {
        if self.is_kw(kw) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error<T>(&self, what: &str) -> PResult<T> {
        Err(Diagnostic::parse(
            self.span(),
            format!("expected {what}, found {}", self.peek().describe()),
        ))
    }

    fn expect(&mut self, t: &Tok) -> PResult<()> {
        if self.eat(t) {
            Ok(())
        } else {
            self.error(&t.describe())
        }
    }

    fn expect_kw(&mut self, kw: &str) -> PResult<()> {
        if self.eat_kw(kw) {
            Ok(())
        } else {
            self.error(&format!("`{kw}`"))
        }
    }

    fn name(&mut self) -> PResult<(String, Span)> {
        match self.peek().clone() {
            Tok::Ident(s) if !is_keyword(&s) => {
                let sp = self.bump().span;
                Ok((s, sp))
            }
            _ => self.error("a name"),
        }
    }

    fn item(&mut self) -> PResult<Item> {
        let start = self.span();
        if self.eat_kw("import") {
            self.expect_kw("modes")?;
            let (theory, quoted) = match self.bump().tok {
                Tok::Ident(s) => (s, false),
                Tok::Str(s) => (s, true),
                _ => {
                    self.pos -= 1;
                    return self.error("a mode theory name or path");
                }
            };
            return Ok(Item::ImportModes {
                theory,
                quoted,
                span: self.since(start),
            });
        }
        let kind = if self.eat_kw("def") {
            DeclKind::Def
        } else if self.eat_kw("theorem") {
            DeclKind::Theorem
        } else if self.eat_kw("axiom") {
            DeclKind::Axiom
        } else {
            return self.error("a declaration");
        };
        let (name, _) = self.name()?;
        let mode = if self.eat(&Tok::At) {
            Some(self.name()?.0)
        } else {
            None
        };
        let mut params = Vec::new();
        while self.peek() == &Tok::LParen {
            params.extend(self.param_group()?);
        }
        self.expect(&Tok::Colon)?;
        let ty = self.expr()?;
        let body = if kind == DeclKind::Axiom {
            None
        } else {
            self.expect(&Tok::Assign)?;
            Some(self.expr()?)
        };
        let rewrite = if kind == DeclKind::Axiom && self.eat_kw("rewrite") {
            Some(self.expr()?)
        } else {
            None
        };
        Ok(Item::Decl(Box::new(Decl {
            kind,
            name,
            mode,
            params,
            ty,
            body,
            rewrite,
            span: self.since(start),
        })))
    }

    fn param_group(&mut self) -> PResult<Vec<Param>> {
        let g = self.group()?;
        if g.names.is_empty() {
            return Err(Diagnostic::parse(g.ty.span, "parameters need names"));
        }
        Ok(g.names
            .into_iter()
            .map(|(name, _)| Param {
                modality: g.modality.clone(),
                name,
                ty: g.ty.clone(),
            })
            .collect())
    }

    /// `(μ | x y : A)`, `(x : A)` or `(μ | A)`.
    fn group(&mut self) -> PResult<Group> {
        self.expect(&Tok::LParen)?;
        let save = self.pos;
        let modality = match self.modality() {
            Ok(m) if self.eat(&Tok::Bar) => Some(m),
            _ => {
                self.pos = save;
                None
            }
        };
        let save = self.pos;
        let mut names = Vec::new();
        while let Tok::Ident(s) = self.peek() {
            if is_keyword(s) {
                break;
            }
            names.push(self.name()?);
        }
        if names.is_empty() || !self.eat(&Tok::Colon) {
            if modality.is_none() {
                return self.error("a binder");
            }
            self.pos = save;
            names.clear();
        }
        let ty = self.expr()?;
        self.expect(&Tok::RParen)?;
        Ok(Group {
            modality,
            names,
            ty,
        })
    }

    fn try_telescope(&mut self, follow: &Tok) -> Option<Vec<Group>> {
        let save = self.pos;
        let mut groups = Vec::new();
        while self.peek() == &Tok::LParen {
            match self.group() {
                Ok(g) => groups.push(g),
                Err(_) => break,
            }
        }
        let ok = !groups.is_empty()
            && self.peek() == follow
            && (follow == &Tok::Arrow
                || groups
                    .iter()
                    .all(|g| g.modality.is_none() && !g.names.is_empty()));
        if ok {
            self.bump();
            Some(groups)
        } else {
            self.pos = save;
            None
        }
    }

    pub fn modality(&mut self) -> PResult<ModExpr> {
        let start = self.span();
        let mut parts = vec![self.mod_part()?];
        while matches!(self.peek(), Tok::Compose | Tok::Dot)
            && matches!(self.peek_at(1), Tok::Ident(_))
        {
            self.bump();
            parts.push(self.mod_part()?);
        }
        Ok(ModExpr {
            parts,
            span: self.since(start),
        })
    }

    fn mod_part(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) if !is_keyword(&s) => {
                self.bump();
                Ok(s)
            }
            _ => self.error("a modality"),
        }
    }

    pub fn expr(&mut self) -> PResult<Expr> {
        let start = self.span();
        if self.eat(&Tok::Lambda) || self.eat_kw("fun") {
            let mut names = vec![self.name()?.0];
            while self.peek() != &Tok::Dot {
                names.push(self.name()?.0);
            }
            self.expect(&Tok::Dot)?;
            let body = self.expr()?;
            let span = self.since(start);
            return Ok(names
                .into_iter()
                .rev()
                .fold(body, |b, x| Expr::new(ExprKind::Lam(x, Box::new(b)), span)));
        }
        if self.peek() == &Tok::Lt && matches!(self.peek_at(2), Tok::Gt) {
            self.bump();
            let (i, _) = self.name()?;
            self.expect(&Tok::Gt)?;
            let body = self.expr()?;
            return Ok(Expr::new(
                ExprKind::PLam(i, Box::new(body)),
                self.since(start),
            ));
        }
        if self.eat_kw("let") {
            return self.let_rest(start);
        }
        if self.eat_kw("if") {
            let scrut = self.expr()?;
            let motive = self.motive()?;
            self.expect_kw("then")?;
            let then_ = self.expr()?;
            self.expect_kw("else")?;
            let else_ = self.expr()?;
            return Ok(Expr::new(
                ExprKind::If {
                    scrut: Box::new(scrut),
                    motive,
                    then_: Box::new(then_),
                    else_: Box::new(else_),
                },
                self.since(start),
            ));
        }
        self.arrow()
    }

    fn motive(&mut self) -> PResult<Option<Motive>> {
        if !self.eat_kw("return") {
            return Ok(None);
        }
        let (var, _) = self.name()?;
        self.expect(&Tok::Dot)?;
        let ty = self.expr()?;
        Ok(Some(Motive {
            var,
            ty: Box::new(ty),
        }))
    }

    fn let_rest(&mut self, start: Span) -> PResult<Expr> {
        let lock = match self.peek().clone() {
            Tok::LockKw(m) => {
                let sp = self.bump().span;
                Some(self.mod_text(&m, sp)?)
            }
            _ => None,
        };
        if let Tok::BoxKw(m) = self.peek().clone() {
            let sp = self.bump().span;
            let nu = self.mod_text(&m, sp)?;
            let (name, _) = self.name()?;
            self.expect(&Tok::Eq)?;
            let scrut = self.expr()?;
            let motive = self.motive()?;
            self.expect_kw("in")?;
            let body = self.expr()?;
            return Ok(Expr::new(
                ExprKind::LetBox {
                    lock,
                    nu,
                    name,
                    scrut: Box::new(scrut),
                    motive,
                    body: Box::new(body),
                },
                self.since(start),
            ));
        }
        self.error("`box_μ` in a modal let")
    }

    /// Splits the modality text carried by `box_…` and `lock_…` tokens.
    fn mod_text(&self, text: &str, span: Span) -> PResult<ModExpr> {
        let parts: Vec<String> = text
            .split(['∘', '.'])
            .map(|p| p.trim().to_owned())
            .collect();
        if parts.iter().any(|p| p.is_empty()) {
            return Err(Diagnostic::parse(
                span,
                format!("malformed modality `{text}`"),
            ));
        }
        Ok(ModExpr { parts, span })
    }

    fn arrow(&mut self) -> PResult<Expr> {
        let start = self.span();
        if let Some(groups) = self.try_telescope(&Tok::Arrow) {
            let cod = self.arrow()?;
            let span = self.since(start);
            return Ok(groups.into_iter().rev().fold(cod, |cod, g| {
                if g.names.is_empty() {
                    Expr::new(
                        ExprKind::Pi {
                            modality: g.modality,
                            name: None,
                            dom: Box::new(g.ty),
                            cod: Box::new(cod),
                        },
                        span,
                    )
                } else {
                    g.names.iter().rev().fold(cod, |cod, (x, _)| {
                        Expr::new(
                            ExprKind::Pi {
                                modality: g.modality.clone(),
                                name: Some(x.clone()),
                                dom: Box::new(g.ty.clone()),
                                cod: Box::new(cod),
                            },
                            span,
                        )
                    })
                }
            }));
        }
        let lhs = self.prod()?;
        if self.eat(&Tok::Arrow) {
            let cod = self.arrow()?;
            return Ok(Expr::new(
                ExprKind::Pi {
                    modality: None,
                    name: None,
                    dom: Box::new(lhs),
                    cod: Box::new(cod),
                },
                self.since(start),
            ));
        }
        Ok(lhs)
    }

    fn prod(&mut self) -> PResult<Expr> {
        let start = self.span();
        if let Some(groups) = self.try_telescope(&Tok::Times) {
            let snd = self.prod()?;
            let span = self.since(start);
            return Ok(groups.into_iter().rev().fold(snd, |snd, g| {
                g.names.iter().rev().fold(snd, |snd, (x, _)| {
                    Expr::new(
                        ExprKind::Sigma {
                            name: Some(x.clone()),
                            fst: Box::new(g.ty.clone()),
                            snd: Box::new(snd),
                        },
                        span,
                    )
                })
            }));
        }
        let lhs = self.zapp()?;
        if self.eat(&Tok::Times) {
            let snd = self.prod()?;
            return Ok(Expr::new(
                ExprKind::Sigma {
                    name: None,
                    fst: Box::new(lhs),
                    snd: Box::new(snd),
                },
                self.since(start),
            ));
        }
        Ok(lhs)
    }

    fn zapp(&mut self) -> PResult<Expr> {
        let start = self.span();
        let mut lhs = self.app()?;
        while self.eat(&Tok::Zapp) || self.eat_kw("zapp") {
            let rhs = self.app()?;
            lhs = Expr::new(
                ExprKind::Zapp(Box::new(lhs), Box::new(rhs)),
                self.since(start),
            );
        }
        Ok(lhs)
    }

    fn app(&mut self) -> PResult<Expr> {
        let start = self.span();
        let unary = |p: &mut Self, k: fn(Box<Expr>) -> ExprKind| -> PResult<Expr> {
            let arg = p.app()?;
            Ok(Expr::new(k(Box::new(arg)), p.since(start)))
        };
        if self.eat(&Tok::Later) || self.eat_kw("Later") {
            return unary(self, ExprKind::Later);
        }
        if self.eat_kw("next") {
            return unary(self, ExprKind::Next);
        }
        if let Tok::BoxKw(m) = self.peek().clone() {
            let sp = self.bump().span;
            let mu = self.mod_text(&m, sp)?;
            let arg = self.app()?;
            return Ok(Expr::new(
                ExprKind::MkBox(mu, Box::new(arg)),
                self.since(start),
            ));
        }
        if self.eat_kw("Path") {
            let a = self.arg()?;
            let x = self.arg()?;
            let y = self.arg()?;
            return Ok(Expr::new(
                ExprKind::Path(Box::new(a), Box::new(x), Box::new(y)),
                self.since(start),
            ));
        }
        if self.eat_kw("comp") {
            self.expect(&Tok::Caret)?;
            let (var, _) = self.name()?;
            let line = self.arg()?;
            let branches = self.system()?;
            let cap = self.arg()?;
            return Ok(Expr::new(
                ExprKind::Comp {
                    var,
                    line: Box::new(line),
                    branches,
                    cap: Box::new(cap),
                },
                self.since(start),
            ));
        }
        let mut e = self.arg()?;
        loop {
            if self.at_atom_start() {
                let a = self.arg()?;
                e = Expr::new(ExprKind::App(Box::new(e), Box::new(a)), self.since(start));
            } else if self.eat(&Tok::At) {
                let r = self.ineg()?;
                e = Expr::new(ExprKind::PApp(Box::new(e), r), self.since(start));
            } else {
                return Ok(e);
            }
        }
    }

    fn at_atom_start(&self) -> bool {
        match self.peek() {
            Tok::Ident(s) => {
                !is_keyword(s)
                    || universe_level(s).is_some()
                    || ["Bool", "true", "false"].contains(&s.as_str())
            }
            Tok::LParen | Tok::LBrack | Tok::LAngle => true,
            Tok::Lt => {
                matches!(self.peek_at(1), Tok::Ident(_))
                    && matches!(self.peek_at(2), Tok::Bar | Tok::Compose | Tok::Dot)
            }
            _ => false,
        }
    }

    fn arg(&mut self) -> PResult<Expr> {
        let start = self.span();
        let mut e = self.atom()?;
        while self.peek() == &Tok::Dot && matches!(self.peek_at(1), Tok::Num(1 | 2)) {
            self.bump();
            let Tok::Num(n) = self.bump().tok else {
                unreachable!()
            };
            let k = if n == 1 {
                ExprKind::Fst(Box::new(e))
            } else {
                ExprKind::Snd(Box::new(e))
            };
            e = Expr::new(k, self.since(start));
        }
        Ok(e)
    }

    fn atom(&mut self) -> PResult<Expr> {
        let start = self.span();
        match self.peek().clone() {
            Tok::Ident(s) => {
                let kind = if let Some(n) = universe_level(&s) {
                    ExprKind::Univ(n)
                } else {
                    match s.as_str() {
                        "Bool" => ExprKind::Bool,
                        "true" => ExprKind::True,
                        "false" => ExprKind::False,
                        _ if is_keyword(&s) => return self.error("an expression"),
                        _ => ExprKind::Var(s),
                    }
                };
                self.bump();
                Ok(Expr::new(kind, start))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                let kind = if self.eat(&Tok::Colon) {
                    let t = self.expr()?;
                    ExprKind::Ann(Box::new(e), Box::new(t))
                } else if self.eat(&Tok::Comma) {
                    let b = self.expr()?;
                    ExprKind::Pair(Box::new(e), Box::new(b))
                } else {
                    self.expect(&Tok::RParen)?;
                    return Ok(e);
                };
                self.expect(&Tok::RParen)?;
                Ok(Expr::new(kind, self.since(start)))
            }
            Tok::LBrack => {
                let bs = self.system()?;
                Ok(Expr::new(ExprKind::Sys(bs), self.since(start)))
            }
            Tok::LAngle | Tok::Lt => {
                let close = if self.bump().tok == Tok::LAngle {
                    Tok::RAngle
                } else {
                    Tok::Gt
                };
                let mu = self.modality()?;
                self.expect(&Tok::Bar)?;
                let a = self.expr()?;
                self.expect(&close)?;
                Ok(Expr::new(
                    ExprKind::Modal(mu, Box::new(a)),
                    self.since(start),
                ))
            }
            _ => self.error("an expression"),
        }
    }

    fn system(&mut self) -> PResult<Vec<(FExpr, Expr)>> {
        let open = self.span();
        self.expect(&Tok::LBrack)?;
        let mut out = Vec::new();
        if self.eat(&Tok::RBrack) {
            return Ok(out);
        }
        loop {
            let phi = self.face()?;
            self.expect(&Tok::MapsTo)?;
            let e = self.expr()?;
            out.push((phi, e));
            if self.eat(&Tok::Bar) {
                continue;
            }
            if self.eat(&Tok::RBrack) {
                return Ok(out);
            }
            return Err(Diagnostic::parse(
                open.to(self.span()),
                format!(
                    "unbalanced system bracket: expected `|` or `]`, found {}",
                    self.peek().describe()
                ),
            ));
        }
    }

    pub fn face(&mut self) -> PResult<FExpr> {
        let mut f = self.fmeet()?;
        while self.eat(&Tok::Join) {
            let g = self.fmeet()?;
            f = FExpr::Join(Box::new(f), Box::new(g));
        }
        Ok(f)
    }

    fn fmeet(&mut self) -> PResult<FExpr> {
        let mut f = self.fatom()?;
        while self.eat(&Tok::Meet) {
            let g = self.fatom()?;
            f = FExpr::Meet(Box::new(f), Box::new(g));
        }
        Ok(f)
    }

    fn fatom(&mut self) -> PResult<FExpr> {
        if self.eat(&Tok::Top) || self.eat_kw("top") {
            return Ok(FExpr::Top);
        }
        if self.eat(&Tok::Bot) || self.eat_kw("bot") {
            return Ok(FExpr::Bot);
        }
        self.expect(&Tok::LParen)?;
        let save = self.pos;
        if let Ok(r) = self.interval() {
            if self.eat(&Tok::Eq) {
                let f = match self.bump().tok {
                    Tok::Num(0) => FExpr::Eq0(r),
                    Tok::Num(1) => FExpr::Eq1(r),
                    _ => {
                        self.pos -= 1;
                        return self.error("`0` or `1`");
                    }
                };
                self.expect(&Tok::RParen)?;
                return Ok(f);
            }
        }
        self.pos = save;
        let f = self.face()?;
        self.expect(&Tok::RParen)?;
        Ok(f)
    }

    pub fn interval(&mut self) -> PResult<IExpr> {
        let mut r = self.imeet()?;
        while self.eat(&Tok::Join) {
            let s = self.imeet()?;
            r = IExpr::Join(Box::new(r), Box::new(s));
        }
        Ok(r)
    }

    fn imeet(&mut self) -> PResult<IExpr> {
        let mut r = self.ineg()?;
        while self.eat(&Tok::Meet) {
            let s = self.ineg()?;
            r = IExpr::Meet(Box::new(r), Box::new(s));
        }
        Ok(r)
    }

    fn ineg(&mut self) -> PResult<IExpr> {
        if self.eat(&Tok::Tilde) {
            return Ok(IExpr::Neg(Box::new(self.ineg()?)));
        }
        let mut r = self.iatom()?;
        while self.eat(&Tok::Caret) {
            let mu = self.modality()?;
            r = IExpr::Exc(Box::new(r), mu);
        }
        Ok(r)
    }

    fn iatom(&mut self) -> PResult<IExpr> {
        match self.peek().clone() {
            Tok::Num(0) => {
                self.bump();
                Ok(IExpr::Zero)
            }
            Tok::Num(1) => {
                self.bump();
                Ok(IExpr::One)
            }
            Tok::Ident(s) if !is_keyword(&s) => {
                let sp = self.bump().span;
                Ok(IExpr::Var(s, sp))
            }
            Tok::LParen => {
                self.bump();
                let r = self.interval()?;
                self.expect(&Tok::RParen)?;
                Ok(r)
            }
            _ => self.error("an interval expression"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(src: &str) -> ExprKind {
        parse_expr(src).unwrap().kind
    }

    #[test]
    fn box_parses_to_mkbox() {
        assert!(matches!(k("box_ℓ x"), ExprKind::MkBox(m, _) if m.parts == ["ℓ"]));
    }

    #[test]
    fn composition_example() {
        let e = k("<i> comp^j A [(i=0) ↦ a | (i=1) ↦ q @ j] (p @ i)");
        let ExprKind::PLam(i, body) = e else { panic!() };
        assert_eq!(i, "i");
        let ExprKind::Comp {
            var, branches, cap, ..
        } = body.kind
        else {
            panic!()
        };
        assert_eq!(var, "j");
        assert_eq!(branches.len(), 2);
        assert!(matches!(branches[1].1.kind, ExprKind::PApp(..)));
        assert!(matches!(cap.kind, ExprKind::PApp(..)));
    }

    #[test]
    fn unbalanced_system_is_an_error() {
        assert!(parse_expr("[(i=0) ↦ a | (i=1) ↦ b").is_err());
        assert!(parse_expr("[(i=0) ↦ a ) ").is_err());
    }

    #[test]
    fn binders_and_arrows() {
        let e = k("(ℓ | x y : A) → B x");
        let ExprKind::Pi {
            modality,
            name,
            cod,
            ..
        } = e
        else {
            panic!()
        };
        assert_eq!(modality.unwrap().parts, ["ℓ"]);
        assert_eq!(name.as_deref(), Some("x"));
        assert!(matches!(cod.kind, ExprKind::Pi { .. }));
        assert!(matches!(k("(f x : A) → B"), ExprKind::Pi { .. }));
        assert!(matches!(k("(f x) → B"), ExprKind::Pi { name: None, .. }));
        assert!(matches!(
            k("(x : A) × B"),
            ExprKind::Sigma { name: Some(_), .. }
        ));
        assert!(matches!(k("(x : A)"), ExprKind::Ann(..)));
    }

    #[test]
    fn aliases() {
        assert_eq!(k("▷ A"), k("Later A"));
        assert_eq!(k("f ⊛ a"), k("f zapp a"));
        assert_eq!(k("⟨ℓ∘ℓ | A⟩"), k("<ℓ.ℓ | A>"));
        assert_eq!(
            k("let 𝐒_δ box_γ x = e in x"),
            k("let lock_δ box_γ x = e in x")
        );
    }

    #[test]
    fn faces_and_exchange() {
        let e = k("[(i ^ ℓ = 0) ∧ (j=1) ↦ a | ⊤ ↦ b]");
        let ExprKind::Sys(bs) = e else { panic!() };
        assert!(matches!(&bs[0].0, FExpr::Meet(a, _) if matches!(**a, FExpr::Eq0(IExpr::Exc(..)))));
        assert_eq!(bs[1].0, FExpr::Top);
    }

    #[test]
    fn declarations() {
        let m = parse_module(
            "import modes guarded\n def f @ s (A : U) (x : A) : A := x\n axiom l (A : U) : A rewrite l A",
        )
        .unwrap();
        assert_eq!(m.items.len(), 3);
        let Item::Decl(d) = &m.items[1] else { panic!() };
        assert_eq!(d.mode.as_deref(), Some("s"));
        assert_eq!(d.params.len(), 2);
        let Item::Decl(d) = &m.items[2] else { panic!() };
        assert!(d.body.is_none() && d.rewrite.is_some());
    }
}
