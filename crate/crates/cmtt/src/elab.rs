//! Surface to core: name resolution, type/term coercions, sugar.
//!
//! Type formers used where a term is expected become codes, and terms used
//! where a type is expected become `El`. Modal and interval annotations the
//! surface leaves implicit are filled by the kernel when it checks the
//! result.

use std::collections::HashMap;

use cmtt_kernel::interval::{exc_int, Face, IAtom, Interval};
use cmtt_kernel::interval::{FTm, ITm};
use cmtt_kernel::mode_theory::{Modality, ModeId, ModeTheory};
use cmtt_kernel::syntax::{Subst, Tm, Ty};
use cmtt_kernel::typecheck::{Decl as CoreDecl, DeclBody};

use crate::ast::*;
use crate::diag::Diagnostic;

pub type EResult<T> = Result<T, Diagnostic>;

#[derive(Clone, Debug)]
enum Entry {
    /// A term variable; `ann` is known for parameters and pattern variables.
    Tm {
        name: String,
        ann: Option<Modality>,
    },
    Int(String),
    Lock(Modality),
}

#[derive(Clone, Debug)]
struct Scope {
    outer: ModeId,
    entries: Vec<Entry>,
}

impl Scope {
    fn with(&self, e: Entry) -> Scope {
        let mut s = self.clone();
        s.entries.push(e);
        s
    }
}

/// Generator spellings accepted in ASCII source when the theory has no
/// generator of that name.
const GEN_ALIASES: [(&str, &str); 6] = [
    ("l", "ℓ"),
    ("ell", "ℓ"),
    ("g", "γ"),
    ("gamma", "γ"),
    ("d", "δ"),
    ("delta", "δ"),
];

pub struct Elab<'t> {
    pub theory: &'t ModeTheory,
    /// Modes of the declarations elaborated so far.
    pub globals: HashMap<String, ModeId>,
    fresh: std::cell::Cell<usize>,
}

impl<'t> Elab<'t> {
    pub fn new(theory: &'t ModeTheory) -> Self {
        Elab {
            theory,
            globals: HashMap::new(),
            fresh: std::cell::Cell::new(0),
        }
    }

    pub fn default_mode(&self) -> ModeId {
        self.theory.modes().next().unwrap_or(ModeId(0))
    }

    pub fn resolve_mode(&self, name: Option<&str>, span: Span) -> EResult<ModeId> {
        match name {
            None => Ok(self.default_mode()),
            Some(m) => self
                .theory
                .mode(m)
                .map_err(|e| Diagnostic::new("scope", span, e.to_string())),
        }
    }

    fn mode_of(&self, sc: &Scope) -> ModeId {
        sc.entries.iter().fold(sc.outer, |m, e| match e {
            Entry::Lock(mu) => mu.dom(),
            _ => m,
        })
    }

    fn id_here(&self, sc: &Scope) -> Modality {
        self.theory.id(self.mode_of(sc))
    }

    pub fn modality(&self, m: &ModExpr) -> EResult<Modality> {
        let err = |msg: String| Diagnostic::new("modality", m.span, msg);
        let mut acc: Option<Modality> = None;
        for part in &m.parts {
            let g = if let Some(mode) = part.strip_prefix("1_") {
                self.theory
                    .mode(mode)
                    .map(|md| self.theory.id(md))
                    .map_err(|e| err(e.to_string()))?
            } else {
                match self.theory.generator(part) {
                    Ok(g) => g,
                    Err(e) => {
                        let alias = GEN_ALIASES.iter().find(|(a, _)| a == part);
                        match alias.and_then(|(_, g)| self.theory.generator(g).ok()) {
                            Some(g) => g,
                            None => return Err(err(e.to_string())),
                        }
                    }
                }
            };
            acc = Some(match acc {
                None => g,
                Some(a) => self
                    .theory
                    .compose(&a, &g)
                    .map_err(|e| err(e.to_string()))?,
            });
        }
        acc.ok_or_else(|| err("empty modality".into()))
    }

    fn later(&self, span: Span) -> EResult<Modality> {
        self.theory.generator("ℓ").map_err(|_| {
            Diagnostic::new(
                "modality",
                span,
                format!(
                    "`▷` and `next` need a generator ℓ, which {} lacks",
                    self.theory.name()
                ),
            )
        })
    }

    fn ivar(&self, sc: &Scope, name: &str, span: Span) -> EResult<usize> {
        let mut k = 0;
        for e in sc.entries.iter().rev() {
            match e {
                Entry::Int(x) if x == name => return Ok(k),
                Entry::Int(_) => k += 1,
                Entry::Tm { name: x, .. } if x == name => {
                    return Err(Diagnostic::new(
                        "scope",
                        span,
                        format!("{name} is a term variable, not an interval variable"),
                    ))
                }
                _ => {}
            }
        }
        Err(Diagnostic::new(
            "scope",
            span,
            format!("unknown interval variable {name}"),
        ))
    }

    fn interval(&self, sc: &Scope, r: &IExpr) -> EResult<ITm> {
        Ok(match r {
            IExpr::Zero => Interval::Zero,
            IExpr::One => Interval::One,
            IExpr::Var(x, sp) => Interval::Var(IAtom::plain(self.ivar(sc, x, *sp)?)),
            IExpr::Neg(a) => Interval::neg(self.interval(sc, a)?),
            IExpr::Meet(a, b) => Interval::meet(self.interval(sc, a)?, self.interval(sc, b)?),
            IExpr::Join(a, b) => Interval::join(self.interval(sc, a)?, self.interval(sc, b)?),
            IExpr::Exc(a, m) => {
                let mu = self.modality(m)?;
                let a = self.interval(sc, a)?;
                exc_int(self.theory, &mu, &a)
                    .map_err(|e| Diagnostic::new("modality", m.span, e.to_string()))?
            }
        })
    }

    fn face(&self, sc: &Scope, phi: &FExpr) -> EResult<FTm> {
        Ok(match phi {
            FExpr::Top => Face::Top,
            FExpr::Bot => Face::Bot,
            FExpr::Eq0(r) => Face::Eq0(self.interval(sc, r)?),
            FExpr::Eq1(r) => Face::Eq1(self.interval(sc, r)?),
            FExpr::Meet(a, b) => Face::meet(self.face(sc, a)?, self.face(sc, b)?),
            FExpr::Join(a, b) => Face::join(self.face(sc, a)?, self.face(sc, b)?),
        })
    }

    /// A term variable, wrapped in an explicit key when the locks after it
    /// form exactly the trailing block and differ from its annotation.
    fn var(&self, sc: &Scope, name: &str, span: Span) -> EResult<Tm> {
        let mut k = 0;
        for (pos, e) in sc.entries.iter().enumerate().rev() {
            match e {
                Entry::Tm { name: x, ann } if x == name => {
                    return Ok(self.keyed(sc, pos, k, ann.as_ref()));
                }
                Entry::Tm { .. } => k += 1,
                Entry::Int(x) if x == name => {
                    return Err(Diagnostic::new(
                        "scope",
                        span,
                        format!("{name} is an interval variable; use it with `@`"),
                    ))
                }
                _ => {}
            }
        }
        if self.globals.contains_key(name) {
            return Ok(Tm::Const(name.to_owned()));
        }
        Err(Diagnostic::new(
            "scope",
            span,
            format!("unknown name {name}"),
        ))
    }

    fn keyed(&self, sc: &Scope, pos: usize, index: usize, ann: Option<&Modality>) -> Tm {
        let plain = Tm::Var(index);
        let Some(mu) = ann else { return plain };
        let after = &sc.entries[pos + 1..];
        let trailing = after
            .iter()
            .rev()
            .take_while(|e| matches!(e, Entry::Lock(_)))
            .count();
        if trailing == 0
            || after
                .iter()
                .rev()
                .skip(trailing)
                .any(|e| matches!(e, Entry::Lock(_)))
        {
            return plain;
        }
        let locks = after[after.len() - trailing..].iter().map(|e| match e {
            Entry::Lock(l) => l,
            _ => unreachable!(),
        });
        let Ok(rho) = self.theory.compose_all(mu.cod(), locks) else {
            return plain;
        };
        let needed = rho.dom() == mu.dom()
            && !self.theory.mod_equal(mu, &rho).unwrap_or(true)
            && self.theory.cell_exists(mu, &rho).unwrap_or(false);
        if needed {
            plain.sub(Subst::Key {
                src: mu.clone(),
                dst: rho,
            })
        } else {
            plain
        }
    }

    fn fresh(&self, base: &str) -> String {
        let n = self.fresh.get();
        self.fresh.set(n + 1);
        format!("{base}%{n}")
    }

    fn ty(&self, sc: &Scope, e: &Expr) -> EResult<Ty> {
        Ok(match &e.kind {
            ExprKind::Univ(n) => Ty::Univ(*n),
            ExprKind::Bool => Ty::Bool,
            ExprKind::Pi {
                modality,
                name,
                dom,
                cod,
            } => {
                let mu = match modality {
                    Some(m) => self.modality(m)?,
                    None => self.id_here(sc),
                };
                let a = self.ty(&sc.with(Entry::Lock(mu.clone())), dom)?;
                let x = name.clone().unwrap_or_default();
                let b = self.ty(
                    &sc.with(Entry::Tm {
                        name: x,
                        ann: Some(mu.clone()),
                    }),
                    cod,
                )?;
                Ty::pi(mu, a, b)
            }
            ExprKind::Sigma { name, fst, snd } => {
                let a = self.ty(sc, fst)?;
                let b = self.ty(
                    &sc.with(Entry::Tm {
                        name: name.clone().unwrap_or_default(),
                        ann: Some(self.id_here(sc)),
                    }),
                    snd,
                )?;
                Ty::sigma(a, b)
            }
            ExprKind::Path(a, x, y) => {
                let line = self.ty(&sc.with(Entry::Int(String::new())), a)?;
                Ty::path(line, self.tm(sc, x)?, self.tm(sc, y)?)
            }
            ExprKind::Modal(m, a) => {
                let mu = self.modality(m)?;
                let a = self.ty(&sc.with(Entry::Lock(mu.clone())), a)?;
                Ty::modal(mu, a)
            }
            ExprKind::Later(a) => {
                let mu = self.later(e.span)?;
                let a = self.ty(&sc.with(Entry::Lock(mu.clone())), a)?;
                Ty::modal(mu, a)
            }
            ExprKind::Sys(bs) => {
                let mut out = Vec::new();
                for (phi, b) in bs {
                    out.push((self.face(sc, phi)?, self.ty(sc, b)?));
                }
                Ty::Sys(out)
            }
            _ => Ty::el(self.tm(sc, e)?),
        })
    }

    fn motive(&self, sc: &Scope, m: &Option<Motive>, ann: Modality) -> EResult<Option<Box<Ty>>> {
        match m {
            None => Ok(None),
            Some(m) => Ok(Some(Box::new(self.ty(
                &sc.with(Entry::Tm {
                    name: m.var.clone(),
                    ann: Some(ann),
                }),
                &m.ty,
            )?))),
        }
    }

    fn tm(&self, sc: &Scope, e: &Expr) -> EResult<Tm> {
        Ok(match &e.kind {
            ExprKind::Univ(_)
            | ExprKind::Bool
            | ExprKind::Pi { .. }
            | ExprKind::Sigma { .. }
            | ExprKind::Path(..)
            | ExprKind::Modal(..)
            | ExprKind::Later(_) => Tm::code(self.ty(sc, e)?),
            ExprKind::Var(x) => self.var(sc, x, e.span)?,
            ExprKind::True => Tm::True,
            ExprKind::False => Tm::False,
            ExprKind::Lam(x, b) => Tm::lam(self.tm(
                &sc.with(Entry::Tm {
                    name: x.clone(),
                    ann: None,
                }),
                b,
            )?),
            ExprKind::App(f, a) => Tm::app(self.tm(sc, f)?, self.tm(sc, a)?),
            ExprKind::PLam(i, b) => Tm::plam(self.tm(&sc.with(Entry::Int(i.clone())), b)?),
            ExprKind::PApp(p, r) => Tm::papp(self.tm(sc, p)?, self.interval(sc, r)?),
            ExprKind::MkBox(m, a) => {
                let mu = self.modality(m)?;
                let a = self.tm(&sc.with(Entry::Lock(mu.clone())), a)?;
                Tm::mkbox(mu, a)
            }
            ExprKind::Next(a) => {
                let mu = self.later(e.span)?;
                let a = self.tm(&sc.with(Entry::Lock(mu.clone())), a)?;
                Tm::mkbox(mu, a)
            }
            ExprKind::Zapp(..) => self.tm(sc, &self.expand_zapp(e)?)?,
            ExprKind::LetBox {
                lock,
                nu,
                name,
                scrut,
                motive,
                body,
            } => {
                let mu = match lock {
                    Some(l) => self.modality(l)?,
                    None => self.id_here(sc),
                };
                let nu = self.modality(nu)?;
                let inner = self
                    .theory
                    .compose(&mu, &nu)
                    .map_err(|err| Diagnostic::new("modality", e.span, err.to_string()))?;
                let scrut = self.tm(&sc.with(Entry::Lock(mu.clone())), scrut)?;
                let motive = self.motive(sc, motive, mu.clone())?;
                let branch = self.tm(
                    &sc.with(Entry::Tm {
                        name: name.clone(),
                        ann: Some(inner),
                    }),
                    body,
                )?;
                Tm::LetMod {
                    mu: Some(mu),
                    nu: Some(nu),
                    motive,
                    scrut: Box::new(scrut),
                    branch: Box::new(branch),
                }
            }
            ExprKind::If {
                scrut,
                motive,
                then_,
                else_,
            } => Tm::If {
                motive: self.motive(sc, motive, self.id_here(sc))?,
                scrut: Box::new(self.tm(sc, scrut)?),
                then_: Box::new(self.tm(sc, then_)?),
                else_: Box::new(self.tm(sc, else_)?),
            },
            ExprKind::Sys(bs) => {
                let mut out = Vec::new();
                for (phi, b) in bs {
                    out.push((self.face(sc, phi)?, self.tm(sc, b)?));
                }
                Tm::Sys(out)
            }
            ExprKind::Comp {
                var,
                line,
                branches,
                cap,
            } => {
                let isc = sc.with(Entry::Int(var.clone()));
                let line = self.ty(&isc, line)?;
                let mut faces = Vec::new();
                let mut tube = Vec::new();
                for (phi, b) in branches {
                    faces.push(self.face(sc, phi)?);
                    tube.push((self.face(&isc, phi)?, self.tm(&isc, b)?));
                }
                let (phi, tube) = if tube.len() == 1 {
                    (faces.pop().unwrap(), tube.pop().unwrap().1)
                } else {
                    (Face::join_all(faces), Tm::Sys(tube))
                };
                Tm::comp(line, phi, tube, self.tm(sc, cap)?)
            }
            ExprKind::Pair(a, b) => Tm::pair(self.tm(sc, a)?, self.tm(sc, b)?),
            ExprKind::Fst(a) => Tm::Fst(Box::new(self.tm(sc, a)?)),
            ExprKind::Snd(a) => Tm::Snd(Box::new(self.tm(sc, a)?)),
            ExprKind::Ann(a, t) => Tm::Ann(Box::new(self.tm(sc, a)?), Box::new(self.ty(sc, t)?)),
        })
    }

    /// `f ⊛ a1 ⊛ … ⊛ an` unboxes `f` and each `ai` under the later modality
    /// and boxes the application. An operand written `next e` is used as
    /// `e` directly, which is the β-reduct of unboxing it.
    fn expand_zapp(&self, e: &Expr) -> EResult<Expr> {
        let mut args = Vec::new();
        let mut head = e;
        while let ExprKind::Zapp(f, a) = &head.kind {
            args.push(a.as_ref());
            head = f;
        }
        args.reverse();
        let sp = e.span;
        let ell = ModExpr {
            parts: vec!["ℓ".into()],
            span: sp,
        };
        let mk = |k: ExprKind| Expr::new(k, sp);
        let mut binds = Vec::new();
        let mut app = match &head.kind {
            ExprKind::Next(inner) => (**inner).clone(),
            _ => {
                let g = self.fresh("g");
                binds.push((g.clone(), head.clone()));
                mk(ExprKind::Var(g))
            }
        };
        for a in args {
            let arg = match &a.kind {
                ExprKind::Next(inner) => (**inner).clone(),
                _ => {
                    let y = self.fresh("y");
                    binds.push((y.clone(), a.clone()));
                    mk(ExprKind::Var(y))
                }
            };
            app = mk(ExprKind::App(Box::new(app), Box::new(arg)));
        }
        let mut out = mk(ExprKind::MkBox(ell.clone(), Box::new(app)));
        for (name, scrut) in binds.into_iter().rev() {
            out = mk(ExprKind::LetBox {
                lock: None,
                nu: ell.clone(),
                name,
                scrut: Box::new(scrut),
                motive: None,
                body: Box::new(out),
            });
        }
        Ok(out)
    }

    /// The scope of a declaration's parameters, and the Π-type prefix
    /// they contribute.
    fn params(&self, outer: ModeId, params: &[Param]) -> EResult<(Scope, Vec<(Modality, Ty)>)> {
        let mut sc = Scope {
            outer,
            entries: Vec::new(),
        };
        let mut doms = Vec::new();
        for p in params {
            let mu = match &p.modality {
                Some(m) => self.modality(m)?,
                None => self.id_here(&sc),
            };
            let a = self.ty(&sc.with(Entry::Lock(mu.clone())), &p.ty)?;
            doms.push((mu.clone(), a));
            sc = sc.with(Entry::Tm {
                name: p.name.clone(),
                ann: Some(mu),
            });
        }
        Ok((sc, doms))
    }

    /// Elaborates a declaration; its own name is in scope for an axiom's
    /// rewrite clause only.
    pub fn decl(&mut self, d: &Decl) -> EResult<CoreDecl> {
        let r = self.decl_inner(d).map_err(|e| e.in_decl(&d.name));
        if let Ok(cd) = &r {
            self.globals.insert(d.name.clone(), cd.mode);
        }
        r
    }

    fn decl_inner(&mut self, d: &Decl) -> EResult<CoreDecl> {
        let mode = self.resolve_mode(d.mode.as_deref(), d.span)?;
        let (sc, doms) = self.params(mode, &d.params)?;
        let cod = self.ty(&sc, &d.ty)?;
        let ty = doms
            .iter()
            .rev()
            .fold(cod, |b, (mu, a)| Ty::pi(mu.clone(), a.clone(), b));
        let lams = |t: Tm| (0..d.params.len()).fold(t, |t, _| Tm::lam(t));
        let body = match d.kind {
            DeclKind::Def | DeclKind::Theorem => {
                let b = d
                    .body
                    .as_ref()
                    .ok_or_else(|| Diagnostic::new("parse", d.span, "definition without a body"))?;
                DeclBody::Def(lams(self.tm(&sc, b)?))
            }
            DeclKind::Axiom => {
                let unfold = match &d.rewrite {
                    None => None,
                    Some(r) => {
                        self.globals.insert(d.name.clone(), mode);
                        let out = self.tm(&sc, r);
                        self.globals.remove(&d.name);
                        Some(lams(out?))
                    }
                };
                DeclBody::Axiom { unfold }
            }
        };
        Ok(CoreDecl {
            name: d.name.clone(),
            mode,
            ty,
            body,
        })
    }

    /// Elaborates a telescope into a core context plus the scope for terms
    /// over it.
    pub fn telescope(
        &self,
        mode: ModeId,
        params: &[Param],
    ) -> EResult<(cmtt_kernel::syntax::Ctx, Tele)> {
        let (sc, doms) = self.params(mode, params)?;
        let mut ctx = cmtt_kernel::syntax::Ctx::empty(mode);
        for (mu, a) in doms {
            ctx = ctx.with(cmtt_kernel::syntax::Entry::TmVar(mu, a));
        }
        Ok((ctx, Tele(sc)))
    }

    pub fn tm_in(&self, tele: &Tele, e: &Expr) -> EResult<Tm> {
        self.tm(&tele.0, e)
    }

    pub fn ty_in(&self, tele: &Tele, e: &Expr) -> EResult<Ty> {
        self.ty(&tele.0, e)
    }
}

/// The scope of an elaborated telescope.
pub struct Tele(Scope);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_expr, parse_module};

    fn guarded() -> ModeTheory {
        ModeTheory::guarded()
    }

    #[test]
    fn next_inserts_the_key() {
        let th = guarded();
        let el = Elab::new(&th);
        let (_, tele) = el
            .telescope(
                th.mode("t").unwrap(),
                &crate::parser::parse_telescope("(A : U) (x : A)").unwrap(),
            )
            .unwrap();
        let t = el.tm_in(&tele, &parse_expr("next x").unwrap()).unwrap();
        let ell = th.generator("ℓ").unwrap();
        let key = Subst::Key {
            src: th.id(th.mode("t").unwrap()),
            dst: ell.clone(),
        };
        assert_eq!(t, Tm::mkbox(ell, Tm::Var(0).sub(key)));
    }

    #[test]
    fn types_and_codes() {
        let th = guarded();
        let mut el = Elab::new(&th);
        let m = parse_module("def T : U := Bool → Bool\n def f : T := λ x. x").unwrap();
        let mut out = Vec::new();
        for it in &m.items {
            let Item::Decl(d) = it else { panic!() };
            out.push(el.decl(d).unwrap());
        }
        let DeclBody::Def(b) = &out[0].body else {
            panic!()
        };
        assert!(matches!(b, Tm::Code(_)));
        assert!(matches!(out[1].ty, Ty::El(_)));
    }

    #[test]
    fn unknown_names_are_scope_errors() {
        let th = guarded();
        let mut el = Elab::new(&th);
        let m = parse_module("def f (x : Bool) : Bool := y").unwrap();
        let Item::Decl(d) = &m.items[0] else { panic!() };
        let e = el.decl(d).unwrap_err();
        assert_eq!(e.rule, "scope");
        assert_eq!(e.decl.as_deref(), Some("f"));
    }

    #[test]
    fn zapp_unfolds_to_nested_unboxing() {
        let th = guarded();
        let el = Elab::new(&th);
        let (_, tele) = el
            .telescope(
                th.mode("t").unwrap(),
                &crate::parser::parse_telescope("(f : Bool) (a : Bool)").unwrap(),
            )
            .unwrap();
        let t = el
            .tm_in(&tele, &parse_expr("f ⊛ a ⊛ next a").unwrap())
            .unwrap();
        let Tm::LetMod { branch, .. } = t else {
            panic!()
        };
        assert!(matches!(*branch, Tm::LetMod { .. }));
    }
}
