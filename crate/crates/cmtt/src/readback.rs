//! Core terms back to surface syntax, for displaying normal forms.
//!
//! Exchange annotations and keys are dropped: the elaborator recomputes
//! them, so the printout re-elaborates to a convertible term.

use cmtt_kernel::interval::{FTm, Face, ITm, Interval};
use cmtt_kernel::mode_theory::{Modality, ModeTheory};
use cmtt_kernel::syntax::{Tm, Ty};

use crate::ast::*;

pub struct Readback<'t> {
    theory: &'t ModeTheory,
    tms: Vec<String>,
    ints: Vec<String>,
    counter: usize,
}

fn mk(kind: ExprKind) -> Expr {
    Expr::new(kind, Span::default())
}

fn bx(e: Expr) -> Box<Expr> {
    Box::new(e)
}

impl<'t> Readback<'t> {
    pub fn new(theory: &'t ModeTheory) -> Self {
        Readback {
            theory,
            tms: Vec::new(),
            ints: Vec::new(),
            counter: 0,
        }
    }

    /// Starts under term variables with the given names, outermost first.
    pub fn with_names(theory: &'t ModeTheory, tms: Vec<String>) -> Self {
        Readback {
            tms,
            ..Readback::new(theory)
        }
    }

    fn fresh(&mut self, base: &str) -> String {
        self.counter += 1;
        format!("{base}{}", self.counter)
    }

    fn modality(&self, mu: &Modality) -> ModExpr {
        ModExpr {
            parts: self.theory.show(mu).split('∘').map(str::to_owned).collect(),
            span: Span::default(),
        }
    }

    fn with_tm<T>(&mut self, name: String, f: impl FnOnce(&mut Self) -> T) -> T {
        self.tms.push(name);
        let out = f(self);
        self.tms.pop();
        out
    }

    fn with_int<T>(&mut self, name: String, f: impl FnOnce(&mut Self) -> T) -> T {
        self.ints.push(name);
        let out = f(self);
        self.ints.pop();
        out
    }

    fn int_name(&self, k: usize) -> String {
        self.ints
            .len()
            .checked_sub(k + 1)
            .map_or_else(|| format!("?i{k}"), |p| self.ints[p].clone())
    }

    pub fn interval(&self, r: &ITm) -> IExpr {
        match r {
            Interval::Zero => IExpr::Zero,
            Interval::One => IExpr::One,
            Interval::Var(a) => IExpr::Var(self.int_name(a.index), Span::default()),
            Interval::Neg(a) => IExpr::Neg(Box::new(self.interval(a))),
            Interval::Meet(a, b) => {
                IExpr::Meet(Box::new(self.interval(a)), Box::new(self.interval(b)))
            }
            Interval::Join(a, b) => {
                IExpr::Join(Box::new(self.interval(a)), Box::new(self.interval(b)))
            }
        }
    }

    pub fn face(&self, phi: &FTm) -> FExpr {
        match phi {
            Face::Top => FExpr::Top,
            Face::Bot => FExpr::Bot,
            Face::Eq0(r) => FExpr::Eq0(self.interval(r)),
            Face::Eq1(r) => FExpr::Eq1(self.interval(r)),
            Face::Meet(a, b) => FExpr::Meet(Box::new(self.face(a)), Box::new(self.face(b))),
            Face::Join(a, b) => FExpr::Join(Box::new(self.face(a)), Box::new(self.face(b))),
        }
    }

    fn motive(&mut self, m: &Option<Box<Ty>>) -> Option<Motive> {
        m.as_ref().map(|t| {
            let z = self.fresh("z");
            let ty = self.with_tm(z.clone(), |s| s.ty(t));
            Motive { var: z, ty: bx(ty) }
        })
    }

    pub fn ty(&mut self, t: &Ty) -> Expr {
        match t {
            Ty::Pi(mu, a, b) => {
                let dom = self.ty(a);
                let x = self.fresh("x");
                let cod = self.with_tm(x.clone(), |s| s.ty(b));
                mk(ExprKind::Pi {
                    modality: (!mu.is_identity()).then(|| self.modality(mu)),
                    name: Some(x),
                    dom: bx(dom),
                    cod: bx(cod),
                })
            }
            Ty::Path(line, a, b) => {
                let l = self.with_int("_".into(), |s| s.ty(line));
                mk(ExprKind::Path(bx(l), bx(self.tm(a)), bx(self.tm(b))))
            }
            Ty::Modal(mu, a) => mk(ExprKind::Modal(self.modality(mu), bx(self.ty(a)))),
            Ty::Sys(bs) => mk(ExprKind::Sys(
                bs.iter()
                    .map(|(phi, b)| (self.face(phi), self.ty(b)))
                    .collect(),
            )),
            Ty::Bool => mk(ExprKind::Bool),
            Ty::Sigma(a, b) => {
                let fst = self.ty(a);
                let x = self.fresh("x");
                let snd = self.with_tm(x.clone(), |s| s.ty(b));
                mk(ExprKind::Sigma {
                    name: Some(x),
                    fst: bx(fst),
                    snd: bx(snd),
                })
            }
            Ty::Univ(n) => mk(ExprKind::Univ(*n)),
            Ty::Sub(a, _) => self.ty(a),
            Ty::El(e) => self.tm(e),
        }
    }

    pub fn tm(&mut self, e: &Tm) -> Expr {
        match e {
            Tm::Var(k) => mk(ExprKind::Var(
                self.tms
                    .len()
                    .checked_sub(k + 1)
                    .map_or_else(|| format!("?x{k}"), |p| self.tms[p].clone()),
            )),
            Tm::Const(c) => mk(ExprKind::Var(c.clone())),
            Tm::Lam(b) => {
                let x = self.fresh("x");
                let body = self.with_tm(x.clone(), |s| s.tm(b));
                mk(ExprKind::Lam(x, bx(body)))
            }
            Tm::App { fun, arg, .. } => mk(ExprKind::App(bx(self.tm(fun)), bx(self.tm(arg)))),
            Tm::PLam(b) => {
                let i = self.fresh("i");
                let body = self.with_int(i.clone(), |s| s.tm(b));
                mk(ExprKind::PLam(i, bx(body)))
            }
            Tm::PApp(p, r) => mk(ExprKind::PApp(bx(self.tm(p)), self.interval(r))),
            Tm::MkBox(mu, a) => mk(ExprKind::MkBox(self.modality(mu), bx(self.tm(a)))),
            Tm::LetMod {
                mu,
                nu,
                motive,
                scrut,
                branch,
            } => {
                let lock = mu
                    .as_ref()
                    .filter(|m| !m.is_identity())
                    .map(|m| self.modality(m));
                let nu = nu.as_ref().map_or_else(
                    || ModExpr {
                        parts: vec!["?".into()],
                        span: Span::default(),
                    },
                    |n| self.modality(n),
                );
                let scrut = self.tm(scrut);
                let motive = self.motive(motive);
                let x = self.fresh("x");
                let body = self.with_tm(x.clone(), |s| s.tm(branch));
                mk(ExprKind::LetBox {
                    lock,
                    nu,
                    name: x,
                    scrut: bx(scrut),
                    motive,
                    body: bx(body),
                })
            }
            Tm::Sys(bs) => mk(ExprKind::Sys(
                bs.iter()
                    .map(|(phi, b)| (self.face(phi), self.tm(b)))
                    .collect(),
            )),
            Tm::Comp {
                line,
                phi,
                tube,
                cap,
            } => {
                let i = self.fresh("i");
                let (l, t) = self.with_int(i.clone(), |s| (s.ty(line), s.tm(tube)));
                let branches = if matches!(phi, Face::Bot) {
                    Vec::new()
                } else {
                    vec![(self.face(phi), t)]
                };
                mk(ExprKind::Comp {
                    var: i,
                    line: bx(l),
                    branches,
                    cap: bx(self.tm(cap)),
                })
            }
            Tm::Sub(a, _) => self.tm(a),
            Tm::True => mk(ExprKind::True),
            Tm::False => mk(ExprKind::False),
            Tm::If {
                motive,
                scrut,
                then_,
                else_,
            } => {
                let scrut = self.tm(scrut);
                let motive = self.motive(motive);
                mk(ExprKind::If {
                    scrut: bx(scrut),
                    motive,
                    then_: bx(self.tm(then_)),
                    else_: bx(self.tm(else_)),
                })
            }
            Tm::Pair(a, b) => mk(ExprKind::Pair(bx(self.tm(a)), bx(self.tm(b)))),
            Tm::Fst(a) => mk(ExprKind::Fst(bx(self.tm(a)))),
            Tm::Snd(a) => mk(ExprKind::Snd(bx(self.tm(a)))),
            Tm::Code(t) => self.ty(t),
            Tm::Ann(a, t) => mk(ExprKind::Ann(bx(self.tm(a)), bx(self.ty(t)))),
        }
    }
}
