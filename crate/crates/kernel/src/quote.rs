//! Type-directed readback into η-long normal forms.
//!
//! Readback first produces unannotated atoms and then relocks the result
//! against the shape of the context, which restores every exchange
//! annotation.

use std::rc::Rc;

use thiserror::Error;

use crate::domain::*;
use crate::eval::{app, apply, dapply, fst, junk, papp, snd};
use crate::interval::{Clause, Dnf, FTm, IAtom, ITm, Interval};
use crate::mode_theory::{Modality, ModeId, ModeTheory};
use crate::syntax::{relock_face, relock_int, relock_tm, relock_ty, Shape, SyntaxError, Tm, Ty};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuoteError {
    #[error("variable escapes its scope")]
    UnboundVar(VarId),
    #[error("dimension {0} escapes its scope")]
    UnboundDim(Dim),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
}

type Result<T> = std::result::Result<T, QuoteError>;

#[derive(Clone, Debug)]
pub enum QEntry {
    Tm(VarId),
    Int(Dim),
    Lock(Modality),
    Restrict,
}

/// The names bound by a context, outermost first, together with its
/// outer mode.
#[derive(Clone, Debug)]
pub struct QCtx {
    pub outer: ModeId,
    pub entries: Vec<QEntry>,
}

impl QCtx {
    pub fn new(outer: ModeId) -> QCtx {
        QCtx {
            outer,
            entries: Vec::new(),
        }
    }

    pub fn with(&self, e: QEntry) -> QCtx {
        let mut c = self.clone();
        c.entries.push(e);
        c
    }

    /// Binder annotations do not affect relocking, so term variables get
    /// an identity placeholder.
    pub fn shapes(&self, theory: &ModeTheory) -> Vec<Shape> {
        self.entries
            .iter()
            .map(|e| match e {
                QEntry::Tm(_) => Shape::TmVar(theory.id(self.outer)),
                QEntry::Int(_) => Shape::IntVar,
                QEntry::Lock(mu) => Shape::Lock(mu.clone()),
                QEntry::Restrict => Shape::Restrict,
            })
            .collect()
    }

    fn var_index(&self, x: VarId) -> Result<usize> {
        let mut k = 0;
        for e in self.entries.iter().rev() {
            if let QEntry::Tm(y) = e {
                if *y == x {
                    return Ok(k);
                }
                k += 1;
            }
        }
        Err(QuoteError::UnboundVar(x))
    }

    fn dim_index(&self, d: Dim) -> Result<usize> {
        let mut k = 0;
        for e in self.entries.iter().rev() {
            if let QEntry::Int(y) = e {
                if *y == d {
                    return Ok(k);
                }
                k += 1;
            }
        }
        Err(QuoteError::UnboundDim(d))
    }
}

pub fn quote_iv_raw(cx: &QCtx, r: &IVal) -> Result<ITm> {
    r.try_bind(&mut |d| Ok(Interval::Var(IAtom::plain(cx.dim_index(*d)?))))
}

pub fn quote_face_raw(cx: &QCtx, phi: &FVal) -> Result<FTm> {
    phi.to_face()
        .try_bind(&mut |d| Ok(Interval::Var(IAtom::plain(cx.dim_index(*d)?))))
}

pub fn quote_tm(theory: &ModeTheory, cx: &QCtx, ty: &V, v: &V) -> Result<Tm> {
    let raw = Quoter { theory }.tm(cx, ty, v)?;
    Ok(relock_tm(theory, cx.outer, &cx.shapes(theory), &raw)?)
}

pub fn quote_ty(theory: &ModeTheory, cx: &QCtx, v: &V) -> Result<Ty> {
    let raw = Quoter { theory }.ty(cx, v)?;
    Ok(relock_ty(theory, cx.outer, &cx.shapes(theory), &raw)?)
}

pub fn quote_iv(theory: &ModeTheory, cx: &QCtx, r: &IVal) -> Result<ITm> {
    Ok(relock_int(
        theory,
        cx.outer,
        &cx.shapes(theory),
        &quote_iv_raw(cx, r)?,
    )?)
}

pub fn quote_face(theory: &ModeTheory, cx: &QCtx, phi: &FVal) -> Result<FTm> {
    Ok(relock_face(
        theory,
        cx.outer,
        &cx.shapes(theory),
        &quote_face_raw(cx, phi)?,
    )?)
}

struct Quoter<'a> {
    #[allow(dead_code)]
    theory: &'a ModeTheory,
}

fn clause_subst(c: &Clause<Dim>) -> DimSubst {
    subst_of_clause(c)
}

impl Quoter<'_> {
    fn tm(&self, cx: &QCtx, ty: &V, v: &V) -> Result<Tm> {
        if let Val::Sys(bs) = &**v {
            return self.sys(cx, ty, bs);
        }
        match &**ty {
            Val::Pi(_, a, b) => {
                let (x, xv) = fresh_var(a.clone());
                let body = self.tm(&cx.with(QEntry::Tm(x)), &apply(b, xv.clone()), &app(v, xv))?;
                Ok(Tm::lam(body))
            }
            Val::Path(l, _, _) => {
                let i = Dim::fresh();
                let iv = Interval::Var(i);
                let body = self.tm(&cx.with(QEntry::Int(i)), &dapply(l, &iv), &papp(v, &iv))?;
                Ok(Tm::plam(body))
            }
            Val::Sigma(a, b) => {
                let p1 = fst(v);
                let t1 = self.tm(cx, a, &p1)?;
                let t2 = self.tm(cx, &apply(b, p1), &snd(v))?;
                Ok(Tm::pair(t1, t2))
            }
            Val::Modal(mu, a) => match &**v {
                Val::MkBox(_, p) => Ok(Tm::mkbox(mu.clone(), self.tm(cx, a, p)?)),
                _ => self.untyped(cx, v),
            },
            Val::Univ(_) => Ok(Tm::code(self.ty(cx, v)?)),
            Val::Sys(tbs) if !tbs.is_empty() => {
                // A stuck type system: read back under each of its faces.
                let mut out = Vec::new();
                for (psi, t) in tbs {
                    for c in psi.clauses() {
                        let s = clause_subst(c);
                        let cx2 = cx.with(QEntry::Restrict);
                        let e =
                            self.tm(&cx2, &crate::eval::act(&s, t), &crate::eval::act(&s, v))?;
                        out.push((quote_face_raw(cx, &Dnf::from_clauses([c.clone()]))?, e));
                    }
                }
                Ok(Tm::Sys(out))
            }
            _ => self.untyped(cx, v),
        }
    }

    fn sys(&self, cx: &QCtx, ty: &V, bs: &[(FVal, V)]) -> Result<Tm> {
        let mut out = Vec::new();
        for (psi, b) in bs {
            let f = quote_face_raw(cx, psi)?;
            let e = self.tm(&cx.with(QEntry::Restrict), ty, b)?;
            out.push((f, e));
        }
        Ok(Tm::Sys(out))
    }

    /// Readback for values whose type gives no η information.
    fn untyped(&self, cx: &QCtx, v: &V) -> Result<Tm> {
        match &**v {
            Val::True => Ok(Tm::True),
            Val::False => Ok(Tm::False),
            Val::Neu(n, _) => self.neu(cx, n),
            Val::Sys(bs) => self.sys(cx, &junk(), bs),
            Val::MkBox(mu, p) => Ok(Tm::mkbox(mu.clone(), self.untyped(cx, p)?)),
            Val::Pair(a, b) => Ok(Tm::pair(self.untyped(cx, a)?, self.untyped(cx, b)?)),
            Val::Lam(c) => {
                let (x, xv) = fresh_var(junk());
                Ok(Tm::lam(
                    self.untyped(&cx.with(QEntry::Tm(x)), &apply(c, xv))?,
                ))
            }
            Val::PLam(c) => {
                let i = Dim::fresh();
                Ok(Tm::plam(self.untyped(
                    &cx.with(QEntry::Int(i)),
                    &dapply(c, &Interval::Var(i)),
                )?))
            }
            _ => Ok(Tm::code(self.ty(cx, v)?)),
        }
    }

    fn ty(&self, cx: &QCtx, v: &V) -> Result<Ty> {
        Ok(match &**v {
            Val::Pi(mu, a, b) => {
                let (x, xv) = fresh_var(a.clone());
                Ty::pi(
                    mu.clone(),
                    self.ty(cx, a)?,
                    self.ty(&cx.with(QEntry::Tm(x)), &apply(b, xv))?,
                )
            }
            Val::Path(l, a0, a1) => {
                let i = Dim::fresh();
                Ty::path(
                    self.ty(&cx.with(QEntry::Int(i)), &dapply(l, &Interval::Var(i)))?,
                    self.tm(cx, &dapply(l, &Interval::Zero), a0)?,
                    self.tm(cx, &dapply(l, &Interval::One), a1)?,
                )
            }
            Val::Modal(mu, a) => Ty::modal(mu.clone(), self.ty(cx, a)?),
            Val::Sigma(a, b) => {
                let (x, xv) = fresh_var(a.clone());
                Ty::sigma(
                    self.ty(cx, a)?,
                    self.ty(&cx.with(QEntry::Tm(x)), &apply(b, xv))?,
                )
            }
            Val::Bool => Ty::Bool,
            Val::Univ(l) => Ty::Univ(*l),
            Val::Sys(bs) => {
                let mut out = Vec::new();
                for (psi, t) in bs {
                    out.push((
                        quote_face_raw(cx, psi)?,
                        self.ty(&cx.with(QEntry::Restrict), t)?,
                    ));
                }
                Ty::Sys(out)
            }
            Val::Neu(n, _) => Ty::el(self.neu(cx, n)?),
            _ => Ty::el(self.untyped(cx, v)?),
        })
    }

    fn neu(&self, cx: &QCtx, n: &Neu) -> Result<Tm> {
        let mut acc = match &n.head {
            Head::Var(x) => Tm::Var(cx.var_index(*x)?),
            Head::Const(c) => Tm::Const(c.clone()),
            Head::Comp {
                line,
                phi,
                tube,
                cap,
            } => {
                let i = Dim::fresh();
                let iv = Interval::Var(i);
                let l_i = dapply(line, &iv);
                let line_t = self.ty(&cx.with(QEntry::Int(i)), &l_i)?;
                let tube_cx = cx.with(QEntry::Restrict).with(QEntry::Int(i));
                let tube_t = self.tm(&tube_cx, &l_i, &dapply(tube, &iv))?;
                let cap_t = self.tm(cx, &dapply(line, &Interval::Zero), cap)?;
                Tm::comp(line_t, quote_face_raw(cx, phi)?, tube_t, cap_t)
            }
        };
        for e in &n.spine {
            acc = match e {
                Elim::App { mu, arg, dom } => Tm::app_mod(mu.clone(), acc, self.tm(cx, dom, arg)?),
                Elim::PApp(r) => Tm::papp(acc, quote_iv_raw(cx, r)?),
                Elim::LetMod {
                    mu,
                    nu,
                    inner,
                    motive,
                    branch,
                } => {
                    let boxed = Rc::new(Val::Modal(nu.clone(), inner.clone()));
                    let (x, xv) = fresh_var(boxed);
                    let motive_t = self.ty(&cx.with(QEntry::Tm(x)), &apply(motive, xv))?;
                    let (y, yv) = fresh_var(inner.clone());
                    let at = apply(motive, Rc::new(Val::MkBox(nu.clone(), yv.clone())));
                    let branch_t = self.tm(&cx.with(QEntry::Tm(y)), &at, &apply(branch, yv))?;
                    Tm::LetMod {
                        mu: Some(mu.clone()),
                        nu: Some(nu.clone()),
                        motive: Some(Box::new(motive_t)),
                        scrut: Box::new(acc),
                        branch: Box::new(branch_t),
                    }
                }
                Elim::If {
                    motive,
                    then_,
                    else_,
                } => {
                    let (x, xv) = fresh_var(Rc::new(Val::Bool));
                    let motive_t = self.ty(&cx.with(QEntry::Tm(x)), &apply(motive, xv))?;
                    let t = self.tm(cx, &apply(motive, Rc::new(Val::True)), then_)?;
                    let f = self.tm(cx, &apply(motive, Rc::new(Val::False)), else_)?;
                    Tm::If {
                        motive: Some(Box::new(motive_t)),
                        scrut: Box::new(acc),
                        then_: Box::new(t),
                        else_: Box::new(f),
                    }
                }
                Elim::Fst => Tm::Fst(Box::new(acc)),
                Elim::Snd => Tm::Snd(Box::new(acc)),
            };
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::eval;

    #[test]
    fn eta_long_for_functions() {
        let th = ModeTheory::trivial();
        let m = th.mode("m").unwrap();
        let id = th.id(m);
        let ty = Rc::new(Val::Pi(
            id.clone(),
            Rc::new(Val::Bool),
            Clo::Const(Rc::new(Val::Bool)),
        ));
        let (f, fv) = fresh_var(ty.clone());
        let cx = QCtx::new(m).with(QEntry::Tm(f));
        let t = quote_tm(&th, &cx, &ty, &fv).unwrap();
        assert_eq!(t, Tm::lam(Tm::app_mod(id, Tm::Var(1), Tm::Var(0))));
    }

    #[test]
    fn escaping_dimension_is_reported() {
        let th = ModeTheory::trivial();
        let m = th.mode("m").unwrap();
        let d = Dim::fresh();
        let r = Interval::Var(d);
        assert_eq!(
            quote_iv(&th, &QCtx::new(m), &r),
            Err(QuoteError::UnboundDim(d))
        );
    }

    #[test]
    fn path_abstraction_reads_back() {
        let th = ModeTheory::trivial();
        let m = th.mode("m").unwrap();
        let ty = Rc::new(Val::Path(
            DClo::Const(Rc::new(Val::Bool)),
            Rc::new(Val::True),
            Rc::new(Val::True),
        ));
        let v = eval(&Env::default(), &Tm::plam(Tm::True));
        assert_eq!(
            quote_tm(&th, &QCtx::new(m), &ty, &v).unwrap(),
            Tm::plam(Tm::True)
        );
    }
}
