//! Core syntax.
//!
//! Term variables and interval variables live in separate de Bruijn index
//! spaces: `Tm::Var(k)` counts only term-variable entries and `IAtom::index`
//! counts only interval entries. Locks and restrictions are transparent to
//! both; the lock discipline is a typing-time check.
//!
//! Several fields are optional so that the surface language can hand the
//! checker partially annotated terms. The checker returns a copy with every
//! optional field filled in, and in strict mode it rejects missing ones.

use std::fmt;

use thiserror::Error;

use crate::interval::{FTm, Face, IAtom, ITm, Interval};
use crate::mode_theory::{Modality, ModeError, ModeId, ModeTheory};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ty {
    /// `(μ | A) → B`; `A` lives behind the lock, `B` binds a term variable.
    Pi(Modality, Box<Ty>, Box<Ty>),
    /// `Path A a b`; `A` binds an interval variable.
    Path(Box<Ty>, Box<Tm>, Box<Tm>),
    Modal(Modality, Box<Ty>),
    Sys(Vec<(FTm, Ty)>),
    Bool,
    /// `Σ A B`; `B` binds an unlocked term variable.
    Sigma(Box<Ty>, Box<Ty>),
    Univ(u32),
    Sub(Box<Ty>, Box<Subst>),
    El(Box<Tm>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tm {
    Var(usize),
    Const(String),
    Lam(Box<Tm>),
    App {
        modality: Option<Modality>,
        fun: Box<Tm>,
        arg: Box<Tm>,
    },
    PLam(Box<Tm>),
    PApp(Box<Tm>, ITm),
    MkBox(Modality, Box<Tm>),
    /// `letmod_μ^ν(a, x. b)` at motive `B`; `a` lives behind `𝐒_μ`, the
    /// motive binds `x : (μ | ⟨ν | A⟩)` and the branch binds `x : (μ∘ν | A)`.
    LetMod {
        mu: Option<Modality>,
        nu: Option<Modality>,
        motive: Option<Box<Ty>>,
        scrut: Box<Tm>,
        branch: Box<Tm>,
    },
    Sys(Vec<(FTm, Tm)>),
    /// `comp^i A [φ ↦ u] u0`; `line` and `tube` bind `i`, and `tube` lives
    /// under the restriction `φ`.
    Comp {
        line: Box<Ty>,
        phi: FTm,
        tube: Box<Tm>,
        cap: Box<Tm>,
    },
    Sub(Box<Tm>, Box<Subst>),
    True,
    False,
    If {
        motive: Option<Box<Ty>>,
        scrut: Box<Tm>,
        then_: Box<Tm>,
        else_: Box<Tm>,
    },
    Pair(Box<Tm>, Box<Tm>),
    Fst(Box<Tm>),
    Snd(Box<Tm>),
    /// A type as an element of a universe.
    Code(Box<Ty>),
    Ann(Box<Tm>, Box<Ty>),
}

/// Substitutions `Γ → Δ`, read as maps from the domain context `Γ` to the
/// codomain context `Δ`; `Comp(ξ, δ)` is `ξ ∘ δ`, so `e[ξ ∘ δ] = e[ξ][δ]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Subst {
    Id,
    Comp(Box<Subst>, Box<Subst>),
    Empty,
    WkTm,
    WkInt,
    WkFace(FTm),
    Lock(Modality, Box<Subst>),
    /// `Key_α : Γ.𝐒_dst → Γ.𝐒_src` for the 2-cell `α : src ⇒ dst`.
    Key {
        src: Modality,
        dst: Modality,
    },
    ExtTm(Box<Subst>, Box<Tm>),
    ExtInt(Box<Subst>, ITm),
    Restrict(Box<Subst>, FTm),
    /// `Γ.𝕀.𝐒_μ → Γ.𝐒_μ.𝕀`.
    ExcInt(Modality),
    /// `Γ.𝐒_μ.𝕀 → Γ.𝕀.𝐒_μ`.
    ExcIntInv(Modality),
    /// `Γ.φ.𝐒_μ → Γ.𝐒_μ.⇑φ`; the face is stated in `Γ`.
    ExcFace(Modality, FTm),
    /// `Γ.𝐒_μ.⇑φ → Γ.φ.𝐒_μ`.
    ExcFaceInv(Modality, FTm),
}

impl Ty {
    pub fn pi(mu: Modality, a: Ty, b: Ty) -> Ty {
        Ty::Pi(mu, Box::new(a), Box::new(b))
    }

    pub fn path(line: Ty, a: Tm, b: Tm) -> Ty {
        Ty::Path(Box::new(line), Box::new(a), Box::new(b))
    }

    pub fn modal(mu: Modality, a: Ty) -> Ty {
        Ty::Modal(mu, Box::new(a))
    }

    pub fn sigma(a: Ty, b: Ty) -> Ty {
        Ty::Sigma(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(self, s: Subst) -> Ty {
        Ty::Sub(Box::new(self), Box::new(s))
    }

    pub fn el(t: Tm) -> Ty {
        match t {
            Tm::Code(a) => *a,
            t => Ty::El(Box::new(t)),
        }
    }
}

impl Tm {
    pub fn lam(b: Tm) -> Tm {
        Tm::Lam(Box::new(b))
    }

    pub fn app(f: Tm, a: Tm) -> Tm {
        Tm::App {
            modality: None,
            fun: Box::new(f),
            arg: Box::new(a),
        }
    }

    pub fn app_mod(mu: Modality, f: Tm, a: Tm) -> Tm {
        Tm::App {
            modality: Some(mu),
            fun: Box::new(f),
            arg: Box::new(a),
        }
    }

    pub fn plam(b: Tm) -> Tm {
        Tm::PLam(Box::new(b))
    }

    pub fn papp(p: Tm, r: ITm) -> Tm {
        Tm::PApp(Box::new(p), r)
    }

    pub fn mkbox(mu: Modality, a: Tm) -> Tm {
        Tm::MkBox(mu, Box::new(a))
    }

    pub fn comp(line: Ty, phi: FTm, tube: Tm, cap: Tm) -> Tm {
        Tm::Comp {
            line: Box::new(line),
            phi,
            tube: Box::new(tube),
            cap: Box::new(cap),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(self, s: Subst) -> Tm {
        Tm::Sub(Box::new(self), Box::new(s))
    }

    pub fn code(a: Ty) -> Tm {
        match a {
            Ty::El(t) => *t,
            a => Tm::Code(Box::new(a)),
        }
    }

    pub fn pair(a: Tm, b: Tm) -> Tm {
        Tm::Pair(Box::new(a), Box::new(b))
    }
}

impl Subst {
    pub fn comp(outer: Subst, inner: Subst) -> Subst {
        Subst::Comp(Box::new(outer), Box::new(inner))
    }

    pub fn ext_tm(s: Subst, a: Tm) -> Subst {
        Subst::ExtTm(Box::new(s), Box::new(a))
    }

    pub fn ext_int(s: Subst, r: ITm) -> Subst {
        Subst::ExtInt(Box::new(s), r)
    }

    pub fn lock(mu: Modality, s: Subst) -> Subst {
        Subst::Lock(mu, Box::new(s))
    }

    pub fn restrict(s: Subst, phi: FTm) -> Subst {
        Subst::Restrict(Box::new(s), phi)
    }
}

pub fn ivar(index: usize) -> ITm {
    Interval::Var(IAtom::plain(index))
}

/// One entry of a syntactic context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entry {
    Lock(Modality),
    TmVar(Modality, Ty),
    IntVar,
    Restrict(FTm),
}

/// The shape of a context entry: what substitution and relocking need.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Lock(Modality),
    TmVar(Modality),
    IntVar,
    Restrict,
}

impl Entry {
    pub fn shape(&self) -> Shape {
        match self {
            Entry::Lock(m) => Shape::Lock(m.clone()),
            Entry::TmVar(m, _) => Shape::TmVar(m.clone()),
            Entry::IntVar => Shape::IntVar,
            Entry::Restrict(_) => Shape::Restrict,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SyntaxError {
    #[error("term variable index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("interval variable index {0} out of range")]
    IntervalOutOfRange(usize),
    #[error("malformed substitution: {0}")]
    MalformedSubstitution(String),
    #[error(transparent)]
    Mode(#[from] ModeError),
}

/// A syntactic context `Γ @ m`; entries are listed outermost first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ctx {
    pub mode: ModeId,
    pub entries: Vec<Entry>,
}

impl Ctx {
    pub fn empty(mode: ModeId) -> Ctx {
        Ctx {
            mode,
            entries: Vec::new(),
        }
    }

    pub fn with(mut self, e: Entry) -> Ctx {
        self.entries.push(e);
        self
    }

    pub fn shapes(&self) -> Vec<Shape> {
        self.entries.iter().map(Entry::shape).collect()
    }

    /// Mode after folding every lock; a lock `μ : n → m` moves `m` to `n`.
    pub fn ctx_mode(&self, theory: &ModeTheory) -> Result<ModeId, SyntaxError> {
        shape_mode(theory, self.mode, &self.shapes())
    }

    pub fn locks_between(
        &self,
        theory: &ModeTheory,
        var_index: usize,
    ) -> Result<Modality, SyntaxError> {
        locks_after_var(theory, self.mode, &self.shapes(), var_index)
    }

    /// Adjacent locks fused and identity locks dropped, so contexts related
    /// by lock composition compare equal.
    pub fn fused(&self, theory: &ModeTheory) -> Result<Ctx, SyntaxError> {
        let mut out: Vec<Entry> = Vec::new();
        for e in &self.entries {
            match (out.last_mut(), e) {
                (Some(Entry::Lock(prev)), Entry::Lock(mu)) => {
                    *prev = theory.compose(prev, mu)?;
                }
                _ => out.push(e.clone()),
            }
        }
        out.retain(|e| !matches!(e, Entry::Lock(m) if m.is_identity()));
        Ok(Ctx {
            mode: self.mode,
            entries: out,
        })
    }

    pub fn equiv(&self, other: &Ctx, theory: &ModeTheory) -> Result<bool, SyntaxError> {
        Ok(self.mode == other.mode && self.fused(theory)? == other.fused(theory)?)
    }
}

pub fn shape_mode(
    theory: &ModeTheory,
    mut mode: ModeId,
    shapes: &[Shape],
) -> Result<ModeId, SyntaxError> {
    for s in shapes {
        if let Shape::Lock(mu) = s {
            if mu.cod() != mode {
                return Err(ModeError::ModeMismatch {
                    expected: theory.mode_name(mode).to_owned(),
                    found: theory.mode_name(mu.cod()).to_owned(),
                }
                .into());
            }
            mode = mu.dom();
        }
    }
    Ok(mode)
}

/// Composite of the locks strictly to the right of the entry at position
/// `pos` (an index into `shapes`).
pub fn locks_after(
    theory: &ModeTheory,
    outer: ModeId,
    shapes: &[Shape],
    pos: usize,
) -> Result<Modality, SyntaxError> {
    let at = shape_mode(theory, outer, &shapes[..=pos])?;
    let mut acc = theory.id(at);
    for s in &shapes[pos + 1..] {
        if let Shape::Lock(mu) = s {
            acc = theory.compose(&acc, mu)?;
        }
    }
    Ok(acc)
}

fn position_of(shapes: &[Shape], index: usize, want_tm: bool) -> Option<usize> {
    let mut k = index;
    for (pos, s) in shapes.iter().enumerate().rev() {
        let hit = match s {
            Shape::TmVar(_) => want_tm,
            Shape::IntVar => !want_tm,
            _ => false,
        };
        if hit {
            if k == 0 {
                return Some(pos);
            }
            k -= 1;
        }
    }
    None
}

pub fn tm_var_position(shapes: &[Shape], index: usize) -> Option<usize> {
    position_of(shapes, index, true)
}

pub fn int_var_position(shapes: &[Shape], index: usize) -> Option<usize> {
    position_of(shapes, index, false)
}

pub fn locks_after_var(
    theory: &ModeTheory,
    outer: ModeId,
    shapes: &[Shape],
    index: usize,
) -> Result<Modality, SyntaxError> {
    let pos = tm_var_position(shapes, index).ok_or(SyntaxError::IndexOutOfRange(index))?;
    locks_after(theory, outer, shapes, pos)
}

pub fn locks_after_ivar(
    theory: &ModeTheory,
    outer: ModeId,
    shapes: &[Shape],
    index: usize,
) -> Result<Modality, SyntaxError> {
    let pos = int_var_position(shapes, index).ok_or(SyntaxError::IntervalOutOfRange(index))?;
    locks_after(theory, outer, shapes, pos)
}

fn malformed(msg: impl Into<String>) -> SyntaxError {
    SyntaxError::MalformedSubstitution(msg.into())
}

/// Splits off a trailing block of locks whose composite is `mu`.
fn strip_locks(theory: &ModeTheory, shapes: &[Shape], mu: &Modality) -> Result<usize, SyntaxError> {
    let mut n = shapes.len();
    let mut acc: Option<Modality> = None;
    loop {
        let done = match &acc {
            None => mu.is_identity(),
            Some(a) => a.dom() == mu.dom() && a.cod() == mu.cod() && a == mu,
        };
        if done {
            return Ok(n);
        }
        match shapes[..n].last() {
            Some(Shape::Lock(l)) => {
                acc = Some(match acc {
                    None => l.clone(),
                    Some(a) => theory.compose(l, &a)?,
                });
                n -= 1;
            }
            _ => {
                return Err(malformed(format!(
                    "context does not end in the lock {}",
                    theory.show(mu)
                )))
            }
        }
    }
}

/// The codomain shape of `σ : Γ → Δ` computed from the shape of `Γ`.
pub fn subst_codomain(
    theory: &ModeTheory,
    dom: &[Shape],
    sigma: &Subst,
) -> Result<Vec<Shape>, SyntaxError> {
    let pop = |want: fn(&Shape) -> bool, what: &str| -> Result<Vec<Shape>, SyntaxError> {
        match dom.last() {
            Some(s) if want(s) => Ok(dom[..dom.len() - 1].to_vec()),
            _ => Err(malformed(format!("weakening expects a trailing {what}"))),
        }
    };
    Ok(match sigma {
        Subst::Id => dom.to_vec(),
        Subst::Comp(xi, delta) => {
            let mid = subst_codomain(theory, dom, delta)?;
            subst_codomain(theory, &mid, xi)?
        }
        Subst::Empty => Vec::new(),
        Subst::WkTm => pop(|s| matches!(s, Shape::TmVar(_)), "term variable")?,
        Subst::WkInt => pop(|s| matches!(s, Shape::IntVar), "interval variable")?,
        Subst::WkFace(_) => pop(|s| matches!(s, Shape::Restrict), "restriction")?,
        Subst::Lock(mu, delta) => {
            let n = strip_locks(theory, dom, mu)?;
            let mut out = subst_codomain(theory, &dom[..n], delta)?;
            out.push(Shape::Lock(mu.clone()));
            out
        }
        Subst::Key { src, dst } => {
            let n = strip_locks(theory, dom, dst)?;
            let mut out = dom[..n].to_vec();
            out.push(Shape::Lock(src.clone()));
            out
        }
        Subst::ExtTm(delta, _) => {
            // The annotation is not recoverable from the shape alone; the
            // typechecker supplies the real entry, relocking only needs the
            // position.
            let mut out = subst_codomain(theory, dom, delta)?;
            out.push(Shape::TmVar(theory.id(theory.modes().next().unwrap())));
            out
        }
        Subst::ExtInt(delta, _) => {
            let mut out = subst_codomain(theory, dom, delta)?;
            out.push(Shape::IntVar);
            out
        }
        Subst::Restrict(delta, _) => {
            let mut out = subst_codomain(theory, dom, delta)?;
            out.push(Shape::Restrict);
            out
        }
        Subst::ExcInt(mu) => {
            let n = strip_locks(theory, dom, mu)?;
            match dom[..n].last() {
                Some(Shape::IntVar) => {
                    let mut out = dom[..n - 1].to_vec();
                    out.push(Shape::Lock(mu.clone()));
                    out.push(Shape::IntVar);
                    out
                }
                _ => return Err(malformed("exchange expects Γ.𝕀.𝐒_μ")),
            }
        }
        Subst::ExcIntInv(mu) => match dom.last() {
            Some(Shape::IntVar) => {
                let n = strip_locks(theory, &dom[..dom.len() - 1], mu)?;
                let mut out = dom[..n].to_vec();
                out.push(Shape::IntVar);
                out.push(Shape::Lock(mu.clone()));
                out
            }
            _ => return Err(malformed("inverse exchange expects Γ.𝐒_μ.𝕀")),
        },
        Subst::ExcFace(mu, _) => {
            let n = strip_locks(theory, dom, mu)?;
            match dom[..n].last() {
                Some(Shape::Restrict) => {
                    let mut out = dom[..n - 1].to_vec();
                    out.push(Shape::Lock(mu.clone()));
                    out.push(Shape::Restrict);
                    out
                }
                _ => return Err(malformed("face exchange expects Γ.φ.𝐒_μ")),
            }
        }
        Subst::ExcFaceInv(mu, _) => match dom.last() {
            Some(Shape::Restrict) => {
                let n = strip_locks(theory, &dom[..dom.len() - 1], mu)?;
                let mut out = dom[..n].to_vec();
                out.push(Shape::Restrict);
                out.push(Shape::Lock(mu.clone()));
                out
            }
            _ => return Err(malformed("inverse face exchange expects Γ.𝐒_μ.⇑φ")),
        },
    })
}

/// A substitution in parallel form: codomain variable `k` maps to `imgs[k]`
/// when in range, and to `Var(k - imgs.len() + shift)` otherwise.
#[derive(Clone, Debug)]
struct Par {
    tms: Vec<Tm>,
    tm_shift: usize,
    ivs: Vec<ITm>,
    iv_shift: usize,
}

impl Par {
    fn id() -> Par {
        Par {
            tms: Vec::new(),
            tm_shift: 0,
            ivs: Vec::new(),
            iv_shift: 0,
        }
    }

    fn tm(&self, k: usize) -> Tm {
        if k < self.tms.len() {
            self.tms[k].clone()
        } else {
            Tm::Var(k - self.tms.len() + self.tm_shift)
        }
    }

    fn iv(&self, k: usize) -> ITm {
        if k < self.ivs.len() {
            self.ivs[k].clone()
        } else {
            ivar(k - self.ivs.len() + self.iv_shift)
        }
    }

    /// Under `t` fresh term binders and `i` fresh interval binders.
    fn lift(&self, t: usize, i: usize) -> Par {
        if t == 0 && i == 0 {
            return self.clone();
        }
        let mut tms: Vec<Tm> = (0..t).map(Tm::Var).collect();
        tms.extend(self.tms.iter().map(|e| shift_tm(e, 0, t, 0, i)));
        let mut ivs: Vec<ITm> = (0..i).map(ivar).collect();
        ivs.extend(self.ivs.iter().map(|r| shift_iv(r, 0, i)));
        Par {
            tms,
            tm_shift: self.tm_shift + t,
            ivs,
            iv_shift: self.iv_shift + i,
        }
    }

    /// `self` then `inner`: `e[self][inner]`.
    fn then(&self, inner: &Par) -> Par {
        let mut tms: Vec<Tm> = self.tms.iter().map(|e| subst_tm(inner, e)).collect();
        if self.tm_shift < inner.tms.len() {
            tms.extend(inner.tms[self.tm_shift..].iter().cloned());
        }
        let tm_shift = inner.tm_shift + self.tm_shift.saturating_sub(inner.tms.len());
        let mut ivs: Vec<ITm> = self.ivs.iter().map(|r| subst_iv(inner, r)).collect();
        if self.iv_shift < inner.ivs.len() {
            ivs.extend(inner.ivs[self.iv_shift..].iter().cloned());
        }
        let iv_shift = inner.iv_shift + self.iv_shift.saturating_sub(inner.ivs.len());
        Par {
            tms,
            tm_shift,
            ivs,
            iv_shift,
        }
    }
}

fn par_of(sigma: &Subst) -> Par {
    match sigma {
        Subst::Id
        | Subst::Key { .. }
        | Subst::ExcInt(_)
        | Subst::ExcIntInv(_)
        | Subst::ExcFace(..)
        | Subst::ExcFaceInv(..)
        | Subst::WkFace(_) => Par::id(),
        // Nothing in the empty context; any shift is harmless.
        Subst::Empty => Par::id(),
        Subst::Comp(xi, delta) => par_of(xi).then(&par_of(delta)),
        Subst::WkTm => Par {
            tm_shift: 1,
            ..Par::id()
        },
        Subst::WkInt => Par {
            iv_shift: 1,
            ..Par::id()
        },
        Subst::Lock(_, delta) | Subst::Restrict(delta, _) => par_of(delta),
        Subst::ExtTm(delta, a) => {
            let mut p = par_of(delta);
            // Extension of a parallel substitution: prepend the image.
            let mut tms = vec![(**a).clone()];
            tms.append(&mut p.tms);
            p.tms = tms;
            p
        }
        Subst::ExtInt(delta, r) => {
            let mut p = par_of(delta);
            let mut ivs = vec![r.clone()];
            ivs.append(&mut p.ivs);
            p.ivs = ivs;
            p
        }
    }
}

fn shift_iv(r: &ITm, cut: usize, by: usize) -> ITm {
    r.bind(&mut |a| {
        Interval::Var(IAtom {
            index: if a.index >= cut {
                a.index + by
            } else {
                a.index
            },
            exc: a.exc.clone(),
        })
    })
}

fn shift_tm(e: &Tm, tcut: usize, tby: usize, icut: usize, iby: usize) -> Tm {
    let mut p = Par::id();
    // Build a parallel substitution equivalent to the shift.
    p.tms = (0..tcut).map(Tm::Var).collect();
    p.tm_shift = tcut + tby;
    p.ivs = (0..icut).map(ivar).collect();
    p.iv_shift = icut + iby;
    subst_tm(&p, e)
}

fn subst_iv(p: &Par, r: &ITm) -> ITm {
    r.bind(&mut |a| p.iv(a.index))
}

fn subst_face(p: &Par, phi: &FTm) -> FTm {
    phi.bind(&mut |a| p.iv(a.index))
}

fn subst_ty(p: &Par, t: &Ty) -> Ty {
    match t {
        Ty::Pi(mu, a, b) => Ty::pi(mu.clone(), subst_ty(p, a), subst_ty(&p.lift(1, 0), b)),
        Ty::Path(a, x, y) => Ty::path(subst_ty(&p.lift(0, 1), a), subst_tm(p, x), subst_tm(p, y)),
        Ty::Modal(mu, a) => Ty::modal(mu.clone(), subst_ty(p, a)),
        Ty::Sys(bs) => Ty::Sys(
            bs.iter()
                .map(|(f, a)| (subst_face(p, f), subst_ty(p, a)))
                .collect(),
        ),
        Ty::Bool => Ty::Bool,
        Ty::Univ(l) => Ty::Univ(*l),
        Ty::Sigma(a, b) => Ty::sigma(subst_ty(p, a), subst_ty(&p.lift(1, 0), b)),
        Ty::Sub(a, s) => subst_ty(&par_of(s).then(p), a),
        Ty::El(t) => Ty::El(Box::new(subst_tm(p, t))),
    }
}

fn subst_tm(p: &Par, e: &Tm) -> Tm {
    let b = |x: &Tm| Box::new(subst_tm(p, x));
    match e {
        Tm::Var(k) => p.tm(*k),
        Tm::Const(c) => Tm::Const(c.clone()),
        Tm::Lam(body) => Tm::Lam(Box::new(subst_tm(&p.lift(1, 0), body))),
        Tm::App { modality, fun, arg } => Tm::App {
            modality: modality.clone(),
            fun: b(fun),
            arg: b(arg),
        },
        Tm::PLam(body) => Tm::PLam(Box::new(subst_tm(&p.lift(0, 1), body))),
        Tm::PApp(q, r) => Tm::PApp(b(q), subst_iv(p, r)),
        Tm::MkBox(mu, a) => Tm::MkBox(mu.clone(), b(a)),
        Tm::LetMod {
            mu,
            nu,
            motive,
            scrut,
            branch,
        } => Tm::LetMod {
            mu: mu.clone(),
            nu: nu.clone(),
            motive: motive
                .as_ref()
                .map(|m| Box::new(subst_ty(&p.lift(1, 0), m))),
            scrut: b(scrut),
            branch: Box::new(subst_tm(&p.lift(1, 0), branch)),
        },
        Tm::Sys(bs) => Tm::Sys(
            bs.iter()
                .map(|(f, a)| (subst_face(p, f), subst_tm(p, a)))
                .collect(),
        ),
        Tm::Comp {
            line,
            phi,
            tube,
            cap,
        } => Tm::Comp {
            line: Box::new(subst_ty(&p.lift(0, 1), line)),
            phi: subst_face(p, phi),
            tube: Box::new(subst_tm(&p.lift(0, 1), tube)),
            cap: b(cap),
        },
        Tm::Sub(a, s) => subst_tm(&par_of(s).then(p), a),
        Tm::True => Tm::True,
        Tm::False => Tm::False,
        Tm::If {
            motive,
            scrut,
            then_,
            else_,
        } => Tm::If {
            motive: motive
                .as_ref()
                .map(|m| Box::new(subst_ty(&p.lift(1, 0), m))),
            scrut: b(scrut),
            then_: b(then_),
            else_: b(else_),
        },
        Tm::Pair(x, y) => Tm::Pair(b(x), b(y)),
        Tm::Fst(x) => Tm::Fst(b(x)),
        Tm::Snd(x) => Tm::Snd(b(x)),
        Tm::Code(a) => Tm::Code(Box::new(subst_ty(p, a))),
        Tm::Ann(x, a) => Tm::Ann(b(x), Box::new(subst_ty(p, a))),
    }
}

/// Applies an explicit substitution and eliminates every nested one. The
/// result is relocked against `dom`, the shape of the domain context, so
/// exchange annotations reflect where each atom now sits.
pub fn apply_subst_tm(
    theory: &ModeTheory,
    outer: ModeId,
    dom: &[Shape],
    sigma: &Subst,
    e: &Tm,
) -> Result<Tm, SyntaxError> {
    subst_codomain(theory, dom, sigma)?;
    let out = subst_tm(&par_of(sigma), e);
    relock_tm(theory, outer, dom, &out)
}

pub fn apply_subst_ty(
    theory: &ModeTheory,
    outer: ModeId,
    dom: &[Shape],
    sigma: &Subst,
    t: &Ty,
) -> Result<Ty, SyntaxError> {
    subst_codomain(theory, dom, sigma)?;
    let out = subst_ty(&par_of(sigma), t);
    relock_ty(theory, outer, dom, &out)
}

pub fn apply_subst_int(
    theory: &ModeTheory,
    outer: ModeId,
    dom: &[Shape],
    sigma: &Subst,
    r: &ITm,
) -> Result<ITm, SyntaxError> {
    subst_codomain(theory, dom, sigma)?;
    let out = subst_iv(&par_of(sigma), r);
    relock_int(theory, outer, dom, &out)
}

pub fn apply_subst_face(
    theory: &ModeTheory,
    outer: ModeId,
    dom: &[Shape],
    sigma: &Subst,
    phi: &FTm,
) -> Result<FTm, SyntaxError> {
    subst_codomain(theory, dom, sigma)?;
    let out = subst_face(&par_of(sigma), phi);
    relock_face(theory, outer, dom, &out)
}

/// Recomputes the exchange annotation of every atom from the locks between
/// its binder and its use.
struct Relock<'a> {
    theory: &'a ModeTheory,
    outer: ModeId,
    shapes: Vec<Shape>,
}

impl Relock<'_> {
    fn atom(&self, a: &IAtom) -> Result<ITm, SyntaxError> {
        let exc = locks_after_ivar(self.theory, self.outer, &self.shapes, a.index)?;
        Ok(Interval::Var(IAtom::annotated(a.index, exc)))
    }

    fn int(&self, r: &ITm) -> Result<ITm, SyntaxError> {
        r.try_bind(&mut |a| self.atom(a))
    }

    fn face(&self, phi: &FTm) -> Result<FTm, SyntaxError> {
        phi.try_bind(&mut |a| self.atom(a))
    }

    fn under<T>(
        &mut self,
        pushed: &[Shape],
        f: impl FnOnce(&mut Self) -> Result<T, SyntaxError>,
    ) -> Result<T, SyntaxError> {
        let n = self.shapes.len();
        self.shapes.extend_from_slice(pushed);
        let out = f(self);
        self.shapes.truncate(n);
        out
    }

    fn id_here(&self) -> Result<Modality, SyntaxError> {
        Ok(self
            .theory
            .id(shape_mode(self.theory, self.outer, &self.shapes)?))
    }

    fn ty(&mut self, t: &Ty) -> Result<Ty, SyntaxError> {
        Ok(match t {
            Ty::Pi(mu, a, b) => {
                let a2 = self.under(&[Shape::Lock(mu.clone())], |s| s.ty(a))?;
                let b2 = self.under(&[Shape::TmVar(mu.clone())], |s| s.ty(b))?;
                Ty::pi(mu.clone(), a2, b2)
            }
            Ty::Path(a, x, y) => {
                let a2 = self.under(&[Shape::IntVar], |s| s.ty(a))?;
                Ty::path(a2, self.tm(x)?, self.tm(y)?)
            }
            Ty::Modal(mu, a) => Ty::modal(
                mu.clone(),
                self.under(&[Shape::Lock(mu.clone())], |s| s.ty(a))?,
            ),
            Ty::Sys(bs) => {
                let mut out = Vec::new();
                for (f, a) in bs {
                    let f2 = self.face(f)?;
                    let a2 = self.under(&[Shape::Restrict], |s| s.ty(a))?;
                    out.push((f2, a2));
                }
                Ty::Sys(out)
            }
            Ty::Bool => Ty::Bool,
            Ty::Univ(l) => Ty::Univ(*l),
            Ty::Sigma(a, b) => {
                let id = self.id_here()?;
                let a2 = self.ty(a)?;
                let b2 = self.under(&[Shape::TmVar(id)], |s| s.ty(b))?;
                Ty::sigma(a2, b2)
            }
            Ty::Sub(a, sigma) => {
                let cod = subst_codomain(self.theory, &self.shapes, sigma)?;
                let saved = std::mem::replace(&mut self.shapes, cod);
                let a2 = self.ty(a);
                self.shapes = saved;
                Ty::Sub(Box::new(a2?), Box::new(self.subst(sigma)?))
            }
            Ty::El(t) => Ty::El(Box::new(self.tm(t)?)),
        })
    }

    fn subst(&mut self, sigma: &Subst) -> Result<Subst, SyntaxError> {
        // Images inside an explicit substitution live in its domain, which
        // is the current context, except under `Lock`, whose images live
        // behind the lock.
        Ok(match sigma {
            Subst::Comp(xi, delta) => {
                let mid = subst_codomain(self.theory, &self.shapes, delta)?;
                let d2 = self.subst(delta)?;
                let saved = std::mem::replace(&mut self.shapes, mid);
                let x2 = self.subst(xi);
                self.shapes = saved;
                Subst::comp(x2?, d2)
            }
            Subst::Lock(mu, delta) => {
                let n = strip_locks(self.theory, &self.shapes, mu)?;
                let tail = self.shapes.split_off(n);
                let d2 = self.subst(delta);
                self.shapes.extend(tail);
                Subst::lock(mu.clone(), d2?)
            }
            Subst::ExtTm(delta, a) => {
                let d2 = self.subst(delta)?;
                // The image lives behind the lock of the extended variable;
                // the shape does not record it, so relocking leaves the
                // image at the current locks.
                Subst::ext_tm(d2, self.tm(a)?)
            }
            Subst::ExtInt(delta, r) => Subst::ext_int(self.subst(delta)?, self.int(r)?),
            Subst::Restrict(delta, phi) => {
                let d2 = self.subst(delta)?;
                let cod = subst_codomain(self.theory, &self.shapes, delta)?;
                let saved = std::mem::replace(&mut self.shapes, cod);
                let f2 = self.face(phi);
                self.shapes = saved;
                Subst::restrict(d2, f2?)
            }
            other => other.clone(),
        })
    }

    fn tm(&mut self, e: &Tm) -> Result<Tm, SyntaxError> {
        Ok(match e {
            Tm::Var(k) => Tm::Var(*k),
            Tm::Const(c) => Tm::Const(c.clone()),
            Tm::Lam(body) => {
                // The binder's annotation is irrelevant to relocking.
                let id = self.id_here()?;
                Tm::lam(self.under(&[Shape::TmVar(id)], |s| s.tm(body))?)
            }
            Tm::App { modality, fun, arg } => {
                let f2 = self.tm(fun)?;
                let a2 = match modality {
                    Some(mu) => self.under(&[Shape::Lock(mu.clone())], |s| s.tm(arg))?,
                    None => self.tm(arg)?,
                };
                Tm::App {
                    modality: modality.clone(),
                    fun: Box::new(f2),
                    arg: Box::new(a2),
                }
            }
            Tm::PLam(body) => Tm::plam(self.under(&[Shape::IntVar], |s| s.tm(body))?),
            Tm::PApp(p, r) => Tm::papp(self.tm(p)?, self.int(r)?),
            Tm::MkBox(mu, a) => Tm::mkbox(
                mu.clone(),
                self.under(&[Shape::Lock(mu.clone())], |s| s.tm(a))?,
            ),
            Tm::LetMod {
                mu,
                nu,
                motive,
                scrut,
                branch,
            } => {
                let id = self.id_here()?;
                let s2 = match mu {
                    Some(m) => self.under(&[Shape::Lock(m.clone())], |s| s.tm(scrut))?,
                    None => self.tm(scrut)?,
                };
                let m2 = match motive {
                    Some(m) => Some(Box::new(
                        self.under(&[Shape::TmVar(id.clone())], |s| s.ty(m))?,
                    )),
                    None => None,
                };
                let b2 = self.under(&[Shape::TmVar(id)], |s| s.tm(branch))?;
                Tm::LetMod {
                    mu: mu.clone(),
                    nu: nu.clone(),
                    motive: m2,
                    scrut: Box::new(s2),
                    branch: Box::new(b2),
                }
            }
            Tm::Sys(bs) => {
                let mut out = Vec::new();
                for (f, a) in bs {
                    let f2 = self.face(f)?;
                    let a2 = self.under(&[Shape::Restrict], |s| s.tm(a))?;
                    out.push((f2, a2));
                }
                Tm::Sys(out)
            }
            Tm::Comp {
                line,
                phi,
                tube,
                cap,
            } => {
                let l2 = self.under(&[Shape::IntVar], |s| s.ty(line))?;
                let f2 = self.face(phi)?;
                let t2 = self.under(&[Shape::Restrict, Shape::IntVar], |s| s.tm(tube))?;
                Tm::comp(l2, f2, t2, self.tm(cap)?)
            }
            Tm::Sub(a, sigma) => {
                let cod = subst_codomain(self.theory, &self.shapes, sigma)?;
                let saved = std::mem::replace(&mut self.shapes, cod);
                let a2 = self.tm(a);
                self.shapes = saved;
                Tm::Sub(Box::new(a2?), Box::new(self.subst(sigma)?))
            }
            Tm::True => Tm::True,
            Tm::False => Tm::False,
            Tm::If {
                motive,
                scrut,
                then_,
                else_,
            } => {
                let id = self.id_here()?;
                let m2 = match motive {
                    Some(m) => Some(Box::new(self.under(&[Shape::TmVar(id)], |s| s.ty(m))?)),
                    None => None,
                };
                Tm::If {
                    motive: m2,
                    scrut: Box::new(self.tm(scrut)?),
                    then_: Box::new(self.tm(then_)?),
                    else_: Box::new(self.tm(else_)?),
                }
            }
            Tm::Pair(x, y) => Tm::pair(self.tm(x)?, self.tm(y)?),
            Tm::Fst(x) => Tm::Fst(Box::new(self.tm(x)?)),
            Tm::Snd(x) => Tm::Snd(Box::new(self.tm(x)?)),
            Tm::Code(a) => Tm::Code(Box::new(self.ty(a)?)),
            Tm::Ann(x, a) => Tm::Ann(Box::new(self.tm(x)?), Box::new(self.ty(a)?)),
        })
    }
}

pub fn relock_tm(
    theory: &ModeTheory,
    outer: ModeId,
    shapes: &[Shape],
    e: &Tm,
) -> Result<Tm, SyntaxError> {
    Relock {
        theory,
        outer,
        shapes: shapes.to_vec(),
    }
    .tm(e)
}

pub fn relock_ty(
    theory: &ModeTheory,
    outer: ModeId,
    shapes: &[Shape],
    t: &Ty,
) -> Result<Ty, SyntaxError> {
    Relock {
        theory,
        outer,
        shapes: shapes.to_vec(),
    }
    .ty(t)
}

pub fn relock_int(
    theory: &ModeTheory,
    outer: ModeId,
    shapes: &[Shape],
    r: &ITm,
) -> Result<ITm, SyntaxError> {
    Relock {
        theory,
        outer,
        shapes: shapes.to_vec(),
    }
    .int(r)
}

pub fn relock_face(
    theory: &ModeTheory,
    outer: ModeId,
    shapes: &[Shape],
    phi: &FTm,
) -> Result<FTm, SyntaxError> {
    Relock {
        theory,
        outer,
        shapes: shapes.to_vec(),
    }
    .face(phi)
}

/// Rule-named s-expressions, used by `--dump-core`.
pub struct Sexp<'a, T: ?Sized> {
    pub theory: &'a ModeTheory,
    pub node: &'a T,
}

pub fn sexp<'a, T: ?Sized>(theory: &'a ModeTheory, node: &'a T) -> Sexp<'a, T> {
    Sexp { theory, node }
}

struct SexpInt<'a>(&'a ModeTheory, &'a ITm);
struct SexpFace<'a>(&'a ModeTheory, &'a FTm);

impl fmt::Display for SexpInt<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let th = self.0;
        match self.1 {
            Interval::Zero => f.write_str("(int/bot)"),
            Interval::One => f.write_str("(int/top)"),
            Interval::Var(a) => match &a.exc {
                Some(mu) if !mu.is_identity() => {
                    write!(f, "(int/exc {} (int/var {}))", th.show(mu), a.index)
                }
                _ => write!(f, "(int/var {})", a.index),
            },
            Interval::Neg(r) => write!(f, "(int/inv {})", SexpInt(th, r)),
            Interval::Meet(r, s) => write!(f, "(int/meet {} {})", SexpInt(th, r), SexpInt(th, s)),
            Interval::Join(r, s) => write!(f, "(int/join {} {})", SexpInt(th, r), SexpInt(th, s)),
        }
    }
}

impl fmt::Display for SexpFace<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let th = self.0;
        match self.1 {
            Face::Bot => f.write_str("(face/bot)"),
            Face::Top => f.write_str("(face/top)"),
            Face::Eq0(r) => write!(f, "(face/eq {} 0)", SexpInt(th, r)),
            Face::Eq1(r) => write!(f, "(face/eq {} 1)", SexpInt(th, r)),
            Face::Meet(p, q) => write!(f, "(face/meet {} {})", SexpFace(th, p), SexpFace(th, q)),
            Face::Join(p, q) => write!(f, "(face/join {} {})", SexpFace(th, p), SexpFace(th, q)),
        }
    }
}

impl fmt::Display for Sexp<'_, ITm> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        SexpInt(self.theory, self.node).fmt(f)
    }
}

impl fmt::Display for Sexp<'_, FTm> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        SexpFace(self.theory, self.node).fmt(f)
    }
}

impl fmt::Display for Sexp<'_, Ty> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let th = self.theory;
        let s = |t: &Ty| sexp(th, t).to_string();
        let m = |t: &Tm| sexp(th, t).to_string();
        match self.node {
            Ty::Pi(mu, a, b) => write!(f, "(type/pi {} {} {})", th.show(mu), s(a), s(b)),
            Ty::Path(a, x, y) => write!(f, "(type/path {} {} {})", s(a), m(x), m(y)),
            Ty::Modal(mu, a) => write!(f, "(type/mod {} {})", th.show(mu), s(a)),
            Ty::Sys(bs) => {
                f.write_str("(type/sys")?;
                for (p, a) in bs {
                    write!(f, " [{} {}]", SexpFace(th, p), s(a))?;
                }
                f.write_str(")")
            }
            Ty::Bool => f.write_str("(bool)"),
            Ty::Sigma(a, b) => write!(f, "(sigma {} {})", s(a), s(b)),
            Ty::Univ(l) => write!(f, "(univ {l})"),
            Ty::Sub(a, sg) => write!(f, "(type/sb {} {})", s(a), sexp(th, &**sg)),
            Ty::El(t) => write!(f, "(el {})", m(t)),
        }
    }
}

impl fmt::Display for Sexp<'_, Tm> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let th = self.theory;
        let s = |t: &Ty| sexp(th, t).to_string();
        let m = |t: &Tm| sexp(th, t).to_string();
        let md = |mu: &Option<Modality>| match mu {
            Some(mu) => th.show(mu),
            None => "_".to_owned(),
        };
        match self.node {
            Tm::Var(k) => write!(f, "(term/var {k})"),
            Tm::Const(c) => write!(f, "(const {c})"),
            Tm::Lam(b) => write!(f, "(term/pi-lam {})", m(b)),
            Tm::App { modality, fun, arg } => {
                write!(f, "(term/pi-app {} {} {})", md(modality), m(fun), m(arg))
            }
            Tm::PLam(b) => write!(f, "(term/path-abs {})", m(b)),
            Tm::PApp(p, r) => write!(f, "(term/path-app {} {})", m(p), SexpInt(th, r)),
            Tm::MkBox(mu, a) => write!(f, "(term/mod-mod {} {})", th.show(mu), m(a)),
            Tm::LetMod {
                mu,
                nu,
                motive,
                scrut,
                branch,
            } => write!(
                f,
                "(term/mod-let {} {} {} {} {})",
                md(mu),
                md(nu),
                motive.as_ref().map(|t| s(t)).unwrap_or_else(|| "_".into()),
                m(scrut),
                m(branch)
            ),
            Tm::Sys(bs) if bs.is_empty() => f.write_str("(term/sys-null)"),
            Tm::Sys(bs) => {
                f.write_str("(term/sys-bin")?;
                for (p, a) in bs {
                    write!(f, " [{} {}]", SexpFace(th, p), m(a))?;
                }
                f.write_str(")")
            }
            Tm::Comp {
                line,
                phi,
                tube,
                cap,
            } => write!(
                f,
                "(term/comp {} {} {} {})",
                s(line),
                SexpFace(th, phi),
                m(tube),
                m(cap)
            ),
            Tm::Sub(a, sg) => write!(f, "(term/sb {} {})", m(a), sexp(th, &**sg)),
            Tm::True => f.write_str("(true)"),
            Tm::False => f.write_str("(false)"),
            Tm::If {
                motive,
                scrut,
                then_,
                else_,
            } => write!(
                f,
                "(if {} {} {} {})",
                motive.as_ref().map(|t| s(t)).unwrap_or_else(|| "_".into()),
                m(scrut),
                m(then_),
                m(else_)
            ),
            Tm::Pair(x, y) => write!(f, "(pair {} {})", m(x), m(y)),
            Tm::Fst(x) => write!(f, "(fst {})", m(x)),
            Tm::Snd(x) => write!(f, "(snd {})", m(x)),
            Tm::Code(a) => write!(f, "(code {})", s(a)),
            Tm::Ann(x, a) => write!(f, "(ann {} {})", m(x), s(a)),
        }
    }
}

impl fmt::Display for Sexp<'_, Subst> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let th = self.theory;
        let sb = |s: &Subst| sexp(th, s).to_string();
        match self.node {
            Subst::Id => f.write_str("(sb/id)"),
            Subst::Comp(x, d) => write!(f, "(sb/comp {} {})", sb(x), sb(d)),
            Subst::Empty => f.write_str("(sb/emp)"),
            Subst::WkTm => f.write_str("(sb/weak-type)"),
            Subst::WkInt => f.write_str("(sb/weak-int)"),
            Subst::WkFace(p) => write!(f, "(sb/weak-res {})", SexpFace(th, p)),
            Subst::Lock(mu, d) => write!(f, "(sb/lock {} {})", th.show(mu), sb(d)),
            Subst::Key { src, dst } => write!(f, "(sb/key {} {})", th.show(src), th.show(dst)),
            Subst::ExtTm(d, a) => write!(f, "(sb/ext-type {} {})", sb(d), sexp(th, &**a)),
            Subst::ExtInt(d, r) => write!(f, "(sb/ext-int {} {})", sb(d), SexpInt(th, r)),
            Subst::Restrict(d, p) => write!(f, "(sb/face-res {} {})", sb(d), SexpFace(th, p)),
            Subst::ExcInt(mu) => write!(f, "(sb/exc-int {})", th.show(mu)),
            Subst::ExcIntInv(mu) => write!(f, "(sb/exc-int-inv {})", th.show(mu)),
            Subst::ExcFace(mu, p) => write!(f, "(sb/exc-face {} {})", th.show(mu), SexpFace(th, p)),
            Subst::ExcFaceInv(mu, p) => {
                write!(f, "(sb/exc-face-inv {} {})", th.show(mu), SexpFace(th, p))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn th() -> ModeTheory {
        ModeTheory::guarded()
    }

    #[test]
    fn ctx_mode_folds_locks() {
        let th = th();
        let t = th.mode("t").unwrap();
        let s = th.mode("s").unwrap();
        assert_eq!(Ctx::empty(t).ctx_mode(&th).unwrap(), t);
        let delta = th.parse_modality("δ").unwrap();
        let gamma = th.parse_modality("γ").unwrap();
        let c = Ctx::empty(t).with(Entry::Lock(delta.clone()));
        assert_eq!(c.ctx_mode(&th).unwrap(), s);
        let two = Ctx::empty(t)
            .with(Entry::Lock(delta.clone()))
            .with(Entry::Lock(gamma.clone()));
        let one = Ctx::empty(t).with(Entry::Lock(th.compose(&delta, &gamma).unwrap()));
        assert_eq!(two.ctx_mode(&th).unwrap(), one.ctx_mode(&th).unwrap());
        assert!(two.equiv(&one, &th).unwrap());
        // δ∘γ is not the identity, but γ∘δ is.
        let s_ctx = Ctx::empty(s)
            .with(Entry::Lock(gamma.clone()))
            .with(Entry::Lock(delta.clone()));
        assert!(s_ctx.equiv(&Ctx::empty(s), &th).unwrap());
    }

    #[test]
    fn locks_between_examples() {
        let th = th();
        let t = th.mode("t").unwrap();
        let l = th.parse_modality("ℓ").unwrap();
        let id = th.id(t);
        let c = Ctx::empty(t)
            .with(Entry::TmVar(l.clone(), Ty::Bool))
            .with(Entry::Lock(l.clone()));
        assert_eq!(c.locks_between(&th, 0).unwrap(), l);
        let c = Ctx::empty(t).with(Entry::TmVar(id.clone(), Ty::Bool));
        assert_eq!(c.locks_between(&th, 0).unwrap(), id);
        let d = th.parse_modality("δ").unwrap();
        let g = th.parse_modality("γ").unwrap();
        let c = Ctx::empty(t)
            .with(Entry::TmVar(l.clone(), Ty::Bool))
            .with(Entry::Lock(d.clone()))
            .with(Entry::Lock(g.clone()));
        assert_eq!(
            c.locks_between(&th, 0).unwrap(),
            th.compose(&d, &g).unwrap()
        );
        assert!(matches!(
            c.locks_between(&th, 1),
            Err(SyntaxError::IndexOutOfRange(1))
        ));
    }

    #[test]
    fn ext_int_beta() {
        let th = th();
        let t = th.mode("t").unwrap();
        let shapes = vec![Shape::IntVar];
        // q[⟨id, r⟩] = r with r the outer interval variable.
        let sigma = Subst::ext_int(Subst::Id, ivar(0));
        let out = apply_subst_int(&th, t, &shapes, &sigma, &ivar(0)).unwrap();
        assert_eq!(out, relock_int(&th, t, &shapes, &ivar(0)).unwrap());
        let body = Tm::papp(Tm::Var(0), ITm::neg(ivar(0)));
        let sh = vec![Shape::TmVar(th.id(t)), Shape::IntVar];
        let out = apply_subst_tm(
            &th,
            t,
            &sh,
            &Subst::ext_int(Subst::Id, Interval::One),
            &body,
        )
        .unwrap();
        assert_eq!(out, Tm::papp(Tm::Var(0), ITm::neg(Interval::One)));
    }

    #[test]
    fn key_and_exchange_are_silent_on_indices() {
        let th = th();
        let t = th.mode("t").unwrap();
        let l = th.parse_modality("ℓ").unwrap();
        let id = th.id(t);
        let shapes = vec![Shape::TmVar(id.clone()), Shape::Lock(l.clone())];
        let key = Subst::Key {
            src: id.clone(),
            dst: l.clone(),
        };
        let e = Tm::Var(0);
        assert_eq!(apply_subst_tm(&th, t, &shapes, &key, &e).unwrap(), e);
        let shapes = vec![Shape::IntVar, Shape::Lock(l.clone())];
        let round = Subst::comp(Subst::ExcIntInv(l.clone()), Subst::ExcInt(l.clone()));
        let r = relock_int(&th, t, &shapes, &ivar(0)).unwrap();
        assert_eq!(apply_subst_int(&th, t, &shapes, &round, &r).unwrap(), r);
    }

    #[test]
    fn functoriality_on_a_small_example() {
        let th = th();
        let t = th.mode("t").unwrap();
        let id = th.id(t);
        let shapes = vec![Shape::TmVar(id.clone()), Shape::TmVar(id.clone())];
        let sigma = Subst::ext_tm(Subst::WkTm, Tm::Var(0));
        let tau = Subst::ext_tm(Subst::Id, Tm::True);
        let e = Tm::pair(Tm::Var(0), Tm::Var(1));
        let both = apply_subst_tm(
            &th,
            t,
            &shapes,
            &Subst::comp(sigma.clone(), tau.clone()),
            &e,
        )
        .unwrap();
        let mid_shape = subst_codomain(&th, &shapes, &tau).unwrap();
        let inner = apply_subst_tm(&th, t, &mid_shape, &sigma, &e).unwrap();
        let step = apply_subst_tm(&th, t, &shapes, &tau, &inner).unwrap();
        assert_eq!(both, step);
    }
}
