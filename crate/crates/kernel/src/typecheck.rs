//! Bidirectional checking.
//!
//! A restriction `Γ, φ` is handled by splitting `φ` into its clauses and
//! checking once per clause; within a clause the pinned dimensions are
//! substituted by their endpoints everywhere in the context, so the face of
//! every context the checker works in is `⊤`. An inconsistent restriction
//! yields no clause at all, and the judgment holds vacuously.
//!
//! The checker returns an elaborated copy of its input with every optional
//! annotation filled in. In strict mode missing annotations are errors.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::rc::Rc;

use thiserror::Error;

use crate::conv::{Conv, DEFAULT_FUEL};
use crate::domain::*;
use crate::eval::{self, apply, dapply};
use crate::interval::{FTm, IAtom, ITm, Interval};
use crate::mode_theory::{Modality, ModeError, ModeId, ModeTheory};
use crate::quote::{quote_tm, quote_ty, QCtx, QEntry};
use crate::syntax::{sexp, Ctx, Entry, Subst, Tm, Ty};

#[derive(Clone, Debug)]
pub struct Options {
    /// Reject terms with unfilled annotations instead of inferring them.
    pub strict_annotations: bool,
    pub strict_mod_eq: bool,
    /// Maximum number of clauses a single restriction may split into.
    pub clause_cap: usize,
    pub fuel: u32,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            strict_annotations: false,
            strict_mod_eq: false,
            clause_cap: 64,
            fuel: DEFAULT_FUEL,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Type,
    /// A clause split or a mode-theory saturation exceeded its bound.
    Resource,
}

#[derive(Clone, Debug, Error)]
#[error("{rule}: {message}")]
pub struct TypeError {
    pub rule: String,
    pub mode: String,
    pub clause: String,
    pub message: String,
    pub kind: ErrorKind,
}

pub type TcResult<T> = Result<T, TypeError>;

#[derive(Clone, Debug)]
pub enum CEntry {
    Lock(Modality),
    Tm {
        ann: Modality,
        ty: V,
        var: VarId,
    },
    Int(Dim),
    /// The context as it was before the restriction, for weakening, and
    /// the restricting face evaluated there.
    Restrict(Rc<Cx>, FVal),
}

/// A checking context: the entries with their semantic types, and the
/// environment interpreting them.
#[derive(Clone, Debug)]
pub struct Cx {
    pub outer: ModeId,
    pub entries: Vec<CEntry>,
    pub env: Env,
    pub clause: Vec<(Dim, bool)>,
}

impl Cx {
    pub fn new(outer: ModeId, globals: Globals) -> Cx {
        Cx {
            outer,
            entries: Vec::new(),
            env: Env::with_globals(globals),
            clause: Vec::new(),
        }
    }

    fn push(&self, e: CEntry) -> Cx {
        let mut c = self.clone();
        c.entries.push(e);
        c
    }

    pub fn qctx(&self) -> QCtx {
        QCtx {
            outer: self.outer,
            entries: self
                .entries
                .iter()
                .map(|e| match e {
                    CEntry::Lock(mu) => QEntry::Lock(mu.clone()),
                    CEntry::Tm { var, .. } => QEntry::Tm(*var),
                    CEntry::Int(d) => QEntry::Int(*d),
                    CEntry::Restrict(..) => QEntry::Restrict,
                })
                .collect(),
        }
    }

    pub fn bind(&self, ann: Modality, ty: V) -> (Cx, V) {
        let (x, v) = fresh_var(ty.clone());
        let mut c = self.push(CEntry::Tm { ann, ty, var: x });
        c.env = c.env.push_tm(v.clone());
        (c, v)
    }

    pub fn bind_int(&self) -> (Cx, Dim) {
        let d = Dim::fresh();
        let mut c = self.push(CEntry::Int(d));
        c.env = c.env.push_iv(Interval::Var(d));
        (c, d)
    }

    fn act(&self, s: &DimSubst) -> Cx {
        Cx {
            outer: self.outer,
            entries: self
                .entries
                .iter()
                .map(|e| match e {
                    CEntry::Tm { ann, ty, var } => CEntry::Tm {
                        ann: ann.clone(),
                        ty: eval::act(s, ty),
                        var: *var,
                    },
                    other => other.clone(),
                })
                .collect(),
            env: self.env.act(s),
            clause: self.clause.clone(),
        }
    }
}

fn clause_subst(cx: &Cx) -> DimSubst {
    cx.clause
        .iter()
        .map(|(d, b)| (*d, Interval::endpoint(*b)))
        .collect()
}

fn face_eq(a: &FVal, b: &FVal) -> bool {
    a.entails(b) && b.entails(a)
}

#[derive(Clone, Debug)]
enum Kind {
    Lock(Modality),
    Tm,
    Int,
    Restrict,
}

fn describe_clause(c: &[(Dim, bool)]) -> String {
    if c.is_empty() {
        return "⊤".to_owned();
    }
    let mut out = String::new();
    for (k, (d, b)) in c.iter().enumerate() {
        if k > 0 {
            out.push_str(" ∧ ");
        }
        let _ = write!(out, "({d}={})", u8::from(*b));
    }
    out
}

/// A declaration handed to the checker.
#[derive(Clone, Debug)]
pub struct Decl {
    pub name: String,
    pub mode: ModeId,
    pub ty: Ty,
    pub body: DeclBody,
}

#[derive(Clone, Debug)]
pub enum DeclBody {
    Def(Tm),
    /// An axiom, optionally with a closed unfolding of the same type that
    /// conversion may substitute for it.
    Axiom {
        unfold: Option<Tm>,
    },
}

#[derive(Clone, Debug)]
pub struct Checked {
    pub name: String,
    pub mode: ModeId,
    pub ty: Ty,
    pub body: Option<Tm>,
    pub unfold: Option<Tm>,
}

pub struct Checker<'t> {
    pub theory: &'t ModeTheory,
    pub opts: Options,
    globals: Globals,
    checked: Vec<Checked>,
}

fn rule_of(e: &Tm) -> &'static str {
    match e {
        Tm::Var(_) | Tm::Const(_) => "term/var",
        Tm::Lam(_) => "term/pi-lam",
        Tm::App { .. } => "term/pi-app",
        Tm::PLam(_) => "term/path-abs",
        Tm::PApp(..) => "term/path-app",
        Tm::MkBox(..) => "term/mod-mod",
        Tm::LetMod { .. } => "term/mod-let",
        Tm::Sys(bs) if bs.is_empty() => "term/sys-null",
        Tm::Sys(_) => "term/sys-bin",
        Tm::Comp { .. } => "term/comp",
        Tm::Sub(..) => "term/sb",
        Tm::True | Tm::False | Tm::If { .. } => "term/bool",
        Tm::Pair(..) | Tm::Fst(_) | Tm::Snd(_) => "term/sigma",
        Tm::Code(_) => "term/code",
        Tm::Ann(..) => "term/ann",
    }
}

impl<'t> Checker<'t> {
    pub fn new(theory: &'t ModeTheory, opts: Options) -> Self {
        Checker {
            theory,
            opts,
            globals: Globals::default(),
            checked: Vec::new(),
        }
    }

    pub fn globals(&self) -> &Globals {
        &self.globals
    }

    pub fn checked(&self) -> &[Checked] {
        &self.checked
    }

    pub fn lookup(&self, name: &str) -> Option<&Checked> {
        self.checked.iter().find(|c| c.name == name)
    }

    pub fn empty_cx(&self, mode: ModeId) -> Cx {
        Cx::new(mode, self.globals.clone())
    }

    fn conv(&self) -> Conv<'t> {
        Conv::new(self.theory, self.globals.clone(), self.opts.strict_mod_eq)
            .with_fuel(self.opts.fuel)
    }

    // ---- errors ----

    fn err(&self, cx: &Cx, rule: &str, message: impl Into<String>) -> TypeError {
        let mode = match self.mode(cx) {
            Ok(m) => self.theory.mode_name(m).to_owned(),
            Err(_) => "?".to_owned(),
        };
        TypeError {
            rule: rule.to_owned(),
            mode,
            clause: describe_clause(&cx.clause),
            message: message.into(),
            kind: ErrorKind::Type,
        }
    }

    fn mode_err(&self, cx: &Cx, rule: &str, e: ModeError) -> TypeError {
        let mut out = self.err(cx, rule, e.to_string());
        if matches!(e, ModeError::SaturationBoundExceeded(_)) {
            out.kind = ErrorKind::Resource;
        }
        out
    }

    fn show_ty(&self, cx: &Cx, v: &V) -> String {
        match quote_ty(self.theory, &cx.qctx(), v) {
            Ok(t) => sexp(self.theory, &t).to_string(),
            Err(_) => "<type>".to_owned(),
        }
    }

    // ---- modes and locks ----

    fn mode_at(&self, cx: &Cx, upto: usize) -> ModeId {
        let mut m = cx.outer;
        for e in &cx.entries[..upto] {
            if let CEntry::Lock(mu) = e {
                m = mu.dom();
            }
        }
        m
    }

    pub fn mode(&self, cx: &Cx) -> TcResult<ModeId> {
        Ok(self.mode_at(cx, cx.entries.len()))
    }

    fn lock(&self, cx: &Cx, mu: &Modality, rule: &str) -> TcResult<Cx> {
        let m = self.mode(cx)?;
        if mu.cod() != m {
            return Err(self.err(
                cx,
                rule,
                format!(
                    "modality {} has codomain {} but the context is at mode {}",
                    self.theory.show(mu),
                    self.theory.mode_name(mu.cod()),
                    self.theory.mode_name(m)
                ),
            ));
        }
        Ok(cx.push(CEntry::Lock(mu.clone())))
    }

    /// Composite of the locks after entry `pos`, in order.
    fn locks_after(&self, cx: &Cx, pos: usize) -> TcResult<Modality> {
        let mut acc = self.theory.id(self.mode_at(cx, pos + 1));
        for e in &cx.entries[pos + 1..] {
            if let CEntry::Lock(mu) = e {
                acc = self
                    .theory
                    .compose(&acc, mu)
                    .map_err(|e| self.mode_err(cx, "cx/lock", e))?;
            }
        }
        Ok(acc)
    }

    fn mod_eq(&self, cx: &Cx, mu: &Modality, nu: &Modality, rule: &str) -> TcResult<bool> {
        if mu.dom() != nu.dom() || mu.cod() != nu.cod() {
            return Ok(false);
        }
        self.theory
            .mod_equal(mu, nu)
            .map_err(|e| self.mode_err(cx, rule, e))
    }

    /// Splits off a trailing block of locks composing to `mu`.
    fn strip_locks(&self, cx: &Cx, mu: &Modality, rule: &str) -> TcResult<Cx> {
        let mut n = cx.entries.len();
        let mut acc: Option<Modality> = None;
        loop {
            while let Some(CEntry::Lock(l)) = cx.entries[..n].last() {
                if !l.is_identity() {
                    break;
                }
                n -= 1;
            }
            let done = match &acc {
                None => mu.is_identity() && mu.cod() == self.mode_at(cx, n),
                Some(a) => self.mod_eq(cx, a, mu, rule)?,
            };
            if done {
                let mut out = cx.clone();
                out.entries.truncate(n);
                return Ok(out);
            }
            match cx.entries[..n].last() {
                Some(CEntry::Lock(l)) => {
                    acc = Some(match acc {
                        None => l.clone(),
                        Some(a) => self
                            .theory
                            .compose(l, &a)
                            .map_err(|e| self.mode_err(cx, rule, e))?,
                    });
                    n -= 1;
                }
                _ => {
                    return Err(self.err(
                        cx,
                        rule,
                        format!("context does not end in the lock {}", self.theory.show(mu)),
                    ))
                }
            }
        }
    }

    // ---- restrictions ----

    /// Face equality in the current clause.
    fn same_face(&self, cx: &Cx, a: &FVal, b: &FVal) -> bool {
        let s = clause_subst(cx);
        face_eq(&act_face(&s, a), &act_face(&s, b))
    }

    /// One context per clause of `φ`, each with the clause's endpoints
    /// substituted.
    pub fn restrict(&self, cx: &Cx, phi: &FVal) -> TcResult<Vec<Cx>> {
        let cs = phi.clauses();
        if cs.len() > self.opts.clause_cap {
            let mut e = self.err(
                cx,
                "face/split",
                format!(
                    "restriction splits into {} clauses (cap {})",
                    cs.len(),
                    self.opts.clause_cap
                ),
            );
            e.kind = ErrorKind::Resource;
            return Err(e);
        }
        let snapshot = Rc::new(cx.clone());
        Ok(cs
            .iter()
            .map(|c| {
                let s = subst_of_clause(c);
                let mut out = cx
                    .act(&s)
                    .push(CEntry::Restrict(snapshot.clone(), phi.clone()));
                out.clause.extend(c.iter().map(|(d, b)| (*d, *b)));
                out
            })
            .collect())
    }

    // ---- intervals and faces ----

    fn check_atom(&self, cx: &Cx, a: &IAtom) -> TcResult<ITm> {
        let mut k = a.index;
        let mut pos = None;
        for (p, e) in cx.entries.iter().enumerate().rev() {
            if let CEntry::Int(_) = e {
                if k == 0 {
                    pos = Some(p);
                    break;
                }
                k -= 1;
            }
        }
        let pos = pos.ok_or_else(|| {
            self.err(
                cx,
                "int/var",
                format!("interval variable #{} is not in scope", a.index),
            )
        })?;
        let rho = self.locks_after(cx, pos)?;
        match &a.exc {
            None if rho.is_identity() => {}
            None if self.opts.strict_annotations => {
                return Err(self.err(
                    cx,
                    "int/var",
                    format!(
                        "interval variable used behind {} without exchange",
                        self.theory.show(&rho)
                    ),
                ))
            }
            None => {}
            Some(nu) if !self.mod_eq(cx, nu, &rho, "int/exc")? => {
                return Err(self.err(
                    cx,
                    "int/exc",
                    format!(
                        "exchange annotation {} does not match the locks {}",
                        self.theory.show(nu),
                        self.theory.show(&rho)
                    ),
                ))
            }
            Some(_) => {}
        }
        Ok(Interval::Var(IAtom::annotated(a.index, rho)))
    }

    pub fn check_int(&self, cx: &Cx, r: &ITm) -> TcResult<ITm> {
        r.try_bind(&mut |a| self.check_atom(cx, a))
    }

    pub fn check_face(&self, cx: &Cx, phi: &FTm) -> TcResult<FTm> {
        phi.try_bind(&mut |a| self.check_atom(cx, a))
    }

    pub fn eval_face(&self, cx: &Cx, phi: &FTm) -> FVal {
        eval::eval_face(&cx.env, phi)
    }

    // ---- types ----

    pub fn eval_ty(&self, cx: &Cx, t: &Ty) -> V {
        eval::eval_ty(&cx.env, t)
    }

    pub fn eval(&self, cx: &Cx, t: &Tm) -> V {
        eval::eval(&cx.env, t)
    }

    /// Checks a type and returns it elaborated, with its universe level.
    pub fn check_ty(&self, cx: &Cx, t: &Ty) -> TcResult<(Ty, u32)> {
        match t {
            Ty::Pi(mu, a, b) => {
                let lcx = self.lock(cx, mu, "type/pi")?;
                let (a2, la) = self.check_ty(&lcx, a)?;
                let (bcx, _) = cx.bind(mu.clone(), self.eval_ty(cx, &a2));
                let (b2, lb) = self.check_ty(&bcx, b)?;
                Ok((Ty::pi(mu.clone(), a2, b2), la.max(lb)))
            }
            Ty::Path(a, x, y) => {
                let (icx, _) = cx.bind_int();
                let (a2, l) = self.check_ty(&icx, a)?;
                let line = DClo::Eval {
                    env: cx.env.clone(),
                    body: Body::Ty(Rc::new(a2.clone())),
                };
                let x2 = self.check(cx, x, &dapply(&line, &Interval::Zero))?;
                let y2 = self.check(cx, y, &dapply(&line, &Interval::One))?;
                Ok((Ty::path(a2, x2, y2), l))
            }
            Ty::Modal(mu, a) => {
                let lcx = self.lock(cx, mu, "type/mod")?;
                let (a2, l) = self.check_ty(&lcx, a)?;
                Ok((Ty::modal(mu.clone(), a2), l))
            }
            Ty::Sys(bs) => self.check_ty_sys(cx, bs),
            Ty::Bool => Ok((Ty::Bool, 0)),
            Ty::Univ(l) => Ok((Ty::Univ(*l), l + 1)),
            Ty::Sigma(a, b) => {
                let (a2, la) = self.check_ty(cx, a)?;
                let id = self.theory.id(self.mode(cx)?);
                let (bcx, _) = cx.bind(id, self.eval_ty(cx, &a2));
                let (b2, lb) = self.check_ty(&bcx, b)?;
                Ok((Ty::sigma(a2, b2), la.max(lb)))
            }
            Ty::Sub(a, sigma) => {
                let (s2, dcx) = self.check_subst(cx, sigma)?;
                let (a2, l) = self.check_ty(&dcx, a)?;
                Ok((Ty::Sub(Box::new(a2), Box::new(s2)), l))
            }
            Ty::El(e) => {
                let (e2, ty) = self.infer(cx, e)?;
                match &*ty {
                    Val::Univ(l) => Ok((Ty::el(e2), *l)),
                    _ => Err(self.err(
                        cx,
                        "type/el",
                        format!(
                            "expected a type, found an element of {}",
                            self.show_ty(cx, &ty)
                        ),
                    )),
                }
            }
        }
    }

    fn check_cover(&self, cx: &Cx, faces: &[FVal], rule: &str) -> TcResult<()> {
        let join = faces
            .iter()
            .fold(crate::interval::Dnf::bot(), |acc, f| acc.join(f));
        if join.is_top() {
            Ok(())
        } else {
            Err(self.err(cx, rule, "the faces of the system do not cover the context"))
        }
    }

    fn check_ty_sys(&self, cx: &Cx, bs: &[(FTm, Ty)]) -> TcResult<(Ty, u32)> {
        let rule = "type/sys";
        let mut faces = Vec::new();
        let mut out = Vec::new();
        let mut level = 0;
        for (f, a) in bs {
            let f2 = self.check_face(cx, f)?;
            let fv = self.eval_face(cx, &f2);
            let mut elab = None;
            for rcx in self.restrict(cx, &fv)? {
                let src = elab.as_ref().unwrap_or(a);
                let (a2, l) = self.check_ty(&rcx, src)?;
                level = level.max(l);
                elab = Some(a2);
            }
            faces.push(fv);
            out.push((f2, elab.unwrap_or_else(|| a.clone())));
        }
        self.check_cover(cx, &faces, rule)?;
        for k in 0..out.len() {
            for l in k + 1..out.len() {
                for rcx in self.restrict(cx, &faces[k].meet(&faces[l]))? {
                    let ak = self.eval_ty(&rcx, &out[k].1);
                    let al = self.eval_ty(&rcx, &out[l].1);
                    if !self.conv().conv_ty(&ak, &al) {
                        return Err(self.err(&rcx, rule, "branches disagree on their overlap"));
                    }
                }
            }
        }
        Ok((Ty::Sys(out), level))
    }

    // ---- terms ----

    fn lookup_var(&self, cx: &Cx, k: usize) -> TcResult<(usize, Modality, V)> {
        let mut n = k;
        for (p, e) in cx.entries.iter().enumerate().rev() {
            if let CEntry::Tm { ann, ty, .. } = e {
                if n == 0 {
                    return Ok((p, ann.clone(), ty.clone()));
                }
                n -= 1;
            }
        }
        Err(self.err(cx, "term/var", format!("variable #{k} is not in scope")))
    }

    pub fn infer(&self, cx: &Cx, e: &Tm) -> TcResult<(Tm, V)> {
        match e {
            Tm::Var(k) => {
                let (pos, mu, ty) = self.lookup_var(cx, *k)?;
                let rho = self.locks_after(cx, pos)?;
                // Access is allowed through a 2-cell μ ⇒ ρ; the key it
                // induces acts trivially on values.
                let ok = if mu.dom() != rho.dom() || mu.cod() != rho.cod() {
                    false
                } else {
                    self.theory
                        .cell_exists(&mu, &rho)
                        .map_err(|err| self.mode_err(cx, "term/var", err))?
                };
                if !ok {
                    return Err(self.err(
                        cx,
                        "term/var",
                        format!(
                            "variable annotated {} is used behind the locks {} and no 2-cell relates them",
                            self.theory.show(&mu),
                            self.theory.show(&rho)
                        ),
                    ));
                }
                Ok((Tm::Var(*k), ty))
            }
            Tm::Const(c) => {
                let g = self
                    .globals
                    .get(c)
                    .ok_or_else(|| self.err(cx, "term/var", format!("unknown constant {c}")))?;
                let m = self.mode(cx)?;
                if g.mode != m {
                    return Err(self.err(
                        cx,
                        "term/var",
                        format!(
                            "{c} lives at mode {} but is used at mode {}",
                            self.theory.mode_name(g.mode),
                            self.theory.mode_name(m)
                        ),
                    ));
                }
                Ok((Tm::Const(c.clone()), g.ty.clone()))
            }
            Tm::App { modality, fun, arg } => {
                let (f2, fty) = self.infer(cx, fun)?;
                let Val::Pi(mu, dom, cod) = &*fty else {
                    return Err(self.err(
                        cx,
                        "term/pi-app",
                        format!(
                            "expected a function, found an element of {}",
                            self.show_ty(cx, &fty)
                        ),
                    ));
                };
                match modality {
                    Some(nu) if !self.mod_eq(cx, nu, mu, "term/pi-app")? => {
                        return Err(self.err(
                            cx,
                            "term/pi-app",
                            format!(
                                "application at {} of a function expecting {}",
                                self.theory.show(nu),
                                self.theory.show(mu)
                            ),
                        ))
                    }
                    None if self.opts.strict_annotations => {
                        return Err(self.err(cx, "term/pi-app", "missing application modality"))
                    }
                    _ => {}
                }
                let lcx = self.lock(cx, mu, "term/pi-app")?;
                let a2 = self.check(&lcx, arg, dom)?;
                let av = self.eval(cx, &a2);
                Ok((Tm::app_mod(mu.clone(), f2, a2), apply(cod, av)))
            }
            Tm::PApp(p, r) => {
                let (p2, pty) = self.infer(cx, p)?;
                let Val::Path(line, _, _) = &*pty else {
                    return Err(self.err(
                        cx,
                        "term/path-app",
                        format!(
                            "expected a path, found an element of {}",
                            self.show_ty(cx, &pty)
                        ),
                    ));
                };
                let r2 = self.check_int(cx, r)?;
                let rv = eval::eval_int(&cx.env, &r2);
                Ok((Tm::papp(p2, r2), dapply(line, &rv)))
            }
            Tm::LetMod { .. } => self.letmod(cx, e, None),
            Tm::If { .. } => self.if_(cx, e, None),
            Tm::Comp {
                line,
                phi,
                tube,
                cap,
            } => {
                let rule = "term/comp";
                let (icx, _) = cx.bind_int();
                let (line2, _) = self.check_ty(&icx, line)?;
                let lclo = DClo::Eval {
                    env: cx.env.clone(),
                    body: Body::Ty(Rc::new(line2.clone())),
                };
                let phi2 = self.check_face(cx, phi)?;
                let phiv = self.eval_face(cx, &phi2);
                let a0 = dapply(&lclo, &Interval::Zero);
                let cap2 = self.check(cx, cap, &a0)?;
                let mut tube2: Option<Tm> = None;
                for rcx in self.restrict(cx, &phiv)? {
                    let (ticx, d) = rcx.bind_int();
                    let src = tube2.as_ref().unwrap_or(tube);
                    let at_i = eval::eval_ty(&rcx.env.push_iv(Interval::Var(d)), &line2);
                    let t = self.check(&ticx, src, &at_i)?;
                    let u0 = eval::eval(&rcx.env.push_iv(Interval::Zero), &t);
                    let c0 = self.eval(&rcx, &cap2);
                    let a0r = eval::eval_ty(&rcx.env.push_iv(Interval::Zero), &line2);
                    if !self.conv().conv(&a0r, &u0, &c0) {
                        return Err(self.err(
                            &rcx,
                            rule,
                            "the tube at 0 does not agree with the cap",
                        ));
                    }
                    tube2 = Some(t);
                }
                let out = Tm::comp(line2, phi2, tube2.unwrap_or_else(|| (**tube).clone()), cap2);
                Ok((out, dapply(&lclo, &Interval::One)))
            }
            Tm::Sub(a, sigma) => {
                let (s2, dcx) = self.check_subst(cx, sigma)?;
                let (a2, ty) = self.infer(&dcx, a)?;
                Ok((Tm::Sub(Box::new(a2), Box::new(s2)), ty))
            }
            Tm::True => Ok((Tm::True, Rc::new(Val::Bool))),
            Tm::False => Ok((Tm::False, Rc::new(Val::Bool))),
            Tm::Fst(p) => {
                let (p2, pty) = self.infer(cx, p)?;
                match &*pty {
                    Val::Sigma(a, _) => Ok((Tm::Fst(Box::new(p2)), a.clone())),
                    _ => Err(self.err(cx, "term/sigma", "expected a pair")),
                }
            }
            Tm::Snd(p) => {
                let (p2, pty) = self.infer(cx, p)?;
                match &*pty {
                    Val::Sigma(_, b) => {
                        let pv = self.eval(cx, &p2);
                        Ok((Tm::Snd(Box::new(p2)), apply(b, eval::fst(&pv))))
                    }
                    _ => Err(self.err(cx, "term/sigma", "expected a pair")),
                }
            }
            Tm::Code(a) => {
                let (a2, l) = self.check_ty(cx, a)?;
                Ok((Tm::code(a2), Rc::new(Val::Univ(l))))
            }
            Tm::Ann(a, t) => {
                let (t2, _) = self.check_ty(cx, t)?;
                let tv = self.eval_ty(cx, &t2);
                let a2 = self.check(cx, a, &tv)?;
                Ok((Tm::Ann(Box::new(a2), Box::new(t2)), tv))
            }
            Tm::Lam(_) | Tm::PLam(_) | Tm::MkBox(..) | Tm::Sys(_) | Tm::Pair(..) => Err(self.err(
                cx,
                rule_of(e),
                "cannot infer the type of this term; add an annotation",
            )),
        }
    }

    pub fn check(&self, cx: &Cx, e: &Tm, ty: &V) -> TcResult<Tm> {
        match (e, &**ty) {
            (Tm::Lam(b), Val::Pi(mu, a, bty)) => {
                let (bcx, x) = cx.bind(mu.clone(), a.clone());
                Ok(Tm::lam(self.check(&bcx, b, &apply(bty, x))?))
            }
            (Tm::PLam(b), Val::Path(line, a0, a1)) => {
                let rule = "term/path-abs";
                let (icx, d) = cx.bind_int();
                let b2 = self.check(&icx, b, &dapply(line, &Interval::Var(d)))?;
                for (end, want) in [(Interval::Zero, a0), (Interval::One, a1)] {
                    let got = eval::eval(&cx.env.push_iv(end.clone()), &b2);
                    if !self.conv().conv(&dapply(line, &end), &got, want) {
                        return Err(self.err(
                            cx,
                            rule,
                            format!(
                                "the path does not have the expected endpoint at {}",
                                if end == Interval::Zero { 0 } else { 1 }
                            ),
                        ));
                    }
                }
                Ok(Tm::plam(b2))
            }
            (Tm::MkBox(mu, a), Val::Modal(nu, inner)) => {
                let rule = "term/mod-mod";
                if !self.mod_eq(cx, mu, nu, rule)? {
                    return Err(self.err(
                        cx,
                        rule,
                        format!(
                            "box at {} checked against a type at {}",
                            self.theory.show(mu),
                            self.theory.show(nu)
                        ),
                    ));
                }
                let lcx = self.lock(cx, mu, rule)?;
                Ok(Tm::mkbox(mu.clone(), self.check(&lcx, a, inner)?))
            }
            (Tm::Sys(bs), _) => self.check_sys(cx, bs, ty),
            (Tm::LetMod { .. }, _) => Ok(self.letmod(cx, e, Some(ty))?.0),
            (Tm::If { .. }, _) => Ok(self.if_(cx, e, Some(ty))?.0),
            (Tm::Pair(a, b), Val::Sigma(aty, bty)) => {
                let a2 = self.check(cx, a, aty)?;
                let av = self.eval(cx, &a2);
                let b2 = self.check(cx, b, &apply(bty, av))?;
                Ok(Tm::pair(a2, b2))
            }
            (Tm::Code(a), Val::Univ(l)) => {
                let (a2, la) = self.check_ty(cx, a)?;
                if la != *l {
                    return Err(self.err(
                        cx,
                        "term/code",
                        format!("type of level {la} used as an element of universe {l}"),
                    ));
                }
                Ok(Tm::code(a2))
            }
            _ => {
                let (e2, got) = self.infer(cx, e)?;
                if self.conv().conv_ty(&got, ty) {
                    Ok(e2)
                } else {
                    Err(self.err(
                        cx,
                        rule_of(e),
                        format!(
                            "expected {}, found {}",
                            self.show_ty(cx, ty),
                            self.show_ty(cx, &got)
                        ),
                    ))
                }
            }
        }
    }

    fn check_sys(&self, cx: &Cx, bs: &[(FTm, Tm)], ty: &V) -> TcResult<Tm> {
        let rule = if bs.is_empty() {
            "term/sys-null"
        } else {
            "term/sys-bin"
        };
        let mut faces = Vec::new();
        let mut out: Vec<(FTm, Tm)> = Vec::new();
        for (f, a) in bs {
            let f2 = self.check_face(cx, f)?;
            let fv = self.eval_face(cx, &f2);
            let mut elab: Option<Tm> = None;
            for rcx in self.restrict(cx, &fv)? {
                let src = elab.as_ref().unwrap_or(a);
                let t = self.check(&rcx, src, &self.restrict_val(cx, &rcx, ty))?;
                elab = Some(t);
            }
            faces.push(fv);
            out.push((f2, elab.unwrap_or_else(|| a.clone())));
        }
        self.check_cover(cx, &faces, rule)?;
        for k in 0..out.len() {
            for l in k + 1..out.len() {
                for rcx in self.restrict(cx, &faces[k].meet(&faces[l]))? {
                    let tyr = self.restrict_val(cx, &rcx, ty);
                    let ak = self.eval(&rcx, &out[k].1);
                    let al = self.eval(&rcx, &out[l].1);
                    if !self.conv().conv(&tyr, &ak, &al) {
                        return Err(self.err(&rcx, rule, "branches disagree on their overlap"));
                    }
                }
            }
        }
        Ok(Tm::Sys(out))
    }

    /// A value of `cx` seen in the restricted context `rcx`.
    fn restrict_val(&self, cx: &Cx, rcx: &Cx, v: &V) -> V {
        let s: DimSubst = rcx.clause[cx.clause.len()..]
            .iter()
            .map(|(d, b)| (*d, Interval::endpoint(*b)))
            .collect();
        eval::act(&s, v)
    }

    fn letmod(&self, cx: &Cx, e: &Tm, expected: Option<&V>) -> TcResult<(Tm, V)> {
        let rule = "term/mod-let";
        let Tm::LetMod {
            mu,
            nu,
            motive,
            scrut,
            branch,
        } = e
        else {
            unreachable!()
        };
        let m = self.mode(cx)?;
        if self.opts.strict_annotations && (mu.is_none() || nu.is_none() || motive.is_none()) {
            return Err(self.err(cx, rule, "missing annotation on modal elimination"));
        }
        let mu = mu.clone().unwrap_or_else(|| self.theory.id(m));
        let lcx = self.lock(cx, &mu, rule)?;
        let (scrut2, sty) = self.infer(&lcx, scrut)?;
        let Val::Modal(nu_ty, inner) = &*sty else {
            return Err(self.err(
                cx,
                rule,
                format!(
                    "expected an element of a modal type, found {}",
                    self.show_ty(&lcx, &sty)
                ),
            ));
        };
        if let Some(nu) = nu {
            if !self.mod_eq(cx, nu, nu_ty, rule)? {
                return Err(self.err(
                    cx,
                    rule,
                    format!(
                        "eliminating at {} a box of {}",
                        self.theory.show(nu),
                        self.theory.show(nu_ty)
                    ),
                ));
            }
        }
        let nu = nu_ty.clone();
        let (xcx, _) = cx.bind(mu.clone(), sty.clone());
        let motive2 = match (motive, expected) {
            (Some(b), _) => self.check_ty(&xcx, b)?.0,
            (None, Some(t)) => quote_ty(self.theory, &xcx.qctx(), t)
                .map_err(|q| self.err(cx, rule, format!("cannot elaborate the motive: {q}")))?,
            (None, None) => {
                return Err(self.err(cx, rule, "cannot infer the motive; add an annotation"))
            }
        };
        let mclo = Clo::Eval {
            env: cx.env.clone(),
            body: Body::Ty(Rc::new(motive2.clone())),
        };
        let munu = self
            .theory
            .compose(&mu, &nu)
            .map_err(|err| self.mode_err(cx, rule, err))?;
        let (ycx, y) = cx.bind(munu, inner.clone());
        let want = apply(&mclo, Rc::new(Val::MkBox(nu.clone(), y)));
        let branch2 = self.check(&ycx, branch, &want)?;
        let sv = self.eval(cx, &scrut2);
        let result = apply(&mclo, sv);
        if let Some(t) = expected {
            if !self.conv().conv_ty(&result, t) {
                return Err(self.err(
                    cx,
                    rule,
                    format!(
                        "expected {}, found {}",
                        self.show_ty(cx, t),
                        self.show_ty(cx, &result)
                    ),
                ));
            }
        }
        Ok((
            Tm::LetMod {
                mu: Some(mu),
                nu: Some(nu),
                motive: Some(Box::new(motive2)),
                scrut: Box::new(scrut2),
                branch: Box::new(branch2),
            },
            result,
        ))
    }

    fn if_(&self, cx: &Cx, e: &Tm, expected: Option<&V>) -> TcResult<(Tm, V)> {
        let rule = "term/bool";
        let Tm::If {
            motive,
            scrut,
            then_,
            else_,
        } = e
        else {
            unreachable!()
        };
        if self.opts.strict_annotations && motive.is_none() {
            return Err(self.err(cx, rule, "missing motive on boolean elimination"));
        }
        let bool_v = Rc::new(Val::Bool);
        let scrut2 = self.check(cx, scrut, &bool_v)?;
        let id = self.theory.id(self.mode(cx)?);
        let (xcx, _) = cx.bind(id, bool_v);
        let (motive2, then2) = match (motive, expected) {
            (Some(b), _) => (self.check_ty(&xcx, b)?.0, None),
            (None, Some(t)) => (
                quote_ty(self.theory, &xcx.qctx(), t)
                    .map_err(|q| self.err(cx, rule, format!("cannot elaborate the motive: {q}")))?,
                None,
            ),
            (None, None) => {
                let (t2, tty) = self.infer(cx, then_)?;
                let m = quote_ty(self.theory, &xcx.qctx(), &tty)
                    .map_err(|q| self.err(cx, rule, format!("cannot elaborate the motive: {q}")))?;
                (m, Some(t2))
            }
        };
        let mclo = Clo::Eval {
            env: cx.env.clone(),
            body: Body::Ty(Rc::new(motive2.clone())),
        };
        let then2 = match then2 {
            Some(t) => t,
            None => self.check(cx, then_, &apply(&mclo, Rc::new(Val::True)))?,
        };
        let else2 = self.check(cx, else_, &apply(&mclo, Rc::new(Val::False)))?;
        let result = apply(&mclo, self.eval(cx, &scrut2));
        if let Some(t) = expected {
            if !self.conv().conv_ty(&result, t) {
                return Err(self.err(cx, rule, "motive does not match the expected type"));
            }
        }
        Ok((
            Tm::If {
                motive: Some(Box::new(motive2)),
                scrut: Box::new(scrut2),
                then_: Box::new(then2),
                else_: Box::new(else2),
            },
            result,
        ))
    }

    // ---- substitutions ----

    /// Checks `σ : Γ → Δ` and computes `Δ`. An extension `⟨δ, a⟩` extends
    /// the codomain with an unlocked variable of the inferred type of `a`;
    /// [`Checker::check_subst_against`] handles modal extensions.
    pub fn check_subst(&self, cx: &Cx, sigma: &Subst) -> TcResult<(Subst, Cx)> {
        let pop = |want: fn(&CEntry) -> bool, rule: &str, what: &str| -> TcResult<Cx> {
            match cx.entries.last() {
                Some(e) if want(e) => {
                    let mut out = cx.clone();
                    out.entries.pop();
                    Ok(out)
                }
                _ => Err(self.err(cx, rule, format!("context does not end in {what}"))),
            }
        };
        match sigma {
            Subst::Id => Ok((Subst::Id, cx.clone())),
            Subst::Comp(xi, delta) => {
                let (d2, mid) = self.check_subst(cx, delta)?;
                let (x2, out) = self.check_subst(&mid, xi)?;
                Ok((Subst::comp(x2, d2), out))
            }
            Subst::Empty => {
                let m = self.mode(cx)?;
                Ok((Subst::Empty, self.empty_cx(m)))
            }
            Subst::WkTm => {
                let mut out = pop(
                    |e| matches!(e, CEntry::Tm { .. }),
                    "sb/weak-type",
                    "a term variable",
                )?;
                out.env = out.env.pop_tm();
                Ok((Subst::WkTm, out))
            }
            Subst::WkInt => {
                let mut out = pop(
                    |e| matches!(e, CEntry::Int(_)),
                    "sb/weak-int",
                    "an interval variable",
                )?;
                out.env = out.env.pop_iv();
                Ok((Subst::WkInt, out))
            }
            Subst::WkFace(phi) => match cx.entries.last() {
                Some(CEntry::Restrict(saved, face)) => {
                    let phi2 = self.check_face(saved, phi)?;
                    if !self.same_face(cx, &self.eval_face(saved, &phi2), face) {
                        return Err(self.err(
                            cx,
                            "sb/weak-res",
                            "weakening by a face other than the restriction",
                        ));
                    }
                    let mut out = saved.act(&clause_subst(cx));
                    out.clause = cx.clause.clone();
                    Ok((Subst::WkFace(phi2), out))
                }
                _ => Err(self.err(cx, "sb/weak-res", "context does not end in a restriction")),
            },
            Subst::Lock(mu, delta) => {
                let inner = self.strip_locks(cx, mu, "sb/lock")?;
                let (d2, dcx) = self.check_subst(&inner, delta)?;
                let out = self.lock(&dcx, mu, "sb/lock")?;
                Ok((Subst::lock(mu.clone(), d2), out))
            }
            Subst::Key { src, dst } => {
                let rule = "sb/key";
                if src.dom() != dst.dom() || src.cod() != dst.cod() {
                    return Err(self.err(cx, rule, "the modalities of a key must be parallel"));
                }
                let inner = self.strip_locks(cx, dst, rule)?;
                let ok = self
                    .theory
                    .cell_exists(src, dst)
                    .map_err(|e| self.mode_err(cx, rule, e))?;
                if !ok {
                    return Err(self.err(
                        cx,
                        rule,
                        format!(
                            "no 2-cell {} ⇒ {}",
                            self.theory.show(src),
                            self.theory.show(dst)
                        ),
                    ));
                }
                let out = self.lock(&inner, src, rule)?;
                Ok((sigma.clone(), out))
            }
            Subst::ExtTm(delta, a) => {
                let (d2, dcx) = self.check_subst(cx, delta)?;
                let (a2, aty) = self.infer(cx, a)?;
                let av = self.eval(cx, &a2);
                let id = self.theory.id(self.mode(&dcx)?);
                let mut out = dcx.push(CEntry::Tm {
                    ann: id,
                    ty: aty,
                    var: VarId::fresh(),
                });
                out.env = out.env.push_tm(av);
                Ok((Subst::ext_tm(d2, a2), out))
            }
            Subst::ExtInt(delta, r) => {
                let (d2, dcx) = self.check_subst(cx, delta)?;
                let r2 = self.check_int(cx, r)?;
                let rv = eval::eval_int(&cx.env, &r2);
                let mut out = dcx.push(CEntry::Int(Dim::fresh()));
                out.env = out.env.push_iv(rv);
                Ok((Subst::ext_int(d2, r2), out))
            }
            Subst::Restrict(delta, phi) => {
                let rule = "sb/face-res";
                let (d2, dcx) = self.check_subst(cx, delta)?;
                let phi2 = self.check_face(&dcx, phi)?;
                if !self.eval_face(&dcx, &phi2).is_top() {
                    return Err(self.err(cx, rule, "the face does not hold after substitution"));
                }
                let fv = self.eval_face(&dcx, &phi2);
                let snapshot = Rc::new(dcx.clone());
                Ok((
                    Subst::restrict(d2, phi2),
                    dcx.push(CEntry::Restrict(snapshot, fv)),
                ))
            }
            Subst::ExcInt(mu) => {
                let rule = "sb/exc-int";
                let inner = self.strip_locks(cx, mu, rule)?;
                match inner.entries.last() {
                    Some(CEntry::Int(d)) => {
                        let d = *d;
                        let mut base = inner.clone();
                        base.entries.pop();
                        let mut out = self.lock(&base, mu, rule)?;
                        out.entries.push(CEntry::Int(d));
                        Ok((sigma.clone(), out))
                    }
                    _ => Err(self.err(cx, rule, "context is not of the form Γ.𝕀.𝐒_μ")),
                }
            }
            Subst::ExcIntInv(mu) => {
                let rule = "sb/exc-int-inv";
                match cx.entries.last() {
                    Some(CEntry::Int(d)) => {
                        let d = *d;
                        let mut base = cx.clone();
                        base.entries.pop();
                        let mut inner = self.strip_locks(&base, mu, rule)?;
                        inner.entries.push(CEntry::Int(d));
                        let out = self.lock(&inner, mu, rule)?;
                        Ok((sigma.clone(), out))
                    }
                    _ => Err(self.err(cx, rule, "context is not of the form Γ.𝐒_μ.𝕀")),
                }
            }
            Subst::ExcFace(mu, phi) => {
                let rule = "sb/exc-face";
                let inner = self.strip_locks(cx, mu, rule)?;
                match inner.entries.last() {
                    Some(CEntry::Restrict(saved, face)) => {
                        let phi2 = self.check_face(saved, phi)?;
                        if !self.same_face(cx, &self.eval_face(saved, &phi2), face) {
                            return Err(self.err(cx, rule, "face does not match the restriction"));
                        }
                        let mut base = inner.clone();
                        base.entries.pop();
                        let locked = self.lock(&base, mu, rule)?;
                        let out =
                            locked.push(CEntry::Restrict(Rc::new(locked.clone()), face.clone()));
                        Ok((Subst::ExcFace(mu.clone(), phi2), out))
                    }
                    _ => Err(self.err(cx, rule, "context is not of the form Γ.φ.𝐒_μ")),
                }
            }
            Subst::ExcFaceInv(mu, phi) => {
                let rule = "sb/exc-face-inv";
                match cx.entries.last() {
                    Some(CEntry::Restrict(_, face)) => {
                        let mut base = cx.clone();
                        base.entries.pop();
                        let inner = self.strip_locks(&base, mu, rule)?;
                        let phi2 = self.check_face(&inner, phi)?;
                        if !self.same_face(cx, &self.eval_face(&inner, &phi2), face) {
                            return Err(self.err(cx, rule, "face does not match the restriction"));
                        }
                        let restricted =
                            inner.push(CEntry::Restrict(Rc::new(inner.clone()), face.clone()));
                        let out = self.lock(&restricted, mu, rule)?;
                        Ok((Subst::ExcFaceInv(mu.clone(), phi2), out))
                    }
                    _ => Err(self.err(cx, rule, "context is not of the form Γ.𝐒_μ.⇑φ")),
                }
            }
        }
    }

    /// Checks `σ : Γ → Δ` against a given codomain; extensions take their
    /// annotation and type from `Δ`.
    pub fn check_subst_against(&self, cx: &Cx, sigma: &Subst, target: &Ctx) -> TcResult<Subst> {
        self.check_subst_to(cx, sigma, target).map(|(s, _)| s)
    }

    /// Target-directed substitution checking: extensions are checked
    /// against the types of the target context, so their terms need not
    /// infer.
    fn check_subst_to(&self, cx: &Cx, sigma: &Subst, target: &Ctx) -> TcResult<(Subst, Cx)> {
        let mut prefix = target.clone();
        let last = prefix.entries.pop();
        match (sigma, last) {
            (Subst::ExtTm(delta, a), Some(Entry::TmVar(mu, aty))) => {
                let (d2, dcx) = self.check_subst_to(cx, delta, &prefix)?;
                let lcx_target = self.lock(&dcx, &mu, "sb/ext-type")?;
                let (aty2, _) = self.check_ty(&lcx_target, &aty)?;
                let want = self.eval_ty(&dcx, &aty2);
                let lcx = self.lock(cx, &mu, "sb/ext-type")?;
                let a2 = self.check(&lcx, a, &want)?;
                let av = self.eval(&lcx, &a2);
                let mut out = dcx.push(CEntry::Tm {
                    ann: mu,
                    ty: want,
                    var: VarId::fresh(),
                });
                out.env = out.env.push_tm(av);
                Ok((Subst::ext_tm(d2, a2), out))
            }
            (Subst::ExtInt(delta, r), Some(Entry::IntVar)) => {
                let (d2, dcx) = self.check_subst_to(cx, delta, &prefix)?;
                let r2 = self.check_int(cx, r)?;
                let rv = eval::eval_int(&cx.env, &r2);
                let mut out = dcx.push(CEntry::Int(Dim::fresh()));
                out.env = out.env.push_iv(rv);
                Ok((Subst::ext_int(d2, r2), out))
            }
            (Subst::Restrict(delta, phi), Some(Entry::Restrict(psi))) => {
                let rule = "sb/face-res";
                let (d2, dcx) = self.check_subst_to(cx, delta, &prefix)?;
                let phi2 = self.check_face(&dcx, phi)?;
                let fv = self.eval_face(&dcx, &phi2);
                let psi2 = self.check_face(&dcx, &psi)?;
                if !self.same_face(&dcx, &fv, &self.eval_face(&dcx, &psi2)) {
                    return Err(self.err(
                        cx,
                        rule,
                        "the face differs from the one in the target context",
                    ));
                }
                if !fv.is_top() {
                    return Err(self.err(cx, rule, "the face does not hold after substitution"));
                }
                let out = self.check_landing(
                    cx,
                    dcx.push(CEntry::Restrict(Rc::new(dcx.clone()), fv)),
                    target,
                )?;
                Ok((Subst::restrict(d2, phi2), out))
            }
            _ => {
                let (s2, dcx) = self.check_subst(cx, sigma)?;
                let dcx = self.check_landing(cx, dcx, target)?;
                Ok((s2, dcx))
            }
        }
    }

    fn check_landing(&self, cx: &Cx, dcx: Cx, target: &Ctx) -> TcResult<Cx> {
        let want = self.syntactic_kinds(target)?;
        if dcx.outer != target.mode || !self.same_kinds(cx, &self.kinds(&dcx)?, &want)? {
            return Err(self.err(
                cx,
                "sb/comp",
                "substitution does not land in the stated context",
            ));
        }
        Ok(dcx)
    }

    fn kinds(&self, cx: &Cx) -> TcResult<Vec<Kind>> {
        let mut out = Vec::new();
        for e in &cx.entries {
            out.push(match e {
                CEntry::Lock(mu) => Kind::Lock(mu.clone()),
                CEntry::Tm { .. } => Kind::Tm,
                CEntry::Int(_) => Kind::Int,
                CEntry::Restrict(..) => Kind::Restrict,
            });
        }
        self.fuse(cx, out)
    }

    fn syntactic_kinds(&self, ctx: &Ctx) -> TcResult<Vec<Kind>> {
        let out = ctx
            .entries
            .iter()
            .map(|e| match e {
                Entry::Lock(mu) => Kind::Lock(mu.clone()),
                Entry::TmVar(..) => Kind::Tm,
                Entry::IntVar => Kind::Int,
                Entry::Restrict(_) => Kind::Restrict,
            })
            .collect();
        self.fuse(&self.empty_cx(ctx.mode), out)
    }

    /// Merges adjacent locks and drops identities.
    fn fuse(&self, cx: &Cx, ks: Vec<Kind>) -> TcResult<Vec<Kind>> {
        let mut out: Vec<Kind> = Vec::new();
        for k in ks {
            match (out.last_mut(), k) {
                (Some(Kind::Lock(prev)), Kind::Lock(mu)) => {
                    *prev = self
                        .theory
                        .compose(prev, &mu)
                        .map_err(|e| self.mode_err(cx, "cx/lock", e))?;
                }
                (_, k) => out.push(k),
            }
        }
        out.retain(|k| !matches!(k, Kind::Lock(m) if m.is_identity()));
        Ok(out)
    }

    fn same_kinds(&self, cx: &Cx, a: &[Kind], b: &[Kind]) -> TcResult<bool> {
        if a.len() != b.len() {
            return Ok(false);
        }
        for (x, y) in a.iter().zip(b) {
            let ok = match (x, y) {
                (Kind::Lock(m), Kind::Lock(n)) => self.mod_eq(cx, m, n, "cx-eq/comp-lock")?,
                (Kind::Tm, Kind::Tm)
                | (Kind::Int, Kind::Int)
                | (Kind::Restrict, Kind::Restrict) => true,
                _ => false,
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    // ---- syntactic contexts ----

    /// Checks a syntactic context and returns one checking context per
    /// clause of its restrictions.
    pub fn contexts(&self, ctx: &Ctx) -> TcResult<Vec<Cx>> {
        let mut cxs = vec![self.empty_cx(ctx.mode)];
        for e in &ctx.entries {
            let mut next = Vec::new();
            for cx in &cxs {
                match e {
                    Entry::Lock(mu) => next.push(self.lock(cx, mu, "cx/lock")?),
                    Entry::TmVar(mu, a) => {
                        let lcx = self.lock(cx, mu, "cx/ext-type")?;
                        let (a2, _) = self.check_ty(&lcx, a)?;
                        let av = self.eval_ty(cx, &a2);
                        next.push(cx.bind(mu.clone(), av).0);
                    }
                    Entry::IntVar => next.push(cx.bind_int().0),
                    Entry::Restrict(phi) => {
                        let phi2 = self.check_face(cx, phi)?;
                        let fv = self.eval_face(cx, &phi2);
                        next.extend(self.restrict(cx, &fv)?);
                    }
                }
            }
            cxs = next;
        }
        Ok(cxs)
    }

    pub fn check_in(&self, ctx: &Ctx, e: &Tm, ty: &Ty) -> TcResult<Tm> {
        let mut out = None;
        for cx in self.contexts(ctx)? {
            let (t2, _) = self.check_ty(&cx, ty)?;
            let tv = self.eval_ty(&cx, &t2);
            let src = out.as_ref().unwrap_or(e);
            let e2 = self.check(&cx, src, &tv)?;
            out = Some(e2);
        }
        Ok(out.unwrap_or_else(|| e.clone()))
    }

    pub fn infer_in(&self, ctx: &Ctx, e: &Tm) -> TcResult<Vec<Ty>> {
        let mut out = Vec::new();
        for cx in self.contexts(ctx)? {
            let (_, ty) = self.infer(&cx, e)?;
            out.push(
                quote_ty(self.theory, &cx.qctx(), &ty)
                    .map_err(|q| self.err(&cx, "quote", q.to_string()))?,
            );
        }
        Ok(out)
    }

    pub fn check_ty_in(&self, ctx: &Ctx, t: &Ty) -> TcResult<Ty> {
        let mut out = None;
        for cx in self.contexts(ctx)? {
            let (t2, _) = self.check_ty(&cx, out.as_ref().unwrap_or(t))?;
            out = Some(t2);
        }
        Ok(out.unwrap_or_else(|| t.clone()))
    }

    /// Both terms check at `ty` and are definitionally equal, in every
    /// clause of the context.
    pub fn equal_in(&self, ctx: &Ctx, ty: &Ty, a: &Tm, b: &Tm) -> TcResult<bool> {
        for cx in self.contexts(ctx)? {
            let (t2, _) = self.check_ty(&cx, ty)?;
            let tv = self.eval_ty(&cx, &t2);
            let a2 = self.check(&cx, a, &tv)?;
            let b2 = self.check(&cx, b, &tv)?;
            if !self
                .conv()
                .conv(&tv, &self.eval(&cx, &a2), &self.eval(&cx, &b2))
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equal_ty_in(&self, ctx: &Ctx, a: &Ty, b: &Ty) -> TcResult<bool> {
        for cx in self.contexts(ctx)? {
            let (a2, _) = self.check_ty(&cx, a)?;
            let (b2, _) = self.check_ty(&cx, b)?;
            if !self
                .conv()
                .conv_ty(&self.eval_ty(&cx, &a2), &self.eval_ty(&cx, &b2))
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Normal form of a term in a context, read back at its type.
    pub fn normalize_in(&self, ctx: &Ctx, e: &Tm, ty: &Ty) -> TcResult<Vec<Tm>> {
        let mut out = Vec::new();
        for cx in self.contexts(ctx)? {
            let (t2, _) = self.check_ty(&cx, ty)?;
            let tv = self.eval_ty(&cx, &t2);
            let e2 = self.check(&cx, e, &tv)?;
            out.push(
                quote_tm(self.theory, &cx.qctx(), &tv, &self.eval(&cx, &e2))
                    .map_err(|q| self.err(&cx, "quote", q.to_string()))?,
            );
        }
        Ok(out)
    }

    pub fn check_ctx(&self, ctx: &Ctx) -> TcResult<()> {
        self.contexts(ctx).map(|_| ())
    }

    /// Both contexts are well formed and agree once adjacent locks are
    /// composed.
    pub fn ctx_equal(&self, a: &Ctx, b: &Ctx) -> TcResult<bool> {
        self.check_ctx(a)?;
        self.check_ctx(b)?;
        if a.mode != b.mode {
            return Ok(false);
        }
        let cx = self.empty_cx(a.mode);
        let (ka, kb) = (self.syntactic_kinds(a)?, self.syntactic_kinds(b)?);
        if !self.same_kinds(&cx, &ka, &kb)? {
            return Ok(false);
        }
        let fa = a
            .fused(self.theory)
            .map_err(|e| self.err(&cx, "cx-eq/comp-lock", e.to_string()))?;
        let fb = b
            .fused(self.theory)
            .map_err(|e| self.err(&cx, "cx-eq/comp-lock", e.to_string()))?;
        // Types are compared in a common prefix, one entry at a time.
        let mut prefix = Ctx::empty(a.mode);
        for (x, y) in fa.entries.iter().zip(&fb.entries) {
            if let (Entry::TmVar(mu, s), Entry::TmVar(_, t)) = (x, y) {
                let locked = prefix.clone().with(Entry::Lock(mu.clone()));
                if !self.equal_ty_in(&locked, s, t)? {
                    return Ok(false);
                }
            }
            if let (Entry::Restrict(p), Entry::Restrict(q)) = (x, y) {
                if !self.face_equal_in(&prefix, (None, p), (None, q))? {
                    return Ok(false);
                }
            }
            prefix = prefix.with(x.clone());
        }
        Ok(true)
    }

    /// Checks `σ : Γ → Δ` for every clause of `Γ`.
    pub fn check_subst_in(&self, ctx: &Ctx, sigma: &Subst, target: &Ctx) -> TcResult<()> {
        self.check_ctx(target)?;
        for cx in self.contexts(ctx)? {
            self.check_subst_against(&cx, sigma, target)?;
        }
        Ok(())
    }

    /// Both substitutions check, land in the same context and send every
    /// variable to equal values.
    pub fn subst_equal_in(&self, ctx: &Ctx, a: &Subst, b: &Subst) -> TcResult<bool> {
        for cx in self.contexts(ctx)? {
            let (_, da) = self.check_subst(&cx, a)?;
            let (_, db) = self.check_subst(&cx, b)?;
            if !self.same_kinds(&cx, &self.kinds(&da)?, &self.kinds(&db)?)? {
                return Ok(false);
            }
            if da.env.ivs.len() != db.env.ivs.len() || da.env.tms.len() != db.env.tms.len() {
                return Ok(false);
            }
            for (r, s) in da.env.ivs.iter().zip(db.env.ivs.iter()) {
                if !crate::interval::int_equal(r, s) {
                    return Ok(false);
                }
            }
            let tys = da.entries.iter().filter_map(|e| match e {
                CEntry::Tm { ty, .. } => Some(ty),
                _ => None,
            });
            for ((ty, x), y) in tys.zip(da.env.tms.iter()).zip(db.env.tms.iter()) {
                if !self.conv().conv(ty, x, y) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn int_under(&self, cx: &Cx, sigma: Option<&Subst>, r: &ITm) -> TcResult<IVal> {
        let inner = match sigma {
            Some(s) => self.check_subst(cx, s)?.1,
            None => cx.clone(),
        };
        let r2 = self.check_int(&inner, r)?;
        Ok(eval::eval_int(&inner.env, &r2))
    }

    fn face_under(&self, cx: &Cx, sigma: Option<&Subst>, phi: &FTm) -> TcResult<FVal> {
        let inner = match sigma {
            Some(s) => self.check_subst(cx, s)?.1,
            None => cx.clone(),
        };
        let phi2 = self.check_face(&inner, phi)?;
        Ok(self.eval_face(&inner, &phi2))
    }

    /// Checks an interval term, optionally under a substitution `r[σ]`.
    pub fn check_int_in(&self, ctx: &Ctx, r: (Option<&Subst>, &ITm)) -> TcResult<()> {
        for cx in self.contexts(ctx)? {
            self.int_under(&cx, r.0, r.1)?;
        }
        Ok(())
    }

    pub fn int_equal_in(
        &self,
        ctx: &Ctx,
        r: (Option<&Subst>, &ITm),
        s: (Option<&Subst>, &ITm),
    ) -> TcResult<bool> {
        for cx in self.contexts(ctx)? {
            let a = self.int_under(&cx, r.0, r.1)?;
            let b = self.int_under(&cx, s.0, s.1)?;
            if !crate::interval::int_equal(&a, &b) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn check_face_in(&self, ctx: &Ctx, phi: (Option<&Subst>, &FTm)) -> TcResult<()> {
        for cx in self.contexts(ctx)? {
            self.face_under(&cx, phi.0, phi.1)?;
        }
        Ok(())
    }

    pub fn face_equal_in(
        &self,
        ctx: &Ctx,
        phi: (Option<&Subst>, &FTm),
        psi: (Option<&Subst>, &FTm),
    ) -> TcResult<bool> {
        for cx in self.contexts(ctx)? {
            let a = self.face_under(&cx, phi.0, phi.1)?;
            let b = self.face_under(&cx, psi.0, psi.1)?;
            if !face_eq(&a, &b) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    // ---- declarations ----

    fn insert_global(&mut self, name: &str, g: Global) {
        let mut map: HashMap<String, Rc<Global>> = (*self.globals).clone();
        map.insert(name.to_owned(), Rc::new(g));
        self.globals = Rc::new(map);
    }

    pub fn check_decl(&mut self, d: &Decl) -> TcResult<Checked> {
        let cx = self.empty_cx(d.mode);
        if self.globals.contains_key(&d.name) {
            return Err(self.err(
                &cx,
                "decl/duplicate",
                format!("{} is already defined", d.name),
            ));
        }
        let (ty2, _) = self.check_ty(&cx, &d.ty)?;
        let tyv = self.eval_ty(&cx, &ty2);
        let checked = match &d.body {
            DeclBody::Def(body) => {
                let body2 = self.check(&cx, body, &tyv)?;
                let value = self.eval(&cx, &body2);
                self.insert_global(
                    &d.name,
                    Global {
                        mode: d.mode,
                        ty: tyv,
                        value: Some(value),
                        unfold: None,
                    },
                );
                Checked {
                    name: d.name.clone(),
                    mode: d.mode,
                    ty: ty2,
                    body: Some(body2),
                    unfold: None,
                }
            }
            DeclBody::Axiom { unfold } => {
                self.insert_global(
                    &d.name,
                    Global {
                        mode: d.mode,
                        ty: tyv.clone(),
                        value: None,
                        unfold: None,
                    },
                );
                let unfold2 = match unfold {
                    Some(u) => {
                        let cx = self.empty_cx(d.mode);
                        let checked = self.check(&cx, u, &tyv);
                        let u2 = match checked {
                            Ok(u2) => u2,
                            Err(e) => {
                                let mut map = (*self.globals).clone();
                                map.remove(&d.name);
                                self.globals = Rc::new(map);
                                return Err(e);
                            }
                        };
                        let uv = self.eval(&cx, &u2);
                        self.insert_global(
                            &d.name,
                            Global {
                                mode: d.mode,
                                ty: tyv,
                                value: None,
                                unfold: Some(uv),
                            },
                        );
                        Some(u2)
                    }
                    None => None,
                };
                Checked {
                    name: d.name.clone(),
                    mode: d.mode,
                    ty: ty2,
                    body: None,
                    unfold: unfold2,
                }
            }
        };
        self.checked.push(checked.clone());
        Ok(checked)
    }

    /// The normal form of a checked declaration: its body for definitions,
    /// the constant itself for axioms.
    pub fn normalize_decl(&self, name: &str) -> TcResult<Tm> {
        let cx0 = self.empty_cx(self.theory.modes().next().unwrap_or(ModeId(0)));
        let g = self
            .globals
            .get(name)
            .ok_or_else(|| self.err(&cx0, "decl/unknown", format!("unknown declaration {name}")))?;
        let cx = self.empty_cx(g.mode);
        let v = self.eval(&cx, &Tm::Const(name.to_owned()));
        quote_tm(self.theory, &cx.qctx(), &g.ty, &v)
            .map_err(|q| self.err(&cx, "quote", q.to_string()))
    }

    /// Judgmental equality of two closed terms at a declared type.
    pub fn equal_closed(&self, mode: ModeId, ty: &Ty, a: &Tm, b: &Tm) -> TcResult<bool> {
        self.equal_in(&Ctx::empty(mode), ty, a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::ivar;

    fn guarded() -> ModeTheory {
        ModeTheory::guarded()
    }

    #[test]
    fn identity_function_checks() {
        let th = ModeTheory::trivial();
        let m = th.mode("m").unwrap();
        let ck = Checker::new(&th, Options::default());
        let id = th.id(m);
        let ty = Ty::pi(id, Ty::Bool, Ty::Bool);
        assert!(ck
            .check_in(&Ctx::empty(m), &Tm::lam(Tm::Var(0)), &ty)
            .is_ok());
    }

    #[test]
    fn lock_discipline() {
        let th = guarded();
        let t = th.mode("t").unwrap();
        let l = th.generator("ℓ").unwrap();
        let ck = Checker::new(&th, Options::default());
        // x : (1 | Bool) used under a lock ℓ: allowed since 1 ≤ ℓ.
        let ctx = Ctx::empty(t)
            .with(Entry::TmVar(th.id(t), Ty::Bool))
            .with(Entry::Lock(l.clone()));
        assert!(ck.infer_in(&ctx, &Tm::Var(0)).is_ok());
        // x : (ℓ | Bool) used with no lock: ℓ ≤ 1 fails.
        let ctx = Ctx::empty(t).with(Entry::TmVar(l, Ty::Bool));
        let err = ck.infer_in(&ctx, &Tm::Var(0)).unwrap_err();
        assert_eq!(err.rule, "term/var");
    }

    #[test]
    fn system_cover_and_overlap() {
        let th = ModeTheory::trivial();
        let m = th.mode("m").unwrap();
        let ck = Checker::new(&th, Options::default());
        let ctx = Ctx::empty(m).with(Entry::IntVar);
        let i = ivar(0);
        let good = Tm::Sys(vec![
            (crate::interval::Face::Eq0(i.clone()), Tm::True),
            (crate::interval::Face::Eq1(i.clone()), Tm::False),
        ]);
        let restricted = ctx
            .clone()
            .with(Entry::Restrict(crate::interval::Face::join(
                crate::interval::Face::Eq0(i.clone()),
                crate::interval::Face::Eq1(i.clone()),
            )));
        assert!(ck.check_in(&restricted, &good, &Ty::Bool).is_ok());
        let err = ck.check_in(&ctx, &good, &Ty::Bool).unwrap_err();
        assert_eq!(err.rule, "term/sys-bin");
        let bad = Tm::Sys(vec![
            (crate::interval::Face::Top, Tm::True),
            (crate::interval::Face::Eq1(i.clone()), Tm::False),
        ]);
        let err = ck.check_in(&ctx, &bad, &Ty::Bool).unwrap_err();
        assert_eq!(err.rule, "term/sys-bin");
    }

    #[test]
    fn duplicate_declaration() {
        let th = ModeTheory::trivial();
        let m = th.mode("m").unwrap();
        let mut ck = Checker::new(&th, Options::default());
        let d = Decl {
            name: "b".into(),
            mode: m,
            ty: Ty::Bool,
            body: DeclBody::Def(Tm::True),
        };
        ck.check_decl(&d).unwrap();
        assert_eq!(ck.check_decl(&d).unwrap_err().rule, "decl/duplicate");
    }
}
