//! Golden derivations, indexed by rule name.
//!
//! Every rule of the catalogue in [`crate::rules`] has at least one
//! positive case (the judgment is derivable) and every failable rule has a
//! negative case (the judgment is rejected, or the equation fails). All cases
//! run over the guarded mode theory, with modes `t` and `s`.

use crate::interval::{exc_face, exc_int, Face, IAtom, ITm, Interval};
use crate::mode_theory::{Modality, ModeId, ModeTheory};
use crate::syntax::{ivar, Ctx, Entry, Subst, Tm, Ty};
use crate::typecheck::{Checker, Options, TcResult};

pub struct Fixture {
    pub theory: ModeTheory,
}

impl Default for Fixture {
    fn default() -> Self {
        Fixture {
            theory: ModeTheory::guarded(),
        }
    }
}

impl Fixture {
    pub fn ck(&self) -> Checker<'_> {
        Checker::new(&self.theory, Options::default())
    }

    pub fn m(&self, text: &str) -> Modality {
        self.theory
            .parse_modality(text)
            .unwrap_or_else(|e| panic!("bad modality {text}: {e}"))
    }

    pub fn t(&self) -> ModeId {
        self.theory.mode("t").unwrap()
    }

    pub fn s(&self) -> ModeId {
        self.theory.mode("s").unwrap()
    }

    /// Empty context at `t`.
    pub fn cx(&self) -> Ctx {
        Ctx::empty(self.t())
    }

    pub fn var(&self, ann: &str, ty: Ty) -> Entry {
        Entry::TmVar(self.m(ann), ty)
    }

    pub fn lock(&self, mu: &str) -> Entry {
        Entry::Lock(self.m(mu))
    }

    /// `x : Bool, y : Bool, p : Path Bool x y` at `t`.
    pub fn paths(&self) -> Ctx {
        self.cx()
            .with(self.var("1_t", Ty::Bool))
            .with(self.var("1_t", Ty::Bool))
            .with(self.var("1_t", Ty::path(Ty::Bool, v(1), v(0))))
    }

    pub fn ia(&self, k: usize, mu: &str) -> ITm {
        Interval::Var(IAtom::annotated(k, self.m(mu)))
    }

    pub fn exc_i(&self, mu: &str, r: &ITm) -> ITm {
        exc_int(&self.theory, &self.m(mu), r).unwrap()
    }

    pub fn exc_f(&self, mu: &str, phi: &FTmAlias) -> FTmAlias {
        exc_face(&self.theory, &self.m(mu), phi).unwrap()
    }

    pub fn key(&self, src: &str, dst: &str) -> Subst {
        Subst::Key {
            src: self.m(src),
            dst: self.m(dst),
        }
    }
}

type FTmAlias = crate::interval::FTm;

pub fn v(k: usize) -> Tm {
    Tm::Var(k)
}

fn i(k: usize) -> ITm {
    ivar(k)
}

fn neg(r: ITm) -> ITm {
    Interval::neg(r)
}

fn eq0(r: ITm) -> FTmAlias {
    Face::Eq0(r)
}

fn eq1(r: ITm) -> FTmAlias {
    Face::Eq1(r)
}

fn or(a: FTmAlias, b: FTmAlias) -> FTmAlias {
    Face::join(a, b)
}

fn and(a: FTmAlias, b: FTmAlias) -> FTmAlias {
    Face::meet(a, b)
}

fn ok<T>(r: TcResult<T>) -> TcResult<bool> {
    r.map(|_| true)
}

fn both(a: TcResult<bool>, b: TcResult<bool>) -> TcResult<bool> {
    Ok(a? && b?)
}

/// `j : 𝕀` at `t`.
fn j_cx(f: &Fixture) -> Ctx {
    f.cx().with(Entry::IntVar)
}

/// `j : 𝕀, (j=0) ∨ (j=1)`.
fn j_ends(f: &Fixture) -> Ctx {
    j_cx(f).with(Entry::Restrict(or(eq0(i(0)), eq1(i(0)))))
}

/// `j : 𝕀, (j=0) ∧ (j=1)`: an inconsistent context.
fn j_bot(f: &Fixture) -> Ctx {
    j_cx(f).with(Entry::Restrict(and(eq0(i(0)), eq1(i(0)))))
}

fn xy(f: &Fixture) -> Ctx {
    f.cx()
        .with(f.var("1_t", Ty::Bool))
        .with(f.var("1_t", Ty::Bool))
}

fn bool_to_bool(f: &Fixture) -> Ty {
    Ty::pi(f.m("1_t"), Ty::Bool, Ty::Bool)
}

fn modal(f: &Fixture, mu: &str, a: Ty) -> Ty {
    Ty::modal(f.m(mu), a)
}

/// `letmod_{μ}^{ν} scrut [motive] (y. branch)`.
fn letmod(f: &Fixture, mu: &str, nu: &str, motive: Ty, scrut: Tm, branch: Tm) -> Tm {
    Tm::LetMod {
        mu: Some(f.m(mu)),
        nu: Some(f.m(nu)),
        motive: Some(Box::new(motive)),
        scrut: Box::new(scrut),
        branch: Box::new(branch),
    }
}

/// `box_μ a` annotated with `⟨μ | Bool⟩`, so that it infers.
fn boxed(f: &Fixture, mu: &str, a: Tm) -> Tm {
    Tm::Ann(
        Box::new(Tm::mkbox(f.m(mu), a)),
        Box::new(modal(f, mu, Ty::Bool)),
    )
}

/// Context for modal composition: `x y : (ℓ | Bool)`,
/// `p : (ℓ | Path Bool x y)`, `j : 𝕀`.
pub fn comp_mod_cx(f: &Fixture) -> Ctx {
    f.cx()
        .with(f.var("ℓ", Ty::Bool))
        .with(f.var("ℓ", Ty::Bool))
        .with(f.var("ℓ", Ty::path(Ty::Bool, v(1), v(0))))
        .with(Entry::IntVar)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Polarity {
    Positive,
    Negative,
}

pub struct Case {
    pub rule: &'static str,
    pub polarity: Polarity,
    /// For negative cases, the rule the diagnostic must name, if any.
    pub expect_rule: Option<&'static str>,
    pub run: fn(&Fixture) -> TcResult<bool>,
}

#[derive(Debug)]
pub struct Failure {
    pub rule: &'static str,
    pub polarity: Polarity,
    pub detail: String,
}

impl Case {
    pub fn execute(&self, f: &Fixture) -> Result<(), Failure> {
        let out = (self.run)(f);
        let fail = |detail: String| {
            Err(Failure {
                rule: self.rule,
                polarity: self.polarity,
                detail,
            })
        };
        match (self.polarity, out) {
            (Polarity::Positive, Ok(true)) => Ok(()),
            (Polarity::Positive, Ok(false)) => fail("equation not derivable".into()),
            (Polarity::Positive, Err(e)) => fail(format!("rejected: {e}")),
            (Polarity::Negative, Ok(true)) => fail("accepted".into()),
            (Polarity::Negative, Ok(false)) => match self.expect_rule {
                None => Ok(()),
                Some(r) => fail(format!(
                    "expected a diagnostic naming {r}, got a failed equation"
                )),
            },
            (Polarity::Negative, Err(e)) => match self.expect_rule {
                Some(r) if r != e.rule => fail(format!("expected rule {r}, got {e}")),
                _ => Ok(()),
            },
        }
    }
}

macro_rules! pos {
    ($rule:literal, $run:expr) => {
        Case {
            rule: $rule,
            polarity: Polarity::Positive,
            expect_rule: None,
            run: $run,
        }
    };
}

macro_rules! neg {
    ($rule:literal, $run:expr) => {
        Case {
            rule: $rule,
            polarity: Polarity::Negative,
            expect_rule: None,
            run: $run,
        }
    };
    ($rule:literal, $expect:literal, $run:expr) => {
        Case {
            rule: $rule,
            polarity: Polarity::Negative,
            expect_rule: Some($expect),
            run: $run,
        }
    };
}

pub fn cases() -> Vec<Case> {
    let mut out = Vec::new();
    out.extend(contexts());
    out.extend(substitutions());
    out.extend(subst_equations());
    out.extend(intervals());
    out.extend(faces());
    out.extend(types());
    out.extend(terms());
    out.extend(term_equations());
    out.extend(derived());
    out
}

/// Runs every case and returns the failures.
pub fn run_all(f: &Fixture) -> Vec<Failure> {
    cases().iter().filter_map(|c| c.execute(f).err()).collect()
}

/// Rules of the catalogue lacking a positive case, or a negative one when
/// failable.
pub fn missing() -> Vec<(&'static str, Polarity)> {
    let cs = cases();
    let has = |name: &str, p: Polarity| cs.iter().any(|c| c.rule == name && c.polarity == p);
    let mut out = Vec::new();
    for r in crate::rules::rules() {
        if !has(r.name, Polarity::Positive) {
            out.push((r.name, Polarity::Positive));
        }
        if r.failable && !has(r.name, Polarity::Negative) {
            out.push((r.name, Polarity::Negative));
        }
    }
    out
}

fn contexts() -> Vec<Case> {
    vec![
        pos!("cx/emp", |f| ok(f.ck().check_ctx(&f.cx()))),
        pos!("cx/emp", |f| ok(f.ck().check_ctx(&Ctx::empty(f.s())))),
        pos!("cx/lock", |f| ok(f
            .ck()
            .check_ctx(&f.cx().with(f.lock("ℓ"))))),
        pos!("cx/lock", |f| ok(f.ck().check_ctx(
            &Ctx::empty(f.s()).with(f.lock("γ")).with(f.lock("δ"))
        ))),
        neg!("cx/lock", "cx/lock", |f| ok(f
            .ck()
            .check_ctx(&f.cx().with(f.lock("γ"))))),
        pos!("cx/ext-type", |f| ok(f
            .ck()
            .check_ctx(&f.cx().with(f.var("ℓ", Ty::Bool))))),
        pos!("cx/ext-type", |f| ok(f.ck().check_ctx(
            &f.cx().with(f.var("δ∘γ", modal(f, "δ", Ty::Bool)))
        ))),
        neg!("cx/ext-type", "cx/ext-type", |f| ok(f
            .ck()
            .check_ctx(&f.cx().with(f.var("γ", Ty::Bool))))),
        neg!("cx/ext-type", |f| ok(f
            .ck()
            .check_ctx(&f.cx().with(f.var("ℓ", Ty::El(Box::new(v(0)))))))),
        pos!("cx/ext-int", |f| ok(f.ck().check_ctx(&j_cx(f)))),
        pos!("cx/face-res", |f| ok(f.ck().check_ctx(&j_ends(f)))),
        neg!("cx/face-res", "int/var", |f| ok(f
            .ck()
            .check_ctx(&f.cx().with(Entry::Restrict(eq0(i(0))))))),
        pos!("cx-eq/comp-lock", |f| {
            let base = Ctx::empty(f.s()).with(Entry::IntVar);
            f.ck().ctx_equal(
                &base.clone().with(f.lock("γ∘ℓ")),
                &base.with(f.lock("γ")).with(f.lock("ℓ")),
            )
        }),
        pos!("cx-eq/comp-lock", |f| f.ck().ctx_equal(
            &f.cx().with(f.lock("ℓ∘ℓ")),
            &f.cx().with(f.lock("ℓ")).with(f.lock("ℓ")),
        )),
        neg!("cx-eq/comp-lock", |f| f.ck().ctx_equal(
            &f.cx().with(f.lock("ℓ")),
            &f.cx().with(f.lock("ℓ")).with(f.lock("ℓ")),
        )),
        pos!("cx-eq/id-lock", |f| f
            .ck()
            .ctx_equal(&xy(f).with(f.lock("1_t")), &xy(f))),
    ]
}

fn substitutions() -> Vec<Case> {
    vec![
        pos!("sb/comp", |f| ok(f.ck().check_subst_in(
            &xy(f),
            &Subst::comp(Subst::WkTm, Subst::WkTm),
            &f.cx()
        ))),
        neg!("sb/comp", |f| ok(f.ck().check_subst_in(
            &xy(f),
            &Subst::comp(Subst::WkInt, Subst::WkTm),
            &f.cx()
        ))),
        neg!("sb/comp", "sb/comp", |f| ok(f.ck().check_subst_in(
            &xy(f),
            &Subst::WkTm,
            &f.cx()
        ))),
        pos!("sb/id", |f| ok(f.ck().check_subst_in(
            &xy(f),
            &Subst::Id,
            &xy(f)
        ))),
        pos!("sb/emp", |f| ok(f.ck().check_subst_in(
            &xy(f),
            &Subst::Empty,
            &f.cx()
        ))),
        pos!("sb/weak-type", |f| ok(f.ck().check_subst_in(
            &f.cx().with(f.var("1_t", Ty::Bool)),
            &Subst::WkTm,
            &f.cx()
        ))),
        neg!("sb/weak-type", "sb/weak-type", |f| ok(f
            .ck()
            .check_subst_in(&j_cx(f), &Subst::WkTm, &f.cx()))),
        pos!("sb/weak-int", |f| ok(f.ck().check_subst_in(
            &j_cx(f),
            &Subst::WkInt,
            &f.cx()
        ))),
        pos!("sb/weak-res", |f| ok(f.ck().check_subst_in(
            &j_ends(f),
            &Subst::WkFace(or(eq0(i(0)), eq1(i(0)))),
            &j_cx(f)
        ))),
        neg!("sb/weak-res", "sb/weak-res", |f| ok(f.ck().check_subst_in(
            &j_ends(f),
            &Subst::WkFace(eq1(i(0))),
            &j_cx(f)
        ))),
        pos!("sb/lock", |f| ok(f.ck().check_subst_in(
            &f.cx().with(f.var("1_t", Ty::Bool)).with(f.lock("ℓ")),
            &Subst::lock(f.m("ℓ"), Subst::WkTm),
            &f.cx().with(f.lock("ℓ"))
        ))),
        neg!("sb/lock", "sb/lock", |f| ok(f.ck().check_subst_in(
            &f.cx().with(f.var("1_t", Ty::Bool)).with(f.lock("δ∘γ")),
            &Subst::lock(f.m("ℓ"), Subst::WkTm),
            &f.cx().with(f.lock("ℓ"))
        ))),
        pos!("sb/key", |f| ok(f.ck().check_subst_in(
            &xy(f).with(f.lock("ℓ")),
            &f.key("1_t", "ℓ"),
            &xy(f)
        ))),
        pos!("sb/key", |f| ok(f.ck().check_subst_in(
            &xy(f),
            &f.key("δ∘γ", "1_t"),
            &xy(f).with(f.lock("δ∘γ"))
        ))),
        neg!("sb/key", "sb/key", |f| ok(f.ck().check_subst_in(
            &xy(f),
            &f.key("ℓ", "1_t"),
            &xy(f).with(f.lock("ℓ"))
        ))),
        pos!("sb/ext-type", |f| {
            let g = f.cx().with(f.var("1_t", Ty::Bool));
            ok(f.ck().check_subst_in(
                &g,
                &Subst::ext_tm(Subst::Id, v(0)),
                &g.clone().with(f.var("ℓ", Ty::Bool)),
            ))
        }),
        neg!("sb/ext-type", |f| {
            let g = f.cx().with(f.var("1_t", Ty::Bool));
            ok(f.ck().check_subst_in(
                &g,
                &Subst::ext_tm(Subst::Id, v(0)),
                &g.clone().with(f.var("1_t", modal(f, "ℓ", Ty::Bool))),
            ))
        }),
        pos!("sb/ext-int", |f| ok(f.ck().check_subst_in(
            &xy(f),
            &Subst::ext_int(Subst::Id, Interval::Zero),
            &xy(f).with(Entry::IntVar)
        ))),
        neg!("sb/ext-int", "int/var", |f| ok(f.ck().check_subst_in(
            &xy(f),
            &Subst::ext_int(Subst::Id, i(0)),
            &xy(f).with(Entry::IntVar)
        ))),
        pos!("sb/face-res", |f| ok(f.ck().check_subst_in(
            &f.cx(),
            &Subst::restrict(Subst::ext_int(Subst::Empty, Interval::Zero), eq0(i(0))),
            &j_cx(f).with(Entry::Restrict(eq0(i(0))))
        ))),
        neg!("sb/face-res", "sb/face-res", |f| ok(f.ck().check_subst_in(
            &f.cx(),
            &Subst::restrict(Subst::ext_int(Subst::Empty, Interval::Zero), eq1(i(0))),
            &j_cx(f).with(Entry::Restrict(eq1(i(0))))
        ))),
        pos!("sb/exc-int-inv", |f| ok(f.ck().check_subst_in(
            &xy(f).with(f.lock("ℓ")).with(Entry::IntVar),
            &Subst::ExcIntInv(f.m("ℓ")),
            &xy(f).with(Entry::IntVar).with(f.lock("ℓ"))
        ))),
        pos!("sb/exc-face-inv", |f| {
            let phi = eq0(i(0));
            ok(f.ck().check_subst_in(
                &j_cx(f)
                    .with(f.lock("ℓ"))
                    .with(Entry::Restrict(f.exc_f("ℓ", &phi))),
                &Subst::ExcFaceInv(f.m("ℓ"), phi.clone()),
                &j_cx(f).with(Entry::Restrict(phi)).with(f.lock("ℓ")),
            ))
        }),
        neg!("sb/exc-face-inv", "sb/exc-face-inv", |f| {
            let phi = eq0(i(0));
            ok(f.ck().check_subst_in(
                &j_cx(f)
                    .with(f.lock("ℓ"))
                    .with(Entry::Restrict(f.exc_f("ℓ", &phi))),
                &Subst::ExcFaceInv(f.m("ℓ"), eq1(i(0))),
                &j_cx(f).with(Entry::Restrict(eq1(i(0)))).with(f.lock("ℓ")),
            ))
        }),
    ]
}

/// `(x, y)` with a second substitution sending `x` to `y`.
fn swap_x(_: &Fixture) -> Subst {
    Subst::ext_tm(Subst::comp(Subst::WkTm, Subst::WkTm), v(0))
}

fn subst_equations() -> Vec<Case> {
    vec![
        pos!("sb-eq/comp-lock", |f| f.ck().subst_equal_in(
            &xy(f).with(f.lock("ℓ")).with(f.lock("ℓ")),
            &Subst::lock(f.m("ℓ∘ℓ"), Subst::WkTm),
            &Subst::lock(f.m("ℓ"), Subst::lock(f.m("ℓ"), Subst::WkTm)),
        )),
        pos!("sb-eq/comp-lock", |f| {
            let g = Ctx::empty(f.s()).with(Entry::IntVar).with(Entry::IntVar);
            f.ck().subst_equal_in(
                &g.with(f.lock("γ")).with(f.lock("ℓ")),
                &Subst::lock(f.m("γ∘ℓ"), Subst::WkInt),
                &Subst::lock(f.m("ℓ"), Subst::lock(f.m("γ"), Subst::WkInt)),
            )
        }),
        neg!("sb-eq/comp-lock", |f| f.ck().subst_equal_in(
            &xy(f).with(f.lock("ℓ")).with(f.lock("ℓ")),
            &Subst::lock(f.m("ℓ∘ℓ"), Subst::WkTm),
            &Subst::lock(f.m("ℓ"), Subst::lock(f.m("ℓ"), swap_x(f))),
        )),
        pos!("sb-eq/id-lock", |f| f.ck().subst_equal_in(
            &xy(f),
            &Subst::lock(f.m("1_t"), Subst::WkTm),
            &Subst::WkTm
        )),
        pos!("sb-eq/lock-comp", |f| {
            let g = xy(f).with(f.var("1_t", Ty::Bool)).with(f.lock("ℓ"));
            f.ck().subst_equal_in(
                &g,
                &Subst::lock(f.m("ℓ"), Subst::comp(Subst::WkTm, Subst::WkTm)),
                &Subst::comp(
                    Subst::lock(f.m("ℓ"), Subst::WkTm),
                    Subst::lock(f.m("ℓ"), Subst::WkTm),
                ),
            )
        }),
        neg!("sb-eq/lock-comp", |f| {
            let g = xy(f).with(f.var("1_t", Ty::Bool)).with(f.lock("ℓ"));
            f.ck().subst_equal_in(
                &g,
                &Subst::lock(f.m("ℓ"), Subst::comp(Subst::WkTm, Subst::WkTm)),
                &Subst::lock(f.m("ℓ"), Subst::WkTm),
            )
        }),
        pos!("sb-eq/lock-id", |f| f.ck().subst_equal_in(
            &xy(f).with(f.lock("ℓ")),
            &Subst::lock(f.m("ℓ"), Subst::Id),
            &Subst::Id
        )),
        pos!("sb-eq/id-key", |f| f.ck().subst_equal_in(
            &xy(f).with(f.lock("ℓ")),
            &f.key("ℓ", "ℓ"),
            &Subst::Id
        )),
        pos!("sb-eq/nat-key", |f| f.ck().subst_equal_in(
            &xy(f).with(f.lock("ℓ")),
            &Subst::comp(f.key("1_t", "ℓ"), Subst::lock(f.m("ℓ"), Subst::WkTm)),
            &Subst::comp(Subst::lock(f.m("1_t"), Subst::WkTm), f.key("1_t", "ℓ")),
        )),
        neg!("sb-eq/nat-key", |f| f.ck().subst_equal_in(
            &xy(f).with(f.lock("ℓ")),
            &Subst::comp(f.key("1_t", "ℓ"), Subst::lock(f.m("ℓ"), Subst::WkTm)),
            &Subst::comp(Subst::lock(f.m("1_t"), swap_x(f)), f.key("1_t", "ℓ")),
        )),
        neg!("sb-eq/nat-key", "sb/key", |f| f.ck().subst_equal_in(
            &xy(f).with(f.lock("1_t")),
            &Subst::comp(f.key("ℓ", "1_t"), Subst::lock(f.m("1_t"), Subst::WkTm)),
            &Subst::comp(Subst::lock(f.m("ℓ"), Subst::WkTm), f.key("ℓ", "1_t")),
        )),
        pos!("sb-eq/comp-key", |f| f.ck().subst_equal_in(
            &xy(f).with(f.lock("ℓ")),
            &f.key("δ∘γ", "ℓ"),
            &Subst::comp(f.key("δ∘γ", "1_t"), f.key("1_t", "ℓ")),
        )),
        neg!("sb-eq/comp-key", "sb/key", |f| f.ck().subst_equal_in(
            &xy(f).with(f.lock("1_t")),
            &f.key("ℓ", "1_t"),
            &Subst::comp(f.key("ℓ", "ℓ"), f.key("ℓ", "1_t")),
        )),
        pos!("sb-eq/whisk-key", |f| f.ck().subst_equal_in(
            &xy(f).with(f.lock("ℓ")).with(f.lock("ℓ")),
            &f.key("1_t", "ℓ∘ℓ"),
            &Subst::comp(
                Subst::lock(f.m("1_t"), f.key("1_t", "ℓ")),
                f.key("1_t", "ℓ")
            ),
        )),
        neg!("sb-eq/whisk-key", "sb/key", |f| f.ck().subst_equal_in(
            &xy(f).with(f.lock("ℓ")).with(f.lock("1_t")),
            &f.key("ℓ", "ℓ"),
            &Subst::comp(Subst::lock(f.m("1_t"), f.key("ℓ", "ℓ")), f.key("ℓ", "1_t")),
        )),
        pos!("sb-eq/ext-type-beta", |f| f.ck().subst_equal_in(
            &xy(f),
            &Subst::comp(Subst::WkTm, Subst::ext_tm(Subst::WkTm, v(0))),
            &Subst::WkTm
        )),
        neg!("sb-eq/ext-type-beta", |f| f.ck().subst_equal_in(
            &xy(f),
            &Subst::comp(Subst::WkTm, Subst::ext_tm(Subst::WkTm, v(0))),
            &Subst::Id
        )),
        pos!("sb-eq/ext-type-eta", |f| f.ck().subst_equal_in(
            &xy(f),
            &Subst::Id,
            &Subst::ext_tm(
                Subst::comp(Subst::WkTm, Subst::Id),
                Tm::Sub(Box::new(v(0)), Box::new(Subst::Id))
            )
        )),
        neg!("sb-eq/ext-type-eta", |f| f.ck().subst_equal_in(
            &xy(f),
            &Subst::Id,
            &Subst::ext_tm(Subst::WkTm, v(1))
        )),
        pos!("sb-eq/ext-int-beta", |f| f.ck().subst_equal_in(
            &j_cx(f),
            &Subst::comp(Subst::WkInt, Subst::ext_int(Subst::Id, Interval::Zero)),
            &Subst::Id
        )),
        neg!("sb-eq/ext-int-beta", |f| f.ck().subst_equal_in(
            &j_cx(f),
            &Subst::comp(Subst::WkInt, Subst::ext_int(Subst::Id, Interval::Zero)),
            &Subst::ext_int(Subst::WkInt, Interval::Zero)
        )),
        pos!("sb-eq/ext-int-eta", |f| f.ck().subst_equal_in(
            &j_cx(f),
            &Subst::Id,
            &Subst::ext_int(Subst::comp(Subst::WkInt, Subst::Id), i(0))
        )),
        neg!("sb-eq/ext-int-eta", |f| f.ck().subst_equal_in(
            &j_cx(f),
            &Subst::Id,
            &Subst::ext_int(Subst::WkInt, neg(i(0)))
        )),
        pos!("sb-eq/exc-int-left-inv", |f| f.ck().subst_equal_in(
            &xy(f).with(Entry::IntVar).with(f.lock("ℓ")),
            &Subst::comp(Subst::ExcIntInv(f.m("ℓ")), Subst::ExcInt(f.m("ℓ"))),
            &Subst::Id
        )),
        pos!("sb-eq/exc-int-right-inv", |f| f.ck().subst_equal_in(
            &xy(f).with(f.lock("ℓ")).with(Entry::IntVar),
            &Subst::comp(Subst::ExcInt(f.m("ℓ")), Subst::ExcIntInv(f.m("ℓ"))),
            &Subst::Id
        )),
        pos!("sb-eq/exc-face-left-inv", |f| {
            let phi = eq0(i(0));
            f.ck().subst_equal_in(
                &j_cx(f).with(Entry::Restrict(phi.clone())).with(f.lock("ℓ")),
                &Subst::comp(
                    Subst::ExcFaceInv(f.m("ℓ"), phi.clone()),
                    Subst::ExcFace(f.m("ℓ"), phi),
                ),
                &Subst::Id,
            )
        }),
        neg!("sb-eq/exc-face-left-inv", "sb/exc-face", |f| {
            let phi = eq0(i(0));
            f.ck().subst_equal_in(
                &j_cx(f).with(Entry::Restrict(phi.clone())).with(f.lock("ℓ")),
                &Subst::comp(
                    Subst::ExcFaceInv(f.m("ℓ"), phi),
                    Subst::ExcFace(f.m("ℓ"), eq1(i(0))),
                ),
                &Subst::Id,
            )
        }),
        pos!("sb-eq/exc-face-right-inv", |f| {
            let phi = eq0(i(0));
            f.ck().subst_equal_in(
                &j_cx(f)
                    .with(f.lock("ℓ"))
                    .with(Entry::Restrict(f.exc_f("ℓ", &phi))),
                &Subst::comp(
                    Subst::ExcFace(f.m("ℓ"), phi.clone()),
                    Subst::ExcFaceInv(f.m("ℓ"), phi),
                ),
                &Subst::Id,
            )
        }),
        neg!("sb-eq/exc-face-right-inv", "sb/exc-face-inv", |f| {
            let phi = eq0(i(0));
            f.ck().subst_equal_in(
                &j_cx(f)
                    .with(f.lock("ℓ"))
                    .with(Entry::Restrict(f.exc_f("ℓ", &phi))),
                &Subst::comp(
                    Subst::ExcFace(f.m("ℓ"), phi),
                    Subst::ExcFaceInv(f.m("ℓ"), eq1(i(0))),
                ),
                &Subst::Id,
            )
        }),
        pos!("sb-eq/face-res-uniq", |f| {
            let phi = eq0(i(0));
            f.ck().subst_equal_in(
                &j_cx(f).with(Entry::Restrict(phi.clone())),
                &Subst::Id,
                &Subst::restrict(Subst::comp(Subst::WkFace(phi.clone()), Subst::Id), phi),
            )
        }),
        neg!("sb-eq/face-res-uniq", "sb/face-res", |f| {
            let phi = eq0(i(0));
            f.ck().subst_equal_in(
                &j_cx(f).with(Entry::Restrict(phi.clone())),
                &Subst::Id,
                &Subst::restrict(Subst::WkFace(phi), eq1(i(0))),
            )
        }),
        pos!("sb-eq/face-res-bin", |f| f.ck().subst_equal_in(
            &j_ends(f),
            &Subst::ext_int(Subst::Id, Interval::join(i(0), neg(i(0)))),
            &Subst::ext_int(Subst::Id, Interval::One),
        )),
        neg!("sb-eq/face-res-bin", |f| f.ck().subst_equal_in(
            &j_cx(f),
            &Subst::ext_int(Subst::Id, Interval::join(i(0), neg(i(0)))),
            &Subst::ext_int(Subst::Id, Interval::One),
        )),
        pos!("sb-eq/face-res-null", |f| f.ck().subst_equal_in(
            &j_bot(f),
            &Subst::ext_int(Subst::Id, Interval::Zero),
            &Subst::ext_int(Subst::Id, Interval::One),
        )),
        neg!("sb-eq/face-res-null", |f| f.ck().subst_equal_in(
            &j_cx(f),
            &Subst::ext_int(Subst::Id, Interval::Zero),
            &Subst::ext_int(Subst::Id, Interval::One),
        )),
    ]
}

fn jk(f: &Fixture) -> Ctx {
    j_cx(f).with(Entry::IntVar)
}

fn intervals() -> Vec<Case> {
    vec![
        pos!("int/join", |f| ok(f
            .ck()
            .check_int_in(&jk(f), (None, &Interval::join(i(0), i(1)))))),
        neg!("int/join", "int/var", |f| ok(f
            .ck()
            .check_int_in(&jk(f), (None, &Interval::join(i(0), i(2)))))),
        pos!("int/meet", |f| ok(f
            .ck()
            .check_int_in(&jk(f), (None, &Interval::meet(i(0), i(1)))))),
        neg!("int/meet", "int/var", |f| ok(f
            .ck()
            .check_int_in(&j_cx(f), (None, &Interval::meet(i(1), i(0)))))),
        pos!("int/bot", |f| ok(f
            .ck()
            .check_int_in(&f.cx(), (None, &Interval::Zero)))),
        pos!("int/top", |f| ok(f
            .ck()
            .check_int_in(&f.cx(), (None, &Interval::One)))),
        pos!("int/inv", |f| ok(f
            .ck()
            .check_int_in(&j_cx(f), (None, &neg(i(0)))))),
        neg!("int/inv", "int/var", |f| ok(f
            .ck()
            .check_int_in(&f.cx(), (None, &neg(i(0)))))),
        pos!("int/exc", |f| ok(f.ck().check_int_in(
            &j_cx(f).with(f.lock("ℓ")),
            (None, &f.ia(0, "ℓ"))
        ))),
        pos!("int/exc", |f| {
            let g = Ctx::empty(f.s()).with(Entry::IntVar).with(f.lock("γ"));
            ok(f.ck().check_int_in(&g, (None, &f.ia(0, "γ"))))
        }),
        neg!("int/exc", "int/exc", |f| ok(f.ck().check_int_in(
            &j_cx(f).with(f.lock("ℓ")),
            (None, &f.ia(0, "1_t"))
        ))),
        pos!("int/var", |f| ok(f
            .ck()
            .check_int_in(&j_cx(f), (None, &i(0))))),
        neg!("int/var", "int/var", |f| ok(f
            .ck()
            .check_int_in(&xy(f), (None, &i(0))))),
        pos!("int/sb", |f| ok(f.ck().check_int_in(
            &j_cx(f),
            (Some(&Subst::ext_int(Subst::Empty, neg(i(0)))), &i(0))
        ))),
        neg!("int/sb", |f| ok(f.ck().check_int_in(
            &j_cx(f),
            (Some(&Subst::ext_int(Subst::Empty, neg(i(0)))), &i(1))
        ))),
        pos!("int-eq/ext-int-beta", |f| f.ck().int_equal_in(
            &j_cx(f),
            (Some(&Subst::ext_int(Subst::Id, neg(i(0)))), &i(0)),
            (None, &neg(i(0)))
        )),
        neg!("int-eq/ext-int-beta", |f| f.ck().int_equal_in(
            &j_cx(f),
            (Some(&Subst::ext_int(Subst::Id, neg(i(0)))), &i(0)),
            (None, &i(0))
        )),
        pos!("int-eq/res-eq", |f| f.ck().int_equal_in(
            &j_cx(f).with(Entry::Restrict(eq0(i(0)))),
            (Some(&Subst::WkFace(eq0(i(0)))), &i(0)),
            (None, &Interval::Zero)
        )),
        neg!("int-eq/res-eq", |f| f.ck().int_equal_in(
            &j_cx(f),
            (None, &i(0)),
            (None, &Interval::Zero)
        )),
        pos!("int-eq/exc-comp", |f| {
            let g = Ctx::empty(f.s())
                .with(Entry::IntVar)
                .with(f.lock("γ"))
                .with(f.lock("ℓ"));
            f.ck().int_equal_in(
                &g,
                (None, &f.exc_i("γ∘ℓ", &i(0))),
                (None, &f.exc_i("ℓ", &f.exc_i("γ", &i(0)))),
            )
        }),
        pos!("int-eq/exc-comp", |f| {
            let g = j_cx(f).with(f.lock("ℓ")).with(f.lock("ℓ"));
            f.ck().int_equal_in(
                &g,
                (None, &f.exc_i("ℓ∘ℓ", &neg(i(0)))),
                (None, &f.exc_i("ℓ", &f.exc_i("ℓ", &neg(i(0))))),
            )
        }),
        neg!("int-eq/exc-comp", "int/exc", |f| {
            let g = j_cx(f).with(f.lock("ℓ")).with(f.lock("ℓ"));
            f.ck().int_equal_in(
                &g,
                (None, &f.exc_i("ℓ", &i(0))),
                (None, &f.exc_i("ℓ∘ℓ", &i(0))),
            )
        }),
        pos!("int-eq/exc-id", |f| f.ck().int_equal_in(
            &j_cx(f),
            (None, &f.exc_i("1_t", &i(0))),
            (None, &i(0))
        )),
        neg!("int-eq/exc-id", |f| f.ck().int_equal_in(
            &j_cx(f),
            (None, &f.exc_i("1_t", &i(0))),
            (None, &neg(i(0)))
        )),
        pos!("int-eq/exc-key", |f| f.ck().int_equal_in(
            &j_cx(f).with(f.lock("ℓ")),
            (Some(&f.key("1_t", "ℓ")), &f.exc_i("1_t", &i(0))),
            (None, &f.exc_i("ℓ", &i(0)))
        )),
        neg!("int-eq/exc-key", "sb/key", |f| f.ck().int_equal_in(
            &j_cx(f).with(f.lock("1_t")),
            (Some(&f.key("ℓ", "1_t")), &f.exc_i("ℓ", &i(0))),
            (None, &f.exc_i("1_t", &i(0)))
        )),
        pos!("inte-eq/exc-sub", |f| f.ck().int_equal_in(
            &j_cx(f).with(f.lock("ℓ")),
            (
                Some(&Subst::lock(
                    f.m("ℓ"),
                    Subst::ext_int(Subst::Empty, neg(i(0)))
                )),
                &f.exc_i("ℓ", &i(0))
            ),
            (None, &f.exc_i("ℓ", &neg(i(0))))
        )),
        neg!("inte-eq/exc-sub", |f| f.ck().int_equal_in(
            &j_cx(f).with(f.lock("ℓ")),
            (
                Some(&Subst::lock(
                    f.m("ℓ"),
                    Subst::ext_int(Subst::Empty, neg(i(0)))
                )),
                &f.exc_i("ℓ", &i(0))
            ),
            (None, &f.exc_i("ℓ", &i(0)))
        )),
        pos!("int-eq/face-res-bin", |f| f.ck().int_equal_in(
            &j_ends(f),
            (None, &Interval::join(i(0), neg(i(0)))),
            (None, &Interval::One)
        )),
        neg!("int-eq/face-res-bin", |f| f.ck().int_equal_in(
            &j_cx(f),
            (None, &Interval::join(i(0), neg(i(0)))),
            (None, &Interval::One)
        )),
        pos!("int-eq/face-res-null", |f| f.ck().int_equal_in(
            &j_bot(f),
            (None, &Interval::Zero),
            (None, &Interval::One)
        )),
        neg!("int-eq/face-res-null", |f| f.ck().int_equal_in(
            &j_cx(f),
            (None, &Interval::Zero),
            (None, &Interval::One)
        )),
    ]
}

fn faces() -> Vec<Case> {
    vec![
        pos!("face/eq", |f| ok(f
            .ck()
            .check_face_in(&j_cx(f), (None, &eq0(i(0)))))),
        pos!("face/eq", |f| ok(f
            .ck()
            .check_face_in(&j_cx(f), (None, &eq1(neg(i(0))))))),
        neg!("face/eq", "int/var", |f| ok(f
            .ck()
            .check_face_in(&f.cx(), (None, &eq0(i(0)))))),
        pos!("face/join", |f| ok(f
            .ck()
            .check_face_in(&jk(f), (None, &or(eq0(i(0)), eq1(i(1))))))),
        neg!("face/join", "int/var", |f| ok(f
            .ck()
            .check_face_in(&j_cx(f), (None, &or(eq0(i(0)), eq1(i(1))))))),
        pos!("face/meet", |f| ok(f
            .ck()
            .check_face_in(&jk(f), (None, &and(eq0(i(0)), eq1(i(1))))))),
        neg!("face/meet", "int/var", |f| ok(f
            .ck()
            .check_face_in(&j_cx(f), (None, &and(eq0(i(3)), eq1(i(0))))))),
        pos!("face/bot", |f| ok(f
            .ck()
            .check_face_in(&f.cx(), (None, &Face::Bot)))),
        pos!("face/top", |f| ok(f
            .ck()
            .check_face_in(&f.cx(), (None, &Face::Top)))),
        pos!("face/exc", |f| ok(f.ck().check_face_in(
            &j_cx(f).with(f.lock("ℓ")),
            (None, &f.exc_f("ℓ", &eq0(i(0))))
        ))),
        neg!("face/exc", "int/exc", |f| ok(f.ck().check_face_in(
            &j_cx(f).with(f.lock("ℓ")),
            (None, &f.exc_f("ℓ∘ℓ", &eq0(i(0))))
        ))),
        pos!("face/sb", |f| ok(f.ck().check_face_in(
            &j_cx(f),
            (Some(&Subst::ext_int(Subst::Empty, i(0))), &eq0(i(0)))
        ))),
        neg!("face/sb", |f| ok(f.ck().check_face_in(
            &j_cx(f),
            (Some(&Subst::ext_int(Subst::Empty, i(0))), &eq0(i(1)))
        ))),
        pos!("face-eq/non-contr", |f| f.ck().face_equal_in(
            &j_cx(f),
            (None, &and(eq0(i(0)), eq0(neg(i(0))))),
            (None, &Face::Bot)
        )),
        neg!("face-eq/non-contr", |f| f.ck().face_equal_in(
            &jk(f),
            (None, &and(eq0(i(0)), eq0(neg(i(1))))),
            (None, &Face::Bot)
        )),
        pos!("face-eq/exc-comp", |f| {
            let g = Ctx::empty(f.s())
                .with(Entry::IntVar)
                .with(f.lock("γ"))
                .with(f.lock("ℓ"));
            let phi = or(eq0(i(0)), eq1(i(0)));
            f.ck().face_equal_in(
                &g,
                (None, &f.exc_f("γ∘ℓ", &phi)),
                (None, &f.exc_f("ℓ", &f.exc_f("γ", &phi))),
            )
        }),
        neg!("face-eq/exc-comp", "int/exc", |f| {
            let g = j_cx(f).with(f.lock("ℓ")).with(f.lock("ℓ"));
            f.ck().face_equal_in(
                &g,
                (None, &f.exc_f("ℓ", &eq0(i(0)))),
                (None, &f.exc_f("ℓ∘ℓ", &eq0(i(0)))),
            )
        }),
        pos!("face-eq/exc-id", |f| f.ck().face_equal_in(
            &j_cx(f),
            (None, &f.exc_f("1_t", &eq1(i(0)))),
            (None, &eq1(i(0)))
        )),
        neg!("face-eq/exc-id", |f| f.ck().face_equal_in(
            &j_cx(f),
            (None, &f.exc_f("1_t", &eq1(i(0)))),
            (None, &eq0(i(0)))
        )),
        pos!("face-eq/exc-key", |f| f.ck().face_equal_in(
            &j_cx(f).with(f.lock("ℓ")),
            (Some(&f.key("1_t", "ℓ")), &f.exc_f("1_t", &eq0(i(0)))),
            (None, &f.exc_f("ℓ", &eq0(i(0))))
        )),
        neg!("face-eq/exc-key", "sb/key", |f| f.ck().face_equal_in(
            &j_cx(f).with(f.lock("1_t")),
            (Some(&f.key("ℓ", "1_t")), &f.exc_f("ℓ", &eq0(i(0)))),
            (None, &eq0(i(0)))
        )),
        pos!("face-eq/exc-eq", |f| f.ck().face_equal_in(
            &j_cx(f).with(f.lock("ℓ")),
            (None, &f.exc_f("ℓ", &eq0(i(0)))),
            (None, &eq0(f.exc_i("ℓ", &i(0))))
        )),
        neg!("face-eq/exc-eq", |f| f.ck().face_equal_in(
            &j_cx(f).with(f.lock("ℓ")),
            (None, &f.exc_f("ℓ", &eq0(i(0)))),
            (None, &eq1(f.exc_i("ℓ", &i(0))))
        )),
        pos!("face-eq/exc-sub", |f| f.ck().face_equal_in(
            &j_cx(f).with(f.lock("ℓ")),
            (
                Some(&Subst::lock(
                    f.m("ℓ"),
                    Subst::ext_int(Subst::Empty, neg(i(0)))
                )),
                &f.exc_f("ℓ", &eq0(i(0)))
            ),
            (None, &f.exc_f("ℓ", &eq1(i(0))))
        )),
        neg!("face-eq/exc-sub", |f| f.ck().face_equal_in(
            &j_cx(f).with(f.lock("ℓ")),
            (
                Some(&Subst::lock(
                    f.m("ℓ"),
                    Subst::ext_int(Subst::Empty, neg(i(0)))
                )),
                &f.exc_f("ℓ", &eq0(i(0)))
            ),
            (None, &f.exc_f("ℓ", &eq0(i(0))))
        )),
        pos!("face-eq/res-eq-top", |f| {
            let phi = or(eq0(i(1)), eq1(i(0)));
            f.ck().face_equal_in(
                &jk(f).with(Entry::Restrict(phi.clone())),
                (Some(&Subst::WkFace(phi.clone())), &phi),
                (None, &Face::Top),
            )
        }),
        neg!("face-eq/res-eq-top", |f| {
            let phi = or(eq0(i(1)), eq1(i(0)));
            f.ck()
                .face_equal_in(&jk(f), (None, &phi), (None, &Face::Top))
        }),
        pos!("face-eq/eq-zero", |f| f.ck().face_equal_in(
            &f.cx(),
            (None, &eq0(Interval::Zero)),
            (None, &Face::Top)
        )),
        pos!("face-eq/face-res-bin", |f| {
            let g = jk(f).with(Entry::Restrict(or(eq0(i(1)), eq1(i(1)))));
            f.ck().face_equal_in(
                &g,
                (None, &eq0(i(0))),
                (None, &and(eq0(i(0)), or(eq0(i(1)), eq1(i(1))))),
            )
        }),
        neg!("face-eq/face-res-bin", |f| f.ck().face_equal_in(
            &jk(f),
            (None, &eq0(i(0))),
            (None, &and(eq0(i(0)), or(eq0(i(1)), eq1(i(1))))),
        )),
        pos!("face-eq/face-res-null", |f| f.ck().face_equal_in(
            &j_bot(f),
            (None, &Face::Top),
            (None, &Face::Bot)
        )),
        neg!("face-eq/face-res-null", |f| f.ck().face_equal_in(
            &j_cx(f),
            (None, &Face::Top),
            (None, &Face::Bot)
        )),
    ]
}

fn types() -> Vec<Case> {
    vec![
        pos!("type/pi", |f| ok(f
            .ck()
            .check_ty_in(&f.cx(), &bool_to_bool(f)))),
        pos!("type/pi", |f| ok(f.ck().check_ty_in(
            &f.cx(),
            &Ty::pi(f.m("ℓ"), Ty::Bool, modal(f, "ℓ", Ty::Bool))
        ))),
        neg!("type/pi", "type/pi", |f| ok(f
            .ck()
            .check_ty_in(&f.cx(), &Ty::pi(f.m("γ"), Ty::Bool, Ty::Bool)))),
        pos!("type/path", |f| ok(f.ck().check_ty_in(
            &f.cx().with(f.var("1_t", Ty::Bool)),
            &Ty::path(Ty::Bool, v(0), v(0))
        ))),
        neg!("type/path", |f| ok(f.ck().check_ty_in(
            &f.cx().with(f.var("1_t", Ty::Bool)),
            &Ty::path(Ty::Bool, v(0), Tm::plam(v(0)))
        ))),
        pos!("type/mod", |f| ok(f
            .ck()
            .check_ty_in(&f.cx(), &modal(f, "ℓ", Ty::Bool)))),
        pos!("type/mod", |f| ok(f
            .ck()
            .check_ty_in(&Ctx::empty(f.s()), &modal(f, "γ", Ty::Bool)))),
        neg!("type/mod", "type/mod", |f| ok(f
            .ck()
            .check_ty_in(&f.cx(), &modal(f, "γ", Ty::Bool)))),
        pos!("type/sys", |f| ok(f.ck().check_ty_in(
            &j_ends(f),
            &Ty::Sys(vec![(eq0(i(0)), Ty::Bool), (eq1(i(0)), Ty::Bool)])
        ))),
        neg!("type/sys", "type/sys", |f| ok(f.ck().check_ty_in(
            &j_cx(f),
            &Ty::Sys(vec![(eq0(i(0)), Ty::Bool), (eq1(i(0)), Ty::Bool)])
        ))),
        neg!("type/sys", "type/sys", |f| ok(f.ck().check_ty_in(
            &j_cx(f),
            &Ty::Sys(vec![(Face::Top, Ty::Bool), (eq1(i(0)), Ty::Univ(0))])
        ))),
        pos!("type/sb", |f| ok(f.ck().check_ty_in(
            &f.cx(),
            &Ty::Sub(
                Box::new(Ty::path(Ty::Bool, v(0), v(0))),
                Box::new(Subst::ext_tm(Subst::Id, Tm::True))
            )
        ))),
        neg!("type/sb", |f| ok(f.ck().check_ty_in(
            &f.cx(),
            &Ty::Sub(
                Box::new(Ty::path(Ty::Bool, v(0), v(0))),
                Box::new(Subst::Id)
            )
        ))),
        pos!("type-eq/sys-top", |f| f.ck().equal_ty_in(
            &j_cx(f),
            &Ty::Sys(vec![(Face::Top, Ty::Bool), (eq0(i(0)), Ty::Bool)]),
            &Ty::Bool
        )),
        neg!("type-eq/sys-top", "type/sys", |f| f.ck().equal_ty_in(
            &j_cx(f),
            &Ty::Sys(vec![(Face::Top, Ty::Bool), (eq0(i(0)), Ty::Univ(0))]),
            &Ty::Bool
        )),
        pos!("type-eq/face-res-bin", |f| {
            let g = f
                .cx()
                .with(f.var("1_t", Ty::Bool))
                .with(f.var("1_t", Ty::path(Ty::Bool, v(0), v(0))))
                .with(Entry::IntVar)
                .with(Entry::Restrict(or(eq0(i(0)), eq1(i(0)))));
            f.ck().equal_ty_in(
                &g,
                &Ty::path(Ty::Bool, Tm::papp(v(0), i(0)), v(1)),
                &Ty::path(Ty::Bool, v(1), v(1)),
            )
        }),
        neg!("type-eq/face-res-bin", |f| {
            let g = f
                .cx()
                .with(f.var("1_t", Ty::Bool))
                .with(f.var("1_t", Ty::path(Ty::Bool, v(0), v(0))))
                .with(Entry::IntVar);
            f.ck().equal_ty_in(
                &g,
                &Ty::path(Ty::Bool, Tm::papp(v(0), i(0)), v(1)),
                &Ty::path(Ty::Bool, v(1), v(1)),
            )
        }),
        pos!("type-eq/face-res-null", |f| f.ck().equal_ty_in(
            &j_bot(f),
            &Ty::Bool,
            &Ty::Univ(0)
        )),
        neg!("type-eq/face-res-null", |f| f.ck().equal_ty_in(
            &j_cx(f),
            &Ty::Bool,
            &Ty::Univ(0)
        )),
    ]
}

fn terms() -> Vec<Case> {
    vec![
        pos!("term/pi-lam", |f| ok(f.ck().check_in(
            &f.cx(),
            &Tm::lam(v(0)),
            &bool_to_bool(f)
        ))),
        pos!("term/pi-lam", |f| ok(f.ck().check_in(
            &f.cx(),
            &Tm::lam(Tm::mkbox(f.m("ℓ"), v(0))),
            &Ty::pi(f.m("ℓ"), Ty::Bool, modal(f, "ℓ", Ty::Bool))
        ))),
        neg!("term/pi-lam", "term/pi-lam", |f| ok(f.ck().check_in(
            &f.cx(),
            &Tm::lam(v(0)),
            &Ty::Bool
        ))),
        neg!("term/pi-lam", "term/var", |f| ok(f.ck().check_in(
            &f.cx(),
            &Tm::lam(v(0)),
            &Ty::pi(f.m("ℓ"), Ty::Bool, Ty::Bool)
        ))),
        pos!("term/pi-app", |f| ok(f.ck().check_in(
            &f.cx().with(f.var("1_t", bool_to_bool(f))),
            &Tm::app(v(0), Tm::True),
            &Ty::Bool
        ))),
        neg!("term/pi-app", "term/pi-app", |f| ok(f.ck().check_in(
            &f.cx(),
            &Tm::app(Tm::True, Tm::True),
            &Ty::Bool
        ))),
        neg!("term/pi-app", "term/pi-app", |f| ok(f.ck().check_in(
            &f.cx().with(f.var("1_t", bool_to_bool(f))),
            &Tm::app_mod(f.m("ℓ"), v(0), Tm::True),
            &Ty::Bool
        ))),
        pos!("term/path-abs", |f| ok(f.ck().check_in(
            &f.paths(),
            &Tm::plam(Tm::papp(v(0), i(0))),
            &Ty::path(Ty::Bool, v(2), v(1))
        ))),
        neg!("term/path-abs", "term/path-abs", |f| ok(f.ck().check_in(
            &f.paths(),
            &Tm::plam(Tm::papp(v(0), i(0))),
            &Ty::path(Ty::Bool, v(2), v(2))
        ))),
        pos!("term/path-app", |f| ok(f.ck().check_in(
            &f.paths().with(Entry::IntVar),
            &Tm::papp(v(0), neg(i(0))),
            &Ty::Bool
        ))),
        neg!("term/path-app", "term/path-app", |f| ok(f.ck().check_in(
            &f.paths(),
            &Tm::papp(v(1), Interval::Zero),
            &Ty::Bool
        ))),
        pos!("term/mod-mod", |f| ok(f.ck().check_in(
            &f.cx().with(f.var("1_t", Ty::Bool)),
            &Tm::mkbox(f.m("ℓ"), v(0)),
            &modal(f, "ℓ", Ty::Bool)
        ))),
        pos!("term/mod-mod", |f| ok(f.ck().check_in(
            &Ctx::empty(f.s()),
            &Tm::mkbox(f.m("γ"), Tm::True),
            &modal(f, "γ", Ty::Bool)
        ))),
        neg!("term/mod-mod", "term/mod-mod", |f| ok(f.ck().check_in(
            &f.cx().with(f.var("1_t", Ty::Bool)),
            &Tm::mkbox(f.m("ℓ"), v(0)),
            &modal(f, "δ∘γ", Ty::Bool)
        ))),
        pos!("term/mod-let", |f| ok(f.ck().check_in(
            &f.cx().with(f.var("1_t", modal(f, "ℓ", Ty::Bool))),
            &letmod(
                f,
                "1_t",
                "ℓ",
                modal(f, "ℓ", Ty::Bool),
                v(0),
                Tm::mkbox(f.m("ℓ"), v(0))
            ),
            &modal(f, "ℓ", Ty::Bool)
        ))),
        // The counit of δ∘γ: eliminating at δ a box of γ, then using the
        // variable through the 2-cell δ∘γ ≤ 1.
        pos!("term/mod-let", |f| ok(f.ck().check_in(
            &f.cx().with(f.var("δ", modal(f, "γ", Ty::Bool))),
            &letmod(f, "δ", "γ", Ty::Bool, v(0), v(0)),
            &Ty::Bool
        ))),
        neg!("term/mod-let", "term/mod-let", |f| ok(f.ck().check_in(
            &f.cx().with(f.var("1_t", Ty::Bool)),
            &letmod(f, "1_t", "ℓ", Ty::Bool, v(0), v(0)),
            &Ty::Bool
        ))),
        pos!("term/sys-bin", |f| ok(f.ck().check_in(
            &f.cx()
                .with(f.var("1_t", Ty::Bool))
                .with(Entry::IntVar)
                .with(Entry::Restrict(or(eq0(i(0)), eq1(i(0))))),
            &Tm::Sys(vec![(eq0(i(0)), v(0)), (eq1(i(0)), v(0))]),
            &Ty::Bool
        ))),
        neg!("term/sys-bin", "term/sys-bin", |f| ok(f.ck().check_in(
            &f.cx().with(f.var("1_t", Ty::Bool)).with(Entry::IntVar),
            &Tm::Sys(vec![(eq0(i(0)), v(0)), (eq1(i(0)), v(0))]),
            &Ty::Bool
        ))),
        neg!("term/sys-bin", "term/sys-bin", |f| ok(f.ck().check_in(
            &xy(f).with(Entry::IntVar),
            &Tm::Sys(vec![(Face::Top, v(0)), (eq0(i(0)), v(1))]),
            &Ty::Bool
        ))),
        pos!("term/sys-null", |f| ok(f.ck().check_in(
            &j_bot(f),
            &Tm::Sys(vec![]),
            &Ty::Bool
        ))),
        neg!("term/sys-null", "term/sys-null", |f| ok(f.ck().check_in(
            &j_cx(f),
            &Tm::Sys(vec![]),
            &Ty::Bool
        ))),
        pos!("term/comp", |f| ok(f.ck().check_in(
            &f.paths().with(Entry::IntVar),
            &Tm::comp(Ty::Bool, eq0(i(0)), Tm::papp(v(0), i(0)), v(2)),
            &Ty::Bool
        ))),
        neg!("term/comp", "term/comp", |f| ok(f.ck().check_in(
            &f.paths().with(Entry::IntVar),
            &Tm::comp(Ty::Bool, eq0(i(0)), Tm::papp(v(0), i(0)), v(1)),
            &Ty::Bool
        ))),
        pos!("term/var", |f| ok(f.ck().check_in(
            &f.cx().with(f.var("ℓ", Ty::Bool)).with(f.lock("ℓ")),
            &v(0),
            &Ty::Bool
        ))),
        pos!("term/var", |f| ok(f.ck().check_in(
            &f.cx().with(f.var("1_t", Ty::Bool)).with(f.lock("ℓ")),
            &v(0),
            &Ty::Bool
        ))),
        pos!("term/var", |f| ok(f.ck().check_in(
            &f.cx().with(f.var("ℓ", Ty::Bool)).with(f.lock("ℓ∘ℓ")),
            &v(0),
            &Ty::Bool
        ))),
        neg!("term/var", "term/var", |f| ok(f.ck().check_in(
            &f.cx().with(f.var("ℓ", Ty::Bool)),
            &v(0),
            &Ty::Bool
        ))),
        pos!("term/sb", |f| ok(f.ck().check_in(
            &f.cx(),
            &Tm::Sub(Box::new(v(0)), Box::new(Subst::ext_tm(Subst::Id, Tm::True))),
            &Ty::Bool
        ))),
        neg!("term/sb", |f| ok(f.ck().check_in(
            &f.cx(),
            &Tm::Sub(Box::new(v(0)), Box::new(Subst::Id)),
            &Ty::Bool
        ))),
    ]
}

/// `comp^i ⟨ℓ|Bool⟩ [φ ↦ box_ℓ (p @ i)] (box_ℓ x)` in [`comp_mod_cx`].
pub fn comp_mod_rhs(f: &Fixture, phi: FTmAlias) -> Tm {
    Tm::comp(
        modal(f, "ℓ", Ty::Bool),
        phi,
        Tm::mkbox(f.m("ℓ"), Tm::papp(v(0), f.ia(0, "ℓ"))),
        Tm::mkbox(f.m("ℓ"), v(2)),
    )
}

/// `box_ℓ (comp^i Bool [{φ}^ℓ ↦ p @ i] x)`.
pub fn comp_mod_lhs(f: &Fixture, phi: FTmAlias) -> Tm {
    Tm::mkbox(
        f.m("ℓ"),
        Tm::comp(Ty::Bool, f.exc_f("ℓ", &phi), Tm::papp(v(0), i(0)), v(2)),
    )
}

fn term_equations() -> Vec<Case> {
    vec![
        pos!("term-eq/pi-beta", |f| f.ck().equal_in(
            &f.cx(),
            &Ty::Bool,
            &Tm::app(
                Tm::Ann(Box::new(Tm::lam(v(0))), Box::new(bool_to_bool(f))),
                Tm::True
            ),
            &Tm::True
        )),
        pos!("term-eq/pi-beta", |f| {
            let fun = Ty::pi(f.m("ℓ"), Ty::Bool, modal(f, "ℓ", Ty::Bool));
            f.ck().equal_in(
                &f.cx(),
                &modal(f, "ℓ", Ty::Bool),
                &Tm::app_mod(
                    f.m("ℓ"),
                    Tm::Ann(Box::new(Tm::lam(Tm::mkbox(f.m("ℓ"), v(0)))), Box::new(fun)),
                    Tm::True,
                ),
                &Tm::mkbox(f.m("ℓ"), Tm::True),
            )
        }),
        neg!("term-eq/pi-beta", |f| f.ck().equal_in(
            &f.cx(),
            &Ty::Bool,
            &Tm::app(
                Tm::Ann(Box::new(Tm::lam(v(0))), Box::new(bool_to_bool(f))),
                Tm::True
            ),
            &Tm::False
        )),
        pos!("term-eq/pi-eta", |f| f.ck().equal_in(
            &f.cx().with(f.var("1_t", bool_to_bool(f))),
            &bool_to_bool(f),
            &v(0),
            &Tm::lam(Tm::app(v(1), v(0)))
        )),
        neg!("term-eq/pi-eta", |f| f.ck().equal_in(
            &f.cx().with(f.var("1_t", bool_to_bool(f))),
            &bool_to_bool(f),
            &v(0),
            &Tm::lam(v(0))
        )),
        pos!("term-eq/path-beta", |f| {
            let lam = Tm::Ann(
                Box::new(Tm::plam(Tm::papp(v(0), neg(i(0))))),
                Box::new(Ty::path(Ty::Bool, v(1), v(2))),
            );
            f.ck().equal_in(
                &f.paths().with(Entry::IntVar),
                &Ty::Bool,
                &Tm::papp(lam, i(0)),
                &Tm::papp(v(0), neg(i(0))),
            )
        }),
        neg!("term-eq/path-beta", |f| {
            let lam = Tm::Ann(
                Box::new(Tm::plam(Tm::papp(v(0), neg(i(0))))),
                Box::new(Ty::path(Ty::Bool, v(1), v(2))),
            );
            f.ck().equal_in(
                &f.paths().with(Entry::IntVar),
                &Ty::Bool,
                &Tm::papp(lam, i(0)),
                &Tm::papp(v(0), i(0)),
            )
        }),
        pos!("term-eq/path-eta", |f| f.ck().equal_in(
            &f.paths(),
            &Ty::path(Ty::Bool, v(2), v(1)),
            &v(0),
            &Tm::plam(Tm::papp(v(0), i(0)))
        )),
        neg!("term-eq/path-eta", |f| f.ck().equal_in(
            &f.cx()
                .with(f.var("1_t", Ty::Bool))
                .with(f.var("1_t", Ty::path(Ty::Bool, v(0), v(0)))),
            &Ty::path(Ty::Bool, v(1), v(1)),
            &v(0),
            &Tm::plam(v(1))
        )),
        pos!("term-eq/mod-beta", |f| f.ck().equal_in(
            &f.cx(),
            &modal(f, "ℓ", Ty::Bool),
            &letmod(
                f,
                "1_t",
                "ℓ",
                modal(f, "ℓ", Ty::Bool),
                boxed(f, "ℓ", Tm::True),
                Tm::mkbox(f.m("ℓ"), v(0))
            ),
            &Tm::mkbox(f.m("ℓ"), Tm::True)
        )),
        pos!("term-eq/mod-beta", |f| f.ck().equal_in(
            &f.cx(),
            &Ty::Bool,
            &letmod(f, "δ", "γ", Ty::Bool, boxed(f, "γ", Tm::False), v(0)),
            &Tm::False
        )),
        neg!("term-eq/mod-beta", |f| f.ck().equal_in(
            &f.cx(),
            &modal(f, "ℓ", Ty::Bool),
            &letmod(
                f,
                "1_t",
                "ℓ",
                modal(f, "ℓ", Ty::Bool),
                boxed(f, "ℓ", Tm::True),
                Tm::mkbox(f.m("ℓ"), v(0))
            ),
            &Tm::mkbox(f.m("ℓ"), Tm::False)
        )),
        pos!("term-eq/ext-type-beta", |f| f.ck().equal_in(
            &f.cx().with(f.var("1_t", Ty::Bool)),
            &Ty::Bool,
            &Tm::Sub(
                Box::new(v(0)),
                Box::new(Subst::ext_tm(Subst::Id, Tm::False))
            ),
            &Tm::False
        )),
        pos!("term-eq/ext-type-beta", |f| {
            let g = f.cx().with(f.var("1_t", Ty::Bool)).with(f.lock("ℓ"));
            f.ck().equal_in(
                &g,
                &Ty::Bool,
                &Tm::Sub(
                    Box::new(v(0)),
                    Box::new(Subst::lock(f.m("ℓ"), Subst::ext_tm(Subst::Id, v(0)))),
                ),
                &v(0),
            )
        }),
        neg!("term-eq/ext-type-beta", |f| f.ck().equal_in(
            &f.cx().with(f.var("1_t", Ty::Bool)),
            &Ty::Bool,
            &Tm::Sub(
                Box::new(v(0)),
                Box::new(Subst::ext_tm(Subst::Id, Tm::False))
            ),
            &Tm::True
        )),
        pos!("term-eq/sys-top", |f| f.ck().equal_in(
            &f.cx().with(f.var("1_t", Ty::Bool)).with(Entry::IntVar),
            &Ty::Bool,
            &Tm::Sys(vec![(Face::Top, v(0)), (eq0(i(0)), v(0))]),
            &v(0)
        )),
        neg!("term-eq/sys-top", "term/sys-bin", |f| f.ck().equal_in(
            &xy(f).with(Entry::IntVar),
            &Ty::Bool,
            &Tm::Sys(vec![(Face::Top, v(0)), (eq0(i(0)), v(1))]),
            &v(0)
        )),
        pos!("term-eq/comp-face", |f| f.ck().equal_in(
            &f.paths(),
            &Ty::Bool,
            &Tm::comp(Ty::Bool, Face::Top, Tm::papp(v(0), i(0)), v(2)),
            &v(1)
        )),
        neg!("term-eq/comp-face", |f| f.ck().equal_in(
            &f.paths(),
            &Ty::Bool,
            &Tm::comp(Ty::Bool, Face::Top, Tm::papp(v(0), i(0)), v(2)),
            &v(2)
        )),
        neg!("term-eq/comp-face", "term/comp", |f| f.ck().equal_in(
            &f.paths(),
            &Ty::Bool,
            &Tm::comp(Ty::Bool, Face::Top, Tm::papp(v(0), i(0)), v(1)),
            &v(1)
        )),
        pos!("term-eq/comp-mod", |f| f.ck().equal_in(
            &comp_mod_cx(f),
            &modal(f, "ℓ", Ty::Bool),
            &comp_mod_lhs(f, eq0(i(0))),
            &comp_mod_rhs(f, eq0(i(0)))
        )),
        neg!("term-eq/comp-mod", |f| f.ck().equal_in(
            &comp_mod_cx(f),
            &modal(f, "ℓ", Ty::Bool),
            &comp_mod_lhs(f, eq1(i(0))),
            &comp_mod_rhs(f, eq0(i(0)))
        )),
        pos!("term-eq/comp-pi", |f| {
            let g = f
                .cx()
                .with(f.var("1_t", bool_to_bool(f)))
                .with(Entry::IntVar);
            f.ck().equal_in(
                &g,
                &Ty::Bool,
                &Tm::app(Tm::comp(bool_to_bool(f), eq0(i(0)), v(0), v(0)), Tm::True),
                &Tm::comp(
                    Ty::Bool,
                    eq0(i(0)),
                    Tm::app(v(0), Tm::True),
                    Tm::app(v(0), Tm::True),
                ),
            )
        }),
        neg!("term-eq/comp-pi", |f| {
            let g = f
                .cx()
                .with(f.var("1_t", bool_to_bool(f)))
                .with(Entry::IntVar);
            f.ck().equal_in(
                &g,
                &Ty::Bool,
                &Tm::app(Tm::comp(bool_to_bool(f), eq0(i(0)), v(0), v(0)), Tm::True),
                &Tm::app(v(0), Tm::False),
            )
        }),
        pos!("term-eq/face-res-bin", |f| {
            let g = f
                .cx()
                .with(f.var("1_t", Ty::Bool))
                .with(f.var("1_t", Ty::path(Ty::Bool, v(0), v(0))))
                .with(Entry::IntVar)
                .with(Entry::Restrict(or(eq0(i(0)), eq1(i(0)))));
            f.ck().equal_in(&g, &Ty::Bool, &Tm::papp(v(0), i(0)), &v(1))
        }),
        neg!("term-eq/face-res-bin", |f| {
            let g = f
                .cx()
                .with(f.var("1_t", Ty::Bool))
                .with(f.var("1_t", Ty::path(Ty::Bool, v(0), v(0))))
                .with(Entry::IntVar);
            f.ck().equal_in(&g, &Ty::Bool, &Tm::papp(v(0), i(0)), &v(1))
        }),
        pos!("term-eq/face-res-null", |f| f.ck().equal_in(
            &j_bot(f),
            &Ty::Bool,
            &Tm::True,
            &Tm::False
        )),
        neg!("term-eq/face-res-null", |f| f.ck().equal_in(
            &j_cx(f),
            &Ty::Bool,
            &Tm::True,
            &Tm::False
        )),
    ]
}

fn derived() -> Vec<Case> {
    vec![
        pos!("sb/plus-int", |f| ok(f.ck().check_subst_in(
            &xy(f).with(Entry::IntVar),
            &Subst::ext_int(Subst::comp(Subst::WkTm, Subst::WkInt), i(0)),
            &f.cx().with(f.var("1_t", Ty::Bool)).with(Entry::IntVar)
        ))),
        neg!("sb/plus-int", |f| ok(f.ck().check_subst_in(
            &xy(f).with(Entry::IntVar),
            &Subst::ext_int(Subst::comp(Subst::WkInt, Subst::WkInt), i(0)),
            &f.cx().with(f.var("1_t", Ty::Bool)).with(Entry::IntVar)
        ))),
        pos!("sb/exc-int", |f| {
            let g = xy(f).with(Entry::IntVar).with(f.lock("ℓ"));
            let def = Subst::ext_int(Subst::lock(f.m("ℓ"), Subst::WkInt), f.ia(0, "ℓ"));
            let ck = f.ck();
            both(
                ok(ck.check_subst_in(&g, &def, &xy(f).with(f.lock("ℓ")).with(Entry::IntVar))),
                ck.subst_equal_in(&g, &def, &Subst::ExcInt(f.m("ℓ"))),
            )
        }),
        pos!("sb/exc-face", |f| {
            let phi = eq0(i(0));
            let g = j_cx(f).with(Entry::Restrict(phi.clone())).with(f.lock("ℓ"));
            let def = Subst::restrict(
                Subst::lock(f.m("ℓ"), Subst::WkFace(phi.clone())),
                f.exc_f("ℓ", &phi),
            );
            let target = j_cx(f)
                .with(f.lock("ℓ"))
                .with(Entry::Restrict(f.exc_f("ℓ", &phi)));
            let ck = f.ck();
            both(
                ok(ck.check_subst_in(&g, &def, &target)),
                ck.subst_equal_in(&g, &def, &Subst::ExcFace(f.m("ℓ"), phi)),
            )
        }),
        neg!("sb/exc-face", "sb/face-res", |f| {
            let phi = eq0(i(0));
            let g = j_cx(f).with(Entry::Restrict(phi.clone())).with(f.lock("ℓ"));
            let def = Subst::restrict(
                Subst::lock(f.m("ℓ"), Subst::WkFace(phi)),
                f.exc_f("ℓ", &eq1(i(0))),
            );
            let target = j_cx(f)
                .with(f.lock("ℓ"))
                .with(Entry::Restrict(f.exc_f("ℓ", &eq1(i(0)))));
            ok(f.ck().check_subst_in(&g, &def, &target))
        }),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_complete() {
        assert_eq!(missing(), vec![]);
    }

    #[test]
    fn all_cases_pass() {
        let f = Fixture::default();
        let fails = run_all(&f);
        for x in &fails {
            eprintln!("{} {:?}: {}", x.rule, x.polarity, x.detail);
        }
        assert!(fails.is_empty(), "{} golden failures", fails.len());
    }
}
