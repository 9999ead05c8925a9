//! Typed conversion checking.
//!
//! Functions, paths and pairs are compared by η. Systems and composition
//! tubes are compared clause by clause after substituting the clause's
//! endpoints. Axioms with an unfolding are unfolded lazily, only when a
//! comparison would otherwise fail, and only while fuel lasts.

use std::cell::Cell;
use std::rc::Rc;

use crate::domain::*;
use crate::eval::{act, app, apply, dapply, fst, papp, rebuild, snd};
use crate::interval::{int_equal, Interval};
use crate::mode_theory::{Modality, ModeTheory};

pub const DEFAULT_FUEL: u32 = 64;

pub struct Conv<'a> {
    pub theory: &'a ModeTheory,
    pub globals: Globals,
    /// Disables the modal η-contraction `letmod_1(m, y. box y) ≡ m`.
    pub strict_mod_eq: bool,
    fuel: Cell<u32>,
}

impl<'a> Conv<'a> {
    pub fn new(theory: &'a ModeTheory, globals: Globals, strict_mod_eq: bool) -> Self {
        Conv {
            theory,
            globals,
            strict_mod_eq,
            fuel: Cell::new(DEFAULT_FUEL),
        }
    }

    pub fn with_fuel(self, fuel: u32) -> Self {
        self.fuel.set(fuel);
        self
    }

    fn mod_eq(&self, mu: &Modality, nu: &Modality) -> bool {
        self.theory.mod_equal(mu, nu).unwrap_or(false)
    }

    /// Compares under every clause of `face`; vacuous under `⊥`.
    pub fn under(&self, face: &FVal, f: impl Fn(&DimSubst) -> bool) -> bool {
        face.clauses().iter().all(|c| f(&subst_of_clause(c)))
    }

    /// Replaces an unfoldable head by its unfolding.
    fn unfold(&self, v: &V) -> Option<V> {
        let Val::Neu(n, _) = &**v else { return None };
        let Head::Const(c) = &n.head else { return None };
        let f = self.globals.get(c)?.unfold.clone()?;
        let left = self.fuel.get();
        if left == 0 {
            return None;
        }
        self.fuel.set(left - 1);
        Some(rebuild(f, &n.spine))
    }

    fn retry(&self, a: &V, b: &V, k: impl Fn(&V, &V) -> bool) -> bool {
        if let Some(a2) = self.unfold(a) {
            return k(&a2, b);
        }
        if let Some(b2) = self.unfold(b) {
            return k(a, &b2);
        }
        false
    }

    /// `letmod_1^ν(m, y. box_ν y)` contracts to `m`.
    fn eta_mod(&self, v: &V) -> V {
        if self.strict_mod_eq {
            return v.clone();
        }
        let Val::Neu(n, _) = &**v else {
            return v.clone();
        };
        let Some(Elim::LetMod {
            mu,
            nu,
            inner,
            branch,
            ..
        }) = n.spine.last()
        else {
            return v.clone();
        };
        if !mu.is_identity() {
            return v.clone();
        }
        let (y, yv) = fresh_var(inner.clone());
        let body = apply(branch, yv);
        let is_box_y = match &*body {
            Val::MkBox(nu2, p) => {
                self.mod_eq(nu, nu2)
                    && matches!(&**p, Val::Neu(m, _) if matches!(m.head, Head::Var(z) if z == y) && m.spine.is_empty())
            }
            _ => false,
        };
        if !is_box_y {
            return v.clone();
        }
        let mut m = n.clone();
        m.spine.pop();
        let ty = Rc::new(Val::Modal(nu.clone(), inner.clone()));
        self.eta_mod(&Rc::new(Val::Neu(m, ty)))
    }

    pub fn conv(&self, ty: &V, a: &V, b: &V) -> bool {
        match (&**a, &**b) {
            (Val::Sys(xs), _) if !xs.is_empty() || matches!(&**b, Val::Sys(_)) => {
                return self.conv_sys(ty, a, b)
            }
            (_, Val::Sys(ys)) if !ys.is_empty() => return self.conv_sys(ty, a, b),
            _ => {}
        }
        match &**ty {
            Val::Pi(_, dom, cod) => {
                let (_, x) = fresh_var(dom.clone());
                self.conv(&apply(cod, x.clone()), &app(a, x.clone()), &app(b, x))
            }
            Val::Path(l, _, _) => {
                let i = Interval::Var(Dim::fresh());
                self.conv(&dapply(l, &i), &papp(a, &i), &papp(b, &i))
            }
            Val::Sigma(x, y) => {
                let a1 = fst(a);
                self.conv(x, &a1, &fst(b)) && self.conv(&apply(y, a1), &snd(a), &snd(b))
            }
            Val::Univ(_) => self.conv_ty(a, b),
            Val::Sys(tbs) if !tbs.is_empty() => tbs
                .iter()
                .all(|(psi, t)| self.under(psi, |s| self.conv(&act(s, t), &act(s, a), &act(s, b)))),
            Val::Modal(_, inner) => {
                let (a, b) = (self.eta_mod(a), self.eta_mod(b));
                match (&*a, &*b) {
                    (Val::MkBox(_, p), Val::MkBox(_, q)) => self.conv(inner, p, q),
                    _ => self.conv_whnf(&a, &b, &|x, y| self.conv(ty, x, y)),
                }
            }
            _ => self.conv_whnf(a, b, &|x, y| self.conv(ty, x, y)),
        }
    }

    /// Two systems agree when their faces cover the same region and they
    /// agree under every clause of either.
    fn conv_sys(&self, ty: &V, a: &V, b: &V) -> bool {
        let cover = |v: &V| match &**v {
            Val::Sys(bs) => bs
                .iter()
                .fold(crate::interval::Dnf::bot(), |acc, (p, _)| acc.join(p)),
            _ => crate::interval::Dnf::top(),
        };
        let (fa, fb) = (cover(a), cover(b));
        if fa != fb {
            return false;
        }
        self.under(&fa, |s| self.conv(&act(s, ty), &act(s, a), &act(s, b)))
    }

    fn conv_whnf(&self, a: &V, b: &V, again: &dyn Fn(&V, &V) -> bool) -> bool {
        let ok = match (&**a, &**b) {
            (Val::True, Val::True) | (Val::False, Val::False) => true,
            (Val::Neu(m, _), Val::Neu(n, _)) => self.conv_neu(m, n),
            (Val::Pair(..), _) | (Val::Lam(_), _) | (Val::PLam(_), _) => false,
            _ => false,
        };
        ok || self.retry(a, b, again)
    }

    pub fn conv_neu(&self, m: &Neu, n: &Neu) -> bool {
        if m.spine.len() != n.spine.len() {
            return false;
        }
        let heads = match (&m.head, &n.head) {
            (Head::Var(x), Head::Var(y)) => x == y,
            (Head::Const(c), Head::Const(d)) => c == d,
            (
                Head::Comp {
                    line: l1,
                    phi: p1,
                    tube: t1,
                    cap: c1,
                },
                Head::Comp {
                    line: l2,
                    phi: p2,
                    tube: t2,
                    cap: c2,
                },
            ) => {
                let i = Interval::Var(Dim::fresh());
                let line_i = dapply(l1, &i);
                p1 == p2
                    && self.conv_ty(&line_i, &dapply(l2, &i))
                    && self.conv(&dapply(l1, &Interval::Zero), c1, c2)
                    && self.under(p1, |s| {
                        self.conv(
                            &act(s, &line_i),
                            &act(s, &dapply(t1, &i)),
                            &act(s, &dapply(t2, &i)),
                        )
                    })
            }
            _ => false,
        };
        heads
            && m.spine
                .iter()
                .zip(&n.spine)
                .all(|(e, f)| self.conv_elim(e, f))
    }

    fn conv_elim(&self, e: &Elim, f: &Elim) -> bool {
        match (e, f) {
            (
                Elim::App {
                    mu: m1,
                    arg: a1,
                    dom,
                },
                Elim::App {
                    mu: m2, arg: a2, ..
                },
            ) => self.mod_eq(m1, m2) && self.conv(dom, a1, a2),
            (Elim::PApp(r), Elim::PApp(s)) => int_equal(r, s),
            (
                Elim::LetMod {
                    mu: mu1,
                    nu: nu1,
                    inner,
                    motive: c1,
                    branch: b1,
                },
                Elim::LetMod {
                    mu: mu2,
                    nu: nu2,
                    motive: c2,
                    branch: b2,
                    ..
                },
            ) => {
                if !self.mod_eq(mu1, mu2) || !self.mod_eq(nu1, nu2) {
                    return false;
                }
                let (_, x) = fresh_var(Rc::new(Val::Modal(nu1.clone(), inner.clone())));
                let (_, y) = fresh_var(inner.clone());
                let at = apply(c1, Rc::new(Val::MkBox(nu1.clone(), y.clone())));
                self.conv_ty(&apply(c1, x.clone()), &apply(c2, x))
                    && self.conv(&at, &apply(b1, y.clone()), &apply(b2, y))
            }
            (
                Elim::If {
                    motive: c1,
                    then_: t1,
                    else_: e1,
                },
                Elim::If {
                    motive: c2,
                    then_: t2,
                    else_: e2,
                },
            ) => {
                let (_, x) = fresh_var(Rc::new(Val::Bool));
                self.conv_ty(&apply(c1, x.clone()), &apply(c2, x))
                    && self.conv(&apply(c1, Rc::new(Val::True)), t1, t2)
                    && self.conv(&apply(c1, Rc::new(Val::False)), e1, e2)
            }
            (Elim::Fst, Elim::Fst) | (Elim::Snd, Elim::Snd) => true,
            _ => false,
        }
    }

    pub fn conv_ty(&self, a: &V, b: &V) -> bool {
        let ok = match (&**a, &**b) {
            (Val::Pi(m1, a1, b1), Val::Pi(m2, a2, b2)) => {
                let (_, x) = fresh_var(a1.clone());
                self.mod_eq(m1, m2)
                    && self.conv_ty(a1, a2)
                    && self.conv_ty(&apply(b1, x.clone()), &apply(b2, x))
            }
            (Val::Sigma(a1, b1), Val::Sigma(a2, b2)) => {
                let (_, x) = fresh_var(a1.clone());
                self.conv_ty(a1, a2) && self.conv_ty(&apply(b1, x.clone()), &apply(b2, x))
            }
            (Val::Path(l1, x1, y1), Val::Path(l2, x2, y2)) => {
                let i = Interval::Var(Dim::fresh());
                self.conv_ty(&dapply(l1, &i), &dapply(l2, &i))
                    && self.conv(&dapply(l1, &Interval::Zero), x1, x2)
                    && self.conv(&dapply(l1, &Interval::One), y1, y2)
            }
            (Val::Modal(m1, a1), Val::Modal(m2, a2)) => self.mod_eq(m1, m2) && self.conv_ty(a1, a2),
            (Val::Bool, Val::Bool) => true,
            (Val::Univ(i), Val::Univ(j)) => i == j,
            (Val::Sys(_), _) | (_, Val::Sys(_)) => {
                let cover = |v: &V| match &**v {
                    Val::Sys(bs) => bs
                        .iter()
                        .fold(crate::interval::Dnf::bot(), |acc, (p, _)| acc.join(p)),
                    _ => crate::interval::Dnf::top(),
                };
                let f = cover(a);
                f == cover(b) && self.under(&f, |s| self.conv_ty(&act(s, a), &act(s, b)))
            }
            (Val::Neu(m, _), Val::Neu(n, _)) => self.conv_neu(m, n),
            _ => false,
        };
        ok || self.retry(a, b, |x, y| self.conv_ty(x, y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::eval;
    use crate::syntax::Tm;

    fn conv<'a>(th: &'a ModeTheory) -> Conv<'a> {
        Conv::new(th, Globals::default(), false)
    }

    #[test]
    fn eta_for_functions() {
        let th = ModeTheory::trivial();
        let id = th.id(th.mode("m").unwrap());
        let ty = Rc::new(Val::Pi(
            id.clone(),
            Rc::new(Val::Bool),
            Clo::Const(Rc::new(Val::Bool)),
        ));
        let (_, f) = fresh_var(ty.clone());
        let env = Env::default().push_tm(f.clone());
        let expanded = eval(&env, &Tm::lam(Tm::app_mod(id, Tm::Var(1), Tm::Var(0))));
        assert!(conv(&th).conv(&ty, &f, &expanded));
    }

    #[test]
    fn distinct_constructors() {
        let th = ModeTheory::trivial();
        let b = Rc::new(Val::Bool);
        assert!(!conv(&th).conv(&b, &Rc::new(Val::True), &Rc::new(Val::False)));
    }

    #[test]
    fn path_eta_and_endpoints() {
        let th = ModeTheory::trivial();
        let ty = Rc::new(Val::Path(
            DClo::Const(Rc::new(Val::Bool)),
            Rc::new(Val::True),
            Rc::new(Val::True),
        ));
        let (_, p) = fresh_var(ty.clone());
        let env = Env::default().push_tm(p.clone());
        let e = eval(
            &env,
            &Tm::plam(Tm::papp(Tm::Var(0), crate::syntax::ivar(0))),
        );
        assert!(conv(&th).conv(&ty, &p, &e));
    }

    #[test]
    fn modal_eta_respects_strict_flag() {
        let th = ModeTheory::trivial();
        let id = th.id(th.mode("m").unwrap());
        let ty = Rc::new(Val::Modal(id.clone(), Rc::new(Val::Bool)));
        let (_, m) = fresh_var(ty.clone());
        let env = Env::default().push_tm(m.clone());
        let e = eval(
            &env,
            &Tm::LetMod {
                mu: Some(id.clone()),
                nu: Some(id.clone()),
                motive: Some(Box::new(crate::syntax::Ty::modal(
                    id.clone(),
                    crate::syntax::Ty::Bool,
                ))),
                scrut: Box::new(Tm::Var(0)),
                branch: Box::new(Tm::mkbox(id, Tm::Var(0))),
            },
        );
        assert!(conv(&th).conv(&ty, &m, &e));
        assert!(!Conv::new(&th, Globals::default(), true).conv(&ty, &m, &e));
    }
}
