//! Random well-typed core terms over a fixed context at mode `t` of the
//! guarded theory:
//!
//! `x y : Bool, f : Bool → Bool, m : ⟨ℓ|Bool⟩, i j : 𝕀`
//!
//! Terms are built type-directed, so every generated term checks by
//! construction (the generators are exercised against the checker in the
//! tests below).

use cmtt_kernel::interval::{Face, Interval};
use cmtt_kernel::mode_theory::{Modality, ModeTheory};
use cmtt_kernel::syntax::{ivar, Ctx, Entry, Subst, Tm, Ty};
use rand::Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Bool,
    Fun,
    Modal,
}

#[derive(Clone, Debug)]
struct Var {
    kind: Kind,
    /// Annotated with ℓ rather than 1.
    later: bool,
    /// Number of ℓ-locks in scope when bound.
    depth: usize,
}

#[derive(Clone, Debug)]
struct Scope {
    vars: Vec<Var>,
    ivars: usize,
    locks: usize,
}

impl Scope {
    fn bind(&self, kind: Kind, later: bool) -> Scope {
        let mut s = self.clone();
        s.vars.push(Var {
            kind,
            later,
            depth: self.locks,
        });
        s
    }

    fn bind_int(&self) -> Scope {
        Scope {
            ivars: self.ivars + 1,
            ..self.clone()
        }
    }

    fn lock(&self) -> Scope {
        Scope {
            locks: self.locks + 1,
            ..self.clone()
        }
    }

    /// Indices of usable variables of the given kind.
    fn usable(&self, kind: Kind) -> Vec<usize> {
        let n = self.vars.len();
        self.vars
            .iter()
            .enumerate()
            .filter(|(_, v)| v.kind == kind && (!v.later || self.locks > v.depth))
            .map(|(p, _)| n - 1 - p)
            .collect()
    }
}

pub struct Gen<'t> {
    pub theory: &'t ModeTheory,
    one: Modality,
    ell: Modality,
}

impl<'t> Gen<'t> {
    pub fn new(theory: &'t ModeTheory) -> Self {
        Gen {
            theory,
            one: theory.parse_modality("1_t").expect("guarded theory"),
            ell: theory.parse_modality("ℓ").expect("guarded theory"),
        }
    }

    pub fn fun_ty(&self) -> Ty {
        Ty::pi(self.one.clone(), Ty::Bool, Ty::Bool)
    }

    pub fn modal_ty(&self) -> Ty {
        Ty::modal(self.ell.clone(), Ty::Bool)
    }

    /// The ambient context.
    pub fn context(&self) -> Ctx {
        self.term_part().with(Entry::IntVar).with(Entry::IntVar)
    }

    /// The ambient context without its interval variables.
    pub fn term_part(&self) -> Ctx {
        let t = self.theory.mode("t").expect("guarded theory");
        Ctx::empty(t)
            .with(Entry::TmVar(self.one.clone(), Ty::Bool))
            .with(Entry::TmVar(self.one.clone(), Ty::Bool))
            .with(Entry::TmVar(self.one.clone(), self.fun_ty()))
            .with(Entry::TmVar(self.one.clone(), self.modal_ty()))
    }

    fn scope(&self) -> Scope {
        let s = Scope {
            vars: vec![],
            ivars: 0,
            locks: 0,
        };
        s.bind(Kind::Bool, false)
            .bind(Kind::Bool, false)
            .bind(Kind::Fun, false)
            .bind(Kind::Modal, false)
            .bind_int()
            .bind_int()
    }

    pub fn bool_term(&self, rng: &mut impl Rng, depth: usize) -> Tm {
        self.gen_bool(rng, &self.scope(), depth)
    }

    pub fn modal_term(&self, rng: &mut impl Rng, depth: usize) -> Tm {
        self.gen_modal(rng, &self.scope(), depth)
    }

    pub fn interval(&self, rng: &mut impl Rng) -> Interval<cmtt_kernel::interval::IAtom> {
        gen_int(rng, 2, 2)
    }

    pub fn face(&self, rng: &mut impl Rng) -> Face<cmtt_kernel::interval::IAtom> {
        gen_face(rng, 2, 2)
    }

    fn gen_bool(&self, rng: &mut impl Rng, sc: &Scope, depth: usize) -> Tm {
        let vars = sc.usable(Kind::Bool);
        if depth == 0 || rng.gen_ratio(1, 6) {
            return match rng.gen_range(0..4) {
                0 => Tm::True,
                1 => Tm::False,
                _ if !vars.is_empty() => Tm::Var(vars[rng.gen_range(0..vars.len())]),
                _ => Tm::True,
            };
        }
        let d = depth - 1;
        match rng.gen_range(0..7) {
            0 => Tm::If {
                motive: None,
                scrut: Box::new(self.gen_bool(rng, sc, d)),
                then_: Box::new(self.gen_bool(rng, sc, d)),
                else_: Box::new(self.gen_bool(rng, sc, d)),
            },
            1 => Tm::app(self.gen_fun(rng, sc, d), self.gen_bool(rng, sc, d)),
            2 => {
                let body = self.gen_bool(rng, &sc.bind_int(), d);
                let line = self.path_of(body);
                Tm::papp(line, gen_int(rng, sc.ivars, 2))
            }
            3 => self.gen_comp(rng, sc, d, Ty::Bool, |g, r, s, d| g.gen_bool(r, s, d)),
            4 => {
                let a = self.gen_bool(rng, sc, d);
                Tm::Sys(vec![
                    (gen_face(rng, sc.ivars, 1), a.clone()),
                    (Face::Top, a),
                ])
            }
            5 => {
                let scrut = self.modal_scrut(rng, sc, d);
                let branch = self.gen_bool(rng, &sc.bind(Kind::Bool, true), d);
                self.letmod(Ty::Bool, scrut, branch)
            }
            _ => {
                let a = self.gen_bool(rng, sc, d);
                let body = self.gen_bool(rng, &sc.bind(Kind::Bool, false), d);
                Tm::app(Tm::Ann(Box::new(Tm::lam(body)), Box::new(self.fun_ty())), a)
            }
        }
    }

    fn gen_fun(&self, rng: &mut impl Rng, sc: &Scope, depth: usize) -> Tm {
        let vars = sc.usable(Kind::Fun);
        if !vars.is_empty() && (depth == 0 || rng.gen()) {
            return Tm::Var(vars[rng.gen_range(0..vars.len())]);
        }
        let body = self.gen_bool(rng, &sc.bind(Kind::Bool, false), depth);
        Tm::Ann(Box::new(Tm::lam(body)), Box::new(self.fun_ty()))
    }

    fn gen_modal(&self, rng: &mut impl Rng, sc: &Scope, depth: usize) -> Tm {
        let vars = sc.usable(Kind::Modal);
        if depth == 0 || rng.gen_ratio(1, 5) {
            if !vars.is_empty() && rng.gen() {
                return Tm::Var(vars[rng.gen_range(0..vars.len())]);
            }
            return Tm::mkbox(self.ell.clone(), self.gen_bool(rng, &sc.lock(), 0));
        }
        let d = depth - 1;
        match rng.gen_range(0..3) {
            0 => Tm::mkbox(self.ell.clone(), self.gen_bool(rng, &sc.lock(), d)),
            1 => {
                let scrut = self.modal_scrut(rng, sc, d);
                let inner = sc.bind(Kind::Bool, true);
                let branch = Tm::mkbox(self.ell.clone(), self.gen_bool(rng, &inner.lock(), d));
                self.letmod(self.modal_ty(), scrut, branch)
            }
            _ => self.gen_comp(rng, sc, d, self.modal_ty(), |g, r, s, d| {
                g.gen_modal(r, s, d)
            }),
        }
    }

    /// A modal term that infers: a variable or an annotated term.
    fn modal_scrut(&self, rng: &mut impl Rng, sc: &Scope, depth: usize) -> Tm {
        let vars = sc.usable(Kind::Modal);
        if !vars.is_empty() && rng.gen() {
            return Tm::Var(vars[rng.gen_range(0..vars.len())]);
        }
        Tm::Ann(
            Box::new(self.gen_modal(rng, sc, depth)),
            Box::new(self.modal_ty()),
        )
    }

    fn letmod(&self, motive: Ty, scrut: Tm, branch: Tm) -> Tm {
        Tm::LetMod {
            mu: Some(self.one.clone()),
            nu: Some(self.ell.clone()),
            motive: Some(Box::new(motive)),
            scrut: Box::new(scrut),
            branch: Box::new(branch),
        }
    }

    /// `⟨k⟩ body` annotated with the path type between its endpoints.
    fn path_of(&self, body: Tm) -> Tm {
        let ann = Tm::Ann(Box::new(body.clone()), Box::new(Ty::Bool));
        let at = |r| {
            Tm::Sub(
                Box::new(ann.clone()),
                Box::new(Subst::ext_int(Subst::Id, r)),
            )
        };
        let ty = Ty::path(Ty::Bool, at(Interval::Zero), at(Interval::One));
        Tm::Ann(Box::new(Tm::plam(body.clone())), Box::new(ty))
    }

    /// A composition whose cap is the tube at 0, so the boundary condition
    /// holds by construction.
    fn gen_comp<R: Rng>(
        &self,
        rng: &mut R,
        sc: &Scope,
        depth: usize,
        line: Ty,
        tube: impl Fn(&Self, &mut R, &Scope, usize) -> Tm,
    ) -> Tm {
        let u = tube(self, rng, &sc.bind_int(), depth);
        let ann = Tm::Ann(Box::new(u.clone()), Box::new(line.clone()));
        let cap = Tm::Sub(
            Box::new(ann),
            Box::new(Subst::ext_int(Subst::Id, Interval::Zero)),
        );
        Tm::comp(line, gen_face(rng, sc.ivars, 2), u, cap)
    }

    /// A random substitution from the ambient context to itself. Each
    /// extension is annotated, so the substitution also checks without a
    /// target context.
    pub fn subst(&self, rng: &mut impl Rng, depth: usize) -> Subst {
        let sc = self.scope();
        let ann = |a: Tm, t: Ty| Tm::Ann(Box::new(a), Box::new(t));
        let mut s = Subst::Empty;
        s = Subst::ext_tm(s, ann(self.gen_bool(rng, &sc, depth), Ty::Bool));
        s = Subst::ext_tm(s, ann(self.gen_bool(rng, &sc, depth), Ty::Bool));
        s = Subst::ext_tm(s, ann(self.gen_fun(rng, &sc, depth), self.fun_ty()));
        s = Subst::ext_tm(s, ann(self.gen_modal(rng, &sc, depth), self.modal_ty()));
        s = Subst::ext_int(s, gen_int(rng, 2, 2));
        Subst::ext_int(s, gen_int(rng, 2, 2))
    }
}

fn gen_int(
    rng: &mut impl Rng,
    ivars: usize,
    depth: usize,
) -> Interval<cmtt_kernel::interval::IAtom> {
    if depth == 0 || ivars == 0 || rng.gen_ratio(1, 3) {
        return match rng.gen_range(0..6) {
            0 => Interval::Zero,
            1 => Interval::One,
            _ if ivars > 0 => ivar(rng.gen_range(0..ivars)),
            _ => Interval::Zero,
        };
    }
    match rng.gen_range(0..3) {
        0 => Interval::neg(gen_int(rng, ivars, depth - 1)),
        1 => Interval::meet(
            gen_int(rng, ivars, depth - 1),
            gen_int(rng, ivars, depth - 1),
        ),
        _ => Interval::join(
            gen_int(rng, ivars, depth - 1),
            gen_int(rng, ivars, depth - 1),
        ),
    }
}

fn gen_face(rng: &mut impl Rng, ivars: usize, depth: usize) -> Face<cmtt_kernel::interval::IAtom> {
    if depth == 0 || rng.gen_ratio(1, 3) {
        return match rng.gen_range(0..8) {
            0 => Face::Top,
            1 => Face::Bot,
            k if k % 2 == 0 => Face::Eq0(gen_int(rng, ivars, 1)),
            _ => Face::Eq1(gen_int(rng, ivars, 1)),
        };
    }
    let a = gen_face(rng, ivars, depth - 1);
    let b = gen_face(rng, ivars, depth - 1);
    if rng.gen() {
        Face::meet(a, b)
    } else {
        Face::join(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cmtt_kernel::typecheck::{Checker, Options};
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn generated_terms_check() {
        let th = ModeTheory::guarded();
        let g = Gen::new(&th);
        let ck = Checker::new(&th, Options::default());
        let cx = g.context();
        let mut rng = StdRng::seed_from_u64(1);
        for _ in 0..200 {
            let a = g.bool_term(&mut rng, 4);
            ck.check_in(&cx, &a, &Ty::Bool)
                .unwrap_or_else(|e| panic!("{e}\n{a:?}"));
            let m = g.modal_term(&mut rng, 4);
            ck.check_in(&cx, &m, &g.modal_ty())
                .unwrap_or_else(|e| panic!("{e}\n{m:?}"));
            let s = g.subst(&mut rng, 2);
            ck.check_subst_in(&cx, &s, &cx)
                .unwrap_or_else(|e| panic!("{e}\n{s:?}"));
        }
    }
}
