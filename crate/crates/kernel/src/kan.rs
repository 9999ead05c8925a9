//! Kan composition, computed by cases on the type line.

use std::rc::Rc;

use crate::domain::*;
use crate::eval::{app, apply, dapply, fst, junk, mk_sys, papp, snd};
use crate::interval::{Dnf, Face, Interval};

fn var(d: Dim) -> IVal {
    Interval::Var(d)
}

/// `r = 0` as a canonical face.
pub fn eq0(r: &IVal) -> FVal {
    Face::Eq0(r.clone()).canon()
}

pub fn eq1(r: &IVal) -> FVal {
    Face::Eq1(r.clone()).canon()
}

fn abs(dim: Dim, val: V) -> DClo {
    DClo::Abs { dim, val }
}

/// `comp^i A [φ ↦ u] a₀`. The tube is only meaningful under `φ`.
pub fn comp(line: &DClo, phi: &FVal, tube: &DClo, cap: &V) -> V {
    if phi.is_top() {
        return dapply(tube, &Interval::One);
    }
    let i = Dim::fresh();
    let a_i = dapply(line, &var(i));
    match &*a_i {
        Val::Pi(..) => Rc::new(Val::Lam(Clo::CompPi {
            line: line.clone(),
            phi: phi.clone(),
            tube: tube.clone(),
            cap: cap.clone(),
        })),
        Val::Path(l, x, y) => {
            let j = Dim::fresh();
            let jv = var(j);
            let u_i = dapply(tube, &var(i));
            let sys = mk_sys(vec![
                (phi.clone(), papp(&u_i, &jv)),
                (eq0(&jv), x.clone()),
                (eq1(&jv), y.clone()),
            ]);
            let body = comp(
                &abs(i, dapply(l, &jv)),
                &phi.join(&eq0(&jv)).join(&eq1(&jv)),
                &abs(i, sys),
                &papp(cap, &jv),
            );
            Rc::new(Val::PLam(abs(j, body)))
        }
        Val::Sigma(a, b) => {
            let a_line = abs(i, a.clone());
            let u_i = dapply(tube, &var(i));
            let t1 = abs(i, fst(&u_i));
            let c0 = fst(cap);
            let c1 = comp(&a_line, phi, &t1, &c0);
            let filled = fill(&a_line, phi, &t1, &c0, &var(i));
            let c2 = comp(
                &abs(i, apply(b, filled)),
                phi,
                &abs(i, snd(&u_i)),
                &snd(cap),
            );
            Rc::new(Val::Pair(c1, c2))
        }
        Val::Modal(mu, a) => {
            let u_i = dapply(tube, &var(i));
            let payload = if phi.is_bot() {
                Some(junk())
            } else {
                unbox(&u_i)
            };
            match (&**cap, payload) {
                (Val::MkBox(_, c), Some(p)) => Rc::new(Val::MkBox(
                    mu.clone(),
                    comp(&abs(i, a.clone()), phi, &abs(i, p), c),
                )),
                _ => stuck(line, phi, tube, cap),
            }
        }
        Val::Bool => {
            let b = match &**cap {
                Val::True => Some(true),
                Val::False => Some(false),
                _ => None,
            };
            match b {
                Some(b) if phi.is_bot() || is_bool(&dapply(tube, &var(i)), b) => cap.clone(),
                _ => stuck(line, phi, tube, cap),
            }
        }
        Val::Sys(bs) if bs.iter().all(|(psi, _)| !psi.mentions(&i)) => mk_sys(
            bs.iter()
                .map(|(psi, b)| (psi.clone(), comp(&abs(i, b.clone()), phi, tube, cap)))
                .collect(),
        ),
        _ => stuck(line, phi, tube, cap),
    }
}

fn stuck(line: &DClo, phi: &FVal, tube: &DClo, cap: &V) -> V {
    let ty = dapply(line, &Interval::One);
    Rc::new(Val::Neu(
        Neu::new(
            Head::Comp {
                line: line.clone(),
                phi: phi.clone(),
                tube: tube.clone(),
                cap: cap.clone(),
            },
            ty.clone(),
        ),
        ty,
    ))
}

fn unbox(v: &V) -> Option<V> {
    match &**v {
        Val::MkBox(_, p) => Some(p.clone()),
        Val::Sys(bs) => Some(mk_sys(
            bs.iter()
                .map(|(p, b)| Some((p.clone(), unbox(b)?)))
                .collect::<Option<Vec<_>>>()?,
        )),
        _ => None,
    }
}

fn is_bool(v: &V, b: bool) -> bool {
    match &**v {
        Val::True => b,
        Val::False => !b,
        Val::Sys(bs) => bs.iter().all(|(_, x)| is_bool(x, b)),
        _ => false,
    }
}

/// Filler: at `r = 0` it is the cap, at `r = 1` the composite, and under
/// `φ` it agrees with the tube at `r`.
pub fn fill(line: &DClo, phi: &FVal, tube: &DClo, cap: &V, r: &IVal) -> V {
    let j = Dim::fresh();
    let rj = Interval::meet(r.clone(), var(j)).simplify();
    let sys = mk_sys(vec![
        (phi.clone(), dapply(tube, &rj)),
        (eq0(r), cap.clone()),
    ]);
    comp(
        &abs(j, dapply(line, &rj)),
        &phi.join(&eq0(r)),
        &abs(j, sys),
        cap,
    )
}

/// The composite in a Π line applied to an argument of the final domain.
pub fn comp_pi_apply(line: &DClo, phi: &FVal, tube: &DClo, cap: &V, a1: V) -> V {
    let k = Dim::fresh();
    let dom_at = |r: &IVal| match &*dapply(line, r) {
        Val::Pi(_, a, _) => a.clone(),
        _ => junk(),
    };
    let rev = abs(k, dom_at(&Interval::neg(var(k)).simplify()));
    let none = DClo::Const(junk());
    let bot = Dnf::bot();
    let v = |r: &IVal| fill(&rev, &bot, &none, &a1, &Interval::neg(r.clone()).simplify());
    let i = Dim::fresh();
    let v_i = v(&var(i));
    let cod_i = match &*dapply(line, &var(i)) {
        Val::Pi(_, _, b) => apply(b, v_i.clone()),
        _ => junk(),
    };
    let u_i = dapply(tube, &var(i));
    comp(
        &abs(i, cod_i),
        phi,
        &abs(i, app(&u_i, v_i)),
        &app(cap, v(&Interval::Zero)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bool_line() -> DClo {
        DClo::Const(Rc::new(Val::Bool))
    }

    #[test]
    fn comp_face_top_is_tube_end() {
        let d = Dim::fresh();
        let tube = abs(
            d,
            mk_sys(vec![
                (eq1(&var(d)), Rc::new(Val::False)),
                (eq0(&var(d)), Rc::new(Val::True)),
            ]),
        );
        let v = comp(&bool_line(), &Dnf::top(), &tube, &Rc::new(Val::True));
        assert!(matches!(*v, Val::False));
    }

    #[test]
    fn comp_bool_constant() {
        let v = comp(
            &bool_line(),
            &Dnf::bot(),
            &DClo::Const(junk()),
            &Rc::new(Val::True),
        );
        assert!(matches!(*v, Val::True));
    }

    #[test]
    fn comp_neutral_cap_sticks_then_computes() {
        let (_, x) = fresh_var(Rc::new(Val::Bool));
        let d = Dim::fresh();
        let phi = eq1(&var(d));
        let v = comp(&bool_line(), &phi, &DClo::Const(x.clone()), &x);
        assert!(matches!(*v, Val::Neu(..)));
        let at1 = crate::eval::act(&DimSubst::from([(d, Interval::One)]), &v);
        assert!(matches!(*at1, Val::Neu(ref n, _) if matches!(n.head, Head::Var(_))));
    }

    #[test]
    fn fill_endpoints() {
        let (_, x) = fresh_var(Rc::new(Val::Bool));
        let f0 = fill(
            &bool_line(),
            &Dnf::bot(),
            &DClo::Const(junk()),
            &x,
            &Interval::Zero,
        );
        assert!(
            matches!(*f0, Val::Neu(ref n, _) if matches!(n.head, Head::Var(_)) && n.spine.is_empty())
        );
    }
}
