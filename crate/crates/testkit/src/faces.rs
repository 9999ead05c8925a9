//! Brute-force oracle for face entailment.
//!
//! The face lattice is the free distributive lattice on the atoms `(i=0)`,
//! `(i=1)` subject to `(i=0) ∧ (i=1) = ⊥`. Its prime filters are the
//! consistent sets of atoms, i.e. partial endpoint assignments, so `φ ≤ ψ`
//! holds iff `ψ` holds at every partial assignment where `φ` holds.

use cmtt_kernel::interval::{Face, Interval};
use rand::Rng;

use crate::dm::{self, Term};

pub type F = Face<u8>;

/// A partial assignment of endpoints to variables.
pub type Point = Vec<Option<bool>>;

fn at(r: &Term, p: &Point, b: bool) -> bool {
    match r {
        Interval::Zero => !b,
        Interval::One => b,
        Interval::Var(v) => p[*v as usize] == Some(b),
        Interval::Neg(s) => at(s, p, !b),
        // r∧s = 0 iff either is 0; r∧s = 1 iff both are 1. Dually for ∨.
        Interval::Meet(s, t) if !b => at(s, p, b) || at(t, p, b),
        Interval::Meet(s, t) => at(s, p, b) && at(t, p, b),
        Interval::Join(s, t) if b => at(s, p, b) || at(t, p, b),
        Interval::Join(s, t) => at(s, p, b) && at(t, p, b),
    }
}

pub fn holds(phi: &F, p: &Point) -> bool {
    match phi {
        Face::Bot => false,
        Face::Top => true,
        Face::Eq0(r) => at(r, p, false),
        Face::Eq1(r) => at(r, p, true),
        Face::Meet(a, b) => holds(a, p) && holds(b, p),
        Face::Join(a, b) => holds(a, p) || holds(b, p),
    }
}

pub fn points(nvars: u8) -> Vec<Point> {
    let mut out = vec![vec![]];
    for _ in 0..nvars {
        out = out
            .into_iter()
            .flat_map(|p: Point| {
                [None, Some(false), Some(true)].into_iter().map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

pub fn entails(phi: &F, psi: &F, nvars: u8) -> bool {
    points(nvars)
        .iter()
        .all(|p| !holds(phi, p) || holds(psi, p))
}

/// Faces of depth at most one over the endpoint atoms, together with
/// endpoint equations on every interval term of depth at most one.
pub fn enumerate(nvars: u8) -> Vec<F> {
    let mut atoms = vec![Face::Top, Face::Bot];
    for v in 0..nvars {
        atoms.push(Face::Eq0(Interval::Var(v)));
        atoms.push(Face::Eq1(Interval::Var(v)));
    }
    let mut out = atoms.clone();
    for a in &atoms {
        for b in &atoms {
            out.push(Face::meet(a.clone(), b.clone()));
            out.push(Face::join(a.clone(), b.clone()));
        }
    }
    for r in dm::enumerate(nvars, 1) {
        out.push(Face::Eq0(r.clone()));
        out.push(Face::Eq1(r));
    }
    out
}

pub fn random_face(rng: &mut impl Rng, nvars: u8, depth: usize) -> F {
    if depth == 0 || rng.gen_ratio(1, 4) {
        return match rng.gen_range(0..10) {
            0 => Face::Top,
            1 => Face::Bot,
            k => {
                let r = dm::random_term(rng, nvars, 2);
                if k % 2 == 0 {
                    Face::Eq0(r)
                } else {
                    Face::Eq1(r)
                }
            }
        };
    }
    let a = random_face(rng, nvars, depth - 1);
    let b = random_face(rng, nvars, depth - 1);
    if rng.gen() {
        Face::meet(a, b)
    } else {
        Face::join(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_do_not_cover() {
        let i = || Interval::Var(0);
        let ends = Face::join(Face::Eq0(i()), Face::Eq1(i()));
        assert!(!entails(&Face::Top, &ends, 1));
        assert!(entails(
            &Face::meet(Face::Eq0(i()), Face::Eq1(i())),
            &Face::Bot,
            1
        ));
        // (i ∧ ¬i = 0) is (i=0) ∨ (i=1), not ⊤.
        let r = Interval::meet(i(), Interval::neg(i()));
        assert!(entails(&Face::Eq0(r), &ends, 1));
        assert!(entails(
            &ends,
            &Face::Eq0(Interval::meet(i(), Interval::neg(i()))),
            1
        ));
    }

    #[test]
    fn point_count() {
        assert_eq!(points(3).len(), 27);
    }
}
