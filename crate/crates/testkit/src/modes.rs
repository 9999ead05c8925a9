//! A concrete model of the guarded mode theory, used to check its decision
//! procedures.
//!
//! Mode `t` is interpreted as pairs `(x, n)` and mode `s` as plain values
//! `x`; `ℓ` bumps `n`, `γ` forgets it and `δ` resets it to 0. Both equations
//! `γ∘δ = 1` and `γ∘ℓ = γ` hold, the model separates all candidate normal
//! forms, and its pointwise order (`n ≤ m` on equal `x`) contains both
//! generating cells.

use cmtt_kernel::mode_theory::{Modality, ModeTheory};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pt {
    T(i64, u32),
    S(i64),
}

fn apply_gen(name: &str, p: Pt) -> Pt {
    match (name, p) {
        ("ℓ", Pt::T(x, n)) => Pt::T(x, n + 1),
        ("γ", Pt::T(x, _)) => Pt::S(x),
        ("δ", Pt::S(x)) => Pt::T(x, 0),
        _ => panic!("ill-moded application of {name} to {p:?}"),
    }
}

/// A word `g1∘…∘gk`, written as its generator names; `gk` acts first.
pub type Word = Vec<&'static str>;

pub const GENS: [(&str, &str, &str); 3] = [("ℓ", "t", "t"), ("γ", "t", "s"), ("δ", "s", "t")];

fn gen_modes(name: &str) -> (&'static str, &'static str) {
    let g = GENS.iter().find(|g| g.0 == name).expect("generator");
    (g.1, g.2)
}

pub fn samples(mode: &str) -> Vec<Pt> {
    match mode {
        "t" => vec![Pt::T(3, 0), Pt::T(3, 100)],
        _ => vec![Pt::S(3)],
    }
}

/// The action of a word on the samples of its domain, or `None` when the
/// word is not composable.
pub fn action(word: &[&str], dom: &str) -> Option<Vec<Pt>> {
    let mut mode = dom;
    for g in word.iter().rev() {
        let (d, c) = gen_modes(g);
        if d != mode {
            return None;
        }
        mode = c;
    }
    Some(
        samples(dom)
            .into_iter()
            .map(|p| word.iter().rev().fold(p, |p, g| apply_gen(g, p)))
            .collect(),
    )
}

fn le(a: Pt, b: Pt) -> bool {
    match (a, b) {
        (Pt::T(x, n), Pt::T(y, m)) => x == y && n <= m,
        (Pt::S(x), Pt::S(y)) => x == y,
        _ => false,
    }
}

pub fn model_le(a: &[Pt], b: &[Pt]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| le(*x, *y))
}

/// Composable words of length at most `n`, each tagged with its domain.
pub fn words(n: usize) -> Vec<(Word, &'static str)> {
    let mut out: Vec<(Word, &'static str)> = vec![(vec![], "t"), (vec![], "s")];
    let mut frontier = out.clone();
    for _ in 0..n {
        let mut next = Vec::new();
        for (w, dom) in &frontier {
            for (g, _, _) in GENS {
                let mut w2 = vec![g];
                w2.extend(w.iter().copied());
                if action(&w2, dom).is_some() {
                    next.push((w2, *dom));
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

pub fn to_modality(theory: &ModeTheory, w: &[&str], dom: &str) -> Modality {
    let id = theory.id(theory.mode(dom).expect("mode"));
    w.iter().rev().fold(id, |acc, g| {
        let gm = theory.generator(g).expect("generator");
        theory.compose(&gm, &acc).expect("composable")
    })
}

/// The candidate normal forms `ℓ^a`, `ℓ^a∘δ∘γ`, `γ`, `ℓ^a∘δ`, `1_s`, for
/// `a ≤ max`, as words with their domain.
pub fn candidates(max: usize) -> Vec<(Word, &'static str)> {
    let mut out = vec![(vec!["γ"], "t"), (vec![], "s")];
    for a in 0..=max {
        let ls = vec!["ℓ"; a];
        out.push((ls.clone(), "t"));
        let mut w = ls.clone();
        w.extend(["δ", "γ"]);
        out.push((w, "t"));
        let mut w = ls;
        w.push("δ");
        out.push((w, "s"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_satisfies_the_equations() {
        assert_eq!(action(&["γ", "δ"], "s"), action(&[], "s"));
        assert_eq!(action(&["γ", "ℓ"], "t"), action(&["γ"], "t"));
        assert!(model_le(
            &action(&["δ", "γ"], "t").unwrap(),
            &action(&[], "t").unwrap()
        ));
        assert!(model_le(
            &action(&[], "t").unwrap(),
            &action(&["ℓ"], "t").unwrap()
        ));
    }

    #[test]
    fn candidates_are_separated() {
        let cs = candidates(6);
        for (i, a) in cs.iter().enumerate() {
            for b in &cs[i + 1..] {
                if a.1 == b.1 {
                    assert_ne!(action(&a.0, a.1), action(&b.0, b.1), "{a:?} {b:?}");
                }
            }
        }
    }
}
