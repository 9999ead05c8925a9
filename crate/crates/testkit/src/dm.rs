//! Oracles for the interval algebra, written without reference to the
//! kernel's own decision procedure.
//!
//! Two independent semantics: valuation in the four-element De Morgan
//! algebra, encoded as pairs of booleans with `¬(a, b) = (¬b, ¬a)`, and a
//! rewrite normal form (negation pushed to the atoms, then an irredundant
//! disjunction of conjunctions of literals). The free De Morgan algebra on
//! `X` is the free bounded distributive lattice on `X ⊔ ¬X`, so the second
//! one is canonical.

use std::collections::{BTreeSet, HashMap};

use cmtt_kernel::interval::Interval;
use rand::Rng;

pub type Term = Interval<u8>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dm4(bool, bool);

impl Dm4 {
    pub const ALL: [Dm4; 4] = [
        Dm4(false, false),
        Dm4(false, true),
        Dm4(true, false),
        Dm4(true, true),
    ];

    fn meet(self, o: Dm4) -> Dm4 {
        Dm4(self.0 && o.0, self.1 && o.1)
    }

    fn join(self, o: Dm4) -> Dm4 {
        Dm4(self.0 || o.0, self.1 || o.1)
    }

    fn neg(self) -> Dm4 {
        Dm4(!self.1, !self.0)
    }
}

pub fn eval(r: &Term, env: &[Dm4]) -> Dm4 {
    match r {
        Interval::Zero => Dm4(false, false),
        Interval::One => Dm4(true, true),
        Interval::Var(v) => env[*v as usize],
        Interval::Neg(s) => eval(s, env).neg(),
        Interval::Meet(s, t) => eval(s, env).meet(eval(t, env)),
        Interval::Join(s, t) => eval(s, env).join(eval(t, env)),
    }
}

/// Values of `r` at every valuation of `nvars` variables.
pub fn table(r: &Term, nvars: u8) -> Vec<Dm4> {
    let n = nvars as usize;
    let mut out = Vec::with_capacity(4usize.pow(nvars as u32));
    let mut env = vec![Dm4::ALL[0]; n];
    for code in 0..4usize.pow(nvars as u32) {
        let mut c = code;
        for slot in env.iter_mut() {
            *slot = Dm4::ALL[c % 4];
            c /= 4;
        }
        out.push(eval(r, &env));
    }
    out
}

/// A literal: a variable, possibly negated.
pub type Lit = (u8, bool);

/// An antichain of clauses; `{}` is 0 and `{{}}` is 1.
pub type Nf = BTreeSet<BTreeSet<Lit>>;

fn minimize(cs: Nf) -> Nf {
    cs.iter()
        .filter(|c| !cs.iter().any(|d| d != *c && d.is_subset(c)))
        .cloned()
        .collect()
}

fn nf_join(a: &Nf, b: &Nf) -> Nf {
    minimize(a.union(b).cloned().collect())
}

fn nf_meet(a: &Nf, b: &Nf) -> Nf {
    let mut out = Nf::new();
    for c in a {
        for d in b {
            out.insert(c.union(d).copied().collect());
        }
    }
    minimize(out)
}

/// Normal form of `r`, or of `¬r` when `negated`.
fn nf_signed(r: &Term, negated: bool) -> Nf {
    let one = || Nf::from([BTreeSet::new()]);
    match (r, negated) {
        (Interval::Zero, false) | (Interval::One, true) => Nf::new(),
        (Interval::One, false) | (Interval::Zero, true) => one(),
        (Interval::Var(v), pol) => Nf::from([BTreeSet::from([(*v, pol)])]),
        (Interval::Neg(s), pol) => nf_signed(s, !pol),
        (Interval::Meet(s, t), false) | (Interval::Join(s, t), true) => {
            nf_meet(&nf_signed(s, negated), &nf_signed(t, negated))
        }
        (Interval::Join(s, t), false) | (Interval::Meet(s, t), true) => {
            nf_join(&nf_signed(s, negated), &nf_signed(t, negated))
        }
    }
}

pub fn normal_form(r: &Term) -> Nf {
    nf_signed(r, false)
}

/// Every term over `nvars` variables of depth at most `depth`, where the
/// leaves `0`, `1` and variables have depth 0.
pub fn enumerate(nvars: u8, depth: usize) -> Vec<Term> {
    let mut levels: Vec<Vec<Term>> = Vec::new();
    let mut leaves = vec![Interval::Zero, Interval::One];
    leaves.extend((0..nvars).map(Interval::Var));
    levels.push(leaves);
    for d in 1..=depth {
        let below: Vec<&Term> = levels.iter().flatten().collect();
        let exact_prev = &levels[d - 1];
        let mut next = Vec::new();
        for r in exact_prev {
            next.push(Interval::neg(r.clone()));
        }
        // Binary nodes of exact depth d: at least one child of depth d-1.
        let prev_start = below.len() - exact_prev.len();
        for (ia, a) in below.iter().enumerate() {
            for (ib, b) in below.iter().enumerate() {
                if ia < prev_start && ib < prev_start {
                    continue;
                }
                next.push(Interval::meet((*a).clone(), (*b).clone()));
                next.push(Interval::join((*a).clone(), (*b).clone()));
            }
        }
        levels.push(next);
    }
    levels.into_iter().flatten().collect()
}

pub fn random_term(rng: &mut impl Rng, nvars: u8, depth: usize) -> Term {
    if depth == 0 || rng.gen_ratio(1, 5) {
        return match rng.gen_range(0..8) {
            0 => Interval::Zero,
            1 => Interval::One,
            _ => Interval::Var(rng.gen_range(0..nvars)),
        };
    }
    match rng.gen_range(0..3) {
        0 => Interval::neg(random_term(rng, nvars, depth - 1)),
        1 => Interval::meet(
            random_term(rng, nvars, depth - 1),
            random_term(rng, nvars, depth - 1),
        ),
        _ => Interval::join(
            random_term(rng, nvars, depth - 1),
            random_term(rng, nvars, depth - 1),
        ),
    }
}

/// Rewrites `r` by one randomly chosen De Morgan law at a random position,
/// producing an equal term.
pub fn perturb(rng: &mut impl Rng, r: &Term) -> Term {
    let here = rng.gen_ratio(1, 3);
    match r {
        Interval::Neg(s) if here => match &**s {
            Interval::Meet(a, b) => {
                Interval::join(Interval::neg((**a).clone()), Interval::neg((**b).clone()))
            }
            Interval::Join(a, b) => {
                Interval::meet(Interval::neg((**a).clone()), Interval::neg((**b).clone()))
            }
            Interval::Neg(a) => (**a).clone(),
            _ => Interval::neg(Interval::neg(r.clone())),
        },
        Interval::Meet(a, b) if here => match rng.gen_range(0..3) {
            0 => Interval::meet((**b).clone(), (**a).clone()),
            1 => Interval::join(r.clone(), Interval::meet(r.clone(), (**a).clone())),
            _ => match &**b {
                Interval::Join(c, d) => Interval::join(
                    Interval::meet((**a).clone(), (**c).clone()),
                    Interval::meet((**a).clone(), (**d).clone()),
                ),
                _ => Interval::meet(r.clone(), r.clone()),
            },
        },
        Interval::Join(a, b) if here => match rng.gen_range(0..2) {
            0 => Interval::join((**b).clone(), (**a).clone()),
            _ => Interval::meet(r.clone(), Interval::join(r.clone(), (**b).clone())),
        },
        Interval::Neg(s) => Interval::neg(perturb(rng, s)),
        Interval::Meet(a, b) if rng.gen() => Interval::meet(perturb(rng, a), (**b).clone()),
        Interval::Meet(a, b) => Interval::meet((**a).clone(), perturb(rng, b)),
        Interval::Join(a, b) if rng.gen() => Interval::join(perturb(rng, a), (**b).clone()),
        Interval::Join(a, b) => Interval::join((**a).clone(), perturb(rng, b)),
        _ => match rng.gen_range(0..3) {
            0 => Interval::meet(r.clone(), Interval::One),
            1 => Interval::join(Interval::Zero, r.clone()),
            _ => Interval::neg(Interval::neg(r.clone())),
        },
    }
}

/// Groups terms by normal form, checking on the way that the two oracles
/// agree. Returns the classes, or the first disagreement.
pub fn classify(terms: &[Term], nvars: u8) -> Result<Vec<Vec<usize>>, String> {
    let mut by_nf: HashMap<Nf, usize> = HashMap::new();
    let mut by_table: HashMap<Vec<Dm4>, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (k, r) in terms.iter().enumerate() {
        let nf = normal_form(r);
        let tb = table(r, nvars);
        let a = by_nf.get(&nf).copied();
        let b = by_table.get(&tb).copied();
        match (a, b) {
            (Some(x), Some(y)) if x == y => classes[x].push(k),
            (None, None) => {
                by_nf.insert(nf, classes.len());
                by_table.insert(tb, classes.len());
                classes.push(vec![k]);
            }
            _ => return Err(format!("oracles disagree on {r:?}")),
        }
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn oracles_on_known_laws() {
        let x = || Interval::Var(0);
        let y = || Interval::Var(1);
        let lhs = Interval::neg(Interval::meet(x(), y()));
        let rhs = Interval::join(Interval::neg(x()), Interval::neg(y()));
        assert_eq!(normal_form(&lhs), normal_form(&rhs));
        assert_eq!(table(&lhs, 2), table(&rhs, 2));
        let xnx = Interval::meet(x(), Interval::neg(x()));
        assert_ne!(normal_form(&xnx), normal_form(&Interval::Zero));
        assert_ne!(table(&xnx, 1), table(&Interval::Zero, 1));
    }

    #[test]
    fn perturbation_preserves_value() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..500 {
            let r = random_term(&mut rng, 3, 5);
            let s = perturb(&mut rng, &r);
            assert_eq!(table(&r, 3), table(&s, 3));
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate(1, 0).len(), 3);
        // 3 leaves, then 3 negations and 2 * 3 * 3 binary nodes.
        assert_eq!(enumerate(1, 1).len(), 3 + 3 + 18);
    }
}
