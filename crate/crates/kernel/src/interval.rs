//! The interval De Morgan algebra and the face lattice.
//!
//! Both are generic in the atom type: syntax uses [`IAtom`] (an interval
//! de Bruijn index carrying its exchange annotation) and the semantic domain
//! uses dimension names.
//!
//! Equality of interval terms is decided by evaluation into the
//! four-element De Morgan algebra, which generates the variety. Faces are
//! decided through a canonical disjunctive normal form whose clauses pin
//! atoms to endpoints.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::mode_theory::{Modality, ModeError, ModeTheory};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Interval<A> {
    Zero,
    One,
    Var(A),
    Neg(Box<Interval<A>>),
    Meet(Box<Interval<A>>, Box<Interval<A>>),
    Join(Box<Interval<A>>, Box<Interval<A>>),
}

impl<A> Interval<A> {
    #[allow(clippy::should_implement_trait)]
    pub fn neg(r: Self) -> Self {
        Interval::Neg(Box::new(r))
    }

    pub fn meet(r: Self, s: Self) -> Self {
        Interval::Meet(Box::new(r), Box::new(s))
    }

    pub fn join(r: Self, s: Self) -> Self {
        Interval::Join(Box::new(r), Box::new(s))
    }

    pub fn is_endpoint(&self) -> Option<bool> {
        match self {
            Interval::Zero => Some(false),
            Interval::One => Some(true),
            _ => None,
        }
    }

    pub fn endpoint(b: bool) -> Self {
        if b {
            Interval::One
        } else {
            Interval::Zero
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Interval::Zero | Interval::One | Interval::Var(_) => 0,
            Interval::Neg(r) => 1 + r.depth(),
            Interval::Meet(r, s) | Interval::Join(r, s) => 1 + r.depth().max(s.depth()),
        }
    }
}

impl<A: Clone + Ord> Interval<A> {
    /// Substitutes an interval term for every atom.
    pub fn bind<B>(&self, f: &mut impl FnMut(&A) -> Interval<B>) -> Interval<B> {
        match self {
            Interval::Zero => Interval::Zero,
            Interval::One => Interval::One,
            Interval::Var(a) => f(a),
            Interval::Neg(r) => Interval::neg(r.bind(f)),
            Interval::Meet(r, s) => Interval::meet(r.bind(f), s.bind(f)),
            Interval::Join(r, s) => Interval::join(r.bind(f), s.bind(f)),
        }
    }

    pub fn try_bind<B, E>(
        &self,
        f: &mut impl FnMut(&A) -> Result<Interval<B>, E>,
    ) -> Result<Interval<B>, E> {
        Ok(match self {
            Interval::Zero => Interval::Zero,
            Interval::One => Interval::One,
            Interval::Var(a) => f(a)?,
            Interval::Neg(r) => Interval::neg(r.try_bind(f)?),
            Interval::Meet(r, s) => Interval::meet(r.try_bind(f)?, s.try_bind(f)?),
            Interval::Join(r, s) => Interval::join(r.try_bind(f)?, s.try_bind(f)?),
        })
    }

    pub fn atoms(&self) -> BTreeSet<A> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<A>) {
        match self {
            Interval::Zero | Interval::One => {}
            Interval::Var(a) => {
                out.insert(a.clone());
            }
            Interval::Neg(r) => r.collect_atoms(out),
            Interval::Meet(r, s) | Interval::Join(r, s) => {
                r.collect_atoms(out);
                s.collect_atoms(out);
            }
        }
    }

    pub fn mentions(&self, a: &A) -> bool {
        match self {
            Interval::Zero | Interval::One => false,
            Interval::Var(b) => a == b,
            Interval::Neg(r) => r.mentions(a),
            Interval::Meet(r, s) | Interval::Join(r, s) => r.mentions(a) || s.mentions(a),
        }
    }

    /// Constant folding with the unit, zero and involution laws. The result
    /// is equal to the input in every De Morgan algebra.
    pub fn simplify(&self) -> Self {
        match self {
            Interval::Zero | Interval::One | Interval::Var(_) => self.clone(),
            Interval::Neg(r) => match r.simplify() {
                Interval::Zero => Interval::One,
                Interval::One => Interval::Zero,
                Interval::Neg(inner) => *inner,
                r => Interval::neg(r),
            },
            Interval::Meet(r, s) => match (r.simplify(), s.simplify()) {
                (Interval::Zero, _) | (_, Interval::Zero) => Interval::Zero,
                (Interval::One, x) | (x, Interval::One) => x,
                (x, y) if x == y => x,
                (x, y) => Interval::meet(x, y),
            },
            Interval::Join(r, s) => match (r.simplify(), s.simplify()) {
                (Interval::One, _) | (_, Interval::One) => Interval::One,
                (Interval::Zero, x) | (x, Interval::Zero) => x,
                (x, y) if x == y => x,
                (x, y) => Interval::join(x, y),
            },
        }
    }

    pub fn eval_dm4(&self, env: &impl Fn(&A) -> Option<Dm4>) -> Result<Dm4, Unbound> {
        Ok(match self {
            Interval::Zero => Dm4::ZERO,
            Interval::One => Dm4::ONE,
            Interval::Var(a) => env(a).ok_or(Unbound)?,
            Interval::Neg(r) => r.eval_dm4(env)?.neg(),
            Interval::Meet(r, s) => r.eval_dm4(env)?.meet(s.eval_dm4(env)?),
            Interval::Join(r, s) => r.eval_dm4(env)?.join(s.eval_dm4(env)?),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Unbound;

/// The four-element De Morgan algebra `{0, a, b, 1}`.
///
/// Encoded as a pair of bits: meet and join are bitwise, and negation swaps
/// and complements, so `a = (1,0)` and `b = (0,1)` are fixed by negation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dm4(u8);

impl Dm4 {
    pub const ZERO: Dm4 = Dm4(0b00);
    pub const A: Dm4 = Dm4(0b01);
    pub const B: Dm4 = Dm4(0b10);
    pub const ONE: Dm4 = Dm4(0b11);
    pub const ALL: [Dm4; 4] = [Dm4::ZERO, Dm4::A, Dm4::B, Dm4::ONE];

    pub fn meet(self, o: Dm4) -> Dm4 {
        Dm4(self.0 & o.0)
    }

    pub fn join(self, o: Dm4) -> Dm4 {
        Dm4(self.0 | o.0)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Dm4 {
        let lo = self.0 & 1;
        let hi = (self.0 >> 1) & 1;
        Dm4(((1 - lo) << 1) | (1 - hi))
    }
}

impl fmt::Display for Dm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match *self {
            Dm4::ZERO => "0",
            Dm4::A => "a",
            Dm4::B => "b",
            _ => "1",
        })
    }
}

/// Calls `f` on every assignment of the given atoms into DM4 until it
/// returns false.
fn all_assignments<A: Clone + Ord>(
    atoms: &[A],
    pinned: &BTreeMap<A, bool>,
    f: &mut impl FnMut(&BTreeMap<A, Dm4>) -> bool,
) -> bool {
    let free: Vec<&A> = atoms.iter().filter(|a| !pinned.contains_key(*a)).collect();
    let mut asg: BTreeMap<A, Dm4> = pinned
        .iter()
        .map(|(a, b)| (a.clone(), if *b { Dm4::ONE } else { Dm4::ZERO }))
        .collect();
    let n = free.len();
    let total = 1usize << (2 * n);
    for code in 0..total {
        for (k, a) in free.iter().enumerate() {
            asg.insert((*a).clone(), Dm4(((code >> (2 * k)) & 3) as u8));
        }
        if !f(&asg) {
            return false;
        }
    }
    true
}

/// Equality in the free De Morgan algebra.
pub fn int_equal<A: Clone + Ord>(r: &Interval<A>, s: &Interval<A>) -> bool {
    int_equal_pinned(r, s, &BTreeMap::new())
}

fn int_equal_pinned<A: Clone + Ord>(
    r: &Interval<A>,
    s: &Interval<A>,
    pinned: &BTreeMap<A, bool>,
) -> bool {
    if r == s {
        return true;
    }
    let mut atoms = r.atoms();
    atoms.extend(s.atoms());
    let atoms: Vec<A> = atoms.into_iter().collect();
    all_assignments(&atoms, pinned, &mut |asg| {
        let env = |a: &A| asg.get(a).copied();
        r.eval_dm4(&env) == s.eval_dm4(&env)
    })
}

/// Interval equality under a face context: one DM4 check per clause, with
/// the atoms pinned by the clause held at their endpoints.
pub fn int_equal_under<A: Clone + Ord>(ctx: &Dnf<A>, r: &Interval<A>, s: &Interval<A>) -> bool {
    ctx.clauses().iter().all(|c| int_equal_pinned(r, s, &c.0))
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Face<A> {
    Bot,
    Top,
    Eq0(Interval<A>),
    Eq1(Interval<A>),
    Meet(Box<Face<A>>, Box<Face<A>>),
    Join(Box<Face<A>>, Box<Face<A>>),
}

impl<A> Face<A> {
    pub fn meet(p: Self, q: Self) -> Self {
        Face::Meet(Box::new(p), Box::new(q))
    }

    pub fn join(p: Self, q: Self) -> Self {
        Face::Join(Box::new(p), Box::new(q))
    }

    pub fn join_all(faces: impl IntoIterator<Item = Self>) -> Self {
        let mut it = faces.into_iter();
        match it.next() {
            None => Face::Bot,
            Some(first) => it.fold(first, Face::join),
        }
    }
}

impl<A: Clone + Ord> Face<A> {
    pub fn bind<B>(&self, f: &mut impl FnMut(&A) -> Interval<B>) -> Face<B> {
        match self {
            Face::Bot => Face::Bot,
            Face::Top => Face::Top,
            Face::Eq0(r) => Face::Eq0(r.bind(f)),
            Face::Eq1(r) => Face::Eq1(r.bind(f)),
            Face::Meet(p, q) => Face::meet(p.bind(f), q.bind(f)),
            Face::Join(p, q) => Face::join(p.bind(f), q.bind(f)),
        }
    }

    pub fn try_bind<B, E>(
        &self,
        f: &mut impl FnMut(&A) -> Result<Interval<B>, E>,
    ) -> Result<Face<B>, E> {
        Ok(match self {
            Face::Bot => Face::Bot,
            Face::Top => Face::Top,
            Face::Eq0(r) => Face::Eq0(r.try_bind(f)?),
            Face::Eq1(r) => Face::Eq1(r.try_bind(f)?),
            Face::Meet(p, q) => Face::meet(p.try_bind(f)?, q.try_bind(f)?),
            Face::Join(p, q) => Face::join(p.try_bind(f)?, q.try_bind(f)?),
        })
    }

    pub fn atoms(&self) -> BTreeSet<A> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<A>) {
        match self {
            Face::Bot | Face::Top => {}
            Face::Eq0(r) | Face::Eq1(r) => r.collect_atoms(out),
            Face::Meet(p, q) | Face::Join(p, q) => {
                p.collect_atoms(out);
                q.collect_atoms(out);
            }
        }
    }

    pub fn canon(&self) -> Dnf<A> {
        face_canon(self)
    }
}

/// A consistent conjunction of endpoint constraints: `true` pins the atom
/// to 1, `false` to 0.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause<A: Ord>(pub BTreeMap<A, bool>);

impl<A: Clone + Ord> Clause<A> {
    pub fn top() -> Self {
        Clause(BTreeMap::new())
    }

    pub fn atom(a: A, b: bool) -> Self {
        Clause(BTreeMap::from([(a, b)]))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&A, &bool)> {
        self.0.iter()
    }

    /// Conjunction; `None` when the result is contradictory.
    pub fn and(&self, other: &Self) -> Option<Self> {
        let mut out = self.0.clone();
        for (a, b) in &other.0 {
            match out.get(a) {
                Some(c) if c != b => return None,
                _ => {
                    out.insert(a.clone(), *b);
                }
            }
        }
        Some(Clause(out))
    }

    /// Every atom of `self` appears with the same polarity in `other`.
    pub fn subset_of(&self, other: &Self) -> bool {
        self.0.iter().all(|(a, b)| other.0.get(a) == Some(b))
    }

    pub fn to_face(&self) -> Face<A> {
        let mut out: Option<Face<A>> = None;
        for (a, b) in &self.0 {
            let atom = if *b {
                Face::Eq1(Interval::Var(a.clone()))
            } else {
                Face::Eq0(Interval::Var(a.clone()))
            };
            out = Some(match out {
                None => atom,
                Some(f) => Face::meet(f, atom),
            });
        }
        out.unwrap_or(Face::Top)
    }
}

/// Canonical form of a face: an antichain of consistent clauses. The empty
/// set is `⊥`; the set containing only the empty clause is `⊤`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dnf<A: Ord>(Vec<Clause<A>>);

impl<A: Clone + Ord> Dnf<A> {
    pub fn top() -> Self {
        Dnf(vec![Clause::top()])
    }

    pub fn bot() -> Self {
        Dnf(Vec::new())
    }

    pub fn atom(a: A, b: bool) -> Self {
        Dnf(vec![Clause::atom(a, b)])
    }

    pub fn from_clauses(cs: impl IntoIterator<Item = Clause<A>>) -> Self {
        let mut d = Dnf(cs.into_iter().collect());
        d.normalize();
        d
    }

    pub fn clauses(&self) -> &[Clause<A>] {
        &self.0
    }

    pub fn is_top(&self) -> bool {
        self.0.iter().any(Clause::is_empty)
    }

    pub fn is_bot(&self) -> bool {
        self.0.is_empty()
    }

    fn normalize(&mut self) {
        self.0.sort();
        self.0.dedup();
        let cs = std::mem::take(&mut self.0);
        let mut keep: Vec<Clause<A>> = Vec::new();
        for (i, c) in cs.iter().enumerate() {
            let absorbed = cs
                .iter()
                .enumerate()
                .any(|(j, d)| j != i && d.subset_of(c) && (d.len() < c.len() || j < i));
            if !absorbed {
                keep.push(c.clone());
            }
        }
        self.0 = keep;
    }

    pub fn join(&self, other: &Self) -> Self {
        Dnf::from_clauses(self.0.iter().chain(other.0.iter()).cloned())
    }

    pub fn meet(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        for c in &self.0 {
            for d in &other.0 {
                if let Some(e) = c.and(d) {
                    out.push(e);
                }
            }
        }
        Dnf::from_clauses(out)
    }

    pub fn to_face(&self) -> Face<A> {
        if self.is_top() {
            return Face::Top;
        }
        Face::join_all(self.0.iter().map(Clause::to_face))
    }

    pub fn atoms(&self) -> BTreeSet<A> {
        self.0.iter().flat_map(|c| c.0.keys().cloned()).collect()
    }

    pub fn mentions(&self, a: &A) -> bool {
        self.0.iter().any(|c| c.0.contains_key(a))
    }

    /// Substitutes interval terms for atoms and re-canonicalizes.
    pub fn bind<B: Clone + Ord>(&self, f: &mut impl FnMut(&A) -> Interval<B>) -> Dnf<B> {
        let mut out = Dnf::bot();
        for c in &self.0 {
            let mut acc = Dnf::top();
            for (a, b) in &c.0 {
                let r = f(a);
                let lit = if *b { eq1(&r) } else { eq0(&r) };
                acc = acc.meet(&lit);
                if acc.is_bot() {
                    break;
                }
            }
            out = out.join(&acc);
        }
        out
    }

    /// Entailment by clause containment: every clause of `self` contains
    /// some clause of `phi`.
    pub fn entails(&self, phi: &Dnf<A>) -> bool {
        self.0.iter().all(|c| phi.0.iter().any(|d| d.subset_of(c)))
    }
}

fn eq0<A: Clone + Ord>(r: &Interval<A>) -> Dnf<A> {
    match r {
        Interval::Zero => Dnf::top(),
        Interval::One => Dnf::bot(),
        Interval::Var(a) => Dnf::atom(a.clone(), false),
        Interval::Neg(s) => eq1(s),
        Interval::Join(s, t) => eq0(s).meet(&eq0(t)),
        Interval::Meet(s, t) => eq0(s).join(&eq0(t)),
    }
}

fn eq1<A: Clone + Ord>(r: &Interval<A>) -> Dnf<A> {
    match r {
        Interval::Zero => Dnf::bot(),
        Interval::One => Dnf::top(),
        Interval::Var(a) => Dnf::atom(a.clone(), true),
        Interval::Neg(s) => eq0(s),
        Interval::Join(s, t) => eq1(s).join(&eq1(t)),
        Interval::Meet(s, t) => eq1(s).meet(&eq1(t)),
    }
}

/// Canonical DNF. Endpoint equations on compound interval terms are pushed
/// to atoms by `(r∨s = 0) = (r=0)∧(s=0)`, `(r∧s = 0) = (r=0)∨(s=0)`,
/// `(¬r = 0) = (r = 1)` and their duals.
pub fn face_canon<A: Clone + Ord>(phi: &Face<A>) -> Dnf<A> {
    match phi {
        Face::Bot => Dnf::bot(),
        Face::Top => Dnf::top(),
        Face::Eq0(r) => eq0(r),
        Face::Eq1(r) => eq1(r),
        Face::Meet(p, q) => face_canon(p).meet(&face_canon(q)),
        Face::Join(p, q) => face_canon(p).join(&face_canon(q)),
    }
}

pub fn face_entails<A: Clone + Ord>(ctx: &Dnf<A>, phi: &Face<A>) -> bool {
    ctx.entails(&face_canon(phi))
}

/// An interval variable in core syntax: a de Bruijn index into the interval
/// variables of the context, with the exchange annotation accumulated from
/// the locks crossed between binder and use. `None` marks an atom produced
/// by the surface language that has not been annotated yet.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IAtom {
    pub index: usize,
    pub exc: Option<Modality>,
}

impl IAtom {
    pub fn plain(index: usize) -> Self {
        IAtom { index, exc: None }
    }

    pub fn annotated(index: usize, exc: Modality) -> Self {
        IAtom {
            index,
            exc: Some(exc),
        }
    }
}

pub type ITm = Interval<IAtom>;
pub type FTm = Face<IAtom>;

fn exc_atom(theory: &ModeTheory, mu: &Modality, a: &IAtom) -> Result<IAtom, ModeError> {
    let exc = match &a.exc {
        None => mu.clone(),
        Some(e) => theory.compose(e, mu)?,
    };
    Ok(IAtom {
        index: a.index,
        exc: Some(exc),
    })
}

/// `⇑^μ r`: pushes the exchange through every connective and composes it
/// onto each atom's annotation, so `exc_int(ν, exc_int(μ, i)) = i^{μ∘ν}`.
/// Unannotated atoms are read as carrying the identity.
pub fn exc_int(theory: &ModeTheory, mu: &Modality, r: &ITm) -> Result<ITm, ModeError> {
    r.try_bind(&mut |a| exc_atom(theory, mu, a).map(Interval::Var))
}

pub fn exc_face(theory: &ModeTheory, mu: &Modality, phi: &FTm) -> Result<FTm, ModeError> {
    phi.try_bind(&mut |a| exc_atom(theory, mu, a).map(Interval::Var))
}

impl fmt::Display for IAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.index)
    }
}

impl<A: fmt::Display> fmt::Display for Interval<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Interval::Zero => f.write_str("0"),
            Interval::One => f.write_str("1"),
            Interval::Var(a) => write!(f, "{a}"),
            Interval::Neg(r) => write!(f, "~{r}"),
            Interval::Meet(r, s) => write!(f, "({r} /\\ {s})"),
            Interval::Join(r, s) => write!(f, "({r} \\/ {s})"),
        }
    }
}

impl<A: fmt::Display> fmt::Display for Face<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Face::Bot => f.write_str("⊥"),
            Face::Top => f.write_str("⊤"),
            Face::Eq0(r) => write!(f, "({r}=0)"),
            Face::Eq1(r) => write!(f, "({r}=1)"),
            Face::Meet(p, q) => write!(f, "({p} ∧ {q})"),
            Face::Join(p, q) => write!(f, "({p} ∨ {q})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type T = Interval<u8>;

    fn v(a: u8) -> T {
        Interval::Var(a)
    }

    #[test]
    fn dm4_tables() {
        assert_eq!(Dm4::ZERO.neg(), Dm4::ONE);
        assert_eq!(Dm4::A.neg(), Dm4::A);
        assert_eq!(Dm4::B.neg(), Dm4::B);
        assert_eq!(Dm4::A.meet(Dm4::B), Dm4::ZERO);
        assert_eq!(Dm4::A.join(Dm4::B), Dm4::ONE);
        for x in Dm4::ALL {
            assert_eq!(x.neg().neg(), x);
            for y in Dm4::ALL {
                assert_eq!(x.meet(y).neg(), x.neg().join(y.neg()));
            }
        }
    }

    #[test]
    fn eval_examples() {
        let none = |_: &u8| None;
        assert_eq!(T::neg(T::Zero).eval_dm4(&none), Ok(Dm4::ONE));
        let env = |a: &u8| (*a == 0).then_some(Dm4::A);
        assert_eq!(T::meet(v(0), T::neg(v(0))).eval_dm4(&env), Ok(Dm4::A));
        let env = |a: &u8| Some(if *a == 0 { Dm4::ZERO } else { Dm4::ONE });
        assert_eq!(T::join(v(0), v(1)).eval_dm4(&env), Ok(Dm4::ONE));
        assert_eq!(v(3).eval_dm4(&none), Err(Unbound));
    }

    #[test]
    fn equality_examples() {
        let lhs = T::neg(T::meet(v(0), v(1)));
        let rhs = T::join(T::neg(v(0)), T::neg(v(1)));
        assert!(int_equal(&lhs, &rhs));
        assert!(!int_equal(&T::meet(v(0), T::neg(v(0))), &T::Zero));
        assert!(int_equal(&v(2), &v(2)));
    }

    #[test]
    fn face_examples() {
        let f = Face::meet(Face::Eq0(v(0)), Face::Eq1(v(0)));
        assert!(face_canon(&f).is_bot());
        assert!(face_canon(&Face::<u8>::Eq0(T::Zero)).is_top());
        let phi = Face::Eq0(v(0));
        let psi = Face::Eq1(v(1));
        let absorbed = Face::join(phi.clone(), Face::meet(phi.clone(), psi));
        assert_eq!(face_canon(&absorbed), face_canon(&phi));
    }

    #[test]
    fn entailment_examples() {
        let ctx = face_canon(&Face::Eq0(v(0)));
        assert!(face_entails(&ctx, &Face::Eq0(v(0))));
        assert!(!face_entails(&ctx, &Face::Eq1(v(0))));
        assert!(face_entails(&Dnf::bot(), &Face::Eq1(v(0))));
        assert!(face_entails(&ctx, &Face::Top));
    }

    #[test]
    fn equality_under_faces() {
        let ctx = face_canon(&Face::Eq0(v(0)));
        assert!(int_equal_under(&ctx, &v(0), &T::Zero));
        assert!(int_equal_under(&Dnf::bot(), &T::Zero, &T::One));
        assert!(!int_equal_under(&Dnf::top(), &v(0), &T::Zero));
    }

    #[test]
    fn exchange_laws() {
        let th = ModeTheory::guarded();
        let l = th.parse_modality("ℓ").unwrap();
        let g = th.parse_modality("γ").unwrap();
        let id = th.id(th.mode("t").unwrap());
        let i = || Interval::Var(IAtom::plain(0));
        let j = || Interval::Var(IAtom::plain(1));
        let r = ITm::meet(i(), j());
        let out = exc_int(&th, &l, &r).unwrap();
        assert_eq!(
            out,
            ITm::meet(
                Interval::Var(IAtom::annotated(0, l.clone())),
                Interval::Var(IAtom::annotated(1, l.clone()))
            )
        );
        // The identity exchange leaves annotated atoms alone.
        assert_eq!(exc_int(&th, &id, &out).unwrap(), out);
        // Composition onto the annotation.
        let twice = exc_int(&th, &l, &out).unwrap();
        let ll = th.compose(&l, &l).unwrap();
        assert_eq!(
            twice,
            ITm::meet(
                Interval::Var(IAtom::annotated(0, ll.clone())),
                Interval::Var(IAtom::annotated(1, ll))
            )
        );
        // Annotations normalize through the mode theory: i^γ then δ is i^{1_s}.
        let d = th.parse_modality("δ").unwrap();
        let gd = exc_int(&th, &d, &Interval::Var(IAtom::annotated(0, g.clone()))).unwrap();
        let id_s = th.id(th.mode("s").unwrap());
        assert_eq!(gd, Interval::Var(IAtom::annotated(0, id_s)));
        let face = exc_face(&th, &g, &Face::Eq0(i())).unwrap();
        assert_eq!(
            face,
            Face::Eq0(Interval::Var(IAtom::annotated(0, g.clone())))
        );
        assert_eq!(exc_face(&th, &g, &FTm::Top).unwrap(), FTm::Top);
    }
}
