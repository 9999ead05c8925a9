//! Semantic domain for normalization by evaluation.
//!
//! Dimensions and term variables are globally fresh names. Exchange and key
//! substitutions act as the identity on values: an interval atom `i^μ` and
//! its unannotated binder denote the same dimension, and the annotation is
//! reconstructed from the context shape during readback.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;
use std::sync::atomic::{AtomicU32, Ordering};

use crate::interval::{Dnf, Interval};
use crate::mode_theory::Modality;
use crate::syntax::{Tm, Ty};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dim(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub u32);

static NEXT_DIM: AtomicU32 = AtomicU32::new(0);
static NEXT_VAR: AtomicU32 = AtomicU32::new(0);

impl Dim {
    pub fn fresh() -> Dim {
        Dim(NEXT_DIM.fetch_add(1, Ordering::Relaxed))
    }
}

impl VarId {
    pub fn fresh() -> VarId {
        VarId(NEXT_VAR.fetch_add(1, Ordering::Relaxed))
    }
}

impl std::fmt::Display for Dim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "i{}", self.0)
    }
}

pub type IVal = Interval<Dim>;
pub type FVal = Dnf<Dim>;
pub type V = Rc<Val>;

#[derive(Clone, Debug)]
pub enum Body {
    Tm(Rc<Tm>),
    Ty(Rc<Ty>),
}

/// Term-variable closure.
#[derive(Clone, Debug)]
pub enum Clo {
    Eval {
        env: Env,
        body: Body,
    },
    /// Ignores its argument.
    Const(V),
    /// The function produced by composition in a Π line, waiting for its
    /// argument.
    CompPi {
        line: DClo,
        phi: FVal,
        tube: DClo,
        cap: V,
    },
}

/// Dimension closure.
#[derive(Clone, Debug)]
pub enum DClo {
    Eval { env: Env, body: Body },
    Abs { dim: Dim, val: V },
    Const(V),
}

/// A checked global: its type, its value if it is a definition, and for
/// axioms an optional unfolding (a closed function of the same type).
#[derive(Debug)]
pub struct Global {
    pub mode: crate::mode_theory::ModeId,
    pub ty: V,
    pub value: Option<V>,
    pub unfold: Option<V>,
}

pub type Globals = Rc<HashMap<String, Rc<Global>>>;

#[derive(Clone, Debug, Default)]
pub struct Env {
    pub tms: Rc<Vec<V>>,
    pub ivs: Rc<Vec<IVal>>,
    pub globals: Globals,
}

impl Env {
    pub fn with_globals(globals: Globals) -> Env {
        Env {
            globals,
            ..Env::default()
        }
    }

    pub fn push_tm(&self, v: V) -> Env {
        let mut tms = (*self.tms).clone();
        tms.push(v);
        Env {
            tms: Rc::new(tms),
            ivs: self.ivs.clone(),
            globals: self.globals.clone(),
        }
    }

    pub fn push_iv(&self, r: IVal) -> Env {
        let mut ivs = (*self.ivs).clone();
        ivs.push(r);
        Env {
            tms: self.tms.clone(),
            ivs: Rc::new(ivs),
            globals: self.globals.clone(),
        }
    }

    pub fn pop_tm(&self) -> Env {
        let mut tms = (*self.tms).clone();
        tms.pop();
        Env {
            tms: Rc::new(tms),
            ivs: self.ivs.clone(),
            globals: self.globals.clone(),
        }
    }

    pub fn pop_iv(&self) -> Env {
        let mut ivs = (*self.ivs).clone();
        ivs.pop();
        Env {
            tms: self.tms.clone(),
            ivs: Rc::new(ivs),
            globals: self.globals.clone(),
        }
    }

    pub fn tm(&self, k: usize) -> Option<&V> {
        let n = self.tms.len();
        if k < n {
            Some(&self.tms[n - 1 - k])
        } else {
            None
        }
    }

    pub fn iv(&self, k: usize) -> Option<&IVal> {
        let n = self.ivs.len();
        if k < n {
            Some(&self.ivs[n - 1 - k])
        } else {
            None
        }
    }
}

#[derive(Clone, Debug)]
pub enum Val {
    Pi(Modality, V, Clo),
    Path(DClo, V, V),
    Modal(Modality, V),
    Sigma(V, Clo),
    Bool,
    Univ(u32),
    Lam(Clo),
    PLam(DClo),
    MkBox(Modality, V),
    Pair(V, V),
    True,
    False,
    /// A system none of whose faces holds yet. Used for both terms and
    /// types.
    Sys(Vec<(FVal, V)>),
    /// A neutral together with its type.
    Neu(Neu, V),
}

#[derive(Clone, Debug)]
pub enum Head {
    Var(VarId),
    Const(String),
    /// Composition in a line that does not compute.
    Comp {
        line: DClo,
        phi: FVal,
        tube: DClo,
        cap: V,
    },
}

#[derive(Clone, Debug)]
pub enum Elim {
    App {
        mu: Modality,
        arg: V,
        dom: V,
    },
    PApp(IVal),
    LetMod {
        mu: Modality,
        nu: Modality,
        inner: V,
        motive: Clo,
        branch: Clo,
    },
    If {
        motive: Clo,
        then_: V,
        else_: V,
    },
    Fst,
    Snd,
}

/// A head applied to a spine of eliminators. `head_ty` is the type of the
/// bare head, so the spine can be replayed after a dimension substitution.
#[derive(Clone, Debug)]
pub struct Neu {
    pub head: Head,
    pub head_ty: V,
    pub spine: Vec<Elim>,
}

impl Neu {
    pub fn new(head: Head, head_ty: V) -> Neu {
        Neu {
            head,
            head_ty,
            spine: Vec::new(),
        }
    }

    pub fn push(&self, e: Elim) -> Neu {
        let mut spine = self.spine.clone();
        spine.push(e);
        Neu {
            head: self.head.clone(),
            head_ty: self.head_ty.clone(),
            spine,
        }
    }
}

/// A fresh neutral variable of the given type.
pub fn fresh_var(ty: V) -> (VarId, V) {
    let x = VarId::fresh();
    (x, Rc::new(Val::Neu(Neu::new(Head::Var(x), ty.clone()), ty)))
}

/// A finite substitution of interval values for dimensions.
pub type DimSubst = BTreeMap<Dim, IVal>;

pub fn subst_of_clause(c: &crate::interval::Clause<Dim>) -> DimSubst {
    c.iter()
        .map(|(d, b)| (*d, Interval::endpoint(*b)))
        .collect()
}

pub fn act_iv(s: &DimSubst, r: &IVal) -> IVal {
    r.bind(&mut |d| s.get(d).cloned().unwrap_or(Interval::Var(*d)))
        .simplify()
}

pub fn act_face(s: &DimSubst, phi: &FVal) -> FVal {
    if !phi.atoms().iter().any(|d| s.contains_key(d)) {
        return phi.clone();
    }
    phi.bind(&mut |d| s.get(d).cloned().unwrap_or(Interval::Var(*d)))
}

impl Env {
    pub fn act(&self, s: &DimSubst) -> Env {
        Env {
            tms: Rc::new(self.tms.iter().map(|v| crate::eval::act(s, v)).collect()),
            ivs: Rc::new(self.ivs.iter().map(|r| act_iv(s, r)).collect()),
            globals: self.globals.clone(),
        }
    }
}
