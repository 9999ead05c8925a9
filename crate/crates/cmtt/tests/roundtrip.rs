//! parse ∘ print ∘ parse = parse, on the shipped corpus and on random trees.

use std::path::Path;

use cmtt::ast::*;
use cmtt::parser::{parse_expr, parse_module};
use cmtt::printer;
use proptest::prelude::*;

fn sp() -> Span {
    Span::default()
}

fn e(kind: ExprKind) -> Expr {
    Expr::new(kind, sp())
}

fn bx(x: Expr) -> Box<Expr> {
    Box::new(x)
}

fn name() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["x", "y", "f", "A", "p", "x'"]).prop_map(str::to_owned)
}

fn ivar() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["i", "j", "k"]).prop_map(str::to_owned)
}

fn modality() -> impl Strategy<Value = ModExpr> {
    prop::sample::select(vec![
        vec!["ℓ"],
        vec!["γ"],
        vec!["δ"],
        vec!["δ", "γ"],
        vec!["ℓ", "ℓ"],
    ])
    .prop_map(|ps| ModExpr {
        parts: ps.into_iter().map(str::to_owned).collect(),
        span: sp(),
    })
}

fn interval() -> impl Strategy<Value = IExpr> {
    let leaf = prop_oneof![
        Just(IExpr::Zero),
        Just(IExpr::One),
        ivar().prop_map(|i| IExpr::Var(i, sp())),
    ];
    leaf.prop_recursive(4, 16, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|r| IExpr::Neg(Box::new(r))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| IExpr::Meet(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| IExpr::Join(Box::new(a), Box::new(b))),
            (inner, modality()).prop_map(|(r, m)| IExpr::Exc(Box::new(r), m)),
        ]
    })
}

fn face() -> impl Strategy<Value = FExpr> {
    let leaf = prop_oneof![
        Just(FExpr::Top),
        Just(FExpr::Bot),
        interval().prop_map(FExpr::Eq0),
        interval().prop_map(FExpr::Eq1),
    ];
    leaf.prop_recursive(3, 8, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| FExpr::Meet(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| FExpr::Join(Box::new(a), Box::new(b))),
        ]
    })
}

fn motive(t: BoxedStrategy<Expr>) -> impl Strategy<Value = Option<Motive>> {
    prop::option::of((name(), t).prop_map(|(var, ty)| Motive { var, ty: bx(ty) }))
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        name().prop_map(|x| e(ExprKind::Var(x))),
        (0u32..3).prop_map(|n| e(ExprKind::Univ(n))),
        Just(e(ExprKind::Bool)),
        Just(e(ExprKind::True)),
        Just(e(ExprKind::False)),
    ];
    leaf.prop_recursive(4, 40, 4, |inner| {
        let t = inner.clone().boxed();
        let sys = prop::collection::vec((face(), t.clone()), 0..3).boxed();
        prop_oneof![
            (
                prop::option::of(modality()),
                prop::option::of(name()),
                t.clone(),
                t.clone()
            )
                .prop_map(|(modality, name, dom, cod)| e(ExprKind::Pi {
                    // a modal domain is always written in a binder group
                    name: name.or_else(|| modality.as_ref().map(|_| "x".to_owned())),
                    modality,
                    dom: bx(dom),
                    cod: bx(cod),
                })),
            (prop::option::of(name()), t.clone(), t.clone()).prop_map(|(name, fst, snd)| e(
                ExprKind::Sigma {
                    name,
                    fst: bx(fst),
                    snd: bx(snd),
                }
            )),
            (name(), t.clone()).prop_map(|(x, b)| e(ExprKind::Lam(x, bx(b)))),
            (t.clone(), t.clone()).prop_map(|(f, a)| e(ExprKind::App(bx(f), bx(a)))),
            (t.clone(), t.clone(), t.clone()).prop_map(|(l, a, b)| e(ExprKind::Path(
                bx(l),
                bx(a),
                bx(b)
            ))),
            (ivar(), t.clone()).prop_map(|(i, b)| e(ExprKind::PLam(i, bx(b)))),
            (t.clone(), interval()).prop_map(|(p, r)| e(ExprKind::PApp(bx(p), r))),
            (modality(), t.clone()).prop_map(|(m, a)| e(ExprKind::Modal(m, bx(a)))),
            t.clone().prop_map(|a| e(ExprKind::Later(bx(a)))),
            t.clone().prop_map(|a| e(ExprKind::Next(bx(a)))),
            (t.clone(), t.clone()).prop_map(|(f, a)| e(ExprKind::Zapp(bx(f), bx(a)))),
            (modality(), t.clone()).prop_map(|(m, a)| e(ExprKind::MkBox(m, bx(a)))),
            (
                prop::option::of(modality()),
                modality(),
                name(),
                t.clone(),
                motive(t.clone()),
                t.clone()
            )
                .prop_map(|(lock, nu, name, scrut, motive, body)| e(
                    ExprKind::LetBox {
                        lock,
                        nu,
                        name,
                        scrut: bx(scrut),
                        motive,
                        body: bx(body),
                    }
                )),
            (t.clone(), motive(t.clone()), t.clone(), t.clone()).prop_map(
                |(scrut, motive, a, b)| e(ExprKind::If {
                    scrut: bx(scrut),
                    motive,
                    then_: bx(a),
                    else_: bx(b),
                })
            ),
            sys.clone().prop_map(|bs| e(ExprKind::Sys(bs))),
            (ivar(), t.clone(), sys, t.clone()).prop_map(|(var, line, branches, cap)| e(
                ExprKind::Comp {
                    var,
                    line: bx(line),
                    branches,
                    cap: bx(cap),
                }
            )),
            (t.clone(), t.clone()).prop_map(|(a, b)| e(ExprKind::Pair(bx(a), bx(b)))),
            t.clone().prop_map(|a| e(ExprKind::Fst(bx(a)))),
            t.clone().prop_map(|a| e(ExprKind::Snd(bx(a)))),
            (t.clone(), t).prop_map(|(a, b)| e(ExprKind::Ann(bx(a), bx(b)))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn printed_trees_reparse(a in expr()) {
        let printed = printer::expr(&a);
        let b = parse_expr(&printed).map_err(|d| TestCaseError::fail(format!("{printed}: {}", d.message)))?;
        prop_assert_eq!(&a, &b, "{}", printed);
    }
}

fn corpus() -> Vec<std::path::PathBuf> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../..");
    let mut out = Vec::new();
    for dir in ["stdlib", "bad"] {
        for entry in std::fs::read_dir(root.join(dir)).unwrap() {
            let p = entry.unwrap().path();
            if p.extension().is_some_and(|x| x == "cmtt") {
                out.push(p);
            }
        }
    }
    out.sort();
    out
}

#[test]
fn corpus_round_trips() {
    let files = corpus();
    assert!(files.len() >= 8);
    for f in files {
        let src = std::fs::read_to_string(&f).unwrap();
        let a = parse_module(&src).unwrap_or_else(|d| panic!("{}: {}", f.display(), d.message));
        let printed = printer::module(&a);
        let b = parse_module(&printed)
            .unwrap_or_else(|d| panic!("{}: {}\n{printed}", f.display(), d.message));
        assert_eq!(a, b, "{}", f.display());
    }
}

#[test]
fn ascii_spellings_parse_like_unicode() {
    let pairs = [
        ("Later A -> A", "▷ A → A"),
        ("f zapp a zapp b", "f ⊛ a ⊛ b"),
        ("lock_δ box_γ x = e", "𝐒_δ box_γ x = e"),
        ("\\ x. p @ (i /\\ ~j)", "λ x. p @ (i ∧ ¬j)"),
        ("<ℓ | A> * B", "⟨ℓ | A⟩ × B"),
        ("[ (i = 0) |-> a | top |-> b ]", "[(i = 0) ↦ a | ⊤ ↦ b]"),
    ];
    for (ascii, uni) in pairs {
        let (ascii, uni) = if ascii.starts_with("lock_") {
            (format!("let {ascii} in x"), format!("let {uni} in x"))
        } else {
            (ascii.to_owned(), uni.to_owned())
        };
        assert_eq!(
            parse_expr(&ascii).unwrap(),
            parse_expr(&uni).unwrap(),
            "{ascii}"
        );
    }
}
