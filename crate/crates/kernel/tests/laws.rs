//! Algebraic laws of the interval, the face lattice and the guarded mode
//! theory, as properties over random inputs.

use cmtt_kernel::interval::{face_canon, face_entails, int_equal, Face, Interval};
use cmtt_kernel::mode_theory::{GenId, Modality, ModeId, ModeTheory};
use proptest::prelude::*;

type I = Interval<u8>;
type F = Face<u8>;

fn interval() -> impl Strategy<Value = I> {
    let leaf = prop_oneof![Just(I::Zero), Just(I::One), (0u8..3).prop_map(I::Var)];
    leaf.prop_recursive(5, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(I::neg),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| I::meet(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| I::join(a, b)),
        ]
    })
}

fn face() -> impl Strategy<Value = F> {
    let leaf = prop_oneof![
        Just(F::Top),
        Just(F::Bot),
        interval().prop_map(F::Eq0),
        interval().prop_map(F::Eq1),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| F::meet(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| F::join(a, b)),
        ]
    })
}

fn entails(a: &F, b: &F) -> bool {
    face_entails(&face_canon(a), b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn de_morgan_laws(r in interval(), s in interval(), t in interval()) {
        prop_assert!(int_equal(&I::meet(r.clone(), s.clone()), &I::meet(s.clone(), r.clone())));
        prop_assert!(int_equal(&I::join(r.clone(), s.clone()), &I::join(s.clone(), r.clone())));
        prop_assert!(int_equal(
            &I::meet(r.clone(), I::meet(s.clone(), t.clone())),
            &I::meet(I::meet(r.clone(), s.clone()), t.clone()),
        ));
        prop_assert!(int_equal(
            &I::meet(r.clone(), I::join(s.clone(), t.clone())),
            &I::join(I::meet(r.clone(), s.clone()), I::meet(r.clone(), t.clone())),
        ));
        prop_assert!(int_equal(&I::meet(r.clone(), I::join(r.clone(), s.clone())), &r));
        prop_assert!(int_equal(&I::neg(I::neg(r.clone())), &r));
        prop_assert!(int_equal(
            &I::neg(I::meet(r.clone(), s.clone())),
            &I::join(I::neg(r.clone()), I::neg(s.clone())),
        ));
        prop_assert!(int_equal(&I::meet(r.clone(), I::One), &r));
        prop_assert!(int_equal(&I::join(r.clone(), I::Zero), &r));
    }

    #[test]
    fn simplify_preserves_meaning(r in interval()) {
        prop_assert!(int_equal(&r.simplify(), &r));
        prop_assert!(r.simplify().depth() <= r.depth());
    }

    #[test]
    fn int_equal_is_an_equivalence(r in interval(), s in interval(), t in interval()) {
        prop_assert!(int_equal(&r, &r));
        prop_assert_eq!(int_equal(&r, &s), int_equal(&s, &r));
        if int_equal(&r, &s) && int_equal(&s, &t) {
            prop_assert!(int_equal(&r, &t));
        }
    }

    #[test]
    fn excluded_middle_fails_in_general(k in 0u8..3) {
        let x = I::Var(k);
        prop_assert!(!int_equal(&I::join(x.clone(), I::neg(x.clone())), &I::One));
    }

    #[test]
    fn entailment_is_a_preorder(a in face(), b in face(), c in face()) {
        prop_assert!(entails(&a, &a));
        if entails(&a, &b) && entails(&b, &c) {
            prop_assert!(entails(&a, &c));
        }
    }

    #[test]
    fn meet_and_join_are_bounds(a in face(), b in face()) {
        let m = F::meet(a.clone(), b.clone());
        let j = F::join(a.clone(), b.clone());
        prop_assert!(entails(&m, &a) && entails(&m, &b));
        prop_assert!(entails(&a, &j) && entails(&b, &j));
        prop_assert!(entails(&F::Bot, &a) && entails(&a, &F::Top));
    }

    #[test]
    fn canonical_form_is_stable(a in face()) {
        let c = face_canon(&a);
        prop_assert_eq!(face_canon(&c.to_face()), c.clone());
        prop_assert!(entails(&c.to_face(), &a) && entails(&a, &c.to_face()));
    }

    #[test]
    fn endpoint_faces_of_a_variable(k in 0u8..3) {
        let x = I::Var(k);
        prop_assert!(!entails(&F::Top, &F::Eq0(x.clone())));
        prop_assert!(entails(&F::meet(F::Eq0(x.clone()), F::Eq1(x.clone())), &F::Bot));
        prop_assert!(entails(&F::Eq0(x.clone()), &F::Eq1(I::neg(x))));
    }
}

/// A composable word from `dom`, steered by `choices`.
fn word(th: &ModeTheory, dom: ModeId, choices: &[u8]) -> Modality {
    let gens = th.generators();
    let mut w = Vec::new();
    let mut cur = dom;
    for c in choices {
        let fits: Vec<usize> = (0..gens.len()).filter(|&g| gens[g].dom == cur).collect();
        let g = fits[*c as usize % fits.len()];
        w.insert(0, GenId(g as u16));
        cur = gens[g].cod;
    }
    th.from_word(w, dom).unwrap()
}

fn mode(th: &ModeTheory, t: bool) -> ModeId {
    th.mode(if t { "t" } else { "s" }).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn composition_is_associative_and_unital(
        d in any::<bool>(),
        a in prop::collection::vec(any::<u8>(), 0..4),
        b in prop::collection::vec(any::<u8>(), 0..4),
        c in prop::collection::vec(any::<u8>(), 0..4),
    ) {
        let th = ModeTheory::guarded();
        let z = word(&th, mode(&th, d), &c);
        let y = word(&th, z.cod(), &b);
        let x = word(&th, y.cod(), &a);
        let left = th.compose(&th.compose(&x, &y).unwrap(), &z).unwrap();
        let right = th.compose(&x, &th.compose(&y, &z).unwrap()).unwrap();
        prop_assert!(th.mod_equal(&left, &right).unwrap());
        prop_assert_eq!(th.compose(&th.id(x.cod()), &x).unwrap(), x.clone());
        prop_assert_eq!(th.compose(&x, &th.id(x.dom())).unwrap(), x.clone());
    }

    #[test]
    fn normal_forms_are_fixed_points(d in any::<bool>(), a in prop::collection::vec(any::<u8>(), 0..8)) {
        let th = ModeTheory::guarded();
        let x = word(&th, mode(&th, d), &a);
        prop_assert_eq!(th.normalize_word(x.word().to_vec()).unwrap(), x.word().to_vec());
        for (lhs, _) in th.rules() {
            prop_assert!(!x.word().windows(lhs.len()).any(|w| w == lhs.as_slice()));
        }
    }

    #[test]
    fn cells_form_a_whiskered_preorder(
        d in any::<bool>(),
        a in prop::collection::vec(any::<u8>(), 0..4),
        b in prop::collection::vec(any::<u8>(), 0..4),
        c in prop::collection::vec(any::<u8>(), 0..4),
        w in prop::collection::vec(any::<u8>(), 0..3),
    ) {
        let th = ModeTheory::guarded();
        let dom = mode(&th, d);
        let x = word(&th, dom, &a);
        prop_assert!(th.cell_exists(&x, &x).unwrap());
        let y = word(&th, dom, &b);
        let z = word(&th, dom, &c);
        if x.cod() == y.cod() && y.cod() == z.cod() {
            let xy = th.cell_exists(&x, &y).unwrap();
            let yz = th.cell_exists(&y, &z).unwrap();
            if xy && yz {
                prop_assert!(th.cell_exists(&x, &z).unwrap());
            }
            if xy {
                let post = word(&th, x.cod(), &w);
                prop_assert!(th
                    .cell_exists(&th.compose(&post, &x).unwrap(), &th.compose(&post, &y).unwrap())
                    .unwrap());
            }
        }
    }
}
