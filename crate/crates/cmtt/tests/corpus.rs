//! The shipped library checks, and its elaborated core re-checks with a
//! kernel that fills nothing in.

use std::path::{Path, PathBuf};

use cmtt::driver::{Session, TheorySource};
use cmtt::parser::parse_module;
use cmtt_kernel::mode_theory::ModeTheory;
use cmtt_kernel::typecheck::Options;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn read(rel: &str) -> String {
    std::fs::read_to_string(root().join(rel)).unwrap()
}

fn guarded_session(th: &ModeTheory, opts: Options) -> Session<'_> {
    Session::for_source(th, &TheorySource::Builtin("guarded".into()), opts)
}

#[test]
fn stdlib_checks_and_rechecks() {
    let th = ModeTheory::guarded();
    for strict_mod_eq in [false, true] {
        let mut s = guarded_session(
            &th,
            Options {
                strict_mod_eq,
                ..Options::default()
            },
        );
        for f in ["stdlib/paths.cmtt", "stdlib/guarded.cmtt"] {
            let diags = s.check_source(&read(f));
            assert!(diags.is_empty(), "{f}: {diags:?}");
        }
        let n = s
            .recheck_strict()
            .unwrap_or_else(|(d, e)| panic!("{d}: {e}"));
        assert!(n > 30, "only {n} declarations");
    }
}

#[test]
fn every_stdlib_declaration_is_present() {
    let th = ModeTheory::guarded();
    let mut s = guarded_session(&th, Options::default());
    s.check_source(&read("stdlib/paths.cmtt"));
    s.check_source(&read("stdlib/guarded.cmtt"));
    let names: Vec<_> = s.checker.checked().iter().map(|c| c.name.clone()).collect();
    for want in [
        "□",
        "refl",
        "trans",
        "funext",
        "funext_s",
        "Later'",
        "next'",
        "zapp'",
        "ModExt",
        "ModExtInv",
        "ModExtInv_ModExt",
        "ModExt_ModExtInv",
        "ModExt_refl",
        "lob",
        "lob_unique",
        "□later_iso",
        "trans_refl_refl",
    ] {
        assert!(names.iter().any(|n| n == want), "{want} missing");
    }
}

#[test]
fn negative_corpus_names_the_rule() {
    let th = ModeTheory::guarded();
    for (file, rule) in [
        ("bad/lock_mismatch.cmtt", "term/var"),
        ("bad/non_cover.cmtt", "term/sys-bin"),
        ("bad/overlap.cmtt", "term/sys-bin"),
        ("bad/comp_boundary.cmtt", "term/comp"),
        ("bad/mode_mismatch.cmtt", "type/mod"),
    ] {
        let mut s = guarded_session(&th, Options::default());
        let diags = s.check_source(&read(file));
        assert_eq!(diags.len(), 1, "{file}: {diags:?}");
        assert_eq!(diags[0].rule, rule, "{file}");
        assert_eq!(diags[0].decl.as_deref(), Some("bad"));
    }
}

#[test]
fn generator_aliases_elaborate_alike() {
    let th = ModeTheory::guarded();
    let cores: Vec<String> = [
        "def f (d∘g | A : U) (u : ⟨d | ⟨g | A⟩⟩) : ⟨δ | ⟨γ | Later A⟩⟩ := \
         let box_d x = u in let lock_d box_g y = x in box_d (box_g (box_l y))",
        "def f (δ∘γ | A : U) (u : ⟨δ | ⟨γ | A⟩⟩) : ⟨δ | ⟨γ | ▷ A⟩⟩ := \
         let box_δ x = u in let 𝐒_δ box_γ y = x in box_δ (box_γ (box_ℓ y))",
    ]
    .iter()
    .map(|src| {
        let mut s = guarded_session(&th, Options::default());
        let diags = s.check_source(src);
        assert!(diags.is_empty(), "{src}: {diags:?}");
        s.dump(s.checker.checked().last().unwrap())
    })
    .collect();
    assert_eq!(cores[0], cores[1]);
}

#[test]
fn failed_declarations_leave_no_global() {
    let th = ModeTheory::guarded();
    let mut s = guarded_session(&th, Options::default());
    let diags = s.check_source("def a : Bool := Bool\ndef b : Bool := a");
    assert_eq!(diags.len(), 2);
    assert_eq!(diags[1].rule, "scope");
}

#[test]
fn mode_annotations_select_the_mode() {
    let th = ModeTheory::guarded();
    let mut s = guarded_session(&th, Options::default());
    let diags = s.check_source("def b @ s : Bool := true\ndef c : Bool := b");
    assert_eq!(diags.len(), 1);
    assert_eq!(diags[0].rule, "term/var");
}

#[test]
fn trivial_theory_runs_without_prelude() {
    let th = ModeTheory::trivial();
    let src = TheorySource::Builtin("trivial".into());
    assert!(!src.wants_prelude());
    let mut s = Session::for_source(&th, &src, Options::default());
    let m = parse_module(
        "import modes trivial\n\
         def id (A : U) (x : A) : A := x\n\
         def refl' (A : U) (x : A) : Path A x x := <i> x\n\
         def u (x : ⟨1_m | Bool⟩) : Bool := let box_1_m y = x in y",
    )
    .unwrap();
    let diags = s.check_module(&m);
    assert!(diags.is_empty(), "{diags:?}");
    s.recheck_strict().unwrap();
}

#[test]
fn queries_are_not_vacuous() {
    let th = ModeTheory::guarded();
    let mut s = guarded_session(&th, Options::default());
    assert!(s.check_source(&read("stdlib/guarded.cmtt")).is_empty());
    let tele = "(A : U) (M : ▷ A → A) (x : A)";
    assert!(s
        .equal_in("t", tele, "A", "lob A M", "M (next (lob A M))")
        .unwrap());
    assert!(!s.equal_in("t", tele, "A", "lob A M", "x").unwrap());
    assert!(!s.equal_in("t", tele, "A", "M (next x)", "x").unwrap());
    let m = "(ℓ | A : U) (ℓ | c : A)";
    assert!(!s
        .equal_in(
            "t",
            m,
            "⟨ℓ | Path A c c⟩",
            "ModExtInv A c c (<j> box_ℓ c)",
            "box_ℓ (<j> c)"
        )
        .unwrap());
    assert!(s
        .check_in("t", tele, "Path A (lob A M) x", "<i> x")
        .is_err());
}
