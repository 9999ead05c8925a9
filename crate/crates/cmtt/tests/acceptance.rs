//! The acceptance suite: one line per criterion, nonzero exit if any fails.

use std::path::Path;
use std::process::ExitCode;

use cmtt::driver::{Session, TheorySource};
use cmtt_kernel::golden::{self, Fixture};
use cmtt_kernel::mode_theory::ModeTheory;
use cmtt_kernel::typecheck::Options;
use cmtt_testkit::criteria::{self, Outcome};

fn read(rel: &str) -> Result<String, String> {
    let p = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join(rel);
    std::fs::read_to_string(&p).map_err(|e| format!("{}: {e}", p.display()))
}

/// The prelude plus the shipped library, checked under guarded.
fn library(th: &ModeTheory) -> Result<Session<'_>, String> {
    let mut s = Session::for_source(
        th,
        &TheorySource::Builtin("guarded".into()),
        Options::default(),
    );
    for f in ["stdlib/paths.cmtt", "stdlib/guarded.cmtt"] {
        if let Some(d) = s.check_source(&read(f)?).first() {
            return Err(format!(
                "{f}: {} [{}] {}",
                d.decl.as_deref().unwrap_or("?"),
                d.rule,
                d.message
            ));
        }
    }
    s.recheck_strict()
        .map_err(|(n, e)| format!("strict re-check of {n}: {e}"))?;
    Ok(s)
}

fn checks(s: &Session, tele: &str, ty: &str, e: &str) -> Result<(), String> {
    s.check_in("t", tele, ty, e)
        .map(drop)
        .map_err(|d| format!("{e} : {ty} rejected: [{}] {}", d.rule, d.message))
}

fn equal(s: &Session, tele: &str, ty: &str, a: &str, b: &str) -> Result<(), String> {
    match s.equal_in("t", tele, ty, a, b) {
        Ok(true) => Ok(()),
        Ok(false) => Err(format!("{a} and {b} are not convertible")),
        Err(d) => Err(format!("[{}] {}", d.rule, d.message)),
    }
}

fn reduces_to(s: &Session, tele: &str, ty: &str, e: &str, want: &str) -> Result<(), String> {
    let nfs = s.normalize_in("t", tele, ty, e).map_err(|d| d.message)?;
    if nfs.iter().all(|n| n == want) {
        Ok(())
    } else {
        Err(format!("{e} normalizes to {nfs:?}, expected {want}"))
    }
}

fn golden_rules() -> Outcome {
    let f = Fixture::default();
    let missing = golden::missing();
    if !missing.is_empty() {
        return Err(format!("rules without golden cases: {missing:?}"));
    }
    let failures = golden::run_all(&f);
    if let Some(x) = failures.first() {
        return Err(format!(
            "{} failing cases, first {} ({:?}): {}",
            failures.len(),
            x.rule,
            x.polarity,
            x.detail
        ));
    }
    Ok(format!(
        "{} cases, every rule covered",
        golden::cases().len()
    ))
}

const PATHS: &str = "(A : U) (a b c : A) (p : Path A a b) (q : Path A b c)";

fn transitivity() -> Outcome {
    let th = ModeTheory::guarded();
    let s = library(&th)?;
    let composite = "trans A a b c p q";
    checks(&s, PATHS, "Path A a c", composite)?;
    reduces_to(&s, PATHS, "A", &format!("{composite} @ 0"), "a")?;
    reduces_to(&s, PATHS, "A", &format!("{composite} @ 1"), "c")?;
    let nf = s.normalize_decl("trans_refl_refl").map_err(|d| d.message)?;
    let shown = s.show_tm(&nf);
    if !shown.starts_with('<') {
        return Err(format!("trans_refl_refl normalizes to {shown}"));
    }
    Ok(format!(
        "trans p q : Path A a c with endpoints a and c; trans_refl_refl ⇝ {shown}"
    ))
}

const MOD_EXT: &str = "(ℓ | A : U) (ℓ | a b : A)";

fn mod_ext() -> Outcome {
    let th = ModeTheory::guarded();
    let s = library(&th)?;
    let m = format!("{MOD_EXT} (m : ⟨ℓ | Path A a b⟩)");
    let q = format!("{MOD_EXT} (q : Path ⟨ℓ | A⟩ (box_ℓ a) (box_ℓ b))");
    checks(&s, &m, "Path ⟨ℓ | A⟩ (box_ℓ a) (box_ℓ b)", "ModExt A a b m")?;
    checks(&s, &q, "⟨ℓ | Path A a b⟩", "ModExtInv A a b q")?;
    checks(
        &s,
        &m,
        "Path ⟨ℓ | Path A a b⟩ (ModExtInv A a b (ModExt A a b m)) m",
        "ModExtInv_ModExt A a b m",
    )?;
    checks(
        &s,
        &q,
        "Path (Path ⟨ℓ | A⟩ (box_ℓ a) (box_ℓ b)) (ModExt A a b (ModExtInv A a b q)) q",
        "ModExt_ModExtInv A a b q",
    )?;
    equal(
        &s,
        "(ℓ | A : U) (ℓ | c : A)",
        "Path ⟨ℓ | A⟩ (box_ℓ c) (box_ℓ c)",
        "ModExt A c c (box_ℓ (refl A c))",
        "refl ⟨ℓ | A⟩ (box_ℓ c)",
    )?;
    Ok(
        "ModExt, ModExtInv and both inverse paths check; ModExt on refl is refl by conversion"
            .into(),
    )
}

fn lob_uniqueness() -> Outcome {
    let th = ModeTheory::guarded();
    let s = library(&th)?;
    let tele = "(A : U) (M : ▷ A → A)";
    equal(&s, tele, "A", "lob A M", "M (next (lob A M))")?;
    checks(
        &s,
        tele,
        "(x : A) → Path A (M (next x)) x → Path A (lob A M) x",
        "lob_unique A M",
    )?;
    Ok("lob_unique checks, lob A M ≡ M (next (lob A M))".into())
}

fn negative_suite() -> Outcome {
    let th = ModeTheory::guarded();
    let cases = [
        ("bad/lock_mismatch.cmtt", "term/var"),
        ("bad/non_cover.cmtt", "term/sys-bin"),
        ("bad/overlap.cmtt", "term/sys-bin"),
        ("bad/comp_boundary.cmtt", "term/comp"),
        ("bad/mode_mismatch.cmtt", "type/mod"),
    ];
    for (file, rule) in cases {
        let mut s = Session::for_source(
            &th,
            &TheorySource::Builtin("guarded".into()),
            Options::default(),
        );
        let diags = s.check_source(&read(file)?);
        match diags.as_slice() {
            [d] if d.rule == rule => {}
            [d] => {
                return Err(format!(
                    "{file}: expected {rule}, got {} ({})",
                    d.rule, d.message
                ))
            }
            ds => return Err(format!("{file}: expected one diagnostic, got {}", ds.len())),
        }
    }
    Ok(format!(
        "{} programs rejected with the expected rule",
        cases.len()
    ))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("golden rules", golden_rules),
        ("interval and face algebra", criteria::algebra),
        ("mode theory laws", criteria::mode_g),
        ("modal composition", || criteria::comp_mod(1000, 0x5eed)),
        ("path transitivity", transitivity),
        ("modal extensionality", mod_ext),
        ("Löb uniqueness", lob_uniqueness),
        ("negative suite", negative_suite),
        ("structural properties", || {
            criteria::structural(1000, 0xc0ffee)
        }),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} [{name}]: PASS ({detail})", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} [{name}]: FAIL ({why})", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
