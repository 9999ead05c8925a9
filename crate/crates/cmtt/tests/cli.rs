//! The command-line contract: exit codes, JSON diagnostics, normal forms.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn cmtt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmtt"))
        .current_dir(root())
        .args(args)
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&o.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap_or_else(|e| panic!("{l}: {e}")))
        .collect()
}

#[test]
fn stdlib_checks_under_guarded() {
    let o = cmtt(&["check", "stdlib/guarded.cmtt", "--mode-theory", "guarded"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("ok: "));
}

#[test]
fn several_files_form_one_job() {
    let o = cmtt(&[
        "check",
        "stdlib/paths.cmtt",
        "stdlib/guarded.cmtt",
        "--recheck",
        "--strict-mod-eq",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn lock_mismatch_reports_json() {
    let o = cmtt(&["check", "bad/lock_mismatch.cmtt", "--json"]);
    assert_eq!(code(&o), 1);
    let ds = json_lines(&o);
    assert_eq!(ds.len(), 1);
    let d = ds[0].as_object().unwrap();
    let mut keys: Vec<_> = d.keys().map(String::as_str).collect();
    keys.sort();
    assert_eq!(keys, ["clause", "decl", "message", "mode", "rule", "span"]);
    assert_eq!(d["rule"], "term/var");
    assert_eq!(d["decl"], "bad");
    assert_eq!(d["mode"], "t");
    assert_eq!(d["span"]["line"], 2);
}

#[test]
fn text_diagnostics_go_to_stderr() {
    let o = cmtt(&["check", "bad/overlap.cmtt"]);
    assert_eq!(code(&o), 1);
    assert!(o.stdout.is_empty());
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(
        err.contains("[term/sys-bin]") && err.contains("bad/overlap.cmtt:2:"),
        "{err}"
    );
}

#[test]
fn normalize_prints_a_path_abstraction() {
    let o = cmtt(&[
        "normalize",
        "stdlib/paths.cmtt",
        "--decl",
        "trans_refl_refl",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let out = String::from_utf8_lossy(&o.stdout);
    assert_eq!(out.trim(), "<i1> true");

    let o = cmtt(&[
        "normalize",
        "stdlib/paths.cmtt",
        "--decl",
        "trans_refl_refl",
        "--json",
    ]);
    let v = &json_lines(&o)[0];
    assert_eq!(v["decl"], "trans_refl_refl");
    assert_eq!(v["normal_form"], "<i1> true");
}

#[test]
fn dump_core_prints_every_declaration() {
    let o = cmtt(&["check", "stdlib/paths.cmtt", "--dump-core"]);
    assert_eq!(code(&o), 0);
    let out = String::from_utf8_lossy(&o.stdout);
    assert!(
        out.lines().any(|l| l.starts_with("trans_refl_refl @ t : ")),
        "{out}"
    );
}

#[test]
fn configuration_errors_exit_2() {
    for args in [
        &["normalize", "stdlib/paths.cmtt", "--decl", "nope"][..],
        &["check", "stdlib/guarded.cmtt", "--mode-theory", "trivial"],
        &[
            "check",
            "stdlib/paths.cmtt",
            "--mode-theory",
            "no/such/file.modes",
        ],
        &["check", "no/such/file.cmtt"],
    ] {
        let o = cmtt(args);
        assert_eq!(
            code(&o),
            2,
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
}

#[test]
fn custom_theory_and_resource_cap() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("tiny.modes"),
        "mode t;\ngen l : t -> t;\nbound 2;\n",
    )
    .unwrap();
    let ok = dir.path().join("ok.cmtt");
    std::fs::write(
        &ok,
        "import modes \"tiny.modes\"\ndef y (l | u : Bool) : ⟨l | Bool⟩ := box_l u\n",
    )
    .unwrap();
    let o = cmtt(&["check", ok.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));

    let capped = dir.path().join("capped.cmtt");
    std::fs::write(
        &capped,
        "import modes \"tiny.modes\"\ndef x (l∘l∘l | u : Bool) : Bool := u\n",
    )
    .unwrap();
    let o = cmtt(&["check", capped.to_str().unwrap(), "--json"]);
    assert_eq!(code(&o), 3);
    assert_eq!(json_lines(&o)[0]["rule"], "term/var");

    let o = cmtt(&[
        "check",
        ok.to_str().unwrap(),
        capped.to_str().unwrap(),
        "--mode-theory",
        "guarded",
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn parse_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("p.cmtt");
    std::fs::write(&f, "def a : Bool := [⊤ ↦ true\n").unwrap();
    let o = cmtt(&["check", f.to_str().unwrap(), "--json"]);
    assert_eq!(code(&o), 1);
    let d = &json_lines(&o)[0];
    assert_eq!(d["rule"], "parse");
    assert!(d["message"]
        .as_str()
        .unwrap()
        .contains("unbalanced system bracket"));
}
