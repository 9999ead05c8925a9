#![allow(clippy::result_large_err)]

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cmtt::ast::Span;
use cmtt::diag::{Diagnostic, Severity};
use cmtt::driver::{imports_of, resolve_theory, ConfigError, Session, Source, TheorySource};
use cmtt_kernel::typecheck::Options;

#[derive(Parser)]
#[command(
    name = "cmtt",
    version,
    about = "Checker for cubical multimodal type theory"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Type-check files in order, as one job.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Check a file and print the normal form of one declaration.
    Normalize {
        file: PathBuf,
        #[arg(long)]
        decl: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// `guarded`, `trivial`, or a path to a mode-theory file.
    #[arg(long = "mode-theory")]
    mode_theory: Option<String>,
    /// Emit diagnostics as JSON, one object per line.
    #[arg(long)]
    json: bool,
    /// Print the elaborated core of every declaration.
    #[arg(long = "dump-core")]
    dump_core: bool,
    /// Turn off the η rule for modal types in conversion.
    #[arg(long = "strict-mod-eq")]
    strict_mod_eq: bool,
    /// Do not load the prelude.
    #[arg(long = "no-prelude")]
    no_prelude: bool,
    /// Re-check the elaborated core with a kernel that infers nothing.
    #[arg(long)]
    recheck: bool,
}

const OK: u8 = 0;
const TYPE_ERROR: u8 = 1;
const CONFIG_ERROR: u8 = 2;
const RESOURCE: u8 = 3;

fn report(d: &Diagnostic, file: &str, src: &str, json: bool) {
    if json {
        println!("{}", d.to_json(file, src));
    } else {
        eprintln!("{}", d.render(file, src));
    }
}

fn config_error(e: ConfigError, json: bool) -> ExitCode {
    if json {
        let d = Diagnostic::new("config", Span::default(), e.0.clone());
        println!("{}", d.to_json("", ""));
    } else {
        eprintln!("error [config]: {}", e.0);
    }
    ExitCode::from(CONFIG_ERROR)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (files, common, target) = match cli.cmd {
        Cmd::Check { files, common } => (files, common, None),
        Cmd::Normalize { file, decl, common } => (vec![file], common, Some(decl)),
    };
    match run(&files, &common, target.as_deref()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => config_error(e, common.json),
    }
}

fn run(files: &[PathBuf], common: &Common, target: Option<&str>) -> Result<u8, ConfigError> {
    let sources = files
        .iter()
        .map(|f| Source::read(f))
        .collect::<Result<Vec<_>, _>>()?;
    let flag = common
        .mode_theory
        .as_deref()
        .map(|s| TheorySource::from_spec(s, Path::new("."), false));
    let mut imports = Vec::new();
    for s in &sources {
        if let Some(m) = &s.module {
            imports.extend(imports_of(m, &s.path));
        }
    }
    let source = resolve_theory(flag.as_ref(), &imports)?;
    let theory = source.load()?;
    let opts = Options {
        strict_mod_eq: common.strict_mod_eq,
        ..Options::default()
    };
    let mut session = if common.no_prelude {
        Session::new(&theory, opts)
    } else {
        Session::for_source(&theory, &source, opts)
    };
    let preloaded = session.checker.checked().len();

    let mut worst = OK;
    for s in &sources {
        let name = s.name();
        let diags = match (&s.module, &s.parse_error) {
            (Some(m), _) => session.check_module(m),
            (None, Some(e)) => vec![e.clone()],
            (None, None) => Vec::new(),
        };
        for d in &diags {
            report(d, &name, &s.text, common.json);
            let code = if d.severity == Severity::Resource {
                RESOURCE
            } else {
                TYPE_ERROR
            };
            worst = worst.max(code);
        }
    }

    if common.dump_core {
        for c in &session.checker.checked()[preloaded..] {
            println!("{}", session.dump(c));
        }
    }
    if common.recheck && worst == OK {
        if let Err((name, e)) = session.recheck_strict() {
            let mut d = Diagnostic::new(
                &e.rule,
                Span::default(),
                format!("strict re-check: {}", e.message),
            );
            d.decl = Some(name);
            report(&d, "", "", common.json);
            worst = TYPE_ERROR;
        }
    }

    if let Some(decl) = target {
        if worst != OK {
            return Ok(worst);
        }
        if session.checker.checked()[preloaded..]
            .iter()
            .all(|c| c.name != decl)
        {
            return Err(ConfigError(format!(
                "no declaration named {decl} in {}",
                sources[0].name()
            )));
        }
        match session.normalize_decl(decl) {
            Ok(nf) => {
                let text = session.show_tm(&nf);
                if common.json {
                    println!(
                        "{}",
                        serde_json::json!({ "decl": decl, "normal_form": text })
                    );
                } else {
                    println!("{text}");
                }
            }
            Err(d) => {
                let code = if d.severity == Severity::Resource {
                    RESOURCE
                } else {
                    TYPE_ERROR
                };
                report(
                    &d.in_decl(decl),
                    &sources[0].name(),
                    &sources[0].text,
                    common.json,
                );
                return Ok(code);
            }
        }
    } else if worst == OK && !common.json {
        let n = session.checker.checked().len() - preloaded;
        println!("ok: {n} declarations checked under {}", theory.name());
    }
    Ok(worst)
}
