//! Check jobs: one mode theory, a prelude, and a sequence of modules.

use std::path::{Path, PathBuf};

use cmtt_kernel::mode_theory::ModeTheory;
use cmtt_kernel::syntax::{sexp, Ctx, Tm, Ty};
use cmtt_kernel::typecheck::{Checked, Checker, DeclBody, ErrorKind, Options, TypeError};
use thiserror::Error;

use crate::ast::{Decl, Item, Module, Span};
use crate::diag::{Diagnostic, Severity};
use crate::elab::Elab;
use crate::parser::{parse_expr, parse_module, parse_telescope};
use crate::printer;
use crate::readback::Readback;

pub const PRELUDE: &str = include_str!("../../../stdlib/prelude.cmtt");

#[derive(Debug, Error)]
#[error("{0}")]
pub struct ConfigError(pub String);

/// Where a mode theory comes from; two requests agree iff they are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TheorySource {
    Builtin(String),
    File(PathBuf),
}

impl TheorySource {
    /// A builtin name, or a path resolved against `base`.
    pub fn from_spec(spec: &str, base: &Path, quoted: bool) -> TheorySource {
        if !quoted && ModeTheory::builtin(spec).is_some() {
            return TheorySource::Builtin(spec.to_owned());
        }
        let p = base.join(spec);
        TheorySource::File(p.canonicalize().unwrap_or(p))
    }

    pub fn load(&self) -> Result<ModeTheory, ConfigError> {
        match self {
            TheorySource::Builtin(n) => ModeTheory::builtin(n)
                .ok_or_else(|| ConfigError(format!("unknown mode theory {n}"))),
            TheorySource::File(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| {
                    ConfigError(format!("cannot read mode theory {}: {e}", p.display()))
                })?;
                let name = p.file_stem().and_then(|s| s.to_str()).unwrap_or("custom");
                ModeTheory::parse(name, &text)
                    .map_err(|e| ConfigError(format!("{}: {e}", p.display())))
            }
        }
    }

    pub fn wants_prelude(&self) -> bool {
        *self == TheorySource::Builtin("guarded".into())
    }
}

/// Picks the single theory a job runs under. Requests from the command
/// line and from `import modes` items must agree; the default is guarded.
pub fn resolve_theory(
    flag: Option<&TheorySource>,
    imports: &[(TheorySource, String)],
) -> Result<TheorySource, ConfigError> {
    let mut chosen: Option<(TheorySource, String)> =
        flag.map(|f| (f.clone(), "--mode-theory".to_owned()));
    for (src, origin) in imports {
        match &chosen {
            Some((c, o)) if c != src => {
                return Err(ConfigError(format!(
                    "conflicting mode theories: {} requests {:?}, {} requests {:?}",
                    o, c, origin, src
                )))
            }
            Some(_) => {}
            None => chosen = Some((src.clone(), origin.clone())),
        }
    }
    Ok(chosen.map_or_else(|| TheorySource::Builtin("guarded".into()), |c| c.0))
}

pub fn imports_of(m: &Module, file: &Path) -> Vec<(TheorySource, String)> {
    let dir = file.parent().unwrap_or(Path::new("."));
    m.items
        .iter()
        .filter_map(|it| match it {
            Item::ImportModes { theory, quoted, .. } => Some((
                TheorySource::from_spec(theory, dir, *quoted),
                file.display().to_string(),
            )),
            _ => None,
        })
        .collect()
}

fn from_type_error(e: TypeError, d: &Decl) -> Diagnostic {
    Diagnostic {
        decl: Some(d.name.clone()),
        rule: e.rule,
        mode: Some(e.mode),
        clause: Some(e.clause),
        message: e.message,
        span: d.span,
        severity: match e.kind {
            ErrorKind::Resource => Severity::Resource,
            ErrorKind::Type => Severity::Error,
        },
    }
}

fn query_error(e: TypeError) -> Diagnostic {
    let mut d = Diagnostic::new(&e.rule, Span::default(), e.message);
    d.mode = Some(e.mode);
    d.clause = Some(e.clause);
    if e.kind == ErrorKind::Resource {
        d.severity = Severity::Resource;
    }
    d
}

pub struct Session<'t> {
    pub theory: &'t ModeTheory,
    pub checker: Checker<'t>,
    pub elab: Elab<'t>,
}

impl<'t> Session<'t> {
    pub fn new(theory: &'t ModeTheory, opts: Options) -> Self {
        Session {
            theory,
            checker: Checker::new(theory, opts),
            elab: Elab::new(theory),
        }
    }

    /// A session for `source`, with the prelude loaded when it applies.
    pub fn for_source(theory: &'t ModeTheory, source: &TheorySource, opts: Options) -> Self {
        let mut s = Session::new(theory, opts);
        if source.wants_prelude() {
            let diags = s.check_source(PRELUDE);
            assert!(diags.is_empty(), "prelude fails to check: {diags:?}");
        }
        s
    }

    pub fn check_decl(&mut self, d: &Decl) -> Result<Checked, Diagnostic> {
        let core = self.elab.decl(d)?;
        match self.checker.check_decl(&core) {
            Ok(c) => Ok(c),
            Err(e) => {
                self.elab.globals.remove(&d.name);
                Err(from_type_error(e, d))
            }
        }
    }

    /// Checks every declaration, continuing past failures.
    pub fn check_module(&mut self, m: &Module) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        for it in &m.items {
            if let Item::Decl(d) = it {
                if let Err(e) = self.check_decl(d) {
                    out.push(e);
                }
            }
        }
        out
    }

    pub fn check_source(&mut self, src: &str) -> Vec<Diagnostic> {
        match parse_module(src) {
            Ok(m) => self.check_module(&m),
            Err(e) => vec![e],
        }
    }

    pub fn dump(&self, c: &Checked) -> String {
        let th = self.theory;
        let mut s = format!(
            "{} @ {} : {}",
            c.name,
            th.mode_name(c.mode),
            sexp(th, &c.ty)
        );
        if let Some(b) = &c.body {
            s += &format!("\n  := {}", sexp(th, b));
        }
        if let Some(u) = &c.unfold {
            s += &format!("\n  rewrite {}", sexp(th, u));
        }
        s
    }

    pub fn show_tm(&self, t: &Tm) -> String {
        printer::expr(&Readback::new(self.theory).tm(t))
    }

    pub fn normalize_decl(&self, name: &str) -> Result<Tm, Diagnostic> {
        self.checker.normalize_decl(name).map_err(query_error)
    }

    /// Whether `a` and `b` are judgmentally equal at `ty` over the
    /// telescope, e.g. `"(A : U) (x : A)"`.
    pub fn equal_in(
        &self,
        mode: &str,
        tele: &str,
        ty: &str,
        a: &str,
        b: &str,
    ) -> Result<bool, Diagnostic> {
        let (ctx, ty, es) = self.query(mode, tele, ty, &[a, b])?;
        self.checker
            .equal_in(&ctx, &ty, &es[0], &es[1])
            .map_err(query_error)
    }

    /// Normal forms of `e : ty` over the telescope, one per clause.
    pub fn normalize_in(
        &self,
        mode: &str,
        tele: &str,
        ty: &str,
        e: &str,
    ) -> Result<Vec<String>, Diagnostic> {
        let (ctx, ty, es) = self.query(mode, tele, ty, &[e])?;
        let nfs = self
            .checker
            .normalize_in(&ctx, &es[0], &ty)
            .map_err(query_error)?;
        let names = parse_telescope(tele)?
            .into_iter()
            .map(|p| p.name)
            .collect::<Vec<_>>();
        Ok(nfs
            .iter()
            .map(|t| printer::expr(&Readback::with_names(self.theory, names.clone()).tm(t)))
            .collect())
    }

    /// Checks `e` against `ty` over the telescope.
    pub fn check_in(&self, mode: &str, tele: &str, ty: &str, e: &str) -> Result<Tm, Diagnostic> {
        let (ctx, ty, es) = self.query(mode, tele, ty, &[e])?;
        self.checker
            .check_in(&ctx, &es[0], &ty)
            .map_err(query_error)
    }

    fn query(
        &self,
        mode: &str,
        tele: &str,
        ty: &str,
        es: &[&str],
    ) -> Result<(Ctx, Ty, Vec<Tm>), Diagnostic> {
        let mode = self.elab.resolve_mode(Some(mode), Span::default())?;
        let params = parse_telescope(tele)?;
        let (ctx, sc) = self.elab.telescope(mode, &params)?;
        let ty = self.elab.ty_in(&sc, &parse_expr(ty)?)?;
        let mut out = Vec::new();
        for e in es {
            out.push(self.elab.tm_in(&sc, &parse_expr(e)?)?);
        }
        Ok((ctx, ty, out))
    }

    /// Re-checks every elaborated declaration with a fresh kernel that
    /// fills nothing in.
    pub fn recheck_strict(&self) -> Result<usize, (String, TypeError)> {
        let mut opts = self.checker.opts.clone();
        opts.strict_annotations = true;
        let mut k = Checker::new(self.theory, opts);
        for c in self.checker.checked() {
            let body = match (&c.body, &c.unfold) {
                (Some(b), _) => DeclBody::Def(b.clone()),
                (None, u) => DeclBody::Axiom { unfold: u.clone() },
            };
            let d = cmtt_kernel::typecheck::Decl {
                name: c.name.clone(),
                mode: c.mode,
                ty: c.ty.clone(),
                body,
            };
            k.check_decl(&d).map_err(|e| (c.name.clone(), e))?;
        }
        Ok(self.checker.checked().len())
    }
}

/// A parsed input file.
pub struct Source {
    pub path: PathBuf,
    pub text: String,
    pub module: Option<Module>,
    pub parse_error: Option<Diagnostic>,
}

impl Source {
    pub fn read(path: &Path) -> Result<Source, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
        Ok(Source::from_text(path, text))
    }

    pub fn from_text(path: &Path, text: String) -> Source {
        let (module, parse_error) = match parse_module(&text) {
            Ok(m) => (Some(m), None),
            Err(e) => (None, Some(e)),
        };
        Source {
            path: path.to_owned(),
            text,
            module,
            parse_error,
        }
    }

    pub fn name(&self) -> String {
        self.path.display().to_string()
    }
}
