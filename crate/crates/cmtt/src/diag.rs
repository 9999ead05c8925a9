use serde::Serialize;

use crate::ast::Span;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Severity {
    /// Parse, scope or type error.
    Error,
    /// A clause split or saturation bound was exceeded.
    Resource,
}

#[derive(Clone, Debug)]
pub struct Diagnostic {
    pub decl: Option<String>,
    pub rule: String,
    pub mode: Option<String>,
    pub clause: Option<String>,
    pub message: String,
    pub span: Span,
    pub severity: Severity,
}

impl Diagnostic {
    pub fn new(rule: &str, span: Span, message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            decl: None,
            rule: rule.to_owned(),
            mode: None,
            clause: None,
            message: message.into(),
            span,
            severity: Severity::Error,
        }
    }

    pub fn parse(span: Span, message: impl Into<String>) -> Diagnostic {
        Diagnostic::new("parse", span, message)
    }

    pub fn in_decl(mut self, name: &str) -> Diagnostic {
        self.decl.get_or_insert_with(|| name.to_owned());
        self
    }
}

/// A resolved source position, 1-based.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Location {
    pub file: String,
    pub line: usize,
    pub col: usize,
    pub end_line: usize,
    pub end_col: usize,
}

fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(src.len());
    let before = &src[..offset];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

pub fn locate(file: &str, src: &str, span: Span) -> Location {
    let (line, col) = line_col(src, span.start);
    let (end_line, end_col) = line_col(src, span.end);
    Location {
        file: file.to_owned(),
        line,
        col,
        end_line,
        end_col,
    }
}

#[derive(Serialize)]
pub struct JsonDiagnostic<'a> {
    pub decl: Option<&'a str>,
    pub rule: &'a str,
    pub mode: Option<&'a str>,
    pub clause: Option<&'a str>,
    pub message: &'a str,
    pub span: Location,
}

impl Diagnostic {
    pub fn to_json(&self, file: &str, src: &str) -> serde_json::Value {
        serde_json::to_value(JsonDiagnostic {
            decl: self.decl.as_deref(),
            rule: &self.rule,
            mode: self.mode.as_deref(),
            clause: self.clause.as_deref(),
            message: &self.message,
            span: locate(file, src, self.span),
        })
        .expect("diagnostics serialize")
    }

    pub fn render(&self, file: &str, src: &str) -> String {
        let loc = locate(file, src, self.span);
        let mut s = format!(
            "{}:{}:{}: error [{}]",
            loc.file, loc.line, loc.col, self.rule
        );
        if let Some(d) = &self.decl {
            s += &format!(" in {d}");
        }
        s += &format!(": {}", self.message);
        if let Some(m) = &self.mode {
            s += &format!("\n  at mode {m}");
        }
        if let Some(c) = self
            .clause
            .as_deref()
            .filter(|c| !c.is_empty() && *c != "⊤")
        {
            s += &format!(", in clause {c}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_are_one_based() {
        let src = "ab\ncdé f";
        let loc = locate("x", src, Span::new(src.find('f').unwrap(), src.len()));
        assert_eq!((loc.line, loc.col, loc.end_col), (2, 5, 6));
    }
}
