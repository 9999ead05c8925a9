use crate::ast::Span;
use crate::diag::Diagnostic;

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    Ident(String),
    Num(u32),
    Str(String),
    /// `box_μ`, carrying the modality text.
    BoxKw(String),
    /// `lock_μ` or `𝐒_μ`.
    LockKw(String),
    LParen,
    RParen,
    LBrack,
    RBrack,
    LAngle,
    RAngle,
    Lt,
    Gt,
    Comma,
    Colon,
    Assign,
    Eq,
    Dot,
    Arrow,
    Times,
    Lambda,
    At,
    Bar,
    MapsTo,
    Tilde,
    Meet,
    Join,
    Caret,
    Compose,
    Later,
    Zapp,
    Top,
    Bot,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Num(n) => format!("`{n}`"),
            Tok::Str(s) => format!("\"{s}\""),
            Tok::BoxKw(m) => format!("`box_{m}`"),
            Tok::LockKw(m) => format!("`lock_{m}`"),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", symbol(other)),
        }
    }
}

fn symbol(t: &Tok) -> &'static str {
    match t {
        Tok::LParen => "(",
        Tok::RParen => ")",
        Tok::LBrack => "[",
        Tok::RBrack => "]",
        Tok::LAngle => "⟨",
        Tok::RAngle => "⟩",
        Tok::Lt => "<",
        Tok::Gt => ">",
        Tok::Comma => ",",
        Tok::Colon => ":",
        Tok::Assign => ":=",
        Tok::Eq => "=",
        Tok::Dot => ".",
        Tok::Arrow => "→",
        Tok::Times => "×",
        Tok::Lambda => "λ",
        Tok::At => "@",
        Tok::Bar => "|",
        Tok::MapsTo => "↦",
        Tok::Tilde => "~",
        Tok::Meet => "∧",
        Tok::Join => "∨",
        Tok::Caret => "^",
        Tok::Compose => "∘",
        Tok::Later => "▷",
        Tok::Zapp => "⊛",
        Tok::Top => "⊤",
        Tok::Bot => "⊥",
        _ => "?",
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

pub fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\'' || c == '□'
}

fn is_ident_start(c: char) -> bool {
    (c.is_alphabetic() || c == '_' || c == '□') && c != 'λ'
}

const MODAL_PREFIXES: [(&str, bool); 3] = [("box_", true), ("lock_", false), ("𝐒_", false)];

pub fn lex(src: &str) -> Result<Vec<Token>, Diagnostic> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let at = |k: usize| chars.get(k).map(|p| p.1);
    let pos = |k: usize| chars.get(k).map_or(src.len(), |p| p.0);
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k].1;
        let start = pos(k);
        if c.is_whitespace() {
            k += 1;
            continue;
        }
        if c == '-' && at(k + 1) == Some('-') {
            while k < chars.len() && chars[k].1 != '\n' {
                k += 1;
            }
            continue;
        }
        if c == '{' && at(k + 1) == Some('-') {
            let mut depth = 0;
            loop {
                match (at(k), at(k + 1)) {
                    (Some('{'), Some('-')) => {
                        depth += 1;
                        k += 2;
                    }
                    (Some('-'), Some('}')) => {
                        depth -= 1;
                        k += 2;
                        if depth == 0 {
                            break;
                        }
                    }
                    (Some(_), _) => k += 1,
                    (None, _) => {
                        return Err(Diagnostic::parse(
                            Span::new(start, src.len()),
                            "unterminated block comment",
                        ))
                    }
                }
            }
            continue;
        }
        let mut push = |tok: Tok, len: usize, k: &mut usize| {
            out.push(Token {
                tok,
                span: Span::new(start, pos(*k + len)),
            });
            *k += len;
        };
        if c.is_ascii_digit() {
            let mut j = k;
            while at(j).is_some_and(|c| c.is_ascii_digit()) {
                j += 1;
            }
            if at(j) == Some('_') && at(j + 1).is_some_and(is_ident_char) {
                while at(j).is_some_and(is_ident_char) {
                    j += 1;
                }
                let text: String = chars[k..j].iter().map(|p| p.1).collect();
                push(Tok::Ident(text), j - k, &mut k);
            } else {
                let text: String = chars[k..j].iter().map(|p| p.1).collect();
                let n = text
                    .parse()
                    .map_err(|_| Diagnostic::parse(Span::new(start, pos(j)), "number too large"))?;
                push(Tok::Num(n), j - k, &mut k);
            }
            continue;
        }
        if is_ident_start(c) {
            let mut j = k;
            while at(j).is_some_and(is_ident_char) {
                j += 1;
            }
            let text: String = chars[k..j].iter().map(|p| p.1).collect();
            if let Some((prefix, is_box)) = MODAL_PREFIXES.iter().find(|(p, _)| text.starts_with(p))
            {
                let mut modality = text[prefix.len()..].to_owned();
                if modality.is_empty() && at(j) == Some('{') {
                    let mut e = j + 1;
                    while at(e).is_some_and(|c| c != '}') {
                        e += 1;
                    }
                    if at(e).is_none() {
                        return Err(Diagnostic::parse(
                            Span::new(start, src.len()),
                            "unterminated `{` in modality",
                        ));
                    }
                    modality = chars[j + 1..e]
                        .iter()
                        .map(|p| p.1)
                        .collect::<String>()
                        .trim()
                        .to_owned();
                    j = e + 1;
                } else {
                    while at(j) == Some('∘') && at(j + 1).is_some_and(is_ident_char) {
                        j += 1;
                        modality.push('∘');
                        while at(j).is_some_and(is_ident_char) {
                            modality.push(chars[j].1);
                            j += 1;
                        }
                    }
                }
                if modality.is_empty() {
                    return Err(Diagnostic::parse(
                        Span::new(start, pos(j)),
                        format!("missing modality after `{prefix}`"),
                    ));
                }
                let tok = if *is_box {
                    Tok::BoxKw(modality)
                } else {
                    Tok::LockKw(modality)
                };
                push(tok, j - k, &mut k);
            } else {
                push(Tok::Ident(text), j - k, &mut k);
            }
            continue;
        }
        if c == '"' {
            let mut j = k + 1;
            while at(j).is_some_and(|c| c != '"' && c != '\n') {
                j += 1;
            }
            if at(j) != Some('"') {
                return Err(Diagnostic::parse(
                    Span::new(start, pos(j)),
                    "unterminated string",
                ));
            }
            let text: String = chars[k + 1..j].iter().map(|p| p.1).collect();
            push(Tok::Str(text), j + 1 - k, &mut k);
            continue;
        }
        let two: String = chars[k..(k + 2).min(chars.len())]
            .iter()
            .map(|p| p.1)
            .collect();
        let three: String = chars[k..(k + 3).min(chars.len())]
            .iter()
            .map(|p| p.1)
            .collect();
        if three == "|->" {
            push(Tok::MapsTo, 3, &mut k);
            continue;
        }
        let tok2 = match two.as_str() {
            "->" => Some(Tok::Arrow),
            "=>" => Some(Tok::MapsTo),
            ":=" => Some(Tok::Assign),
            "/\\" => Some(Tok::Meet),
            "\\/" => Some(Tok::Join),
            _ => None,
        };
        if let Some(t) = tok2 {
            push(t, 2, &mut k);
            continue;
        }
        let tok1 = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBrack,
            ']' => Tok::RBrack,
            '⟨' => Tok::LAngle,
            '⟩' => Tok::RAngle,
            '<' => Tok::Lt,
            '>' => Tok::Gt,
            ',' => Tok::Comma,
            ':' => Tok::Colon,
            '=' => Tok::Eq,
            '.' => Tok::Dot,
            '→' => Tok::Arrow,
            '×' | '*' => Tok::Times,
            'λ' | '\\' => Tok::Lambda,
            '@' => Tok::At,
            '|' => Tok::Bar,
            '↦' => Tok::MapsTo,
            '~' | '¬' => Tok::Tilde,
            '∧' => Tok::Meet,
            '∨' => Tok::Join,
            '^' => Tok::Caret,
            '∘' => Tok::Compose,
            '▷' => Tok::Later,
            '⊛' => Tok::Zapp,
            '⊤' => Tok::Top,
            '⊥' => Tok::Bot,
            _ => {
                return Err(Diagnostic::parse(
                    Span::new(start, pos(k + 1)),
                    format!("unexpected character `{c}`"),
                ))
            }
        };
        push(tok1, 1, &mut k);
    }
    out.push(Token {
        tok: Tok::Eof,
        span: Span::new(src.len(), src.len()),
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        lex(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn modal_keywords() {
        assert_eq!(toks("box_ℓ x")[0], Tok::BoxKw("ℓ".into()));
        assert_eq!(toks("box_ℓ∘ℓ")[0], Tok::BoxKw("ℓ∘ℓ".into()));
        assert_eq!(toks("box_{l.l}")[0], Tok::BoxKw("l.l".into()));
        assert_eq!(toks("𝐒_δ")[0], Tok::LockKw("δ".into()));
        assert_eq!(toks("lock_1_t")[0], Tok::LockKw("1_t".into()));
        assert_eq!(toks("1_t")[0], Tok::Ident("1_t".into()));
    }

    #[test]
    fn ascii_and_unicode_agree() {
        assert_eq!(
            toks("λ x. a → b ↦ i ∧ j ∨ ¬k"),
            toks("\\ x. a -> b |-> i /\\ j \\/ ~k")
        );
        assert_eq!(toks("[i => a]"), toks("[i ↦ a]"));
    }

    #[test]
    fn comments_are_skipped() {
        assert_eq!(toks("a -- b\n{- c {- d -} -} e"), toks("a e"));
    }
}
