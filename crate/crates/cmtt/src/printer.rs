//! Pretty printer for surface syntax; its output parses back to the same tree.

use std::fmt::Write;

use crate::ast::*;

#[derive(Clone, Copy, PartialEq, PartialOrd)]
enum Prec {
    Lowest,
    Arrow,
    Prod,
    Zapp,
    Prefix,
    App,
    Atom,
}

fn prec(e: &Expr) -> Prec {
    match &e.kind {
        ExprKind::Lam(..) | ExprKind::PLam(..) | ExprKind::LetBox { .. } | ExprKind::If { .. } => {
            Prec::Lowest
        }
        ExprKind::Pi { .. } => Prec::Arrow,
        ExprKind::Sigma { .. } => Prec::Prod,
        ExprKind::Zapp(..) => Prec::Zapp,
        ExprKind::Later(_)
        | ExprKind::Next(_)
        | ExprKind::MkBox(..)
        | ExprKind::Path(..)
        | ExprKind::Comp { .. } => Prec::Prefix,
        ExprKind::App(..) | ExprKind::PApp(..) => Prec::App,
        _ => Prec::Atom,
    }
}

pub fn expr(e: &Expr) -> String {
    let mut s = String::new();
    go(&mut s, e, Prec::Lowest);
    s
}

pub fn modality(m: &ModExpr) -> String {
    m.to_string()
}

fn mod_kw(prefix: &str, m: &ModExpr) -> String {
    if m.parts.len() == 1 {
        format!("{prefix}{}", m.parts[0])
    } else {
        format!("{prefix}{{{}}}", m.parts.join("∘"))
    }
}

/// A non-dependent domain. An annotation would print as a binder group,
/// so it gets a second pair of parentheses.
fn domain(s: &mut String, e: &Expr, min: Prec) {
    if matches!(e.kind, ExprKind::Ann(..)) {
        s.push('(');
        go(s, e, Prec::Lowest);
        s.push(')');
    } else {
        go(s, e, min);
    }
}

fn go(s: &mut String, e: &Expr, min: Prec) {
    if prec(e) < min {
        s.push('(');
        go(s, e, Prec::Lowest);
        s.push(')');
        return;
    }
    match &e.kind {
        ExprKind::Var(x) => s.push_str(x),
        ExprKind::Univ(0) => s.push('U'),
        ExprKind::Univ(n) => {
            let _ = write!(s, "U{n}");
        }
        ExprKind::Bool => s.push_str("Bool"),
        ExprKind::True => s.push_str("true"),
        ExprKind::False => s.push_str("false"),
        ExprKind::Pi {
            modality,
            name,
            dom,
            cod,
        } => {
            match (modality, name) {
                (None, None) => domain(s, dom, Prec::Prod),
                (m, n) => {
                    s.push('(');
                    if let Some(m) = m {
                        let _ = write!(s, "{m} | ");
                    }
                    if let Some(n) = n {
                        let _ = write!(s, "{n} : ");
                    }
                    go(s, dom, Prec::Lowest);
                    s.push(')');
                }
            }
            s.push_str(" → ");
            go(s, cod, Prec::Arrow);
        }
        ExprKind::Sigma { name, fst, snd } => {
            match name {
                None => domain(s, fst, Prec::Zapp),
                Some(n) => {
                    let _ = write!(s, "({n} : ");
                    go(s, fst, Prec::Lowest);
                    s.push(')');
                }
            }
            s.push_str(" × ");
            go(s, snd, Prec::Prod);
        }
        ExprKind::Lam(x, b) => {
            let _ = write!(s, "λ {x}. ");
            go(s, b, Prec::Lowest);
        }
        ExprKind::App(f, a) => {
            go(s, f, Prec::App);
            s.push(' ');
            go(s, a, Prec::Atom);
        }
        ExprKind::Path(a, x, y) => {
            s.push_str("Path");
            for t in [a, x, y] {
                s.push(' ');
                go(s, t, Prec::Atom);
            }
        }
        ExprKind::PLam(i, b) => {
            let _ = write!(s, "<{i}> ");
            go(s, b, Prec::Lowest);
        }
        ExprKind::PApp(p, r) => {
            go(s, p, Prec::App);
            s.push_str(" @ ");
            interval(s, r, 2);
        }
        ExprKind::Modal(m, a) => {
            let _ = write!(s, "⟨{m} | ");
            go(s, a, Prec::Lowest);
            s.push('⟩');
        }
        ExprKind::Later(a) => {
            s.push_str("▷ ");
            go(s, a, Prec::Prefix);
        }
        ExprKind::Next(a) => {
            s.push_str("next ");
            go(s, a, Prec::Prefix);
        }
        ExprKind::MkBox(m, a) => {
            s.push_str(&mod_kw("box_", m));
            s.push(' ');
            go(s, a, Prec::Prefix);
        }
        ExprKind::Zapp(f, a) => {
            go(s, f, Prec::Zapp);
            s.push_str(" ⊛ ");
            go(s, a, Prec::Prefix);
        }
        ExprKind::LetBox {
            lock,
            nu,
            name,
            scrut,
            motive,
            body,
        } => {
            s.push_str("let ");
            if let Some(l) = lock {
                s.push_str(&mod_kw("𝐒_", l));
                s.push(' ');
            }
            let _ = write!(s, "{} {name} = ", mod_kw("box_", nu));
            go(s, scrut, Prec::Lowest);
            print_motive(s, motive);
            s.push_str(" in ");
            go(s, body, Prec::Lowest);
        }
        ExprKind::If {
            scrut,
            motive,
            then_,
            else_,
        } => {
            s.push_str("if ");
            go(s, scrut, Prec::Lowest);
            print_motive(s, motive);
            s.push_str(" then ");
            go(s, then_, Prec::Lowest);
            s.push_str(" else ");
            go(s, else_, Prec::Lowest);
        }
        ExprKind::Sys(bs) => system(s, bs),
        ExprKind::Comp {
            var,
            line,
            branches,
            cap,
        } => {
            let _ = write!(s, "comp^{var} ");
            go(s, line, Prec::Atom);
            s.push(' ');
            system(s, branches);
            s.push(' ');
            go(s, cap, Prec::Atom);
        }
        ExprKind::Pair(a, b) => {
            s.push('(');
            go(s, a, Prec::Lowest);
            s.push_str(", ");
            go(s, b, Prec::Lowest);
            s.push(')');
        }
        ExprKind::Fst(a) => {
            go(s, a, Prec::Atom);
            s.push_str(".1");
        }
        ExprKind::Snd(a) => {
            go(s, a, Prec::Atom);
            s.push_str(".2");
        }
        ExprKind::Ann(a, t) => {
            s.push('(');
            go(s, a, Prec::Lowest);
            s.push_str(" : ");
            go(s, t, Prec::Lowest);
            s.push(')');
        }
    }
}

fn print_motive(s: &mut String, m: &Option<Motive>) {
    if let Some(m) = m {
        let _ = write!(s, " return {}. ", m.var);
        go(s, &m.ty, Prec::Lowest);
    }
}

fn system(s: &mut String, bs: &[(FExpr, Expr)]) {
    s.push('[');
    for (k, (phi, e)) in bs.iter().enumerate() {
        if k > 0 {
            s.push_str(" | ");
        }
        face(s, phi, 0);
        s.push_str(" ↦ ");
        go(s, e, Prec::Lowest);
    }
    s.push(']');
}

pub fn face_str(phi: &FExpr) -> String {
    let mut s = String::new();
    face(&mut s, phi, 0);
    s
}

fn face(s: &mut String, phi: &FExpr, min: u8) {
    let p = match phi {
        FExpr::Join(..) => 0,
        FExpr::Meet(..) => 1,
        _ => 2,
    };
    if p < min {
        s.push('(');
        face(s, phi, 0);
        s.push(')');
        return;
    }
    match phi {
        FExpr::Top => s.push('⊤'),
        FExpr::Bot => s.push('⊥'),
        FExpr::Eq0(r) | FExpr::Eq1(r) => {
            s.push('(');
            interval(s, r, 0);
            s.push_str(if matches!(phi, FExpr::Eq0(_)) {
                " = 0)"
            } else {
                " = 1)"
            });
        }
        FExpr::Meet(a, b) => {
            face(s, a, 1);
            s.push_str(" ∧ ");
            face(s, b, 2);
        }
        FExpr::Join(a, b) => {
            face(s, a, 0);
            s.push_str(" ∨ ");
            face(s, b, 1);
        }
    }
}

pub fn interval_str(r: &IExpr) -> String {
    let mut s = String::new();
    interval(&mut s, r, 0);
    s
}

/// Levels: 0 join, 1 meet, 2 negation, 3 exchange, 4 atom.
fn interval(s: &mut String, r: &IExpr, min: u8) {
    let p = match r {
        IExpr::Join(..) => 0,
        IExpr::Meet(..) => 1,
        IExpr::Neg(_) => 2,
        IExpr::Exc(..) => 3,
        _ => 4,
    };
    if p < min {
        s.push('(');
        interval(s, r, 0);
        s.push(')');
        return;
    }
    match r {
        IExpr::Zero => s.push('0'),
        IExpr::One => s.push('1'),
        IExpr::Var(x, _) => s.push_str(x),
        IExpr::Neg(a) => {
            s.push('~');
            interval(s, a, 2);
        }
        IExpr::Meet(a, b) => {
            interval(s, a, 1);
            s.push_str(" ∧ ");
            interval(s, b, 2);
        }
        IExpr::Join(a, b) => {
            interval(s, a, 0);
            s.push_str(" ∨ ");
            interval(s, b, 1);
        }
        IExpr::Exc(a, m) => {
            interval(s, a, 4);
            let _ = write!(s, " ^ {m}");
        }
    }
}

pub fn decl(d: &Decl) -> String {
    let mut s = format!("{} {}", d.kind.keyword(), d.name);
    if let Some(m) = &d.mode {
        let _ = write!(s, " @ {m}");
    }
    for p in &d.params {
        s.push_str(" (");
        if let Some(m) = &p.modality {
            let _ = write!(s, "{m} | ");
        }
        let _ = write!(s, "{} : ", p.name);
        go(&mut s, &p.ty, Prec::Lowest);
        s.push(')');
    }
    s.push_str(" : ");
    go(&mut s, &d.ty, Prec::Lowest);
    if let Some(b) = &d.body {
        s.push_str("\n  := ");
        go(&mut s, b, Prec::Lowest);
    }
    if let Some(r) = &d.rewrite {
        s.push_str("\n  rewrite ");
        go(&mut s, r, Prec::Lowest);
    }
    s
}

pub fn module(m: &Module) -> String {
    let mut out = String::new();
    for item in &m.items {
        match item {
            Item::ImportModes { theory, quoted, .. } => {
                if *quoted {
                    let _ = writeln!(out, "import modes \"{theory}\"");
                } else {
                    let _ = writeln!(out, "import modes {theory}");
                }
            }
            Item::Decl(d) => {
                out.push_str(&decl(d));
                out.push_str("\n\n");
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_expr;

    fn rt(src: &str) {
        let a = parse_expr(src).unwrap();
        let printed = expr(&a);
        let b = parse_expr(&printed).unwrap_or_else(|e| panic!("{printed}: {e:?}"));
        assert_eq!(a, b, "{printed}");
    }

    #[test]
    fn round_trips() {
        for src in [
            "<i> comp^j A [(i=0) ↦ a | (i=1) ↦ q @ j] (p @ i)",
            "(ℓ | x : A) → (A → B) → C",
            "f (g x) (next y) ⊛ next (box_ℓ∘ℓ z)",
            "let 𝐒_δ box_γ x = e return z. Path A z z in (x, y).1",
            "p @ ~(i ∧ j ^ ℓ ∨ k)",
            "if b return z. Bool then λ x y. x else [⊤ ↦ a | (i = 0) ∧ ((j = 1) ∨ (k = 0)) ↦ b]",
            "(x : A) × B × C → ▷ (A × B)",
            "λ x. ⟨δ | ⟨γ | A⟩⟩",
        ] {
            rt(src);
        }
    }
}
