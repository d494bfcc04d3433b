use crate::maps::render_expr;

use super::ast::*;

/// Canonical text of a script; `parse(&print(s))` reproduces `s`.
pub fn print(script: &Script) -> String {
    let mut out = format!("group {} = {}\n", script.group_name, script.group);
    if !script.statements.is_empty() {
        out.push('\n');
    }
    for st in &script.statements {
        out.push_str(&statement(st));
        out.push('\n');
    }
    out
}

pub fn statement(st: &Stmt) -> String {
    match st {
        Stmt::Set(d) => format!("set {} = {}", d.name, set_literal(d)),
        Stmt::Sum(d) => {
            let parts: Vec<String> = d
                .summands
                .iter()
                .map(|s| if s.count == 1 { s.name.clone() } else { format!("{}*{}", s.count, s.name) })
                .collect();
            format!("sum {} = {}", d.name, parts.join(" + "))
        }
        Stmt::Map(m) => {
            let mut s = format!("map {} : {} -> {} {{\n", m.name, m.domain, m.codomain);
            for p in &m.pieces {
                s.push_str("  ");
                s.push_str(&piece(p));
                s.push('\n');
            }
            s.push('}');
            s
        }
        Stmt::Check(c) => match c {
            CheckDecl::Empty(a) => format!("check empty {a}"),
            CheckDecl::Equal(a, b) => format!("check equal {a} {b}"),
            CheckDecl::Bijection(f) => format!("check bijection {f}"),
            CheckDecl::Class(a) => format!("check class {a}"),
        },
        Stmt::DeriveWitness => "derive witness".into(),
    }
}

fn set_literal(d: &SetDecl) -> String {
    let vars = d.vars.join(", ");
    if d.set.cells().is_empty() {
        return format!("{{ ({vars}) : 0 < 0 }}");
    }
    d.set
        .cells()
        .iter()
        .map(|c| format!("{{ ({vars}) : {} }}", c.render(&d.vars)))
        .collect::<Vec<_>>()
        .join(" | ")
}

fn piece(p: &PieceDecl) -> String {
    let mut s = format!("on {}", p.on);
    if let Some(f) = &p.from {
        s.push_str(&format!(" from {f}"));
    }
    if let Some(t) = &p.to {
        s.push_str(&format!(" to {t}"));
    }
    let exprs: Vec<String> = p
        .map
        .matrix()
        .iter()
        .zip(p.map.offset())
        .map(|(row, t)| render_expr(row, t, &p.vars))
        .collect();
    s.push_str(&format!(" : ({}) -> ({})", p.vars.join(", "), exprs.join(", ")));
    s
}
