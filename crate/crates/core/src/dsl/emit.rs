use crate::scissors::Witness;
use crate::sets::SemiSet;

use super::ast::*;
use super::parser::parse;
use super::printer::print;

fn var_names(n: usize) -> Vec<String> {
    match n {
        0 => vec![],
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        _ => (1..=n).map(|i| format!("x{i}")).collect(),
    }
}

fn set_decl(name: &str, set: &SemiSet) -> Stmt {
    Stmt::Set(SetDecl {
        name: name.into(),
        vars: var_names(set.dim()),
        set: set.clone(),
    })
}

/// Summands grouping the components of `X` by their base name (`W_3` → `W`).
fn summands(w: &Witness) -> Vec<(String, SemiSet, u32)> {
    let mut out: Vec<(String, SemiSet, u32)> = Vec::new();
    for (label, set) in w.x.components() {
        let base = label.rsplit_once('_').map_or(label.as_str(), |(b, _)| b);
        match out.iter_mut().find(|(b, _, _)| b == base) {
            Some(entry) => entry.2 += 1,
            None => out.push((base.to_string(), set.clone(), 1)),
        }
    }
    out
}

/// A script declaring the witness set `X`, `X ⊔ pt`, the congruence as a
/// piecewise map `f : X ⊔ pt → X`, and `check bijection f`.
pub fn emit_witness(w: &Witness) -> Script {
    let mut statements = Vec::new();
    let parts = summands(w);
    for (name, set, _) in &parts {
        statements.push(set_decl(name, set));
    }
    let sum: Vec<Summand> = parts
        .iter()
        .map(|(name, _, count)| Summand {
            count: *count,
            name: name.clone(),
        })
        .collect();
    let mut with_point = sum.clone();
    with_point.push(Summand {
        count: 1,
        name: "pt".into(),
    });
    statements.push(Stmt::Sum(SumDecl {
        name: "X".into(),
        summands: sum,
    }));
    statements.push(Stmt::Sum(SumDecl {
        name: "XP".into(),
        summands: with_point,
    }));
    let mut pieces = Vec::new();
    for (k, p) in w.congruence.map().pieces().iter().enumerate() {
        let name = format!("D{}", k + 1);
        statements.push(set_decl(&name, &SemiSet::from_cell(p.domain.clone())));
        pieces.push(PieceDecl {
            on: name,
            from: Some(p.source.clone()),
            to: Some(p.target.clone()),
            vars: var_names(p.map.n_in()),
            map: p.map.clone(),
        });
    }
    statements.push(Stmt::Map(MapDecl {
        name: "f".into(),
        domain: "XP".into(),
        codomain: "X".into(),
        pieces,
    }));
    statements.push(Stmt::Check(CheckDecl::Bijection("f".into())));
    let script = Script {
        group_name: "G".into(),
        group: w.group.clone(),
        positions: vec![Pos::default(); statements.len()],
        statements,
    };
    // Round-trip through the text form so positions are real.
    parse(&print(&script)).expect("emitted script parses")
}
