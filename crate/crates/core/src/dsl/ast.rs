use crate::group::GroupSpec;
use crate::maps::AffineMap;
use crate::sets::SemiSet;

/// 1-based source position.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

/// `set NAME = { (vars) : constraints } | …`, constraints normalized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetDecl {
    pub name: String,
    pub vars: Vec<String>,
    pub set: SemiSet,
}

/// `count*name`; the name `pt` is the one-point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub count: u32,
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumDecl {
    pub name: String,
    pub summands: Vec<Summand>,
}

impl SumDecl {
    /// Component labels: a name used once keeps its name, a name used `k > 1`
    /// times yields `name_1 … name_k`.
    pub fn labels(&self) -> Vec<(String, String)> {
        let total = |n: &str| {
            self.summands
                .iter()
                .filter(|s| s.name == n)
                .map(|s| s.count as usize)
                .sum::<usize>()
        };
        let mut seen: Vec<(String, usize)> = Vec::new();
        let mut out = Vec::new();
        for s in &self.summands {
            let k = total(&s.name);
            for _ in 0..s.count {
                let idx = match seen.iter_mut().find(|(n, _)| *n == s.name) {
                    Some((_, i)) => {
                        *i += 1;
                        *i
                    }
                    None => {
                        seen.push((s.name.clone(), 1));
                        1
                    }
                };
                let label = if k == 1 { s.name.clone() } else { format!("{}_{idx}", s.name) };
                out.push((label, s.name.clone()));
            }
        }
        out
    }
}

/// `on SET [from LABEL] [to LABEL] : (vars) -> (exprs)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceDecl {
    pub on: String,
    pub from: Option<String>,
    pub to: Option<String>,
    pub vars: Vec<String>,
    pub map: AffineMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDecl {
    pub name: String,
    pub domain: String,
    pub codomain: String,
    pub pieces: Vec<PieceDecl>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckDecl {
    Empty(String),
    Equal(String, String),
    Bijection(String),
    Class(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Set(SetDecl),
    Sum(SumDecl),
    Map(MapDecl),
    Check(CheckDecl),
    DeriveWitness,
}

/// A parsed script. Equality ignores source positions.
#[derive(Clone, Debug)]
pub struct Script {
    pub group_name: String,
    pub group: GroupSpec,
    pub statements: Vec<Stmt>,
    pub positions: Vec<Pos>,
}

impl PartialEq for Script {
    fn eq(&self, other: &Script) -> bool {
        self.group_name == other.group_name && self.group == other.group && self.statements == other.statements
    }
}

impl Eq for Script {}
