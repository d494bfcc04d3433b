use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::error::Error;
use crate::group::GroupSpec;
use crate::kring::{class_of, class_of_sum};
use crate::maps::{verify_bijection, Piece, PiecewiseMap};
use crate::scissors::derive_witness;
use crate::sets::{sample_point, SemiSet, TaggedSum};

use super::ast::*;
use super::error::DslError;
use super::printer::statement;

/// Elaborated declarations of a script.
#[derive(Clone, Debug, Default)]
pub struct Env {
    pub group: Option<GroupSpec>,
    pub sets: BTreeMap<String, SemiSet>,
    pub sums: BTreeMap<String, TaggedSum>,
    pub maps: BTreeMap<String, PiecewiseMap>,
}

/// Result of one `check` or `derive` statement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub statement: String,
    pub kind: &'static str,
    pub passed: bool,
    pub detail: String,
    /// A concrete point backing a negative verdict (or a non-empty set).
    pub witness: Option<String>,
}

fn lift(pos: Pos) -> impl Fn(Error) -> DslError {
    move |e| match e {
        Error::UnsupportedDiscreteCell | Error::NonDivisibleGroup | Error::DivisibleGroup => {
            DslError::Unsupported {
                pos,
                message: e.to_string(),
            }
        }
        other => DslError::Semantic {
            pos,
            message: other.to_string(),
        },
    }
}

fn semantic(pos: Pos, message: String) -> DslError {
    DslError::Semantic { pos, message }
}

impl Env {
    fn group(&self) -> &GroupSpec {
        self.group.as_ref().expect("group set before statements")
    }

    /// Elaborates every declaration of a script without running checks.
    pub fn build(script: &Script) -> Result<Env, DslError> {
        let mut env = Env {
            group: Some(script.group.clone()),
            ..Env::default()
        };
        for (st, &pos) in script.statements.iter().zip(&script.positions) {
            env.declare(st, pos)?;
        }
        Ok(env)
    }

    fn declare(&mut self, st: &Stmt, pos: Pos) -> Result<(), DslError> {
        match st {
            Stmt::Set(d) => {
                self.sets.insert(d.name.clone(), d.set.clone());
            }
            Stmt::Sum(d) => {
                let comps = d
                    .labels()
                    .into_iter()
                    .map(|(label, set)| (label, self.set_named(&set)))
                    .collect();
                let sum = TaggedSum::new(comps).map_err(lift(pos))?;
                self.sums.insert(d.name.clone(), sum);
            }
            Stmt::Map(m) => {
                let f = self.elaborate_map(m, pos)?;
                self.maps.insert(m.name.clone(), f);
            }
            Stmt::Check(_) | Stmt::DeriveWitness => {}
        }
        Ok(())
    }

    fn set_named(&self, name: &str) -> SemiSet {
        if name == "pt" {
            SemiSet::point()
        } else {
            self.sets[name].clone()
        }
    }

    /// A sum, or a set seen as a one-component sum labelled by its name.
    pub fn sum_named(&self, name: &str) -> Option<TaggedSum> {
        if let Some(s) = self.sums.get(name) {
            return Some(s.clone());
        }
        self.sets.get(name).map(|s| TaggedSum::single(name, s.clone()))
    }

    fn elaborate_map(&self, m: &MapDecl, pos: Pos) -> Result<PiecewiseMap, DslError> {
        let dom = self.sum_named(&m.domain).expect("checked by the parser");
        let cod = self.sum_named(&m.codomain).expect("checked by the parser");
        let single = |s: &TaggedSum| (s.len() == 1).then(|| s.components()[0].0.clone());
        let mut pieces = Vec::new();
        for p in &m.pieces {
            let source = p
                .from
                .clone()
                .or_else(|| dom.get(&p.on).map(|_| p.on.clone()))
                .or_else(|| single(&dom))
                .ok_or_else(|| semantic(pos, format!("piece on `{}` needs `from`", p.on)))?;
            let target = p
                .to
                .clone()
                .or_else(|| single(&cod))
                .or_else(|| cod.get(&p.on).map(|_| p.on.clone()))
                .ok_or_else(|| semantic(pos, format!("piece on `{}` needs `to`", p.on)))?;
            let on = match dom.get(&p.on) {
                Some(component) => component.clone(),
                None => self.set_named(&p.on),
            };
            if on.dim() != p.vars.len() {
                return Err(semantic(
                    pos,
                    format!("piece on `{}` binds {} variables, the set has dimension {}", p.on, p.vars.len(), on.dim()),
                ));
            }
            for cell in on.cells() {
                pieces.push(Piece {
                    source: source.clone(),
                    domain: cell.clone(),
                    target: target.clone(),
                    map: p.map.clone(),
                });
            }
        }
        PiecewiseMap::new(dom, cod, pieces).map_err(lift(pos))
    }
}

/// Elaborates a script and runs its checks in order.
pub fn run(script: &Script) -> Result<Vec<CheckOutcome>, DslError> {
    let mut env = Env {
        group: Some(script.group.clone()),
        ..Env::default()
    };
    let mut out = Vec::new();
    for (st, &pos) in script.statements.iter().zip(&script.positions) {
        env.declare(st, pos)?;
        match st {
            Stmt::Check(c) => out.push(env.check(c, pos)?),
            Stmt::DeriveWitness => out.push(env.witness(pos)?),
            _ => {}
        }
    }
    Ok(out)
}

fn show_point(coords: &[crate::rat::Rat]) -> String {
    let parts: Vec<String> = coords.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

impl Env {
    fn sample(&self, s: &SemiSet, pos: Pos) -> Result<Option<String>, DslError> {
        let mut rng = StdRng::seed_from_u64(0);
        match sample_point(self.group(), s, &mut rng) {
            Ok(p) => Ok(Some(show_point(&p))),
            Err(Error::SamplingExhausted) => Ok(None),
            Err(e) => Err(lift(pos)(e)),
        }
    }

    fn check(&self, c: &CheckDecl, pos: Pos) -> Result<CheckOutcome, DslError> {
        let g = self.group().clone();
        let text = statement(&Stmt::Check(c.clone()));
        let outcome = |kind, passed, detail: String, witness| CheckOutcome {
            statement: text.clone(),
            kind,
            passed,
            detail,
            witness,
        };
        match c {
            CheckDecl::Empty(a) => {
                let s = &self.sets[a];
                let nonempty = s.has_g_point(&g).map_err(lift(pos))?;
                let witness = if nonempty { self.sample(s, pos)? } else { None };
                let detail = if nonempty {
                    format!("{a} has a point over {g}")
                } else {
                    format!("{a} is empty over {g}")
                };
                Ok(outcome("empty", !nonempty, detail, witness))
            }
            CheckDecl::Equal(a, b) => {
                let (sa, sb) = (&self.sets[a], &self.sets[b]);
                let dim_err = |e| lift(pos)(e);
                let ab = sa.difference(sb).map_err(dim_err)?;
                let ba = sb.difference(sa).map_err(dim_err)?;
                let sym = ab.union(&ba).map_err(dim_err)?;
                let differ = sym.has_g_point(&g).map_err(lift(pos))?;
                if !differ {
                    return Ok(outcome("equal", true, format!("{a} = {b} over {g}"), None));
                }
                let witness = self.sample(&sym, pos)?;
                Ok(outcome("equal", false, format!("{a} and {b} differ over {g}"), witness))
            }
            CheckDecl::Bijection(f) => {
                let cert = verify_bijection(&g, &self.maps[f]).map_err(lift(pos))?;
                match cert.failure() {
                    None => Ok(outcome(
                        "bijection",
                        true,
                        format!("{f} is a definable bijection over {g} ({} checks)", cert.checks().len()),
                        None,
                    )),
                    Some(fail) => Ok(outcome(
                        "bijection",
                        false,
                        format!("{}: {}", fail.check.name(), fail.reason),
                        fail.point.as_ref().map(ToString::to_string),
                    )),
                }
            }
            CheckDecl::Class(a) => {
                let class = match (self.sets.get(a), self.sums.get(a)) {
                    (Some(s), _) => class_of(&g, s),
                    (_, Some(t)) => class_of_sum(&g, t),
                    _ => unreachable!("checked by the parser"),
                }
                .map_err(lift(pos))?;
                Ok(outcome("class", true, format!("[{a}] = {class}"), None))
            }
        }
    }

    fn witness(&self, pos: Pos) -> Result<CheckOutcome, DslError> {
        let g = self.group();
        let w = derive_witness(g).map_err(lift(pos))?;
        let passed = w.meets_target() && w.congruence.certificate().passed();
        let detail = match w.multiplicities {
            Some((a, b)) => format!(
                "X = {a}*W + {b}*SV over {g}, X + pt congruent to X ({} pieces)",
                w.congruence.map().pieces().len()
            ),
            None => format!("X = S over {g}, S + pt congruent to S"),
        };
        Ok(CheckOutcome {
            statement: "derive witness".into(),
            kind: "derive-witness",
            passed,
            detail,
            witness: None,
        })
    }
}
