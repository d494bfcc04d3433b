use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::maps::{AffineMap, Piece, PiecewiseMap};
use crate::sets::{Label, TaggedSum};

use super::provenance::{ChainStep, Provenance};
use super::Congruence;

/// A congruence built step by step. The state is a tagged sum; each step
/// replaces some of its components by the codomain of a congruence whose
/// domain matches them. The composite is verified once, by [`finish`].
///
/// [`finish`]: Derivation::finish
#[derive(Clone, Debug)]
pub struct Derivation {
    group: GroupSpec,
    start: TaggedSum,
    map: PiecewiseMap,
    steps: Vec<ChainStep>,
}

impl Derivation {
    pub fn new(g: &GroupSpec, start: TaggedSum) -> Derivation {
        Derivation {
            group: g.clone(),
            map: PiecewiseMap::identity(&start),
            start,
            steps: Vec::new(),
        }
    }

    pub fn state(&self) -> &TaggedSum {
        self.map.codomain()
    }

    pub fn steps(&self) -> &[ChainStep] {
        &self.steps
    }

    /// Applies `c` to the state. `bind` pairs each domain label of `c` with a
    /// state label; `rename` names the new components (defaults to the
    /// codomain labels of `c`, made fresh).
    pub fn apply(&mut self, c: &Congruence, bind: &[(&str, &str)], rename: &[(&str, &str)]) -> Result<()> {
        c.check_group(&self.group)?;
        let state = self.state().clone();
        let mut bound: Vec<(&str, &str)> = Vec::new();
        for (l, s) in c.domain().components() {
            let (_, target) = bind
                .iter()
                .find(|(a, _)| a == l)
                .ok_or_else(|| Error::UnknownLabel(l.clone()))?;
            let have = state.get(target).ok_or_else(|| Error::UnknownLabel(target.to_string()))?;
            if bound.iter().any(|(_, t)| t == target) {
                return Err(Error::ChainMismatch);
            }
            if have.dim() != s.dim() || (have != s && !have.equals_g(&self.group, s)?) {
                return Err(Error::ChainMismatch);
            }
            bound.push((l.as_str(), target));
        }
        let mut next = TaggedSum::empty();
        let mut pieces = Vec::new();
        for (l, s) in state.components() {
            if bound.iter().any(|(_, t)| t == l) {
                continue;
            }
            next.push(l, s.clone());
            pieces.extend(s.disjointify().cells().iter().map(|cell| Piece {
                source: l.clone(),
                domain: cell.clone(),
                target: l.clone(),
                map: AffineMap::identity(s.dim()),
            }));
        }
        let mut names: Vec<(Label, Label)> = Vec::new();
        for (l, s) in c.codomain().components() {
            let wanted = rename.iter().find(|(a, _)| a == l).map_or(l.as_str(), |(_, b)| *b);
            let got = next.push(wanted, s.clone());
            if got != wanted && rename.iter().any(|(a, _)| a == l) {
                return Err(Error::VerificationFailed(format!("label `{wanted}` is already in use")));
            }
            names.push((l.clone(), got));
        }
        for p in c.map().pieces() {
            let source = bound.iter().find(|(a, _)| *a == p.source).expect("bound").1;
            let target = &names.iter().find(|(a, _)| *a == p.target).expect("named").1;
            pieces.push(Piece {
                source: source.to_string(),
                domain: p.domain.clone(),
                target: target.clone(),
                map: p.map.clone(),
            });
        }
        let step = PiecewiseMap::new(state, next, pieces)?;
        self.map = self.map.compose(&step)?;
        self.steps.push(ChainStep {
            step: c.provenance().clone(),
            bind: bound.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
            rename: names,
        });
        Ok(())
    }

    /// Verifies the composite against `target`, whose labels must be those
    /// of the current state (in any order) with sets equal over `G`.
    pub fn finish(self, target: TaggedSum) -> Result<Congruence> {
        let state = self.state();
        if state.len() != target.len() {
            return Err(Error::ChainMismatch);
        }
        for (l, s) in target.components() {
            let have = state.get(l).ok_or(Error::ChainMismatch)?;
            if have.dim() != s.dim() || (have != s && !have.equals_g(&self.group, s)?) {
                return Err(Error::ChainMismatch);
            }
        }
        let map = PiecewiseMap::new(self.start.clone(), target.clone(), self.map.pieces().to_vec())?;
        Congruence::verified(
            &self.group,
            map,
            Provenance::Chain {
                start: self.start,
                steps: self.steps,
                target,
            },
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;
    use crate::scissors::{cong_point, cong_split, cong_translate, inverse_c, ray};
    use crate::sets::{SemiSet, TaggedPoint};

    #[test]
    fn successor_as_a_chain() {
        let g = GroupSpec::Integers;
        let s = ray(&int(0));
        let start = TaggedSum::new(vec![("pt".into(), SemiSet::point()), ("S".into(), s.clone())]).unwrap();
        let mut d = Derivation::new(&g, start);
        d.apply(&inverse_c(&cong_point(&g, &int(1)).unwrap()).unwrap(), &[("Y", "pt")], &[("X", "one")])
            .unwrap();
        d.apply(&cong_translate(&g, &[int(1)], &s).unwrap(), &[("X", "S")], &[("Y", "tail")])
            .unwrap();
        let merge = inverse_c(&cong_split(&g, &s, &[SemiSet::singleton(&int(1)), ray(&int(1))]).unwrap()).unwrap();
        d.apply(&merge, &[("P1", "one"), ("P2", "tail")], &[("X", "S")]).unwrap();
        let c = d.finish(TaggedSum::single("S", s)).unwrap();
        let out = c.map().apply(&TaggedPoint::new("pt", vec![])).unwrap();
        assert_eq!(out, TaggedPoint::new("S", vec![int(1)]));
        let out = c.map().apply(&TaggedPoint::new("S", vec![int(4)])).unwrap();
        assert_eq!(out, TaggedPoint::new("S", vec![int(5)]));
    }

    #[test]
    fn mismatched_binding() {
        let g = GroupSpec::Integers;
        let mut d = Derivation::new(&g, TaggedSum::single("S", ray(&int(0))));
        let c = cong_translate(&g, &[int(1)], &ray(&int(5))).unwrap();
        assert_eq!(d.apply(&c, &[("X", "S")], &[]), Err(Error::ChainMismatch));
    }
}
