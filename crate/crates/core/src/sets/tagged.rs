use std::fmt;

use super::semiset::SemiSet;
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::rat::Rat;

pub type Label = String;

/// A formal disjoint union of labelled sets of possibly different dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TaggedSum {
    components: Vec<(Label, SemiSet)>,
}

/// A point of one component of a [`TaggedSum`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TaggedPoint {
    pub label: Label,
    pub coords: Vec<Rat>,
}

impl TaggedPoint {
    pub fn new(label: impl Into<Label>, coords: Vec<Rat>) -> TaggedPoint {
        TaggedPoint {
            label: label.into(),
            coords,
        }
    }
}

impl fmt::Display for TaggedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "{}:({})", self.label, cs.join(", "))
    }
}

impl TaggedSum {
    pub fn new(components: Vec<(Label, SemiSet)>) -> Result<TaggedSum> {
        for (i, (l, _)) in components.iter().enumerate() {
            if components[..i].iter().any(|(m, _)| m == l) {
                return Err(Error::VerificationFailed(format!("duplicate label `{l}`")));
            }
        }
        Ok(TaggedSum { components })
    }

    pub fn single(label: impl Into<Label>, set: SemiSet) -> TaggedSum {
        TaggedSum {
            components: vec![(label.into(), set)],
        }
    }

    pub fn empty() -> TaggedSum {
        TaggedSum { components: vec![] }
    }

    pub fn components(&self) -> &[(Label, SemiSet)] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn labels(&self) -> impl Iterator<Item = &Label> {
        self.components.iter().map(|(l, _)| l)
    }

    pub fn get(&self, label: &str) -> Option<&SemiSet> {
        self.components.iter().find(|(l, _)| l == label).map(|(_, s)| s)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.components.iter().position(|(l, _)| l == label)
    }

    /// A label not yet used, derived from `base`.
    pub fn fresh_label(&self, base: &str) -> Label {
        if self.get(base).is_none() {
            return base.to_string();
        }
        (2..)
            .map(|k| format!("{base}_{k}"))
            .find(|l| self.get(l).is_none())
            .expect("unbounded")
    }

    /// Appends a component, renaming its label if taken. Returns the label used.
    pub fn push(&mut self, label: &str, set: SemiSet) -> Label {
        let l = self.fresh_label(label);
        self.components.push((l.clone(), set));
        l
    }

    pub fn member(&self, g: &GroupSpec, p: &TaggedPoint) -> Result<bool> {
        let set = self
            .get(&p.label)
            .ok_or_else(|| Error::UnknownLabel(p.label.clone()))?;
        set.member(g, &p.coords)
    }
}

impl fmt::Display for TaggedSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|(l, s)| format!("{l}: {s}"))
            .collect();
        write!(f, "[{}]", parts.join(" ⊔ "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    #[test]
    fn labels_stay_unique() {
        let ray = SemiSet::interval(Some(&int(0)), None).unwrap();
        let mut t = TaggedSum::single("S", ray.clone());
        assert_eq!(t.push("S", ray.clone()), "S_2");
        assert_eq!(t.push("pt", SemiSet::point()), "pt");
        assert!(TaggedSum::new(vec![("a".into(), ray.clone()), ("a".into(), ray)]).is_err());
    }

    #[test]
    fn sum_membership() {
        let t = TaggedSum::new(vec![
            ("S".into(), SemiSet::interval(Some(&int(0)), None).unwrap()),
            ("pt".into(), SemiSet::point()),
        ])
        .unwrap();
        let g = GroupSpec::Integers;
        assert!(t.member(&g, &TaggedPoint::new("S", vec![int(3)])).unwrap());
        assert!(t.member(&g, &TaggedPoint::new("pt", vec![])).unwrap());
        assert!(!t.member(&g, &TaggedPoint::new("S", vec![int(0)])).unwrap());
        assert!(t.member(&g, &TaggedPoint::new("T", vec![int(0)])).is_err());
    }
}
