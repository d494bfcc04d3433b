use crate::error::Result;
use crate::group::GroupSpec;
use crate::maps::{AffineMap, PiecewiseMap};
use crate::rat::Rat;
use crate::sets::{Label, SemiSet, TaggedSum};

use super::chain::Derivation;
use super::generators::*;
use super::Congruence;

/// Single-piece generator congruences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    Translate(Vec<Rat>),
    Neg,
    Scale(Rat),
    Shear,
    Permute(Vec<usize>),
    Diag,
    Affine(AffineMap),
}

/// How a congruence was built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Identity(TaggedSum),
    Generator { generator: Generator, domain: SemiSet },
    Point(Rat),
    Split { whole: SemiSet, parts: Vec<SemiSet> },
    Rearrange { domain: TaggedSum, codomain: TaggedSum },
    /// A map checked as given.
    Pieces(PiecewiseMap),
    Compose(Box<Provenance>, Box<Provenance>),
    Inverse(Box<Provenance>),
    Sum(Box<Provenance>, Box<Provenance>),
    Prod(Box<Provenance>, Box<Provenance>),
    AddSlack(Box<Provenance>, TaggedSum),
    Relabel {
        inner: Box<Provenance>,
        domain: Vec<(Label, Label)>,
        codomain: Vec<(Label, Label)>,
    },
    Chain {
        start: TaggedSum,
        steps: Vec<ChainStep>,
        target: TaggedSum,
    },
    Lemma {
        name: String,
        args: Vec<Rat>,
        body: Box<Provenance>,
    },
}

/// One step of a [`Derivation`]: a congruence applied to some components of
/// the current state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainStep {
    pub step: Provenance,
    pub bind: Vec<(Label, Label)>,
    pub rename: Vec<(Label, Label)>,
}

impl Provenance {
    /// Whether `other` occurs as a subtree.
    pub fn contains(&self, other: &Provenance) -> bool {
        self == other || self.children().iter().any(|c| c.contains(other))
    }

    pub fn children(&self) -> Vec<&Provenance> {
        match self {
            Provenance::Compose(a, b) | Provenance::Sum(a, b) | Provenance::Prod(a, b) => vec![a, b],
            Provenance::Inverse(a) | Provenance::AddSlack(a, _) => vec![a],
            Provenance::Relabel { inner, .. } => vec![inner],
            Provenance::Lemma { body, .. } => vec![body],
            Provenance::Chain { steps, .. } => steps.iter().map(|s| &s.step).collect(),
            _ => vec![],
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    /// Names of the lemmas used, outermost first.
    pub fn lemmas(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Provenance::Lemma { name, .. } = self {
            out.push(name.clone());
        }
        for c in self.children() {
            out.extend(c.lemmas());
        }
        out
    }
}

/// Rebuilds a congruence from its derivation, re-verifying every step.
pub fn replay(g: &GroupSpec, p: &Provenance) -> Result<Congruence> {
    match p {
        Provenance::Identity(sum) => Congruence::identity(g, sum),
        Provenance::Generator { generator, domain } => match generator {
            Generator::Translate(t) => cong_translate(g, t, domain),
            Generator::Neg => cong_neg(g, domain),
            Generator::Scale(u) => cong_scale(g, u, domain),
            Generator::Shear => cong_shear(g, domain),
            Generator::Permute(perm) => cong_permute(g, perm, domain),
            Generator::Diag => cong_diag(g, domain),
            Generator::Affine(m) => cong_affine(g, m, domain),
        },
        Provenance::Point(a) => cong_point(g, a),
        Provenance::Split { whole, parts } => cong_split(g, whole, parts),
        Provenance::Rearrange { domain, codomain } => cong_rearrange(g, domain, codomain),
        Provenance::Pieces(m) => Congruence::verified(g, m.clone(), p.clone()),
        Provenance::Compose(a, b) => compose_c(&replay(g, a)?, &replay(g, b)?),
        Provenance::Inverse(a) => inverse_c(&replay(g, a)?),
        Provenance::Sum(a, b) => sum_c(&replay(g, a)?, &replay(g, b)?),
        Provenance::Prod(a, b) => prod_c(&replay(g, a)?, &replay(g, b)?),
        Provenance::AddSlack(a, z) => add_slack(&replay(g, a)?, z),
        Provenance::Relabel {
            inner,
            domain,
            codomain,
        } => {
            let d: Vec<(&str, &str)> = domain.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
            let c: Vec<(&str, &str)> = codomain.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
            replay(g, inner)?.relabel(&d, &c)
        }
        Provenance::Chain { start, steps, target } => {
            let mut d = Derivation::new(g, start.clone());
            for s in steps {
                let c = replay(g, &s.step)?;
                let bind: Vec<(&str, &str)> = s.bind.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
                let rename: Vec<(&str, &str)> = s.rename.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
                d.apply(&c, &bind, &rename)?;
            }
            d.finish(target.clone())
        }
        Provenance::Lemma { body, .. } => Ok(replay(g, body)?.with_provenance(p.clone())),
    }
}
