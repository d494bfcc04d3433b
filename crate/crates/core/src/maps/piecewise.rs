use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::sets::{Cell, Label, SemiSet, TaggedPoint, TaggedSum};

use super::affine::AffineMap;
use super::verify::BijectionCertificate;

/// One affine branch: points of `domain` inside component `source` go to
/// component `target`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Piece {
    pub source: Label,
    pub domain: Cell,
    pub target: Label,
    pub map: AffineMap,
}

/// A map between tagged sums given by finitely many affine pieces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiecewiseMap {
    domain: TaggedSum,
    codomain: TaggedSum,
    pieces: Vec<Piece>,
}

fn dim_of(sum: &TaggedSum, label: &str) -> Result<usize> {
    sum.get(label)
        .map(SemiSet::dim)
        .ok_or_else(|| Error::UnknownLabel(label.to_string()))
}

fn expect_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimMismatch { expected, found })
    }
}

impl PiecewiseMap {
    /// Checks that every piece refers to existing components with matching
    /// dimensions.
    pub fn new(domain: TaggedSum, codomain: TaggedSum, pieces: Vec<Piece>) -> Result<PiecewiseMap> {
        for p in &pieces {
            let n = dim_of(&domain, &p.source)?;
            let m = dim_of(&codomain, &p.target)?;
            expect_dim(n, p.domain.dim())?;
            expect_dim(n, p.map.n_in())?;
            expect_dim(m, p.map.n_out())?;
        }
        Ok(PiecewiseMap {
            domain,
            codomain,
            pieces,
        })
    }

    /// The identity of a tagged sum, one piece per cell of a disjoint
    /// refinement of each component.
    pub fn identity(sum: &TaggedSum) -> PiecewiseMap {
        let pieces = sum
            .components()
            .iter()
            .flat_map(|(l, s)| {
                s.disjointify().cells().iter().map(|c| Piece {
                    source: l.clone(),
                    domain: c.clone(),
                    target: l.clone(),
                    map: AffineMap::identity(s.dim()),
                }).collect::<Vec<_>>()
            })
            .collect();
        PiecewiseMap {
            domain: sum.clone(),
            codomain: sum.clone(),
            pieces,
        }
    }

    pub fn domain(&self) -> &TaggedSum {
        &self.domain
    }

    pub fn codomain(&self) -> &TaggedSum {
        &self.codomain
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Stable fingerprint used to tie certificates to maps.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.hash(&mut h);
        h.finish()
    }

    pub fn apply(&self, p: &TaggedPoint) -> Result<TaggedPoint> {
        expect_dim(dim_of(&self.domain, &p.label)?, p.coords.len())?;
        let mut hit: Option<TaggedPoint> = None;
        for piece in &self.pieces {
            if piece.source == p.label && piece.domain.contains(&p.coords) {
                let out = TaggedPoint::new(piece.target.clone(), piece.map.apply(&p.coords));
                match &hit {
                    Some(prev) if *prev != out => return Err(Error::AmbiguousPiece),
                    _ => hit = Some(out),
                }
            }
        }
        hit.ok_or(Error::NotInDomain)
    }

    /// `next ∘ self`. Components are matched by label and dimension; the
    /// sets themselves are compared by callers that know the group.
    pub fn compose(&self, next: &PiecewiseMap) -> Result<PiecewiseMap> {
        let same_shape = self.codomain.len() == next.domain.len()
            && self
                .codomain
                .components()
                .iter()
                .all(|(l, s)| next.domain.get(l).is_some_and(|t| t.dim() == s.dim()));
        if !same_shape {
            return Err(Error::ChainMismatch);
        }
        let mut pieces = Vec::new();
        for p in &self.pieces {
            for q in next.pieces.iter().filter(|q| q.source == p.target) {
                let domain = p.domain.intersect(&p.map.pullback(&q.domain))?;
                if domain.is_empty_q() {
                    continue;
                }
                pieces.push(Piece {
                    source: p.source.clone(),
                    domain: domain.simplify(),
                    target: q.target.clone(),
                    map: p.map.then(&q.map),
                });
            }
        }
        Ok(PiecewiseMap {
            domain: self.domain.clone(),
            codomain: next.codomain.clone(),
            pieces,
        })
    }

    /// The inverse of a verified bijection, piece by piece on the images.
    pub fn invert(&self, cert: &BijectionCertificate) -> Result<PiecewiseMap> {
        if !cert.passed() || cert.subject() != self.fingerprint() {
            return Err(Error::NotVerified);
        }
        let mut pieces = Vec::new();
        for (p, image) in self.pieces.iter().zip(cert.images()) {
            let Some(image) = image else { continue };
            pieces.push(Piece {
                source: p.target.clone(),
                domain: image.clone(),
                target: p.source.clone(),
                map: p.map.inverse_on(&p.domain)?,
            });
        }
        Ok(PiecewiseMap {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            pieces,
        })
    }

    /// `self ⊔ other`; labels of `other` are renamed when they clash.
    pub fn sum(&self, other: &PiecewiseMap) -> PiecewiseMap {
        let mut domain = self.domain.clone();
        let mut codomain = self.codomain.clone();
        let dom_names: Vec<(Label, Label)> = other
            .domain
            .components()
            .iter()
            .map(|(l, s)| (l.clone(), domain.push(l, s.clone())))
            .collect();
        let cod_names: Vec<(Label, Label)> = other
            .codomain
            .components()
            .iter()
            .map(|(l, s)| (l.clone(), codomain.push(l, s.clone())))
            .collect();
        let rename = |names: &[(Label, Label)], l: &Label| {
            names.iter().find(|(a, _)| a == l).map(|(_, b)| b.clone()).expect("known label")
        };
        let mut pieces = self.pieces.clone();
        pieces.extend(other.pieces.iter().map(|p| Piece {
            source: rename(&dom_names, &p.source),
            domain: p.domain.clone(),
            target: rename(&cod_names, &p.target),
            map: p.map.clone(),
        }));
        PiecewiseMap {
            domain,
            codomain,
            pieces,
        }
    }

    /// `self × other`, components labelled `a*b`.
    pub fn prod(&self, other: &PiecewiseMap) -> PiecewiseMap {
        let (domain, dom_names) = product_sum(&self.domain, &other.domain);
        let (codomain, cod_names) = product_sum(&self.codomain, &other.codomain);
        let lookup = |names: &[((Label, Label), Label)], a: &Label, b: &Label| {
            names
                .iter()
                .find(|((x, y), _)| x == a && y == b)
                .map(|(_, l)| l.clone())
                .expect("known pair")
        };
        let mut pieces = Vec::new();
        for p in &self.pieces {
            for q in &other.pieces {
                pieces.push(Piece {
                    source: lookup(&dom_names, &p.source, &q.source),
                    domain: p.domain.product(&q.domain),
                    target: lookup(&cod_names, &p.target, &q.target),
                    map: AffineMap::block_diag(&p.map, &q.map),
                });
            }
        }
        PiecewiseMap {
            domain,
            codomain,
            pieces,
        }
    }

    /// Renames components; labels missing from the tables are kept.
    pub fn relabel(&self, domain: &[(Label, Label)], codomain: &[(Label, Label)]) -> Result<PiecewiseMap> {
        let rn = |names: &[(Label, Label)], l: &Label| {
            names.iter().find(|(a, _)| a == l).map_or_else(|| l.clone(), |(_, b)| b.clone())
        };
        let dom = TaggedSum::new(
            self.domain
                .components()
                .iter()
                .map(|(l, s)| (rn(domain, l), s.clone()))
                .collect(),
        )?;
        let cod = TaggedSum::new(
            self.codomain
                .components()
                .iter()
                .map(|(l, s)| (rn(codomain, l), s.clone()))
                .collect(),
        )?;
        let pieces = self
            .pieces
            .iter()
            .map(|p| Piece {
                source: rn(domain, &p.source),
                domain: p.domain.clone(),
                target: rn(codomain, &p.target),
                map: p.map.clone(),
            })
            .collect();
        Ok(PiecewiseMap {
            domain: dom,
            codomain: cod,
            pieces,
        })
    }
}

#[allow(clippy::type_complexity)]
fn product_sum(a: &TaggedSum, b: &TaggedSum) -> (TaggedSum, Vec<((Label, Label), Label)>) {
    let mut out = TaggedSum::empty();
    let mut names = Vec::new();
    for (la, sa) in a.components() {
        for (lb, sb) in b.components() {
            let l = out.push(&format!("{la}*{lb}"), sa.product(sb));
            names.push(((la.clone(), lb.clone()), l));
        }
    }
    (out, names)
}
