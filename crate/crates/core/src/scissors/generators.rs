use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::maps::{AffineMap, Piece, PiecewiseMap};
use crate::rat::Rat;
use crate::sets::{Label, SemiSet, TaggedPoint, TaggedSum};

use super::provenance::{Generator, Provenance};
use super::Congruence;

fn single_map(g: &GroupSpec, dom: &SemiSet, map: AffineMap, generator: Generator) -> Result<Congruence> {
    if dom.dim() != map.n_in() {
        return Err(Error::DimMismatch {
            expected: map.n_in(),
            found: dom.dim(),
        });
    }
    if !map.is_definable(g) {
        return Err(Error::NotDefinable);
    }
    let cells = dom.disjointify();
    let mut pieces = Vec::new();
    let mut images = Vec::new();
    for c in cells.cells() {
        images.push(map.image_cell(c)?);
        pieces.push(Piece {
            source: "X".into(),
            domain: c.clone(),
            target: "Y".into(),
            map: map.clone(),
        });
    }
    let cod = SemiSet::new(map.n_out(), images)?;
    let pm = PiecewiseMap::new(TaggedSum::single("X", dom.clone()), TaggedSum::single("Y", cod), pieces)?;
    Congruence::verified(
        g,
        pm,
        Provenance::Generator {
            generator,
            domain: dom.clone(),
        },
    )
}

/// `x ↦ x + t` on `dom`, onto its image.
pub fn cong_translate(g: &GroupSpec, t: &[Rat], dom: &SemiSet) -> Result<Congruence> {
    single_map(g, dom, AffineMap::translation(t.to_vec()), Generator::Translate(t.to_vec()))
}

/// `x ↦ −x`.
pub fn cong_neg(g: &GroupSpec, dom: &SemiSet) -> Result<Congruence> {
    single_map(g, dom, AffineMap::scaling(dom.dim(), &-Rat::one()), Generator::Neg)
}

/// `x ↦ u·x` for a unit `u` of the group's ring of multipliers.
pub fn cong_scale(g: &GroupSpec, u: &Rat, dom: &SemiSet) -> Result<Congruence> {
    if u.is_zero() || !g.is_unit(u) {
        return Err(Error::NotDefinable);
    }
    single_map(g, dom, AffineMap::scaling(dom.dim(), u), Generator::Scale(u.clone()))
}

/// `(x, y) ↦ (x − y, y)`.
pub fn cong_shear(g: &GroupSpec, dom: &SemiSet) -> Result<Congruence> {
    let m = AffineMap::new(
        2,
        vec![vec![Rat::one(), -Rat::one()], vec![Rat::zero(), Rat::one()]],
        vec![Rat::zero(), Rat::zero()],
    )?;
    single_map(g, dom, m, Generator::Shear)
}

/// Coordinate permutation: output `i` is input `perm[i]`.
pub fn cong_permute(g: &GroupSpec, perm: &[usize], dom: &SemiSet) -> Result<Congruence> {
    let mut sorted = perm.to_vec();
    sorted.sort_unstable();
    if sorted != (0..perm.len()).collect::<Vec<_>>() {
        return Err(Error::NotDefinable);
    }
    single_map(g, dom, AffineMap::permutation(perm), Generator::Permute(perm.to_vec()))
}

/// `x ↦ (x, x)`, onto the diagonal copy of `dom`.
pub fn cong_diag(g: &GroupSpec, dom: &SemiSet) -> Result<Congruence> {
    let n = dom.dim();
    let id = AffineMap::identity(n);
    let mut rows = id.matrix().to_vec();
    rows.extend(id.matrix().iter().cloned());
    let m = AffineMap::new(n, rows, vec![Rat::zero(); 2 * n])?;
    single_map(g, dom, m, Generator::Diag)
}

/// An arbitrary affine map on `dom`, onto its image.
pub fn cong_affine(g: &GroupSpec, map: &AffineMap, dom: &SemiSet) -> Result<Congruence> {
    single_map(g, dom, map.clone(), Generator::Affine(map.clone()))
}

/// `{a} ≅ pt`.
pub fn cong_point(g: &GroupSpec, a: &Rat) -> Result<Congruence> {
    if !g.contains(a) {
        return Err(Error::NotInGroup(a.to_string()));
    }
    let dom = SemiSet::singleton(a);
    let pieces = vec![Piece {
        source: "X".into(),
        domain: dom.cells()[0].clone(),
        target: "Y".into(),
        map: AffineMap::new(1, vec![], vec![])?,
    }];
    let pm = PiecewiseMap::new(TaggedSum::single("X", dom), TaggedSum::single("Y", SemiSet::point()), pieces)?;
    Congruence::verified(g, pm, Provenance::Point(a.clone()))
}

/// `s ≅ P1 ⊔ … ⊔ Pk` by the identity, when the parts partition `s` over `G`.
pub fn cong_split(g: &GroupSpec, s: &SemiSet, parts: &[SemiSet]) -> Result<Congruence> {
    let mut cod = TaggedSum::empty();
    let mut pieces = Vec::new();
    for (i, part) in parts.iter().enumerate() {
        if part.dim() != s.dim() {
            return Err(Error::DimMismatch {
                expected: s.dim(),
                found: part.dim(),
            });
        }
        let label = cod.push(&format!("P{}", i + 1), part.clone());
        for c in part.disjointify().cells() {
            pieces.push(Piece {
                source: "X".into(),
                domain: c.clone(),
                target: label.clone(),
                map: AffineMap::identity(s.dim()),
            });
        }
    }
    let pm = PiecewiseMap::new(TaggedSum::single("X", s.clone()), cod, pieces)?;
    let prov = Provenance::Split {
        whole: s.clone(),
        parts: parts.to_vec(),
    };
    match Congruence::verified(g, pm.clone(), prov) {
        Ok(c) => Ok(c),
        Err(Error::VerificationFailed(_)) => {
            let cert = crate::maps::verify_bijection(g, &pm)?;
            let witness = cert
                .failure()
                .and_then(|f| f.point.clone())
                .map(|p| TaggedPoint::new("X", p.coords));
            Err(Error::NotAPartition { witness })
        }
        Err(e) => Err(e),
    }
}

/// The identity, matching each domain component to an equal codomain
/// component.
pub fn cong_rearrange(g: &GroupSpec, dom: &TaggedSum, cod: &TaggedSum) -> Result<Congruence> {
    if dom.len() != cod.len() {
        return Err(Error::ChainMismatch);
    }
    let mut used = vec![false; cod.len()];
    let mut pieces = Vec::new();
    for (l, s) in dom.components() {
        let mut found = None;
        for (j, (m, t)) in cod.components().iter().enumerate() {
            if !used[j] && t.dim() == s.dim() && (t == s || s.equals_g(g, t)?) {
                found = Some((j, m.clone()));
                break;
            }
        }
        let (j, target) = found.ok_or(Error::ChainMismatch)?;
        used[j] = true;
        for c in s.disjointify().cells() {
            pieces.push(Piece {
                source: l.clone(),
                domain: c.clone(),
                target: target.clone(),
                map: AffineMap::identity(s.dim()),
            });
        }
    }
    let pm = PiecewiseMap::new(dom.clone(), cod.clone(), pieces)?;
    Congruence::verified(
        g,
        pm,
        Provenance::Rearrange {
            domain: dom.clone(),
            codomain: cod.clone(),
        },
    )
}

/// Pairs the components of `a` with those of `b`: by label when the label
/// sets agree, otherwise by position. Paired sets must agree over `G`.
pub(crate) fn match_components(g: &GroupSpec, a: &TaggedSum, b: &TaggedSum) -> Result<Vec<(Label, Label)>> {
    if a.len() != b.len() {
        return Err(Error::ChainMismatch);
    }
    let by_label = a.labels().all(|l| b.get(l).is_some());
    let pairs: Vec<(Label, Label)> = if by_label {
        a.labels().map(|l| (l.clone(), l.clone())).collect()
    } else {
        a.labels().cloned().zip(b.labels().cloned()).collect()
    };
    for (x, y) in &pairs {
        let (s, t) = (a.get(x).expect("label"), b.get(y).expect("label"));
        if s.dim() != t.dim() || (s != t && !s.equals_g(g, t)?) {
            return Err(Error::ChainMismatch);
        }
    }
    Ok(pairs)
}

/// `c2 ∘ c1`.
pub fn compose_c(c1: &Congruence, c2: &Congruence) -> Result<Congruence> {
    let g = c1.group();
    c2.check_group(g)?;
    let pairs = match_components(g, c1.codomain(), c2.domain())?;
    let back: Vec<(Label, Label)> = pairs.into_iter().map(|(x, y)| (y, x)).collect();
    let m2 = c2.map().relabel(&back, &[])?;
    let m = c1.map().compose(&m2)?;
    Congruence::verified(
        g,
        m,
        Provenance::Compose(Box::new(c1.provenance().clone()), Box::new(c2.provenance().clone())),
    )
}

pub fn inverse_c(c: &Congruence) -> Result<Congruence> {
    let m = c.map().invert(c.certificate())?;
    Congruence::verified(c.group(), m, Provenance::Inverse(Box::new(c.provenance().clone())))
}

pub fn sum_c(c1: &Congruence, c2: &Congruence) -> Result<Congruence> {
    c2.check_group(c1.group())?;
    let m = c1.map().sum(c2.map());
    Congruence::verified(
        c1.group(),
        m,
        Provenance::Sum(Box::new(c1.provenance().clone()), Box::new(c2.provenance().clone())),
    )
}

pub fn prod_c(c1: &Congruence, c2: &Congruence) -> Result<Congruence> {
    c2.check_group(c1.group())?;
    let m = c1.map().prod(c2.map());
    Congruence::verified(
        c1.group(),
        m,
        Provenance::Prod(Box::new(c1.provenance().clone()), Box::new(c2.provenance().clone())),
    )
}

/// `X ⊔ Z ≅ Y ⊔ Z` from `X ≅ Y`.
pub fn add_slack(c: &Congruence, z: &TaggedSum) -> Result<Congruence> {
    let m = c.map().sum(&PiecewiseMap::identity(z));
    Congruence::verified(c.group(), m, Provenance::AddSlack(Box::new(c.provenance().clone()), z.clone()))
}
