use std::collections::HashMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::rat::{int, Rat};
use crate::sets::{Label, SemiSet, SetSampler, TaggedPoint, TaggedSum};

use super::chain::Derivation;
use super::generators::{cong_point, cong_split, cong_translate, inverse_c, prod_c};
use super::lemmas::{lemma1_2, lemma1_4};
use super::shapes::ray;
use super::Congruence;

/// Copies of `(0,∞)²` and of `(0,∞)×(b,∞)` in the dense witness.
pub const WITNESS_TARGET: (usize, usize) = (6, 8);

/// A set `X` with a verified congruence `X ⊔ pt ≅ X`.
#[derive(Clone, Debug)]
pub struct Witness {
    pub group: GroupSpec,
    pub x: TaggedSum,
    pub congruence: Congruence,
    /// Achieved copies of `(0,∞)²` and `(0,∞)×(b,∞)`; `None` over `Z`.
    pub multiplicities: Option<(usize, usize)>,
}

impl Witness {
    pub fn meets_target(&self) -> bool {
        self.multiplicities.is_none_or(|m| m == WITNESS_TARGET)
    }
}

fn labelled(prefix: &str, n: usize, set: &SemiSet) -> Vec<(Label, SemiSet)> {
    (1..=n).map(|i| (format!("{prefix}_{i}"), set.clone())).collect()
}

/// Builds `X` and `X ⊔ pt ≅ X` for a non-divisible group.
pub fn derive_witness(g: &GroupSpec) -> Result<Witness> {
    match g {
        GroupSpec::Rationals => Err(Error::DivisibleGroup),
        GroupSpec::Integers => discrete_witness(g),
        GroupSpec::Localized(_) => dense_witness(g),
    }
}

fn discrete_witness(g: &GroupSpec) -> Result<Witness> {
    let s = ray(&Rat::from_integer(0.into()));
    let x = TaggedSum::single("S", s.clone());
    let start = TaggedSum::new(vec![("S".into(), s.clone()), ("pt".into(), SemiSet::point())])?;
    let mut d = Derivation::new(g, start);
    d.apply(&inverse_c(&cong_point(g, &int(1))?)?, &[("Y", "pt")], &[("X", "one")])?;
    d.apply(&cong_translate(g, &[int(1)], &s)?, &[("X", "S")], &[("Y", "tail")])?;
    let merge = inverse_c(&cong_split(g, &s, &[SemiSet::singleton(&int(1)), ray(&int(1))])?)?;
    d.apply(&merge, &[("P1", "one"), ("P2", "tail")], &[("X", "S")])?;
    let congruence = d.finish(x.clone())?;
    Ok(Witness {
        group: g.clone(),
        x,
        congruence,
        multiplicities: None,
    })
}

fn dense_witness(g: &GroupSpec) -> Result<Witness> {
    let b = g.witness_b()?;
    let s = ray(&Rat::from_integer(0.into()));
    let (w, sv) = (s.product(&s), s.product(&ray(&b)));
    let (nw, nsv) = WITNESS_TARGET;
    let mut comps = labelled("W", nw, &w);
    comps.extend(labelled("SV", nsv, &sv));
    let x = TaggedSum::new(comps.clone())?;
    comps.push(("pt".into(), SemiSet::point()));
    let mut d = Derivation::new(g, TaggedSum::new(comps)?);

    // Four copies of C = W ⊔ 2·SV each shed (0,b)² ⊔ (0,b).
    let shed = inverse_c(&lemma1_2(g, &b)?.congruence)?;
    for k in 1..=4 {
        let (wk, s1, s2) = (format!("W_{k}"), format!("SV_{}", 2 * k - 1), format!("SV_{}", 2 * k));
        let (tt, t) = (format!("TT_{k}"), format!("T_{k}"));
        d.apply(
            &shed,
            &[("W", &wk), ("SV_1", &s1), ("SV_2", &s2)],
            &[("TT", &tt), ("T", &t), ("W", &wk), ("SV_1", &s1), ("SV_2", &s2)],
        )?;
    }

    // The fifth and sixth W open up along either factor.
    let l4 = lemma1_4(g)?.congruence;
    let id_s = Congruence::identity(g, &TaggedSum::single("S", s.clone()))?;
    let left = inverse_c(&prod_c(&l4, &id_s)?)?;
    d.apply(
        &left,
        &[("S*S", "W_5")],
        &[("T_1*S", "TS_1"), ("T_2*S", "TS_2"), ("pt*S", "S_a"), ("S*S", "SS_a")],
    )?;
    let right = inverse_c(&prod_c(&id_s, &l4)?)?;
    d.apply(
        &right,
        &[("S*S", "W_6")],
        &[("S*T_1", "ST_1"), ("S*T_2", "ST_2"), ("S*pt", "S_b"), ("S*S", "W_6")],
    )?;

    // (T ⊔ T ⊔ pt ⊔ S)² ≅ S² swallows everything shed so far, and the point.
    let square = prod_c(&l4, &l4)?;
    d.apply(
        &square,
        &[
            ("T_1*T_1", "TT_1"),
            ("T_1*T_2", "TT_2"),
            ("T_2*T_1", "TT_3"),
            ("T_2*T_2", "TT_4"),
            ("T_1*pt", "T_1"),
            ("T_2*pt", "T_2"),
            ("pt*T_1", "T_3"),
            ("pt*T_2", "T_4"),
            ("pt*pt", "pt"),
            ("T_1*S", "TS_1"),
            ("T_2*S", "TS_2"),
            ("S*T_1", "ST_1"),
            ("S*T_2", "ST_2"),
            ("pt*S", "S_a"),
            ("S*pt", "S_b"),
            ("S*S", "SS_a"),
        ],
        &[("S*S", "W_5")],
    )?;
    let congruence = d.finish(x.clone())?;
    let count = |shape: &SemiSet| x.components().iter().filter(|(_, c)| c == shape).count();
    let multiplicities = Some((count(&w), count(&sv)));
    Ok(Witness {
        group: g.clone(),
        x,
        congruence,
        multiplicities,
    })
}

/// Whether `c` is a verified congruence `x ⊔ pt ≅ x` over `g`.
pub fn check_pigeonhole(g: &GroupSpec, x: &TaggedSum, c: &Congruence) -> bool {
    if c.group() != g || !c.certificate().passed() {
        return false;
    }
    let same = |a: &SemiSet, b: &SemiSet| a.dim() == b.dim() && (a == b || a.equals_g(g, b).unwrap_or(false));
    let (dom, cod) = (c.domain(), c.codomain());
    if cod.len() != x.len() || dom.len() != x.len() + 1 {
        return false;
    }
    for (l, s) in x.components() {
        match (cod.get(l), dom.get(l)) {
            (Some(a), Some(b)) if same(a, s) && same(b, s) => {}
            _ => return false,
        }
    }
    dom.components()
        .iter()
        .filter(|(l, _)| x.get(l).is_none())
        .all(|(_, s)| same(s, &SemiSet::point()))
}

/// Outcome of [`round_trip_check`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RoundTrip {
    pub count: usize,
    pub failures: usize,
}

fn samplers(g: &GroupSpec, t: &TaggedSum) -> Result<Vec<(Label, SetSampler)>> {
    let mut out = Vec::new();
    for (l, s) in t.components() {
        let sm = SetSampler::new(g, s)?;
        if !sm.is_empty() {
            out.push((l.clone(), sm));
        }
    }
    Ok(out)
}

fn draw<R: Rng + ?Sized>(from: &[(Label, SetSampler)], rng: &mut R) -> Option<TaggedPoint> {
    if from.is_empty() {
        return None;
    }
    let (l, sm) = &from[rng.gen_range(0..from.len())];
    sm.sample(rng).ok().map(|x| TaggedPoint::new(l.clone(), x))
}

/// Samples `n` points on each side of `c` and checks exact round trips,
/// membership of images and injectivity on the sample.
pub fn round_trip_check<R: Rng + ?Sized>(c: &Congruence, n: usize, rng: &mut R) -> Result<RoundTrip> {
    let g = c.group();
    let f = c.map();
    let inv = f.invert(c.certificate())?;
    let (dom, cod) = (samplers(g, f.domain())?, samplers(g, f.codomain())?);
    let mut out = RoundTrip::default();
    let mut seen: HashMap<TaggedPoint, TaggedPoint> = HashMap::new();
    for _ in 0..n {
        out.count += 1;
        let Some(x) = draw(&dom, rng) else {
            out.failures += 1;
            continue;
        };
        let ok = f.apply(&x).ok().filter(|y| f.codomain().member(g, y).unwrap_or(false)).is_some_and(|y| {
            let back = inv.apply(&y).ok() == Some(x.clone());
            let fresh = seen.insert(y, x.clone()).is_none_or(|prev| prev == x);
            back && fresh
        });
        out.failures += usize::from(!ok);
    }
    for _ in 0..n {
        out.count += 1;
        let Some(y) = draw(&cod, rng) else {
            out.failures += 1;
            continue;
        };
        let ok = inv
            .apply(&y)
            .ok()
            .filter(|x| f.domain().member(g, x).unwrap_or(false))
            .is_some_and(|x| f.apply(&x).ok() == Some(y.clone()));
        out.failures += usize::from(!ok);
    }
    Ok(out)
}
