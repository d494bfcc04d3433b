use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::rat::{int, Rat};
use crate::sets::{SemiSet, TaggedSum};

use super::chain::Derivation;
use super::generators::*;
use super::provenance::Provenance;
use super::shapes::{closed_point, interval, ray, ray_square};
use super::Congruence;

/// `⊔lhs ⊔ slack ≅ ⊔rhs ⊔ slack`, i.e. `Σ[lhs] = Σ[rhs]` in the ring.
#[derive(Clone, Debug)]
pub struct SlackIdentity {
    pub lhs: Vec<SemiSet>,
    pub rhs: Vec<SemiSet>,
    pub slack: TaggedSum,
    pub congruence: Congruence,
}

impl SlackIdentity {
    /// The declared sets agree, in order, with the congruence's components.
    pub fn bookkeeping_holds(&self) -> bool {
        let sets = |t: &TaggedSum| t.components().iter().map(|(_, s)| s.clone()).collect::<Vec<_>>();
        let slack = sets(&self.slack);
        let dom: Vec<SemiSet> = self.lhs.iter().cloned().chain(slack.iter().cloned()).collect();
        let cod: Vec<SemiSet> = self.rhs.iter().cloned().chain(slack).collect();
        sets(self.congruence.domain()) == dom && sets(self.congruence.codomain()) == cod
    }
}

fn sum(parts: &[(&str, SemiSet)]) -> TaggedSum {
    TaggedSum::new(parts.iter().map(|(l, s)| (l.to_string(), s.clone())).collect()).expect("distinct labels")
}

fn lemma(name: &str, args: Vec<Rat>, c: Congruence) -> Congruence {
    let body = Box::new(c.provenance().clone());
    c.with_provenance(Provenance::Lemma {
        name: name.into(),
        args,
        body,
    })
}

/// `(a, ∞)² ≅ (0, ∞)×(a, ∞) ⊔ (0, ∞)×(a, ∞) ⊔ (a, ∞)`.
///
/// Domain label `VV`, codomain labels `SV_1`, `SV_2`, `V`.
pub fn lemma1_1(g: &GroupSpec, a: &Rat) -> Result<Congruence> {
    if a.is_negative() {
        return Err(Error::BadBounds);
    }
    let (s, v) = (ray(&Rat::zero()), ray(a));
    let vv = v.product(&v);
    let sv = s.product(&v);
    let [upper, lower, diag] = ray_square(a);
    let mut d = Derivation::new(g, sum(&[("VV", vv.clone())]));
    let split = cong_split(g, &vv, &[upper.clone(), lower.clone(), diag])?;
    d.apply(&split, &[("X", "VV")], &[("P1", "U"), ("P2", "L"), ("P3", "D")])?;
    d.apply(&cong_shear(g, &upper)?, &[("X", "U")], &[("Y", "SV_1")])?;
    d.apply(&cong_permute(g, &[1, 0], &lower)?, &[("X", "L")], &[("Y", "L'")])?;
    d.apply(&cong_shear(g, &upper)?, &[("X", "L'")], &[("Y", "SV_2")])?;
    d.apply(&inverse_c(&cong_diag(g, &v)?)?, &[("Y", "D")], &[("X", "V")])?;
    let c = d.finish(sum(&[("SV_1", sv.clone()), ("SV_2", sv), ("V", v)]))?;
    Ok(lemma("lemma1_1", vec![a.clone()], c))
}

/// `(0, a) ⊔ pt ⊔ (0, ∞) ≅ (0, ∞)` for `a ∈ G`, `a > 0`.
///
/// Domain labels `T`, `pt`, `S`; codomain label `S`.
pub fn lemma1_3(g: &GroupSpec, a: &Rat) -> Result<SlackIdentity> {
    if !a.is_positive() {
        return Err(Error::BadBounds);
    }
    if !g.contains(a) {
        return Err(Error::NotInGroup(a.to_string()));
    }
    let s = ray(&Rat::zero());
    let t = interval(&Rat::zero(), a)?;
    let start = sum(&[("T", t.clone()), ("pt", SemiSet::point()), ("S", s.clone())]);
    let mut d = Derivation::new(g, start);
    d.apply(&cong_translate(g, std::slice::from_ref(a), &s)?, &[("X", "S")], &[("Y", "Sa")])?;
    d.apply(&inverse_c(&cong_point(g, a)?)?, &[("Y", "pt")], &[("X", "A")])?;
    let merge = inverse_c(&cong_split(g, &s, &[t.clone(), closed_point(a), ray(a)])?)?;
    d.apply(&merge, &[("P1", "T"), ("P2", "A"), ("P3", "Sa")], &[("X", "S")])?;
    let slack = sum(&[("S", s)]);
    let c = d.finish(slack.clone())?;
    Ok(SlackIdentity {
        lhs: vec![t, SemiSet::point()],
        rhs: vec![],
        slack,
        congruence: lemma("lemma1_3", vec![a.clone()], c),
    })
}

fn dense_parameters(g: &GroupSpec) -> Result<(u64, Rat)> {
    match g {
        GroupSpec::Rationals => Err(Error::DivisibleGroup),
        GroupSpec::Integers => Err(Error::DiscreteGroup),
        GroupSpec::Localized(_) => {
            let p = g.minimal_nondivisible_prime().ok_or(Error::DivisibleGroup)?;
            Ok((p, g.witness_b()?))
        }
    }
}

/// `(0, b) ⊔ (0, b) ⊔ pt ⊔ (0, ∞) ≅ (0, ∞)` with `b = 1/p`, `p` the least
/// prime at which `G` is not divisible.
///
/// Domain labels `T_1`, `T_2`, `pt`, `S`; codomain label `S`.
pub fn lemma1_4(g: &GroupSpec) -> Result<SlackIdentity> {
    let (p, b) = dense_parameters(g)?;
    let pm1 = int(p as i64 - 1);
    let (mid, top) = (&pm1 * &b, int(p as i64) * &b);
    let zero = Rat::zero();
    let s = ray(&zero);
    let t = interval(&zero, &b)?;
    let left = interval(&zero, &mid)?;
    let right = interval(&mid, &top)?;
    let start = sum(&[("T_1", t.clone()), ("T_2", t.clone()), ("pt", SemiSet::point()), ("S", s.clone())]);
    let mut d = Derivation::new(g, start);
    // (0, (p−1)b) → (0, b) by x ↦ x/(p−1), used backwards.
    let shrink = cong_scale(g, &(Rat::one() / &pm1), &left)?;
    d.apply(&inverse_c(&shrink)?, &[("Y", "T_1")], &[("X", "L")])?;
    // ((p−1)b, pb) → (−b, 0) → (0, b) by x ↦ x − pb and x ↦ −x, used backwards.
    let shift = cong_translate(g, &[-top.clone()], &right)?;
    let flip = cong_neg(g, &interval(&-b.clone(), &zero)?)?;
    d.apply(&inverse_c(&compose_c(&shift, &flip)?)?, &[("Y", "T_2")], &[("X", "R")])?;
    // (p−1)b ∉ G, so the two halves fill (0, pb).
    let merge = inverse_c(&cong_split(g, &interval(&zero, &top)?, &[left, right])?)?;
    d.apply(&merge, &[("P1", "L"), ("P2", "R")], &[("X", "Tp")])?;
    let l3 = lemma1_3(g, &top)?;
    d.apply(&l3.congruence, &[("T", "Tp"), ("pt", "pt"), ("S", "S")], &[("S", "S")])?;
    let slack = sum(&[("S", s)]);
    let c = d.finish(slack.clone())?;
    Ok(SlackIdentity {
        lhs: vec![t.clone(), t, SemiSet::point()],
        rhs: vec![],
        slack,
        congruence: lemma("lemma1_4", vec![], c),
    })
}

/// `(0, a)² ⊔ (0, a) ⊔ C ≅ C` for `a ∉ G`, with slack
/// `C = (0, ∞)² ⊔ (0, ∞)×(a, ∞) ⊔ (0, ∞)×(a, ∞)`.
///
/// Domain labels `TT`, `T`, `W`, `SV_1`, `SV_2`; codomain `W`, `SV_1`, `SV_2`.
pub fn lemma1_2(g: &GroupSpec, a: &Rat) -> Result<SlackIdentity> {
    if !a.is_positive() {
        return Err(Error::BadBounds);
    }
    if g.contains(a) {
        return Err(Error::InGroup(a.to_string()));
    }
    if !g.is_dense() {
        return Err(Error::DiscreteGroup);
    }
    let zero = Rat::zero();
    let (s, t, v) = (ray(&zero), interval(&zero, a)?, ray(a));
    let (w, sv) = (s.product(&s), s.product(&v));
    let (tt, tv, vt, vv) = (t.product(&t), t.product(&v), v.product(&t), v.product(&v));
    let start = sum(&[
        ("TT", tt.clone()),
        ("T", t.clone()),
        ("W", w.clone()),
        ("SV_1", sv.clone()),
        ("SV_2", sv.clone()),
    ]);
    let mut d = Derivation::new(g, start);
    // Cut each S×V along x = a, which carries no G-point.
    let cut = cong_split(g, &sv, &[tv.clone(), vv.clone()])?;
    d.apply(&cut, &[("X", "SV_1")], &[("P1", "TV_1"), ("P2", "VV_1")])?;
    d.apply(&cut, &[("X", "SV_2")], &[("P1", "TV_2"), ("P2", "VV_2")])?;
    d.apply(&cong_permute(g, &[1, 0], &tv)?, &[("X", "TV_2")], &[("Y", "VT")])?;
    let square = inverse_c(&cong_split(g, &w, &[tt, tv, vt, vv])?)?;
    d.apply(
        &square,
        &[("P1", "TT"), ("P2", "TV_1"), ("P3", "VT"), ("P4", "VV_1")],
        &[("X", "SS")],
    )?;
    d.apply(
        &lemma1_1(g, a)?,
        &[("VV", "VV_2")],
        &[("SV_1", "SV_1"), ("SV_2", "SV_2"), ("V", "V")],
    )?;
    let line = inverse_c(&cong_split(g, &s, &[t.clone(), v])?)?;
    d.apply(&line, &[("P1", "T"), ("P2", "V")], &[("X", "S")])?;
    // Absorption: (0,∞)² ⊔ (0,∞)² ⊔ (0,∞) ≅ (0,∞)².
    let absorb = inverse_c(&lemma1_1(g, &zero)?)?;
    d.apply(&absorb, &[("SV_1", "W"), ("SV_2", "SS"), ("V", "S")], &[("VV", "W")])?;
    let slack = sum(&[("W", w), ("SV_1", sv.clone()), ("SV_2", sv)]);
    let c = d.finish(slack.clone())?;
    Ok(SlackIdentity {
        lhs: vec![t.product(&t), t],
        rhs: vec![],
        slack,
        congruence: lemma("lemma1_2", vec![a.clone()], c),
    })
}
