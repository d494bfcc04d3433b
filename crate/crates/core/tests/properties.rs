use oag_core::kring::{class_of, class_of_sum, RingClass};
use oag_core::rat::{int, rat};
use oag_core::scissors::{
    compose_c, cong_diag, cong_neg, cong_permute, cong_scale, cong_shear, cong_translate, inverse_c, lemma1_3,
    lemma1_4, prod_c, replay, round_trip_check, sum_c, Congruence,
};
use oag_core::sets::{Cell, LinConstraint, Normalized, Relation, SemiSet};
use oag_core::{GroupSpec, Rat};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn relation() -> impl Strategy<Value = Relation> {
    prop_oneof![Just(Relation::Lt), Just(Relation::Le), Just(Relation::Eq)]
}

fn constraint(dim: usize) -> impl Strategy<Value = Normalized> {
    (prop::collection::vec(-2i64..=2, dim), relation(), -3i64..=3)
        .prop_map(|(a, rel, b)| LinConstraint::new(&a.into_iter().map(int).collect::<Vec<_>>(), rel, int(b)))
}

/// Inequalities only, so that cells are full-dimensional or empty.
fn ineq(dim: usize) -> impl Strategy<Value = Normalized> {
    (prop::collection::vec(-2i64..=2, dim), any::<bool>(), -3i64..=3).prop_map(|(a, strict, b)| {
        let rel = if strict { Relation::Lt } else { Relation::Le };
        LinConstraint::new(&a.into_iter().map(int).collect::<Vec<_>>(), rel, int(b))
    })
}

fn cell(dim: usize) -> impl Strategy<Value = Cell> {
    prop::collection::vec(constraint(dim), 1..=3).prop_map(move |cs| Cell::new(dim, cs))
}

fn set(dim: usize) -> impl Strategy<Value = SemiSet> {
    prop::collection::vec(cell(dim), 1..=2).prop_map(move |cs| SemiSet::new(dim, cs).unwrap())
}

fn open_set(dim: usize) -> impl Strategy<Value = SemiSet> {
    prop::collection::vec(prop::collection::vec(ineq(dim), 1..=3), 1..=2)
        .prop_map(move |cells| SemiSet::new(dim, cells.into_iter().map(|cs| Cell::new(dim, cs))).unwrap())
}

fn ring() -> impl Strategy<Value = RingClass> {
    (-20i64..=20, -20i64..=20).prop_map(|(s, c)| RingClass::new(s, c))
}

#[derive(Clone, Debug)]
enum Step {
    Translate(i64, i64),
    Neg,
    Scale(i64, i64),
    Shear,
    Swap,
    Inverse,
}

fn step() -> impl Strategy<Value = Step> {
    prop_oneof![
        (-3i64..=3, 1i64..=3).prop_map(|(n, d)| Step::Translate(n, d)),
        Just(Step::Neg),
        prop_oneof![Just((2, 1)), Just((1, 2)), Just((-3, 1)), Just((2, 3))].prop_map(|(n, d)| Step::Scale(n, d)),
        Just(Step::Shear),
        Just(Step::Swap),
        Just(Step::Inverse),
    ]
}

fn codomain_set(c: &Congruence) -> SemiSet {
    c.codomain().components()[0].1.clone()
}

/// Applies steps one after another, composing as it goes. Steps that do not
/// apply to the current dimension are skipped.
fn chain(g: &GroupSpec, start: &SemiSet, steps: &[Step]) -> Congruence {
    let mut c = Congruence::identity(g, &oag_core::sets::TaggedSum::single("X", start.clone())).unwrap();
    for s in steps {
        let cur = codomain_set(&c);
        let two = cur.dim() == 2;
        let next = match s {
            Step::Translate(n, d) => {
                let t = vec![rat(*n, *d); cur.dim()];
                cong_translate(g, &t, &cur)
            }
            Step::Neg => cong_neg(g, &cur),
            Step::Scale(n, d) => cong_scale(g, &rat(*n, *d), &cur),
            Step::Shear if two => cong_shear(g, &cur),
            Step::Swap if two => cong_permute(g, &[1, 0], &cur),
            Step::Inverse => {
                c = inverse_c(&c).unwrap();
                continue;
            }
            _ => continue,
        }
        .unwrap();
        c = compose_c(&c, &next).unwrap();
    }
    c
}

fn q() -> GroupSpec {
    GroupSpec::Rationals
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in ring(), b in ring(), c in ring()) {
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!(a * RingClass::ONE, a);
        prop_assert_eq!(a + (-a), RingClass::ZERO);
        prop_assert_eq!(RingClass::S * RingClass::S + RingClass::S, RingClass::ZERO);
        prop_assert_eq!((a * b).euler_char(), a.euler_char() * b.euler_char());
        prop_assert_eq!((a * b).hom_zero(), a.hom_zero() * b.hom_zero());
    }

    #[test]
    fn normalization_is_idempotent(n in constraint(3)) {
        if let Normalized::Constraint(c) = &n {
            let again = LinConstraint::new(&c.rat_coeffs(), c.relation(), c.constant().clone());
            prop_assert_eq!(again, n.clone());
        }
    }

    #[test]
    fn simplify_is_idempotent_and_exact(c in cell(2)) {
        let s = c.simplify();
        prop_assert_eq!(s.simplify(), s.clone());
        let a = SemiSet::from_cell(c);
        let b = SemiSet::from_cell(s);
        prop_assert!(a.equals_g(&q(), &b).unwrap());
    }

    #[test]
    fn emptiness_ignores_elimination_order(cs in prop::collection::vec(constraint(3), 1..=6)) {
        let c = Cell::new(3, cs);
        let base = c.is_empty_q();
        for order in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            prop_assert_eq!(c.is_empty_q_with_order(&order), base);
        }
    }

    #[test]
    fn class_is_additive(a in set(2), b in set(2)) {
        let rest = b.difference(&a).unwrap();
        let whole = a.union(&rest).unwrap();
        let lhs = class_of(&q(), &whole).unwrap();
        prop_assert_eq!(lhs, class_of(&q(), &a).unwrap() + class_of(&q(), &rest).unwrap());
        // A different refinement of the same union.
        let other = b.union(&a.difference(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, class_of(&q(), &other).unwrap());
    }

    #[test]
    fn class_is_multiplicative(a in set(1), b in set(2)) {
        let p = a.product(&b);
        prop_assert_eq!(class_of(&q(), &p).unwrap(), class_of(&q(), &a).unwrap() * class_of(&q(), &b).unwrap());
    }

    #[test]
    fn congruences_preserve_class(start in open_set(2), steps in prop::collection::vec(step(), 1..=4)) {
        let c = chain(&q(), &start, &steps);
        prop_assert_eq!(class_of_sum(&q(), c.domain()).unwrap(), class_of_sum(&q(), c.codomain()).unwrap());
    }

    #[test]
    fn diagonal_and_sums_preserve_class(a in open_set(1), b in open_set(2)) {
        let d = cong_diag(&q(), &a).unwrap();
        let s = cong_shear(&q(), &b).unwrap();
        for c in [sum_c(&d, &s).unwrap(), prod_c(&d, &s).unwrap()] {
            prop_assert_eq!(class_of_sum(&q(), c.domain()).unwrap(), class_of_sum(&q(), c.codomain()).unwrap());
        }
    }

    #[test]
    fn replay_agrees(start in open_set(2), steps in prop::collection::vec(step(), 1..=3)) {
        let g = GroupSpec::localized([3]).unwrap();
        let steps: Vec<Step> = steps
            .into_iter()
            .map(|s| match s {
                Step::Translate(n, _) => Step::Translate(n, 3),
                Step::Scale(..) => Step::Scale(-3, 1),
                other => other,
            })
            .collect();
        let c = chain(&g, &start, &steps);
        let again = replay(&g, c.provenance()).unwrap();
        prop_assert_eq!(again.map().fingerprint(), c.map().fingerprint());
    }

    #[test]
    fn sampled_round_trips_are_exact(start in open_set(2), steps in prop::collection::vec(step(), 1..=3), seed in any::<u64>()) {
        let g = GroupSpec::localized([2]).unwrap();
        let steps: Vec<Step> = steps
            .into_iter()
            .map(|s| match s {
                Step::Translate(n, _) => Step::Translate(n, 2),
                Step::Scale(..) => Step::Scale(1, 2),
                other => other,
            })
            .collect();
        let c = chain(&g, &start, &steps);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rt = round_trip_check(&c, 20, &mut rng).unwrap();
        let domain_empty = !c.domain().components()[0].1.has_g_point(&g).unwrap();
        // Empty domains have nothing to sample; every draw counts as a miss.
        if !domain_empty {
            prop_assert_eq!(rt.failures, 0);
        }
    }
}

#[test]
fn lemma1_4_uses_lemma1_3_at_pb() {
    for g in [GroupSpec::localized([3]).unwrap(), GroupSpec::localized([2]).unwrap()] {
        let p = g.minimal_nondivisible_prime().unwrap() as i64;
        let sub = lemma1_3(&g, &(Rat::from_integer(p.into()) * g.witness_b().unwrap())).unwrap();
        let l4 = lemma1_4(&g).unwrap();
        assert!(l4.congruence.provenance().contains(sub.congruence.provenance()));
        assert_eq!(sub.congruence.provenance().lemmas()[0], "lemma1_3");
    }
}

#[test]
fn identity_on_overlapping_cells_verifies() {
    let a = SemiSet::interval(Some(&int(0)), Some(&int(2))).unwrap();
    let b = SemiSet::interval(Some(&int(1)), Some(&int(3))).unwrap();
    let s = a.union(&b).unwrap();
    let c = Congruence::identity(&q(), &oag_core::sets::TaggedSum::single("X", s)).unwrap();
    assert!(c.certificate().passed());
}
