//! Small constructors for the sets that appear in the derivations.

use crate::error::Result;
use crate::rat::{int, Rat};
use crate::sets::{Cell, LinConstraint, Relation, SemiSet};

/// `(a, ∞)`.
pub fn ray(a: &Rat) -> SemiSet {
    SemiSet::interval(Some(a), None).expect("unbounded above")
}

/// `(lo, hi)`.
pub fn interval(lo: &Rat, hi: &Rat) -> Result<SemiSet> {
    SemiSet::interval(Some(lo), Some(hi))
}

/// `{a}` as a subset of `G¹`.
pub fn closed_point(a: &Rat) -> SemiSet {
    SemiSet::singleton(a)
}

pub fn product(a: &SemiSet, b: &SemiSet) -> SemiSet {
    a.product(b)
}

/// The three parts of `(a, ∞)²`: `x > y > a`, `y > x > a` and `x = y > a`.
pub fn ray_square(a: &Rat) -> [SemiSet; 3] {
    let lt = |c: [i64; 2], k: Rat| LinConstraint::new(&c.map(int), Relation::Lt, k);
    let x_gt_y = Cell::new(2, [lt([-1, 1], int(0)), lt([0, -1], -a.clone())]);
    let y_gt_x = Cell::new(2, [lt([1, -1], int(0)), lt([-1, 0], -a.clone())]);
    let diag = Cell::new(
        2,
        [
            LinConstraint::new(&[int(1), int(-1)], Relation::Eq, int(0)),
            lt([-1, 0], -a.clone()),
        ],
    );
    [x_gt_y, y_gt_x, diag].map(SemiSet::from_cell)
}
