//! The ring `Z[S]/(S² + S)` with `S = [(0, ∞)]`, and classes of sets over `Q`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::rat::Rat;
use crate::sets::{Cell, LinConstraint, Normalized, Relation, SemiSet, TaggedSum};

/// `s·S + c`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct RingClass {
    pub s: i64,
    pub c: i64,
}

impl RingClass {
    pub const ZERO: RingClass = RingClass { s: 0, c: 0 };
    pub const ONE: RingClass = RingClass { s: 0, c: 1 };
    pub const S: RingClass = RingClass { s: 1, c: 0 };

    pub fn new(s: i64, c: i64) -> RingClass {
        RingClass { s, c }
    }

    pub fn constant(c: i64) -> RingClass {
        RingClass { s: 0, c }
    }

    /// The ring map `S ↦ −1`.
    pub fn euler_char(self) -> i64 {
        self.c - self.s
    }

    /// The ring map `S ↦ 0`.
    pub fn hom_zero(self) -> i64 {
        self.c
    }
}

impl Add for RingClass {
    type Output = RingClass;
    fn add(self, o: RingClass) -> RingClass {
        RingClass::new(self.s + o.s, self.c + o.c)
    }
}

impl Sub for RingClass {
    type Output = RingClass;
    fn sub(self, o: RingClass) -> RingClass {
        self + (-o)
    }
}

impl Neg for RingClass {
    type Output = RingClass;
    fn neg(self) -> RingClass {
        RingClass::new(-self.s, -self.c)
    }
}

impl Mul for RingClass {
    type Output = RingClass;
    /// `(aS + b)(cS + d) = (ad + bc − ac)S + bd`, using `S² = −S`.
    fn mul(self, o: RingClass) -> RingClass {
        RingClass::new(self.s * o.c + self.c * o.s - self.s * o.s, self.c * o.c)
    }
}

impl std::iter::Sum for RingClass {
    fn sum<I: Iterator<Item = RingClass>>(iter: I) -> RingClass {
        iter.fold(RingClass::ZERO, Add::add)
    }
}

impl fmt::Display for RingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s_part = match self.s {
            0 => String::new(),
            1 => "S".into(),
            -1 => "-S".into(),
            k => format!("{k}S"),
        };
        match (s_part.is_empty(), self.c) {
            (true, c) => write!(f, "{c}"),
            (false, 0) => write!(f, "{s_part}"),
            (false, c) if c < 0 => write!(f, "{s_part} - {}", -c),
            (false, c) => write!(f, "{s_part} + {c}"),
        }
    }
}

/// Class of a set over `Q`.
pub fn class_of(g: &GroupSpec, s: &SemiSet) -> Result<RingClass> {
    if !g.is_divisible() {
        return Err(Error::NonDivisibleGroup);
    }
    Ok(s.disjointify().cells().iter().map(class_of_cell).sum())
}

/// Sum of the classes of the components.
pub fn class_of_sum(g: &GroupSpec, t: &TaggedSum) -> Result<RingClass> {
    t.components().iter().map(|(_, s)| class_of(g, s)).sum()
}

/// An affine bound `coef·x' + k` on the last variable.
#[derive(Clone, Debug)]
struct Bound {
    coef: Vec<Rat>,
    k: Rat,
    strict: bool,
}

/// `a ⋈ b` for affine expressions in the remaining variables.
fn compare(a: &Bound, b: &Bound, rel: Relation) -> Normalized {
    let coeffs: Vec<Rat> = a.coef.iter().zip(&b.coef).map(|(x, y)| x - y).collect();
    LinConstraint::new(&coeffs, rel, &b.k - &a.k)
}

/// Indices `i` with the constraints saying bound `i` is the active one:
/// strictly beyond earlier bounds, at least as far as later ones. The
/// largest lower bound and the smallest upper bound are active.
fn active_regions(bounds: &[Bound], upper: bool) -> Vec<(usize, Vec<Normalized>)> {
    (0..bounds.len())
        .map(|i| {
            let cs = (0..bounds.len())
                .filter(|&k| k != i)
                .map(|k| {
                    let rel = if k < i { Relation::Lt } else { Relation::Le };
                    if upper {
                        compare(&bounds[i], &bounds[k], rel)
                    } else {
                        compare(&bounds[k], &bounds[i], rel)
                    }
                })
                .collect();
            (i, cs)
        })
        .collect()
}

fn class_of_cell(cell: &Cell) -> RingClass {
    if cell.is_empty_q() {
        return RingClass::ZERO;
    }
    let n = cell.dim();
    if n == 0 {
        return RingClass::ONE;
    }
    let last = n - 1;
    // An equality pins the last variable: the cell is a graph over its base.
    if let Some(e) = cell
        .constraints()
        .iter()
        .find(|c| c.relation() == Relation::Eq && !c.coeffs()[last].is_zero())
    {
        let a = e.rat_coeffs();
        let an = a[last].clone();
        let mut matrix: Vec<Vec<Rat>> = (0..last)
            .map(|i| (0..last).map(|j| Rat::from_integer((i == j).into())).collect())
            .collect();
        matrix.push(a[..last].iter().map(|x| -x / &an).collect());
        let mut offset = vec![Rat::zero(); last];
        offset.push(e.constant() / &an);
        return class_of_cell(&cell.substitute(&matrix, &offset, last));
    }
    let mut base: Vec<Normalized> = Vec::new();
    let (mut lower, mut upper): (Vec<Bound>, Vec<Bound>) = (Vec::new(), Vec::new());
    for c in cell.constraints() {
        let a = c.rat_coeffs();
        let an = &a[last];
        if an.is_zero() {
            base.push(LinConstraint::new(&a[..last], c.relation(), c.constant().clone()));
            continue;
        }
        let bound = Bound {
            coef: a[..last].iter().map(|x| -x / an).collect(),
            k: c.constant() / an,
            strict: c.relation() == Relation::Lt,
        };
        if an.is_positive() {
            upper.push(bound);
        } else {
            lower.push(bound);
        }
    }
    // Strict bounds first, so ties resolve to the strict one.
    lower.sort_by_key(|b| !b.strict);
    upper.sort_by_key(|b| !b.strict);
    let lows = if lower.is_empty() {
        vec![None]
    } else {
        active_regions(&lower, false).into_iter().map(Some).collect()
    };
    let highs = if upper.is_empty() {
        vec![None]
    } else {
        active_regions(&upper, true).into_iter().map(Some).collect()
    };
    let mut total = RingClass::ZERO;
    for lo in &lows {
        for hi in &highs {
            let mut cs = base.clone();
            let (fiber, extra) = match (lo, hi) {
                (None, None) => (RingClass::new(2, 1), None),
                (Some((i, _)), None) => (ray_class(lower[*i].strict), None),
                (None, Some((j, _))) => (ray_class(upper[*j].strict), None),
                (Some((i, _)), Some((j, _))) => {
                    let (l, u) = (&lower[*i], &upper[*j]);
                    let closed = !l.strict && !u.strict;
                    let rel = if closed { Relation::Le } else { Relation::Lt };
                    let fiber = match (l.strict, u.strict) {
                        (true, true) => RingClass::constant(-1),
                        (false, false) => RingClass::ONE,
                        _ => RingClass::ZERO,
                    };
                    (fiber, Some(compare(l, u, rel)))
                }
            };
            if fiber == RingClass::ZERO {
                continue;
            }
            if let Some((_, sel)) = lo {
                cs.extend(sel.iter().cloned());
            }
            if let Some((_, sel)) = hi {
                cs.extend(sel.iter().cloned());
            }
            cs.extend(extra);
            total = total + fiber * class_of_cell(&Cell::new(last, cs));
        }
    }
    total
}

fn ray_class(strict: bool) -> RingClass {
    if strict {
        RingClass::S
    } else {
        RingClass::S + RingClass::ONE
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    fn q() -> GroupSpec {
        GroupSpec::Rationals
    }

    fn ray() -> SemiSet {
        SemiSet::interval(Some(&int(0)), None).unwrap()
    }

    #[test]
    fn arithmetic() {
        let s = RingClass::S;
        assert_eq!(s * s, -s);
        assert_eq!((s + RingClass::ONE) * s, RingClass::ZERO);
        assert_eq!(s + RingClass::ZERO, s);
        assert_eq!(s.euler_char(), -1);
        assert_eq!(s.hom_zero(), 0);
        assert_eq!(RingClass::new(2, -1).to_string(), "2S - 1");
        assert_eq!(RingClass::new(-1, 0).to_string(), "-S");
    }

    #[test]
    fn basic_classes() {
        let unit = SemiSet::interval(Some(&int(0)), Some(&int(1))).unwrap();
        assert_eq!(class_of(&q(), &unit).unwrap(), RingClass::constant(-1));
        assert_eq!(class_of(&q(), &ray()).unwrap(), RingClass::S);
        assert_eq!(class_of(&q(), &SemiSet::point()).unwrap(), RingClass::ONE);
        assert_eq!(class_of(&q(), &SemiSet::empty(2)).unwrap(), RingClass::ZERO);
        assert_eq!(class_of(&q(), &ray().product(&ray())).unwrap(), -RingClass::S);
        let line = class_of(&q(), &SemiSet::universe(1)).unwrap();
        assert_eq!(line, RingClass::new(2, 1));
        assert_eq!(line.euler_char(), -1);
        let z3 = GroupSpec::localized([3]).unwrap();
        assert_eq!(class_of(&z3, &ray()), Err(Error::NonDivisibleGroup));
    }

    #[test]
    fn triangle_matches_its_shear() {
        // {x > y > 0} is (0,∞)² after (x, y) ↦ (x − y, y).
        let tri = SemiSet::from_cell(Cell::new(
            2,
            [
                LinConstraint::new(&[int(-1), int(1)], Relation::Lt, int(0)),
                LinConstraint::new(&[int(0), int(-1)], Relation::Lt, int(0)),
            ],
        ));
        assert_eq!(class_of(&q(), &tri).unwrap(), -RingClass::S);
    }

    #[test]
    fn closed_and_half_open() {
        let cell = |lo: Relation, hi: Relation| {
            SemiSet::from_cell(Cell::new(
                1,
                [
                    LinConstraint::new(&[int(-1)], lo, int(0)),
                    LinConstraint::new(&[int(1)], hi, int(1)),
                ],
            ))
        };
        assert_eq!(class_of(&q(), &cell(Relation::Le, Relation::Le)).unwrap(), RingClass::ONE);
        assert_eq!(class_of(&q(), &cell(Relation::Lt, Relation::Le)).unwrap(), RingClass::ZERO);
    }
}
