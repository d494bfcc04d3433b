//! Exact elimination kernel: Gaussian elimination on equalities followed by
//! Fourier–Motzkin elimination on strict and non-strict inequalities.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use super::linear::{LinConstraint, Normalized, Relation};
use crate::rat::Rat;

/// `a·x < b` (strict) or `a·x ≤ b`.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Row {
    pub a: Vec<Rat>,
    pub b: Rat,
    pub strict: bool,
}

/// A conjunction of rational linear conditions in `n` variables. Eliminated
/// variables keep their column (with zero coefficients everywhere).
#[derive(Clone, Debug)]
pub(crate) struct System {
    pub n: usize,
    pub eqs: Vec<(Vec<Rat>, Rat)>,
    pub ineqs: Vec<Row>,
    pub infeasible: bool,
}

impl System {
    pub fn new(n: usize) -> System {
        System {
            n,
            eqs: Vec::new(),
            ineqs: Vec::new(),
            infeasible: false,
        }
    }

    pub fn from_constraints<'a>(n: usize, cs: impl IntoIterator<Item = &'a LinConstraint>) -> System {
        let mut s = System::new(n);
        for c in cs {
            s.push(c);
        }
        s.cleanup();
        s
    }

    pub fn push(&mut self, c: &LinConstraint) {
        let a = c.rat_coeffs();
        let b = c.constant().clone();
        match c.relation() {
            Relation::Eq => self.eqs.push((a, b)),
            Relation::Lt => self.ineqs.push(Row { a, b, strict: true }),
            Relation::Le => self.ineqs.push(Row { a, b, strict: false }),
        }
    }

    pub fn push_eq(&mut self, a: Vec<Rat>, b: Rat) {
        self.eqs.push((a, b));
    }

    /// Replaces variable `var` by the constant `value`.
    pub fn fix(&mut self, var: usize, value: &Rat) {
        for (a, b) in self.eqs.iter_mut() {
            let t = &a[var] * value;
            *b -= t;
            a[var] = Rat::zero();
        }
        for r in self.ineqs.iter_mut() {
            let t = &r.a[var] * value;
            r.b -= t;
            r.a[var] = Rat::zero();
        }
        self.cleanup();
    }

    /// Projects `var` away (exact over Q).
    pub fn eliminate(&mut self, var: usize) {
        if self.infeasible {
            return;
        }
        if let Some(k) = self.eqs.iter().position(|(a, _)| !a[var].is_zero()) {
            let (pa, pb) = self.eqs.swap_remove(k);
            let pivot = pa[var].clone();
            let substitute = |a: &mut Vec<Rat>, b: &mut Rat| {
                if a[var].is_zero() {
                    return;
                }
                let f = &a[var] / &pivot;
                for (x, p) in a.iter_mut().zip(&pa) {
                    *x -= &f * p;
                }
                *b -= &f * &pb;
                a[var] = Rat::zero();
            };
            for (a, b) in self.eqs.iter_mut() {
                substitute(a, b);
            }
            for r in self.ineqs.iter_mut() {
                substitute(&mut r.a, &mut r.b);
            }
        } else {
            let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
            for r in self.ineqs.drain(..) {
                if r.a[var].is_positive() {
                    pos.push(r);
                } else if r.a[var].is_negative() {
                    neg.push(r);
                } else {
                    rest.push(r);
                }
            }
            for p in &pos {
                for q in &neg {
                    // p.a[var] > 0 > q.a[var]: combine with positive weights.
                    let wp = -q.a[var].clone();
                    let wq = p.a[var].clone();
                    let a: Vec<Rat> = p
                        .a
                        .iter()
                        .zip(&q.a)
                        .map(|(x, y)| &wp * x + &wq * y)
                        .collect();
                    let b = &wp * &p.b + &wq * &q.b;
                    let mut a = a;
                    a[var] = Rat::zero();
                    rest.push(Row {
                        a,
                        b,
                        strict: p.strict || q.strict,
                    });
                }
            }
            self.ineqs = rest;
        }
        self.cleanup();
    }

    pub fn eliminate_all(&mut self, order: &[usize]) {
        for &v in order {
            self.eliminate(v);
            if self.infeasible {
                return;
            }
        }
    }

    /// Feasibility over Q, eliminating variables in index order.
    pub fn is_feasible(&self) -> bool {
        let order: Vec<usize> = (0..self.n).collect();
        self.is_feasible_with_order(&order)
    }

    pub fn is_feasible_with_order(&self, order: &[usize]) -> bool {
        let mut s = self.clone();
        s.eliminate_all(order);
        if s.infeasible {
            return false;
        }
        // Any remaining variable not in `order` is free; eliminate it too.
        let rest: Vec<usize> = (0..s.n).filter(|v| !order.contains(v)).collect();
        s.eliminate_all(&rest);
        !s.infeasible
    }

    /// Drops trivial rows, detects contradictions, and keeps only the tightest
    /// inequality per direction.
    pub fn cleanup(&mut self) {
        if self.infeasible {
            return;
        }
        let mut eqs: BTreeMap<Vec<Rat>, Rat> = BTreeMap::new();
        for (a, b) in self.eqs.drain(..) {
            let Some(first) = a.iter().find(|x| !x.is_zero()).cloned() else {
                if !b.is_zero() {
                    self.infeasible = true;
                    return;
                }
                continue;
            };
            let a: Vec<Rat> = a.iter().map(|x| x / &first).collect();
            let b = b / &first;
            if let Some(old) = eqs.get(&a) {
                if *old != b {
                    self.infeasible = true;
                    return;
                }
            } else {
                eqs.insert(a, b);
            }
        }
        self.eqs = eqs.into_iter().collect();

        let mut ineqs: BTreeMap<Vec<Rat>, (Rat, bool)> = BTreeMap::new();
        for r in self.ineqs.drain(..) {
            let Some(first) = r.a.iter().find(|x| !x.is_zero()).map(|x| x.abs()) else {
                let ok = if r.strict {
                    r.b.is_positive()
                } else {
                    !r.b.is_negative()
                };
                if !ok {
                    self.infeasible = true;
                    return;
                }
                continue;
            };
            let a: Vec<Rat> = r.a.iter().map(|x| x / &first).collect();
            let b = r.b / &first;
            match ineqs.get_mut(&a) {
                Some(old) => {
                    if b < old.0 || (b == old.0 && r.strict) {
                        *old = (b, r.strict);
                    }
                }
                None => {
                    ineqs.insert(a, (b, r.strict));
                }
            }
        }
        self.ineqs = ineqs
            .into_iter()
            .map(|(a, (b, strict))| Row { a, b, strict })
            .collect();
    }

    /// Converts back to normalized constraints over the columns in `keep`.
    pub fn to_constraints(&self, keep: &[usize]) -> Vec<Normalized> {
        if self.infeasible {
            return vec![Normalized::False];
        }
        let pick = |a: &[Rat]| keep.iter().map(|&i| a[i].clone()).collect::<Vec<_>>();
        let mut out: Vec<Normalized> = self
            .eqs
            .iter()
            .map(|(a, b)| LinConstraint::new(&pick(a), Relation::Eq, b.clone()))
            .collect();
        out.extend(self.ineqs.iter().map(|r| {
            let rel = if r.strict { Relation::Lt } else { Relation::Le };
            LinConstraint::new(&pick(&r.a), rel, r.b.clone())
        }));
        out
    }

    /// Bounds on `var` in a system where every other variable has been fixed
    /// or eliminated.
    pub fn bounds(&self, var: usize) -> Bounds {
        let mut out = Bounds::default();
        if self.infeasible {
            out.empty = true;
            return out;
        }
        for (a, b) in &self.eqs {
            if !a[var].is_zero() {
                let v = b / &a[var];
                out.tighten_lo(v.clone(), false);
                out.tighten_hi(v, false);
            }
        }
        for r in &self.ineqs {
            let c = &r.a[var];
            if c.is_positive() {
                out.tighten_hi(&r.b / c, r.strict);
            } else if c.is_negative() {
                out.tighten_lo(&r.b / c, r.strict);
            }
        }
        if let (Some((l, ls)), Some((h, hs))) = (&out.lo, &out.hi) {
            if l > h || (l == h && (*ls || *hs)) {
                out.empty = true;
            }
        }
        out
    }
}

/// An interval with optional, possibly strict, endpoints.
#[derive(Clone, Debug, Default, PartialEq)]
pub(crate) struct Bounds {
    pub lo: Option<(Rat, bool)>,
    pub hi: Option<(Rat, bool)>,
    pub empty: bool,
}

impl Bounds {
    fn tighten_lo(&mut self, v: Rat, strict: bool) {
        match &self.lo {
            Some((old, os)) if *old > v || (*old == v && (*os || !strict)) => {}
            _ => self.lo = Some((v, strict)),
        }
    }

    fn tighten_hi(&mut self, v: Rat, strict: bool) {
        match &self.hi {
            Some((old, os)) if *old < v || (*old == v && (*os || !strict)) => {}
            _ => self.hi = Some((v, strict)),
        }
    }

    /// The single admissible value when the interval is degenerate.
    pub fn point(&self) -> Option<&Rat> {
        match (&self.lo, &self.hi) {
            (Some((l, false)), Some((h, false))) if l == h && !self.empty => Some(l),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn row(a: &[i64], b: Rat, strict: bool) -> Row {
        Row {
            a: a.iter().map(|&x| int(x)).collect(),
            b,
            strict,
        }
    }

    #[test]
    fn strict_pair_is_infeasible() {
        // x > 0 and x < 0
        let mut s = System::new(1);
        s.ineqs = vec![row(&[-1], int(0), true), row(&[1], int(0), true)];
        assert!(!s.is_feasible());
        // x >= 0 and x <= 0 is the point 0
        let mut s = System::new(1);
        s.ineqs = vec![row(&[-1], int(0), false), row(&[1], int(0), false)];
        assert!(s.is_feasible());
    }

    #[test]
    fn equality_substitution() {
        // 2x = 1, x > 1
        let mut s = System::new(1);
        s.push_eq(vec![int(2)], int(1));
        s.ineqs = vec![row(&[-1], int(-1), true)];
        assert!(!s.is_feasible());
        // x > y, y > 5 is feasible, e.g. (7, 6)
        let mut s = System::new(2);
        s.ineqs = vec![row(&[-1, 1], int(0), true), row(&[0, -1], int(-5), true)];
        assert!(s.is_feasible());
    }

    #[test]
    fn bounds_after_projection() {
        // 0 < y < x < 1: projecting y leaves 0 < x < 1.
        let mut s = System::new(2);
        s.ineqs = vec![
            row(&[0, -1], int(0), true),
            row(&[-1, 1], int(0), true),
            row(&[1, 0], int(1), true),
        ];
        s.eliminate(1);
        let b = s.bounds(0);
        assert_eq!(b.lo, Some((int(0), true)));
        assert_eq!(b.hi, Some((int(1), true)));
        let mut t = System::new(1);
        t.push_eq(vec![int(3)], int(1));
        assert_eq!(t.bounds(0).point(), Some(&rat(1, 3)));
    }
}
