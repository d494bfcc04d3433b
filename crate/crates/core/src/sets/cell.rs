use std::fmt;

use num_traits::Zero;

use super::fm::System;
use super::linear::{render_constraint, LinConstraint, Normalized, Relation};
use crate::error::{Error, Result};
use crate::rat::Rat;

/// A convex rational polyhedron piece: a conjunction of linear constraints in
/// `dim` variables, kept sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    dim: usize,
    constraints: Vec<LinConstraint>,
}

impl Cell {
    pub fn new(dim: usize, constraints: impl IntoIterator<Item = Normalized>) -> Cell {
        let mut cs = Vec::new();
        for n in constraints {
            match n {
                Normalized::True => {}
                Normalized::False => return Cell::empty(dim),
                Normalized::Constraint(c) => {
                    assert_eq!(c.dim(), dim, "constraint dimension");
                    cs.push(c);
                }
            }
        }
        Cell::from_constraints(dim, cs)
    }

    pub fn from_constraints(dim: usize, mut constraints: Vec<LinConstraint>) -> Cell {
        if constraints.iter().any(LinConstraint::is_falsum) {
            return Cell::empty(dim);
        }
        constraints.sort();
        constraints.dedup();
        Cell { dim, constraints }
    }

    pub fn universe(dim: usize) -> Cell {
        Cell {
            dim,
            constraints: Vec::new(),
        }
    }

    /// The canonical syntactically empty cell `{0 < 0}`.
    pub fn empty(dim: usize) -> Cell {
        Cell {
            dim,
            constraints: vec![LinConstraint::falsum(dim)],
        }
    }

    /// The one-point space `G⁰`.
    pub fn point() -> Cell {
        Cell::universe(0)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[LinConstraint] {
        &self.constraints
    }

    pub fn is_falsum(&self) -> bool {
        self.constraints.iter().any(LinConstraint::is_falsum)
    }

    pub fn with(&self, extra: impl IntoIterator<Item = Normalized>) -> Cell {
        let cs = self
            .constraints
            .iter()
            .cloned()
            .map(Normalized::Constraint)
            .chain(extra);
        Cell::new(self.dim, cs)
    }

    pub fn intersect(&self, other: &Cell) -> Result<Cell> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(self.with(other.constraints.iter().cloned().map(Normalized::Constraint)))
    }

    /// `self × other` with `self`'s variables first.
    pub fn product(&self, other: &Cell) -> Cell {
        let total = self.dim + other.dim;
        let cs = self
            .constraints
            .iter()
            .map(|c| c.lift(0, total))
            .chain(other.constraints.iter().map(|c| c.lift(self.dim, total)))
            .collect();
        Cell::from_constraints(total, cs)
    }

    /// Exact membership over Q.
    pub fn contains(&self, point: &[Rat]) -> bool {
        point.len() == self.dim && self.constraints.iter().all(|c| c.holds_at(point))
    }

    pub(crate) fn system(&self) -> System {
        System::from_constraints(self.dim, &self.constraints)
    }

    /// No rational solution.
    pub fn is_empty_q(&self) -> bool {
        self.is_falsum() || !self.system().is_feasible()
    }

    /// Emptiness with an explicit elimination order (a permutation of the
    /// variables); the verdict does not depend on the order.
    pub fn is_empty_q_with_order(&self, order: &[usize]) -> bool {
        self.is_falsum() || !self.system().is_feasible_with_order(order)
    }

    /// `self ∖ other` as a list of pairwise disjoint, Q-non-empty cells.
    pub fn minus(&self, other: &Cell) -> Vec<Cell> {
        if other.is_falsum() {
            return if self.is_empty_q() { vec![] } else { vec![self.clone()] };
        }
        let mut out = Vec::new();
        let mut prefix = self.clone();
        for c in &other.constraints {
            for neg in c.negate() {
                let piece = prefix.with([neg]);
                if !piece.is_empty_q() {
                    out.push(piece);
                }
            }
            prefix = prefix.with([Normalized::Constraint(c.clone())]);
            if prefix.is_empty_q() {
                break;
            }
        }
        out
    }

    /// Equalities cutting out the affine hull (explicit ones plus the
    /// non-strict inequalities that are tight on the whole cell). Assumes the
    /// cell is non-empty over Q.
    pub fn hull_equalities(&self) -> Vec<LinConstraint> {
        let mut eqs = Vec::new();
        for c in &self.constraints {
            match c.relation() {
                Relation::Eq => eqs.push(c.clone()),
                Relation::Lt => {}
                Relation::Le => {
                    let strict = LinConstraint::new(&c.rat_coeffs(), Relation::Lt, c.constant().clone());
                    if self.with([strict]).is_empty_q() {
                        if let Normalized::Constraint(e) =
                            LinConstraint::new(&c.rat_coeffs(), Relation::Eq, c.constant().clone())
                        {
                            eqs.push(e);
                        }
                    }
                }
            }
        }
        eqs.sort();
        eqs.dedup();
        eqs
    }

    /// Dimension of the affine hull, `None` when empty over Q.
    pub fn hull_dim(&self) -> Option<usize> {
        if self.is_empty_q() {
            return None;
        }
        let rows: Vec<Vec<Rat>> = self.hull_equalities().iter().map(|c| c.rat_coeffs()).collect();
        Some(self.dim - crate::rat::rank(&rows))
    }

    /// Drops constraints implied by the others. The result describes the same
    /// set; Q-empty cells collapse to [`Cell::empty`].
    pub fn simplify(&self) -> Cell {
        if self.is_empty_q() {
            return Cell::empty(self.dim);
        }
        let mut kept: Vec<LinConstraint> = self.constraints.clone();
        let mut i = 0;
        while i < kept.len() {
            let others: Vec<Normalized> = kept
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, c)| Normalized::Constraint(c.clone()))
                .collect();
            let rest = Cell::new(self.dim, others);
            let redundant = kept[i]
                .negate()
                .into_iter()
                .all(|n| rest.with([n]).is_empty_q());
            if redundant {
                kept.remove(i);
            } else {
                i += 1;
            }
        }
        Cell::from_constraints(self.dim, kept)
    }

    /// Exact projection onto the variables in `keep` (in that order).
    pub fn project(&self, keep: &[usize]) -> Cell {
        let mut s = self.system();
        let drop: Vec<usize> = (0..self.dim).filter(|v| !keep.contains(v)).collect();
        s.eliminate_all(&drop);
        Cell::new(keep.len(), s.to_constraints(keep))
    }

    /// Replaces variables by affine expressions: `xᵢ = Σⱼ m[i][j] yⱼ + t[i]`.
    pub fn substitute(&self, matrix: &[Vec<Rat>], offset: &[Rat], new_dim: usize) -> Cell {
        let cs = self.constraints.iter().map(|c| {
            let mut coeffs = vec![Rat::zero(); new_dim];
            let mut constant = c.constant().clone();
            for (i, a) in c.rat_coeffs().iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, m) in matrix[i].iter().enumerate() {
                    coeffs[j] += a * m;
                }
                constant -= a * &offset[i];
            }
            LinConstraint::new(&coeffs, c.relation(), constant)
        });
        Cell::new(new_dim, cs.collect::<Vec<_>>())
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.constraints.is_empty() {
            return "0 = 0".to_string();
        }
        self.constraints
            .iter()
            .map(|c| render_constraint(c, names))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.dim).map(|i| format!("x{i}")).collect();
        write!(f, "{{ ({}) : {} }}", names.join(", "), self.render(&names))
    }
}

/// `lo < x < hi` style constraints for one variable among `dim`.
pub(crate) fn bound_constraint(dim: usize, var: usize, value: &Rat, rel: Relation, upper: bool) -> Normalized {
    let mut coeffs = vec![Rat::zero(); dim];
    coeffs[var] = if upper { Rat::from_integer(1.into()) } else { Rat::from_integer((-1).into()) };
    let constant = if upper { value.clone() } else { -value.clone() };
    LinConstraint::new(&coeffs, rel, constant)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn lt(a: &[i64], b: Rat) -> Normalized {
        LinConstraint::new(&a.iter().map(|&x| int(x)).collect::<Vec<_>>(), Relation::Lt, b)
    }
    fn le(a: &[i64], b: Rat) -> Normalized {
        LinConstraint::new(&a.iter().map(|&x| int(x)).collect::<Vec<_>>(), Relation::Le, b)
    }
    fn eq(a: &[i64], b: Rat) -> Normalized {
        LinConstraint::new(&a.iter().map(|&x| int(x)).collect::<Vec<_>>(), Relation::Eq, b)
    }

    #[test]
    fn emptiness_examples() {
        assert!(Cell::new(1, [lt(&[-1], int(0)), lt(&[1], int(0))]).is_empty_q());
        // x > y > 5
        assert!(!Cell::new(2, [lt(&[-1, 1], int(0)), lt(&[0, -1], int(-5))]).is_empty_q());
        assert!(Cell::new(1, [eq(&[2], int(1)), lt(&[-1], int(-1))]).is_empty_q());
        assert!(Cell::new(2, [lt(&[0, 0], int(0))]).is_falsum());
    }

    #[test]
    fn difference_of_rays() {
        let pos = Cell::new(1, [lt(&[-1], int(0))]);
        let past_one = Cell::new(1, [lt(&[-1], int(-1))]);
        let d = pos.minus(&past_one);
        assert_eq!(d, vec![Cell::new(1, [lt(&[-1], int(0)), le(&[1], int(1))])]);
    }

    #[test]
    fn implicit_equalities_show_in_hull() {
        // x <= 1/2, x >= 1/2, y > 0
        let c = Cell::new(2, [le(&[1, 0], rat(1, 2)), le(&[-1, 0], rat(-1, 2)), lt(&[0, -1], int(0))]);
        let eqs = c.hull_equalities();
        assert_eq!(eqs.len(), 1);
        assert_eq!(eqs[0].relation(), Relation::Eq);
        assert_eq!(c.hull_dim(), Some(1));
    }

    #[test]
    fn simplify_removes_implied_bounds() {
        // x > 0, x > 1, x < 5  ->  1 < x < 5
        let c = Cell::new(1, [lt(&[-1], int(0)), lt(&[-1], int(-1)), lt(&[1], int(5))]);
        assert_eq!(c.simplify(), Cell::new(1, [lt(&[-1], int(-1)), lt(&[1], int(5))]));
    }

    #[test]
    fn projection_of_triangle() {
        // 0 < y < x < 1  projected on x  ->  0 < x < 1
        let c = Cell::new(2, [lt(&[0, -1], int(0)), lt(&[-1, 1], int(0)), lt(&[1, 0], int(1))]);
        assert_eq!(c.project(&[0]), Cell::new(1, [lt(&[-1], int(0)), lt(&[1], int(1))]));
    }
}
