use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::rat::{invert, rank, Rat};
use crate::sets::fm::System;
use crate::sets::Cell;

/// `x ↦ A x + t` with `A` an `n_out × n_in` rational matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    n_in: usize,
    matrix: Vec<Vec<Rat>>,
    offset: Vec<Rat>,
}

impl AffineMap {
    pub fn new(n_in: usize, matrix: Vec<Vec<Rat>>, offset: Vec<Rat>) -> Result<AffineMap> {
        if matrix.len() != offset.len() {
            return Err(Error::DimMismatch {
                expected: matrix.len(),
                found: offset.len(),
            });
        }
        if let Some(row) = matrix.iter().find(|r| r.len() != n_in) {
            return Err(Error::DimMismatch {
                expected: n_in,
                found: row.len(),
            });
        }
        Ok(AffineMap { n_in, matrix, offset })
    }

    pub fn identity(n: usize) -> AffineMap {
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
            .collect();
        AffineMap {
            n_in: n,
            matrix,
            offset: vec![Rat::zero(); n],
        }
    }

    pub fn translation(t: Vec<Rat>) -> AffineMap {
        let mut m = AffineMap::identity(t.len());
        m.offset = t;
        m
    }

    /// `x ↦ u·x`.
    pub fn scaling(n: usize, u: &Rat) -> AffineMap {
        let mut m = AffineMap::identity(n);
        for (i, row) in m.matrix.iter_mut().enumerate() {
            row[i] = u.clone();
        }
        m
    }

    /// `x ↦ x_σ`, i.e. output `i` is input `perm[i]`.
    pub fn permutation(perm: &[usize]) -> AffineMap {
        let n = perm.len();
        let matrix = perm
            .iter()
            .map(|&p| (0..n).map(|j| if j == p { Rat::one() } else { Rat::zero() }).collect())
            .collect();
        AffineMap {
            n_in: n,
            matrix,
            offset: vec![Rat::zero(); n],
        }
    }

    /// The constant map from `G⁰` to the point `t`.
    pub fn constant(t: Vec<Rat>) -> AffineMap {
        AffineMap {
            n_in: 0,
            matrix: vec![vec![]; t.len()],
            offset: t,
        }
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn n_out(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<Rat>] {
        &self.matrix
    }

    pub fn offset(&self) -> &[Rat] {
        &self.offset
    }

    pub fn apply(&self, x: &[Rat]) -> Vec<Rat> {
        self.matrix
            .iter()
            .zip(&self.offset)
            .map(|(row, t)| row.iter().zip(x).map(|(a, v)| a * v).fold(t.clone(), |s, v| s + v))
            .collect()
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &AffineMap) -> AffineMap {
        assert_eq!(self.n_out(), next.n_in, "composition dimensions");
        let matrix = next
            .matrix
            .iter()
            .map(|row| {
                (0..self.n_in)
                    .map(|j| {
                        row.iter()
                            .zip(&self.matrix)
                            .map(|(a, m)| a * &m[j])
                            .fold(Rat::zero(), |s, v| s + v)
                    })
                    .collect()
            })
            .collect();
        AffineMap {
            n_in: self.n_in,
            matrix,
            offset: next.apply(&self.offset),
        }
    }

    /// `(x, y) ↦ (a x, b y)`.
    pub fn block_diag(a: &AffineMap, b: &AffineMap) -> AffineMap {
        let n_in = a.n_in + b.n_in;
        let mut matrix = Vec::new();
        for row in &a.matrix {
            let mut r = row.clone();
            r.extend(std::iter::repeat_n(Rat::zero(), b.n_in));
            matrix.push(r);
        }
        for row in &b.matrix {
            let mut r = vec![Rat::zero(); a.n_in];
            r.extend(row.iter().cloned());
            matrix.push(r);
        }
        let mut offset = a.offset.clone();
        offset.extend(b.offset.iter().cloned());
        AffineMap { n_in, matrix, offset }
    }

    /// Entry-wise definability: matrix denominators supported on the inverted
    /// primes and offsets in `G`, so `Gⁿ` is carried into `Gᵐ`.
    pub fn is_definable(&self, g: &GroupSpec) -> bool {
        self.matrix
            .iter()
            .flatten()
            .all(|a| g.supports_denominator(a.denom()))
            && self.offset.iter().all(|t| g.contains(t))
    }

    fn hull_rows(cell: &Cell) -> Vec<(Vec<Rat>, Rat)> {
        cell.hull_equalities()
            .iter()
            .map(|e| (e.rat_coeffs(), e.constant().clone()))
            .collect()
    }

    /// Injective on the affine hull of a Q-non-empty cell: the kernel of the
    /// matrix meets the hull's direction space trivially.
    pub fn is_injective_on(&self, cell: &Cell) -> bool {
        if cell.is_empty_q() {
            return true;
        }
        let mut rows: Vec<Vec<Rat>> = Self::hull_rows(cell).into_iter().map(|(a, _)| a).collect();
        rows.extend(self.matrix.iter().cloned());
        rank(&rows) == self.n_in
    }

    /// The exact image `{A x + t | x ∈ cell}`, computed by adjoining
    /// `y − A x − t = 0` and eliminating `x`.
    pub fn image_cell(&self, cell: &Cell) -> Result<Cell> {
        if cell.dim() != self.n_in {
            return Err(Error::DimMismatch {
                expected: self.n_in,
                found: cell.dim(),
            });
        }
        if cell.is_empty_q() {
            return Ok(Cell::empty(self.n_out()));
        }
        if !self.is_injective_on(cell) {
            return Err(Error::NotInjectiveOnHull);
        }
        let (n, m) = (self.n_in, self.n_out());
        let mut s = System::new(n + m);
        for c in cell.constraints() {
            let lifted = c.lift(0, n + m);
            s.push(&lifted);
        }
        for (i, (row, t)) in self.matrix.iter().zip(&self.offset).enumerate() {
            let mut a: Vec<Rat> = row.iter().map(|x| -x.clone()).collect();
            a.extend((0..m).map(|j| if j == i { Rat::one() } else { Rat::zero() }));
            s.push_eq(a, t.clone());
        }
        s.cleanup();
        let xs: Vec<usize> = (0..n).collect();
        s.eliminate_all(&xs);
        let keep: Vec<usize> = (n..n + m).collect();
        Ok(Cell::new(m, s.to_constraints(&keep)).simplify())
    }

    /// An affine map `h` with `h(self(x)) = x` for every `x` in the affine
    /// hull of `cell`.
    pub fn inverse_on(&self, cell: &Cell) -> Result<AffineMap> {
        let (n, m) = (self.n_in, self.n_out());
        let hull = if cell.is_empty_q() { vec![] } else { Self::hull_rows(cell) };
        // Candidate rows: map rows first, then hull equalities.
        enum Src {
            Out(usize),
            Hull(usize),
        }
        let candidates: Vec<(Vec<Rat>, Src)> = self
            .matrix
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), Src::Out(i)))
            .chain(hull.iter().enumerate().map(|(k, (a, _))| (a.clone(), Src::Hull(k))))
            .collect();
        let mut chosen: Vec<usize> = Vec::new();
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for (idx, (r, _)) in candidates.iter().enumerate() {
            if rows.len() == n {
                break;
            }
            rows.push(r.clone());
            if rank(&rows) == rows.len() {
                chosen.push(idx);
            } else {
                rows.pop();
            }
        }
        if rows.len() < n {
            return Err(Error::NotInjectiveOnHull);
        }
        let inv = invert(&rows).ok_or(Error::NotInjectiveOnHull)?;
        let mut matrix = vec![vec![Rat::zero(); m]; n];
        let mut offset = vec![Rat::zero(); n];
        for (k, &idx) in chosen.iter().enumerate() {
            match candidates[idx].1 {
                Src::Out(i) => {
                    for j in 0..n {
                        matrix[j][i] += &inv[j][k];
                        offset[j] -= &inv[j][k] * &self.offset[i];
                    }
                }
                Src::Hull(h) => {
                    for j in 0..n {
                        offset[j] += &inv[j][k] * &hull[h].1;
                    }
                }
            }
        }
        Ok(AffineMap { n_in: m, matrix, offset })
    }

    /// The cell `{x | A x + t ∈ cell}`.
    pub fn pullback(&self, cell: &Cell) -> Cell {
        cell.substitute(&self.matrix, &self.offset, self.n_in)
    }

    /// Renders the outputs as linear expressions in `names`.
    pub fn render_outputs(&self, names: &[String]) -> Vec<String> {
        self.matrix
            .iter()
            .zip(&self.offset)
            .map(|(row, t)| crate::maps::render_expr(row, t, names))
            .collect()
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.n_in).map(|i| format!("x{i}")).collect();
        write!(f, "({}) -> ({})", names.join(", "), self.render_outputs(&names).join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};
    use crate::sets::{LinConstraint, Relation, SemiSet};

    fn shear() -> AffineMap {
        AffineMap::new(2, vec![vec![int(1), int(-1)], vec![int(0), int(1)]], vec![int(0), int(0)]).unwrap()
    }

    // Σ coeffs·x > c
    fn gt(coeffs: &[i64], c: Rat) -> crate::sets::Normalized {
        let neg: Vec<Rat> = coeffs.iter().map(|&a| int(-a)).collect();
        LinConstraint::new(&neg, Relation::Lt, -c)
    }

    #[test]
    fn shear_applies() {
        assert_eq!(shear().apply(&[int(5), int(2)]), vec![int(3), int(2)]);
        let succ = AffineMap::translation(vec![int(1)]);
        assert_eq!(succ.apply(&[int(7)]), vec![int(8)]);
    }

    #[test]
    fn shear_image_of_upper_triangle() {
        // {x > y > 5} -> (0,∞) × (5,∞)
        let tri = Cell::new(2, [gt(&[1, -1], int(0)), gt(&[0, 1], int(5))]);
        let img = shear().image_cell(&tri).unwrap();
        let expected = SemiSet::interval(Some(&int(0)), None)
            .unwrap()
            .product(&SemiSet::interval(Some(&int(5)), None).unwrap());
        assert_eq!(SemiSet::from_cell(img), expected);
    }

    #[test]
    fn diagonal_image() {
        let diag = AffineMap::new(1, vec![vec![int(1)], vec![int(1)]], vec![int(0), int(0)]).unwrap();
        let ray = Cell::new(1, [gt(&[1], int(5))]);
        let img = diag.image_cell(&ray).unwrap();
        assert!(img.contains(&[int(6), int(6)]));
        assert!(!img.contains(&[int(6), int(7)]));
        assert_eq!(img.hull_dim(), Some(1));
        let back = diag.inverse_on(&ray).unwrap();
        assert_eq!(back.apply(&[int(6), int(6)]), vec![int(6)]);
    }

    #[test]
    fn translated_ray() {
        let down = AffineMap::translation(vec![int(-1)]);
        let img = down.image_cell(&Cell::new(1, [gt(&[1], int(1))])).unwrap();
        assert_eq!(img, Cell::new(1, [gt(&[1], int(0))]));
    }

    #[test]
    fn projection_is_not_injective_on_plane() {
        let proj = AffineMap::new(2, vec![vec![int(1), int(0)]], vec![int(0)]).unwrap();
        assert_eq!(proj.image_cell(&Cell::universe(2)), Err(Error::NotInjectiveOnHull));
        // ...but it is on the diagonal.
        let diag = Cell::new(2, [LinConstraint::new(&[int(1), int(-1)], Relation::Eq, int(0))]);
        assert!(proj.is_injective_on(&diag));
        let inv = proj.inverse_on(&diag).unwrap();
        assert_eq!(inv.apply(&[int(3)]), vec![int(3), int(3)]);
    }

    #[test]
    fn definability_is_entrywise() {
        let half = AffineMap::scaling(1, &rat(1, 2));
        assert!(half.is_definable(&GroupSpec::localized([2]).unwrap()));
        assert!(!half.is_definable(&GroupSpec::localized([3]).unwrap()));
        let shift = AffineMap::translation(vec![rat(1, 2)]);
        assert!(!shift.is_definable(&GroupSpec::localized([3]).unwrap()));
    }

    #[test]
    fn inverse_of_shear() {
        let inv = shear().inverse_on(&Cell::universe(2)).unwrap();
        let expected = AffineMap::new(2, vec![vec![int(1), int(1)], vec![int(0), int(1)]], vec![int(0), int(0)]).unwrap();
        assert_eq!(inv, expected);
    }

    #[test]
    fn composition_order() {
        let f = AffineMap::translation(vec![int(1)]);
        let g = AffineMap::scaling(1, &int(2));
        assert_eq!(f.then(&g).apply(&[int(3)]), vec![int(8)]);
    }
}
