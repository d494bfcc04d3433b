use std::fmt;

use super::cell::{bound_constraint, Cell};
use super::lattice::has_g_point;
use super::linear::{Normalized, Relation};
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::rat::Rat;

/// A finite union of cells of a common dimension: a definable set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemiSet {
    dim: usize,
    cells: Vec<Cell>,
}

impl SemiSet {
    pub fn new(dim: usize, cells: impl IntoIterator<Item = Cell>) -> Result<SemiSet> {
        let mut out = Vec::new();
        for c in cells {
            if c.dim() != dim {
                return Err(Error::DimMismatch {
                    expected: dim,
                    found: c.dim(),
                });
            }
            if !c.is_falsum() {
                out.push(c);
            }
        }
        out.sort();
        out.dedup();
        Ok(SemiSet { dim, cells: out })
    }

    pub fn from_cell(cell: Cell) -> SemiSet {
        let dim = cell.dim();
        SemiSet::new(dim, [cell]).expect("single cell")
    }

    pub fn empty(dim: usize) -> SemiSet {
        SemiSet { dim, cells: vec![] }
    }

    pub fn universe(dim: usize) -> SemiSet {
        SemiSet::from_cell(Cell::universe(dim))
    }

    /// The singleton `G⁰`.
    pub fn point() -> SemiSet {
        SemiSet::from_cell(Cell::point())
    }

    /// The open interval `(lo, hi)`; `None` stands for an infinite endpoint.
    pub fn interval(lo: Option<&Rat>, hi: Option<&Rat>) -> Result<SemiSet> {
        if let (Some(l), Some(h)) = (lo, hi) {
            if l >= h {
                return Err(Error::BadBounds);
            }
        }
        let mut cs: Vec<Normalized> = Vec::new();
        if let Some(l) = lo {
            cs.push(bound_constraint(1, 0, l, Relation::Lt, false));
        }
        if let Some(h) = hi {
            cs.push(bound_constraint(1, 0, h, Relation::Lt, true));
        }
        Ok(SemiSet::from_cell(Cell::new(1, cs)))
    }

    /// The singleton `{a}` inside `G¹`.
    pub fn singleton(a: &Rat) -> SemiSet {
        SemiSet::from_cell(Cell::new(1, [bound_constraint(1, 0, a, Relation::Eq, true)]))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    fn check_dim(&self, other: &SemiSet) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimMismatch {
                expected: self.dim,
                found: other.dim,
            })
        }
    }

    pub fn union(&self, other: &SemiSet) -> Result<SemiSet> {
        self.check_dim(other)?;
        SemiSet::new(self.dim, self.cells.iter().chain(&other.cells).cloned())
    }

    pub fn intersect(&self, other: &SemiSet) -> Result<SemiSet> {
        self.check_dim(other)?;
        let mut cells = Vec::new();
        for a in &self.cells {
            for b in &other.cells {
                let c = a.intersect(b)?;
                if !c.is_empty_q() {
                    cells.push(c);
                }
            }
        }
        SemiSet::new(self.dim, cells)
    }

    pub fn product(&self, other: &SemiSet) -> SemiSet {
        let cells = self
            .cells
            .iter()
            .flat_map(|a| other.cells.iter().map(move |b| a.product(b)));
        SemiSet::new(self.dim + other.dim, cells).expect("product dims")
    }

    /// `self ∖ other`, complements of constraints distributed into disjoint
    /// cells and Q-empty cells pruned.
    pub fn difference(&self, other: &SemiSet) -> Result<SemiSet> {
        self.check_dim(other)?;
        let mut pending: Vec<Cell> = self.cells.clone();
        for b in &other.cells {
            pending = pending.iter().flat_map(|a| a.minus(b)).collect();
            if pending.is_empty() {
                break;
            }
        }
        SemiSet::new(self.dim, pending)
    }

    pub fn is_empty_q(&self) -> bool {
        self.cells.iter().all(Cell::is_empty_q)
    }

    /// An extensionally equal union of pairwise disjoint cells.
    pub fn disjointify(&self) -> SemiSet {
        let mut out: Vec<Cell> = Vec::new();
        for (i, c) in self.cells.iter().enumerate() {
            let mut pieces = vec![c.clone()];
            for prev in &self.cells[..i] {
                pieces = pieces.iter().flat_map(|p| p.minus(prev)).collect();
            }
            out.extend(pieces.into_iter().filter(|p| !p.is_empty_q()));
        }
        SemiSet::new(self.dim, out).expect("same dim")
    }

    /// Exact membership of a point of `Gⁿ`.
    pub fn member(&self, g: &GroupSpec, point: &[Rat]) -> Result<bool> {
        if point.len() != self.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                found: point.len(),
            });
        }
        if !point.iter().all(|x| g.contains(x)) {
            return Ok(false);
        }
        Ok(self.cells.iter().any(|c| c.contains(point)))
    }

    pub fn has_g_point(&self, g: &GroupSpec) -> Result<bool> {
        for c in &self.cells {
            if has_g_point(g, c)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn subset_g(&self, g: &GroupSpec, other: &SemiSet) -> Result<bool> {
        Ok(!self.difference(other)?.has_g_point(g)?)
    }

    pub fn equals_g(&self, g: &GroupSpec, other: &SemiSet) -> Result<bool> {
        Ok(self.subset_g(g, other)? && other.subset_g(g, self)?)
    }

    pub fn disjoint_g(&self, g: &GroupSpec, other: &SemiSet) -> Result<bool> {
        Ok(!self.intersect(other)?.has_g_point(g)?)
    }

    /// Removes redundant constraints from every cell and drops Q-empty cells.
    pub fn simplify(&self) -> SemiSet {
        let cells = self.cells.iter().map(Cell::simplify).filter(|c| !c.is_falsum());
        SemiSet::new(self.dim, cells).expect("same dim")
    }
}

impl fmt::Display for SemiSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cells.is_empty() {
            return write!(f, "∅^{}", self.dim);
        }
        if self.dim == 0 {
            return write!(f, "pt");
        }
        let parts: Vec<String> = self.cells.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" | "))
    }
}
