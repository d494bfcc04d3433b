use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use super::cell::Cell;
use super::fm::System;
use super::lattice::{has_g_point, integer_range};
use super::semiset::SemiSet;
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::rat::Rat;

pub const SAMPLE_RETRIES: u32 = 200;

/// Samples `Gⁿ`-points of one cell.
///
/// Equalities (explicit and implicit) are solved for pivot variables; the
/// remaining free variables are drawn one at a time inside the bounds given
/// by the projection of the cell onto the variables drawn so far. Draws whose
/// pivot coordinates leave `G` are rejected.
#[derive(Clone, Debug)]
pub struct CellSampler {
    group: GroupSpec,
    cell: Cell,
    /// `xᵢ = exprs[i].0 · x + exprs[i].1`, only free variables on the right.
    exprs: Vec<(Vec<Rat>, Rat)>,
    free: Vec<usize>,
    projections: Vec<System>,
}

impl CellSampler {
    pub fn new(g: &GroupSpec, cell: &Cell) -> CellSampler {
        let n = cell.dim();
        let eqs = if cell.is_empty_q() { vec![] } else { cell.hull_equalities() };
        // Reduced row echelon form of the equality system.
        let mut rows: Vec<(Vec<Rat>, Rat)> = eqs.iter().map(|e| (e.rat_coeffs(), e.constant().clone())).collect();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut r = 0;
        for c in 0..n {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i].0[c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let pv = rows[r].0[c].clone();
            for x in rows[r].0.iter_mut() {
                *x /= &pv;
            }
            rows[r].1 /= &pv;
            let (pa, pb) = rows[r].clone();
            for (i, (a, b)) in rows.iter_mut().enumerate() {
                if i != r && !a[c].is_zero() {
                    let f = a[c].clone();
                    for (x, y) in a.iter_mut().zip(&pa) {
                        *x -= &f * y;
                    }
                    *b -= &f * &pb;
                }
            }
            pivots.push((r, c));
            r += 1;
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
        let mut exprs: Vec<(Vec<Rat>, Rat)> = (0..n)
            .map(|i| {
                let mut e = vec![Rat::zero(); n];
                e[i] = Rat::one();
                (e, Rat::zero())
            })
            .collect();
        for &(row, col) in &pivots {
            let (a, b) = &rows[row];
            let mut e = vec![Rat::zero(); n];
            for &f in &free {
                e[f] = -a[f].clone();
            }
            exprs[col] = (e, b.clone());
        }
        let matrix: Vec<Vec<Rat>> = exprs.iter().map(|(e, _)| e.clone()).collect();
        let offset: Vec<Rat> = exprs.iter().map(|(_, c)| c.clone()).collect();
        let reduced = cell.substitute(&matrix, &offset, n);
        let base = reduced.system();
        let projections = (0..free.len())
            .map(|k| {
                let mut s = base.clone();
                s.eliminate_all(&free[k + 1..]);
                s
            })
            .collect();
        CellSampler {
            group: g.clone(),
            cell: cell.clone(),
            exprs,
            free,
            projections,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Vec<Rat>> {
        'attempt: for _ in 0..SAMPLE_RETRIES {
            let n = self.cell.dim();
            let mut vals = vec![Rat::zero(); n];
            for (k, &var) in self.free.iter().enumerate() {
                let mut sys = self.projections[k].clone();
                for &prev in &self.free[..k] {
                    sys.fix(prev, &vals[prev]);
                }
                let b = sys.bounds(var);
                if b.empty || sys.infeasible {
                    continue 'attempt;
                }
                let v = if let Some(p) = b.point() {
                    p.clone()
                } else if self.group == GroupSpec::Integers {
                    let Some((lo, hi)) = integer_range(&sys, var) else {
                        continue 'attempt;
                    };
                    let lo = lo.map(|l| Rat::from_integer(l - BigInt::one()));
                    let hi = hi.map(|h| Rat::from_integer(h + BigInt::one()));
                    match self.group.sample_element(lo.as_ref(), hi.as_ref(), rng) {
                        Ok(v) => v,
                        Err(_) => continue 'attempt,
                    }
                } else {
                    let lo = b.lo.as_ref().map(|(l, _)| l);
                    let hi = b.hi.as_ref().map(|(h, _)| h);
                    match self.group.sample_element(lo, hi, rng) {
                        Ok(v) => v,
                        Err(_) => continue 'attempt,
                    }
                };
                vals[var] = v;
            }
            let point: Vec<Rat> = self
                .exprs
                .iter()
                .map(|(e, c)| {
                    e.iter()
                        .zip(&vals)
                        .map(|(a, x)| a * x)
                        .fold(c.clone(), |s, t| s + t)
                })
                .collect();
            if point.iter().all(|x| self.group.contains(x)) && self.cell.contains(&point) {
                return Ok(point);
            }
        }
        Err(Error::SamplingExhausted)
    }
}

/// Samples `Gⁿ`-points of a set, choosing uniformly among its cells that
/// carry a `G`-point.
#[derive(Clone, Debug)]
pub struct SetSampler {
    cells: Vec<CellSampler>,
}

impl SetSampler {
    pub fn new(g: &GroupSpec, s: &SemiSet) -> Result<SetSampler> {
        let mut cells = Vec::new();
        for c in s.cells() {
            if has_g_point(g, c)? {
                cells.push(CellSampler::new(g, c));
            }
        }
        Ok(SetSampler { cells })
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Vec<Rat>> {
        if self.cells.is_empty() {
            return Err(Error::SamplingExhausted);
        }
        for _ in 0..4 {
            let i = rng.gen_range(0..self.cells.len());
            if let Ok(p) = self.cells[i].sample(rng) {
                return Ok(p);
            }
        }
        Err(Error::SamplingExhausted)
    }
}
