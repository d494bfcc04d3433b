//! Deciding whether a cell meets `Gⁿ`.
//!
//! For dense `G` the question reduces to the affine hull: if the hull carries
//! a `G`-point then `Gⁿ ∩ hull` is dense in the hull and therefore meets the
//! relative interior of any non-empty cell spanning it. Whether the hull
//! carries a `G`-point is an integer linear system solved by diagonalizing the
//! equality matrix (Smith-style) over `Z` and testing the quotients for
//! membership in the localization `Z[1/S]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::cell::Cell;
use super::fm::System;
use super::linear::LinConstraint;
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::rat::{ceil, floor, Rat};

/// `U` and the diagonal of `U·A·V` for some unimodular `U`, `V`.
pub struct Diagonalization {
    pub left: Vec<Vec<BigInt>>,
    pub diagonal: Vec<BigInt>,
}

/// Diagonalizes an integer `m × n` matrix by unimodular row and column
/// operations, tracking the row operations.
pub fn diagonalize(a: &[Vec<BigInt>], ncols: usize) -> Diagonalization {
    let m = a.len();
    let mut a: Vec<Vec<BigInt>> = a.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..m)
        .map(|i| (0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut diagonal = Vec::new();
    for t in 0..m.min(ncols) {
        loop {
            // Smallest non-zero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..ncols {
                    if !a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Diagonalization { left: u, diagonal };
            };
            a.swap(t, pi);
            u.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let pivot = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&pivot);
                for j in t..ncols {
                    let d = &q * &a[t][j];
                    a[i][j] -= d;
                }
                for j in 0..m {
                    let d = &q * &u[t][j];
                    u[i][j] -= d;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..ncols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&pivot);
                for row in a.iter_mut() {
                    let d = &q * &row[t];
                    row[j] -= d;
                }
                clean &= a[t][j].is_zero();
            }
            if clean {
                diagonal.push(a[t][t].clone());
                break;
            }
        }
    }
    Diagonalization { left: u, diagonal }
}

/// Whether `{x | A x = c}` contains a point of `Gⁿ`.
pub fn affine_subspace_meets(g: &GroupSpec, eqs: &[LinConstraint], n: usize) -> bool {
    if eqs.is_empty() {
        return true;
    }
    let a: Vec<Vec<BigInt>> = eqs.iter().map(|e| e.coeffs().to_vec()).collect();
    let c: Vec<Rat> = eqs.iter().map(|e| e.constant().clone()).collect();
    let diag = diagonalize(&a, n);
    let rhs: Vec<Rat> = diag
        .left
        .iter()
        .map(|row| {
            row.iter()
                .zip(&c)
                .map(|(u, ci)| Rat::from_integer(u.clone()) * ci)
                .fold(Rat::zero(), |s, x| s + x)
        })
        .collect();
    let r = diag.diagonal.len();
    for (i, value) in rhs.iter().enumerate() {
        if i < r {
            if !g.contains(&(value / Rat::from_integer(diag.diagonal[i].clone()))) {
                return false;
            }
        } else if !value.is_zero() {
            return false;
        }
    }
    true
}

/// Whether the cell contains a point of `Gⁿ`.
pub fn has_g_point(g: &GroupSpec, cell: &Cell) -> Result<bool> {
    match g {
        GroupSpec::Integers => discrete_has_point(cell),
        GroupSpec::Rationals => Ok(!cell.is_empty_q()),
        GroupSpec::Localized(_) => {
            if cell.is_empty_q() {
                return Ok(false);
            }
            Ok(affine_subspace_meets(g, &cell.hull_equalities(), cell.dim()))
        }
    }
}

/// Cells over `Z` must be products of single-variable bounds.
pub(crate) fn check_discrete_supported(cell: &Cell) -> Result<()> {
    if cell.constraints().iter().all(|c| c.support().count() <= 1) {
        Ok(())
    } else {
        Err(Error::UnsupportedDiscreteCell)
    }
}

fn discrete_has_point(cell: &Cell) -> Result<bool> {
    if cell.is_falsum() {
        return Ok(false);
    }
    check_discrete_supported(cell)?;
    let system = cell.system();
    if system.infeasible {
        return Ok(false);
    }
    for var in 0..cell.dim() {
        let b = system.bounds(var);
        if b.empty {
            return Ok(false);
        }
        let lo = b.lo.as_ref().map(|(l, strict)| {
            if *strict {
                floor(l) + BigInt::one()
            } else {
                ceil(l)
            }
        });
        let hi = b.hi.as_ref().map(|(h, strict)| {
            if *strict {
                ceil(h) - BigInt::one()
            } else {
                floor(h)
            }
        });
        if let (Some(l), Some(h)) = (lo, hi) {
            if l > h {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Integer range `[lo, hi]` (either side open-ended) of admissible values of
/// a single variable, used by the sampler over `Z`.
pub(crate) fn integer_range(system: &System, var: usize) -> Option<(Option<BigInt>, Option<BigInt>)> {
    let b = system.bounds(var);
    if b.empty {
        return None;
    }
    let lo = b.lo.as_ref().map(|(l, s)| if *s { floor(l) + BigInt::one() } else { ceil(l) });
    let hi = b.hi.as_ref().map(|(h, s)| if *s { ceil(h) - BigInt::one() } else { floor(h) });
    if let (Some(l), Some(h)) = (&lo, &hi) {
        if l > h {
            return None;
        }
    }
    Some((lo, hi))
}
