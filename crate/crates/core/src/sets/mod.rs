//! Definable sets: exact rational polyhedral cells, their finite unions, and
//! tagged disjoint sums.

mod cell;
pub(crate) mod fm;
mod lattice;
mod linear;
mod sample;
mod semiset;
mod tagged;

pub use cell::Cell;
pub use lattice::{affine_subspace_meets, diagonalize, has_g_point, Diagonalization};
pub use linear::{render_constraint, render_term, LinConstraint, Normalized, Relation};
pub use sample::{CellSampler, SetSampler, SAMPLE_RETRIES};
pub use semiset::SemiSet;
pub use tagged::{Label, TaggedPoint, TaggedSum};

use rand::Rng;

use crate::error::Result;
use crate::group::GroupSpec;
use crate::rat::Rat;

/// A `Gⁿ`-point of `s`, deterministic for a given generator state.
pub fn sample_point<R: Rng + ?Sized>(g: &GroupSpec, s: &SemiSet, rng: &mut R) -> Result<Vec<Rat>> {
    SetSampler::new(g, s)?.sample(rng)
}
