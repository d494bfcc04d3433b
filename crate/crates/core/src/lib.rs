//! Exact symbolic engine for scissors congruences between definable sets of
//! ordered abelian groups `G ⊆ Q`.
//!
//! The crate is organised bottom-up:
//!
//! * [`group`]: the groups `Z`, `Z[1/S]` and `Q`, membership and sampling;
//! * [`sets`]: rational polyhedral cells, their finite unions and tagged sums,
//!   with emptiness decided over `Q` (Fourier–Motzkin) and over `G`
//!   (Smith normal form plus a density argument);
//! * [`maps`]: piecewise-affine maps and their bijection certificates;
//! * [`scissors`]: verified congruences, the combinator calculus and the
//!   derivations of the collapse identities;
//! * [`kring`]: the ring `Z[S]/(S² + S)` used as an invariant over `Q`;
//! * [`dsl`]: the `.oag` text format.

pub mod dsl;
pub mod error;
pub mod group;
pub mod kring;
pub mod maps;
pub mod rat;
pub mod scissors;
pub mod sets;

pub use error::{Error, Result};
pub use group::GroupSpec;
pub use rat::Rat;
