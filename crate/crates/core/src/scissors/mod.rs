//! Verified scissors congruences and the derivations built from them.
//!
//! A [`Congruence`] is a piecewise-affine map together with a passing
//! bijection certificate and the tree of constructions that produced it.
//! Identities with negative coefficients are stated with explicit slack, see
//! [`SlackIdentity`].

mod chain;
mod generators;
mod lemmas;
mod provenance;
mod shapes;
mod witness;

pub use chain::Derivation;
pub use generators::{
    add_slack, compose_c, cong_affine, cong_diag, cong_neg, cong_permute, cong_point, cong_rearrange,
    cong_scale, cong_shear, cong_split, cong_translate, inverse_c, prod_c, sum_c,
};
pub use lemmas::{lemma1_1, lemma1_2, lemma1_3, lemma1_4, SlackIdentity};
pub use provenance::{replay, ChainStep, Generator, Provenance};
pub use shapes::{closed_point, interval, product, ray, ray_square};
pub use witness::{check_pigeonhole, derive_witness, round_trip_check, RoundTrip, Witness, WITNESS_TARGET};

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::maps::{verify_bijection, BijectionCertificate, PiecewiseMap};
use crate::sets::{Label, TaggedSum};

/// A definable bijection with its certificate and derivation.
#[derive(Clone, Debug)]
pub struct Congruence {
    map: PiecewiseMap,
    certificate: BijectionCertificate,
    provenance: Provenance,
}

impl Congruence {
    /// Verifies `map` over `g`; the only way to obtain a congruence.
    pub fn verified(g: &GroupSpec, map: PiecewiseMap, provenance: Provenance) -> Result<Congruence> {
        let certificate = verify_bijection(g, &map)?;
        certificate.ok()?;
        Ok(Congruence {
            map,
            certificate,
            provenance,
        })
    }

    pub fn identity(g: &GroupSpec, sum: &TaggedSum) -> Result<Congruence> {
        Congruence::verified(g, PiecewiseMap::identity(sum), Provenance::Identity(sum.clone()))
    }

    pub fn map(&self) -> &PiecewiseMap {
        &self.map
    }

    pub fn certificate(&self) -> &BijectionCertificate {
        &self.certificate
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn group(&self) -> &GroupSpec {
        self.certificate.group()
    }

    pub fn domain(&self) -> &TaggedSum {
        self.map.domain()
    }

    pub fn codomain(&self) -> &TaggedSum {
        self.map.codomain()
    }

    /// Renames components. Unlisted labels are kept.
    pub fn relabel(&self, domain: &[(&str, &str)], codomain: &[(&str, &str)]) -> Result<Congruence> {
        let own = |v: &[(&str, &str)]| -> Vec<(Label, Label)> {
            v.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
        };
        let (d, c) = (own(domain), own(codomain));
        let map = self.map.relabel(&d, &c)?;
        Congruence::verified(
            self.group(),
            map,
            Provenance::Relabel {
                inner: Box::new(self.provenance.clone()),
                domain: d,
                codomain: c,
            },
        )
    }

    pub(crate) fn with_provenance(mut self, provenance: Provenance) -> Congruence {
        self.provenance = provenance;
        self
    }

    pub(crate) fn check_group(&self, g: &GroupSpec) -> Result<()> {
        if self.group() == g {
            Ok(())
        } else {
            Err(Error::ChainMismatch)
        }
    }
}
