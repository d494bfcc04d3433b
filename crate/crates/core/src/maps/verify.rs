use std::fmt;

use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::sets::{has_g_point, Cell, CellSampler, Label, SemiSet, TaggedPoint};

use super::piecewise::{Piece, PiecewiseMap};

/// The individual obligations of a bijection proof.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Check {
    DomainPartition,
    Injectivity,
    Definability,
    ImageCells,
    ImageDisjointness,
    ImageCover,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::DomainPartition,
        Check::Injectivity,
        Check::Definability,
        Check::ImageCells,
        Check::ImageDisjointness,
        Check::ImageCover,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::DomainPartition => "partition-of-domain",
            Check::Injectivity => "injectivity-per-piece",
            Check::Definability => "definability",
            Check::ImageCells => "image-cells",
            Check::ImageDisjointness => "pairwise-image-disjointness",
            Check::ImageCover => "image-covers-codomain",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub check: Check,
    pub passed: bool,
}

/// The first failed obligation, with a cell where it fails and, when one
/// could be sampled, a concrete `G`-point of that cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub check: Check,
    pub reason: String,
    pub cell: Option<(Label, Cell)>,
    pub point: Option<TaggedPoint>,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.check.name(), self.reason)?;
        if let Some((l, c)) = &self.cell {
            write!(f, " in {l} {c}")?;
        }
        if let Some(p) = &self.point {
            write!(f, " e.g. {p}")?;
        }
        Ok(())
    }
}

/// Outcome of [`verify_bijection`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BijectionCertificate {
    group: GroupSpec,
    subject: u64,
    checks: Vec<CheckResult>,
    failure: Option<Failure>,
    images: Vec<Option<Cell>>,
}

impl BijectionCertificate {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn checks(&self) -> &[CheckResult] {
        &self.checks
    }

    pub fn failure(&self) -> Option<&Failure> {
        self.failure.as_ref()
    }

    /// Image of each piece; `None` for pieces without `G`-points.
    pub fn images(&self) -> &[Option<Cell>] {
        &self.images
    }

    pub(crate) fn subject(&self) -> u64 {
        self.subject
    }

    /// `Ok(())` when passed, otherwise a `VerificationFailed` error.
    pub fn ok(&self) -> Result<()> {
        match &self.failure {
            None => Ok(()),
            Some(f) => Err(Error::VerificationFailed(f.to_string())),
        }
    }
}

struct Verifier<'a> {
    g: &'a GroupSpec,
    checks: Vec<CheckResult>,
}

type Step = std::result::Result<(), Failure>;

impl Verifier<'_> {
    fn fail(&self, check: Check, reason: String, cell: Option<(Label, Cell)>) -> Failure {
        let point = cell.as_ref().and_then(|(l, c)| {
            let mut rng = StdRng::seed_from_u64(0);
            CellSampler::new(self.g, c)
                .sample(&mut rng)
                .ok()
                .map(|x| TaggedPoint::new(l.clone(), x))
        });
        Failure {
            check,
            reason,
            cell,
            point,
        }
    }

    fn record(&mut self, check: Check, outcome: Result<Step>) -> Result<Step> {
        let outcome = outcome?;
        self.checks.push(CheckResult {
            check,
            passed: outcome.is_ok(),
        });
        Ok(outcome)
    }

    /// A cell of `cell ∖ set` carrying a `G`-point, if any.
    fn escape(&self, cell: &Cell, set: &SemiSet) -> Result<Option<Cell>> {
        let rest = SemiSet::from_cell(cell.clone()).difference(set)?;
        for c in rest.cells() {
            if has_g_point(self.g, c)? {
                return Ok(Some(c.clone()));
            }
        }
        Ok(None)
    }

    /// Cells indexed by `idx` must lie in `whole`, be pairwise disjoint over
    /// `G`, and (when `cover`) exhaust it.
    fn partition(
        &self,
        check: Check,
        label: &Label,
        whole: &SemiSet,
        parts: &[(usize, &Cell)],
        what: &str,
    ) -> Result<Step> {
        for (k, c) in parts {
            if let Some(w) = self.escape(c, whole)? {
                return Ok(Err(self.fail(
                    check,
                    format!("{what} of piece {k} leaves component {label}"),
                    Some((label.clone(), w)),
                )));
            }
        }
        for (i, (k1, a)) in parts.iter().enumerate() {
            for (k2, b) in &parts[i + 1..] {
                let both = a.intersect(b)?;
                if has_g_point(self.g, &both)? {
                    return Ok(Err(self.fail(
                        check,
                        format!("{what}s of pieces {k1} and {k2} overlap"),
                        Some((label.clone(), both.simplify())),
                    )));
                }
            }
        }
        let union = SemiSet::new(whole.dim(), parts.iter().map(|(_, c)| (*c).clone()))?;
        for c in whole.cells() {
            if let Some(w) = self.escape(c, &union)? {
                return Ok(Err(self.fail(
                    check,
                    format!("component {label} is not covered by {what}s"),
                    Some((label.clone(), w.simplify())),
                )));
            }
        }
        Ok(Ok(()))
    }
}

/// Decides whether `f` restricts to a bijection between the `G`-points of
/// its domain and codomain, each piece being `G`-definable with a
/// `G`-definable inverse.
///
/// Pieces whose domain has no `G`-point are ignored. Errors are reserved for
/// inputs the procedures cannot decide (cells over `Z` that are not boxes).
pub fn verify_bijection(g: &GroupSpec, f: &PiecewiseMap) -> Result<BijectionCertificate> {
    let mut v = Verifier { g, checks: vec![] };
    let mut live: Vec<(usize, &Piece)> = Vec::new();
    for (k, p) in f.pieces().iter().enumerate() {
        if has_g_point(g, &p.domain)? {
            live.push((k, p));
        }
    }
    let mut images: Vec<Option<Cell>> = vec![None; f.pieces().len()];
    let failure = run(&mut v, f, &live, &mut images)?.err();
    Ok(BijectionCertificate {
        group: g.clone(),
        subject: f.fingerprint(),
        checks: v.checks,
        failure,
        images,
    })
}

fn run(v: &mut Verifier<'_>, f: &PiecewiseMap, live: &[(usize, &Piece)], images: &mut [Option<Cell>]) -> Result<Step> {
    let g = v.g;
    // Domain partition, component by component.
    let step = (|| {
        for (label, set) in f.domain().components() {
            let parts: Vec<(usize, &Cell)> = live
                .iter()
                .filter(|(_, p)| &p.source == label)
                .map(|(k, p)| (*k, &p.domain))
                .collect();
            let s = v.partition(Check::DomainPartition, label, set, &parts, "domain")?;
            if s.is_err() {
                return Ok(s);
            }
        }
        Ok(Ok(()))
    })();
    if let Err(e) = v.record(Check::DomainPartition, step)? {
        return Ok(Err(e));
    }

    let step = (|| {
        for (k, p) in live {
            if !p.map.is_injective_on(&p.domain) {
                return Ok(Err(v.fail(
                    Check::Injectivity,
                    format!("piece {k} collapses its affine hull"),
                    Some((p.source.clone(), p.domain.clone())),
                )));
            }
        }
        Ok(Ok(()))
    })();
    if let Err(e) = v.record(Check::Injectivity, step)? {
        return Ok(Err(e));
    }

    let step = (|| {
        for (k, p) in live {
            if !p.map.is_definable(g) {
                return Ok(Err(v.fail(
                    Check::Definability,
                    format!("piece {k} has coefficients outside the group"),
                    Some((p.source.clone(), p.domain.clone())),
                )));
            }
            if !p.map.inverse_on(&p.domain)?.is_definable(g) {
                return Ok(Err(v.fail(
                    Check::Definability,
                    format!("inverse of piece {k} has coefficients outside the group"),
                    Some((p.source.clone(), p.domain.clone())),
                )));
            }
        }
        Ok(Ok(()))
    })();
    if let Err(e) = v.record(Check::Definability, step)? {
        return Ok(Err(e));
    }

    for (k, p) in live {
        images[*k] = Some(p.map.image_cell(&p.domain)?);
    }
    let image_parts = |label: &Label| -> Vec<(usize, &Cell)> {
        live.iter()
            .filter(|(_, p)| &p.target == label)
            .map(|(k, _)| (*k, images[*k].as_ref().expect("computed")))
            .collect()
    };

    let step = (|| {
        for (label, set) in f.codomain().components() {
            for (k, c) in image_parts(label) {
                if let Some(w) = v.escape(c, set)? {
                    return Ok(Err(v.fail(
                        Check::ImageCells,
                        format!("image of piece {k} leaves component {label}"),
                        Some((label.clone(), w.simplify())),
                    )));
                }
            }
        }
        Ok(Ok(()))
    })();
    if let Err(e) = v.record(Check::ImageCells, step)? {
        return Ok(Err(e));
    }

    let step = (|| {
        for (label, _) in f.codomain().components() {
            let parts = image_parts(label);
            for (i, (k1, a)) in parts.iter().enumerate() {
                for (k2, b) in &parts[i + 1..] {
                    let both = a.intersect(b)?;
                    if has_g_point(g, &both)? {
                        return Ok(Err(v.fail(
                            Check::ImageDisjointness,
                            format!("images of pieces {k1} and {k2} overlap"),
                            Some((label.clone(), both.simplify())),
                        )));
                    }
                }
            }
        }
        Ok(Ok(()))
    })();
    if let Err(e) = v.record(Check::ImageDisjointness, step)? {
        return Ok(Err(e));
    }

    let step = (|| {
        for (label, set) in f.codomain().components() {
            let parts = image_parts(label);
            let union = SemiSet::new(set.dim(), parts.iter().map(|(_, c)| (*c).clone()))?;
            for c in set.cells() {
                if let Some(w) = v.escape(c, &union)? {
                    return Ok(Err(v.fail(
                        Check::ImageCover,
                        format!("component {label} is not covered by images"),
                        Some((label.clone(), w.simplify())),
                    )));
                }
            }
        }
        Ok(Ok(()))
    })();
    v.record(Check::ImageCover, step)
}
