//! Archimedean ordered abelian groups `G ⊆ Q`, described by which primes are
//! inverted.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, RandBigInt};
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::rat::{ceil, floor, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Integers,
    /// `Z[1/S]` for a finite non-empty set of primes `S`.
    Localized(BTreeSet<u64>),
    Rationals,
}

/// Tuning for [`GroupSpec::sample_element_with`].
#[derive(Clone, Copy, Debug)]
pub struct SampleConfig {
    pub exponent_cap: u32,
    pub retries: u32,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            exponent_cap: 6,
            retries: 64,
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d <= n / d {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl GroupSpec {
    /// `Z[1/p₁, …, 1/pₖ]`; the empty set normalizes to `Z`.
    pub fn localized(primes: impl IntoIterator<Item = u64>) -> Result<GroupSpec> {
        let set: BTreeSet<u64> = primes.into_iter().collect();
        if let Some(&p) = set.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::NotPrime(p));
        }
        Ok(if set.is_empty() {
            GroupSpec::Integers
        } else {
            GroupSpec::Localized(set)
        })
    }

    pub fn is_dense(&self) -> bool {
        !matches!(self, GroupSpec::Integers)
    }

    pub fn is_divisible(&self) -> bool {
        matches!(self, GroupSpec::Rationals)
    }

    /// True iff every prime factor of `d` is inverted in the group.
    pub fn supports_denominator(&self, d: &BigInt) -> bool {
        match self {
            GroupSpec::Rationals => true,
            GroupSpec::Integers => d.abs().is_one(),
            GroupSpec::Localized(primes) => {
                let mut rest = d.abs();
                for &p in primes {
                    let p = BigInt::from(p);
                    while (&rest % &p).is_zero() {
                        rest /= &p;
                    }
                }
                rest.is_one()
            }
        }
    }

    pub fn contains(&self, q: &Rat) -> bool {
        self.supports_denominator(q.denom())
    }

    /// Whether `q` and `1/q` both have supported denominators, i.e. scaling by
    /// `q` is an automorphism of the group.
    pub fn is_unit(&self, q: &Rat) -> bool {
        !q.is_zero() && self.supports_denominator(q.denom()) && self.supports_denominator(q.numer())
    }

    pub fn is_p_divisible(&self, p: u64) -> bool {
        match self {
            GroupSpec::Integers => false,
            GroupSpec::Localized(primes) => primes.contains(&p),
            GroupSpec::Rationals => true,
        }
    }

    pub fn minimal_nondivisible_prime(&self) -> Option<u64> {
        match self {
            GroupSpec::Rationals => None,
            _ => (2..).find(|&p| is_prime(p) && !self.is_p_divisible(p)),
        }
    }

    /// The canonical `b = 1/p` with `b ∉ G` and `p·b ∈ G`.
    pub fn witness_b(&self) -> Result<Rat> {
        let p = self.minimal_nondivisible_prime().ok_or(Error::DivisibleGroup)?;
        Ok(Rat::new(BigInt::one(), BigInt::from(p)))
    }

    pub fn sample_element<R: Rng + ?Sized>(
        &self,
        lo: Option<&Rat>,
        hi: Option<&Rat>,
        rng: &mut R,
    ) -> Result<Rat> {
        self.sample_element_with(lo, hi, rng, &SampleConfig::default())
    }

    /// Draws an element of `G ∩ (lo, hi)` (open bounds, `None` for infinite).
    ///
    /// Each attempt fixes a random supported denominator `d` and picks a
    /// numerator uniformly among those landing strictly inside the interval.
    /// The exponent range grows with the attempt number so that narrow
    /// intervals are eventually hit.
    pub fn sample_element_with<R: Rng + ?Sized>(
        &self,
        lo: Option<&Rat>,
        hi: Option<&Rat>,
        rng: &mut R,
        cfg: &SampleConfig,
    ) -> Result<Rat> {
        if let (Some(l), Some(h)) = (lo, hi) {
            if l >= h {
                return Err(Error::EmptyRegion);
            }
        }
        for attempt in 0..cfg.retries {
            let d = self.random_denominator(cfg.exponent_cap + attempt, rng);
            let dq = Rat::from_integer(d.clone());
            let window = BigInt::from(rng.gen_range(1..=16u32)) * &d;
            let (n_lo, n_hi) = match (lo, hi) {
                (Some(l), Some(h)) => (
                    floor(&(l * &dq)) + BigInt::one(),
                    ceil(&(h * &dq)) - BigInt::one(),
                ),
                (Some(l), None) => {
                    let a = floor(&(l * &dq)) + BigInt::one();
                    let b = &a + &window;
                    (a, b)
                }
                (None, Some(h)) => {
                    let b = ceil(&(h * &dq)) - BigInt::one();
                    let a = &b - &window;
                    (a, b)
                }
                (None, None) => (-window.clone(), window),
            };
            if n_lo <= n_hi {
                let n = rng.gen_bigint_range(&n_lo, &(n_hi + BigInt::one()));
                return Ok(Rat::new(n, d));
            }
        }
        Err(Error::EmptyRegion)
    }

    fn random_denominator<R: Rng + ?Sized>(&self, cap: u32, rng: &mut R) -> BigInt {
        match self {
            GroupSpec::Integers => BigInt::one(),
            GroupSpec::Localized(primes) => primes.iter().fold(BigInt::one(), |acc, &p| {
                let e = rng.gen_range(0..=cap);
                acc * num_traits::pow(BigInt::from(p), e as usize)
            }),
            GroupSpec::Rationals => {
                let bits = cap.min(62);
                BigInt::from(rng.gen_range(1..=(1u64 << bits)))
            }
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Integers => write!(f, "Z"),
            GroupSpec::Rationals => write!(f, "Q"),
            GroupSpec::Localized(primes) => {
                write!(f, "Z[")?;
                for (i, p) in primes.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "1/{p}")?;
                }
                write!(f, "]")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid group literal `{0}` (expected Z, Q or Z[1/p,...])")]
pub struct GroupParseError(pub String);

impl FromStr for GroupSpec {
    type Err = GroupParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let err = || GroupParseError(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match t.as_str() {
            "Z" => return Ok(GroupSpec::Integers),
            "Q" => return Ok(GroupSpec::Rationals),
            _ => {}
        }
        let inner = t
            .strip_prefix("Z[")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(err)?;
        let mut primes = Vec::new();
        for part in inner.split(',') {
            let p: u64 = part
                .strip_prefix("1/")
                .and_then(|d| d.parse().ok())
                .ok_or_else(err)?;
            if !is_prime(p) || primes.contains(&p) {
                return Err(err());
            }
            primes.push(p);
        }
        GroupSpec::localized(primes).map_err(|_| err())
    }
}
