//! Bounded tests for local equivalence and locally GCD equivalence of two
//! number fields, canonical place matchings, and witness algebras.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::brauer::{restrict_from_q, BrauerClass, QmodZInvariant};
use crate::error::{Error, Result};
use crate::fieldlab::{primes_up_to, splitting_type, NumberField, PrimeSplitting, SplitStatus};
use crate::place::{ArchKind, Place};

pub const DEFAULT_WITNESS_CEILING: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RefutationSite {
    Prime(u64),
    Infinity,
}

/// Outcome of a bounded scan. `ConsistentUpTo` is evidence only; `Refuted`
/// is definitive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum EquivalenceVerdict {
    Refuted { site: RefutationSite, reason: String },
    ConsistentUpTo { bound: u64, skipped_primes: Vec<u64> },
}

impl EquivalenceVerdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, EquivalenceVerdict::Refuted { .. })
    }

    pub fn refuting_prime(&self) -> Option<u64> {
        match self {
            EquivalenceVerdict::Refuted { site: RefutationSite::Prime(p), .. } => Some(*p),
            _ => None,
        }
    }
}

fn both_unramified(a: &PrimeSplitting, b: &PrimeSplitting) -> bool {
    a.status == SplitStatus::Unramified && b.status == SplitStatus::Unramified
}

fn paired_splittings(k: &NumberField, k2: &NumberField, bound: u64) -> Result<Vec<(PrimeSplitting, PrimeSplitting)>> {
    primes_up_to(bound)
        .into_par_iter()
        .map(|p| Ok((splitting_type(k, p)?, splitting_type(k2, p)?)))
        .collect()
}

fn scan<F>(k: &NumberField, k2: &NumberField, bound: u64, differ: F) -> Result<EquivalenceVerdict>
where
    F: Fn(&PrimeSplitting, &PrimeSplitting) -> Option<String> + Sync,
{
    let pairs = paired_splittings(k, k2, bound)?;
    let refuted = pairs
        .par_iter()
        .filter(|(a, b)| both_unramified(a, b))
        .find_map_first(|(a, b)| differ(a, b).map(|r| (a.p, r)));
    if let Some((p, reason)) = refuted {
        return Ok(EquivalenceVerdict::Refuted { site: RefutationSite::Prime(p), reason });
    }
    let skipped_primes = pairs.iter().filter(|(a, b)| !both_unramified(a, b)).map(|(a, _)| a.p).collect();
    Ok(EquivalenceVerdict::ConsistentUpTo { bound, skipped_primes })
}

fn signature_refutation(k: &NumberField, k2: &NumberField) -> Option<EquivalenceVerdict> {
    (k.signature() != k2.signature()).then(|| EquivalenceVerdict::Refuted {
        site: RefutationSite::Infinity,
        reason: format!("signatures {:?} and {:?} differ", k.signature(), k2.signature()),
    })
}

pub fn check_local_equivalence(k: &NumberField, k2: &NumberField, bound: u64) -> Result<EquivalenceVerdict> {
    if let Some(v) = signature_refutation(k, k2) {
        return Ok(v);
    }
    scan(k, k2, bound, |a, b| {
        (a.degrees != b.degrees).then(|| format!("residue degrees {:?} vs {:?}", a.degrees, b.degrees))
    })
}

pub fn check_gcd_equivalence(k: &NumberField, k2: &NumberField, bound: u64) -> Result<EquivalenceVerdict> {
    scan(k, k2, bound, |a, b| {
        let (g, g2) = (a.degree_gcd(), b.degree_gcd());
        (g != g2).then(|| format!("degree gcd {} vs {}", g.unwrap_or(0), g2.unwrap_or(0)))
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArchimedeanMatching {
    pub real: Vec<usize>,
    pub complex: Vec<usize>,
}

/// A bijection between the places of two fields, known on the archimedean
/// places and over every prime up to `verified_bound` unramified in both.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceBijectionData {
    pub left_field: String,
    pub right_field: String,
    pub archimedean_matching: ArchimedeanMatching,
    pub finite_matching: BTreeMap<u64, Vec<usize>>,
    pub verified_bound: u64,
}

fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &j) in perm.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

impl PlaceBijectionData {
    pub fn identity(field: &NumberField, bound: u64) -> Result<Self> {
        build_place_matching(field, field, bound)
    }

    pub fn inverse(&self) -> Self {
        PlaceBijectionData {
            left_field: self.right_field.clone(),
            right_field: self.left_field.clone(),
            archimedean_matching: ArchimedeanMatching {
                real: invert(&self.archimedean_matching.real),
                complex: invert(&self.archimedean_matching.complex),
            },
            finite_matching: self.finite_matching.iter().map(|(&p, perm)| (p, invert(perm))).collect(),
            verified_bound: self.verified_bound,
        }
    }

    pub fn image(&self, place: &Place) -> Result<Place> {
        let out = || Error::OutOfMatchingRange(*place);
        match *place {
            Place::Finite { p, slot } => {
                let perm = self.finite_matching.get(&p).ok_or_else(out)?;
                perm.get(slot).map(|&s| Place::finite(p, s)).ok_or_else(out)
            }
            Place::Arch { arch, index } => {
                let perm = match arch {
                    ArchKind::Real => &self.archimedean_matching.real,
                    ArchKind::Complex => &self.archimedean_matching.complex,
                };
                perm.get(index).map(|&i| Place::Arch { arch, index: i }).ok_or_else(out)
            }
        }
    }

    pub fn covers(&self, place: &Place) -> bool {
        self.image(place).is_ok()
    }
}

/// Canonical matching: slot `i` over `p` goes to slot `i` over `p`, and
/// archimedean places are matched by type and index.
pub fn build_place_matching(k: &NumberField, k2: &NumberField, bound: u64) -> Result<PlaceBijectionData> {
    if k.signature() != k2.signature() {
        return Err(Error::SignatureMismatch);
    }
    let pairs = paired_splittings(k, k2, bound)?;
    let mut finite_matching = BTreeMap::new();
    for (a, b) in pairs.iter().filter(|(a, b)| both_unramified(a, b)) {
        if a.degrees != b.degrees {
            return Err(Error::MatchingObstruction(a.p));
        }
        finite_matching.insert(a.p, (0..a.degrees.len()).collect());
    }
    let (r1, r2) = k.signature();
    Ok(PlaceBijectionData {
        left_field: k.label().to_string(),
        right_field: k2.label().to_string(),
        archimedean_matching: ArchimedeanMatching { real: (0..r1).collect(), complex: (0..r2).collect() },
        finite_matching,
        verified_bound: bound,
    })
}

/// A class over Q that becomes trivial over `K` but not over `K'`, built
/// from `g` primes at which the residue degrees of `K` all divide by `g`.
pub fn gcd_witness_algebra(k: &NumberField, k2: &NumberField, p0: u64, ceiling: u64) -> Result<BrauerClass> {
    let s0 = splitting_type(k, p0)?;
    let s1 = splitting_type(k2, p0)?;
    if !both_unramified(&s0, &s1) {
        return Err(Error::InvalidInput(format!("{p0} must be unramified in both fields")));
    }
    let (g, g2) = (s0.degree_gcd().unwrap_or(0), s1.degree_gcd().unwrap_or(0));
    if g2 >= g {
        return Err(Error::PreconditionGcd(g, g2));
    }
    let mut chosen = vec![p0];
    for p in primal::Primes::all().map(|p| p as u64).take_while(|&p| p <= ceiling) {
        if chosen.len() as u64 == g {
            break;
        }
        if p == p0 {
            continue;
        }
        let (a, b) = (splitting_type(k, p)?, splitting_type(k2, p)?);
        if both_unramified(&a, &b) && a.degree_gcd() == Some(g) {
            chosen.push(p);
        }
    }
    if (chosen.len() as u64) < g {
        return Err(Error::SearchExhausted(ceiling));
    }
    let inv = QmodZInvariant::new(1, g);
    let class = BrauerClass::from_invariants("Q", chosen.iter().map(|&p| (Place::finite(p, 0), inv)));
    let top = chosen.iter().copied().max().unwrap_or(p0);
    let over_k = restrict_from_q(&class, k, top)?;
    let over_k2 = restrict_from_q(&class, k2, top)?;
    if !over_k.is_trivial() || over_k2.is_trivial() {
        return Err(Error::InvalidInput(format!("witness {class} failed its restriction checks")));
    }
    Ok(class)
}
