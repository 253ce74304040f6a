//! Number fields described through their local data: reduction of the
//! defining polynomial modulo primes, discriminants, signatures and
//! truncated Euler products for the Dedekind zeta function.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffpoly::{factor_degrees_mod_p, factor_mod_p_full, FpFactor};
use crate::place::Place;
use crate::poly::{discriminant, signature, IntPoly};
use crate::real::{Dyadic, Real, Round, MIN_PRECISION_BITS};
use crate::serde_bigint;

/// Serialized description of a number field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumberFieldSpec {
    pub label: String,
    #[serde(with = "serde_bigint::vec")]
    pub minpoly: Vec<BigInt>,
    #[serde(default, with = "serde_bigint::option", skip_serializing_if = "Option::is_none")]
    pub field_discriminant: Option<BigInt>,
    /// Prime -> list of `[e, f]` pairs for the places above it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ramified: Option<BTreeMap<u64, Vec<(u32, u32)>>>,
}

/// A validated number field with its cached global invariants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "NumberFieldSpec", into = "NumberFieldSpec")]
pub struct NumberField {
    spec: NumberFieldSpec,
    poly: IntPoly,
    poly_disc: BigInt,
    signature: (usize, usize),
}

const IRREDUCIBLE_SEARCH_LIMIT: u64 = 200;
const SIEVE_PRIMES: usize = 25;

impl NumberField {
    pub fn new(spec: NumberFieldSpec) -> Result<Self> {
        let poly = IntPoly::new(spec.minpoly.clone());
        let n = match poly.degree() {
            Some(n) if n >= 1 => n,
            _ => return Err(Error::InvalidField(format!("{}: degree must be at least 1", spec.label))),
        };
        if !poly.is_monic() {
            return Err(Error::InvalidField(format!("{}: minimal polynomial must be monic", spec.label)));
        }
        let poly_disc = discriminant(&poly);
        if poly_disc.is_zero() {
            return Err(Error::InvalidField(format!("{}: {} has a repeated factor", spec.label, poly)));
        }
        check_irreducible(&poly, &poly_disc)
            .map_err(|why| Error::InvalidField(format!("{}: {}", spec.label, why)))?;
        if let Some(ram) = &spec.ramified {
            for (&p, places) in ram {
                if !primal::is_prime(p) {
                    return Err(Error::InvalidField(format!("{}: ramified key {p} is not prime", spec.label)));
                }
                if !(&poly_disc % BigInt::from(p)).is_zero() {
                    return Err(Error::InvalidField(format!(
                        "{}: {p} does not divide the polynomial discriminant",
                        spec.label
                    )));
                }
                if places.iter().any(|&(e, f)| e == 0 || f == 0) {
                    return Err(Error::InvalidField(format!("{}: e and f must be positive at {p}", spec.label)));
                }
                let total: u64 = places.iter().map(|&(e, f)| e as u64 * f as u64).sum();
                if total != n as u64 {
                    return Err(Error::InvalidField(format!(
                        "{}: sum of e*f over {p} is {total}, expected {n}",
                        spec.label
                    )));
                }
            }
        }
        if let Some(d) = &spec.field_discriminant {
            if d.is_zero() {
                return Err(Error::InvalidField(format!("{}: field discriminant is zero", spec.label)));
            }
        }
        let signature = signature(&poly)?;
        Ok(NumberField { spec, poly, poly_disc, signature })
    }

    /// Convenience constructor from small coefficients (constant term first).
    pub fn from_coeffs(label: &str, coeffs: &[i64], field_discriminant: Option<i64>) -> Result<Self> {
        NumberField::new(NumberFieldSpec {
            label: label.to_string(),
            minpoly: coeffs.iter().map(|&c| BigInt::from(c)).collect(),
            field_discriminant: field_discriminant.map(BigInt::from),
            ramified: None,
        })
    }

    /// The rational numbers, presented by `x - 1`.
    pub fn rationals() -> Self {
        NumberField::from_coeffs("Q", &[-1, 1], Some(1)).expect("x - 1 is a valid field")
    }

    pub fn label(&self) -> &str {
        &self.spec.label
    }

    pub fn spec(&self) -> &NumberFieldSpec {
        &self.spec
    }

    pub fn minpoly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    pub fn poly_discriminant(&self) -> &BigInt {
        &self.poly_disc
    }

    pub fn field_discriminant(&self) -> Option<&BigInt> {
        self.spec.field_discriminant.as_ref()
    }

    /// `|D_K|`, failing when it was not supplied.
    pub fn abs_field_discriminant(&self) -> Result<BigInt> {
        self.field_discriminant()
            .map(|d| d.abs())
            .ok_or_else(|| Error::MissingFieldDiscriminant(self.label().to_string()))
    }

    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1
    }
}

impl TryFrom<NumberFieldSpec> for NumberField {
    type Error = Error;

    fn try_from(spec: NumberFieldSpec) -> Result<Self> {
        NumberField::new(spec)
    }
}

impl From<NumberField> for NumberFieldSpec {
    fn from(f: NumberField) -> Self {
        f.spec
    }
}

/// Fields available by label without loading a document.
pub fn builtin_fields() -> Vec<NumberField> {
    let mut v = vec![NumberField::rationals()];
    let table: [(&str, &[i64], Option<i64>); 4] = [
        ("gaussian", &[1, 0, 1], Some(-4)),
        ("cubic2", &[-2, 0, 0, 1], Some(-108)),
        ("dsp799", &[-799, 0, 0, 0, 0, 0, 0, 0, 1], None),
        ("dsp12784", &[-12784, 0, 0, 0, 0, 0, 0, 0, 1], None),
    ];
    for (label, coeffs, disc) in table {
        v.push(NumberField::from_coeffs(label, coeffs, disc).expect("builtin field is valid"));
    }
    v
}

fn subset_sums(degrees: &[usize], n: usize) -> BTreeSet<usize> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for &d in degrees {
        for s in (d..=n).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    (1..n).filter(|&s| reach[s]).collect()
}

fn has_integer_root(f: &IntPoly) -> Option<bool> {
    let c0 = f.coeffs().first()?.abs();
    if c0.is_zero() {
        return Some(true);
    }
    let c0 = c0.to_u64().filter(|&c| c <= 1_000_000_000_000)?;
    let eval = |x: i64| -> bool {
        let xb = BigInt::from(x);
        f.coeffs().iter().rev().fold(BigInt::zero(), |acc, c| acc * &xb + c).is_zero()
    };
    let mut d = 1u64;
    while d * d <= c0 {
        if c0 % d == 0 {
            for cand in [d, c0 / d] {
                if eval(cand as i64) || eval(-(cand as i64)) {
                    return Some(true);
                }
            }
        }
        d += 1;
    }
    Some(false)
}

/// Irreducibility screen for a monic squarefree polynomial: irreducible
/// modulo a small prime, or a degree-pattern sieve (plus an integer root
/// test) leaves no possible factor degree.
pub fn check_irreducible(f: &IntPoly, disc: &BigInt) -> std::result::Result<(), String> {
    let n = f.degree().unwrap_or(0);
    if n <= 1 {
        return Ok(());
    }
    let good = |p: &u64| !(disc % BigInt::from(*p)).is_zero();
    for p in primal::Primes::all().map(|p| p as u64).take_while(|&p| p <= IRREDUCIBLE_SEARCH_LIMIT).filter(good) {
        let degs = factor_degrees_mod_p(f, p).map_err(|e| e.to_string())?;
        if degs.len() == 1 {
            return Ok(());
        }
    }
    let mut candidates: BTreeSet<usize> = (1..n).collect();
    for p in primal::Primes::all().map(|p| p as u64).filter(good).take(SIEVE_PRIMES) {
        let degs: Vec<usize> = factor_degrees_mod_p(f, p)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|(d, _)| d)
            .collect();
        let sums = subset_sums(&degs, n);
        candidates = candidates.intersection(&sums).copied().collect();
    }
    if candidates.contains(&1) {
        match has_integer_root(f) {
            Some(true) => return Err(format!("{f} has an integer root")),
            Some(false) => {
                candidates.remove(&1);
                candidates.remove(&(n - 1));
            }
            None => {}
        }
    }
    if candidates.is_empty() {
        Ok(())
    } else {
        Err(format!("could not certify irreducibility of {f}; factor degrees {candidates:?} remain possible"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SplitStatus {
    Unramified,
    RamifiedUserSupplied,
    Undetermined,
}

/// Residue degrees of the places above a rational prime, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeSplitting {
    pub p: u64,
    pub degrees: Vec<u32>,
    /// Ramification index per slot (all ones when unramified).
    pub ramification: Vec<u32>,
    pub status: SplitStatus,
}

impl PrimeSplitting {
    pub fn is_determined(&self) -> bool {
        self.status != SplitStatus::Undetermined
    }

    /// `[K_v : Q_p] = e * f` per slot.
    pub fn local_degrees(&self) -> Vec<u64> {
        self.degrees
            .iter()
            .zip(&self.ramification)
            .map(|(&f, &e)| f as u64 * e as u64)
            .collect()
    }

    pub fn places(&self) -> impl Iterator<Item = Place> + '_ {
        (0..self.degrees.len()).map(move |slot| Place::finite(self.p, slot))
    }

    pub fn degree_gcd(&self) -> Option<u64> {
        if !self.is_determined() {
            return None;
        }
        Some(self.degrees.iter().fold(0u64, |g, &d| g.gcd(&(d as u64))))
    }
}

/// Degrees and multiplicities of the irreducible factors of `minpoly mod p`.
pub fn factor_mod_p(minpoly: &IntPoly, p: u64) -> Result<Vec<(usize, u32)>> {
    factor_degrees_mod_p(minpoly, p)
}

pub fn poly_discriminant(minpoly: &IntPoly) -> BigInt {
    discriminant(minpoly)
}

pub fn splitting_type(field: &NumberField, p: u64) -> Result<PrimeSplitting> {
    if !primal::is_prime(p) {
        return Err(Error::CompositeModulus(p));
    }
    if !(field.poly_discriminant() % BigInt::from(p)).is_zero() {
        let degrees: Vec<u32> = factor_degrees_mod_p(field.minpoly(), p)?
            .into_iter()
            .map(|(d, _)| d as u32)
            .collect();
        let ramification = vec![1; degrees.len()];
        return Ok(PrimeSplitting { p, degrees, ramification, status: SplitStatus::Unramified });
    }
    if let Some(list) = field.spec().ramified.as_ref().and_then(|r| r.get(&p)) {
        let mut pairs: Vec<(u32, u32)> = list.iter().map(|&(e, f)| (f, e)).collect();
        pairs.sort_unstable();
        return Ok(PrimeSplitting {
            p,
            degrees: pairs.iter().map(|&(f, _)| f).collect(),
            ramification: pairs.iter().map(|&(_, e)| e).collect(),
            status: SplitStatus::RamifiedUserSupplied,
        });
    }
    Ok(PrimeSplitting { p, degrees: vec![], ramification: vec![], status: SplitStatus::Undetermined })
}

/// Irreducible factors modulo an unramified prime, in canonical slot order.
pub fn slot_factors(field: &NumberField, p: u64) -> Result<Vec<FpFactor>> {
    factor_mod_p_full(field.minpoly(), p)
}

pub fn residue_degree_gcd(field: &NumberField, p: u64) -> Result<Option<u64>> {
    Ok(splitting_type(field, p)?.degree_gcd())
}

/// Primes up to and including `bound`, ascending.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let sieve = primal::Sieve::new(bound as usize);
    sieve.primes_from(2).take_while(|&p| p as u64 <= bound).map(|p| p as u64).collect()
}

/// Splitting data for every prime up to `bound`, computed in parallel.
pub fn splittings_up_to(field: &NumberField, bound: u64) -> Result<Vec<PrimeSplitting>> {
    primes_up_to(bound)
        .into_par_iter()
        .map(|p| splitting_type(field, p))
        .collect()
}

/// Truncated Euler product for `zeta_K(s)` with a rigorous error bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaEstimate {
    pub s: u32,
    pub prime_bound: u64,
    pub value: Dyadic,
    pub error_bound: Dyadic,
}

impl ZetaEstimate {
    /// The interval `[value - error_bound, value + error_bound]`.
    pub fn enclosure(&self, prec: u32) -> Real {
        Real::ball(&self.value, &self.error_bound, prec)
    }

    /// Builds an estimate from user-entered decimals, widening the error
    /// bound by whatever is lost converting the value to binary.
    pub fn from_decimal(s: u32, prime_bound: u64, value: &BigRational, error: &BigRational, prec: u32) -> Self {
        let v = Dyadic::from_ratio(value.numer(), value.denom(), prec, Round::Down);
        let slack = value - v.to_rational();
        let e = error.abs() + slack;
        ZetaEstimate {
            s,
            prime_bound,
            value: v,
            error_bound: Dyadic::from_ratio(e.numer(), e.denom(), prec, Round::Up),
        }
    }
}

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

/// Local Euler factors at p as `(lower, convention, upper)` enclosures.
fn local_factor(split: &PrimeSplitting, n: usize, s: u32, prec: u32) -> (Real, Real, Real) {
    if split.is_determined() {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for &f in &split.degrees {
            let qs = big(split.p).pow(f * s);
            den *= &qs - 1u32;
            num *= qs;
        }
        let r = Real::from_rational(&BigRational::new(num, den), prec);
        (r.clone(), r.clone(), r)
    } else {
        // Between 1 (all places of huge degree) and (1 - p^-s)^-n (total splitting).
        let ps = big(split.p).pow(s);
        let top = BigRational::new(ps.pow(n as u32), (&ps - 1u32).pow(n as u32));
        let hi = Real::from_rational(&top, prec);
        let mid = hi.sqrt();
        (Real::from_int(1, prec), mid, hi)
    }
}

/// Upper bound for the Euler tail over primes above `bound`:
/// `exp(n * c * m^(1-s) / (2 (s-1)))`, where `c = 1/(1 - (bound+1)^-s)` and
/// `m + 2` is the least odd integer above `bound`.
fn tail_factor(n: usize, s: u32, bound: u64, prec: u32) -> Real {
    let next_odd = if bound % 2 == 0 { bound + 1 } else { bound + 2 };
    let m = next_odd - 2;
    let b1s = big(bound + 1).pow(s);
    let c = BigRational::new(b1s.clone(), b1s - 1u32);
    let integral = BigRational::new(BigInt::one(), big(m).pow(s - 1) * big(2 * (s as u64 - 1)));
    let x = c * integral * BigRational::from_integer(big(n as u64));
    Real::from_rational(&x, prec).exp()
}

pub fn zeta_partial(field: &NumberField, s: u32, prime_bound: u64, precision_bits: u32) -> Result<ZetaEstimate> {
    if s < 2 {
        return Err(Error::InvalidInput(format!("s = {s} must be at least 2")));
    }
    if prime_bound < 2 {
        return Err(Error::InvalidInput(format!("prime bound {prime_bound} must be at least 2")));
    }
    if precision_bits < MIN_PRECISION_BITS {
        return Err(Error::PrecisionUnattainable(precision_bits));
    }
    let n = field.degree();
    let splits = splittings_up_to(field, prime_bound)?;
    let work = precision_bits + 32;
    let factors: Vec<(Real, Real, Real)> =
        splits.par_iter().map(|sp| local_factor(sp, n, s, work)).collect();
    let one = Real::from_int(1, work);
    let (mut lo, mut mid, mut hi) = (one.clone(), one.clone(), one);
    for (a, b, c) in &factors {
        lo = lo.mul(a);
        mid = mid.mul(b);
        hi = hi.mul(c);
    }
    let upper = hi.mul(&tail_factor(n, s, prime_bound, work));
    let value = mid.lo().round(precision_bits, Round::Down);
    let above = upper.hi().sub(&value);
    let below = value.sub(lo.lo());
    let error_bound = above.max(below).round(precision_bits, Round::Up);
    Ok(ZetaEstimate { s, prime_bound, value, error_bound })
}
