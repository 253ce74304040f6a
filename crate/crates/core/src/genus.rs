//! Counting bounds for the genus of a division algebra from the volume of
//! its principal arithmetic subgroup.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::brauer::{BrauerClass, QmodZInvariant};
use crate::error::{Error, Result};
use crate::place::Place;
use crate::real::{Dyadic, Real, Round};
use crate::serde_bigint;
use crate::volume::lambda_factor;

/// Degree beyond which the archimedean constant exceeds one.
pub const LARGE_DEGREE: u64 = 28;
pub const MAX_SEARCH_BUDGET: u64 = 59_049;
pub const MAX_SEARCH_PLACES: usize = 32;
pub const MAX_SEARCH_DEGREE: u64 = 12;

pub fn totient(n: u64) -> u64 {
    let (mut m, mut out, mut p) = (n, n, 2u64);
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

/// `prod phi(d_v)` over the finite ramified places.
pub fn theta(local_degrees: &[u64]) -> Result<BigInt> {
    if let Some(&d) = local_degrees.iter().find(|&&d| d < 2) {
        return Err(Error::InvalidInput(format!("local degree {d} must be at least 2")));
    }
    Ok(local_degrees.iter().fold(BigInt::one(), |acc, &d| acc * totient(d)))
}

fn ten_33() -> BigInt {
    BigInt::from(10u32).pow(33)
}

/// `floor(1 + 10^33 V)`, or `floor(1 + V)` when `d > 28`.
pub fn pr_bound(volume: &BigRational, d: u64) -> Result<BigInt> {
    if !volume.is_positive() {
        return Err(Error::InvalidInput("volume must be positive".into()));
    }
    if d < 2 {
        return Err(Error::InvalidInput(format!("degree {d} must be at least 2")));
    }
    let scaled = if d > LARGE_DEGREE { volume.clone() } else { volume * BigRational::from_integer(ten_33()) };
    Ok((BigRational::one() + scaled).floor().to_integer())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaBudget {
    pub coarse: BigRational,
    pub refined: Real,
}

/// `10^33 V` and `10^33 V / D_K^{(d^2-1)/2}`.
pub fn lambda_budget(volume: &BigRational, d: u64, abs_disc: Option<&BigInt>, prec: u32) -> Result<LambdaBudget> {
    if !volume.is_positive() {
        return Err(Error::InvalidInput("volume must be positive".into()));
    }
    let disc = abs_disc.ok_or_else(|| Error::MissingFieldDiscriminant("lambda budget".into()))?.abs();
    if disc.is_zero() {
        return Err(Error::InvalidInput("discriminant must be nonzero".into()));
    }
    let coarse = volume * BigRational::from_integer(ten_33());
    let k = d * d - 1;
    let whole = BigRational::from_integer(disc.pow((k / 2) as u32));
    let mut den = Real::from_rational(&whole, prec);
    if k.is_odd() {
        den = den.mul(&Real::from_rational(&BigRational::from_integer(disc), prec).sqrt());
    }
    let refined = Real::from_rational(&coarse, prec).div(&den);
    Ok(LambdaBudget { coarse, refined })
}

/// Largest `alpha` with `3^alpha <= N`, and the resulting bound on theta.
pub fn isobound(n: &BigRational) -> Result<(u32, BigInt)> {
    if n < &BigRational::one() {
        return Err(Error::InvalidInput("budget must be at least 1".into()));
    }
    let floor = n.floor().to_integer();
    let three = BigInt::from(3);
    let mut alpha = 0u32;
    let mut pow = three.clone();
    while pow <= floor {
        alpha += 1;
        pow *= &three;
    }
    let bound = if alpha < 2 { BigInt::one() } else { BigInt::one() << alpha as usize };
    Ok((alpha, bound))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DmaxPlace {
    pub place: Place,
    pub d_v: u64,
    pub inv: QmodZInvariant,
}

/// `alpha` cubic places over 2 with invariants `1/3` and `2/3` summing to zero.
pub fn dmax_construct(alpha: u32) -> Result<Vec<DmaxPlace>> {
    if alpha < 2 {
        return Err(Error::AlphaTooSmall(alpha));
    }
    let twos = match alpha % 3 {
        0 => 0,
        1 => 2,
        _ => 1,
    };
    let ones = alpha as usize - twos;
    Ok((0..alpha as usize)
        .map(|i| DmaxPlace {
            place: Place::finite(2, i),
            d_v: 3,
            inv: QmodZInvariant::new(if i < ones { 1 } else { 2 }, 3),
        })
        .collect())
}

pub fn dmax_class(alpha: u32, field: &str) -> Result<BrauerClass> {
    Ok(BrauerClass::from_invariants(field, dmax_construct(alpha)?.into_iter().map(|p| (p.place, p.inv))))
}

/// A ramification pattern for `SL_n(D)` with `nd` fixed and residue fields of size 2.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ThetaConfig {
    pub nd: u64,
    pub local_degrees: Vec<u64>,
    #[serde(with = "serde_bigint")]
    pub lambda_product: BigInt,
    #[serde(with = "serde_bigint")]
    pub theta: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpace {
    pub max_places: usize,
    pub nd_range: (u64, u64),
}

impl Default for SearchSpace {
    fn default() -> Self {
        SearchSpace { max_places: 16, nd_range: (2, 8) }
    }
}

/// Whether invariants of exact orders `degrees` can sum to zero in Q/Z.
pub fn realizable(degrees: &[u64]) -> bool {
    if degrees.is_empty() {
        return true;
    }
    let l = degrees.iter().fold(1u64, |acc, d| acc.lcm(d)) as usize;
    let mut reach = vec![false; l];
    reach[0] = true;
    for &d in degrees {
        let step = l / d as usize;
        let mut next = vec![false; l];
        for (s, _) in reach.iter().enumerate().filter(|(_, &r)| r) {
            for a in (1..d).filter(|a| a.gcd(&d) == 1) {
                next[(s + a as usize * step) % l] = true;
            }
        }
        reach = next;
    }
    reach[0]
}

fn better(a: &ThetaConfig, b: &ThetaConfig) -> bool {
    a.theta > b.theta || (a.theta == b.theta && (a.nd, &a.local_degrees) < (b.nd, &b.local_degrees))
}

fn search_nd(nd: u64, budget: &BigInt, max_places: usize) -> Result<ThetaConfig> {
    let mut options = Vec::new();
    for d_v in (2..=nd).filter(|d| nd % d == 0) {
        options.push((d_v, lambda_factor(2, nd, d_v)?));
    }
    let mut best = ThetaConfig { nd, local_degrees: vec![], lambda_product: BigInt::one(), theta: BigInt::one() };
    let mut stack: Vec<(usize, Vec<u64>, BigInt, BigInt)> = vec![(0, vec![], BigInt::one(), BigInt::one())];
    while let Some((start, degs, lam, th)) = stack.pop() {
        if realizable(&degs) {
            let cand = ThetaConfig { nd, local_degrees: degs.clone(), lambda_product: lam.clone(), theta: th.clone() };
            if better(&cand, &best) {
                best = cand;
            }
        }
        if degs.len() == max_places {
            continue;
        }
        for (i, (d_v, l)) in options.iter().enumerate().skip(start) {
            let lam2 = &lam * l.numer();
            if &lam2 > budget {
                continue;
            }
            let mut degs2 = degs.clone();
            degs2.push(*d_v);
            stack.push((i, degs2, lam2, &th * totient(*d_v)));
        }
    }
    Ok(best)
}

/// Exhaustive maximum of theta over ramification patterns whose lambda
/// product (with residue fields of size 2) stays within `budget`.
pub fn brute_force_theta_max(budget: &BigRational, space: &SearchSpace) -> Result<ThetaConfig> {
    let (lo, hi) = space.nd_range;
    if budget > &BigRational::from_integer(MAX_SEARCH_BUDGET.into())
        || space.max_places > MAX_SEARCH_PLACES
        || hi > MAX_SEARCH_DEGREE
    {
        return Err(Error::SearchSpaceTooLarge(format!(
            "budget <= {MAX_SEARCH_BUDGET}, places <= {MAX_SEARCH_PLACES}, nd <= {MAX_SEARCH_DEGREE}"
        )));
    }
    if lo < 2 || lo > hi {
        return Err(Error::InvalidInput(format!("bad nd range {lo}..={hi}")));
    }
    let cap = budget.floor().to_integer();
    let results: Vec<ThetaConfig> = (lo..=hi)
        .into_par_iter()
        .map(|nd| search_nd(nd, &cap, space.max_places))
        .collect::<Result<_>>()?;
    let mut best = results[0].clone();
    for r in &results[1..] {
        if better(r, &best) {
            best = r.clone();
        }
    }
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundBranch {
    General,
    LargeDegree,
    Isobound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusBoundReport {
    #[serde(with = "serde_bigint")]
    pub theta: BigInt,
    #[serde(with = "serde_bigint")]
    pub bound: BigInt,
    pub branch: BoundBranch,
    pub alpha: u32,
    /// Upper endpoint of the discriminant-refined lambda budget.
    pub budget: Dyadic,
    /// `phi(d_v)` per ramified place.
    pub details: Vec<u64>,
}

/// Bound on the genus from the volume `V` of `SL_1(D)`-type quotients of degree `d`.
pub fn genus_report(local_degrees: &[u64], volume: &BigRational, d: u64, abs_disc: Option<&BigInt>, prec: u32) -> Result<GenusBoundReport> {
    let th = theta(local_degrees)?;
    let pr = pr_bound(volume, d)?;
    let budget = lambda_budget(volume, d, abs_disc, prec)?;
    let top = budget.refined.hi().round(prec, Round::Up);
    let top_rat = top.to_rational();
    let (alpha, iso) = if top_rat >= BigRational::one() { isobound(&top_rat)? } else { (0, BigInt::one()) };
    let (bound, branch) = if iso < pr {
        (iso, BoundBranch::Isobound)
    } else if d > LARGE_DEGREE {
        (pr, BoundBranch::LargeDegree)
    } else {
        (pr, BoundBranch::General)
    };
    Ok(GenusBoundReport {
        theta: th,
        bound,
        branch,
        alpha,
        budget: top,
        details: local_degrees.iter().map(|&d| totient(d)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta(&[]).unwrap(), BigInt::one());
        assert_eq!(theta(&[3, 3]).unwrap(), BigInt::from(4));
        assert_eq!(theta(&[4, 6, 5]).unwrap(), BigInt::from(16));
        assert!(theta(&[1]).is_err());
    }

    #[test]
    fn pr_bound_examples() {
        assert_eq!(pr_bound(&r(1), 2).unwrap(), BigInt::one() + ten_33());
        assert_eq!(pr_bound(&r(1), 29).unwrap(), BigInt::from(2));
        let tiny = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(40));
        assert_eq!(pr_bound(&tiny, 2).unwrap(), BigInt::one());
    }

    #[test]
    fn budgets() {
        let v = BigRational::new(BigInt::one(), BigInt::from(12));
        let b = lambda_budget(&v, 2, Some(&BigInt::one()), 128).unwrap();
        assert_eq!(b.coarse, BigRational::new(ten_33(), BigInt::from(12)));
        assert!(b.refined.contains(&b.coarse));
        let b5 = lambda_budget(&v, 2, Some(&BigInt::from(5)), 128).unwrap();
        assert!(b5.refined.hi().to_rational() <= b5.coarse);
        assert!(matches!(lambda_budget(&v, 2, None, 128), Err(Error::MissingFieldDiscriminant(_))));
    }

    #[test]
    fn isobound_examples() {
        assert_eq!(isobound(&r(8)).unwrap(), (1, BigInt::one()));
        assert_eq!(isobound(&r(9)).unwrap(), (2, BigInt::from(4)));
        assert_eq!(isobound(&r(243)).unwrap(), (5, BigInt::from(32)));
        assert_eq!(isobound(&BigRational::new(BigInt::from(53), BigInt::from(2))).unwrap().0, 2);
    }

    #[test]
    fn dmax_examples() {
        let invs = |a| dmax_construct(a).unwrap().iter().map(|p| p.inv).collect::<Vec<_>>();
        assert_eq!(invs(2), vec![QmodZInvariant::new(1, 3), QmodZInvariant::new(2, 3)]);
        assert_eq!(invs(3), vec![QmodZInvariant::new(1, 3); 3]);
        assert_eq!(dmax_construct(1), Err(Error::AlphaTooSmall(1)));
        for a in 2..20 {
            assert!(dmax_class(a, "K").unwrap().is_valid());
        }
    }

    #[test]
    fn realizability() {
        assert!(realizable(&[]));
        assert!(!realizable(&[2]));
        assert!(realizable(&[2, 2]));
        assert!(!realizable(&[2, 3]));
        assert!(realizable(&[2, 3, 6]));
        assert!(realizable(&[3, 3]));
        assert!(!realizable(&[4, 2]));
        assert!(realizable(&[4, 4]));
    }

    #[test]
    fn small_budgets() {
        let s = SearchSpace::default();
        for n in 1..=8 {
            assert_eq!(brute_force_theta_max(&r(n), &s).unwrap().theta, BigInt::one());
        }
        let best = brute_force_theta_max(&r(9), &s).unwrap();
        assert_eq!((best.theta, best.nd, best.local_degrees), (BigInt::from(4), 3, vec![3, 3]));
        assert_eq!(brute_force_theta_max(&r(81), &s).unwrap().theta, BigInt::from(16));
        assert!(brute_force_theta_max(&r(100_000), &s).is_err());
    }
}
