//! Orders in central simple algebras through their local deviation from a
//! maximal order, and the Bruhat-Tits tree of `SL_2(Q_p)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::brauer::{transport, BrauerClass};
use crate::equivalence::PlaceBijectionData;
use crate::error::{Error, Result};
use crate::place::Place;
use crate::serde_bigint;

#[derive(Clone, Debug, Serialize, Deserialize)]
struct LevelEntry {
    place: Place,
    e: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<LevelEntry>", into = "Vec<LevelEntry>")]
pub struct LevelIdeal {
    exponents: BTreeMap<Place, u32>,
}

impl LevelIdeal {
    pub fn new(exponents: impl IntoIterator<Item = (Place, u32)>) -> Self {
        LevelIdeal { exponents: exponents.into_iter().filter(|&(_, e)| e > 0).collect() }
    }

    pub fn exponents(&self) -> &BTreeMap<Place, u32> {
        &self.exponents
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn relabel(&self, phi: &PlaceBijectionData) -> Result<LevelIdeal> {
        let mut out = Vec::new();
        for (place, &e) in &self.exponents {
            out.push((phi.image(place)?, e));
        }
        Ok(LevelIdeal::new(out))
    }
}

impl From<Vec<LevelEntry>> for LevelIdeal {
    fn from(v: Vec<LevelEntry>) -> Self {
        LevelIdeal::new(v.into_iter().map(|x| (x.place, x.e)))
    }
}

impl From<LevelIdeal> for Vec<LevelEntry> {
    fn from(l: LevelIdeal) -> Self {
        l.exponents.into_iter().map(|(place, e)| LevelEntry { place, e }).collect()
    }
}

impl fmt::Display for LevelIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "(1)");
        }
        let parts: Vec<String> = self.exponents.iter().map(|(p, e)| format!("P[{p}]^{e}")).collect();
        write!(f, "{}", parts.join(" * "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Deviation {
    pub e: u32,
    pub label: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct DevEntry {
    place: Place,
    e: u32,
    label: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct OrderDoc {
    class: BrauerClass,
    dev: Vec<DevEntry>,
}

/// An order described by the finitely many places where it differs from a
/// maximal order of the ambient algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "OrderDoc", into = "OrderDoc")]
pub struct OrderData {
    class: BrauerClass,
    deviations: BTreeMap<Place, Deviation>,
}

impl TryFrom<OrderDoc> for OrderData {
    type Error = Error;

    fn try_from(doc: OrderDoc) -> Result<Self> {
        OrderData::new(doc.class, doc.dev.into_iter().map(|d| (d.place, Deviation { e: d.e, label: d.label })))
    }
}

impl From<OrderData> for OrderDoc {
    fn from(o: OrderData) -> Self {
        OrderDoc {
            class: o.class,
            dev: o
                .deviations
                .into_iter()
                .map(|(place, d)| DevEntry { place, e: d.e, label: d.label })
                .collect(),
        }
    }
}

impl OrderData {
    pub fn new(class: BrauerClass, deviations: impl IntoIterator<Item = (Place, Deviation)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (place, d) in deviations {
            if !place.is_finite() {
                return Err(Error::InvalidInput(format!("deviation at archimedean place {place}")));
            }
            if d.e > 0 && map.insert(place, d).is_some() {
                return Err(Error::InvalidInput(format!("duplicate deviation at {place}")));
            }
        }
        Ok(OrderData { class, deviations: map })
    }

    pub fn maximal(class: BrauerClass) -> Self {
        OrderData { class, deviations: BTreeMap::new() }
    }

    pub fn class(&self) -> &BrauerClass {
        &self.class
    }

    pub fn deviations(&self) -> &BTreeMap<Place, Deviation> {
        &self.deviations
    }
}

pub fn level_ideal(order: &OrderData) -> LevelIdeal {
    LevelIdeal::new(order.deviations.iter().map(|(&p, d)| (p, d.e)))
}

pub fn is_maximal(order: &OrderData) -> bool {
    level_ideal(order).is_trivial()
}

pub fn transport_order(order: &OrderData, phi: &PlaceBijectionData, transported_class: &BrauerClass) -> Result<OrderData> {
    if &transport(&order.class, phi)? != transported_class {
        return Err(Error::ClassMismatch);
    }
    let mut devs = Vec::new();
    for (place, d) in &order.deviations {
        devs.push((phi.image(place)?, d.clone()));
    }
    OrderData::new(transported_class.clone(), devs)
}

/// A vertex of the tree of `SL_2(Q_p)`: the homothety class of the lattice
/// with row basis `(p^a, b), (0, p^n)`, normalized so that `0 <= b < p^n`
/// and the entries have no common factor of `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TreeVertex {
    pub p: u64,
    pub a: u32,
    pub n: u32,
    #[serde(with = "serde_bigint::unsigned")]
    pub b: BigUint,
}

fn vp_int(x: &BigInt, p: &BigInt) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let mut x = x.clone();
    let mut v = 0;
    while (&x % p).is_zero() {
        x /= p;
        v += 1;
    }
    Some(v)
}

fn vp_rat(x: &BigRational, p: &BigInt) -> Option<i64> {
    let num = vp_int(x.numer(), p)? as i64;
    Some(num - vp_int(x.denom(), p).unwrap_or(0) as i64)
}

fn mod_inverse(x: &BigInt, m: &BigInt) -> BigInt {
    let e = x.extended_gcd(m);
    e.x.mod_floor(m)
}

type Mat2 = [[BigInt; 2]; 2];

impl TreeVertex {
    pub fn standard(p: u64) -> Self {
        TreeVertex { p, a: 0, n: 0, b: BigUint::zero() }
    }

    /// Normal form of the lattice spanned by the rows of an integer matrix.
    pub fn from_matrix(p: u64, m: &Mat2) -> Result<Self> {
        if !primal::is_prime(p) {
            return Err(Error::CompositeModulus(p));
        }
        let pb = BigInt::from(p);
        let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
        let vdet = vp_int(&det, &pb).ok_or_else(|| Error::InvalidInput("singular lattice basis".into()))?;
        // Row with the smaller valuation in the first column.
        let row = match (vp_int(&m[0][0], &pb), vp_int(&m[1][0], &pb)) {
            (Some(x), Some(y)) if y < x => 1,
            (None, _) => 1,
            _ => 0,
        };
        let a = vp_int(&m[row][0], &pb).expect("nonsingular");
        let n = vdet - a;
        let pn = pb.pow(n);
        let unit = &m[row][0] / pb.pow(a);
        let b = if n == 0 { BigInt::zero() } else { (&m[row][1] * mod_inverse(&unit, &pn)).mod_floor(&pn) };
        Ok(TreeVertex::reduce(p, a, n, b))
    }

    fn reduce(p: u64, a: u32, n: u32, b: BigInt) -> Self {
        let pb = BigInt::from(p);
        let k = [Some(a), Some(n), vp_int(&b, &pb)].into_iter().flatten().min().unwrap_or(0);
        let scale = pb.pow(k);
        TreeVertex {
            p,
            a: a - k,
            n: n - k,
            b: (b / scale).to_biguint().expect("nonnegative"),
        }
    }

    pub fn matrix(&self) -> Mat2 {
        let pb = BigInt::from(self.p);
        [[pb.pow(self.a), BigInt::from(self.b.clone())], [BigInt::zero(), pb.pow(self.n)]]
    }

    pub fn is_reduced(&self) -> bool {
        let pn = BigUint::from(self.p).pow(self.n);
        let content_zero = self.a == 0 || self.n == 0 || (!self.b.is_zero() && !(&self.b % self.p).is_zero());
        self.b < pn && content_zero
    }
}

impl fmt::Display for TreeVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[p={}; ({}^{}, {}), (0, {}^{})]", self.p, self.p, self.a, self.b, self.p, self.n)
    }
}

fn to_rat(m: &Mat2) -> [[BigRational; 2]; 2] {
    let r = |x: &BigInt| BigRational::from_integer(x.clone());
    [[r(&m[0][0]), r(&m[0][1])], [r(&m[1][0]), r(&m[1][1])]]
}

/// Distance in the tree: the gap between the elementary divisor exponents
/// of `g` where `M_v = g M_u`.
pub fn tree_distance(u: &TreeVertex, v: &TreeVertex) -> Result<u32> {
    if u.p != v.p {
        return Err(Error::PrimeMismatch(u.p, v.p));
    }
    let pb = BigInt::from(u.p);
    let m1 = to_rat(&u.matrix());
    let m2 = to_rat(&v.matrix());
    let det1 = &m1[0][0] * &m1[1][1] - &m1[0][1] * &m1[1][0];
    let inv = [
        [&m1[1][1] / &det1, -&m1[0][1] / &det1],
        [-&m1[1][0] / &det1, &m1[0][0] / &det1],
    ];
    let mut g: Vec<BigRational> = Vec::with_capacity(4);
    for i in 0..2 {
        for j in 0..2 {
            g.push(&m2[i][0] * &inv[0][j] + &m2[i][1] * &inv[1][j]);
        }
    }
    let det = &g[0] * &g[3] - &g[1] * &g[2];
    let vdet = vp_rat(&det, &pb).expect("nonsingular");
    let vmin = g.iter().filter_map(|x| vp_rat(x, &pb)).min().expect("nonzero");
    Ok((vdet - 2 * vmin).unsigned_abs() as u32)
}

/// The `p + 1` vertices adjacent to `u`, from its index-`p` sublattices.
pub fn tree_neighbors(u: &TreeVertex) -> Vec<TreeVertex> {
    let pb = BigInt::from(u.p);
    let m = u.matrix();
    let mut out = Vec::with_capacity(u.p as usize + 1);
    let mul = |n: &Mat2| -> Mat2 {
        let e = |i: usize, j: usize| &n[i][0] * &m[0][j] + &n[i][1] * &m[1][j];
        [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
    };
    for j in 0..u.p {
        let n = [[BigInt::one(), BigInt::from(j)], [BigInt::zero(), pb.clone()]];
        out.push(TreeVertex::from_matrix(u.p, &mul(&n)).expect("prime"));
    }
    let n = [[pb.clone(), BigInt::zero()], [BigInt::zero(), BigInt::one()]];
    out.push(TreeVertex::from_matrix(u.p, &mul(&n)).expect("prime"));
    out
}

/// Level exponent at `p` of the intersection of the maximal orders
/// `End(L_u)` and `End(L_v)`, relative to `End(L_u)`.
pub fn intersection_level(u: &TreeVertex, v: &TreeVertex) -> Result<u32> {
    tree_distance(u, v)
}
