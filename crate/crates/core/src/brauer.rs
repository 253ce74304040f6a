//! Brauer classes of number fields as finitely supported vectors of local
//! Hasse invariants in Q/Z.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::equivalence::PlaceBijectionData;
use crate::error::{Error, Result};
use crate::fieldlab::{splitting_type, NumberField};
use crate::place::{ArchKind, Place};

/// An element `num/den` of Q/Z.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QmodZInvariant {
    num: u64,
    den: u64,
}

impl QmodZInvariant {
    pub const ZERO: QmodZInvariant = QmodZInvariant { num: 0, den: 1 };

    /// Reduces `a/m` into `[0, 1)` in lowest terms. Panics if `m == 0`.
    pub fn new(a: i128, m: u64) -> Self {
        assert!(m > 0, "zero denominator");
        let r = a.rem_euclid(m as i128) as u64;
        if r == 0 {
            return Self::ZERO;
        }
        let g = r.gcd(&m);
        QmodZInvariant { num: r / g, den: m / g }
    }

    /// Stores `a/m` as given, for documents that still need validation.
    pub fn raw(num: u64, den: u64) -> Self {
        QmodZInvariant { num, den }
    }

    pub fn half() -> Self {
        QmodZInvariant::new(1, 2)
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num % self.den.max(1) == 0
    }

    pub fn is_reduced(&self) -> bool {
        self.den >= 1 && self.num < self.den && (self.num.gcd(&self.den) == 1 || (self.num, self.den) == (0, 1))
    }

    pub fn reduced(&self) -> Self {
        QmodZInvariant::new(self.num as i128, self.den)
    }

    pub fn add(&self, other: &Self) -> Self {
        let l = self.den.lcm(&other.den);
        let a = self.num as i128 * (l / self.den) as i128 + other.num as i128 * (l / other.den) as i128;
        QmodZInvariant::new(a, l)
    }

    pub fn neg(&self) -> Self {
        QmodZInvariant::new(-(self.num as i128), self.den)
    }

    pub fn scale(&self, k: u64) -> Self {
        QmodZInvariant::new(self.num as i128 * k as i128, self.den)
    }

    /// Order of the element in Q/Z.
    pub fn order(&self) -> u64 {
        self.reduced().den
    }
}

impl fmt::Display for QmodZInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct InvEntry {
    place: Place,
    num: u64,
    den: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct ClassDoc {
    field: String,
    inv: Vec<InvEntry>,
}

/// A Brauer class given by its local invariants. Places not in the map
/// carry invariant zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "ClassDoc", into = "ClassDoc")]
pub struct BrauerClass {
    field: String,
    invariants: BTreeMap<Place, QmodZInvariant>,
}

impl From<ClassDoc> for BrauerClass {
    fn from(doc: ClassDoc) -> Self {
        BrauerClass {
            field: doc.field,
            invariants: doc.inv.into_iter().map(|e| (e.place, QmodZInvariant::raw(e.num, e.den))).collect(),
        }
    }
}

impl From<BrauerClass> for ClassDoc {
    fn from(c: BrauerClass) -> Self {
        ClassDoc {
            field: c.field,
            inv: c
                .invariants
                .into_iter()
                .map(|(place, q)| InvEntry { place, num: q.num, den: q.den })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Reciprocity { sum: QmodZInvariant },
    RealInvariant { place: Place, inv: QmodZInvariant },
    ComplexInvariant { place: Place },
    ZeroDenominator { place: Place },
    Unreduced { place: Place, inv: QmodZInvariant },
    StoredZero { place: Place },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Reciprocity { sum } => write!(f, "invariants sum to {sum}, not 0"),
            Violation::RealInvariant { place, inv } => write!(f, "real place {place} carries {inv}"),
            Violation::ComplexInvariant { place } => write!(f, "complex place {place} carries a nonzero invariant"),
            Violation::ZeroDenominator { place } => write!(f, "zero denominator at {place}"),
            Violation::Unreduced { place, inv } => write!(f, "unreduced invariant {inv} at {place}"),
            Violation::StoredZero { place } => write!(f, "zero invariant stored at {place}"),
        }
    }
}

impl BrauerClass {
    pub fn trivial(field: &str) -> Self {
        BrauerClass { field: field.to_string(), invariants: BTreeMap::new() }
    }

    /// Builds a class from invariants, reducing them and dropping zeros.
    /// No reciprocity check: call [`BrauerClass::validate`].
    pub fn from_invariants(field: &str, invs: impl IntoIterator<Item = (Place, QmodZInvariant)>) -> Self {
        let mut c = BrauerClass::trivial(field);
        for (place, q) in invs {
            let q = q.reduced();
            let slot = c.invariants.entry(place).or_insert(QmodZInvariant::ZERO);
            *slot = slot.add(&q);
        }
        c.invariants.retain(|_, q| !q.is_zero());
        c
    }

    /// Stores invariants exactly as given.
    pub fn unchecked(field: &str, invariants: BTreeMap<Place, QmodZInvariant>) -> Self {
        BrauerClass { field: field.to_string(), invariants }
    }

    pub fn field(&self) -> &str {
        &self.field
    }

    pub fn invariants(&self) -> &BTreeMap<Place, QmodZInvariant> {
        &self.invariants
    }

    pub fn invariant(&self, place: &Place) -> QmodZInvariant {
        self.invariants.get(place).copied().unwrap_or(QmodZInvariant::ZERO)
    }

    pub fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        let mut out = Vec::new();
        let mut sum = QmodZInvariant::ZERO;
        for (&place, &q) in &self.invariants {
            if q.den == 0 {
                out.push(Violation::ZeroDenominator { place });
                continue;
            }
            if !q.is_reduced() {
                out.push(Violation::Unreduced { place, inv: q });
            } else if q.num == 0 {
                out.push(Violation::StoredZero { place });
            }
            let r = q.reduced();
            match place {
                Place::Arch { arch: ArchKind::Real, .. } if !(r.is_zero() || r == QmodZInvariant::half()) => {
                    out.push(Violation::RealInvariant { place, inv: q })
                }
                Place::Arch { arch: ArchKind::Complex, .. } if !r.is_zero() => {
                    out.push(Violation::ComplexInvariant { place })
                }
                _ => {}
            }
            sum = sum.add(&r);
        }
        if !sum.is_zero() {
            out.push(Violation::Reciprocity { sum });
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.values().all(|q| q.is_zero())
    }

    pub fn tensor(&self, other: &BrauerClass) -> Result<BrauerClass> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.clone(), other.field.clone()));
        }
        Ok(BrauerClass::from_invariants(
            &self.field,
            self.invariants.iter().chain(&other.invariants).map(|(&p, &q)| (p, q)),
        ))
    }

    pub fn inverse(&self) -> BrauerClass {
        BrauerClass::from_invariants(&self.field, self.invariants.iter().map(|(&p, q)| (p, q.neg())))
    }

    /// `m`-fold tensor power.
    pub fn power(&self, m: u64) -> BrauerClass {
        BrauerClass::from_invariants(&self.field, self.invariants.iter().map(|(&p, q)| (p, q.scale(m))))
    }

    /// Degree of the underlying division algebra: the lcm of local orders.
    pub fn division_algebra_degree(&self) -> u64 {
        self.invariants.values().fold(1u64, |l, q| l.lcm(&q.order()))
    }

    /// Finite and real places where the class ramifies.
    pub fn ram_sets(&self) -> (Vec<Place>, Vec<Place>) {
        let support = self.invariants.iter().filter(|(_, q)| !q.is_zero()).map(|(&p, _)| p);
        support.partition(|p| p.is_finite())
    }
}

impl fmt::Display for BrauerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{{", self.field)?;
        for (i, (p, q)) in self.invariants.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}: {q}")?;
        }
        write!(f, "}}")
    }
}

fn expect_valid(c: &BrauerClass) -> Result<()> {
    c.validate().map_err(|v| {
        let msgs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        Error::InvalidInput(format!("invalid class {c}: {}", msgs.join("; ")))
    })
}

/// Extends a class over Q to `K` by scaling each invariant by the local degree.
pub fn restrict_from_q(c: &BrauerClass, field: &NumberField, prime_bound: u64) -> Result<BrauerClass> {
    expect_valid(c)?;
    let mut out = Vec::new();
    for (place, q) in c.invariants() {
        match *place {
            Place::Finite { p, slot: 0 } => {
                if p > prime_bound {
                    return Err(Error::InvalidInput(format!("prime {p} exceeds the bound {prime_bound}")));
                }
                let split = splitting_type(field, p)?;
                if !split.is_determined() {
                    return Err(Error::UndeterminedPrime(p));
                }
                for (slot, n_v) in split.local_degrees().into_iter().enumerate() {
                    out.push((Place::finite(p, slot), q.scale(n_v)));
                }
            }
            Place::Arch { arch: ArchKind::Real, index: 0 } => {
                let (r1, _) = field.signature();
                out.extend((0..r1).map(|i| (Place::real(i), *q)));
            }
            other => {
                return Err(Error::InvalidInput(format!("{other} is not a place of Q")));
            }
        }
    }
    Ok(BrauerClass::from_invariants(field.label(), out))
}

/// Relabels the invariants of a class over `K` along a place matching.
pub fn transport(c: &BrauerClass, phi: &PlaceBijectionData) -> Result<BrauerClass> {
    if c.field() != phi.left_field {
        return Err(Error::FieldMismatch(c.field().to_string(), phi.left_field.clone()));
    }
    expect_valid(c)?;
    let mut out = Vec::new();
    for (place, q) in c.invariants() {
        out.push((phi.image(place)?, *q));
    }
    Ok(BrauerClass::from_invariants(&phi.right_field, out))
}

/// Factor counts in the archimedean completion of `SL_n(D)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArchimedeanType {
    pub matrix_size: u64,
    pub complex_factors: usize,
    pub real_factors: usize,
    pub quaternionic_factors: usize,
    /// `SL(1, H)` factors are compact.
    pub quaternionic_compact: bool,
}

impl ArchimedeanType {
    /// Noncompact factors only.
    pub fn noncompact(&self) -> ArchimedeanType {
        let mut t = self.clone();
        if t.quaternionic_compact {
            t.quaternionic_factors = 0;
        }
        t
    }
}

impl fmt::Display for ArchimedeanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nd = self.matrix_size;
        let mut parts = Vec::new();
        if self.complex_factors > 0 {
            parts.push(format!("SL({nd},C)^{}", self.complex_factors));
        }
        if self.real_factors > 0 {
            parts.push(format!("SL({nd},R)^{}", self.real_factors));
        }
        if self.quaternionic_factors > 0 {
            parts.push(format!("SL({},H)^{}", nd / 2, self.quaternionic_factors));
        }
        if parts.is_empty() {
            write!(f, "trivial")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

pub fn archimedean_group_type(c: &BrauerClass, field: &NumberField, n: u64) -> Result<ArchimedeanType> {
    if c.field() != field.label() {
        return Err(Error::FieldMismatch(c.field().to_string(), field.label().to_string()));
    }
    expect_valid(c)?;
    if n == 0 {
        return Err(Error::InvalidInput("matrix size must be positive".into()));
    }
    let (r1, r2) = field.signature();
    let (_, ram_inf) = c.ram_sets();
    if let Some(p) = ram_inf.iter().find(|p| matches!(p, Place::Arch { index, .. } if *index >= r1)) {
        return Err(Error::InvalidInput(format!("{p} is not a real place of {}", field.label())));
    }
    let nd = n * c.division_algebra_degree();
    if nd % 2 == 1 && !ram_inf.is_empty() {
        return Err(Error::OddQuaternionicRank(nd));
    }
    Ok(ArchimedeanType {
        matrix_size: nd,
        complex_factors: r2,
        real_factors: r1 - ram_inf.len(),
        quaternionic_factors: ram_inf.len(),
        quaternionic_compact: nd == 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i128, m: u64) -> QmodZInvariant {
        QmodZInvariant::new(a, m)
    }

    fn over_q(invs: &[(u64, i128, u64)]) -> BrauerClass {
        BrauerClass::from_invariants("Q", invs.iter().map(|&(p, a, m)| (Place::finite(p, 0), q(a, m))))
    }

    #[test]
    fn qmodz_arithmetic() {
        assert_eq!(q(5, 3), q(2, 3));
        assert_eq!(q(-1, 3), q(2, 3));
        assert_eq!(q(1, 2).add(&q(1, 2)), QmodZInvariant::ZERO);
        assert_eq!(q(1, 2).add(&q(1, 3)), q(5, 6));
        assert_eq!(q(2, 4), q(1, 2));
        assert!(!QmodZInvariant::raw(2, 4).is_reduced());
    }

    #[test]
    fn validation_examples() {
        assert!(BrauerClass::trivial("Q").is_valid());
        assert!(over_q(&[(2, 1, 2), (3, 1, 2)]).is_valid());
        let bad = over_q(&[(2, 1, 2)]);
        assert_eq!(bad.validate(), Err(vec![Violation::Reciprocity { sum: q(1, 2) }]));
        let mut m = BTreeMap::new();
        m.insert(Place::real(0), q(1, 3));
        m.insert(Place::finite(2, 0), QmodZInvariant::raw(4, 6));
        let errs = BrauerClass::unchecked("Q", m).validate().unwrap_err();
        assert!(errs.iter().any(|v| matches!(v, Violation::RealInvariant { .. })));
        assert!(errs.iter().any(|v| matches!(v, Violation::Unreduced { .. })));
        assert!(!errs.iter().any(|v| matches!(v, Violation::Reciprocity { .. })));
    }

    #[test]
    fn tensor_inverse_degree() {
        let c = over_q(&[(5, 1, 3), (7, 2, 3)]);
        assert_eq!(c.tensor(&c).unwrap(), over_q(&[(5, 2, 3), (7, 1, 3)]));
        assert_eq!(c.inverse(), over_q(&[(5, 2, 3), (7, 1, 3)]));
        assert!(c.tensor(&c.inverse()).unwrap().is_trivial());
        let quat = over_q(&[(2, 1, 2), (3, 1, 2)]);
        assert!(quat.tensor(&quat).unwrap().is_trivial());
        assert_eq!(quat.division_algebra_degree(), 2);
        assert_eq!(over_q(&[(2, 1, 2), (3, 1, 3), (5, 1, 6)]).division_algebra_degree(), 6);
        assert_eq!(BrauerClass::trivial("Q").division_algebra_degree(), 1);
        assert!(matches!(c.tensor(&BrauerClass::trivial("K")), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn ram_sets_split_by_type() {
        let c = BrauerClass::from_invariants("Q", [(Place::finite(2, 0), q(1, 2)), (Place::real(0), q(1, 2))]);
        assert_eq!(c.ram_sets(), (vec![Place::finite(2, 0)], vec![Place::real(0)]));
    }

    #[test]
    fn json_round_trip() {
        let c = BrauerClass::from_invariants("Q", [(Place::finite(7, 0), q(1, 3)), (Place::finite(13, 0), q(2, 3))]);
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(
            s,
            r#"{"field":"Q","inv":[{"place":{"p":7,"slot":0},"num":1,"den":3},{"place":{"p":13,"slot":0},"num":2,"den":3}]}"#
        );
        assert_eq!(serde_json::from_str::<BrauerClass>(&s).unwrap(), c);
    }

    #[test]
    fn restriction_to_gaussian_field() {
        let k = NumberField::from_coeffs("gaussian", &[1, 0, 1], Some(-4)).unwrap();
        let r = restrict_from_q(&over_q(&[(5, 1, 2), (13, 1, 2)]), &k, 100).unwrap();
        assert_eq!(r.invariants().len(), 4);
        assert!(r.is_valid() && !r.is_trivial());
        let inert = restrict_from_q(&over_q(&[(3, 1, 2), (7, 1, 2)]), &k, 100).unwrap();
        assert!(inert.is_trivial());
        assert_eq!(restrict_from_q(&over_q(&[(2, 1, 2), (3, 1, 2)]), &k, 100), Err(Error::UndeterminedPrime(2)));
    }

    #[test]
    fn restriction_kills_inert_cubic_invariants() {
        let k = NumberField::from_coeffs("cubic2", &[-2, 0, 0, 1], Some(-108)).unwrap();
        let c = over_q(&[(7, 1, 3), (13, 1, 3), (19, 1, 3)]);
        assert!(restrict_from_q(&c, &k, 100).unwrap().is_trivial());
    }

    #[test]
    fn archimedean_types() {
        let g = NumberField::from_coeffs("gaussian", &[1, 0, 1], Some(-4)).unwrap();
        let t = archimedean_group_type(&BrauerClass::trivial("gaussian"), &g, 2).unwrap();
        assert_eq!((t.complex_factors, t.real_factors, t.quaternionic_factors), (1, 0, 0));
        let q_field = NumberField::rationals();
        let c3 = over_q(&[(7, 1, 3), (13, 2, 3)]);
        let t = archimedean_group_type(&c3, &q_field, 1).unwrap();
        assert_eq!((t.matrix_size, t.real_factors), (3, 1));
        let ham = BrauerClass::from_invariants("Q", [(Place::finite(2, 0), q(1, 2)), (Place::real(0), q(1, 2))]);
        let t = archimedean_group_type(&ham, &q_field, 1).unwrap();
        assert_eq!(t.to_string(), "SL(1,H)^1");
        assert!(t.quaternionic_compact);
        assert_eq!(t.noncompact().to_string(), "trivial");
    }
}
