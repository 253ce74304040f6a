//! Volumes of `SL_n(D)` quotients for principal arithmetic subgroups, the
//! covolume formula for maximal arithmetic subgroups of `PSL_2(C)^r`, and the
//! archimedean exponent product.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::brauer::BrauerClass;
use crate::error::{Error, Result};
use crate::fieldlab::{splitting_type, zeta_partial, NumberField, ZetaEstimate};
use crate::real::{Dyadic, Real, MIN_PRECISION_BITS};
use crate::serde_bigint;

const GUARD_BITS: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamDatum {
    pub q: u64,
    pub d_v: u64,
}

fn q_pows(q: u64, k: u64) -> BigInt {
    BigInt::from(q).pow(k as u32)
}

fn check_lambda_args(q: u64, nd: u64, d_v: u64) -> Result<()> {
    if q < 2 || d_v < 2 {
        return Err(Error::InvalidInput(format!("lambda factor needs q >= 2 and d_v >= 2, got q={q}, d_v={d_v}")));
    }
    if nd % d_v != 0 {
        return Err(Error::DegreeMismatch { nd, d_v });
    }
    Ok(())
}

/// `prod (q^i - 1)` over `1 <= i < nd`, skipping multiples of `d_v` unless `d_v = nd`.
pub fn lambda_closed_form(q: u64, nd: u64, d_v: u64) -> Result<BigRational> {
    check_lambda_args(q, nd, d_v)?;
    let n_v = nd / d_v;
    let mut acc = BigInt::one();
    for i in 1..nd {
        if n_v == 1 || i % d_v != 0 {
            acc *= q_pows(q, i) - 1u32;
        }
    }
    Ok(BigRational::from_integer(acc))
}

/// `prod_{i<nd} (q^{i+1} - 1) / [prod_{i<n_v} (q^{d_v (i+1)} - 1) * (1 + q + ... + q^{d_v - 1})]`.
pub fn lambda_quotient_form(q: u64, nd: u64, d_v: u64) -> Result<BigRational> {
    check_lambda_args(q, nd, d_v)?;
    let n_v = nd / d_v;
    let num = (1..nd).fold(BigInt::one(), |acc, i| acc * (q_pows(q, i + 1) - 1u32));
    let mut den = (1..n_v).fold(BigInt::one(), |acc, i| acc * (q_pows(q, d_v * (i + 1)) - 1u32));
    den *= (0..d_v).fold(BigInt::zero(), |acc, i| acc + q_pows(q, i));
    Ok(BigRational::new(num, den))
}

/// The local factor `lambda_v`, computed both ways and cross-checked.
pub fn lambda_factor(q: u64, nd: u64, d_v: u64) -> Result<BigRational> {
    let closed = lambda_closed_form(q, nd, d_v)?;
    if closed != lambda_quotient_form(q, nd, d_v)? {
        return Err(Error::LambdaFormMismatch { q, nd, d_v });
    }
    Ok(closed)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VolumeInput {
    pub field_degree: u64,
    #[serde(with = "serde_bigint")]
    pub abs_disc: BigInt,
    pub n: u64,
    pub d: u64,
    pub ram: Vec<RamDatum>,
    pub zeta: Vec<ZetaEstimate>,
    pub precision_bits: u32,
}

impl VolumeInput {
    /// Gathers the inputs for `SL_n(D)` where `D` has class `class` over `field`.
    pub fn from_class(field: &NumberField, class: &BrauerClass, n: u64, zeta_bound: u64, prec: u32) -> Result<Self> {
        if class.field() != field.label() {
            return Err(Error::FieldMismatch(class.field().to_string(), field.label().to_string()));
        }
        let d = class.division_algebra_degree();
        let (ram_f, _) = class.ram_sets();
        let mut ram = Vec::new();
        for place in ram_f {
            let crate::place::Place::Finite { p, slot } = place else { unreachable!() };
            let split = splitting_type(field, p)?;
            if !split.is_determined() {
                return Err(Error::UndeterminedPrime(p));
            }
            let f = *split
                .degrees
                .get(slot)
                .ok_or_else(|| Error::InvalidInput(format!("{place} is not a place of {}", field.label())))?;
            ram.push(RamDatum { q: p.pow(f), d_v: class.invariant(&place).order() });
        }
        let zeta = (2..=(n * d) as u32)
            .map(|s| zeta_partial(field, s, zeta_bound, prec))
            .collect::<Result<Vec<_>>>()?;
        Ok(VolumeInput {
            field_degree: field.degree() as u64,
            abs_disc: field.abs_field_discriminant()?,
            n,
            d,
            ram,
            zeta,
            precision_bits: prec,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VolumeFactor {
    pub name: String,
    pub value: Dyadic,
    pub error_bound: Dyadic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VolumeResult {
    pub value: Dyadic,
    pub error_bound: Dyadic,
    pub breakdown: Vec<VolumeFactor>,
}

impl VolumeResult {
    fn from_parts(total: &Real, parts: Vec<(&str, Real)>) -> Self {
        VolumeResult {
            value: total.mid(),
            error_bound: total.rad(),
            breakdown: parts
                .into_iter()
                .map(|(name, r)| VolumeFactor { name: name.to_string(), value: r.mid(), error_bound: r.rad() })
                .collect(),
        }
    }

    pub fn enclosure(&self, prec: u32) -> Real {
        Real::ball(&self.value, &self.error_bound, prec)
    }
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `prod_{i=1}^{d-1} i! / (2 pi)^{i+1}`.
pub fn exponent_product(d: u64, precision_bits: u32) -> Result<Real> {
    if d < 2 {
        return Err(Error::InvalidInput(format!("exponent product needs d >= 2, got {d}")));
    }
    let w = precision_bits.max(MIN_PRECISION_BITS) + GUARD_BITS;
    let facts = (1..d).fold(BigInt::one(), |acc, i| acc * factorial(i));
    let power = ((d - 1) * (d + 2) / 2) as u32;
    let two_pi = Real::pi(w).mul_pow2(1).powi(power);
    Ok(Real::from_rational(&BigRational::from_integer(facts), w).div(&two_pi))
}

/// `|D|^(k/2)`.
fn disc_half_power(disc: &BigInt, k: u64, prec: u32) -> Real {
    let abs_disc = &disc.abs();
    let whole = Real::from_rational(&BigRational::from_integer(abs_disc.pow((k / 2) as u32)), prec);
    if k.is_odd() {
        whole.mul(&Real::from_rational(&BigRational::from_integer(abs_disc.clone()), prec).sqrt())
    } else {
        whole
    }
}

pub fn volume_sl_n_d(input: &VolumeInput) -> Result<VolumeResult> {
    let nd = input.n * input.d;
    if nd < 2 {
        return Err(Error::DegenerateGroup);
    }
    if input.field_degree == 0 || input.abs_disc.is_zero() {
        return Err(Error::InvalidInput("field degree and discriminant must be nonzero".into()));
    }
    if input.precision_bits < MIN_PRECISION_BITS {
        return Err(Error::PrecisionUnattainable(input.precision_bits));
    }
    let w = input.precision_bits + GUARD_BITS;
    let mut lambda = BigRational::one();
    for r in &input.ram {
        lambda *= lambda_factor(r.q, nd, r.d_v)?;
    }
    let mut zeta = Real::from_int(1, w);
    for s in 2..=nd as u32 {
        let z = input.zeta.iter().find(|z| z.s == s).ok_or(Error::MissingZeta(s))?;
        zeta = zeta.mul(&z.enclosure(w));
    }
    let disc = disc_half_power(&input.abs_disc, nd * nd - 1, w);
    let arch = exponent_product(nd, w)?.powi(input.field_degree as u32);
    let lam = Real::from_rational(&lambda, w);
    let total = disc.mul(&arch).mul(&zeta).mul(&lam);
    Ok(VolumeResult::from_parts(
        &total,
        vec![("disc_power", disc), ("archimedean_product", arch), ("zeta_product", zeta), ("lambda_product", lam)],
    ))
}

/// `D^{3/2} zeta_K(2) / (2^12 pi^7 ext_degree)`.
pub fn covolume_cf(abs_disc: &BigInt, zeta2: &ZetaEstimate, ext_degree: u64, precision_bits: u32) -> Result<VolumeResult> {
    if ext_degree == 0 {
        return Err(Error::InvalidInput("extension degree must be positive".into()));
    }
    if zeta2.s != 2 {
        return Err(Error::MissingZeta(2));
    }
    let w = precision_bits.max(MIN_PRECISION_BITS) + GUARD_BITS;
    let disc = disc_half_power(abs_disc, 3, w);
    let zeta = zeta2.enclosure(w);
    let pi7 = Real::pi(w).powi(7);
    let base = disc.mul(&zeta).div(&pi7).mul_pow2(-12);
    let total = if ext_degree.is_power_of_two() {
        base.mul_pow2(-(ext_degree.trailing_zeros() as i64))
    } else {
        base.div(&Real::from_int(ext_degree, w))
    };
    Ok(VolumeResult::from_parts(&total, vec![("disc_power", disc), ("zeta", zeta), ("pi_power", pi7)]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_factor(2, 2, 2).unwrap(), rat(1));
        assert_eq!(lambda_factor(2, 3, 3).unwrap(), rat(3));
        assert_eq!(lambda_factor(2, 4, 2).unwrap(), rat(7));
        assert_eq!(lambda_factor(2, 4, 3), Err(Error::DegreeMismatch { nd: 4, d_v: 3 }));
        assert!(lambda_factor(1, 4, 2).is_err());
    }

    #[test]
    fn lambda_forms_agree_on_grid() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            for nd in 2..=12u64 {
                for d_v in (2..=nd).filter(|d| nd % d == 0) {
                    assert_eq!(lambda_closed_form(q, nd, d_v), lambda_quotient_form(q, nd, d_v), "{q} {nd} {d_v}");
                }
            }
        }
    }

    #[test]
    fn exponent_product_values() {
        let v2 = exponent_product(2, 128).unwrap();
        assert!((v2.to_f64() - 1.0 / (4.0 * std::f64::consts::PI.powi(2))).abs() < 1e-15);
        assert!(exponent_product(29, 128).unwrap().lo() > &Dyadic::one());
        assert!(exponent_product(28, 128).unwrap().hi() <= &Dyadic::one());
    }

    fn pi_squared_over_six() -> ZetaEstimate {
        let pi = Real::pi(256);
        let z = pi.mul(&pi).div(&Real::from_int(6, 256));
        ZetaEstimate { s: 2, prime_bound: 0, value: z.mid(), error_bound: z.rad() }
    }

    fn quaternion_input() -> VolumeInput {
        VolumeInput {
            field_degree: 1,
            abs_disc: BigInt::one(),
            n: 1,
            d: 2,
            ram: vec![RamDatum { q: 2, d_v: 2 }, RamDatum { q: 3, d_v: 2 }],
            zeta: vec![pi_squared_over_six()],
            precision_bits: 128,
        }
    }

    #[test]
    fn rational_quaternion_volume_is_one_twelfth() {
        let v = volume_sl_n_d(&quaternion_input()).unwrap();
        let twelfth = BigRational::new(BigInt::one(), BigInt::from(12));
        assert!(v.enclosure(128).contains(&twelfth));
        assert!(v.error_bound.to_f64() < 1e-30);
        assert_eq!(v.breakdown.len(), 4);
    }

    #[test]
    fn degenerate_and_missing_inputs() {
        let mut input = quaternion_input();
        input.d = 1;
        input.n = 1;
        assert_eq!(volume_sl_n_d(&input), Err(Error::DegenerateGroup));
        let mut input = quaternion_input();
        input.n = 2;
        input.ram.clear();
        assert_eq!(volume_sl_n_d(&input), Err(Error::MissingZeta(3)));
    }

    #[test]
    fn covolume_ratio_is_exact() {
        let z = pi_squared_over_six();
        let d = BigInt::from(1000);
        let a = covolume_cf(&d, &z, 64, 128).unwrap();
        let b = covolume_cf(&d, &z, 128, 128).unwrap();
        assert_eq!(a.value.to_rational(), b.value.to_rational() * rat(2));
        assert_eq!(a.error_bound.to_rational(), b.error_bound.to_rational() * rat(2));
        let three = covolume_cf(&d, &z, 3, 128).unwrap();
        let one = covolume_cf(&d, &z, 1, 128).unwrap();
        assert!((one.value.to_f64() / three.value.to_f64() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn input_json_round_trip() {
        let input = quaternion_input();
        let s = serde_json::to_string(&input).unwrap();
        assert!(s.contains(r#""abs_disc":"1""#));
        assert_eq!(serde_json::from_str::<VolumeInput>(&s).unwrap(), input);
    }
}
