//! Outward-rounded interval arithmetic over dyadic rationals.
//!
//! A [`Dyadic`] is an exact number `mant * 2^exp`. A [`Real`] is a closed
//! interval with dyadic endpoints that is guaranteed to contain the quantity
//! it stands for. Every operation rounds its lower endpoint toward negative
//! infinity and its upper endpoint toward positive infinity at the working
//! precision carried by the operands, so enclosures stay rigorous no matter
//! how many operations are chained.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Smallest working precision accepted by the public entry points.
pub const MIN_PRECISION_BITS: u32 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

/// Exact binary fraction `mant * 2^exp`, kept with an odd mantissa.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -(-a).div_floor(b)
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { mant, exp };
        d.normalize();
        d
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz as usize;
            self.exp += tz as i64;
        }
    }

    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { mant: BigInt::one(), exp: 0 }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Dyadic::new(n.into(), 0)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    /// Exact multiplication by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic { mant: self.mant.clone(), exp: self.exp + k }
    }

    fn aligned(a: &Dyadic, b: &Dyadic) -> (BigInt, BigInt, i64) {
        let e = a.exp.min(b.exp);
        let am = &a.mant << (a.exp - e) as usize;
        let bm = &b.mant << (b.exp - e) as usize;
        (am, bm, e)
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (a, b, e) = Dyadic::aligned(self, other);
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    /// Number of significant bits in the mantissa.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Rounds to at most `prec` significant bits in direction `dir`.
    pub fn round(&self, prec: u32, dir: Round) -> Dyadic {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let k = (bits - prec as u64) as usize;
        let divisor = BigInt::one() << k;
        let q = match dir {
            Round::Down => floor_div(&self.mant, &divisor),
            Round::Up => ceil_div(&self.mant, &divisor),
        };
        Dyadic::new(q, self.exp + k as i64)
    }

    /// `num / den` rounded to `prec` bits in direction `dir`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32, dir: Round) -> Dyadic {
        assert!(!den.is_zero(), "division by zero");
        if num.is_zero() {
            return Dyadic::zero();
        }
        let (num, den) = if den.is_negative() { (-num, -den) } else { (num.clone(), den.clone()) };
        // Scale so that the integer quotient carries about prec + 2 bits.
        let shift = prec as i64 + 2 + den.bits() as i64 - num.bits() as i64;
        let shift = shift.max(0);
        let scaled = &num << shift as usize;
        let q = match dir {
            Round::Down => floor_div(&scaled, &den),
            Round::Up => ceil_div(&scaled, &den),
        };
        Dyadic::new(q, -shift).round(prec, dir)
    }

    pub fn div_round(&self, other: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        let e = self.exp - other.exp;
        Dyadic::from_ratio(&self.mant, &other.mant, prec, dir).mul_pow2(e)
    }

    /// Square root of a nonnegative dyadic, rounded in direction `dir`.
    pub fn sqrt_round(&self, prec: u32, dir: Round) -> Dyadic {
        assert!(self.signum() >= 0, "square root of a negative number");
        if self.is_zero() {
            return Dyadic::zero();
        }
        // mant * 2^exp with an even exponent and enough bits for prec + 2 result bits.
        let mut mant = self.mant.clone();
        let mut exp = self.exp;
        if exp.rem_euclid(2) != 0 {
            mant <<= 1;
            exp -= 1;
        }
        let want = 2 * (prec as i64 + 2);
        let extra = (want - mant.bits() as i64).max(0);
        let extra = extra + extra.rem_euclid(2);
        mant <<= extra as usize;
        exp -= extra;
        let mut s = mant.sqrt();
        if dir == Round::Up && &s * &s != mant {
            s += 1;
        }
        Dyadic::new(s, exp / 2).round(prec, dir)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as usize)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    /// Exact conversion from a rational whose denominator is a power of two.
    pub fn from_rational_exact(r: &BigRational) -> Option<Dyadic> {
        let den = r.denom();
        let tz = den.trailing_zeros().unwrap_or(0);
        if (den >> tz as usize) != BigInt::one() {
            return None;
        }
        Some(Dyadic::new(r.numer().clone(), -(tz as i64)))
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let drop = (bits - 60).max(0);
        let m = (&self.mant >> drop as usize).to_f64().unwrap_or(f64::NAN);
        let e = self.exp + drop;
        m * 2f64.powi(e.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
    }

    /// Exact decimal expansion (always finite for a dyadic).
    pub fn to_decimal(&self) -> String {
        if self.exp >= 0 {
            return (&self.mant << self.exp as usize).to_string();
        }
        let k = (-self.exp) as usize;
        let digits = (self.mant.abs() * BigInt::from(5u32).pow(k as u32)).to_string();
        let sign = if self.mant.is_negative() { "-" } else { "" };
        let (int_part, frac_part) = if digits.len() > k {
            let (a, b) = digits.split_at(digits.len() - k);
            (a.to_string(), b.to_string())
        } else {
            ("0".to_string(), format!("{}{}", "0".repeat(k - digits.len()), digits))
        };
        let frac = frac_part.trim_end_matches('0');
        if frac.is_empty() {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac}")
        }
    }

    /// Scientific notation with `sig` significant digits, rounded to nearest.
    pub fn to_sci(&self, sig: usize) -> String {
        format_sci(&self.to_rational(), sig)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = Dyadic::aligned(self, other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sci(20))
    }
}

impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_decimal())
    }
}

impl<'de> Deserialize<'de> for Dyadic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let r = parse_decimal(&s)
            .ok_or_else(|| serde::de::Error::custom(format!("not a decimal number: {s}")))?;
        Dyadic::from_rational_exact(&r)
            .ok_or_else(|| serde::de::Error::custom(format!("{s} is not exactly representable in binary")))
    }
}

/// Parses `[-]digits[.digits][e[+-]digits]` into an exact rational.
pub fn parse_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (body, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (neg, body) = match body.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, body.strip_prefix('+').unwrap_or(body)),
    };
    let (int_part, frac_part) = match body.find('.') {
        Some(i) => (&body[..i], &body[i + 1..]),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num: BigInt = digits.parse().ok()?;
    if neg {
        num = -num;
    }
    let scale = exp - frac_part.len() as i64;
    let ten = BigInt::from(10u32);
    let r = if scale >= 0 {
        BigRational::from_integer(num * ten.pow(scale as u32))
    } else {
        BigRational::new(num, ten.pow((-scale) as u32))
    };
    Some(r)
}

/// Scientific rendering of an exact rational, rounded to nearest.
pub fn format_sci(r: &BigRational, sig: usize) -> String {
    let sig = sig.max(1);
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let a = r.abs();
    // Estimate floor(log10 a) and then correct it exactly.
    let est = (a.numer().bits() as f64 - a.denom().bits() as f64) * std::f64::consts::LOG10_2;
    let mut t = est.floor() as i64;
    let ten = BigRational::from_integer(BigInt::from(10u32));
    let pow10 = |k: i64| -> BigRational { ten.pow(k as i32) };
    while pow10(t) > a {
        t -= 1;
    }
    while pow10(t + 1) <= a {
        t += 1;
    }
    let scaled = &a * pow10(sig as i64 - 1 - t);
    let mut m = (scaled + BigRational::new(BigInt::one(), BigInt::from(2u32))).floor().to_integer();
    if m.to_string().len() > sig {
        m /= 10u32;
        t += 1;
    }
    let digits = m.to_string();
    let (head, tail) = digits.split_at(1);
    let sign = if neg { "-" } else { "" };
    if tail.is_empty() {
        format!("{sign}{head}e{t}")
    } else {
        format!("{sign}{head}.{tail}e{t}")
    }
}

/// A closed interval `[lo, hi]` with dyadic endpoints and a working precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Real {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

impl Real {
    pub fn from_bounds(lo: Dyadic, hi: Dyadic, prec: u32) -> Real {
        assert!(lo <= hi, "inverted interval");
        Real { lo, hi, prec }
    }

    pub fn exact(d: Dyadic, prec: u32) -> Real {
        let lo = d.round(prec, Round::Down);
        let hi = d.round(prec, Round::Up);
        Real { lo, hi, prec }
    }

    pub fn from_int(n: impl Into<BigInt>, prec: u32) -> Real {
        Real::exact(Dyadic::from_int(n), prec)
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Real {
        Real {
            lo: Dyadic::from_ratio(r.numer(), r.denom(), prec, Round::Down),
            hi: Dyadic::from_ratio(r.numer(), r.denom(), prec, Round::Up),
            prec,
        }
    }

    /// The interval `[mid - rad, mid + rad]`.
    pub fn ball(mid: &Dyadic, rad: &Dyadic, prec: u32) -> Real {
        let rad = rad.abs();
        Real {
            lo: mid.sub(&rad).round(prec, Round::Down),
            hi: mid.add(&rad).round(prec, Round::Up),
            prec,
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(mut self, prec: u32) -> Real {
        self.prec = prec;
        self.lo = self.lo.round(prec, Round::Down);
        self.hi = self.hi.round(prec, Round::Up);
        self
    }

    pub fn mid(&self) -> Dyadic {
        self.lo.add(&self.hi).mul_pow2(-1)
    }

    /// Half-width; `mid() ± rad()` reproduces the interval exactly.
    pub fn rad(&self) -> Dyadic {
        self.hi.sub(&self.lo).mul_pow2(-1)
    }

    pub fn contains(&self, r: &BigRational) -> bool {
        &self.lo.to_rational() <= r && r <= &self.hi.to_rational()
    }

    pub fn contains_real(&self, other: &Real) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.signum() > 0
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64()
    }

    fn join_prec(&self, other: &Real) -> u32 {
        self.prec.max(other.prec)
    }

    pub fn neg(&self) -> Real {
        Real { lo: self.hi.neg(), hi: self.lo.neg(), prec: self.prec }
    }

    pub fn add(&self, other: &Real) -> Real {
        let p = self.join_prec(other);
        Real {
            lo: self.lo.add(&other.lo).round(p, Round::Down),
            hi: self.hi.add(&other.hi).round(p, Round::Up),
            prec: p,
        }
    }

    pub fn sub(&self, other: &Real) -> Real {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Real) -> Real {
        let p = self.join_prec(other);
        if self.lo.signum() >= 0 && other.lo.signum() >= 0 {
            return Real {
                lo: self.lo.mul(&other.lo).round(p, Round::Down),
                hi: self.hi.mul(&other.hi).round(p, Round::Up),
                prec: p,
            };
        }
        let products = [
            self.lo.mul(&other.lo),
            self.lo.mul(&other.hi),
            self.hi.mul(&other.lo),
            self.hi.mul(&other.hi),
        ];
        let lo = products.iter().min().cloned().unwrap_or_else(Dyadic::zero);
        let hi = products.iter().max().cloned().unwrap_or_else(Dyadic::zero);
        Real { lo: lo.round(p, Round::Down), hi: hi.round(p, Round::Up), prec: p }
    }

    /// Interval quotient. Panics if the divisor contains zero.
    pub fn div(&self, other: &Real) -> Real {
        self.checked_div(other).expect("interval division by an interval containing zero")
    }

    pub fn checked_div(&self, other: &Real) -> Option<Real> {
        if other.contains_zero() {
            return None;
        }
        let p = self.join_prec(other);
        let mut lows = Vec::with_capacity(4);
        let mut highs = Vec::with_capacity(4);
        for a in [&self.lo, &self.hi] {
            for b in [&other.lo, &other.hi] {
                lows.push(a.div_round(b, p, Round::Down));
                highs.push(a.div_round(b, p, Round::Up));
            }
        }
        Some(Real {
            lo: lows.into_iter().min()?,
            hi: highs.into_iter().max()?,
            prec: p,
        })
    }

    /// Exact scaling by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Real {
        Real { lo: self.lo.mul_pow2(k), hi: self.hi.mul_pow2(k), prec: self.prec }
    }

    pub fn powi(&self, mut n: u32) -> Real {
        let mut base = self.clone();
        let mut acc = Real::from_int(1, self.prec);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Square root of a nonnegative interval (negative parts are clipped to zero).
    pub fn sqrt(&self) -> Real {
        assert!(self.hi.signum() >= 0, "square root of a negative interval");
        let lo = if self.lo.signum() > 0 { self.lo.sqrt_round(self.prec, Round::Down) } else { Dyadic::zero() };
        Real { lo, hi: self.hi.sqrt_round(self.prec, Round::Up), prec: self.prec }
    }

    /// Exponential, evaluated endpoint by endpoint.
    pub fn exp(&self) -> Real {
        let lo = exp_enclosure(&self.lo, self.prec).lo;
        let hi = exp_enclosure(&self.hi, self.prec).hi;
        Real { lo, hi, prec: self.prec }
    }

    /// Enclosure of pi at the given precision (Machin's formula).
    pub fn pi(prec: u32) -> Real {
        let w = prec as usize + 32;
        let (a, ea) = atan_inv_fixed(5, w);
        let (b, eb) = atan_inv_fixed(239, w);
        let centre = BigInt::from(16u32) * a - BigInt::from(4u32) * b;
        let err = BigInt::from(16u64 * ea + 4 * eb);
        Real {
            lo: Dyadic::new(&centre - &err, -(w as i64)).round(prec, Round::Down),
            hi: Dyadic::new(&centre + &err, -(w as i64)).round(prec, Round::Up),
            prec,
        }
    }

    pub fn to_sci(&self, sig: usize) -> String {
        self.mid().to_sci(sig)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {}", self.mid().to_sci(20), self.rad().to_sci(3))
    }
}

/// `atan(1/x) * 2^w` by the alternating series in fixed point, together
/// with a bound on the absolute error in units of `2^-w`.
fn atan_inv_fixed(x: u64, w: usize) -> (BigInt, u64) {
    let one = BigInt::one() << w;
    let x_big = BigInt::from(x);
    let x2 = BigInt::from(x * x);
    let mut power = &one / &x_big; // floor(2^w / x^(2k+1))
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    loop {
        if power.is_zero() {
            break;
        }
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    // Each truncated power and quotient loses less than one unit per term,
    // and the dropped tail is below one unit.
    (sum, 2 * k + 2)
}

fn exp_enclosure(y: &Dyadic, prec: u32) -> Real {
    if y.is_zero() {
        return Real::from_int(1, prec);
    }
    // Reduce to |z| <= 1/2 with z = y / 2^k.
    let mag = y.bits() as i64 + y.exponent(); // |y| < 2^mag
    let k = (mag + 1).max(0);
    let w = prec + k as u32 + 16;
    let z = Real::exact(y.mul_pow2(-k), w);
    let mut sum = Real::from_int(1, w);
    let mut term = Real::from_int(1, w);
    let threshold = Dyadic::one().mul_pow2(-(w as i64) - 4);
    let mut j: u32 = 1;
    loop {
        term = term.mul(&z).div(&Real::from_int(j, w));
        sum = sum.add(&term);
        j += 1;
        let bound = term.lo.abs().max(term.hi.abs());
        if bound < threshold {
            // Remainder after the last term is below twice the next term,
            // which itself is below the current one.
            let r = bound.mul_pow2(1);
            sum = sum.add(&Real { lo: r.neg(), hi: r, prec: w });
            break;
        }
    }
    let mut acc = sum;
    for _ in 0..k {
        acc = acc.mul(&acc);
    }
    acc.with_prec(prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn ratio_encloses_one_third() {
        let r = Real::from_rational(&q(1, 3), 64);
        assert!(r.contains(&q(1, 3)));
        assert!(r.rad() < Dyadic::one().mul_pow2(-62));
    }

    #[test]
    fn pi_matches_known_digits() {
        let pi = Real::pi(200);
        let lo = parse_decimal("3.14159265358979323846264338327950288419716939937510").unwrap();
        let hi = parse_decimal("3.14159265358979323846264338327950288419716939937511").unwrap();
        assert!(pi.lo().to_rational() < hi);
        assert!(pi.hi().to_rational() > lo);
        assert!(pi.rad() < Dyadic::one().mul_pow2(-190));
    }

    #[test]
    fn exp_of_one_contains_e() {
        let e = Real::from_int(1, 128).exp();
        let lo = parse_decimal("2.718281828459045235360287471352662497757").unwrap();
        let hi = parse_decimal("2.718281828459045235360287471352662497758").unwrap();
        assert!(e.lo().to_rational() <= hi && e.hi().to_rational() >= lo);
        assert!(e.rad().to_f64() < 1e-30);
    }

    #[test]
    fn exp_of_negative_and_large_arguments() {
        let a = Real::from_int(-3, 96).exp();
        assert!((a.to_f64() - (-3f64).exp()).abs() < 1e-15);
        let b = Real::from_int(40, 96).exp();
        assert!((b.to_f64() / 40f64.exp() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn sqrt_two_brackets() {
        let s = Real::from_int(2, 100).sqrt();
        let sq = s.mul(&s);
        assert!(sq.contains(&q(2, 1)));
        assert!(s.rad().to_f64() < 1e-28);
    }

    #[test]
    fn decimal_round_trip_is_exact() {
        let d = Dyadic::new(BigInt::from(-12345), -17);
        let text = d.to_decimal();
        let back = Dyadic::from_rational_exact(&parse_decimal(&text).unwrap()).unwrap();
        assert_eq!(d, back);
        assert_eq!(Dyadic::from_int(40).to_decimal(), "40");
        assert_eq!(Dyadic::new(BigInt::from(3), -2).to_decimal(), "0.75");
    }

    #[test]
    fn sci_formatting() {
        assert_eq!(format_sci(&q(1, 3), 5), "3.3333e-1");
        assert_eq!(format_sci(&q(-1000, 1), 3), "-1.00e3");
        assert_eq!(format_sci(&q(999_999, 1), 3), "1.00e6");
    }

    #[test]
    fn division_handles_signs() {
        let a = Real::from_int(-7, 64);
        let b = Real::from_int(2, 64);
        let c = a.div(&b);
        assert!(c.contains(&q(-7, 2)));
        assert!(Real::from_int(1, 64).checked_div(&Real::ball(&Dyadic::zero(), &Dyadic::one(), 64)).is_none());
    }

    #[test]
    fn rounding_directions() {
        let d = Dyadic::from_int(0b1011_0111);
        assert_eq!(d.round(3, Round::Down), Dyadic::from_int(0b1010_0000));
        assert_eq!(d.round(3, Round::Up), Dyadic::from_int(0b1100_0000));
        let n = d.neg();
        assert_eq!(n.round(3, Round::Down), Dyadic::from_int(-0b1100_0000));
    }
}
