//! Dense univariate polynomials over the integers and rationals: resultants,
//! discriminants and Sturm-sequence real root counts.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer polynomial, coefficients stored from the constant term upward.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntPoly {
    #[serde(with = "crate::serde_bigint::vec")]
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        while p.coeffs.last().is_some_and(|c| c.is_zero()) {
            p.coeffs.pop();
        }
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn to_rational(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().cloned().map(BigRational::from_integer).collect())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{a}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{a}*x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Rational polynomial used for exact Euclidean computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        let mut p = RatPoly { coeffs };
        while p.coeffs.last().is_some_and(|c| c.is_zero()) {
            p.coeffs.pop();
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, k: &BigRational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Euclidean remainder. Panics on a zero divisor.
    pub fn rem(&self, divisor: &RatPoly) -> RatPoly {
        let dd = divisor.degree().expect("remainder by zero polynomial");
        let lc = divisor.leading().cloned().unwrap_or_else(BigRational::one);
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let factor = &r[top] / &lc;
            if !factor.is_zero() {
                let shift = top - dd;
                for (i, c) in divisor.coeffs.iter().enumerate() {
                    r[shift + i] -= &factor * c;
                }
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        RatPoly::new(r)
    }

    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        match a.leading().cloned() {
            Some(lc) => a.scale(&(BigRational::one() / lc)),
            None => a,
        }
    }

    fn sign_at_pos_inf(&self) -> i32 {
        self.leading().map_or(0, |c| if c.is_positive() { 1 } else { -1 })
    }

    fn sign_at_neg_inf(&self) -> i32 {
        let s = self.sign_at_pos_inf();
        match self.degree() {
            Some(d) if d % 2 == 1 => -s,
            _ => s,
        }
    }
}

/// Resultant computed along the Euclidean remainder sequence over Q.
pub fn resultant(a: &IntPoly, b: &IntPoly) -> BigInt {
    let r = resultant_rat(&a.to_rational(), &b.to_rational());
    debug_assert!(r.is_integer());
    r.to_integer()
}

fn resultant_rat(a: &RatPoly, b: &RatPoly) -> BigRational {
    let (Some(m), Some(n)) = (a.degree(), b.degree()) else {
        return BigRational::zero();
    };
    if n == 0 {
        return b.coeffs[0].pow(m as i32);
    }
    if m == 0 {
        return a.coeffs[0].pow(n as i32);
    }
    let r = a.rem(b);
    let Some(k) = r.degree() else {
        return BigRational::zero();
    };
    // res(a, b) = (-1)^(mn) lc(b)^(m - deg r) res(b, r)
    let sign = if (m * n) % 2 == 1 { -BigRational::one() } else { BigRational::one() };
    let lc = b.leading().cloned().unwrap_or_else(BigRational::one);
    sign * lc.pow((m - k) as i32) * resultant_rat(b, &r)
}

/// Discriminant of a polynomial of degree at least one.
pub fn discriminant(f: &IntPoly) -> BigInt {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return BigInt::zero();
    }
    if n == 1 {
        return BigInt::one();
    }
    let res = resultant(f, &f.derivative());
    let lc = f.leading().cloned().unwrap_or_else(BigInt::one);
    let v = res / lc;
    if (n * (n - 1) / 2) % 2 == 1 {
        -v
    } else {
        v
    }
}

pub fn is_squarefree(f: &IntPoly) -> bool {
    let q = f.to_rational();
    q.gcd(&q.derivative()).degree().unwrap_or(0) == 0
}

/// Number of distinct real roots of a squarefree polynomial (Sturm's theorem).
pub fn count_real_roots(f: &IntPoly) -> Result<usize> {
    if !is_squarefree(f) {
        return Err(Error::NonSquarefree);
    }
    let f = f.to_rational();
    let mut seq = vec![f.clone(), f.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        // Divide by |lc| to keep coefficients small; positive scaling keeps signs.
        let lc = r.leading().cloned().unwrap_or_else(BigRational::one);
        seq.push(r.scale(&(-BigRational::one() / lc.abs())));
    }
    let changes = |signs: Vec<i32>| -> usize {
        let nz: Vec<i32> = signs.into_iter().filter(|&s| s != 0).collect();
        nz.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let at_neg = changes(seq.iter().map(RatPoly::sign_at_neg_inf).collect());
    let at_pos = changes(seq.iter().map(RatPoly::sign_at_pos_inf).collect());
    Ok(at_neg - at_pos)
}

/// `(r1, r2)`: real embeddings and pairs of complex embeddings.
pub fn signature(f: &IntPoly) -> Result<(usize, usize)> {
    let n = f.degree().ok_or_else(|| Error::InvalidInput("zero polynomial".into()))?;
    let r1 = count_real_roots(f)?;
    Ok((r1, (n - r1) / 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Sylvester-matrix determinant by fraction-free elimination, kept
    /// independent of the Euclidean route used by [`resultant`].
    fn sylvester_resultant(a: &IntPoly, b: &IntPoly) -> BigInt {
        let m = a.degree().unwrap();
        let n = b.degree().unwrap();
        let size = m + n;
        let mut mat = vec![vec![BigInt::zero(); size]; size];
        for row in 0..n {
            for (j, c) in a.coeffs().iter().rev().enumerate() {
                mat[row][row + j] = c.clone();
            }
        }
        for row in 0..m {
            for (j, c) in b.coeffs().iter().rev().enumerate() {
                mat[n + row][row + j] = c.clone();
            }
        }
        bareiss_det(mat)
    }

    fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
        let n = m.len();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                    m[i][j] = v;
                }
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
    }

    fn disc_via_sylvester(f: &IntPoly) -> BigInt {
        let n = f.degree().unwrap();
        let r = sylvester_resultant(f, &f.derivative()) / f.leading().unwrap();
        if (n * (n - 1) / 2) % 2 == 1 {
            -r
        } else {
            r
        }
    }

    #[test]
    fn quadratic_discriminant() {
        assert_eq!(discriminant(&IntPoly::from_i64(&[1, 0, 1])), BigInt::from(-4));
    }

    #[test]
    fn cube_root_two_discriminant() {
        let f = IntPoly::from_i64(&[-2, 0, 0, 1]);
        assert_eq!(disc_via_sylvester(&f), BigInt::from(-108));
        assert_eq!(discriminant(&f), BigInt::from(-108));
    }

    #[test]
    fn octic_discriminant_matches_sylvester() {
        let f = IntPoly::from_i64(&[-799, 0, 0, 0, 0, 0, 0, 0, 1]);
        let oracle = disc_via_sylvester(&f);
        let magnitude = BigInt::from(8).pow(8) * BigInt::from(799).pow(7);
        assert_eq!(oracle.abs(), magnitude);
        assert_eq!(discriminant(&f), oracle);
    }

    #[test]
    fn resultant_agrees_with_sylvester_on_mixed_degrees() {
        let a = IntPoly::from_i64(&[3, -1, 4, 1, -5]);
        let b = IntPoly::from_i64(&[-2, 7, 0, 2]);
        assert_eq!(resultant(&a, &b), sylvester_resultant(&a, &b));
    }

    #[test]
    fn signatures() {
        assert_eq!(signature(&IntPoly::from_i64(&[1, 0, 1])).unwrap(), (0, 1));
        assert_eq!(signature(&IntPoly::from_i64(&[-2, 0, 0, 1])).unwrap(), (1, 1));
        assert_eq!(signature(&IntPoly::from_i64(&[-799, 0, 0, 0, 0, 0, 0, 0, 1])).unwrap(), (2, 3));
        assert_eq!(signature(&IntPoly::from_i64(&[-12784, 0, 0, 0, 0, 0, 0, 0, 1])).unwrap(), (2, 3));
    }

    #[test]
    fn non_squarefree_is_rejected() {
        let f = IntPoly::from_i64(&[1, 2, 1]);
        assert_eq!(signature(&f), Err(Error::NonSquarefree));
    }

    #[test]
    fn display_polynomial() {
        assert_eq!(IntPoly::from_i64(&[-2, 0, 0, 1]).to_string(), "x^3 - 2");
        assert_eq!(IntPoly::from_i64(&[1, -3, 2]).to_string(), "2*x^2 - 3*x + 1");
    }
}
