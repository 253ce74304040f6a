//! Polynomials over a prime field F_p and their factorization: squarefree
//! decomposition, distinct-degree splitting, and Cantor–Zassenhaus
//! equal-degree splitting.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// Polynomial over F_p, coefficients from the constant term upward, trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpPoly {
    coeffs: Vec<u64>,
}

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

impl FpPoly {
    pub fn new(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { coeffs }
    }

    pub fn from_int_poly(f: &IntPoly, p: u64) -> Self {
        let pb = BigInt::from(p);
        FpPoly::new(
            f.coeffs()
                .iter()
                .map(|c| c.mod_floor(&pb).to_u64().unwrap_or(0))
                .collect(),
        )
    }

    pub fn one() -> Self {
        FpPoly { coeffs: vec![1] }
    }

    pub fn x() -> Self {
        FpPoly { coeffs: vec![0, 1] }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn monic(&self, p: u64) -> FpPoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lc) => {
                let inv = invmod(lc, p);
                FpPoly::new(self.coeffs.iter().map(|&c| mulmod(c, inv, p)).collect())
            }
        }
    }

    pub fn add(&self, other: &FpPoly, p: u64) -> FpPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
        FpPoly::new((0..n).map(|i| (get(&self.coeffs, i) + get(&other.coeffs, i)) % p).collect())
    }

    pub fn sub(&self, other: &FpPoly, p: u64) -> FpPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
        FpPoly::new(
            (0..n)
                .map(|i| (get(&self.coeffs, i) + p - get(&other.coeffs, i)) % p)
                .collect(),
        )
    }

    pub fn mul(&self, other: &FpPoly, p: u64) -> FpPoly {
        if self.is_zero() || other.is_zero() {
            return FpPoly::new(vec![]);
        }
        let mut out = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        let p128 = p as u128;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % p128;
            }
        }
        FpPoly::new(out.into_iter().map(|c| c as u64).collect())
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, divisor: &FpPoly, p: u64) -> (FpPoly, FpPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let inv = invmod(*divisor.coeffs.last().unwrap_or(&1), p);
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (FpPoly::new(vec![]), FpPoly::new(r));
        }
        let mut q = vec![0u64; r.len() - dd];
        for top in (dd..r.len()).rev() {
            let c = r[top];
            if c == 0 {
                continue;
            }
            let factor = mulmod(c, inv, p);
            q[top - dd] = factor;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                let idx = top - dd + i;
                r[idx] = (r[idx] + p - mulmod(factor, d, p)) % p;
            }
        }
        r.truncate(dd);
        (FpPoly::new(q), FpPoly::new(r))
    }

    pub fn rem(&self, divisor: &FpPoly, p: u64) -> FpPoly {
        self.divrem(divisor, p).1
    }

    pub fn div_exact(&self, divisor: &FpPoly, p: u64) -> FpPoly {
        self.divrem(divisor, p).0
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &FpPoly, p: u64) -> FpPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, p);
            a = b;
            b = r;
        }
        a.monic(p)
    }

    pub fn derivative(&self, p: u64) -> FpPoly {
        FpPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mulmod(c, (i as u64) % p, p))
                .collect(),
        )
    }

    /// `self^e mod modulus`.
    pub fn powmod(&self, e: &BigUint, modulus: &FpPoly, p: u64) -> FpPoly {
        let mut acc = FpPoly::one().rem(modulus, p);
        let base = self.rem(modulus, p);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc, p).rem(modulus, p);
            if e.bit(i) {
                acc = acc.mul(&base, p).rem(modulus, p);
            }
        }
        acc
    }

    fn pow_u64_mod(&self, e: u64, modulus: &FpPoly, p: u64) -> FpPoly {
        self.powmod(&BigUint::from(e), modulus, p)
    }

    fn eval(&self, x: u64, p: u64) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| (mulmod(acc, x, p) + c) % p)
    }
}

/// Squarefree decomposition of a monic polynomial: pairs `(g_i, i)` with
/// `f = prod g_i^i` and each `g_i` squarefree.
pub fn squarefree_decomposition(f: &FpPoly, p: u64) -> Vec<(FpPoly, u32)> {
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let df = f.derivative(p);
    let mut r = f.gcd(&df, p);
    let mut w = f.div_exact(&r, p);
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&r, p);
        let fac = w.div_exact(&y, p);
        if !fac.is_one() {
            out.push((fac.monic(p), i));
        }
        w = y;
        r = r.div_exact(&w, p);
        i += 1;
    }
    if !r.is_one() {
        // What remains is a p-th power.
        let root = FpPoly::new(r.coeffs.iter().step_by(p as usize).copied().collect());
        for (g, m) in squarefree_decomposition(&root, p) {
            out.push((g, m * p as u32));
        }
    }
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// pairs `(d, g_d)` where `g_d` is the product of all irreducible factors of degree `d`.
pub fn distinct_degree_factorization(f: &FpPoly, p: u64) -> Vec<(usize, FpPoly)> {
    let mut out = Vec::new();
    let mut rest = f.monic(p);
    let x = FpPoly::x();
    let mut h = x.rem(&rest, p);
    let mut d = 1usize;
    while rest.deg() >= 2 * d {
        h = h.pow_u64_mod(p, &rest, p);
        let g = rest.gcd(&h.sub(&x, p), p);
        if !g.is_one() {
            rest = rest.div_exact(&g, p);
            h = h.rem(&rest, p);
            out.push((d, g));
        }
        d += 1;
    }
    if rest.deg() > 0 {
        out.push((rest.deg(), rest));
    }
    out
}

/// Splits a product of distinct irreducible factors of common degree `d`.
pub fn equal_degree_factorization(f: &FpPoly, d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let n = f.deg();
    if n == d {
        return vec![f.monic(p)];
    }
    loop {
        let a = FpPoly::new((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.deg() == 0 {
            continue;
        }
        let b = if p == 2 {
            // Trace map a + a^2 + ... + a^(2^(md-1)) with m = 1 suffices for F_2^d splitting.
            let mut t = a.rem(f, p);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t, p).rem(f, p);
                acc = acc.add(&t, p);
            }
            acc
        } else {
            let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            a.powmod(&e, f, p).sub(&FpPoly::one(), p)
        };
        let g = f.gcd(&b, p);
        if g.deg() > 0 && g.deg() < n {
            let mut left = equal_degree_factorization(&g, d, p, rng);
            left.extend(equal_degree_factorization(&f.div_exact(&g, p), d, p, rng));
            return left;
        }
    }
}

/// An irreducible factor modulo p with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FpFactor {
    pub degree: usize,
    pub multiplicity: u32,
    pub factor: FpPoly,
}

fn reduce_checked(f: &IntPoly, p: u64) -> Result<FpPoly> {
    if !primal::is_prime(p) {
        return Err(Error::CompositeModulus(p));
    }
    let g = FpPoly::from_int_poly(f, p);
    if g.is_zero() {
        return Err(Error::ZeroModP(p));
    }
    Ok(g.monic(p))
}

/// Degrees and multiplicities of the irreducible factors of `f mod p`,
/// one entry per irreducible factor, sorted by degree then multiplicity.
pub fn factor_degrees_mod_p(f: &IntPoly, p: u64) -> Result<Vec<(usize, u32)>> {
    let g = reduce_checked(f, p)?;
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(&g, p) {
        for (d, block) in distinct_degree_factorization(&part, p) {
            for _ in 0..block.deg() / d {
                out.push((d, mult));
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Complete factorization of `f mod p` into monic irreducibles, ordered by
/// degree and then lexicographically on coefficient lists (constant term first).
pub fn factor_mod_p_full(f: &IntPoly, p: u64) -> Result<Vec<FpFactor>> {
    let g = reduce_checked(f, p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(&g, p) {
        for (d, block) in distinct_degree_factorization(&part, p) {
            for factor in equal_degree_factorization(&block, d, p, &mut rng) {
                out.push(FpFactor { degree: d, multiplicity: mult, factor });
            }
        }
    }
    out.sort_by(|a, b| {
        (a.degree, &a.factor.coeffs, a.multiplicity).cmp(&(b.degree, &b.factor.coeffs, b.multiplicity))
    });
    Ok(out)
}

/// Whether `f` has a root modulo p (brute force, for small p).
pub fn has_root_mod_p(f: &IntPoly, p: u64) -> bool {
    let g = FpPoly::from_int_poly(f, p);
    (0..p).any(|x| g.eval(x, p) == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn roots_by_trial(f: &IntPoly, p: u64) -> usize {
        let g = FpPoly::from_int_poly(f, p);
        (0..p).filter(|&x| g.eval(x, p) == 0).count()
    }

    #[test]
    fn x2_plus_1_mod_5_splits() {
        assert_eq!(roots_by_trial(&int(&[1, 0, 1]), 5), 2);
        assert_eq!(factor_degrees_mod_p(&int(&[1, 0, 1]), 5).unwrap(), vec![(1, 1), (1, 1)]);
    }

    #[test]
    fn linear_mod_7() {
        assert_eq!(factor_degrees_mod_p(&int(&[-1, 1]), 7).unwrap(), vec![(1, 1)]);
    }

    #[test]
    fn cube_root_two_inert_mod_7() {
        assert_eq!(roots_by_trial(&int(&[-2, 0, 0, 1]), 7), 0);
        assert_eq!(factor_degrees_mod_p(&int(&[-2, 0, 0, 1]), 7).unwrap(), vec![(3, 1)]);
    }

    #[test]
    fn repeated_factors_are_counted() {
        // x^2 + 1 = (x + 1)^2 over F_2
        assert_eq!(factor_degrees_mod_p(&int(&[1, 0, 1]), 2).unwrap(), vec![(1, 2)]);
        // (x^2 + x + 1)^3 * x over F_3 has a p-th power part
        let f = int(&[0, 1, 3, 6, 7, 6, 3, 1]);
        let degs = factor_degrees_mod_p(&f, 3).unwrap();
        let total: usize = degs.iter().map(|&(d, m)| d * m as usize).sum();
        assert_eq!(total, 7);
        let full = factor_mod_p_full(&f, 3).unwrap();
        let total_full: usize = full.iter().map(|f| f.degree * f.multiplicity as usize).sum();
        assert_eq!(total_full, 7);
    }

    #[test]
    fn composite_modulus_rejected() {
        assert_eq!(factor_degrees_mod_p(&int(&[1, 0, 1]), 9), Err(Error::CompositeModulus(9)));
    }

    #[test]
    fn full_factorization_multiplies_back() {
        let f = int(&[-2, 0, 0, 0, 0, 0, 0, 0, 1]);
        for p in [3u64, 5, 7, 11, 13, 17, 41, 73] {
            let fp = FpPoly::from_int_poly(&f, p);
            let factors = factor_mod_p_full(&f, p).unwrap();
            let mut prod = FpPoly::one();
            for fac in &factors {
                for _ in 0..fac.multiplicity {
                    prod = prod.mul(&fac.factor, p);
                }
            }
            assert_eq!(prod, fp, "p = {p}");
            let degs: Vec<_> = factors.iter().map(|f| (f.degree, f.multiplicity)).collect();
            let mut expected = factor_degrees_mod_p(&f, p).unwrap();
            expected.sort();
            assert_eq!(degs, expected);
        }
    }

    #[test]
    fn equal_degree_over_f2() {
        // (x^7 - 1)/(x - 1) is the product of the two irreducible cubics over F_2.
        let f = int(&[1, 1, 1, 1, 1, 1, 1]);
        let factors = factor_mod_p_full(&f, 2).unwrap();
        assert_eq!(factors.iter().map(|f| f.degree).collect::<Vec<_>>(), vec![3, 3]);
    }
}
