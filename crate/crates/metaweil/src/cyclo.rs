//! Exact arithmetic in Q(zeta_N) for N = 4p, p an odd prime.
//!
//! Elements are coordinate vectors in the power basis 1, z, ..., z^{phi(N)-1}
//! of Q[x]/(Phi_N(x)), with exact rational coefficients. phi(4p) = 2(p-1), and
//! Phi_{4p}(x) = sum_{j=0}^{p-1} (-1)^j x^{2j}, which gives the reduction rule
//! x^{2(p-1)} = sum_{j=0}^{p-2} (-1)^{j+1} x^{2j}.
//!
//! The representation is always reduced, so equality is coefficient equality.
//! Binary operations panic if the two operands have different conductors N;
//! that is a programming error, not a data condition. Inversion of zero is a
//! data condition and returns an error.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::Error;

/// phi(4p) = 2(p-1) for the supported conductors N = 4p.
pub fn phi_of(n: u32) -> usize {
    debug_assert!(valid_conductor(n));
    (n as usize / 2) - 2
}

/// A conductor is supported iff N = 4p with p an odd prime.
pub fn valid_conductor(n: u32) -> bool {
    n % 4 == 0 && crate::fq::Fq::new(n / 4).is_ok()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycloNum {
    n: u32,
    coeffs: Vec<BigRational>,
}

fn rat_i64(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Reduce a raw polynomial (any degree) modulo Phi_N into the power basis.
fn reduce_into(n: u32, coeffs: &mut Vec<BigRational>) {
    let p = (n / 4) as usize;
    let phi = 2 * (p - 1);
    let mut d = coeffs.len();
    while d > phi {
        d -= 1;
        if coeffs[d].is_zero() {
            continue;
        }
        let c = core::mem::replace(&mut coeffs[d], BigRational::zero());
        for j in 0..p - 1 {
            let idx = d - phi + 2 * j;
            // x^phi = sum_j (-1)^{j+1} x^{2j}: minus at even j, plus at odd j
            if j % 2 == 1 {
                coeffs[idx] += &c;
            } else {
                coeffs[idx] -= &c;
            }
        }
    }
    coeffs.resize(phi, BigRational::zero());
}

impl CycloNum {
    pub fn zero(n: u32) -> CycloNum {
        assert!(valid_conductor(n), "unsupported conductor {n}");
        CycloNum { n, coeffs: vec![BigRational::zero(); phi_of(n)] }
    }

    pub fn one(n: u32) -> CycloNum {
        CycloNum::from_i64(n, 1)
    }

    pub fn from_i64(n: u32, v: i64) -> CycloNum {
        CycloNum::from_rational(n, rat_i64(v))
    }

    pub fn from_rational(n: u32, v: BigRational) -> CycloNum {
        let mut x = CycloNum::zero(n);
        x.coeffs[0] = v;
        x
    }

    /// Build from explicit power-basis coordinates (validated; used by parsers).
    pub fn from_coeffs(n: u32, coeffs: Vec<BigRational>) -> Result<CycloNum, Error> {
        if !valid_conductor(n) {
            return Err(Error::MismatchedConductor(n, 0));
        }
        if coeffs.len() != phi_of(n) {
            return Err(Error::DimensionMismatch);
        }
        Ok(CycloNum { n, coeffs })
    }

    /// zeta_N^k, any integer k.
    pub fn zeta_pow(n: u32, k: i64) -> CycloNum {
        assert!(valid_conductor(n), "unsupported conductor {n}");
        let e = k.rem_euclid(n as i64) as usize;
        let phi = phi_of(n);
        if e < phi {
            let mut x = CycloNum::zero(n);
            x.coeffs[e] = BigRational::one();
            return x;
        }
        let mut raw = vec![BigRational::zero(); e + 1];
        raw[e] = BigRational::one();
        reduce_into(n, &mut raw);
        CycloNum { n, coeffs: raw }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Exact coefficient export as (numerator, denominator) pairs with the
    /// denominator positive; None if any component does not fit in i64.
    pub fn coeffs_i64(&self) -> Option<Vec<(i64, i64)>> {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .map(|c| Some((c.numer().to_i64()?, c.denom().to_i64()?)))
            .collect()
    }

    /// Inverse of coeffs_i64: rebuild from (numerator, denominator) pairs.
    pub fn from_i64_pairs(n: u32, pairs: &[(i64, i64)]) -> Result<CycloNum, Error> {
        let mut coeffs = Vec::with_capacity(pairs.len());
        for &(num, den) in pairs {
            if den == 0 {
                return Err(Error::DivisionByZero);
            }
            coeffs.push(BigRational::new(num.into(), den.into()));
        }
        CycloNum::from_coeffs(n, coeffs)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn scale(&self, c: &BigRational) -> CycloNum {
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        CycloNum { n: self.n, coeffs }
    }

    pub fn scale_i64(&self, c: i64) -> CycloNum {
        self.scale(&rat_i64(c))
    }

    /// The ring automorphism zeta_N -> zeta_N^{-1} (complex conjugation).
    pub fn conj(&self) -> CycloNum {
        let mut out = CycloNum::zero(self.n);
        out.coeffs[0] = self.coeffs[0].clone();
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            if c.is_zero() {
                continue;
            }
            out += &CycloNum::zeta_pow(self.n, self.n as i64 - k as i64).scale(c);
        }
        out
    }

    /// Multiplicative inverse; errors on zero. Uses the extended Euclidean
    /// algorithm in Q[x] against Phi_N, which is irreducible, so every
    /// nonzero element is invertible.
    pub fn inv(&self) -> Result<CycloNum, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.is_rational() {
            return Ok(CycloNum::from_rational(self.n, r.recip()));
        }
        let phi = phi_of(self.n);
        let p = (self.n / 4) as usize;
        // Phi_{4p} as a dense polynomial
        let mut modulus = vec![BigRational::zero(); phi + 1];
        for j in 0..p {
            modulus[2 * j] = if j % 2 == 0 { BigRational::one() } else { -BigRational::one() };
        }
        let mut r0 = trim(modulus);
        let mut r1 = trim(self.coeffs.clone());
        let mut s0: Vec<BigRational> = vec![];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while r1.len() > 1 {
            let (q, rem) = poly_divmod(&r0, &r1);
            r0 = r1;
            r1 = rem;
            let qs1 = poly_mul(&q, &s1);
            let next = poly_sub(&s0, &qs1);
            s0 = s1;
            s1 = next;
            if r1.is_empty() {
                // gcd(r0) nonconstant would contradict irreducibility
                return Err(Error::DivisionByZero);
            }
        }
        let c = r1[0].clone();
        let mut coeffs: Vec<BigRational> = s1.iter().map(|a| a / &c).collect();
        reduce_into(self.n, &mut coeffs);
        Ok(CycloNum { n: self.n, coeffs })
    }

    pub fn pow_i64(&self, e: i64) -> Result<CycloNum, Error> {
        if e < 0 {
            return self.inv()?.pow_i64(-e);
        }
        let mut acc = CycloNum::one(self.n);
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    fn check_same(&self, rhs: &CycloNum) {
        assert_eq!(
            self.n, rhs.n,
            "mismatched cyclotomic conductors {} and {}",
            self.n, rhs.n
        );
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = a.to_vec();
    out.resize(core::cmp::max(a.len(), b.len()), BigRational::zero());
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut rem = a.to_vec();
    if a.len() < b.len() {
        return (vec![], trim(rem));
    }
    let mut quot = vec![BigRational::zero(); a.len() - b.len() + 1];
    let lead = b.last().unwrap();
    for k in (0..quot.len()).rev() {
        let top = rem[k + b.len() - 1].clone();
        if top.is_zero() {
            continue;
        }
        let f = &top / lead;
        for (j, y) in b.iter().enumerate() {
            let delta = &f * y;
            rem[k + j] -= delta;
        }
        quot[k] = f;
    }
    (trim(quot), trim(rem))
}

impl<'b> Add<&'b CycloNum> for &CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &'b CycloNum) -> CycloNum {
        self.check_same(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        CycloNum { n: self.n, coeffs }
    }
}

impl<'b> Sub<&'b CycloNum> for &CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &'b CycloNum) -> CycloNum {
        self.check_same(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        CycloNum { n: self.n, coeffs }
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        let coeffs = self.coeffs.iter().map(|a| -a).collect();
        CycloNum { n: self.n, coeffs }
    }
}

impl<'b> Mul<&'b CycloNum> for &CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &'b CycloNum) -> CycloNum {
        self.check_same(rhs);
        let phi = self.coeffs.len();
        let mut prod = vec![BigRational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] += a * b;
            }
        }
        reduce_into(self.n, &mut prod);
        CycloNum { n: self.n, coeffs: prod }
    }
}

impl AddAssign<&CycloNum> for CycloNum {
    fn add_assign(&mut self, rhs: &CycloNum) {
        self.check_same(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&CycloNum> for CycloNum {
    fn sub_assign(&mut self, rhs: &CycloNum) {
        self.check_same(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

/// Convenience for tests and frozen constants: exact integer coordinates.
pub fn from_int_coeffs(n: u32, ints: &[i64]) -> CycloNum {
    let coeffs = ints.iter().map(|&v| rat_i64(v)).collect();
    CycloNum::from_coeffs(n, coeffs).expect("coefficient length matches phi(N)")
}

/// Exact rational q^k for integer k (possibly negative), as a CycloNum.
pub fn rational_power(n: u32, q: u32, k: i64) -> CycloNum {
    let base = BigRational::from_integer(BigInt::from(q));
    let mut acc = BigRational::one();
    for _ in 0..k.unsigned_abs() {
        acc *= &base;
    }
    if k < 0 {
        acc = acc.recip();
    }
    CycloNum::from_rational(n, acc)
}

/// Signum helper for Legendre-symbol twists: (+1|-1) -> (1|-1) as CycloNum.
pub fn from_sign(n: u32, sign: i32) -> CycloNum {
    assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
    CycloNum::from_i64(n, sign as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_has_exact_order_n() {
        for n in [12u32, 20, 28] {
            let z = CycloNum::zeta_pow(n, 1);
            assert!(z.pow_i64(n as i64).unwrap().is_one());
            for k in 1..n {
                if n % k == 0 && k < n {
                    assert!(
                        !z.pow_i64(k as i64).unwrap().is_one(),
                        "zeta_{n}^{k} must not be 1"
                    );
                }
            }
        }
    }

    #[test]
    fn conj_is_inverse_on_roots_of_unity() {
        for n in [12u32, 20] {
            let z = CycloNum::zeta_pow(n, 1);
            assert!((&z * &CycloNum::zeta_pow(n, n as i64 - 1)).is_one());
            assert!((&z.conj() * &z).is_one());
        }
    }

    #[test]
    fn conj_is_ring_automorphism() {
        let n = 12;
        let a = from_int_coeffs(n, &[1, -2, 0, 3]);
        let b = from_int_coeffs(n, &[0, 1, 5, -1]);
        assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
    }

    #[test]
    fn one_plus_two_zeta3_squares_to_minus_three() {
        // zeta_3 = zeta_12^4; (1 + 2 zeta_3)^2 = -3
        let n = 12;
        let zeta3 = CycloNum::zeta_pow(n, 4);
        let x = &CycloNum::one(n) + &zeta3.scale_i64(2);
        assert_eq!(&x * &x, CycloNum::from_i64(n, -3));
    }

    #[test]
    fn inversion_roundtrips() {
        let n = 12;
        for ints in [[1i64, 0, 0, 0], [1, 2, 0, 0], [0, 1, 0, 0], [3, -1, 2, 5]] {
            let x = from_int_coeffs(n, &ints);
            let xi = x.inv().unwrap();
            assert!((&x * &xi).is_one(), "inv failed for {ints:?}");
        }
        assert_eq!(CycloNum::zero(n).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn zeta_pow_is_additive_in_exponent() {
        let n = 20;
        for a in -5i64..25 {
            for b in [-7i64, 0, 3, 19] {
                let lhs = &CycloNum::zeta_pow(n, a) * &CycloNum::zeta_pow(n, b);
                assert_eq!(lhs, CycloNum::zeta_pow(n, a + b));
            }
        }
    }

    #[test]
    fn rational_power_matches_pow() {
        let n = 12;
        assert_eq!(rational_power(n, 3, 2), CycloNum::from_i64(n, 9));
        let third = rational_power(n, 3, -1);
        assert!((&third * &CycloNum::from_i64(n, 3)).is_one());
    }

    #[test]
    #[should_panic(expected = "mismatched cyclotomic conductors")]
    fn mixing_conductors_panics() {
        let _ = &CycloNum::one(12) + &CycloNum::one(20);
    }
}
