//! The scalar context: additive character psi, Legendre symbol, Gauss sum,
//! and the canonical square root of q inside Q(zeta_{4q}).
//!
//! psi(a) = zeta_q^a (zeta_q := zeta_N^4 with N = 4q), so psi is a nontrivial
//! additive character of F_q. The Gauss sum is g = sum_x psi(x^2), with
//! g^2 = legendre(-1)·q. The canonical square root of q is
//!   s = g            if legendre(-1) = +1,
//!   s = -zeta_4 · g  if legendre(-1) = -1,
//! so s^2 = q holds exactly in both cases; every half-integer power q^{k/2}
//! in this crate is a power of this one fixed s.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::cyclo::{phi_of, CycloNum};
use crate::fq::Fq;
use crate::Error;

#[derive(Clone, Debug)]
pub struct Scalars {
    fq: Fq,
    n: u32,
    psi_table: Vec<CycloNum>,
    zeta4: CycloNum,
    gauss: CycloNum,
    sqrt: CycloNum,
    sqrt_inv: CycloNum,
    legendre_minus1: i32,
}

impl Scalars {
    pub fn new(q: u32) -> Result<Scalars, Error> {
        let fq = Fq::new(q)?;
        let n = 4 * q;
        let psi_table: Vec<CycloNum> =
            (0..q).map(|a| CycloNum::zeta_pow(n, 4 * a as i64)).collect();
        let zeta4 = CycloNum::zeta_pow(n, q as i64);
        let mut gauss = CycloNum::zero(n);
        for x in 0..q {
            gauss += &psi_table[fq.mul(x, x) as usize];
        }
        let legendre_minus1 = fq.legendre(q - 1);
        let sqrt = if legendre_minus1 == 1 {
            gauss.clone()
        } else {
            -&(&zeta4 * &gauss)
        };
        // defining property, checked unconditionally at construction
        assert_eq!(&sqrt * &sqrt, CycloNum::from_i64(n, q as i64), "sqrt_q^2 != q");
        let sqrt_inv = sqrt.scale(&BigRational::new(BigInt::from(1), BigInt::from(q)));
        Ok(Scalars { fq, n, psi_table, zeta4, gauss, sqrt, sqrt_inv, legendre_minus1 })
    }

    pub fn q(&self) -> u32 {
        self.fq.q()
    }

    pub fn fq(&self) -> Fq {
        self.fq
    }

    /// The cyclotomic conductor N = 4q of the coefficient field.
    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn phi(&self) -> usize {
        phi_of(self.n)
    }

    pub fn zero(&self) -> CycloNum {
        CycloNum::zero(self.n)
    }

    pub fn one(&self) -> CycloNum {
        CycloNum::one(self.n)
    }

    pub fn from_i64(&self, v: i64) -> CycloNum {
        CycloNum::from_i64(self.n, v)
    }

    /// psi(a) = zeta_q^a; the input is reduced mod q.
    pub fn psi(&self, a: u32) -> &CycloNum {
        &self.psi_table[self.fq.norm(a) as usize]
    }

    pub fn psi_i64(&self, a: i64) -> &CycloNum {
        &self.psi_table[self.fq.norm_i64(a) as usize]
    }

    pub fn legendre(&self, a: u32) -> i32 {
        self.fq.legendre(a)
    }

    pub fn legendre_minus1(&self) -> i32 {
        self.legendre_minus1
    }

    /// g = sum_{x in F_q} psi(x^2).
    pub fn gauss_sum(&self) -> &CycloNum {
        &self.gauss
    }

    /// The canonical s with s^2 = q.
    pub fn sqrt_q(&self) -> &CycloNum {
        &self.sqrt
    }

    /// s^{-1} = s/q.
    pub fn sqrt_q_inv(&self) -> &CycloNum {
        &self.sqrt_inv
    }

    /// s^k for any integer k (negative allowed), computed exactly.
    pub fn sqrt_q_pow(&self, k: i64) -> CycloNum {
        let base = if k >= 0 { &self.sqrt } else { &self.sqrt_inv };
        let mut acc = self.one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * base;
        }
        acc
    }

    /// q^k as an exact rational scalar.
    pub fn q_pow(&self, k: i64) -> CycloNum {
        crate::cyclo::rational_power(self.n, self.fq.q(), k)
    }

    pub fn zeta4(&self) -> &CycloNum {
        &self.zeta4
    }

    /// zeta_4^k for k mod 4; the values of every 4th root of unity.
    pub fn zeta4_pow(&self, k: u8) -> CycloNum {
        CycloNum::zeta_pow(self.n, (k % 4) as i64 * self.q() as i64)
    }

    /// If x is a 4th root of unity, return its exponent k with x = zeta_4^k.
    pub fn zeta4_exponent(&self, x: &CycloNum) -> Option<u8> {
        (0u8..4).find(|&k| *x == self.zeta4_pow(k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::from_int_coeffs;

    #[test]
    fn psi_is_a_nontrivial_additive_character() {
        for q in [3u32, 5, 7] {
            let s = Scalars::new(q).unwrap();
            assert!(s.psi(0).is_one());
            for a in 0..q {
                for b in 0..q {
                    assert_eq!(s.psi(a) * s.psi(b), *s.psi(a + b));
                }
            }
            let mut total = s.zero();
            for a in 0..q {
                total += s.psi(a);
            }
            assert!(total.is_zero(), "character orthogonality at q={q}");
        }
    }

    #[test]
    fn gauss_sum_identities() {
        for q in [3u32, 5, 7] {
            let s = Scalars::new(q).unwrap();
            let g = s.gauss_sum();
            // g^2 = legendre(-1) * q
            let expect = s.from_i64(s.legendre_minus1() as i64 * q as i64);
            assert_eq!(g * g, expect, "g^2 at q={q}");
            // g * conj(g) = q
            assert_eq!(g * &g.conj(), s.from_i64(q as i64), "norm at q={q}");
        }
    }

    #[test]
    fn gauss_sum_frozen_values() {
        // q=3: g = 1 + 2 zeta_3 = -1 + 2 zeta_12^2 in the power basis
        let s3 = Scalars::new(3).unwrap();
        assert_eq!(*s3.gauss_sum(), from_int_coeffs(12, &[-1, 0, 2, 0]));
        // q=5: g = 1 + 2 zeta_5 + 2 zeta_5^4, and g^2 = 5
        let s5 = Scalars::new(5).unwrap();
        let z5 = CycloNum::zeta_pow(20, 4);
        let expected =
            &(&CycloNum::one(20) + &z5.scale_i64(2)) + &CycloNum::zeta_pow(20, 16).scale_i64(2);
        assert_eq!(*s5.gauss_sum(), expected);
    }

    #[test]
    fn sqrt_q_frozen_and_defining() {
        let s3 = Scalars::new(3).unwrap();
        assert_eq!(*s3.sqrt_q(), from_int_coeffs(12, &[0, 2, 0, -1]));
        for q in [3u32, 5, 7] {
            let s = Scalars::new(q).unwrap();
            assert_eq!(s.sqrt_q() * s.sqrt_q(), s.from_i64(q as i64));
            assert!((s.sqrt_q() * s.sqrt_q_inv()).is_one());
            assert_eq!(s.sqrt_q_pow(3), &s.sqrt_q_pow(1) * &s.from_i64(q as i64));
            assert_eq!(&s.sqrt_q_pow(-2) * &s.from_i64(q as i64), s.one());
        }
        // q=5: legendre(-1)=1 so s = g directly
        let s5 = Scalars::new(5).unwrap();
        assert_eq!(s5.sqrt_q(), s5.gauss_sum());
    }

    #[test]
    fn scaled_gauss_sums_are_legendre_multiples() {
        for q in [3u32, 5, 7] {
            let s = Scalars::new(q).unwrap();
            for a in 1..q {
                let mut sum = s.zero();
                for x in 0..q {
                    sum += s.psi(s.fq().mul(a, s.fq().mul(x, x)));
                }
                let expect = s.gauss_sum().scale_i64(s.legendre(a) as i64);
                assert_eq!(sum, expect, "q={q} a={a}");
            }
        }
    }

    #[test]
    fn zeta4_exponent_recognizes_fourth_roots() {
        let s = Scalars::new(3).unwrap();
        for k in 0u8..4 {
            assert_eq!(s.zeta4_exponent(&s.zeta4_pow(k)), Some(k));
        }
        assert_eq!(s.zeta4_exponent(s.gauss_sum()), None);
        assert_eq!(&s.zeta4_pow(1) * &s.zeta4_pow(3), s.one());
        assert_eq!(s.zeta4_pow(2), s.from_i64(-1));
    }
}
