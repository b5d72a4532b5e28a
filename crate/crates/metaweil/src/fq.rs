//! The prime field F_q for an odd prime q.
//!
//! Elements are plain `u32` residues in `0..q`; the context struct carries q.
//! All inputs are reduced, so callers may pass unnormalized values.

use crate::Error;

/// Arithmetic context for F_q. Copy-cheap; every method reduces its inputs.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Fq {
    q: u32,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u32;
    while (k as u64) * (k as u64) <= n as u64 {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

impl Fq {
    /// q must be an odd prime (so 2 is invertible).
    pub fn new(q: u32) -> Result<Fq, Error> {
        if q < 3 || q % 2 == 0 || !is_prime(q) {
            return Err(Error::NotOddPrime(q));
        }
        Ok(Fq { q })
    }

    pub fn q(self) -> u32 {
        self.q
    }

    /// Reduce a signed integer into `0..q`.
    pub fn norm_i64(self, x: i64) -> u32 {
        x.rem_euclid(self.q as i64) as u32
    }

    pub fn norm(self, x: u32) -> u32 {
        x % self.q
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        (self.norm(a) + self.norm(b)) % self.q
    }

    pub fn sub(self, a: u32, b: u32) -> u32 {
        (self.norm(a) + self.q - self.norm(b)) % self.q
    }

    pub fn neg(self, a: u32) -> u32 {
        (self.q - self.norm(a)) % self.q
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((self.norm(a) as u64 * self.norm(b) as u64) % self.q as u64) as u32
    }

    pub fn pow(self, a: u32, mut e: u64) -> u32 {
        let mut base = self.norm(a);
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self, a: u32) -> Result<u32, Error> {
        let a = self.norm(a);
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, (self.q - 2) as u64))
    }

    /// The multiplicative inverse of 2, i.e. (q+1)/2.
    pub fn half(self) -> u32 {
        (self.q + 1) / 2
    }

    /// Legendre symbol: 0 at 0, +1 on nonzero squares, -1 otherwise.
    pub fn legendre(self, a: u32) -> i32 {
        let a = self.norm(a);
        if a == 0 {
            return 0;
        }
        let e = self.pow(a, ((self.q - 1) / 2) as u64);
        if e == 1 {
            1
        } else {
            -1
        }
    }

    pub fn legendre_i64(self, a: i64) -> i32 {
        self.legendre(self.norm_i64(a))
    }
}
