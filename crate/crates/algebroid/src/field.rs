//! Prime fields F_p with exact arithmetic.
//!
//! Elements are canonical representatives `0..p-1` stored as `u32`. All
//! intermediate products fit in `u64`, so no arithmetic here can overflow
//! or round: every identity checked by this crate is checked exactly.

use crate::error::{Error, Result};

/// The field F_p for a prime `2 <= p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Constructs F_p, verifying primality by trial division.
    pub fn new(p: u64) -> Result<Self> {
        if !(2..1 << 31).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse by Fermat's little theorem.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "division by zero in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1u32;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Reduces an arbitrary signed integer to its canonical representative.
    pub fn reduce(&self, v: i64) -> u32 {
        let p = self.p as i64;
        (((v % p) + p) % p) as u32
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites_and_range() {
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(91).is_err()); // 7 * 13
        assert!(PrimeField::new(1 << 31).is_err());
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(2147483647).is_ok()); // 2^31 - 1 is prime
    }

    #[test]
    fn field_axioms_small_primes() {
        for p in [2u64, 3, 5, 7] {
            let f = PrimeField::new(p).unwrap();
            for a in 0..f.p() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in 0..f.p() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.sub(f.add(a, b), b), a);
                }
            }
        }
    }

    #[test]
    fn reduce_handles_negatives() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.reduce(-1), 4);
        assert_eq!(f.reduce(-10), 0);
        assert_eq!(f.reduce(13), 3);
    }
}
