//! Arithmetic in the prime field F_p with p < 2^31.

use crate::error::{Error, Result};

/// Largest admissible characteristic.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// Deterministic trial-division primality test; adequate for p < 2^31.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The field Z/pZ. Elements are represented by `u32` values in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Zp {
    p: u32,
}

impl Zp {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(Zp { p: p as u32 })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce_u64(&self, v: u64) -> u32 {
        (v % self.p as u64) as u32
    }

    #[inline]
    pub fn reduce_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.p as u64 - b as u64) as u32
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

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1u32 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        // extended Euclid on i64
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        self.reduce_i64(t0)
    }

    /// Symmetric representative in (-p/2, p/2], used for printing.
    pub fn symmetric(&self, a: u32) -> i64 {
        if (a as u64) * 2 > self.p as u64 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    /// Returns `Some(e)` when `q = p^e`.
    pub fn log_p(&self, q: u64) -> Option<u32> {
        if q == 0 {
            return None;
        }
        let p = self.p as u64;
        let (mut v, mut e) = (q, 0);
        while v % p == 0 {
            v /= p;
            e += 1;
        }
        (v == 1).then_some(e)
    }

    pub fn check_q(&self, q: u64) -> Result<u32> {
        self.log_p(q).ok_or(Error::InvalidQ { q, p: self.p })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(Zp::new(2).is_ok());
        assert!(Zp::new(MAX_PRIME).is_ok());
        assert_eq!(Zp::new(4), Err(Error::InvalidPrime(4)));
        assert_eq!(Zp::new(1), Err(Error::InvalidPrime(1)));
        assert!(Zp::new(1 << 31).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        for p in [2u64, 3, 5, 7, 101, MAX_PRIME] {
            let f = Zp::new(p).unwrap();
            for a in 1..p.min(200) {
                let a = a as u32;
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }
    }

    #[test]
    fn logs() {
        let f = Zp::new(3).unwrap();
        assert_eq!(f.log_p(1), Some(0));
        assert_eq!(f.log_p(27), Some(3));
        assert_eq!(f.log_p(6), None);
        assert!(f.check_q(2).is_err());
    }

    #[test]
    fn large_mul_no_overflow() {
        let f = Zp::new(MAX_PRIME).unwrap();
        let a = (MAX_PRIME - 1) as u32;
        assert_eq!(f.mul(a, a), 1);
        assert_eq!(f.symmetric(a), -1);
    }
}
