//! Scalar and vector arithmetic in the prime field `F_p`.
//!
//! Values are plain `u64`s kept in `0..p`. The field context is passed
//! explicitly; `p` is small (an odd prime, typically 3 or 5) so naive
//! modular arithmetic is exact and fast.

use crate::{Error, Result};

/// The prime field `F_p` for an odd prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Builds the field, rejecting `p` that is not an odd prime.
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a % self.p) % self.p
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a as u128 * b as u128 % self.p as u128) as u64
    }

    /// Reduces an arbitrary integer (possibly negative) into `0..p`.
    #[inline]
    pub fn reduce_i64(&self, a: i64) -> u64 {
        let p = self.p as i64;
        (a.rem_euclid(p)) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        base %= self.p;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero element, by Fermat.
    #[inline]
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p), "inverse of zero");
        self.pow(a, self.p - 2)
    }

    // ---- vector helpers --------------------------------------------------

    pub fn zeros(&self, len: usize) -> Vec<u64> {
        vec![0; len]
    }

    pub fn vec_add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        debug_assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(&x, &y)| self.add(x, y)).collect()
    }

    pub fn vec_sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        debug_assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(&x, &y)| self.sub(x, y)).collect()
    }

    pub fn vec_neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().map(|&x| self.neg(x)).collect()
    }

    pub fn vec_scale(&self, c: u64, a: &[u64]) -> Vec<u64> {
        a.iter().map(|&x| self.mul(c, x)).collect()
    }

    /// `a += c * b` in place.
    pub fn vec_add_scaled(&self, a: &mut [u64], c: u64, b: &[u64]) {
        debug_assert_eq!(a.len(), b.len());
        for (x, &y) in a.iter_mut().zip(b) {
            *x = self.add(*x, self.mul(c, y));
        }
    }

    /// Checks every entry lies in `0..p`.
    pub fn validate_vec(&self, a: &[u64]) -> Result<()> {
        if a.iter().any(|&x| x >= self.p) {
            return Err(Error::Input(format!(
                "vector entry out of range for F_{}",
                self.p
            )));
        }
        Ok(())
    }

    /// Normalizes a nonzero vector so its first nonzero entry is 1.
    /// Returns `None` for the zero vector.
    pub fn normalize_line(&self, a: &[u64]) -> Option<Vec<u64>> {
        let lead = a.iter().copied().find(|&x| x != 0)?;
        Some(self.vec_scale(self.inv(lead), a))
    }
}

pub fn is_zero_vec(a: &[u64]) -> bool {
    a.iter().all(|&x| x == 0)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}
