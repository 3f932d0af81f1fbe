use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest modulus accepted; products of two residues stay far inside `u64`.
pub const MAX_MODULUS: u64 = 1 << 31;

/// A prime modulus `n >= 5`, so that 2 and 3 are units mod `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(n: u64) -> Result<Self> {
        if n < 5 {
            return Err(Error::TooSmall(n));
        }
        if n > MAX_MODULUS {
            return Err(Error::TooLarge(n));
        }
        if !is_prime(n) {
            return Err(Error::NotPrime(n));
        }
        Ok(Modulus(n))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0 as usize
    }

    /// Always false; present for the `len`/`is_empty` convention.
    #[inline]
    pub fn is_empty(self) -> bool {
        false
    }

    /// Canonical residue of an arbitrary integer, in `[0, n)`.
    #[inline]
    pub fn reduce(self, x: i128) -> u64 {
        x.rem_euclid(self.0 as i128) as u64
    }

    /// `a * b mod n` for residues.
    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        (a * b) % self.0
    }

    /// Multiplicative inverse of a non-zero residue (Fermat).
    pub fn inverse(self, a: u64) -> Option<u64> {
        let a = a % self.0;
        if a == 0 {
            return None;
        }
        let mut result = 1u64;
        let mut base = a;
        let mut e = self.0 - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        Some(result)
    }

    /// Natural logarithm of `n`; every `log N` in the bounds uses this base.
    pub fn ln(self) -> f64 {
        (self.0 as f64).ln()
    }

    /// `n^{-1/2} ln n`, the unit in which all uniformity bounds are stated.
    pub fn log_scale(self) -> f64 {
        self.ln() / (self.0 as f64).sqrt()
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<'de> Deserialize<'de> for Modulus {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let n = u64::deserialize(d)?;
        Modulus::new(n).map_err(serde::de::Error::custom)
    }
}

/// Deterministic trial division by 2, 3 and `6k +- 1`. Adequate below 2^31.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut i = 5u64;
    while i * i <= n {
        if n.is_multiple_of(i) || n.is_multiple_of(i + 2) {
            return false;
        }
        i += 6;
    }
    true
}

/// Smallest prime `>= n` that is a valid modulus.
pub fn next_prime(n: u64) -> u64 {
    let mut k = n.max(5);
    while !is_prime(k) {
        k += 1;
    }
    k
}
