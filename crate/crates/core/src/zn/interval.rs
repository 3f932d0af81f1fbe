use serde::{Deserialize, Serialize};

use super::Modulus;
use crate::error::{Error, Result};

/// `{start, start+1, ..., start+length-1}` reduced mod `n`.
///
/// `length == n` (the whole group) is allowed; the modulated-interval check
/// uses it to recover the bare Gauss sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntervalZn {
    start: u64,
    length: u64,
    n: u64,
}

impl IntervalZn {
    pub fn new(m: Modulus, start: u64, length: u64) -> Result<Self> {
        let n = m.get();
        if start >= n || length == 0 || length > n {
            return Err(Error::InvalidInterval { start, length, n });
        }
        Ok(IntervalZn { start, length, n })
    }

    /// Interval with 1-based inclusive integer endpoints `lo..=hi`, stored at their residues.
    pub fn from_bounds(m: Modulus, lo: i64, hi: i64) -> Result<Self> {
        if hi < lo {
            return Err(Error::InvalidInterval { start: 0, length: 0, n: m.get() });
        }
        IntervalZn::new(m, m.reduce(lo as i128), (hi - lo + 1) as u64)
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn len(&self) -> u64 {
        self.length
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn contains(&self, x: u64) -> bool {
        let off = (x % self.n + self.n - self.start) % self.n;
        off < self.length
    }

    /// Residues in increasing offset from `start`.
    pub fn residues(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.length).map(move |i| (self.start + i) % self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wraps_and_contains() {
        let m = Modulus::new(11).unwrap();
        let i = IntervalZn::new(m, 9, 3).unwrap();
        assert_eq!(i.residues().collect::<Vec<_>>(), vec![9, 10, 0]);
        assert!(i.contains(0) && i.contains(9) && !i.contains(1) && !i.contains(8));
    }

    #[test]
    fn rejects_bad_shapes() {
        let m = Modulus::new(11).unwrap();
        assert!(IntervalZn::new(m, 11, 1).is_err());
        assert!(IntervalZn::new(m, 0, 0).is_err());
        assert!(IntervalZn::new(m, 0, 12).is_err());
        assert_eq!(IntervalZn::new(m, 3, 11).unwrap().residues().count(), 11);
    }
}
