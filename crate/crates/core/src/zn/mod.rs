//! Arithmetic foundation: prime moduli, intervals, signals on `Z` and `Z_n`,
//! roots of unity and a reproducible random stream.

mod interval;
mod modulus;
mod rng;
mod signal;

use num_complex::Complex64;

pub use interval::IntervalZn;
pub use modulus::{is_prime, next_prime, Modulus, MAX_MODULUS};
pub use rng::RngStream;
pub use signal::{
    signal_from_weighted_intervals, signal_stats, ComplexSignal, IntSignalZ, SignalStats,
    ZnSignal,
};

use crate::error::Result;

pub fn make_modulus(n: u64) -> Result<Modulus> {
    Modulus::new(n)
}

/// Table of `omega^k = exp(2 pi i k / n)` for `k` in `[0, n)`.
///
/// Every root-of-unity evaluation in the crate reduces its exponent exactly
/// mod `n` first and then looks it up here, so no large float angles occur.
#[derive(Debug, Clone)]
pub struct RootTable {
    modulus: Modulus,
    roots: Vec<Complex64>,
}

impl RootTable {
    pub fn new(modulus: Modulus) -> Self {
        let n = modulus.get() as f64;
        let roots = (0..modulus.get())
            .map(|k| {
                let theta = std::f64::consts::TAU * (k as f64) / n;
                Complex64::new(theta.cos(), theta.sin())
            })
            .collect();
        RootTable { modulus, roots }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// `omega^k` for a residue `k < n`.
    #[inline]
    pub fn at(&self, k: u64) -> Complex64 {
        self.roots[k as usize]
    }

    /// `omega^e` for any integer exponent.
    #[inline]
    pub fn pow(&self, e: i128) -> Complex64 {
        self.roots[self.modulus.reduce(e) as usize]
    }
}

/// `omega^{a x^2 + b x + c}` with the exponent reduced in 128-bit arithmetic.
pub fn quadratic_phase(m: Modulus, a: i64, b: i64, c: i64) -> ComplexSignal {
    let table = RootTable::new(m);
    let values = (0..m.get() as i128)
        .map(|x| table.pow(a as i128 * x * x + b as i128 * x + c as i128))
        .collect();
    ComplexSignal::new(m, values).expect("length matches modulus")
}
