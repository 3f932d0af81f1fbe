//! Counting weighted arithmetic-progression patterns.
//!
//! The central quantity is `E_{x,d in Z_n} prod_i s_i(x + c_i d)` for small
//! step vectors `c` (for 4-APs, `c = (0, 1, 2, 3)`). The `d = 0` terms are
//! always included.
//!
//! Kernels iterate `d` in parallel and `x` sequentially inside each `d`; the
//! per-`d` partial sums are then combined in increasing `d`, so the result is
//! independent of the number of threads. For integer-valued inputs the sums
//! are exact (`i128`).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectra::dft;
use crate::sum::CompensatedSum;
use crate::zn::{IntSignalZ, ZnSignal};

/// Longest progression the kernels accept.
pub const MAX_ARITY: usize = 5;

/// A progression mean over all `n^2` pairs `(x, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ApMean {
    pub value: f64,
    /// `sum_{x,d} prod ...` when every input is integer-valued.
    pub exact_numerator: Option<i128>,
    pub pair_count: u128,
}

/// `sum_{x,d in Z} f(x) f(x+d) f(x+2d) f(x+3d)`, exactly, `d` of either sign.
pub fn ap4_sum_z(f: &IntSignalZ) -> i128 {
    ap_sum_z(f, 4)
}

/// `sum_{x,d in Z} prod_{i<k} f(x + i d)` for `k >= 1`.
pub fn ap_sum_z(f: &IntSignalZ, k: usize) -> i128 {
    let Some((lo, hi)) = f.support_bounds() else {
        return 0;
    };
    if k == 0 {
        return 0;
    }
    let span = (k - 1) as i64;
    let reach = if span == 0 { 0 } else { (hi - lo) / span };
    let mut total = 0i128;
    for d in -reach..=reach {
        let x_lo = lo.max(lo - span * d);
        let x_hi = hi.min(hi - span * d);
        for x in x_lo..=x_hi {
            let mut prod = 1i64;
            for i in 0..k as i64 {
                prod *= i64::from(f.get(x + i * d));
                if prod == 0 {
                    break;
                }
            }
            total += i128::from(prod);
        }
    }
    total
}

/// `E_{x,d} prod_{i<k} s_i(x + i d)` for `k` in `{3, 4, 5}`.
pub fn apk_mean_zn(signals: &[&ZnSignal]) -> Result<ApMean> {
    if !(3..=MAX_ARITY).contains(&signals.len()) {
        return Err(Error::InvalidArity(signals.len()));
    }
    let steps: Vec<u64> = (0..signals.len() as u64).collect();
    pattern_mean(signals, &steps)
}

/// `E_{x,d} s(x) s(x+d) s(x+2d) s(x+3d)` for a single signal.
pub fn ap4_mean(s: &ZnSignal) -> ApMean {
    apk_mean_zn(&[s, s, s, s]).expect("arity 4 on one modulus")
}

/// `E_{x,d} prod_i s_i(x + steps_i d)` for 1 to 5 factors.
pub fn pattern_mean(signals: &[&ZnSignal], steps: &[u64]) -> Result<ApMean> {
    let plan = Plan::new(signals, steps)?;
    let n = plan.n as u128;
    let pair_count = n * n;
    match plan.int_values() {
        Some(ints) => {
            let per_d: Vec<i128> = (0..plan.n).into_par_iter().map(|d| plan.int_sum(&ints, d)).collect();
            let total: i128 = per_d.iter().sum();
            Ok(ApMean {
                value: total as f64 / (plan.n as f64 * plan.n as f64),
                exact_numerator: Some(total),
                pair_count,
            })
        }
        None => {
            let per_d: Vec<f64> = (0..plan.n).into_par_iter().map(|d| plan.float_sum(d)).collect();
            let total = per_d.iter().copied().sum::<CompensatedSum>().value();
            Ok(ApMean {
                value: total / (plan.n as f64 * plan.n as f64),
                exact_numerator: None,
                pair_count,
            })
        }
    }
}

/// Per-`d` means `E_x s(x) s(x+d) s(x+2d) s(x+3d)`, indexed by `d in [0, n)`.
pub fn ap4_mean_profile(s: &ZnSignal) -> Vec<f64> {
    pattern_profile(&[s, s, s, s], &[0, 1, 2, 3]).expect("one modulus")
}

/// Per-`d` means of an arbitrary pattern (floating point).
pub fn pattern_profile(signals: &[&ZnSignal], steps: &[u64]) -> Result<Vec<f64>> {
    let plan = Plan::new(signals, steps)?;
    let inv_n = 1.0 / plan.n as f64;
    Ok((0..plan.n).into_par_iter().map(|d| plan.float_sum(d) * inv_n).collect())
}

/// `sum_r |B^(r)|^2 |B^(3r)|^2`: the mean of `B(x)B(y)B(z)B(w)` over the
/// `n^3` solutions of `x - 3y + 3z - w = 0`. At least `density^4`.
pub fn linear_form_mean_fourier(b: &ZnSignal) -> Result<f64> {
    if let Some(x) = b.values().iter().position(|&v| v != 0.0 && v != 1.0) {
        return Err(Error::NotIndicator(x as u64));
    }
    let sp = dft(b);
    let n = b.modulus();
    let mut acc = CompensatedSum::new();
    for r in 0..n.get() {
        let a = sp.coeffs()[r as usize].norm_sqr();
        let c = sp.coeffs()[n.mul(3, r) as usize].norm_sqr();
        acc += a * c;
    }
    Ok(acc.value())
}

/// Shared iteration plan: the factor with the smallest support is the base,
/// so the inner loop runs only over its non-zero residues.
struct Plan<'a> {
    n: u64,
    base_support: Vec<u64>,
    base_values: Vec<f64>,
    others: Vec<(&'a ZnSignal, u64)>,
}

impl<'a> Plan<'a> {
    fn new(signals: &[&'a ZnSignal], steps: &[u64]) -> Result<Self> {
        if signals.is_empty() || signals.len() > MAX_ARITY || signals.len() != steps.len() {
            return Err(Error::InvalidArity(signals.len()));
        }
        let m = signals[0].modulus();
        if let Some(s) = signals.iter().find(|s| s.modulus() != m) {
            return Err(Error::ModulusMismatch(m.get(), s.modulus().get()));
        }
        let n = m.get();
        let base = (0..signals.len())
            .min_by_key(|&i| signals[i].support_size())
            .expect("non-empty");
        let base_step = steps[base] % n;
        let base_support: Vec<u64> = signals[base]
            .values()
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0.0)
            .map(|(x, _)| x as u64)
            .collect();
        let base_values = base_support.iter().map(|&x| signals[base].get(x)).collect();
        // Substituting y = x + c_base d leaves offsets (c_i - c_base) d.
        let others = (0..signals.len())
            .filter(|&i| i != base)
            .map(|i| (signals[i], (steps[i] % n + n - base_step) % n))
            .collect();
        Ok(Plan { n, base_support, base_values, others })
    }

    /// Integer copies of every factor, when all are exact and the product of
    /// `k` values cannot overflow `i64`.
    fn int_values(&self) -> Option<IntFactors> {
        let exact = self.others.iter().all(|(s, _)| s.is_exact())
            && self.base_values.iter().all(|v| v.fract() == 0.0);
        if !exact {
            return None;
        }
        let k = self.others.len() as i32 + 1;
        let max = self
            .others
            .iter()
            .flat_map(|(s, _)| s.values().iter())
            .chain(self.base_values.iter())
            .fold(0.0f64, |a, v| a.max(v.abs()));
        if max.powi(k) >= 9.0e18 {
            return None;
        }
        Some(IntFactors {
            base: self.base_values.iter().map(|&v| v as i64).collect(),
            others: self
                .others
                .iter()
                .map(|(s, _)| s.int_values().expect("exact signal"))
                .collect(),
        })
    }

    #[inline]
    fn offsets(&self, d: u64) -> Vec<u64> {
        self.others.iter().map(|&(_, c)| ((c as u128 * d as u128) % self.n as u128) as u64).collect()
    }

    fn int_sum(&self, ints: &IntFactors, d: u64) -> i128 {
        let offs = self.offsets(d);
        let n = self.n;
        let mut total = 0i128;
        for (&y, &b) in self.base_support.iter().zip(&ints.base) {
            let mut prod = b;
            for (vals, &off) in ints.others.iter().zip(&offs) {
                let mut idx = y + off;
                if idx >= n {
                    idx -= n;
                }
                prod *= vals[idx as usize];
                if prod == 0 {
                    break;
                }
            }
            total += i128::from(prod);
        }
        total
    }

    fn float_sum(&self, d: u64) -> f64 {
        let offs = self.offsets(d);
        let n = self.n;
        let mut acc = CompensatedSum::new();
        for (&y, &b) in self.base_support.iter().zip(&self.base_values) {
            let mut prod = b;
            for ((s, _), &off) in self.others.iter().zip(&offs) {
                let mut idx = y + off;
                if idx >= n {
                    idx -= n;
                }
                prod *= s.values()[idx as usize];
            }
            acc += prod;
        }
        acc.value()
    }
}

struct IntFactors {
    base: Vec<i64>,
    others: Vec<Vec<i64>>,
}
