use num_complex::Complex64;
use serde::Serialize;

use super::{IntervalZn, Modulus};
use crate::error::{Error, Result};
use crate::sum::CompensatedSum;

/// Dense real-valued function on `Z_n`; index `x` holds the value at residue `x`.
///
/// `exact` records that every value is an integer, which lets the counting
/// kernels switch to integer accumulation.
#[derive(Debug, Clone, PartialEq)]
pub struct ZnSignal {
    modulus: Modulus,
    values: Vec<f64>,
    exact: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SignalStats {
    pub mean: f64,
    pub l2_mean: f64,
    pub min: f64,
    pub max: f64,
}

impl ZnSignal {
    pub fn from_reals(modulus: Modulus, values: Vec<f64>) -> Result<Self> {
        check_len(modulus, values.len())?;
        if let Some(x) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Format(format!("non-finite value at residue {x}")));
        }
        Ok(ZnSignal { modulus, values, exact: false })
    }

    pub fn from_ints(modulus: Modulus, values: Vec<i64>) -> Result<Self> {
        check_len(modulus, values.len())?;
        Ok(ZnSignal {
            modulus,
            values: values.into_iter().map(|v| v as f64).collect(),
            exact: true,
        })
    }

    pub fn zeros(modulus: Modulus) -> Self {
        ZnSignal { modulus, values: vec![0.0; modulus.len()], exact: true }
    }

    pub fn constant(modulus: Modulus, c: f64) -> Self {
        ZnSignal {
            modulus,
            values: vec![c; modulus.len()],
            exact: c.fract() == 0.0,
        }
    }

    pub fn indicator<I: IntoIterator<Item = u64>>(modulus: Modulus, members: I) -> Self {
        let mut values = vec![0.0; modulus.len()];
        for x in members {
            values[(x % modulus.get()) as usize] = 1.0;
        }
        ZnSignal { modulus, values, exact: true }
    }

    pub fn from_fn(modulus: Modulus, f: impl Fn(u64) -> f64) -> Self {
        let values: Vec<f64> = (0..modulus.get()).map(f).collect();
        let exact = values.iter().all(|v| v.fract() == 0.0);
        ZnSignal { modulus, values, exact }
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn get(&self, x: u64) -> f64 {
        self.values[(x % self.modulus.get()) as usize]
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Integer view of an exact signal.
    pub fn int_values(&self) -> Option<Vec<i64>> {
        self.exact.then(|| self.values.iter().map(|&v| v as i64).collect())
    }

    pub fn is_indicator(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0 || v == 1.0)
    }

    /// Number of non-zero entries.
    pub fn support_size(&self) -> usize {
        self.values.iter().filter(|&&v| v != 0.0).count()
    }

    /// `x -> s(u * x)`.
    pub fn dilate(&self, u: u64) -> Self {
        let m = self.modulus;
        let values = (0..m.get()).map(|x| self.values[m.mul(u % m.get(), x) as usize]).collect();
        ZnSignal { modulus: m, values, exact: self.exact }
    }

    /// `x -> s(x + shift)`.
    pub fn shift(&self, shift: u64) -> Self {
        let n = self.modulus.get();
        let values = (0..n).map(|x| self.values[((x + shift % n) % n) as usize]).collect();
        ZnSignal { modulus: self.modulus, values, exact: self.exact }
    }

    pub fn to_complex(&self) -> ComplexSignal {
        ComplexSignal {
            modulus: self.modulus,
            values: self.values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        }
    }

    pub fn stats(&self) -> SignalStats {
        signal_stats(self)
    }
}

/// Complex-valued function on `Z_n` (quadratic phases and their products).
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSignal {
    modulus: Modulus,
    values: Vec<Complex64>,
}

impl ComplexSignal {
    pub fn new(modulus: Modulus, values: Vec<Complex64>) -> Result<Self> {
        check_len(modulus, values.len())?;
        Ok(ComplexSignal { modulus, values })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// Pointwise product with a real signal on the same modulus.
    pub fn mul_real(&self, other: &ZnSignal) -> Result<Self> {
        if other.modulus() != self.modulus {
            return Err(Error::ModulusMismatch(self.modulus.get(), other.modulus().get()));
        }
        let values = self.values.iter().zip(other.values()).map(|(z, &r)| z * r).collect();
        Ok(ComplexSignal { modulus: self.modulus, values })
    }
}

fn check_len(m: Modulus, len: usize) -> Result<()> {
    if len != m.len() {
        return Err(Error::LengthMismatch { expected: m.get(), got: len });
    }
    Ok(())
}

/// `(mean, mean of squares, min, max)`; sums are compensated.
pub fn signal_stats(s: &ZnSignal) -> SignalStats {
    let n = s.values.len() as f64;
    let mut sum = CompensatedSum::new();
    let mut sq = CompensatedSum::new();
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for &v in &s.values {
        sum += v;
        sq += v * v;
        min = min.min(v);
        max = max.max(v);
    }
    SignalStats { mean: sum.value() / n, l2_mean: sq.value() / n, min, max }
}

/// Sum of `weight * 1_I` over pairwise disjoint intervals; weights must be +-1.
pub fn signal_from_weighted_intervals(m: Modulus, parts: &[(IntervalZn, i8)]) -> Result<ZnSignal> {
    let mut values = vec![0i64; m.len()];
    let mut taken = vec![false; m.len()];
    for (interval, weight) in parts {
        if interval.modulus() != m.get() {
            return Err(Error::ModulusMismatch(m.get(), interval.modulus()));
        }
        if *weight != 1 && *weight != -1 {
            return Err(Error::InvalidParameter(format!("interval weight {weight} is not +-1")));
        }
        for x in interval.residues() {
            if std::mem::replace(&mut taken[x as usize], true) {
                return Err(Error::OverlappingIntervals(x));
            }
            values[x as usize] = i64::from(*weight);
        }
    }
    ZnSignal::from_ints(m, values)
}

/// Finitely supported integer function on `Z`, values in `[-4, 4]`.
///
/// Stored trimmed: `values[0]` and the last value are non-zero unless the
/// signal is identically zero (then `values` is empty).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntSignalZ {
    offset: i64,
    values: Vec<i8>,
}

impl IntSignalZ {
    pub fn new(offset: i64, values: Vec<i8>) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| !(-4..=4).contains(*v)) {
            return Err(Error::InvalidParameter(format!("value {v} outside [-4, 4]")));
        }
        let Some(first) = values.iter().position(|&v| v != 0) else {
            return Ok(IntSignalZ::zero());
        };
        let last = values.iter().rposition(|&v| v != 0).unwrap_or(first);
        Ok(IntSignalZ {
            offset: offset + first as i64,
            values: values[first..=last].to_vec(),
        })
    }

    pub fn zero() -> Self {
        IntSignalZ { offset: 0, values: Vec::new() }
    }

    /// Offset of the first non-zero value (0 for the zero signal).
    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn get(&self, x: i64) -> i8 {
        let i = x - self.offset;
        if i < 0 || i >= self.values.len() as i64 {
            0
        } else {
            self.values[i as usize]
        }
    }

    /// Inclusive bounds of the support hull, `None` for the zero signal.
    pub fn support_bounds(&self) -> Option<(i64, i64)> {
        (!self.values.is_empty()).then(|| (self.offset, self.offset + self.values.len() as i64 - 1))
    }

    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(move |(i, _)| self.offset + i as i64)
    }
}
