use super::freiman::lift_f;
use super::grid::{grid_g, reference_design};
use crate::apcount::ap4_sum_z;
use crate::error::{Error, Result};
use crate::zn::{IntSignalZ, Modulus, ZnSignal};

/// Number of intervals `I_1, ..., I_300`; the lifted function lives in `[1, 300]`.
pub const INTERVAL_COUNT: u64 = 300;

/// The blocks `I_k = {(2k-1)t + 1, ..., 2kt}`, `k = 1..=300`, stored at their residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntervalLayout {
    modulus: Modulus,
    width: u64,
}

impl IntervalLayout {
    /// Any width with all `600` endpoints distinct mod `n` (`600 t <= n`).
    pub fn new(modulus: Modulus, width: u64) -> Result<Self> {
        if width == 0 || 2 * INTERVAL_COUNT * width > modulus.get() {
            return Err(Error::ModulusTooSmall(modulus.get()));
        }
        Ok(IntervalLayout { modulus, width })
    }

    /// `t = floor(n / 1200)`, accepted only if `t >= ceil(n / 1500)`.
    pub fn standard(modulus: Modulus) -> Result<Self> {
        let n = modulus.get();
        let t = n / 1200;
        if t == 0 || t < n.div_ceil(1500) {
            return Err(Error::ModulusTooSmall(n));
        }
        IntervalLayout::new(modulus, t)
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn width(&self) -> u64 {
        self.width
    }

    /// Inclusive integer bounds of `I_k`.
    pub fn bounds(&self, k: u64) -> (u64, u64) {
        assert!((1..=INTERVAL_COUNT).contains(&k));
        ((2 * k - 1) * self.width + 1, 2 * k * self.width)
    }

    /// The `k` with `x in I_k`, if any.
    pub fn index_of(&self, x: u64) -> Option<u64> {
        if x == 0 {
            return None;
        }
        let q = (x - 1) / self.width;
        (q % 2 == 1 && q < 2 * INTERVAL_COUNT).then_some(q.div_ceil(2))
    }

    /// Number of `(x, d)`, `d` any integer, with `x, ..., x+3d` in `{1..t}`:
    /// pairs of endpoints congruent mod 3, `sum_j m_j^2`.
    pub fn progression_count(&self) -> u64 {
        progression_count(self.width)
    }
}

/// `sum_j m_j^2` with `m_j = #{1 <= x <= t : x = j mod 3}`.
pub fn progression_count(t: u64) -> u64 {
    (0..3u64)
        .map(|j| {
            let m = (1..=t).filter(|x| x % 3 == j).count() as u64;
            m * m
        })
        .sum()
}

/// `F(x) = f(k)` on `I_k`, 0 elsewhere.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalFunction {
    pub layout: IntervalLayout,
    pub base: IntSignalZ,
    pub signal: ZnSignal,
}

impl IntervalFunction {
    /// Spreads `base` (supported in `[1, 300]`) over the layout.
    pub fn from_base(layout: IntervalLayout, base: &IntSignalZ) -> Result<Self> {
        if let Some((lo, hi)) = base.support_bounds() {
            if lo < 1 || hi > INTERVAL_COUNT as i64 {
                return Err(Error::InvalidParameter(format!(
                    "base support [{lo}, {hi}] leaves [1, {INTERVAL_COUNT}]"
                )));
            }
        }
        let m = layout.modulus();
        let mut values = vec![0i64; m.len()];
        for k in base.support() {
            let (lo, hi) = layout.bounds(k as u64);
            for x in lo..=hi {
                values[x as usize] = i64::from(base.get(k));
            }
        }
        Ok(IntervalFunction { layout, base: base.clone(), signal: ZnSignal::from_ints(m, values)? })
    }

    /// Number of intervals on which `F` is non-zero.
    pub fn active_intervals(&self) -> usize {
        self.base.support().count()
    }

    /// The numerator `n^2 E F-mean` predicted by the interval structure:
    /// `p * sum_{x,d in Z} f(x) f(x+d) f(x+2d) f(x+3d)`. Valid when `1200 t <= n`.
    pub fn predicted_numerator(&self) -> i128 {
        i128::from(self.layout.progression_count()) * ap4_sum_z(&self.base)
    }
}

/// The construction's `f`: the Freiman lift of the design's grid function.
pub fn base_function() -> IntSignalZ {
    lift_f(&grid_g(&reference_design()).expect("reference design is valid"))
}

/// `F` with the standard width.
pub fn build_f(m: Modulus) -> Result<IntervalFunction> {
    IntervalFunction::from_base(IntervalLayout::standard(m)?, &base_function())
}

/// `F` with an explicit width (small moduli, identity checks).
pub fn build_f_with_width(m: Modulus, width: u64) -> Result<IntervalFunction> {
    IntervalFunction::from_base(IntervalLayout::new(m, width)?, &base_function())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apcount::ap4_mean;

    fn m(n: u64) -> Modulus {
        Modulus::new(n).unwrap()
    }

    #[test]
    fn progression_count_brute_force() {
        for t in 1..40u64 {
            let mut count = 0;
            for x in 1..=t as i64 {
                for d in -(t as i64)..=t as i64 {
                    if (0..4).all(|i| (1..=t as i64).contains(&(x + i * d))) {
                        count += 1;
                    }
                }
            }
            assert_eq!(progression_count(t), count, "t = {t}");
        }
        assert_eq!(progression_count(8), 22);
        assert!((1..200).all(|t| 3 * progression_count(t) >= t * t));
    }

    #[test]
    fn width_gate() {
        assert_eq!(IntervalLayout::standard(m(10007)).unwrap().width(), 8);
        assert_eq!(IntervalLayout::standard(m(6007)).unwrap().width(), 5);
        assert_eq!(IntervalLayout::standard(m(5003)).unwrap().width(), 4);
        assert_eq!(IntervalLayout::standard(m(4999)).unwrap().width(), 4);
        // 4507/1500 = 3.005.. and 4507/1200 = 3.76.., no integer between
        assert!(matches!(IntervalLayout::standard(m(4507)), Err(Error::ModulusTooSmall(4507))));
        assert!(matches!(IntervalLayout::standard(m(1009)), Err(Error::ModulusTooSmall(1009))));
        assert!(IntervalLayout::new(m(1009), 1).is_ok());
        assert!(IntervalLayout::new(m(1009), 2).is_err());
    }

    #[test]
    fn index_lookup() {
        let l = IntervalLayout::new(m(10007), 8).unwrap();
        assert_eq!(l.bounds(1), (9, 16));
        assert_eq!(l.index_of(9), Some(1));
        assert_eq!(l.index_of(16), Some(1));
        assert_eq!(l.index_of(17), None);
        assert_eq!(l.index_of(8), None);
        assert_eq!(l.index_of(4800), Some(300));
        assert_eq!(l.index_of(4801), None);
        for k in 1..=300 {
            let (lo, hi) = l.bounds(k);
            assert!((lo..=hi).all(|x| l.index_of(x) == Some(k)));
        }
    }

    #[test]
    fn f_at_10007() {
        let f = build_f(m(10007)).unwrap();
        assert_eq!(f.layout.width(), 8);
        assert_eq!(f.active_intervals(), 64);
        assert_eq!(f.signal.support_size(), 64 * 8);
        assert_eq!(f.predicted_numerator(), -1584);
        let mean = ap4_mean(&f.signal);
        assert_eq!(mean.exact_numerator, Some(-1584));
        assert!((mean.value - (-1584.0 / 10007f64.powi(2))).abs() < 1e-18);
    }

    #[test]
    fn base_support_checked() {
        let layout = IntervalLayout::new(m(1009), 1).unwrap();
        let bad = IntSignalZ::new(0, vec![1]).unwrap();
        assert!(IntervalFunction::from_base(layout, &bad).is_err());
    }
}
