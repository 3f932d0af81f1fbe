use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::intervals::build_f;
use crate::apcount::pattern_mean;
use crate::error::Result;
use crate::sum::CompensatedSum;
use crate::zn::{Modulus, RootTable, ZnSignal};

/// `G(x) = F(x) (omega^{x^2} + omega^{-x^2} + omega^{3x^2} + omega^{-3x^2})`,
/// evaluated as `F(x) (2 cos(2 pi x^2 / n) + 2 cos(6 pi x^2 / n))`.
pub fn g_from_f(f: &ZnSignal) -> ZnSignal {
    let m = f.modulus();
    let table = RootTable::new(m);
    ZnSignal::from_fn(m, |x| {
        let fx = f.get(x);
        if fx == 0.0 {
            return 0.0;
        }
        let e = m.mul(x, x);
        fx * (2.0 * table.at(e).re + 2.0 * table.at(m.mul(3, e)).re)
    })
}

pub fn build_g(m: Modulus) -> Result<ZnSignal> {
    Ok(g_from_f(&build_f(m)?.signal))
}

/// `P = (G + 4) / 8`, a `[0, 1]`-valued function when `|G| <= 4`.
pub fn p_from_g(g: &ZnSignal) -> ZnSignal {
    ZnSignal::from_fn(g.modulus(), |x| (g.get(x) + 4.0) / 8.0)
}

pub fn build_p(m: Modulus) -> Result<ZnSignal> {
    Ok(p_from_g(&build_g(m)?))
}

/// One of the 256 phase patterns
/// `theta(x, d) = p x^2 + q (x+d)^2 + r (x+2d)^2 + s (x+3d)^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PatternCoeffs {
    pub p: i8,
    pub q: i8,
    pub r: i8,
    pub s: i8,
}

pub const PHASE_FREQUENCIES: [i8; 4] = [-3, -1, 1, 3];

impl PatternCoeffs {
    pub fn new(p: i8, q: i8, r: i8, s: i8) -> Self {
        PatternCoeffs { p, q, r, s }
    }

    /// Coefficient of `x^2`.
    pub fn u(&self) -> i64 {
        i64::from(self.p) + i64::from(self.q) + i64::from(self.r) + i64::from(self.s)
    }

    /// Coefficient of `x d`.
    pub fn v(&self) -> i64 {
        2 * (i64::from(self.q) + 2 * i64::from(self.r) + 3 * i64::from(self.s))
    }

    /// Coefficient of `d^2`.
    pub fn w(&self) -> i64 {
        i64::from(self.q) + 4 * i64::from(self.r) + 9 * i64::from(self.s)
    }

    pub fn uvw(&self) -> (i64, i64, i64) {
        (self.u(), self.v(), self.w())
    }

    /// `u x^2 + v x d + w d^2`.
    pub fn theta(&self, x: i128, d: i128) -> i128 {
        i128::from(self.u()) * x * x + i128::from(self.v()) * x * d + i128::from(self.w()) * d * d
    }

    /// The defining sum, term by term.
    pub fn theta_direct(&self, x: i128, d: i128) -> i128 {
        let sq = |t: i128| t * t;
        i128::from(self.p) * sq(x)
            + i128::from(self.q) * sq(x + d)
            + i128::from(self.r) * sq(x + 2 * d)
            + i128::from(self.s) * sq(x + 3 * d)
    }
}

/// All 256 patterns in lexicographic order of `(p, q, r, s)`.
pub fn all_patterns() -> Vec<PatternCoeffs> {
    let f = PHASE_FREQUENCIES;
    let mut out = Vec::with_capacity(256);
    for &p in &f {
        for &q in &f {
            for &r in &f {
                for &s in &f {
                    out.push(PatternCoeffs::new(p, q, r, s));
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternClasses {
    /// `u != 0`: bounded by averaging over `x` for each fixed `d`.
    pub u_nonzero: Vec<PatternCoeffs>,
    /// `u = 0`, `w != 0`: bounded by averaging over `d` for each fixed `x`.
    pub w_nonzero: Vec<PatternCoeffs>,
    /// `u = w = 0`: the phase vanishes identically.
    pub null: Vec<PatternCoeffs>,
}

pub fn classify_patterns() -> PatternClasses {
    let mut classes = PatternClasses { u_nonzero: vec![], w_nonzero: vec![], null: vec![] };
    for pat in all_patterns() {
        match (pat.u(), pat.w()) {
            (0, 0) => classes.null.push(pat),
            (0, _) => classes.w_nonzero.push(pat),
            _ => classes.u_nonzero.push(pat),
        }
    }
    classes
}

/// `E_{x,d} F(x) F(x+d) F(x+2d) F(x+3d) omega^{theta(x,d)}` for each of the
/// 256 patterns. Their sum is `E_{x,d} prod G(x + i d)` with `G = g_from_f(F)`.
pub fn g_pattern_expansion(f: &ZnSignal) -> Vec<(PatternCoeffs, Complex64)> {
    let m = f.modulus();
    let n = m.get();
    let table = RootTable::new(m);
    let support: Vec<u64> = (0..n).filter(|&x| f.get(x) != 0.0).collect();
    // (x, d, product) for every pair with a non-zero F-product.
    let terms: Vec<(u64, u64, f64)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|d| {
            let table = &support;
            table.iter().filter_map(move |&x| {
                let prod: f64 = (0..4u64).map(|i| f.get(x + m.mul(i, d))).product();
                (prod != 0.0).then_some((x, d, prod))
            })
        })
        .collect();
    let norm = 1.0 / (n as f64 * n as f64);
    all_patterns()
        .into_par_iter()
        .map(|pat| {
            let (u, v, w) = (pat.u() as i128, pat.v() as i128, pat.w() as i128);
            let mut re = CompensatedSum::new();
            let mut im = CompensatedSum::new();
            for &(x, d, prod) in &terms {
                let (x, d) = (x as i128, d as i128);
                let z = table.pow(u * x * x + v * x * d + w * d * d) * prod;
                re += z.re;
                im += z.im;
            }
            (pat, Complex64::new(re.value() * norm, im.value() * norm))
        })
        .collect()
}

/// One of the 16 terms of `2^-12 prod_i (4 + G(x + i d))`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpansionTerm {
    /// Positions `i` at which `G` (rather than 4) was chosen.
    pub positions: Vec<u64>,
    /// `2^-12 * 4^(4 - |positions|)`.
    pub weight: f64,
    /// `E_{x,d} prod_{i in positions} G(x + i d)` (1 for the empty choice).
    pub mean: f64,
    pub value: f64,
    /// Value predicted by a change of variables, for up to two positions:
    /// `1/16`, `2^-6 E G`, `2^-8 (E G)^2`.
    pub closed_form: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PExpansion {
    pub terms: Vec<ExpansionTerm>,
    pub total: f64,
}

/// The 16-term split of `E_{x,d} P(x) P(x+d) P(x+2d) P(x+3d)` for `P = (G+4)/8`.
pub fn p_mean_expansion(g: &ZnSignal) -> PExpansion {
    let stats = g.stats();
    let mut terms = Vec::with_capacity(16);
    for mask in 0u8..16 {
        let positions: Vec<u64> = (0..4u64).filter(|i| mask & (1 << i) != 0).collect();
        let k = positions.len() as i32;
        let weight = 4f64.powi(4 - k) / 4096.0;
        let mean = if positions.is_empty() {
            1.0
        } else {
            let sigs = vec![g; positions.len()];
            pattern_mean(&sigs, &positions).expect("one modulus").value
        };
        let closed_form = match k {
            0 => Some(1.0 / 16.0),
            1 => Some(stats.mean / 64.0),
            2 => Some(stats.mean * stats.mean / 256.0),
            _ => None,
        };
        terms.push(ExpansionTerm { positions, weight, mean, value: weight * mean, closed_form });
    }
    let total = terms.iter().map(|t| t.value).sum::<CompensatedSum>().value();
    PExpansion { terms, total }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apcount::ap4_mean;
    use crate::constructions::intervals::build_f_with_width;
    use crate::spectra::dft;
    use crate::zn::RngStream;

    fn m(n: u64) -> Modulus {
        Modulus::new(n).unwrap()
    }

    #[test]
    fn classification() {
        let c = classify_patterns();
        assert_eq!(c.u_nonzero.len() + c.w_nonzero.len() + c.null.len(), 256);
        assert_eq!(c.null, vec![PatternCoeffs::new(-1, 3, -3, 1), PatternCoeffs::new(1, -3, 3, -1)]);
        assert!(c.null.iter().all(|p| p.v() == 0));
        assert_eq!(PatternCoeffs::new(1, -3, 3, -1).uvw(), (0, 0, 0));
        assert_eq!(PatternCoeffs::new(3, 3, 3, 3).uvw(), (12, 36, 42));
    }

    #[test]
    fn theta_identity() {
        let mut rng = RngStream::new(1);
        let mm = m(10007);
        for pat in all_patterns() {
            for _ in 0..100 {
                let x = rng.below(1 << 40) as i128 - (1 << 39);
                let d = rng.below(1 << 40) as i128 - (1 << 39);
                assert_eq!(pat.theta(x, d), pat.theta_direct(x, d));
                assert_eq!(mm.reduce(pat.theta(x, d)), mm.reduce(pat.theta_direct(x, d)));
            }
        }
    }

    #[test]
    fn g_values_bounded() {
        let g = build_g(m(10007)).unwrap();
        let f = build_f(m(10007)).unwrap();
        for x in 0..10007 {
            if f.signal.get(x) == 0.0 {
                assert_eq!(g.get(x), 0.0);
            }
            assert!(g.get(x).abs() <= 4.0 + 1e-12);
        }
        let st = g.stats();
        assert!(st.min >= -4.0 && st.max <= 4.0);
    }

    #[test]
    fn g_expansion_matches_direct_mean() {
        let f = build_f_with_width(m(1009), 1).unwrap();
        let g = g_from_f(&f.signal);
        let terms = g_pattern_expansion(&f.signal);
        assert_eq!(terms.len(), 256);
        let total: Complex64 = terms.iter().map(|(_, z)| z).sum();
        let direct = ap4_mean(&g).value;
        assert!((total.re - direct).abs() < 1e-6 && total.im.abs() < 1e-6);
        // the two null patterns each contribute E F-mean
        let f_mean = ap4_mean(&f.signal).value;
        for (pat, z) in &terms {
            if pat.u() == 0 && pat.w() == 0 {
                assert!((z.re - f_mean).abs() < 1e-12 && z.im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn p_values_and_coefficients() {
        let mm = m(10007);
        let g = build_g(mm).unwrap();
        let p = p_from_g(&g);
        assert!(p.values().iter().all(|&v| (0.0..=1.0).contains(&v)));
        let f = build_f(mm).unwrap();
        for x in 0..10007 {
            if f.signal.get(x) == 0.0 {
                assert_eq!(p.get(x), 0.5);
            }
        }
        let gs = dft(&g);
        let ps = dft(&p);
        for r in 1..10007 {
            assert!((ps.coeffs()[r] - gs.coeffs()[r] / 8.0).norm() < 1e-12);
        }
    }

    #[test]
    fn p_endpoints() {
        let mm = m(11);
        let g = ZnSignal::from_reals(mm, vec![4.0, -4.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0])
            .unwrap();
        let p = p_from_g(&g);
        assert_eq!((p.get(0), p.get(1), p.get(2)), (1.0, 0.0, 0.5));
    }

    #[test]
    fn p_expansion_identities() {
        let f = build_f_with_width(m(1009), 1).unwrap();
        let g = g_from_f(&f.signal);
        let p = p_from_g(&g);
        let exp = p_mean_expansion(&g);
        assert_eq!(exp.terms.len(), 16);
        assert!((exp.total - ap4_mean(&p).value).abs() < 1e-10);
        assert_eq!(exp.terms[0].value, 1.0 / 16.0);
        assert_eq!(exp.terms[15].value, ap4_mean(&g).value / 4096.0);
        for t in &exp.terms {
            if let Some(c) = t.closed_form {
                assert!((t.value - c).abs() < 1e-14, "{:?}", t.positions);
            }
        }
    }
}
