//! Mean-normalized Fourier analysis on `Z_n`.
//!
//! `coeffs[r] = n^{-1} sum_x f(x) omega^{-r x}` with `omega = exp(2 pi i / n)`,
//! so `coeffs[0]` is the mean (the density, for an indicator).
//!
//! Prime `n` rules out radix splitting. Below [`NAIVE_CUTOFF`] the transform
//! is evaluated from the definition; above it we use the chirp-z (Bluestein)
//! identity `r k = (r^2 + k^2 - (r-k)^2) / 2`, which turns the transform into
//! a circular convolution of power-of-two length.

use std::io::Write;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::zn::{quadratic_phase, ComplexSignal, IntervalZn, Modulus, RootTable, ZnSignal};

/// Transforms shorter than this always use direct evaluation.
pub const NAIVE_CUTOFF: u64 = 512;

/// Absolute per-coefficient tolerance: `1e-9` up to `n = 2e4`, linear above.
pub fn coeff_tolerance(m: Modulus) -> f64 {
    1e-9 * (m.get() as f64 / 2e4).max(1.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    modulus: Modulus,
    coeffs: Vec<Complex64>,
}

impl Spectrum {
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient at any integer frequency.
    pub fn at(&self, r: i64) -> Complex64 {
        self.coeffs[self.modulus.reduce(r as i128) as usize]
    }

    /// `max_{r != 0} |coeffs[r]|`.
    pub fn uniformity(&self) -> f64 {
        self.coeffs[1..].iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max_r |coeffs[r]|`, including the zero frequency.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `sum_r |coeffs[r]|^2`.
    pub fn energy(&self) -> f64 {
        let mut acc = crate::sum::CompensatedSum::new();
        for z in &self.coeffs {
            acc += z.norm_sqr();
        }
        acc.value()
    }

    /// Reconstructs `f(x) = sum_r coeffs[r] omega^{r x}`.
    pub fn inverse(&self) -> Vec<Complex64> {
        let n = self.modulus.get() as f64;
        let conj: Vec<Complex64> = self.coeffs.iter().map(|z| z.conj()).collect();
        Dft::new(self.modulus)
            .transform(&conj)
            .into_iter()
            .map(|z| z.conj() * n)
            .collect()
    }

    /// CSV with header `r,re,im,abs`, one row per frequency, 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "r,re,im,abs")?;
        for (r, z) in self.coeffs.iter().enumerate() {
            writeln!(w, "{},{:.16e},{:.16e},{:.16e}", r, z.re, z.im, z.norm())?;
        }
        Ok(())
    }
}

/// A reusable transform plan for one modulus.
pub struct Dft {
    modulus: Modulus,
    kind: DftKind,
}

enum DftKind {
    Naive(RootTable),
    Chirp(ChirpPlan),
}

struct ChirpPlan {
    /// `exp(-i pi k^2 / n)` for `k` in `[0, n)`.
    chirp: Vec<Complex64>,
    /// Forward FFT of the conjugate chirp laid out circularly.
    kernel_hat: Vec<Complex64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl Dft {
    pub fn new(modulus: Modulus) -> Self {
        let kind = if modulus.get() < NAIVE_CUTOFF {
            DftKind::Naive(RootTable::new(modulus))
        } else {
            DftKind::Chirp(ChirpPlan::new(modulus))
        };
        Dft { modulus, kind }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// Mean-normalized forward transform of `values` (length `n`).
    pub fn transform(&self, values: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(values.len(), self.modulus.len(), "signal length must equal the modulus");
        match &self.kind {
            DftKind::Naive(table) => naive_with_table(values, table),
            DftKind::Chirp(plan) => plan.run(values),
        }
    }

    pub fn spectrum(&self, s: &ZnSignal) -> Spectrum {
        assert_eq!(s.modulus(), self.modulus);
        Spectrum { modulus: self.modulus, coeffs: self.transform(&s.to_complex().into_values()) }
    }

    pub fn spectrum_complex(&self, s: &ComplexSignal) -> Spectrum {
        assert_eq!(s.modulus(), self.modulus);
        Spectrum { modulus: self.modulus, coeffs: self.transform(s.values()) }
    }
}

impl ChirpPlan {
    fn new(m: Modulus) -> Self {
        let n = m.get();
        let two_n = 2 * n;
        let chirp: Vec<Complex64> = (0..n)
            .map(|k| {
                // k^2 mod 2n is exact, so the angle stays in [0, 2 pi).
                let e = (k * k) % two_n;
                let theta = -std::f64::consts::PI * (e as f64) / (n as f64);
                Complex64::new(theta.cos(), theta.sin())
            })
            .collect();
        let len = (2 * n as usize - 1).next_power_of_two();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(len);
        let inverse = planner.plan_fft_inverse(len);

        let mut kernel = vec![Complex64::new(0.0, 0.0); len];
        kernel[0] = chirp[0].conj();
        for k in 1..n as usize {
            kernel[k] = chirp[k].conj();
            kernel[len - k] = chirp[k].conj();
        }
        forward.process(&mut kernel);
        ChirpPlan { chirp, kernel_hat: kernel, forward, inverse }
    }

    fn run(&self, values: &[Complex64]) -> Vec<Complex64> {
        let n = values.len();
        let len = self.kernel_hat.len();
        let mut buf = vec![Complex64::new(0.0, 0.0); len];
        for k in 0..n {
            buf[k] = values[k] * self.chirp[k];
        }
        self.forward.process(&mut buf);
        for (b, k) in buf.iter_mut().zip(&self.kernel_hat) {
            *b *= k;
        }
        self.inverse.process(&mut buf);
        // rustfft leaves the inverse unnormalized (factor len); the transform
        // itself is mean-normalized (factor n).
        let scale = 1.0 / (len as f64 * n as f64);
        (0..n).map(|r| buf[r] * self.chirp[r] * scale).collect()
    }
}

fn naive_with_table(values: &[Complex64], table: &RootTable) -> Vec<Complex64> {
    let n = values.len() as u64;
    let inv_n = 1.0 / n as f64;
    (0..n)
        .into_par_iter()
        .map(|r| {
            let mut acc = Complex64::new(0.0, 0.0);
            // omega^{-r x}: track -r x mod n incrementally.
            let step = (n - r % n) % n;
            let mut idx = 0u64;
            for v in values {
                acc += v * table.at(idx);
                idx += step;
                if idx >= n {
                    idx -= n;
                }
            }
            acc * inv_n
        })
        .collect()
}

/// Direct `O(n^2)` evaluation of the definition; the reference for the fast path.
pub fn dft_naive(values: &[Complex64], m: Modulus) -> Vec<Complex64> {
    assert_eq!(values.len(), m.len());
    naive_with_table(values, &RootTable::new(m))
}

pub fn dft(s: &ZnSignal) -> Spectrum {
    Dft::new(s.modulus()).spectrum(s)
}

pub fn dft_complex(s: &ComplexSignal) -> Spectrum {
    Dft::new(s.modulus()).spectrum_complex(s)
}

pub fn uniformity(sp: &Spectrum) -> f64 {
    sp.uniformity()
}

/// `2 / (n |1 - omega^r|)`, the geometric-series ceiling on any interval's
/// `r`-th coefficient.
pub fn interval_coeff_bound(m: Modulus, r: i64) -> Result<f64> {
    let r = m.reduce(r as i128);
    if r == 0 {
        return Err(Error::ZeroFrequency);
    }
    let n = m.get() as f64;
    let chord = 2.0 * (std::f64::consts::PI * r as f64 / n).sin().abs();
    Ok(2.0 / (n * chord))
}

/// `1 + sum_{r != 0} interval_coeff_bound(r)`, an upper bound on `sum_r |I^(r)|`
/// for every interval `I`; it never exceeds `1 + 2 ln n`.
pub fn interval_l1_bound(m: Modulus) -> f64 {
    let mut acc = crate::sum::CompensatedSum::new();
    acc += 1.0;
    for r in 1..m.get() as i64 {
        acc += interval_coeff_bound(m, r).expect("r is non-zero").min(1.0);
    }
    acc.value()
}

/// Builds `I(x) omega^{a x^2 + b x + c}` and returns its largest coefficient
/// (all frequencies, `r = 0` included) together with `2 n^{-1/2} ln n`.
pub fn modulated_interval_uniformity_check(
    m: Modulus,
    interval: &IntervalZn,
    (a, b, c): (i64, i64, i64),
) -> Result<(f64, f64)> {
    if m.reduce(a as i128) == 0 {
        return Err(Error::DegenerateQuadratic);
    }
    if interval.modulus() != m.get() {
        return Err(Error::ModulusMismatch(m.get(), interval.modulus()));
    }
    let indicator = ZnSignal::indicator(m, interval.residues());
    let product = quadratic_phase(m, a, b, c).mul_real(&indicator)?;
    let measured = dft_complex(&product).max_abs();
    Ok((measured, 2.0 * m.log_scale()))
}

/// `max_r | |coeff_r| - n^{-1/2} |` for the phase `omega^{a x^2 + b x}`.
pub fn quadratic_phase_flatness(m: Modulus, a: i64, b: i64) -> Result<f64> {
    if m.reduce(a as i128) == 0 {
        return Err(Error::DegenerateQuadratic);
    }
    let target = (m.get() as f64).sqrt().recip();
    let sp = dft_complex(&quadratic_phase(m, a, b, 0));
    Ok(sp.coeffs().iter().map(|z| (z.norm() - target).abs()).fold(0.0, f64::max))
}
