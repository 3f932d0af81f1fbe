use super::{Check, ReportKind, VerificationReport};
use crate::apcount::{ap4_mean, apk_mean_zn};
use crate::constructions::quad_levelset;
use crate::error::Result;
use crate::spectra::dft;
use crate::zn::make_modulus;

const AP3_RELATIVE_TOLERANCE: f64 = 0.2;

/// The quadratic level set `{x : x^2 mod n within cn of 0}`: highly uniform,
/// yet with more 4-term progressions than a random set of its density.
pub fn run_demo_quadratic(n: u64, c: f64) -> Result<VerificationReport> {
    let m = make_modulus(n)?;
    let mut report = VerificationReport::new(ReportKind::DemoQuad, n, 0);
    let a = quad_levelset(m, c)?;
    let density = a.stats().mean;
    let uniformity = dft(&a).uniformity();
    report.timed(|| Check::info("density", "quadratic-level-set", vec![density, 2.0 * c]));
    report.timed(|| {
        Check::at_most("uniformity", "quadratic-level-set", vec![uniformity, density], density / 2.0)
    });
    report.timed(|| {
        let ap3 = apk_mean_zn(&[&a, &a, &a]).expect("one modulus").value;
        let expected = density.powi(3);
        let rel = (ap3 - expected).abs() / expected;
        Check::at_most("ap3-relative-error", "quadratic-level-set", vec![rel, ap3, expected], AP3_RELATIVE_TOLERANCE)
    });
    report.timed(|| {
        let ap4 = ap4_mean(&a).value;
        let expected = density.powi(4);
        Check::at_least("ap4-excess-ratio", "quadratic-level-set", vec![ap4 / expected, ap4, expected], 1.0)
    });
    Ok(report)
}
