use crate::error::{Error, Result};
use crate::zn::{Modulus, RngStream, ZnSignal};

/// Independent Bernoulli draws `x in A` with probability `P(x)`, consuming one
/// word of `rng` per residue in order `x = 0, 1, ..., n-1`.
pub fn sample_a(p: &ZnSignal, rng: &mut RngStream) -> Result<ZnSignal> {
    if let Some((x, &value)) = p.values().iter().enumerate().find(|(_, v)| !(0.0..=1.0).contains(*v)) {
        return Err(Error::ProbabilityOutOfRange { x: x as u64, value });
    }
    let members: Vec<u64> = p
        .values()
        .iter()
        .enumerate()
        .filter_map(|(x, &px)| rng.bernoulli(px).then_some(x as u64))
        .collect();
    Ok(ZnSignal::indicator(p.modulus(), members))
}

/// `{x : x^2 mod n in [0, cn] or [n - cn, n)}`, the quadratic level set.
pub fn quad_levelset(m: Modulus, c: f64) -> Result<ZnSignal> {
    if !(c > 0.0 && c < 0.25) {
        return Err(Error::InvalidParameter(format!("level-set width c = {c} outside (0, 1/4)")));
    }
    let n = m.get() as f64;
    let members = (0..m.get()).filter(|&x| {
        let e = m.mul(x, x) as f64;
        e <= c * n || e >= n - c * n
    });
    Ok(ZnSignal::indicator(m, members.collect::<Vec<_>>()))
}
