use std::collections::HashMap;

use super::grid::{grid_points, GridFunction, GridPoint};
use crate::error::{Error, Result};
use crate::zn::IntSignalZ;

/// `phi(a, b, c) = a + 8b + 64c`, mapping the grid into `[73, 292]`.
pub fn phi(a: i64, b: i64, c: i64) -> Result<i64> {
    if ![a, b, c].iter().all(|v| (1..=4).contains(v)) {
        return Err(Error::OutOfDomain(a, b, c));
    }
    Ok(a + 8 * b + 64 * c)
}

fn phi_point(p: &GridPoint) -> i64 {
    i64::from(p[0]) + 8 * i64::from(p[1]) + 64 * i64::from(p[2])
}

/// Two ordered pairs that break the Freiman property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreimanCollision<const D: usize> {
    pub first: ([i64; D], [i64; D]),
    pub second: ([i64; D], [i64; D]),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreimanReport<const D: usize> {
    pub homomorphism: bool,
    pub pairs_checked: usize,
    pub collision: Option<FreimanCollision<D>>,
}

/// Is `map` a Freiman homomorphism of order 2 on `domain`, i.e. does
/// `map(x) - map(y) = map(z) - map(w)` hold exactly when `x - y = z - w`?
///
/// Equivalent to the difference map `x - y -> map(x) - map(y)` being a
/// well-defined bijection onto its image, which needs only the
/// `|domain|^2` ordered pairs.
pub fn freiman_check_map<const D: usize>(
    domain: &[[i64; D]],
    map: impl Fn(&[i64; D]) -> i64,
) -> FreimanReport<D> {
    let images: Vec<i64> = domain.iter().map(&map).collect();
    let mut by_vector: HashMap<[i64; D], (i64, usize, usize)> = HashMap::new();
    let mut by_image: HashMap<i64, ([i64; D], usize, usize)> = HashMap::new();
    let mut pairs = 0;
    for (i, x) in domain.iter().enumerate() {
        for (j, y) in domain.iter().enumerate() {
            pairs += 1;
            let mut diff = [0i64; D];
            for k in 0..D {
                diff[k] = x[k] - y[k];
            }
            let image = images[i] - images[j];
            let clash = match by_vector.get(&diff) {
                Some(&(img, a, b)) if img != image => Some((a, b)),
                Some(_) => None,
                None => {
                    by_vector.insert(diff, (image, i, j));
                    None
                }
            }
            .or_else(|| match by_image.get(&image) {
                Some(&(v, a, b)) if v != diff => Some((a, b)),
                Some(_) => None,
                None => {
                    by_image.insert(image, (diff, i, j));
                    None
                }
            });
            if let Some((a, b)) = clash {
                return FreimanReport {
                    homomorphism: false,
                    pairs_checked: pairs,
                    collision: Some(FreimanCollision {
                        first: (domain[a], domain[b]),
                        second: (*x, *y),
                    }),
                };
            }
        }
    }
    FreimanReport { homomorphism: true, pairs_checked: pairs, collision: None }
}

/// The grid `{1,2,3,4}^3` as `i64` triples.
pub fn grid_domain() -> Vec<[i64; 3]> {
    grid_points().map(|p| p.map(i64::from)).collect()
}

/// Freiman check for `phi` on the grid.
pub fn freiman_check() -> FreimanReport<3> {
    freiman_check_map(&grid_domain(), |p| p[0] + 8 * p[1] + 64 * p[2])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ApTransfer {
    pub quadruples: u64,
    pub grid_progressions: u64,
    pub mismatches: u64,
}

/// Exhaustive check over all `64^4` grid quadruples that `(x, y, z, w)` is an
/// arithmetic progression iff `(phi x, phi y, phi z, phi w)` is.
pub fn ap_transfer_check() -> ApTransfer {
    let pts: Vec<GridPoint> = grid_points().collect();
    let images: Vec<i64> = pts.iter().map(phi_point).collect();
    let is_ap3 = |x: &GridPoint, y: &GridPoint, z: &GridPoint| (0..3).all(|k| y[k] - x[k] == z[k] - y[k]);
    let mut out = ApTransfer { quadruples: 0, grid_progressions: 0, mismatches: 0 };
    for (i, x) in pts.iter().enumerate() {
        for (j, y) in pts.iter().enumerate() {
            let step = images[j] - images[i];
            for (k, z) in pts.iter().enumerate() {
                let grid_xyz = is_ap3(x, y, z);
                let image_xyz = images[k] - images[j] == step;
                for (l, w) in pts.iter().enumerate() {
                    out.quadruples += 1;
                    let grid_ap = grid_xyz && is_ap3(y, z, w);
                    let image_ap = image_xyz && images[l] - images[k] == step;
                    out.grid_progressions += u64::from(grid_ap);
                    out.mismatches += u64::from(grid_ap != image_ap);
                }
            }
        }
    }
    out
}

/// `f(phi(p)) = g(p)` on the image of the grid, zero elsewhere.
pub fn lift_f(g: &GridFunction) -> IntSignalZ {
    let lo = phi_point(&[1, 1, 1]);
    let hi = phi_point(&[4, 4, 4]);
    let mut values = vec![0i8; (hi - lo + 1) as usize];
    for p in grid_points() {
        values[(phi_point(&p) - lo) as usize] = g.get(&p);
    }
    IntSignalZ::new(lo, values).expect("values are +-1")
}
