use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the grid `{1,2,3,4}^3`, as `(a, b, c)`; `c` indexes the horizontal plane.
pub type GridPoint = [i8; 3];

pub const GRID_SIDE: i8 = 4;

/// The sixteen sign-flipped points of the construction, written `abc`.
pub const REFERENCE_DESIGN: [&str; 16] = [
    "113", "121", "132", "144", "212", "224", "233", "241", "314", "322", "331", "343", "411",
    "423", "434", "442",
];

pub fn in_grid(p: &GridPoint) -> bool {
    p.iter().all(|&v| (1..=GRID_SIDE).contains(&v))
}

/// Every point of the grid in lexicographic order.
pub fn grid_points() -> impl Iterator<Item = GridPoint> {
    (1..=GRID_SIDE).flat_map(|a| (1..=GRID_SIDE).flat_map(move |b| (1..=GRID_SIDE).map(move |c| [a, b, c])))
}

/// A set of grid points. Validity (one point on every non-main-diagonal
/// line) is checked separately by [`validate_design`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GridDesign {
    points: BTreeSet<GridPoint>,
}

impl GridDesign {
    pub fn new<I: IntoIterator<Item = GridPoint>>(points: I) -> Result<Self> {
        let points: BTreeSet<GridPoint> = points.into_iter().collect();
        if let Some(p) = points.iter().find(|p| !in_grid(p)) {
            return Err(Error::OutOfDomain(p[0].into(), p[1].into(), p[2].into()));
        }
        Ok(GridDesign { points })
    }

    pub fn empty() -> Self {
        GridDesign::default()
    }

    /// Parses three-digit `abc` labels.
    pub fn from_labels<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        let mut pts = Vec::with_capacity(labels.len());
        for label in labels {
            let label = label.as_ref();
            let digits: Vec<i8> = label
                .chars()
                .map(|ch| ch.to_digit(10).map(|d| d as i8))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Format(format!("bad grid label {label:?}")))?;
            if digits.len() != 3 {
                return Err(Error::Format(format!("bad grid label {label:?}")));
            }
            pts.push([digits[0], digits[1], digits[2]]);
        }
        GridDesign::new(pts)
    }

    pub fn contains(&self, p: &GridPoint) -> bool {
        self.points.contains(p)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = &GridPoint> {
        self.points.iter()
    }

    pub fn labels(&self) -> Vec<String> {
        self.points.iter().map(|p| format!("{}{}{}", p[0], p[1], p[2])).collect()
    }

    /// Copy with `from` replaced by `to`.
    pub fn replace(&self, from: GridPoint, to: GridPoint) -> Result<Self> {
        let mut pts = self.points.clone();
        pts.remove(&from);
        pts.insert(to);
        GridDesign::new(pts)
    }
}

impl fmt::Display for GridDesign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.labels().join(","))
    }
}

pub fn reference_design() -> GridDesign {
    GridDesign::from_labels(&REFERENCE_DESIGN).expect("valid labels")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LineKind {
    AxisParallel,
    PlaneDiagonal,
    MainDiagonal,
}

/// Four collinear grid points `p, p+v, p+2v, p+3v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridLine {
    pub points: [GridPoint; 4],
    pub kind: LineKind,
}

impl fmt::Display for GridLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> =
            self.points.iter().map(|p| format!("{}{}{}", p[0], p[1], p[2])).collect();
        write!(f, "{}", labels.join("-"))
    }
}

/// All 76 four-point lines of the grid, each listed once.
pub fn enumerate_lines() -> Vec<GridLine> {
    let mut lines = Vec::new();
    for dir in line_directions() {
        let kind = match dir.iter().filter(|&&v| v != 0).count() {
            1 => LineKind::AxisParallel,
            2 => LineKind::PlaneDiagonal,
            _ => LineKind::MainDiagonal,
        };
        for p in grid_points() {
            let before = add(&p, &dir, -1);
            let end = add(&p, &dir, 3);
            if in_grid(&before) || !in_grid(&end) {
                continue;
            }
            let points = [p, add(&p, &dir, 1), add(&p, &dir, 2), end];
            lines.push(GridLine { points, kind });
        }
    }
    lines.sort();
    lines
}

/// The 13 directions in `{-1,0,1}^3` whose first non-zero entry is positive.
fn line_directions() -> Vec<GridPoint> {
    let mut dirs = Vec::new();
    for a in -1..=1i8 {
        for b in -1..=1i8 {
            for c in -1..=1i8 {
                let v = [a, b, c];
                if v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0) {
                    dirs.push(v);
                }
            }
        }
    }
    dirs
}

fn add(p: &GridPoint, v: &GridPoint, k: i8) -> GridPoint {
    [p[0] + k * v[0], p[1] + k * v[1], p[2] + k * v[2]]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineViolation {
    pub line: GridLine,
    pub hits: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignValidation {
    pub valid: bool,
    pub violations: Vec<LineViolation>,
}

/// Checks that every line other than the four main diagonals meets the
/// design in exactly one point.
pub fn validate_design(design: &GridDesign) -> DesignValidation {
    validate_against(design, &enumerate_lines())
}

pub(crate) fn validate_against(design: &GridDesign, lines: &[GridLine]) -> DesignValidation {
    let violations: Vec<LineViolation> = lines
        .iter()
        .filter(|l| l.kind != LineKind::MainDiagonal)
        .filter_map(|l| {
            let hits = l.points.iter().filter(|p| design.contains(p)).count();
            (hits != 1).then_some(LineViolation { line: *l, hits })
        })
        .collect();
    DesignValidation { valid: violations.is_empty(), violations }
}

/// `+-1` function on the grid: `-1` exactly on the design points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridFunction {
    values: [[[i8; 4]; 4]; 4],
}

impl GridFunction {
    /// Value at a grid point, 0 outside the grid.
    pub fn get(&self, p: &GridPoint) -> i8 {
        if !in_grid(p) {
            return 0;
        }
        self.values[(p[0] - 1) as usize][(p[1] - 1) as usize][(p[2] - 1) as usize]
    }

    pub fn sum(&self) -> i64 {
        grid_points().map(|p| i64::from(self.get(&p))).sum()
    }

    /// `sum_{x, d in Z^3} g(x) g(x+d) g(x+2d) g(x+3d)`, computed on the grid itself.
    pub fn ap4_sum(&self) -> i64 {
        let mut total = 0;
        for x in grid_points() {
            for a in -1..=1i8 {
                for b in -1..=1i8 {
                    for c in -1..=1i8 {
                        let d = [a, b, c];
                        let prod: i64 = (0..4).map(|i| i64::from(self.get(&add(&x, &d, i)))).product();
                        total += prod;
                    }
                }
            }
        }
        total
    }
}

pub fn grid_g(design: &GridDesign) -> Result<GridFunction> {
    let check = validate_design(design);
    if !check.valid {
        return Err(Error::InvalidDesign(check.violations.len()));
    }
    let mut values = [[[1i8; 4]; 4]; 4];
    for p in design.points() {
        values[(p[0] - 1) as usize][(p[1] - 1) as usize][(p[2] - 1) as usize] = -1;
    }
    Ok(GridFunction { values })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_design_contents() {
        let d = reference_design();
        assert_eq!(d.len(), 16);
        assert!(d.contains(&[1, 1, 3]));
        assert!(!d.contains(&[1, 1, 1]));
    }

    #[test]
    fn planes_are_disjoint_permutations() {
        let d = reference_design();
        let mut cells = BTreeSet::new();
        for c in 1..=4i8 {
            let plane: Vec<_> = d.points().filter(|p| p[2] == c).collect();
            assert_eq!(plane.len(), 4);
            let rows: BTreeSet<_> = plane.iter().map(|p| p[0]).collect();
            let cols: BTreeSet<_> = plane.iter().map(|p| p[1]).collect();
            assert_eq!((rows.len(), cols.len()), (4, 4));
            for p in plane {
                assert!(cells.insert((p[0], p[1])));
            }
        }
    }

    #[test]
    fn line_census() {
        let lines = enumerate_lines();
        // ((4 + 2)^3 - 4^3) / 2: lines of the 6^3 cube meeting the inner 4^3.
        assert_eq!(lines.len(), (6usize.pow(3) - 4usize.pow(3)) / 2);
        let count = |k| lines.iter().filter(|l| l.kind == k).count();
        assert_eq!(count(LineKind::AxisParallel), 48);
        assert_eq!(count(LineKind::PlaneDiagonal), 24);
        assert_eq!(count(LineKind::MainDiagonal), 4);
        let distinct: BTreeSet<BTreeSet<GridPoint>> =
            lines.iter().map(|l| l.points.iter().copied().collect()).collect();
        assert_eq!(distinct.len(), 76);
    }

    #[test]
    fn validation() {
        assert!(validate_design(&reference_design()).valid);
        let empty = validate_design(&GridDesign::empty());
        assert!(!empty.valid);
        assert_eq!(empty.violations.len(), 72);
        assert!(empty.violations.iter().all(|v| v.hits == 0));

        let broken = reference_design().replace([1, 1, 3], [1, 1, 1]).unwrap();
        let check = validate_design(&broken);
        assert!(!check.valid);
        // the a-axis row through (., 1, 1) now holds 411 and 111
        assert!(check.violations.iter().any(|v| v.line.kind == LineKind::AxisParallel
            && v.line.points.contains(&[1, 1, 1])
            && v.hits == 2));
    }

    #[test]
    fn g_values() {
        let g = grid_g(&reference_design()).unwrap();
        assert_eq!(g.get(&[1, 1, 3]), -1);
        assert_eq!(g.get(&[1, 1, 1]), 1);
        assert_eq!(g.sum(), 32);
        assert!(matches!(grid_g(&GridDesign::empty()), Err(Error::InvalidDesign(72))));
    }

    #[test]
    fn grid_sum_is_minus_72() {
        // 64 degenerate - 96 axis - 48 plane diagonals + 8 main diagonals
        assert_eq!(grid_g(&reference_design()).unwrap().ap4_sum(), 64 - 96 - 48 + 8);
    }

    #[test]
    fn labels_roundtrip_and_reject() {
        assert_eq!(reference_design().labels(), REFERENCE_DESIGN.to_vec());
        assert!(GridDesign::from_labels(&["115"]).is_err());
        assert!(GridDesign::from_labels(&["11"]).is_err());
    }
}
