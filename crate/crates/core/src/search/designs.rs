use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::{enumerate_lines, validate_against, GridDesign, GridLine, GridPoint};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSearchResult {
    pub designs: Vec<GridDesign>,
    /// Ordered choices of four pairwise-disjoint permutation patterns tried.
    pub candidates: u64,
    pub exhaustive: bool,
}

impl Serialize for GridDesign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.labels().serialize(s)
    }
}

/// Backtracking over designs made of one permutation pattern per plane
/// `c = 1..4`, the four patterns pairwise disjoint as `(a, b)` cells (a
/// Latin square of order 4), filtered by the diagonal-line conditions.
///
/// Partitioned by the plane-1 pattern; partitions are merged in order, so the
/// output order is fixed. `max_results = 0` means no limit.
pub fn search_grid_designs(max_results: usize) -> GridSearchResult {
    let perms = permutations4();
    let lines = enumerate_lines();
    let parts: Vec<(Vec<GridDesign>, u64)> = (0..perms.len())
        .into_par_iter()
        .map(|first| {
            let mut found = Vec::new();
            let mut candidates = 0;
            let mut chosen = vec![first];
            extend(&perms, &lines, &mut chosen, &mut found, &mut candidates);
            (found, candidates)
        })
        .collect();
    let candidates = parts.iter().map(|(_, c)| c).sum();
    let mut designs: Vec<GridDesign> = parts.into_iter().flat_map(|(d, _)| d).collect();
    let exhaustive = max_results == 0 || designs.len() <= max_results;
    if max_results > 0 {
        designs.truncate(max_results);
    }
    GridSearchResult { designs, candidates, exhaustive }
}

fn extend(
    perms: &[[i8; 4]],
    lines: &[GridLine],
    chosen: &mut Vec<usize>,
    found: &mut Vec<GridDesign>,
    candidates: &mut u64,
) {
    if chosen.len() == 4 {
        *candidates += 1;
        let points: Vec<GridPoint> = chosen
            .iter()
            .enumerate()
            .flat_map(|(plane, &pi)| (0..4).map(move |a| [a as i8 + 1, perms[pi][a], plane as i8 + 1]))
            .collect();
        let design = GridDesign::new(points).expect("points lie in the grid");
        if validate_against(&design, lines).valid {
            found.push(design);
        }
        return;
    }
    for (idx, p) in perms.iter().enumerate() {
        let disjoint = chosen.iter().all(|&c| (0..4).all(|a| perms[c][a] != p[a]));
        if disjoint {
            chosen.push(idx);
            extend(perms, lines, chosen, found, candidates);
            chosen.pop();
        }
    }
}

/// The 24 permutations of `1..=4` in lexicographic order, as `a -> b` maps.
fn permutations4() -> Vec<[i8; 4]> {
    let mut out = Vec::new();
    for a in 1..=4i8 {
        for b in 1..=4i8 {
            for c in 1..=4i8 {
                for d in 1..=4i8 {
                    let p = [a, b, c, d];
                    if (0..4).all(|i| (i + 1..4).all(|j| p[i] != p[j])) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{reference_design, validate_design};

    #[test]
    fn latin_squares_of_order_four() {
        let r = search_grid_designs(0);
        assert_eq!(r.candidates, 576);
        assert!(r.exhaustive);
    }

    #[test]
    fn finds_the_reference_design() {
        let r = search_grid_designs(0);
        assert!(r.designs.contains(&reference_design()));
        assert!(r.designs.iter().all(|d| validate_design(d).valid && d.len() == 16));
        assert_eq!(r.designs.len(), 8);
    }

    #[test]
    fn limit_truncates() {
        let all = search_grid_designs(0).designs;
        let some = search_grid_designs(1);
        assert_eq!(some.designs.len(), 1);
        assert_eq!(some.designs[0], all[0]);
        assert_eq!(some.exhaustive, all.len() <= 1);
    }
}
