use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const PM1_MAX_LEN: usize = 24;
pub const TERNARY_MAX_LEN: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchSpace {
    Pm1,
    Ternary,
}

impl SearchSpace {
    pub fn alphabet(self) -> &'static [i8] {
        match self {
            SearchSpace::Pm1 => &[-1, 1],
            SearchSpace::Ternary => &[-1, 0, 1],
        }
    }

    fn max_len(self) -> usize {
        match self {
            SearchSpace::Pm1 => PM1_MAX_LEN,
            SearchSpace::Ternary => TERNARY_MAX_LEN,
        }
    }
}

/// Exact minimum of the 4-AP sum over functions `{1..n} -> alphabet`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchResult {
    pub space: SearchSpace,
    pub n: usize,
    #[serde(rename = "min")]
    pub best_value: i64,
    /// Minimizers `(f(1), ..., f(n))`, lexicographically sorted.
    pub witnesses: Vec<Vec<i8>>,
    #[serde(skip)]
    pub nodes_explored: u64,
    pub exhaustive: bool,
}

/// `sum_{x,d in Z} f(x) f(x+d) f(x+2d) f(x+3d)` for `f` supported on the
/// slice positions. Non-degenerate progressions come in mirror pairs
/// `(x, d) ~ (x + 3d, -d)`, so the sum is the diagonal plus twice `d > 0`.
pub fn ap4_sum_seq(f: &[i8]) -> i64 {
    let n = f.len();
    let mut diag = 0i64;
    for &v in f {
        diag += i64::from(v).pow(4);
    }
    let mut pos = 0i64;
    for d in 1..=n.saturating_sub(1) / 3 {
        for x in 0..n - 3 * d {
            pos += i64::from(f[x]) * i64::from(f[x + d]) * i64::from(f[x + 2 * d]) * i64::from(f[x + 3 * d]);
        }
    }
    diag + 2 * pos
}

/// Change in [`ap4_sum_seq`] when `f[j]` is replaced by `new`.
pub fn ap4_delta(f: &[i8], j: usize, new: i8) -> i64 {
    let old = i64::from(f[j]);
    let new = i64::from(new);
    let n = f.len() as i64;
    let j = j as i64;
    let mut rest = 0i64;
    for d in 1..=(n - 1) / 3 {
        for i in 0..4 {
            let x = j - i * d;
            if x < 0 || x + 3 * d >= n {
                continue;
            }
            let mut prod = 1i64;
            for k in 0..4 {
                if k != i {
                    prod *= i64::from(f[(x + k * d) as usize]);
                }
            }
            rest += prod;
        }
    }
    (new.pow(4) - old.pow(4)) + 2 * (new - old) * rest
}

pub fn min_ap4_pm1(n: usize) -> Result<SearchResult> {
    exhaustive_min(SearchSpace::Pm1, n)
}

pub fn min_ap4_ternary(n: usize) -> Result<SearchResult> {
    exhaustive_min(SearchSpace::Ternary, n)
}

/// Sweeps every assignment. The last `k` positions are fixed per partition;
/// the rest follow a reflected mixed-radix Gray code, so consecutive
/// assignments differ in one position and the sum is updated by
/// [`ap4_delta`].
pub fn exhaustive_min(space: SearchSpace, n: usize) -> Result<SearchResult> {
    if n > space.max_len() {
        return Err(Error::SearchTooLarge { n, max: space.max_len() });
    }
    let alphabet = space.alphabet();
    let radix = alphabet.len();
    let fixed = n.min(match space {
        SearchSpace::Pm1 => 8,
        SearchSpace::Ternary => 5,
    });
    let partitions = radix.pow(fixed as u32);
    let parts: Vec<Partial> = (0..partitions)
        .into_par_iter()
        .map(|part| sweep_partition(alphabet, n, fixed, part))
        .collect();

    let best_value = parts.iter().map(|p| p.best).min().expect("at least one partition");
    let mut witnesses: Vec<Vec<i8>> = parts
        .into_iter()
        .filter(|p| p.best == best_value)
        .flat_map(|p| p.witnesses)
        .collect();
    witnesses.sort();
    Ok(SearchResult {
        space,
        n,
        best_value,
        witnesses,
        nodes_explored: (radix as u64).pow(n as u32),
        exhaustive: true,
    })
}

struct Partial {
    best: i64,
    witnesses: Vec<Vec<i8>>,
}

fn sweep_partition(alphabet: &[i8], n: usize, fixed: usize, part: usize) -> Partial {
    let radix = alphabet.len();
    let free = n - fixed;
    let mut digits = vec![0usize; n];
    let mut rem = part;
    for digit in digits.iter_mut().skip(free) {
        *digit = rem % radix;
        rem /= radix;
    }
    let mut f: Vec<i8> = digits.iter().map(|&d| alphabet[d]).collect();
    let mut sum = ap4_sum_seq(&f);
    let mut out = Partial { best: sum, witnesses: vec![f.clone()] };
    let mut dir = vec![1isize; free];
    loop {
        let mut j = 0;
        while j < free {
            let next = digits[j] as isize + dir[j];
            if next >= 0 && (next as usize) < radix {
                break;
            }
            dir[j] = -dir[j];
            j += 1;
        }
        if j == free {
            break;
        }
        digits[j] = (digits[j] as isize + dir[j]) as usize;
        let new = alphabet[digits[j]];
        sum += ap4_delta(&f, j, new);
        f[j] = new;
        if sum < out.best {
            out.best = sum;
            out.witnesses.clear();
            out.witnesses.push(f.clone());
        } else if sum == out.best {
            out.witnesses.push(f.clone());
        }
    }
    out
}
