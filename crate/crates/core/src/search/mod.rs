//! Exhaustive rediscovery: grid designs meeting every non-main-diagonal line
//! once, and extremal `+-1` / `{-1,0,1}` sequences for the 4-AP sum.

mod designs;
mod sequences;

pub use designs::{search_grid_designs, GridSearchResult};
pub use sequences::{
    ap4_delta, ap4_sum_seq, exhaustive_min, min_ap4_pm1, min_ap4_ternary, SearchResult,
    SearchSpace, PM1_MAX_LEN, TERNARY_MAX_LEN,
};
