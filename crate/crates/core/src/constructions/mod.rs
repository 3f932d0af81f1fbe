//! The construction chain: grid design and sign function, Freiman lift `f`,
//! interval function `F`, quadratic modulation `G`, probabilities `P`, the
//! sampled set `A`, the phase-pattern classifier, and the quadratic
//! level-set example with too many 4-term progressions.

mod freiman;
mod grid;
mod intervals;
mod phase;
mod sample;

pub use freiman::{
    ap_transfer_check, freiman_check, freiman_check_map, grid_domain, lift_f, phi, ApTransfer,
    FreimanCollision, FreimanReport,
};
pub use grid::{
    enumerate_lines, grid_g, grid_points, in_grid, reference_design, validate_design,
    DesignValidation, GridDesign, GridFunction, GridLine, GridPoint, LineKind, LineViolation,
    REFERENCE_DESIGN,
};
pub(crate) use grid::validate_against;
pub use intervals::{
    build_f, build_f_with_width, base_function, progression_count, IntervalFunction,
    IntervalLayout, INTERVAL_COUNT,
};
pub use phase::{
    all_patterns, build_g, build_p, classify_patterns, g_from_f, g_pattern_expansion,
    p_from_g, p_mean_expansion, ExpansionTerm, PExpansion, PatternClasses, PatternCoeffs,
    PHASE_FREQUENCIES,
};
pub use sample::{quad_levelset, sample_a};
