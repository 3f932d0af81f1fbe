//! Construction and numerical certification of a Fourier-uniform subset of
//! `Z_N` whose density of 4-term arithmetic progressions falls below the
//! random-set value `1/16`.
//!
//! The crate is organized bottom-up:
//!
//! * [`zn`]: prime moduli, intervals, signals, roots of unity, seeded RNG.
//! * [`spectra`]: the mean-normalized DFT (naive and chirp-z) and uniformity.
//! * [`apcount`]: exact and compensated progression means.
//! * [`constructions`]: the grid design, Freiman lift, `F`, `G`, `P`, sampled
//!   `A`, the 256-pattern classifier and the quadratic level-set example.
//! * [`search`]: exhaustive design search and extremal +-1 / ternary sequences.
//! * [`report`]: the verification pipeline, scaling runs and file formats.

pub mod apcount;
pub mod constructions;
pub mod error;
pub mod report;
pub mod search;
pub mod spectra;
pub mod sum;
pub mod zn;

pub use error::{Error, Result};
pub use zn::{make_modulus, IntSignalZ, IntervalZn, Modulus, RngStream, ZnSignal};
