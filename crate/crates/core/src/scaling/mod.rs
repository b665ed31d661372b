//! Numerical experiments on the scaling of area-type images.

pub mod boxmeasure;
pub mod histogram;
pub mod littlewood_paley;
pub mod nu;

pub use boxmeasure::{box_measure, BoxMeasureRow, DEFAULT_DRAWS_PER_TUPLE};
pub use histogram::{box_count, nu_l2, CellKey, FlatHistogram, HistogramSummary};
pub use littlewood_paley::{lp_norms, lp_piece, Cutoff, Filtered, LpNormRow, LpNorms, Spectrum, NOISE_FLOOR};
pub use nu::{nu_density, NuEstimate, NuRow, Restriction, DEFAULT_DELTA};
