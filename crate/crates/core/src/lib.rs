//! Area types of planar point configurations.
//!
//! A configuration `x = (x¹, …, x^{k+1})` in `ℝ²` has area type
//! `A(x) = (x^i ∧ x^j)_{i<j}`, the signed areas of all pairs. Two
//! configurations with `x¹ ∧ x² ≠ 0` have the same area type exactly when an
//! element of `SL₂(ℝ)` maps one onto the other, and each such orbit has a
//! canonical representative with `2k − 1` free coordinates.
//!
//! The configuration and canonical-form layers are generic over [`Scalar`],
//! which covers `f32`, `f64` and exact rationals. Generators, counting and the
//! scaling experiments work in `f64`.
//!
//! ```
//! use areatype::{canonical_form, Configurationf};
//!
//! let x = Configurationf::from_xy(&[(1.0, 0.0), (0.0, 1.0), (1.0, 1.0)]).unwrap();
//! assert_eq!(canonical_form(&x).unwrap().t, vec![1.0, 1.0, 1.0]);
//! ```

pub mod canonical;
pub mod config;
pub mod counting;
pub mod error;
pub mod fit;
pub mod generators;
pub mod io;
pub mod matrix;
pub mod scalar;
pub mod scaling;
pub mod seeding;

pub use canonical::{
    canonical_distance, canonical_form, canonicalize, matching_transform, neighborhood_gauges, same_area_type,
    stability_check, CanonicalForm, Canonicalized, Matching, NeighborhoodGauges, StabilityReport,
};
pub use config::{
    apply_map, area_type, degeneracy, pair_count, pair_index, pairs, sample_disk_configuration, sample_unimodular,
    sample_unit_disk, wedge, AreaType, Configuration, Point2,
};
pub use counting::{
    count_area_types_exact_upper, count_area_types_float, t_normalize, CountReport, NormalizedKey,
};
pub use error::{Error, Result};
pub use fit::LinearFit;
pub use matrix::{Mat2, UnimodularMap};
pub use scalar::{rational, Scalar};

/// Schema tag written into JSON outputs.
pub const SCHEMA: &str = "areatype/v1";

/// Exact rationals with arbitrary precision.
pub type Q = num_rational::BigRational;

pub type Point2f = Point2<f64>;
pub type Configurationf = Configuration<f64>;
pub type AreaTypef = AreaType<f64>;
pub type CanonicalFormf = CanonicalForm<f64>;
pub type UnimodularMapf = UnimodularMap<f64>;

pub type Point2q = Point2<Q>;
pub type Configurationq = Configuration<Q>;
pub type AreaTypeq = AreaType<Q>;
pub type CanonicalFormq = CanonicalForm<Q>;
pub type UnimodularMapq = UnimodularMap<Q>;
