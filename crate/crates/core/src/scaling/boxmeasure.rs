//! Box-counting estimate of the area-type image of a thickened polar lattice.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canonical::canonical_form;
use crate::config::{Configuration, Point2};
use crate::counting::{for_each_normalized, total_tuples};
use crate::error::{Error, Result};
use crate::generators::{lattice_points, polar_image, sample_cell_point, LatticeSpec};
use crate::scaling::histogram::FlatHistogram;
use crate::seeding::stream_rng;

/// Draws per cell tuple used when none is given.
pub const DEFAULT_DRAWS_PER_TUPLE: usize = 64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoxMeasureRow {
    pub q: u32,
    pub s: f64,
    pub k: usize,
    /// Neighborhood radius, also the grid side on the flat.
    pub eps: f64,
    /// Normalized cell tuples visited.
    pub tuples: u64,
    /// Canonical forms binned (degenerate draws are dropped).
    pub forms: u64,
    pub occupied: u64,
    pub estimate: f64,
}

/// Bins the canonical forms of random `(k+1)`-tuples from the images of the
/// `q^{−2/s}`-neighborhoods on a grid of the same side.
///
/// Only rotation-normalized cell tuples are visited: a lattice rotation maps
/// neighborhood images to neighborhood images and fixes area types. Each
/// visited tuple contributes its cell centers plus `draws_per_tuple` random
/// tuples. The work for tuples starting at lattice point `i` uses stream `i`.
pub fn box_measure(spec: &LatticeSpec, k: usize, draws_per_tuple: usize, seed: u64, cap: u128) -> Result<(BoxMeasureRow, FlatHistogram)> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    let tuples = total_tuples(spec, k);
    if tuples > cap {
        return Err(Error::BudgetExceeded { tuples, cap });
    }
    let eps = spec.radius();
    let points = lattice_points(spec);
    let centers: Vec<Point2<f64>> = points.iter().map(polar_image).collect();
    let parts: Vec<(FlatHistogram, u64, u64)> = (0..points.len())
        .into_par_iter()
        .map(|first| {
            let mut rng = stream_rng(seed, first as u64);
            let mut h = FlatHistogram::new(k, eps).expect("valid grid");
            let mut visited = 0u64;
            let mut forms = 0u64;
            let mut bin = |pts: Vec<Point2<f64>>, h: &mut FlatHistogram| {
                if let Ok(f) = canonical_form(&Configuration::new_unchecked(pts)) {
                    h.insert_coords(&f.t);
                    forms += 1;
                }
            };
            for_each_normalized(&points, k, first, |idx| {
                visited += 1;
                bin(idx.iter().map(|&i| centers[i].clone()).collect(), &mut h);
                for _ in 0..draws_per_tuple {
                    let pts = idx
                        .iter()
                        .map(|&i| sample_cell_point(&points[i], eps, &mut rng))
                        .collect();
                    bin(pts, &mut h);
                }
            });
            (h, visited, forms)
        })
        .collect();
    let mut hist = FlatHistogram::new(k, eps)?;
    let (mut visited, mut forms) = (0, 0);
    for (h, v, f) in parts {
        hist.merge(h)?;
        visited += v;
        forms += f;
    }
    let row = BoxMeasureRow {
        q: spec.q(),
        s: spec.s(),
        k,
        eps,
        tuples: visited,
        forms,
        occupied: hist.occupied() as u64,
        estimate: hist.measure_estimate(),
    };
    Ok((row, hist))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_nonempty() {
        let spec = LatticeSpec::new(4, 1.1).unwrap();
        let (a, ha) = box_measure(&spec, 1, 8, 3, u128::MAX).unwrap();
        let (b, hb) = box_measure(&spec, 1, 8, 3, u128::MAX).unwrap();
        assert_eq!(a, b);
        assert_eq!(ha, hb);
        assert!(a.occupied > 0 && a.estimate > 0.0);
        assert_eq!(a.eps, spec.radius());
    }

    #[test]
    fn more_draws_never_shrink_the_image() {
        let spec = LatticeSpec::new(4, 1.1).unwrap();
        let (few, _) = box_measure(&spec, 1, 0, 1, u128::MAX).unwrap();
        let (many, _) = box_measure(&spec, 1, 16, 1, u128::MAX).unwrap();
        assert!(many.occupied >= few.occupied);
    }

    #[test]
    fn budget_is_enforced() {
        let spec = LatticeSpec::new(8, 1.0).unwrap();
        assert!(matches!(box_measure(&spec, 3, 1, 0, 1000), Err(Error::BudgetExceeded { .. })));
    }
}
