//! Counting distinct area types of tuples from the polar lattice.
//!
//! Rotating a tuple of lattice images by a multiple of `π/(2q)` permutes
//! lattice angles and preserves area types, so every ordered tuple is
//! equivalent to one whose smallest angular index is zero. The number of such
//! normalized tuples bounds the number of distinct area types from above and
//! is computed exactly with integer keys; a second pass deduplicates actual
//! canonical forms at a floating tolerance.
//!
//! Enumeration only visits normalized tuples and is chunked by the index of
//! the first point; chunk results are merged as sets, so the counts do not
//! depend on the thread count.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::canonical::canonical_form;
use crate::config::{wedge, Configuration, Point2};
use crate::error::{Error, Result};
use crate::fit::{log_log_fit, LinearFit};
use crate::generators::{lattice_points, polar_image, LatticeSpec, SymbolicPoint};

/// Default cap on the number of ordered tuples a count may consider.
pub const DEFAULT_BUDGET: u128 = 1_000_000_000;

/// Default snapping tolerance for floating deduplication.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// A tuple rotated so that its minimal angular index is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NormalizedKey {
    /// `(r, a − min a)` per point, in tuple order.
    pub entries: SmallVec<[(u32, u32); 6]>,
}

impl NormalizedKey {
    /// The key read back as a tuple of lattice points.
    pub fn as_tuple(&self, q: u32) -> Vec<SymbolicPoint> {
        self.entries
            .iter()
            .map(|&(r, a)| SymbolicPoint { r, a, q })
            .collect()
    }
}

/// Subtracts the minimal angular index, i.e. rotates clockwise by
/// `π·min(a)/(2q)`. Radii and order are unchanged.
pub fn t_normalize(tuple: &[SymbolicPoint]) -> Result<NormalizedKey> {
    let first = tuple
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty tuple".into()))?;
    if tuple.iter().any(|p| p.q != first.q) {
        return Err(Error::InvalidArgument("tuple mixes lattice spacings".into()));
    }
    let min_a = tuple.iter().map(|p| p.a).min().unwrap_or(0);
    Ok(NormalizedKey {
        entries: tuple.iter().map(|p| (p.r, p.a - min_a)).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountReport {
    pub q: u32,
    pub k: usize,
    /// Distinct normalized keys over all ordered `(k+1)`-tuples.
    pub exact_upper: u64,
    /// Distinct snapped area types among the enumerated non-degenerate tuples
    /// (for `k = 1`, distinct signed areas including zero).
    pub float_count: u64,
    /// Enumerated normalized tuples skipped as degenerate (`k ≥ 2` only).
    pub degenerate_excluded: u64,
    pub tolerance: f64,
}

/// Number of ordered `(k+1)`-tuples of lattice points.
pub fn total_tuples(spec: &LatticeSpec, k: usize) -> u128 {
    (spec.point_count() as u128).saturating_pow(k as u32 + 1)
}

fn check_budget(spec: &LatticeSpec, k: usize, cap: u128) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    let tuples = total_tuples(spec, k);
    if tuples > cap {
        return Err(Error::BudgetExceeded { tuples, cap });
    }
    Ok(())
}

/// Visits every normalized tuple whose first point is `points[first]`,
/// passing lattice indices in lexicographic order.
pub(crate) fn for_each_normalized<F: FnMut(&[usize])>(points: &[SymbolicPoint], k: usize, first: usize, mut f: F) {
    let n = points.len();
    let mut idx = vec![0usize; k + 1];
    idx[0] = first;
    loop {
        if idx.iter().any(|&i| points[i].a == 0) {
            f(&idx);
        }
        // Odometer over positions 1..=k.
        let mut pos = k;
        loop {
            if pos == 0 {
                return;
            }
            idx[pos] += 1;
            if idx[pos] < n {
                break;
            }
            idx[pos] = 0;
            pos -= 1;
        }
    }
}

/// Exact count of distinct normalized keys over all ordered `(k+1)`-tuples.
pub fn count_area_types_exact_upper(spec: &LatticeSpec, k: usize, cap: u128) -> Result<u64> {
    check_budget(spec, k, cap)?;
    let points = lattice_points(spec);
    let keys = (0..points.len())
        .into_par_iter()
        .map(|first| {
            let mut local = HashSet::new();
            let mut tuple = Vec::with_capacity(k + 1);
            for_each_normalized(&points, k, first, |idx| {
                tuple.clear();
                tuple.extend(idx.iter().map(|&i| points[i]));
                local.insert(t_normalize(&tuple).expect("uniform q"));
            });
            local
        })
        .reduce(HashSet::new, merge_sets);
    Ok(keys.len() as u64)
}

fn merge_sets<T: Eq + std::hash::Hash>(mut a: HashSet<T>, b: HashSet<T>) -> HashSet<T> {
    if a.len() < b.len() {
        return merge_sets(b, a);
    }
    a.extend(b);
    a
}

type SnapKey = SmallVec<[i64; 8]>;

fn snap(v: f64, tol: f64) -> i64 {
    (v / tol).round() as i64
}

/// Exact upper bound together with a floating distinct count at `tol`.
pub fn count_area_types_float(spec: &LatticeSpec, k: usize, tol: f64, cap: u128) -> Result<CountReport> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let exact_upper = count_area_types_exact_upper(spec, k, cap)?;
    let points = lattice_points(spec);
    let images: Vec<Point2<f64>> = points.iter().map(polar_image).collect();
    let (keys, degenerate) = (0..points.len())
        .into_par_iter()
        .map(|first| {
            let mut local: HashSet<SnapKey> = HashSet::new();
            let mut degenerate = 0u64;
            for_each_normalized(&points, k, first, |idx| {
                if k == 1 {
                    let w = wedge(&images[idx[0]], &images[idx[1]]);
                    local.insert(SmallVec::from_slice(&[snap(w, tol)]));
                    return;
                }
                let cfg = Configuration::new_unchecked(idx.iter().map(|&i| images[i].clone()).collect());
                match canonical_form(&cfg) {
                    Ok(form) => {
                        local.insert(form.t.iter().map(|&v| snap(v, tol)).collect());
                    }
                    Err(_) => degenerate += 1,
                }
            });
            (local, degenerate)
        })
        .reduce(
            || (HashSet::new(), 0),
            |(a, da), (b, db)| (merge_sets(a, b), da + db),
        );
    Ok(CountReport {
        q: spec.q(),
        k,
        exact_upper,
        float_count: keys.len() as u64,
        degenerate_excluded: degenerate,
        tolerance: tol,
    })
}

/// Least-squares slope and `R²` of `ln count` against `ln q`.
pub fn scaling_fit(points: &[(f64, f64)]) -> Result<LinearFit> {
    log_log_fit(points)
}

/// Whether a lattice tuple is degenerate: its first two points share an
/// angular index (`a` ranges over a quarter turn, so no antipodal pairs).
pub fn is_degenerate_tuple(tuple: &[SymbolicPoint]) -> bool {
    tuple.len() >= 2 && tuple[0].a == tuple[1].a
}

/// Closed form of the signed area between two lattice images,
/// `(r r′/q²)·sin(π(a′ − a)/(2q))`.
pub fn lattice_wedge(u: &SymbolicPoint, v: &SymbolicPoint) -> f64 {
    let q = f64::from(u.q);
    f64::from(u.r * v.r) / (q * q)
        * (std::f64::consts::FRAC_PI_2 * (f64::from(v.a) - f64::from(u.a)) / q).sin()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(r: u32, a: u32) -> SymbolicPoint {
        SymbolicPoint { r, a, q: 8 }
    }

    #[test]
    fn t_normalize_examples() {
        let key = t_normalize(&[sp(4, 3), sp(5, 5), sp(8, 3)]).unwrap();
        assert_eq!(key.entries.as_slice(), &[(4, 0), (5, 2), (8, 0)]);
        let flat = t_normalize(&[sp(4, 6), sp(7, 6)]).unwrap();
        assert!(flat.entries.iter().all(|e| e.1 == 0));
        assert_eq!(t_normalize(&key.as_tuple(8)).unwrap(), key);
        assert!(t_normalize(&[]).is_err());
        assert!(t_normalize(&[sp(4, 1), SymbolicPoint { r: 4, a: 1, q: 9 }]).is_err());
    }

    #[test]
    fn rejects_k_zero_and_budget() {
        let spec = LatticeSpec::new(4, 1.0).unwrap();
        assert!(matches!(count_area_types_exact_upper(&spec, 0, DEFAULT_BUDGET), Err(Error::InvalidArgument(_))));
        assert!(matches!(
            count_area_types_exact_upper(&spec, 2, 100),
            Err(Error::BudgetExceeded { tuples: 3375, cap: 100 })
        ));
    }

    #[test]
    fn tolerance_monotone() {
        let spec = LatticeSpec::new(4, 1.0).unwrap();
        let mut last = u64::MAX;
        for tol in [1e-9, 1e-4, 1e-2, 0.1, 1.0, 10.0, 100.0] {
            let r = count_area_types_float(&spec, 2, tol, DEFAULT_BUDGET).unwrap();
            assert!(r.float_count <= last, "tol {tol}");
            last = r.float_count;
        }
        assert!(last <= 4);
    }

    #[test]
    fn degenerate_tuples_are_same_angle() {
        assert!(is_degenerate_tuple(&[sp(4, 2), sp(6, 2), sp(5, 0)]));
        assert!(!is_degenerate_tuple(&[sp(4, 2), sp(6, 3)]));
    }
}
