//! Angle-separated pieces of a planar set.
//!
//! `[0, 2π)` is cut into `2π/δ` equal sectors. Selected sectors are pairwise
//! non-adjacent (cyclically), so two points taken from different selected
//! sectors are at angular distance at least `δ`.

use std::f64::consts::TAU;

use crate::config::Point2;
use crate::error::{Error, Result};

/// Angular distance on the circle, in `[0, π]`.
pub fn angular_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// An equal-width sector grid on the circle and a chosen subset of sectors.
#[derive(Clone, Debug, PartialEq)]
pub struct SectorChoice {
    pub delta: f64,
    pub sector_count: usize,
    /// Chosen sector indices, ascending.
    pub sectors: Vec<usize>,
}

impl SectorChoice {
    pub fn sector_of(&self, angle: f64) -> usize {
        sector_index(angle, self.delta, self.sector_count)
    }

    /// `[lo, hi)` bounds of chosen sector `piece`.
    pub fn bounds(&self, piece: usize) -> (f64, f64) {
        let s = self.sectors[piece] as f64;
        (s * self.delta, (s + 1.0) * self.delta)
    }

    /// Position in `sectors` of the piece containing `angle`, if any.
    pub fn piece_of(&self, angle: f64) -> Option<usize> {
        let s = self.sector_of(angle);
        self.sectors.iter().position(|&t| t == s)
    }
}

/// Number of sectors when `delta` divides `2π`.
pub fn sector_count(delta: f64) -> Result<usize> {
    if !(delta > 0.0 && delta <= TAU) {
        return Err(Error::InvalidArgument(format!("delta = {delta} must lie in (0, 2π]")));
    }
    let n = TAU / delta;
    let rounded = n.round();
    if (n - rounded).abs() > 1e-9 * n.max(1.0) {
        return Err(Error::InvalidArgument(format!("delta = {delta} does not divide 2π")));
    }
    Ok(rounded as usize)
}

fn sector_index(angle: f64, delta: f64, count: usize) -> usize {
    let a = angle.rem_euclid(TAU);
    ((a / delta) as usize).min(count - 1)
}

/// Greedy choice of `count` pairwise non-adjacent sectors, heaviest first.
///
/// Ties go to the lower sector index. Sectors of zero mass are never chosen.
pub fn select_sectors(masses: &[f64], count: usize) -> Result<Vec<usize>> {
    let n = masses.len();
    let mut order: Vec<usize> = (0..n).filter(|&i| masses[i] > 0.0).collect();
    order.sort_by(|&a, &b| masses[b].total_cmp(&masses[a]).then(a.cmp(&b)));
    let adjacent = |a: usize, b: usize| {
        let d = a.abs_diff(b);
        d <= 1 || d == n - 1
    };
    let mut chosen: Vec<usize> = Vec::with_capacity(count);
    for s in order {
        if chosen.len() == count {
            break;
        }
        if chosen.iter().all(|&c| !adjacent(c, s)) {
            chosen.push(s);
        }
    }
    if chosen.len() < count {
        return Err(Error::InsufficientSpread {
            needed: count,
            found: chosen.len(),
        });
    }
    chosen.sort_unstable();
    Ok(chosen)
}

/// Chooses `count` non-adjacent sectors of width `delta` by weighted mass.
pub fn choose_sectors(points: &[Point2<f64>], weights: Option<&[f64]>, count: usize, delta: f64) -> Result<SectorChoice> {
    let n = sector_count(delta)?;
    let mut masses = vec![0.0; n];
    for (i, p) in points.iter().enumerate() {
        masses[sector_index(p.angle(), delta, n)] += weights.map_or(1.0, |w| w[i]);
    }
    Ok(SectorChoice {
        delta,
        sector_count: n,
        sectors: select_sectors(&masses, count)?,
    })
}

/// Splits `points` into `count` subsets lying in pairwise non-adjacent
/// sectors of width `delta`; sectors are picked greedily by point count.
///
/// `count == 1` returns the whole set.
pub fn angle_partition(points: &[Point2<f64>], count: usize, delta: f64) -> Result<Vec<Vec<Point2<f64>>>> {
    match count {
        0 => Err(Error::InvalidArgument("count must be >= 1".into())),
        1 => Ok(vec![points.to_vec()]),
        _ => {
            let choice = choose_sectors(points, None, count, delta)?;
            let mut out = vec![Vec::new(); count];
            for p in points {
                if let Some(piece) = choice.piece_of(p.angle()) {
                    out[piece].push(p.clone());
                }
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::sample_unit_disk;
    use crate::seeding::stream_rng;
    use std::f64::consts::PI;

    fn annulus_cloud(n: usize) -> Vec<Point2<f64>> {
        let mut rng = stream_rng(17, 0);
        let mut out = Vec::new();
        while out.len() < n {
            let p = sample_unit_disk(&mut rng);
            if p.norm() >= 0.5 {
                out.push(p);
            }
        }
        out
    }

    fn min_cross_gap(parts: &[Vec<Point2<f64>>]) -> f64 {
        let mut min = f64::INFINITY;
        for (i, a) in parts.iter().enumerate() {
            for b in &parts[i + 1..] {
                for p in a {
                    for q in b {
                        min = min.min(angular_gap(p.angle(), q.angle()));
                    }
                }
            }
        }
        min
    }

    #[test]
    fn separated_pieces_on_annulus() {
        let pts = annulus_cloud(3000);
        let delta = PI / 8.0;
        let parts = angle_partition(&pts, 3, delta).unwrap();
        assert_eq!(parts.len(), 3);
        assert!(parts.iter().all(|p| !p.is_empty()));
        assert!(min_cross_gap(&parts) >= delta - 1e-12);
    }

    #[test]
    fn single_sector_is_insufficient() {
        let pts: Vec<_> = (0..50)
            .map(|i| Point2::new(0.8, 0.001 * f64::from(i)).unwrap())
            .collect();
        assert!(matches!(
            angle_partition(&pts, 2, PI / 8.0),
            Err(Error::InsufficientSpread { needed: 2, found: 1 })
        ));
    }

    #[test]
    fn count_one_is_identity() {
        let pts = annulus_cloud(20);
        assert_eq!(angle_partition(&pts, 1, PI / 8.0).unwrap(), vec![pts]);
    }

    #[test]
    fn delta_must_divide_circle() {
        assert!(sector_count(1.0).is_err());
        assert_eq!(sector_count(PI / 8.0).unwrap(), 16);
    }

    #[test]
    fn wraparound_sectors_are_adjacent() {
        let mut m = vec![0.0; 8];
        m[0] = 5.0;
        m[7] = 4.0;
        m[3] = 1.0;
        assert_eq!(select_sectors(&m, 2).unwrap(), vec![0, 3]);
        assert!(select_sectors(&m, 3).is_err());
    }
}
