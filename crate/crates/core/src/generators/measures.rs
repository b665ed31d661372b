//! Samplable planar probability measures.

use std::f64::consts::TAU;

use rand::Rng;
use rand_distr::weighted::WeightedAliasIndex;
use rand_distr::Distribution;

use crate::config::Point2;
use crate::error::{Error, Result};
use crate::generators::cantor::GridMeasure;

/// Attempts before [`PlanarMeasure::sample_in_sector`] gives up.
pub const SECTOR_REJECTION_LIMIT: usize = 1 << 20;

pub trait PlanarMeasure: Sync {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Point2<f64>;

    /// A draw from the measure conditioned on polar angle in `[lo, hi)`.
    ///
    /// The default rejects draws outside the sector and returns `None` after
    /// [`SECTOR_REJECTION_LIMIT`] misses.
    fn sample_in_sector<R: Rng + ?Sized>(&self, lo: f64, hi: f64, rng: &mut R) -> Option<Point2<f64>> {
        for _ in 0..SECTOR_REJECTION_LIMIT {
            let p = self.sample(rng);
            let a = p.angle();
            if a >= lo && a < hi {
                return Some(p);
            }
        }
        None
    }
}

/// Uniform (area) measure on `inner ≤ |z| ≤ outer`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UniformAnnulus {
    pub inner: f64,
    pub outer: f64,
}

impl UniformAnnulus {
    pub fn new(inner: f64, outer: f64) -> Result<Self> {
        if !(inner >= 0.0 && outer > inner && outer.is_finite()) {
            return Err(Error::InvalidArgument(format!("bad annulus radii {inner}, {outer}")));
        }
        Ok(Self { inner, outer })
    }

    /// The annulus `1/2 ≤ |z| ≤ 1`.
    pub fn standard() -> Self {
        Self { inner: 0.5, outer: 1.0 }
    }

    fn radius<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let (a, b) = (self.inner * self.inner, self.outer * self.outer);
        (a + (b - a) * rng.random::<f64>()).sqrt()
    }
}

impl PlanarMeasure for UniformAnnulus {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Point2<f64> {
        let r = self.radius(rng);
        let t = rng.random_range(0.0..TAU);
        Point2::new_unchecked(r * t.cos(), r * t.sin())
    }

    // Angle and radius are independent, so the sector law is exact.
    fn sample_in_sector<R: Rng + ?Sized>(&self, lo: f64, hi: f64, rng: &mut R) -> Option<Point2<f64>> {
        let r = self.radius(rng);
        let t = rng.random_range(lo..hi);
        Some(Point2::new_unchecked(r * t.cos(), r * t.sin()))
    }
}

/// Uniform measure on the rectangle `|u| ≤ half_length`, `|v| ≤ thickness/2`
/// in the frame rotated by `angle`: a thickened segment through the origin.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThickSegment {
    pub half_length: f64,
    pub thickness: f64,
    pub angle: f64,
}

impl PlanarMeasure for ThickSegment {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Point2<f64> {
        let u = rng.random_range(-self.half_length..=self.half_length);
        let v = self.thickness * (rng.random::<f64>() - 0.5);
        let (s, c) = self.angle.sin_cos();
        Point2::new_unchecked(c * u - s * v, s * u + c * v)
    }
}

/// A finite weighted point cloud.
#[derive(Clone, Debug)]
pub struct WeightedCloud {
    points: Vec<Point2<f64>>,
    weights: Vec<f64>,
    alias: WeightedAliasIndex<f64>,
}

impl WeightedCloud {
    pub fn new(points: Vec<Point2<f64>>, weights: Vec<f64>) -> Result<Self> {
        if points.len() != weights.len() || points.is_empty() {
            return Err(Error::InvalidArgument("points and weights must be non-empty and equal length".into()));
        }
        let alias = WeightedAliasIndex::new(weights.clone())
            .map_err(|e| Error::InvalidArgument(format!("weights: {e}")))?;
        Ok(Self { points, weights, alias })
    }

    pub fn uniform(points: Vec<Point2<f64>>) -> Result<Self> {
        let n = points.len();
        Self::new(points, vec![1.0; n])
    }

    pub fn points(&self) -> &[Point2<f64>] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

impl PlanarMeasure for WeightedCloud {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Point2<f64> {
        self.points[self.alias.sample(rng)].clone()
    }
}

/// A grid measure sampled as a density: pick a cell by weight, then a
/// uniform point inside it.
#[derive(Clone, Debug)]
pub struct GridSampler {
    grid: GridMeasure,
    cells: Vec<usize>,
    alias: WeightedAliasIndex<f64>,
}

impl GridSampler {
    pub fn new(grid: GridMeasure) -> Result<Self> {
        let cells: Vec<usize> = (0..grid.weights().len())
            .filter(|&i| grid.weights()[i] > 0.0)
            .collect();
        let w: Vec<f64> = cells.iter().map(|&i| grid.weights()[i]).collect();
        let alias =
            WeightedAliasIndex::new(w).map_err(|e| Error::InvalidArgument(format!("weights: {e}")))?;
        Ok(Self { grid, cells, alias })
    }

    pub fn grid(&self) -> &GridMeasure {
        &self.grid
    }
}

impl PlanarMeasure for GridSampler {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Point2<f64> {
        let n = self.grid.n();
        let cell = self.cells[self.alias.sample(rng)];
        let h = self.grid.cell_size();
        let (ix, iy) = (cell % n, cell / n);
        Point2::new_unchecked(
            (ix as f64 + rng.random::<f64>()) * h,
            (iy as f64 + rng.random::<f64>()) * h,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeding::stream_rng;

    #[test]
    fn annulus_sector_sampling_stays_inside() {
        let a = UniformAnnulus::standard();
        let mut rng = stream_rng(2, 0);
        for _ in 0..1000 {
            let p = a.sample_in_sector(1.0, 1.5, &mut rng).unwrap();
            assert!(p.norm() >= 0.5 - 1e-15 && p.norm() <= 1.0 + 1e-15);
            assert!(p.angle() >= 1.0 - 1e-12 && p.angle() < 1.5 + 1e-12);
        }
    }

    #[test]
    fn segment_is_thin() {
        let seg = ThickSegment { half_length: 1.0, thickness: 1e-3, angle: 0.3 };
        let mut rng = stream_rng(2, 1);
        let normal = (-(0.3f64).sin(), 0.3f64.cos());
        for _ in 0..1000 {
            let p = seg.sample(&mut rng);
            let off = p.x() * normal.0 + p.y() * normal.1;
            assert!(off.abs() <= 5e-4 + 1e-15);
        }
    }

    #[test]
    fn grid_sampler_hits_support_only() {
        let mut w = vec![0.0; 16];
        w[5] = 1.0;
        let g = GridSampler::new(GridMeasure::new(4, 1.0, w).unwrap()).unwrap();
        let mut rng = stream_rng(3, 0);
        for _ in 0..100 {
            let p = g.sample(&mut rng);
            assert!((0.25..0.5).contains(p.x()) && (0.25..0.5).contains(p.y()));
        }
    }

    #[test]
    fn cloud_respects_weights() {
        let pts = vec![Point2::new(1.0, 0.0).unwrap(), Point2::new(0.0, 1.0).unwrap()];
        let c = WeightedCloud::new(pts, vec![0.0, 1.0]).unwrap();
        let mut rng = stream_rng(4, 0);
        assert!((0..50).all(|_| c.sample(&mut rng) == c.points()[1]));
    }
}
