//! Grid measures and a seeded Cantor-dust construction of prescribed dimension.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::config::Point2;
use crate::error::{Error, Result};

/// A probability measure on the `N×N` grid of `[0,1]²`, row-major with rows
/// indexed by `y`: `weights[iy * N + ix]` is the mass of
/// `[ix/N, (ix+1)/N) × [iy/N, (iy+1)/N)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridMeasure {
    n: usize,
    /// Nominal dimension the measure was built for (metadata only).
    s: f64,
    weights: Vec<f64>,
}

impl GridMeasure {
    /// Normalizes `weights` to total mass one.
    pub fn new(n: usize, s: f64, mut weights: Vec<f64>) -> Result<Self> {
        if n == 0 || !n.is_power_of_two() {
            return Err(Error::InvalidArgument(format!("grid side {n} is not a power of two")));
        }
        if weights.len() != n * n {
            return Err(Error::InvalidArgument(format!(
                "expected {} weights, got {}",
                n * n,
                weights.len()
            )));
        }
        if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(Error::InvalidArgument("weights must be finite and non-negative".into()));
        }
        let total: f64 = weights.iter().sum();
        if total.is_nan() || total <= 0.0 {
            return Err(Error::InvalidArgument("measure has no mass".into()));
        }
        for w in &mut weights {
            *w /= total;
        }
        Ok(Self { n, s, weights })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        Self::new(n, 2.0, vec![1.0; n * n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn cell_size(&self) -> f64 {
        1.0 / self.n as f64
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, ix: usize, iy: usize) -> f64 {
        self.weights[iy * self.n + ix]
    }

    pub fn total_mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Density values `weight / cell_area`, integrating to one over `[0,1]²`.
    pub fn density(&self) -> Vec<f64> {
        let area_inv = (self.n * self.n) as f64;
        self.weights.iter().map(|w| w * area_inv).collect()
    }

    /// Lower-left corner of cell `(ix, iy)`.
    pub fn cell_origin(&self, ix: usize, iy: usize) -> Point2<f64> {
        let h = self.cell_size();
        Point2::new_unchecked(ix as f64 * h, iy as f64 * h)
    }

    /// Occupied dyadic boxes of side `2^{-level}`.
    pub fn occupied_boxes(&self, level: u32) -> usize {
        let side = 1usize << level;
        assert!(side <= self.n, "level finer than the grid");
        let shift = self.n / side;
        let mut occ = vec![false; side * side];
        for iy in 0..self.n {
            for ix in 0..self.n {
                if self.weight(ix, iy) > 0.0 {
                    occ[(iy / shift) * side + ix / shift] = true;
                }
            }
        }
        occ.iter().filter(|&&b| b).count()
    }

    /// Box-counting dimension of the support: least-squares slope of
    /// `log₂ N(2^{-ℓ})` against `ℓ` over `ℓ = 1..=log₂ N`.
    pub fn box_dimension(&self) -> f64 {
        let levels = self.n.trailing_zeros();
        let pts: Vec<(f64, f64)> = (1..=levels)
            .map(|l| (f64::from(l), (self.occupied_boxes(l) as f64).log2()))
            .collect();
        crate::fit::least_squares(&pts).map_or(0.0, |f| f.slope)
    }

    /// `μ(B(center, radius))`, counting a cell when its center lies in the ball.
    pub fn ball_mass(&self, center: &Point2<f64>, radius: f64) -> f64 {
        let h = self.cell_size();
        let (cx, cy) = (*center.x(), *center.y());
        let lo = |v: f64| (((v - radius) / h).floor().max(0.0)) as usize;
        let hi = |v: f64| ((((v + radius) / h).ceil()) as usize).min(self.n);
        let mut m = 0.0;
        for iy in lo(cy)..hi(cy) {
            for ix in lo(cx)..hi(cx) {
                let px = (ix as f64 + 0.5) * h;
                let py = (iy as f64 + 0.5) * h;
                if (px - cx).hypot(py - cy) <= radius {
                    m += self.weight(ix, iy);
                }
            }
        }
        m
    }
}

/// Cumulative doubling count after `level` dyadic refinements.
fn doublings(level: u32, s: f64) -> u32 {
    (f64::from(level) * s).round() as u32
}

/// A product of two one-dimensional generalized Cantor sets on the dyadic
/// grid, with uniform weight on the surviving cells.
///
/// At refinement level `ℓ` the total number of kept cells is `2^{round(ℓ·s)}`:
/// each level doubles the kept intervals along zero, one or both axes, and an
/// axis that is not doubled keeps one of its two children at random. Single
/// doublings alternate between the axes, so each factor has dimension `≈ s/2`.
/// `s = 2` gives the uniform grid.
pub fn cantor_measure_grid<R: Rng + ?Sized>(s: f64, n: usize, rng: &mut R) -> Result<GridMeasure> {
    if !(s > 0.0 && s <= 2.0) {
        return Err(Error::InvalidArgument(format!("s must be in (0, 2], got {s}")));
    }
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::InvalidArgument(format!("grid side {n} is not a power of two >= 2")));
    }
    let levels = n.trailing_zeros();
    let mut xs: Vec<usize> = vec![0];
    let mut ys: Vec<usize> = vec![0];
    let (mut dx, mut dy) = (0u32, 0u32);
    let refine = |axis: &mut Vec<usize>, double: bool, rng: &mut R| {
        let mut next = Vec::with_capacity(axis.len() * if double { 2 } else { 1 });
        for &i in axis.iter() {
            if double {
                next.push(2 * i);
                next.push(2 * i + 1);
            } else {
                next.push(2 * i + usize::from(rng.random::<bool>()));
            }
        }
        *axis = next;
    };
    for level in 1..=levels {
        let step = (doublings(level, s) - doublings(level - 1, s)).min(2);
        let (double_x, double_y) = match step {
            0 => (false, false),
            2 => (true, true),
            _ if dx <= dy => (true, false),
            _ => (false, true),
        };
        dx += u32::from(double_x);
        dy += u32::from(double_y);
        refine(&mut xs, double_x, rng);
        refine(&mut ys, double_y, rng);
    }
    let mut weights = vec![0.0; n * n];
    for &iy in &ys {
        for &ix in &xs {
            weights[iy * n + ix] = 1.0;
        }
    }
    GridMeasure::new(n, s, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeding::stream_rng;

    #[test]
    fn full_dimension_is_uniform() {
        let mu = cantor_measure_grid(2.0, 64, &mut stream_rng(1, 0)).unwrap();
        assert!(mu.weights().iter().all(|&w| (w - 1.0 / 4096.0).abs() < 1e-18));
    }

    #[test]
    fn mass_is_one() {
        for (s, n, seed) in [(0.3, 64, 1), (1.0, 256, 2), (1.5, 128, 3), (1.99, 32, 4)] {
            let mu = cantor_measure_grid(s, n, &mut stream_rng(seed, 0)).unwrap();
            assert!((mu.total_mass() - 1.0).abs() < 1e-12);
            assert!(mu.weights().iter().all(|&w| w >= 0.0));
        }
    }

    #[test]
    fn measured_box_dimension() {
        for s in [0.5, 1.0, 1.1, 1.5, 1.8] {
            let mu = cantor_measure_grid(s, 256, &mut stream_rng(9, 0)).unwrap();
            let d = mu.box_dimension();
            assert!((d - s).abs() <= 0.1, "s={s} measured {d}");
        }
    }

    #[test]
    fn empirical_frostman_bound() {
        // max_x μ(B(x, ρ)) ≤ C ρ^{s − 0.1} across dyadic radii, with centers
        // drawn from the support.
        let s = 1.0;
        let mu = cantor_measure_grid(s, 256, &mut stream_rng(5, 0)).unwrap();
        let support: Vec<(usize, usize)> = (0..256)
            .flat_map(|iy| (0..256).map(move |ix| (ix, iy)))
            .filter(|&(ix, iy)| mu.weight(ix, iy) > 0.0)
            .collect();
        let mut rng = stream_rng(5, 1);
        let mut worst: f64 = 0.0;
        for m in 1..=6 {
            let rho = 2f64.powi(-m);
            for _ in 0..40 {
                let (ix, iy) = support[rng.random_range(0..support.len())];
                let h = mu.cell_size();
                let c = Point2::new((ix as f64 + 0.5) * h, (iy as f64 + 0.5) * h).unwrap();
                worst = worst.max(mu.ball_mass(&c, rho) / rho.powf(s - 0.1));
            }
        }
        assert!(worst < 16.0, "Frostman constant {worst}");
    }

    #[test]
    fn deterministic_given_seed() {
        let a = cantor_measure_grid(1.3, 128, &mut stream_rng(3, 0)).unwrap();
        let b = cantor_measure_grid(1.3, 128, &mut stream_rng(3, 0)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_input() {
        let mut rng = stream_rng(0, 0);
        assert!(cantor_measure_grid(1.0, 100, &mut rng).is_err());
        assert!(cantor_measure_grid(0.0, 64, &mut rng).is_err());
        assert!(GridMeasure::new(4, 1.0, vec![0.0; 16]).is_err());
        assert!(GridMeasure::new(4, 1.0, vec![-1.0; 16]).is_err());
    }
}
