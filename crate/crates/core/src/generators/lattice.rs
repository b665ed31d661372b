//! The polar half-lattice and its neighborhoods.
//!
//! Lattice points `(r/q, a/q)` with `⌈q/2⌉ ≤ r ≤ q`, `0 ≤ a ≤ q` are carried
//! symbolically as integer pairs and pushed through `ψ(x, y) = x·e^{iπy/2}`,
//! which lands them on the quarter annulus `1/2 ≤ |z| ≤ 1`.

use std::f64::consts::FRAC_PI_2;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::Point2;
use crate::error::{Error, Result};
use crate::seeding::stream_rng;

/// Spacing parameter `q` and target dimension `s` of a lattice neighborhood.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeSpec {
    q: u32,
    s: f64,
}

impl LatticeSpec {
    pub fn new(q: u32, s: f64) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidArgument(format!("q must be >= 2, got {q}")));
        }
        if !(s > 0.0 && s < 2.0) {
            return Err(Error::InvalidArgument(format!("s must be in (0, 2), got {s}")));
        }
        Ok(Self { q, s })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    /// Neighborhood radius `q^{−2/s}`.
    pub fn radius(&self) -> f64 {
        f64::from(self.q).powf(-2.0 / self.s)
    }

    pub fn min_radial_index(&self) -> u32 {
        self.q.div_ceil(2)
    }

    /// Number of radial indices `q − ⌈q/2⌉ + 1`.
    pub fn radial_count(&self) -> u32 {
        self.q - self.min_radial_index() + 1
    }

    /// `(q − ⌈q/2⌉ + 1)(q + 1)`.
    pub fn point_count(&self) -> usize {
        self.radial_count() as usize * (self.q as usize + 1)
    }
}

/// The exact point `(r/q)·(cos(πa/2q), sin(πa/2q))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SymbolicPoint {
    pub r: u32,
    pub a: u32,
    pub q: u32,
}

impl SymbolicPoint {
    pub fn new(r: u32, a: u32, q: u32) -> Result<Self> {
        if q < 2 || r < q.div_ceil(2) || r > q || a > q {
            return Err(Error::InvalidArgument(format!(
                "(r={r}, a={a}) outside the lattice for q={q}"
            )));
        }
        Ok(Self { r, a, q })
    }

    /// Angle `πa/(2q)`.
    pub fn angle(&self) -> f64 {
        FRAC_PI_2 * f64::from(self.a) / f64::from(self.q)
    }
}

/// All lattice points, radial index major.
pub fn lattice_points(spec: &LatticeSpec) -> Vec<SymbolicPoint> {
    let q = spec.q;
    (spec.min_radial_index()..=q)
        .flat_map(|r| (0..=q).map(move |a| SymbolicPoint { r, a, q }))
        .collect()
}

/// `ψ(x, y) = x·(cos(πy/2), sin(πy/2))`.
pub fn psi(x: f64, y: f64) -> Point2<f64> {
    let (s, c) = (FRAC_PI_2 * y).sin_cos();
    Point2::new_unchecked(x * c, x * s)
}

pub fn polar_image(p: &SymbolicPoint) -> Point2<f64> {
    let q = f64::from(p.q);
    psi(f64::from(p.r) / q, f64::from(p.a) / q)
}

/// A uniform point of the `radius`-ball around the lattice point in the
/// `(x, y)` domain, mapped by `ψ`.
pub fn sample_cell_point<R: Rng + ?Sized>(p: &SymbolicPoint, radius: f64, rng: &mut R) -> Point2<f64> {
    let q = f64::from(p.q);
    let rho = radius * rng.random::<f64>().sqrt();
    let theta = rng.random_range(0.0..std::f64::consts::TAU);
    psi(f64::from(p.r) / q + rho * theta.cos(), f64::from(p.a) / q + rho * theta.sin())
}

/// `points_per_cell` samples from each `q^{−2/s}`-ball, mapped by `ψ`.
///
/// Cell `i` (in [`lattice_points`] order) draws from random stream `i`, so the
/// output is independent of the thread count.
pub fn neighborhood_sample(spec: &LatticeSpec, points_per_cell: usize, seed: u64) -> Result<Vec<Point2<f64>>> {
    neighborhood_sample_with_radius(spec, spec.radius(), points_per_cell, seed)
}

pub fn neighborhood_sample_with_radius(
    spec: &LatticeSpec,
    radius: f64,
    points_per_cell: usize,
    seed: u64,
) -> Result<Vec<Point2<f64>>> {
    if points_per_cell == 0 {
        return Err(Error::InvalidArgument("points_per_cell must be >= 1".into()));
    }
    if radius.is_nan() || radius < 0.0 {
        return Err(Error::InvalidArgument(format!("radius must be >= 0, got {radius}")));
    }
    let cells = lattice_points(spec);
    let out = cells
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, p)| {
            let mut rng = stream_rng(seed, i as u64);
            (0..points_per_cell)
                .map(|_| sample_cell_point(p, radius, &mut rng))
                .collect::<Vec<_>>()
        })
        .collect();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::wedge;
    use std::collections::HashSet;

    fn close(p: Point2<f64>, x: f64, y: f64) -> bool {
        (p.x() - x).abs() < 1e-15 && (p.y() - y).abs() < 1e-15
    }

    #[test]
    fn lattice_counts() {
        for (q, n) in [(2, 6), (4, 15), (10, 66), (7, 32)] {
            let spec = LatticeSpec::new(q, 1.0).unwrap();
            assert_eq!(lattice_points(&spec).len(), n);
            assert_eq!(spec.point_count(), n);
        }
        let two = lattice_points(&LatticeSpec::new(2, 1.0).unwrap());
        let rs: HashSet<_> = two.iter().map(|p| p.r).collect();
        assert_eq!(rs, HashSet::from([1, 2]));
    }

    #[test]
    fn invalid_specs() {
        assert!(LatticeSpec::new(1, 1.0).is_err());
        assert!(LatticeSpec::new(4, 0.0).is_err());
        assert!(LatticeSpec::new(4, 2.0).is_err());
        assert!(SymbolicPoint::new(1, 0, 4).is_err());
        assert!(SymbolicPoint::new(4, 5, 4).is_err());
    }

    #[test]
    fn polar_examples() {
        let q = 8;
        assert!(close(polar_image(&SymbolicPoint { r: q, a: 0, q }), 1.0, 0.0));
        assert!(close(polar_image(&SymbolicPoint { r: q, a: q, q }), 0.0, 1.0));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(polar_image(&SymbolicPoint { r: q, a: q / 2, q }), h, h));
    }

    #[test]
    fn polar_image_in_quarter_annulus_and_injective() {
        for q in 2..=16 {
            let spec = LatticeSpec::new(q, 1.0).unwrap();
            let pts: Vec<_> = lattice_points(&spec).iter().map(polar_image).collect();
            for p in &pts {
                assert!(p.norm() >= 0.5 - 1e-15 && p.norm() <= 1.0 + 1e-15);
                let t = p.y().atan2(*p.x());
                assert!((-1e-15..=FRAC_PI_2 + 1e-15).contains(&t));
            }
            for (i, a) in pts.iter().enumerate() {
                for b in &pts[i + 1..] {
                    assert!(a.distance(b) > 1e-9, "ψ collapsed two lattice points at q={q}");
                }
            }
        }
    }

    #[test]
    fn wedge_closed_form() {
        let q = 9;
        let spec = LatticeSpec::new(q, 1.0).unwrap();
        let pts = lattice_points(&spec);
        let qf = f64::from(q);
        for u in &pts {
            for v in &pts {
                let closed = f64::from(u.r * v.r) / (qf * qf)
                    * (FRAC_PI_2 * (f64::from(v.a) - f64::from(u.a)) / qf).sin();
                let w = wedge(&polar_image(u), &polar_image(v));
                assert!((w - closed).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn zero_radius_reduces_to_centers() {
        let spec = LatticeSpec::new(5, 1.0).unwrap();
        let pts = neighborhood_sample_with_radius(&spec, 0.0, 1, 9).unwrap();
        let centers: Vec<_> = lattice_points(&spec).iter().map(polar_image).collect();
        assert_eq!(pts, centers);
    }

    #[test]
    fn neighborhood_norm_band() {
        let spec = LatticeSpec::new(4, 1.0).unwrap();
        let pts = neighborhood_sample(&spec, 10, 1).unwrap();
        assert_eq!(pts.len(), 150);
        let r = spec.radius();
        assert_eq!(r, 1.0 / 16.0);
        for p in &pts {
            assert!(p.norm() >= 0.5 - r && p.norm() <= 1.0 + r);
        }
        assert_eq!(pts, neighborhood_sample(&spec, 10, 1).unwrap());
        assert!(neighborhood_sample(&spec, 0, 1).is_err());
    }

    #[test]
    fn neighborhood_cells_stay_separated() {
        // Brute force over all sample pairs from distinct cells at q = 8.
        let q = 8;
        let spec = LatticeSpec::new(q, 0.5).unwrap();
        let per = 12;
        let pts = neighborhood_sample(&spec, per, 4).unwrap();
        let mut min = f64::INFINITY;
        for (i, a) in pts.iter().enumerate() {
            for (j, b) in pts.iter().enumerate().skip(i + 1) {
                if i / per != j / per {
                    min = min.min(a.distance(b));
                }
            }
        }
        // Closest centers are angular neighbours at r = q/2: (1/2)·π/(2q).
        let center_gap = 0.5 * 2.0 * (std::f64::consts::PI / (4.0 * f64::from(q))).sin();
        assert!(min > 0.5 * center_gap, "min separation {min}");
        assert!(min * f64::from(q) > 0.3);
    }
}
