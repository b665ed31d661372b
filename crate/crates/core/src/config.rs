//! Points, configurations and area types.
//!
//! A `(k+1)`-point configuration `x = (x¹, …, x^{k+1})` is an ordered list of
//! planar points. Its area type is the vector of signed parallelogram areas
//! `wedge(x^i, x^j)` over all pairs `i < j`, listed lexicographically:
//! `(1,2), (1,3), …, (1,k+1), (2,3), …, (k,k+1)`.
//!
//! The sign convention is `wedge(a, b) = a.x·b.y − a.y·b.x`, the determinant
//! of the matrix with columns `a` and `b`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{Mat2, UnimodularMap};
use crate::scalar::Scalar;

/// A point of the plane with finite coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point2<S> {
    x: S,
    y: S,
}

impl<S: Scalar> Point2<S> {
    pub fn new(x: S, y: S) -> Result<Self> {
        if x.is_finite_value() && y.is_finite_value() {
            Ok(Self { x, y })
        } else {
            Err(Error::NonFinite)
        }
    }

    /// For results of arithmetic on already-validated points.
    pub(crate) fn new_unchecked(x: S, y: S) -> Self {
        Self { x, y }
    }

    pub fn origin() -> Self {
        Self::new_unchecked(S::zero(), S::zero())
    }

    pub fn x(&self) -> &S {
        &self.x
    }

    pub fn y(&self) -> &S {
        &self.y
    }

    pub fn norm_sq(&self) -> S {
        self.x.clone() * self.x.clone() + self.y.clone() * self.y.clone()
    }

    pub fn to_f64(&self) -> Point2<f64> {
        Point2::new_unchecked(self.x.to_f64_lossy(), self.y.to_f64_lossy())
    }
}

impl Point2<f64> {
    pub fn xy(&self) -> (f64, f64) {
        (self.x, self.y)
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Polar angle in `[0, 2π)`.
    pub fn angle(&self) -> f64 {
        let t = self.y.atan2(self.x);
        if t < 0.0 {
            t + std::f64::consts::TAU
        } else {
            t
        }
    }

    pub fn distance(&self, other: &Self) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

impl<S: Scalar + Serialize> Serialize for Point2<S> {
    fn serialize<Se: serde::Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        (&self.x, &self.y).serialize(s)
    }
}

impl<'de, S: Scalar + Deserialize<'de>> Deserialize<'de> for Point2<S> {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let (x, y) = <(S, S)>::deserialize(de)?;
        Point2::new(x, y).map_err(serde::de::Error::custom)
    }
}

/// Signed area of the parallelogram spanned by `a` and `b`.
pub fn wedge<S: Scalar>(a: &Point2<S>, b: &Point2<S>) -> S {
    a.x.clone() * b.y.clone() - a.y.clone() * b.x.clone()
}

/// An ordered `(k+1)`-point configuration, `k ≥ 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Configuration<S> {
    points: Vec<Point2<S>>,
}

impl<S: Scalar> Configuration<S> {
    pub fn new(points: Vec<Point2<S>>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::TooFewPoints(points.len()));
        }
        Ok(Self { points })
    }

    pub(crate) fn new_unchecked(points: Vec<Point2<S>>) -> Self {
        debug_assert!(points.len() >= 2);
        Self { points }
    }

    /// Number of points minus one.
    pub fn k(&self) -> usize {
        self.points.len() - 1
    }

    pub fn points(&self) -> &[Point2<S>] {
        &self.points
    }

    /// The point with 1-based label `i`.
    pub fn point(&self, i: usize) -> &Point2<S> {
        &self.points[i - 1]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn into_points(self) -> Vec<Point2<S>> {
        self.points
    }

    /// Largest point norm, in `f64`.
    pub fn max_norm(&self) -> f64 {
        self.points
            .iter()
            .map(|p| p.norm_sq().to_f64_lossy().sqrt())
            .fold(0.0, f64::max)
    }

    pub fn to_f64(&self) -> Configuration<f64> {
        Configuration::new_unchecked(self.points.iter().map(Point2::to_f64).collect())
    }
}

impl Configuration<f64> {
    pub fn from_xy(coords: &[(f64, f64)]) -> Result<Self> {
        let points = coords
            .iter()
            .map(|&(x, y)| Point2::new(x, y))
            .collect::<Result<Vec<_>>>()?;
        Self::new(points)
    }
}

#[derive(Deserialize)]
#[serde(bound = "S: Scalar + Deserialize<'de>")]
struct ConfigurationRepr<S> {
    k: usize,
    points: Vec<Point2<S>>,
}

impl<S: Scalar + Serialize> Serialize for Configuration<S> {
    fn serialize<Se: serde::Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        #[derive(Serialize)]
        struct Ref<'a, S: Scalar + Serialize> {
            k: usize,
            points: &'a [Point2<S>],
        }
        Ref {
            k: self.k(),
            points: &self.points,
        }
        .serialize(s)
    }
}

impl<'de, S: Scalar + Deserialize<'de>> Deserialize<'de> for Configuration<S> {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let repr = ConfigurationRepr::<S>::deserialize(de)?;
        if repr.points.len() != repr.k + 1 {
            return Err(serde::de::Error::custom(format!(
                "k = {} but {} points given",
                repr.k,
                repr.points.len()
            )));
        }
        Configuration::new(repr.points).map_err(serde::de::Error::custom)
    }
}

/// Number of pairs `i < j` among `k + 1` labels.
pub const fn pair_count(k: usize) -> usize {
    k * (k + 1) / 2
}

/// Position of the 1-based pair `(i, j)`, `i < j ≤ k+1`, in lexicographic order.
pub fn pair_index(k: usize, i: usize, j: usize) -> usize {
    assert!(1 <= i && i < j && j <= k + 1, "pair ({i},{j}) out of range for k={k}");
    let n = k + 1;
    // Pairs starting with 1..i-1 come first: sum over a < i of (n - a).
    (i - 1) * n - (i - 1) * i / 2 + (j - i - 1)
}

/// All 1-based pairs in storage order.
pub fn pairs(k: usize) -> impl Iterator<Item = (usize, usize)> {
    let n = k + 1;
    (1..=n).flat_map(move |i| ((i + 1)..=n).map(move |j| (i, j)))
}

/// The vector of signed areas of a configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AreaType<S> {
    pub k: usize,
    pub entries: Vec<S>,
}

impl<S: Scalar> AreaType<S> {
    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[pair_index(self.k, i, j)]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// `‖self − other‖∞` in `f64`. Panics on mismatched `k`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.k, other.k, "area types of different sizes");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a.clone() - b.clone()).abs().to_f64_lossy())
            .fold(0.0, f64::max)
    }
}

pub fn area_type<S: Scalar>(x: &Configuration<S>) -> AreaType<S> {
    let pts = x.points();
    let entries = pairs(x.k())
        .map(|(i, j)| wedge(&pts[i - 1], &pts[j - 1]))
        .collect();
    AreaType { k: x.k(), entries }
}

/// `|wedge(x¹, x²)|`; `x` is `c`-non-degenerate iff this is `≥ c`.
pub fn degeneracy<S: Scalar>(x: &Configuration<S>) -> S {
    wedge(x.point(1), x.point(2)).abs()
}

pub fn apply_map<S: Scalar>(g: &UnimodularMap<S>, x: &Configuration<S>) -> Configuration<S> {
    Configuration::new_unchecked(x.points().iter().map(|p| g.apply(p)).collect())
}

/// Draws a determinant-one matrix with entries bounded by `bound`.
///
/// Entries are drawn uniformly from `[-bound, bound]`, draws with
/// `|det| < 1e-6` are discarded, and the rest are rescaled by `|det|^{-1/2}`
/// (columns swapped when `det < 0`). Rescaled draws that leave the box are
/// rejected too. For `bound` close to 1 this almost never succeeds, so a
/// uniformly random rotation is returned instead.
pub fn sample_unimodular<R: Rng + ?Sized>(bound: f64, rng: &mut R) -> Result<UnimodularMap<f64>> {
    if !bound.is_finite() || bound < 1.0 {
        return Err(Error::InvalidArgument(format!("bound must be >= 1, got {bound}")));
    }
    const MAX_ATTEMPTS: usize = 256;
    if bound > 1.0 + 1e-9 {
        for _ in 0..MAX_ATTEMPTS {
            let mut e = [0.0f64; 4];
            for v in &mut e {
                *v = rng.random_range(-bound..=bound);
            }
            let [mut a, mut b, mut c, mut d] = e;
            let det = a * d - b * c;
            if det.abs() < 1e-6 {
                continue;
            }
            if det < 0.0 {
                std::mem::swap(&mut a, &mut b);
                std::mem::swap(&mut c, &mut d);
            }
            let scale = det.abs().sqrt().recip();
            let m = Mat2::new(a * scale, b * scale, c * scale, d * scale);
            if m.max_abs_entry() <= bound {
                return UnimodularMap::new(m);
            }
        }
    }
    Ok(UnimodularMap::rotation(rng.random_range(0.0..std::f64::consts::TAU)))
}

/// Uniform point of the closed unit disk.
pub fn sample_unit_disk<R: Rng + ?Sized>(rng: &mut R) -> Point2<f64> {
    let r = rng.random::<f64>().sqrt();
    let t = rng.random_range(0.0..std::f64::consts::TAU);
    Point2::new_unchecked(r * t.cos(), r * t.sin())
}

/// A `(k+1)`-point configuration with i.i.d. uniform points in the unit disk,
/// rejection-sampled until `degeneracy ≥ min_degeneracy`.
pub fn sample_disk_configuration<R: Rng + ?Sized>(
    k: usize,
    min_degeneracy: f64,
    rng: &mut R,
) -> Configuration<f64> {
    assert!(k >= 1);
    assert!(min_degeneracy < 1.0, "no unit-disk configuration has degeneracy >= 1");
    loop {
        let pts: Vec<_> = (0..=k).map(|_| sample_unit_disk(rng)).collect();
        if wedge(&pts[0], &pts[1]).abs() >= min_degeneracy {
            return Configuration::new_unchecked(pts);
        }
    }
}
