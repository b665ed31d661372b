//! 2×2 matrices and the unimodular subgroup.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::config::Point2;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A general real 2×2 matrix, row-major `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mat2<S> {
    pub a: S,
    pub b: S,
    pub c: S,
    pub d: S,
}

impl<S: Scalar> Mat2<S> {
    pub fn new(a: S, b: S, c: S, d: S) -> Self {
        Self { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::new(S::one(), S::zero(), S::zero(), S::one())
    }

    /// The matrix whose columns are `u` and `v`.
    pub fn from_columns(u: &Point2<S>, v: &Point2<S>) -> Self {
        Self::new(u.x().clone(), v.x().clone(), u.y().clone(), v.y().clone())
    }

    pub fn det(&self) -> S {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    /// Inverse, or `None` when the determinant is degenerate for the backend.
    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det.is_degenerate_magnitude() {
            return None;
        }
        Some(Self::new(
            self.d.clone() / det.clone(),
            -self.b.clone() / det.clone(),
            -self.c.clone() / det.clone(),
            self.a.clone() / det,
        ))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        Self::new(
            a.clone() * rhs.a.clone() + b.clone() * rhs.c.clone(),
            a.clone() * rhs.b.clone() + b.clone() * rhs.d.clone(),
            c.clone() * rhs.a.clone() + d.clone() * rhs.c.clone(),
            c.clone() * rhs.b.clone() + d.clone() * rhs.d.clone(),
        )
    }

    pub fn apply(&self, p: &Point2<S>) -> Point2<S> {
        Point2::new_unchecked(
            self.a.clone() * p.x().clone() + self.b.clone() * p.y().clone(),
            self.c.clone() * p.x().clone() + self.d.clone() * p.y().clone(),
        )
    }

    /// Largest entry magnitude.
    pub fn max_abs_entry(&self) -> f64 {
        [&self.a, &self.b, &self.c, &self.d]
            .iter()
            .map(|v| v.to_f64_lossy().abs())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise difference, in `f64`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        [
            (&self.a, &other.a),
            (&self.b, &other.b),
            (&self.c, &other.c),
            (&self.d, &other.d),
        ]
        .iter()
        .map(|(u, v)| (u.to_f64_lossy() - v.to_f64_lossy()).abs())
        .fold(0.0, f64::max)
    }

    pub fn to_f64(&self) -> Mat2<f64> {
        Mat2::new(
            self.a.to_f64_lossy(),
            self.b.to_f64_lossy(),
            self.c.to_f64_lossy(),
            self.d.to_f64_lossy(),
        )
    }
}

impl<S: fmt::Display> fmt::Display for Mat2<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// Tolerance on `|det - 1|` for floating backends.
pub const UNIMODULAR_TOLERANCE: f64 = 1e-9;

/// An element of SL₂(ℝ): a 2×2 matrix with determinant one.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct UnimodularMap<S>(Mat2<S>);

impl<S: Scalar> UnimodularMap<S> {
    /// Validates `det = 1` exactly (rational) or within [`UNIMODULAR_TOLERANCE`] (float).
    pub fn new(m: Mat2<S>) -> Result<Self> {
        let det = m.det();
        let ok = if S::is_exact() {
            det == S::one()
        } else {
            (det.to_f64_lossy() - 1.0).abs() <= UNIMODULAR_TOLERANCE
        };
        if ok {
            Ok(Self(m))
        } else {
            Err(Error::InvalidArgument(format!(
                "determinant {} is not 1",
                det.to_f64_lossy()
            )))
        }
    }

    pub fn identity() -> Self {
        Self(Mat2::identity())
    }

    pub(crate) fn new_unchecked(m: Mat2<S>) -> Self {
        Self(m)
    }

    pub fn matrix(&self) -> &Mat2<S> {
        &self.0
    }

    pub fn into_matrix(self) -> Mat2<S> {
        self.0
    }

    pub fn apply(&self, p: &Point2<S>) -> Point2<S> {
        self.0.apply(p)
    }

    pub fn compose(&self, rhs: &Self) -> Self {
        Self(self.0.mul(&rhs.0))
    }

    /// The inverse `[[d, -b], [-c, a]]`; no division needed when det = 1.
    pub fn inverse(&self) -> Self {
        let m = &self.0;
        Self(Mat2::new(
            m.d.clone(),
            -m.b.clone(),
            -m.c.clone(),
            m.a.clone(),
        ))
    }
}

impl Mat2<f64> {
    /// Spectral norm (largest singular value).
    pub fn operator_norm(&self) -> f64 {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let fro = a * a + b * b + c * c + d * d;
        let det = a * d - b * c;
        let disc = (fro * fro - 4.0 * det * det).max(0.0).sqrt();
        ((fro + disc) / 2.0).sqrt()
    }
}

impl UnimodularMap<f64> {
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self(Mat2::new(c, -s, s, c))
    }
}

impl<'de, S: Scalar + Deserialize<'de>> Deserialize<'de> for UnimodularMap<S> {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let m = Mat2::<S>::deserialize(de)?;
        Self::new(m).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;
    use num_rational::BigRational;

    #[test]
    fn inverse_round_trip() {
        let m = Mat2::new(2.0, 1.0, 1.0, 1.0);
        let p = m.mul(&m.inverse().unwrap());
        assert!(p.max_abs_diff(&Mat2::identity()) < 1e-15);
        assert!(Mat2::new(1.0, 2.0, 2.0, 4.0).inverse().is_none());
    }

    #[test]
    fn rejects_non_unimodular() {
        assert!(UnimodularMap::new(Mat2::new(2.0, 0.0, 0.0, 1.0)).is_err());
        let exact: Mat2<BigRational> =
            Mat2::new(rational(2, 1), rational(0, 1), rational(0, 1), rational(1, 2));
        assert!(UnimodularMap::new(exact).is_ok());
    }

    #[test]
    fn unimodular_inverse_is_adjugate() {
        let g = UnimodularMap::new(Mat2::new(2.0, 3.0, 1.0, 2.0)).unwrap();
        let id = g.compose(&g.inverse());
        assert_eq!(id.matrix(), &Mat2::identity());
    }

    #[test]
    fn deserialize_validates() {
        let bad: std::result::Result<UnimodularMap<f64>, _> =
            serde_json::from_str(r#"{"a":1,"b":0,"c":0,"d":3}"#);
        assert!(bad.is_err());
    }
}
