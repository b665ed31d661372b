//! Scalar backends.
//!
//! Every geometric operation in [`crate::config`] and [`crate::canonical`] is
//! written against [`Scalar`], which only asks for ordered-field arithmetic.
//! Floating-point types treat tiny wedges as degenerate; rational types use
//! exact zero tests.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed, ToPrimitive, Zero};

/// An ordered field usable as a coordinate type.
pub trait Scalar: Clone + Debug + PartialOrd + Num + Signed + Send + Sync {
    /// `|wedge(x1, x2)|` strictly below this value makes `(x1 x2)` singular.
    fn degeneracy_tolerance() -> Self;

    /// Rejects NaN and infinities. Exact types are always finite.
    fn is_finite_value(&self) -> bool;

    /// Lossy conversion used for norms and reporting.
    fn to_f64_lossy(&self) -> f64;

    /// Lossy conversion used when lifting floating data into this backend.
    fn from_f64_lossy(value: f64) -> Option<Self>;

    /// True when arithmetic is exact (no rounding tolerance applies).
    fn is_exact() -> bool {
        false
    }

    /// Whether `|self|` counts as zero for degeneracy purposes.
    fn is_degenerate_magnitude(&self) -> bool {
        if Self::is_exact() {
            self.is_zero()
        } else {
            self.abs() < Self::degeneracy_tolerance()
        }
    }
}

impl Scalar for f64 {
    fn degeneracy_tolerance() -> Self {
        1e-12
    }

    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }

    fn to_f64_lossy(&self) -> f64 {
        *self
    }

    fn from_f64_lossy(value: f64) -> Option<Self> {
        value.is_finite().then_some(value)
    }
}

impl Scalar for f32 {
    // f32 carries ~7 significant digits; 1e-12 would be meaningless here.
    fn degeneracy_tolerance() -> Self {
        1e-6
    }

    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }

    fn to_f64_lossy(&self) -> f64 {
        f64::from(*self)
    }

    fn from_f64_lossy(value: f64) -> Option<Self> {
        let v = value as f32;
        v.is_finite().then_some(v)
    }
}

impl Scalar for Ratio<i64> {
    fn degeneracy_tolerance() -> Self {
        Self::zero()
    }

    fn is_finite_value(&self) -> bool {
        true
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn from_f64_lossy(value: f64) -> Option<Self> {
        Ratio::<i64>::approximate_float(value)
    }

    fn is_exact() -> bool {
        true
    }
}

impl Scalar for BigRational {
    fn degeneracy_tolerance() -> Self {
        Self::zero()
    }

    fn is_finite_value(&self) -> bool {
        true
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn from_f64_lossy(value: f64) -> Option<Self> {
        BigRational::from_float(value)
    }

    fn is_exact() -> bool {
        true
    }
}

/// Builds an exact rational from an integer numerator and denominator.
pub fn rational(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_tolerance() {
        assert!(1e-13f64.is_degenerate_magnitude());
        assert!(!1e-11f64.is_degenerate_magnitude());
        assert!(!f64::NAN.is_finite_value());
    }

    #[test]
    fn exact_zero_only() {
        let tiny = rational(1, 1_000_000_000_000_000);
        assert!(!tiny.is_degenerate_magnitude());
        assert!(BigRational::zero().is_degenerate_magnitude());
        assert_eq!(BigRational::from_f64_lossy(0.5), Some(rational(1, 2)));
    }
}
