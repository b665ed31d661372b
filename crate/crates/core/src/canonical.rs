//! Orbit machinery for the SL₂(ℝ) action on configurations.
//!
//! For a non-degenerate `x` (first two points independent) there is exactly
//! one `g ∈ SL₂(ℝ)` sending `x¹ ↦ (1,0)` and `x² ↦ (0, wedge(x¹,x²))`. The
//! image `A(x) = (gx¹, …, gx^{k+1})` has the fixed prefix `(1,0,0)`, so it is
//! stored as the `2k−1` remaining coordinates
//!
//! ```text
//! t = (wedge(x¹,x²), gx³, gx⁴, …, gx^{k+1})
//! ```
//!
//! Two non-degenerate configurations share an area type iff their canonical
//! forms coincide.

use serde::{Deserialize, Serialize};

use crate::config::{area_type, degeneracy, wedge, Configuration, Point2};
use crate::error::{Error, Result};
use crate::matrix::{Mat2, UnimodularMap};
use crate::scalar::Scalar;

/// The `2k−1` free coordinates of `A(x)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CanonicalForm<S> {
    pub k: usize,
    pub t: Vec<S>,
}

impl<S: Scalar> CanonicalForm<S> {
    pub fn dim(&self) -> usize {
        self.t.len()
    }

    /// The configuration `((1,0), (0,t₁), (t₂,t₃), …)` in canonical position.
    pub fn configuration(&self) -> Configuration<S> {
        let mut pts = Vec::with_capacity(self.k + 1);
        pts.push(Point2::new_unchecked(S::one(), S::zero()));
        pts.push(Point2::new_unchecked(S::zero(), self.t[0].clone()));
        for pair in self.t[1..].chunks_exact(2) {
            pts.push(Point2::new_unchecked(pair[0].clone(), pair[1].clone()));
        }
        Configuration::new_unchecked(pts)
    }

    /// Euclidean distance on the flat.
    pub fn distance(&self, other: &Self) -> f64 {
        assert_eq!(self.k, other.k, "canonical forms of different sizes");
        self.t
            .iter()
            .zip(&other.t)
            .map(|(a, b)| {
                let d = (a.clone() - b.clone()).to_f64_lossy();
                d * d
            })
            .sum::<f64>()
            .sqrt()
    }

    pub fn to_f64(&self) -> CanonicalForm<f64> {
        CanonicalForm {
            k: self.k,
            t: self.t.iter().map(Scalar::to_f64_lossy).collect(),
        }
    }
}

/// A canonical form together with the map that produced it.
#[derive(Clone, Debug)]
pub struct Canonicalized<S> {
    pub form: CanonicalForm<S>,
    /// `g` with `gx¹ = (1,0)`, `gx² = (0, t₁)`.
    pub map: UnimodularMap<S>,
    /// `degeneracy(x)`; the conditioning of the inverse used to build `map`.
    pub degeneracy: S,
}

fn nondegenerate_wedge<S: Scalar>(x: &Configuration<S>) -> Result<S> {
    let w = wedge(x.point(1), x.point(2));
    if w.is_degenerate_magnitude() {
        Err(Error::DegenerateInput(w.to_f64_lossy().abs()))
    } else {
        Ok(w)
    }
}

/// Canonical form, map and conditioning in one pass.
pub fn canonicalize<S: Scalar>(x: &Configuration<S>) -> Result<Canonicalized<S>> {
    let w = nondegenerate_wedge(x)?;
    let basis = Mat2::from_columns(x.point(1), x.point(2));
    let inv = basis.inverse().ok_or(Error::DegenerateInput(w.to_f64_lossy().abs()))?;
    let target = Mat2::new(S::one(), S::zero(), S::zero(), w.clone());
    let g = target.mul(&inv);
    // det(g) = w·det(basis)⁻¹ is exactly 1 for exact backends; in floating
    // point the rounding error can exceed the validation tolerance when w is
    // close to the degeneracy cutoff.
    let map = if S::is_exact() {
        UnimodularMap::new(g)?
    } else {
        UnimodularMap::new_unchecked(g)
    };
    Ok(Canonicalized {
        form: canonical_form_from_wedge(x, w.clone()),
        map,
        degeneracy: w.abs(),
    })
}

fn canonical_form_from_wedge<S: Scalar>(x: &Configuration<S>, w: S) -> CanonicalForm<S> {
    let (x1, x2) = (x.point(1), x.point(2));
    let mut t = Vec::with_capacity(2 * x.k() - 1);
    t.push(w.clone());
    // g·p = (wedge(p, x²)/w, wedge(x¹, p)), the same product g·p written in
    // area-type entries; it is exactly invariant under p ↦ hp for det h = 1.
    for p in &x.points()[2..] {
        t.push(wedge(p, x2) / w.clone());
        t.push(wedge(x1, p));
    }
    CanonicalForm { k: x.k(), t }
}

pub fn canonical_form<S: Scalar>(x: &Configuration<S>) -> Result<CanonicalForm<S>> {
    let w = nondegenerate_wedge(x)?;
    Ok(canonical_form_from_wedge(x, w))
}

/// Result of [`matching_transform`].
#[derive(Clone, Debug)]
pub struct Matching<S> {
    /// `(y¹ y²)(x¹ x²)⁻¹`; determinant `wedge(y¹,y²)/wedge(x¹,x²)`.
    pub matrix: Mat2<S>,
    /// `degeneracy(x)`, the conditioning of the inverse.
    pub source_degeneracy: S,
}

impl<S: Scalar> Matching<S> {
    /// `Some` when the matrix has determinant one for the backend.
    pub fn unimodular(&self) -> Option<UnimodularMap<S>> {
        UnimodularMap::new(self.matrix.clone()).ok()
    }

    /// `‖g x^i − y^i‖` for every label `i`, in `f64`.
    pub fn residuals(&self, x: &Configuration<S>, y: &Configuration<S>) -> Vec<f64> {
        x.points()
            .iter()
            .zip(y.points())
            .map(|(p, q)| {
                let gp = self.matrix.apply(p);
                let dx = (gp.x().clone() - q.x().clone()).to_f64_lossy();
                let dy = (gp.y().clone() - q.y().clone()).to_f64_lossy();
                dx.hypot(dy)
            })
            .collect()
    }

    /// Whether `g` maps every point of `x` onto `y` (exactly, or within `tol`).
    pub fn maps_onto(&self, x: &Configuration<S>, y: &Configuration<S>, tol: f64) -> bool {
        if S::is_exact() {
            x.points()
                .iter()
                .zip(y.points())
                .all(|(p, q)| &self.matrix.apply(p) == q)
        } else {
            self.residuals(x, y).iter().all(|&r| r <= tol)
        }
    }
}

/// The linear map sending `x¹ ↦ y¹` and `x² ↦ y²`.
pub fn matching_transform<S: Scalar>(
    x: &Configuration<S>,
    y: &Configuration<S>,
) -> Result<Matching<S>> {
    if x.k() != y.k() {
        return Err(Error::MismatchedK(x.k(), y.k()));
    }
    let w = nondegenerate_wedge(x)?;
    nondegenerate_wedge(y)?;
    let inv = Mat2::from_columns(x.point(1), x.point(2))
        .inverse()
        .ok_or(Error::DegenerateInput(w.to_f64_lossy().abs()))?;
    let matrix = Mat2::from_columns(y.point(1), y.point(2)).mul(&inv);
    Ok(Matching {
        matrix,
        source_degeneracy: w.abs(),
    })
}

pub fn canonical_distance<S: Scalar>(x: &Configuration<S>, y: &Configuration<S>) -> Result<f64> {
    if x.k() != y.k() {
        return Err(Error::MismatchedK(x.k(), y.k()));
    }
    Ok(canonical_form(x)?.distance(&canonical_form(y)?))
}

/// `‖area_type(x) − area_type(y)‖∞ < tol`.
///
/// Works for degenerate inputs too. For `c`-non-degenerate unit-disk inputs,
/// a canonical distance below `tol/6` implies `true`.
pub fn same_area_type<S: Scalar>(x: &Configuration<S>, y: &Configuration<S>, tol: f64) -> bool {
    x.k() == y.k() && area_type(x).max_abs_diff(&area_type(y)) < tol
}

/// Evaluation of both directions of the approximate-equivalence estimates for
/// one pair of configurations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub k: usize,
    pub c: f64,
    pub eps: f64,
    /// `max_{i<j} |x^i·x^{j⊥} − y^i·y^{j⊥}|`
    pub area_discrepancy: f64,
    /// `‖A(x) − A(y)‖`
    pub canonical_distance: f64,
    pub premise_i_holds: bool,
    /// `√(5k)/c · eps`
    pub bound_i: f64,
    pub bound_i_satisfied: bool,
    /// `bound_i − canonical_distance`
    pub slack_i: f64,
    /// `eps · √(k + (k−1)(1/c + 1/c²)²)`, the bound that follows when
    /// canonical coordinates are bounded by `1/c` rather than by `1`.
    pub bound_i_worst_case: f64,
    pub bound_i_worst_case_satisfied: bool,
    pub premise_ii_holds: bool,
    /// `6 · eps`
    pub bound_ii: f64,
    pub bound_ii_satisfied: bool,
    /// `bound_ii − area_discrepancy`
    pub slack_ii: f64,
}

impl StabilityReport {
    /// Implication (i): premise ⇒ bound.
    pub fn implication_i_holds(&self) -> bool {
        !self.premise_i_holds || self.bound_i_satisfied
    }

    pub fn implication_i_worst_case_holds(&self) -> bool {
        !self.premise_i_holds || self.bound_i_worst_case_satisfied
    }

    /// Implication (ii): premise ⇒ bound.
    pub fn implication_ii_holds(&self) -> bool {
        !self.premise_ii_holds || self.bound_ii_satisfied
    }
}

/// Norm slack admitted on the unit-disk precondition for rounding.
const DISK_SLACK: f64 = 1e-12;

/// Checks both approximation implications for `c`-non-degenerate
/// configurations in the closed unit disk.
pub fn stability_check(
    x: &Configuration<f64>,
    y: &Configuration<f64>,
    c: f64,
    eps: f64,
) -> Result<StabilityReport> {
    if x.k() != y.k() {
        return Err(Error::MismatchedK(x.k(), y.k()));
    }
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::PreconditionViolated(format!("c = {c} not in (0, 1)")));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::PreconditionViolated(format!("eps = {eps} not in (0, 1)")));
    }
    for (name, cfg) in [("x", x), ("y", y)] {
        if cfg.max_norm() > 1.0 + DISK_SLACK {
            return Err(Error::PreconditionViolated(format!(
                "{name} has a point of norm {} > 1",
                cfg.max_norm()
            )));
        }
        if degeneracy(cfg) < c {
            return Err(Error::PreconditionViolated(format!(
                "{name} is {c}-degenerate (|wedge| = {})",
                degeneracy(cfg)
            )));
        }
    }
    let k = x.k();
    let kf = k as f64;
    let area_discrepancy = area_type(x).max_abs_diff(&area_type(y));
    let dist = canonical_distance(x, y)?;
    let bound_i = (5.0 * kf).sqrt() / c * eps;
    let per_coord = 1.0 / c + 1.0 / (c * c);
    let bound_i_worst_case = eps * (kf + (kf - 1.0) * per_coord * per_coord).sqrt();
    let bound_ii = 6.0 * eps;
    Ok(StabilityReport {
        k,
        c,
        eps,
        area_discrepancy,
        canonical_distance: dist,
        premise_i_holds: area_discrepancy < eps,
        bound_i,
        bound_i_satisfied: dist < bound_i,
        slack_i: bound_i - dist,
        bound_i_worst_case,
        bound_i_worst_case_satisfied: dist < bound_i_worst_case,
        premise_ii_holds: dist < eps,
        bound_ii,
        bound_ii_satisfied: area_discrepancy < bound_ii,
        slack_ii: bound_ii - area_discrepancy,
    })
}

/// The three neighborhood gauges of `y` around `x`: area discrepancy,
/// canonical distance, and the residual of the explicit orbit map.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NeighborhoodGauges {
    /// Membership gauge for `S₁`: `max |x^i·x^{j⊥} − y^i·y^{j⊥}|`.
    pub area_discrepancy: f64,
    /// Membership gauge for `S₂`: `‖A(x) − A(y)‖`.
    pub canonical_distance: f64,
    /// Upper bound on the `S₃` gauge `inf_g ‖y − gx‖`, realized by
    /// `g = h⁻¹g_x` where `g_x` and `h` canonicalize `x` and `y`.
    pub orbit_residual: f64,
    /// Operator norm `‖h⁻¹‖`.
    pub inverse_norm: f64,
}

pub fn neighborhood_gauges(x: &Configuration<f64>, y: &Configuration<f64>) -> Result<NeighborhoodGauges> {
    if x.k() != y.k() {
        return Err(Error::MismatchedK(x.k(), y.k()));
    }
    let cx = canonicalize(x)?;
    let cy = canonicalize(y)?;
    let h_inv = cy.map.inverse();
    let m = h_inv.compose(&cx.map);
    let orbit_residual = x
        .points()
        .iter()
        .zip(y.points())
        .map(|(p, q)| {
            let mp = m.apply(p);
            let (dx, dy) = (mp.x() - q.x(), mp.y() - q.y());
            dx * dx + dy * dy
        })
        .sum::<f64>()
        .sqrt();
    Ok(NeighborhoodGauges {
        area_discrepancy: area_type(x).max_abs_diff(&area_type(y)),
        canonical_distance: cx.form.distance(&cy.form),
        orbit_residual,
        inverse_norm: h_inv.matrix().operator_norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{apply_map, sample_disk_configuration, sample_unimodular};
    use crate::scalar::rational;
    use num_rational::BigRational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cfg(pts: &[(f64, f64)]) -> Configuration<f64> {
        Configuration::from_xy(pts).unwrap()
    }

    /// Applies `g = diag(1, w)·(x¹ x²)⁻¹` literally, without the wedge identity.
    fn canonical_by_matrix(x: &Configuration<f64>) -> Vec<f64> {
        let (x1, x2) = (x.point(1), x.point(2));
        let det = x1.x() * x2.y() - x2.x() * x1.y();
        let inv = [[x2.y() / det, -x2.x() / det], [-x1.y() / det, x1.x() / det]];
        let g = [[inv[0][0], inv[0][1]], [det * inv[1][0], det * inv[1][1]]];
        let mut t = vec![det];
        for p in &x.points()[2..] {
            t.push(g[0][0] * p.x() + g[0][1] * p.y());
            t.push(g[1][0] * p.x() + g[1][1] * p.y());
        }
        t
    }

    #[test]
    fn canonical_examples() {
        let f = canonical_form(&cfg(&[(1.0, 0.0), (0.0, 5.0), (2.0, 3.0)])).unwrap();
        assert_eq!(f.t, vec![5.0, 2.0, 3.0]);
        let f = canonical_form(&cfg(&[(0.0, 1.0), (-1.0, 0.0)])).unwrap();
        assert_eq!(f.t, vec![1.0]);
        assert!(matches!(
            canonical_form(&cfg(&[(1.0, 0.0), (2.0, 0.0), (0.0, 1.0)])),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn canonical_matches_explicit_matrix_route() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..2000 {
            let x = sample_disk_configuration(3, 0.05, &mut rng);
            let t = canonical_form(&x).unwrap().t;
            let oracle = canonical_by_matrix(&x);
            for (a, b) in t.iter().zip(&oracle) {
                assert!((a - b).abs() < 1e-10 * (1.0 + b.abs()), "{t:?} vs {oracle:?}");
            }
        }
    }

    #[test]
    fn canonicalize_map_places_first_points() {
        let x = cfg(&[(0.3, 0.4), (-0.2, 0.7), (0.5, -0.1)]);
        let c = canonicalize(&x).unwrap();
        let p1 = c.map.apply(x.point(1));
        let p2 = c.map.apply(x.point(2));
        assert!((p1.x() - 1.0).abs() < 1e-14 && p1.y().abs() < 1e-14);
        assert!(p2.x().abs() < 1e-14 && (p2.y() - c.form.t[0]).abs() < 1e-14);
        assert!((c.degeneracy - degeneracy(&x)).abs() < 1e-15);
    }

    #[test]
    fn matching_examples() {
        let x = cfg(&[(0.3, 0.4), (-0.2, 0.7), (0.5, -0.1)]);
        let m = matching_transform(&x, &x).unwrap();
        assert!(m.matrix.max_abs_diff(&Mat2::identity()) < 1e-15);

        let x = cfg(&[(1.0, 0.0), (0.0, 1.0)]);
        let y = cfg(&[(0.0, 1.0), (-1.0, 0.0)]);
        let m = matching_transform(&x, &y).unwrap();
        assert_eq!(m.matrix, Mat2::new(0.0, -1.0, 1.0, 0.0));

        let dx = cfg(&[(1.0, 0.0), (3.0, 0.0)]);
        assert!(matches!(matching_transform(&dx, &x), Err(Error::DegenerateInput(_))));
        let x3 = cfg(&[(1.0, 0.0), (0.0, 1.0), (1.0, 1.0)]);
        assert!(matches!(matching_transform(&x3, &x), Err(Error::MismatchedK(2, 1))));
    }

    #[test]
    fn matching_determinant_is_wedge_ratio() {
        let x = cfg(&[(1.0, 0.0), (0.0, 2.0)]);
        let y = cfg(&[(1.0, 0.0), (0.0, 3.0)]);
        let m = matching_transform(&x, &y).unwrap();
        assert!((m.matrix.det() - 1.5).abs() < 1e-15);
        assert!(m.unimodular().is_none());
    }

    #[test]
    fn distance_examples() {
        let x = cfg(&[(0.3, 0.4), (-0.2, 0.7), (0.5, -0.1)]);
        assert_eq!(canonical_distance(&x, &x).unwrap(), 0.0);
        let a = cfg(&[(1.0, 0.0), (0.0, 1.0)]);
        let b = cfg(&[(1.0, 0.0), (0.0, 2.0)]);
        assert_eq!(canonical_distance(&a, &b).unwrap(), 1.0);
    }

    #[test]
    fn same_area_type_examples() {
        let a = cfg(&[(1.0, 0.0), (0.0, 1.0)]);
        let b = cfg(&[(1.0, 0.0), (0.0, 1.1)]);
        assert!(same_area_type(&a, &a, 1e-300));
        assert!(!same_area_type(&a, &b, 0.05));
        let deg = cfg(&[(1.0, 0.0), (2.0, 0.0)]);
        assert!(same_area_type(&deg, &cfg(&[(0.0, 1.0), (0.0, 3.0)]), 1e-12));
    }

    #[test]
    fn orbit_sampling() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let x = sample_disk_configuration(2, 0.25, &mut rng);
            let g = sample_unimodular(4.0, &mut rng).unwrap();
            let y = apply_map(&g, &x);
            assert!(canonical_distance(&x, &y).unwrap() < 1e-7);
            assert!(same_area_type(&x, &y, 1e-6));
        }
    }

    #[test]
    fn exact_backend_round_trip() {
        let q = |n, d| rational(n, d);
        let x: Configuration<BigRational> = Configuration::new(vec![
            Point2::new(q(2, 3), q(1, 5)).unwrap(),
            Point2::new(q(-1, 4), q(3, 7)).unwrap(),
            Point2::new(q(5, 9), q(-2, 3)).unwrap(),
            Point2::new(q(1, 2), q(1, 2)).unwrap(),
        ])
        .unwrap();
        let c = canonicalize(&x).unwrap();
        assert_eq!(canonical_form(&c.form.configuration()).unwrap(), c.form);
        assert_eq!(c.map.matrix().det(), q(1, 1));
        // The canonicalizing map really produces A(x).
        let ax = crate::config::apply_map(&c.map, &x);
        assert_eq!(ax, c.form.configuration());
        let m = matching_transform(&x, &ax).unwrap();
        assert!(m.maps_onto(&x, &ax, 0.0));
    }

    #[test]
    fn stability_self_pair() {
        let x = cfg(&[(0.9, 0.1), (-0.1, 0.8), (0.3, -0.5)]);
        let r = stability_check(&x, &x, 0.25, 0.01).unwrap();
        assert!(r.premise_i_holds && r.premise_ii_holds);
        assert!(r.implication_i_holds() && r.implication_ii_holds());
        assert!((r.slack_ii - 0.06).abs() < 1e-15);
        assert!((r.slack_i - 10f64.sqrt() / 0.25 * 0.01).abs() < 1e-15);
    }

    #[test]
    fn stability_preconditions() {
        let x = cfg(&[(0.9, 0.1), (-0.1, 0.8), (0.3, -0.5)]);
        let far = cfg(&[(1.5, 0.0), (0.0, 0.8), (0.3, -0.5)]);
        let deg = cfg(&[(0.1, 0.0), (0.0, 0.1), (0.3, -0.5)]);
        assert!(matches!(stability_check(&x, &far, 0.25, 0.1), Err(Error::PreconditionViolated(_))));
        assert!(matches!(stability_check(&x, &deg, 0.25, 0.1), Err(Error::PreconditionViolated(_))));
        assert!(matches!(stability_check(&x, &x, 1.0, 0.1), Err(Error::PreconditionViolated(_))));
        assert!(matches!(stability_check(&x, &x, 0.25, 1.0), Err(Error::PreconditionViolated(_))));
    }

    /// Near-extremal pair: `x¹ ⊥̸ x²` barely `c`-non-degenerate while
    /// `|wedge(x³, x²)| = 1`. The area discrepancy is `δ` but the canonical
    /// coordinate `wedge(x³,x²)/wedge(x¹,x²)` moves by about `δ/c²`.
    #[test]
    fn sqrt5k_constant_fails_near_the_degeneracy_boundary() {
        let c = 0.25;
        let delta = 1e-3;
        let x = cfg(&[(c, 0.0), (0.0, 1.0), (1.0, 0.0)]);
        let y = cfg(&[(c + delta, 0.0), (0.0, 1.0), (1.0, 0.0)]);
        let eps = delta * 1.0001;
        let r = stability_check(&x, &y, c, eps).unwrap();
        assert!(r.premise_i_holds);
        assert!(!r.bound_i_satisfied, "{r:?}");
        assert!(r.bound_i_worst_case_satisfied, "{r:?}");
    }

    #[test]
    fn neighborhood_gauges_on_orbit() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x = sample_disk_configuration(3, 0.25, &mut rng);
        let g = sample_unimodular(3.0, &mut rng).unwrap();
        let y = apply_map(&g, &x);
        let n = neighborhood_gauges(&x, &y).unwrap();
        assert!(n.area_discrepancy < 1e-12);
        assert!(n.canonical_distance < 1e-10);
        assert!(n.orbit_residual < 1e-10);
    }
}
