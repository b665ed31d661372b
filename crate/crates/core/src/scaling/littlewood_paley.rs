//! Dyadic frequency pieces of grid measures on the periodic unit square.
//!
//! Frequencies are in cycles per unit length, so the `N×N` grid resolves
//! `|ξ_x|, |ξ_y| ≤ N/2`. A piece at scale `j` keeps the band where
//! `2^{-j}|ξ|` lies in the cutoff's support. Outputs are in density units: the
//! uniform measure has constant density one.

use std::sync::Arc;

use rayon::prelude::*;
use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fit::{least_squares, LinearFit};
use crate::generators::GridMeasure;

/// Added to norms before taking `log₂` so empty bands fit to a flat line.
pub const NOISE_FLOOR: f64 = 1e-9;

/// `6t⁵ − 15t⁴ + 10t³` clamped to `[0, 1]`.
fn smoothstep(t: f64) -> f64 {
    let t = t.clamp(0.0, 1.0);
    t * t * t * (t * (6.0 * t - 15.0) + 10.0)
}

/// Radial cutoff profile applied at `r = 2^{-j}|ξ|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Cutoff {
    /// Equal to one on `[1, 2]`, supported in `[1/2, 4]`.
    Plateau,
    /// `χ(r/2) − χ(r)` with `χ = 1` on `[0, 1]` and `0` past `2`; the pieces
    /// over consecutive scales telescope.
    Partition,
}

impl Cutoff {
    pub fn value(self, r: f64) -> f64 {
        match self {
            Cutoff::Plateau => {
                if !(r > 0.5 && r < 4.0) {
                    return 0.0;
                }
                let l = r.log2();
                if l < 0.0 {
                    smoothstep(l + 1.0)
                } else if l <= 1.0 {
                    1.0
                } else {
                    smoothstep(2.0 - l)
                }
            }
            Cutoff::Partition => low_profile(r / 2.0) - low_profile(r),
        }
    }

    /// Outer edge of the support in units of `2^j`.
    pub fn support_outer(self) -> f64 {
        4.0
    }
}

/// `χ`: one on `[0, 1]`, zero past `2`, smooth in `log₂ r` between.
pub fn low_profile(r: f64) -> f64 {
    if r <= 1.0 {
        1.0
    } else if r >= 2.0 {
        0.0
    } else {
        1.0 - smoothstep(r.log2())
    }
}

/// Signed frequency of DFT index `i` on an `n`-point axis.
pub fn frequency(i: usize, n: usize) -> f64 {
    if i < n.div_ceil(2) {
        i as f64
    } else {
        i as f64 - n as f64
    }
}

/// Forward 2D transform of a density, cached for repeated filtering.
pub struct Spectrum {
    n: usize,
    data: Vec<Complex<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for Spectrum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Spectrum").field("n", &self.n).finish_non_exhaustive()
    }
}

fn fft_rows(data: &mut [Complex<f64>], n: usize, fft: &Arc<dyn Fft<f64>>) {
    data.par_chunks_mut(n).for_each(|row| fft.process(row));
}

fn transpose(data: &[Complex<f64>], n: usize) -> Vec<Complex<f64>> {
    let mut out = vec![Complex::new(0.0, 0.0); n * n];
    for iy in 0..n {
        for ix in 0..n {
            out[ix * n + iy] = data[iy * n + ix];
        }
    }
    out
}

fn fft2(data: &mut Vec<Complex<f64>>, n: usize, fft: &Arc<dyn Fft<f64>>) {
    fft_rows(data, n, fft);
    let mut t = transpose(data, n);
    fft_rows(&mut t, n, fft);
    *data = transpose(&t, n);
}

impl Spectrum {
    /// Transforms row-major density values of an `n×n` grid.
    pub fn of_density(n: usize, density: &[f64]) -> Result<Self> {
        if n == 0 || density.len() != n * n {
            return Err(Error::InvalidArgument(format!("expected {} values, got {}", n * n, density.len())));
        }
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(n);
        let inverse = planner.plan_fft_inverse(n);
        let mut data: Vec<Complex<f64>> = density.iter().map(|&v| Complex::new(v, 0.0)).collect();
        fft2(&mut data, n, &forward);
        Ok(Self { n, data, inverse })
    }

    pub fn of_measure(mu: &GridMeasure) -> Result<Self> {
        Self::of_density(mu.n(), &mu.density())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Unnormalized DFT coefficients, row-major.
    pub fn coefficients(&self) -> &[Complex<f64>] {
        &self.data
    }

    /// Inverse transform after multiplying by `multiplier(|ξ|)`.
    pub fn filter<F: Fn(f64) -> f64>(&self, multiplier: F) -> Filtered {
        let n = self.n;
        let mut data = self.data.clone();
        for iy in 0..n {
            let fy = frequency(iy, n);
            for ix in 0..n {
                let fx = frequency(ix, n);
                data[iy * n + ix] *= multiplier(fx.hypot(fy));
            }
        }
        fft2(&mut data, n, &self.inverse);
        let scale = 1.0 / (n * n) as f64;
        let imag_residue = data.iter().map(|c| (c.im * scale).abs()).fold(0.0, f64::max);
        Filtered {
            n,
            values: data.iter().map(|c| c.re * scale).collect(),
            imag_residue,
        }
    }

    /// Largest `j` whose band `2^j·[·, 4]` stays within the Nyquist limit `N/2`.
    pub fn max_scale(&self) -> Option<u32> {
        let half = self.n / 2;
        (0..usize::BITS).take_while(|&j| (1usize << (j + 2)) <= half).last()
    }

    /// Piece `μ_j` for the given cutoff.
    pub fn piece(&self, j: u32, cutoff: Cutoff) -> Result<Filtered> {
        if self.max_scale().is_none_or(|m| j > m) {
            return Err(Error::ScaleOutOfRange { j, n: self.n });
        }
        let scale = 2f64.powi(j as i32);
        Ok(self.filter(|r| cutoff.value(r / scale)))
    }

    /// `χ(2^{-j}|ξ|)` applied to the measure: everything below the band of
    /// `Cutoff::Partition` at scale `j`.
    pub fn low_pass(&self, j: u32) -> Filtered {
        let scale = 2f64.powi(j as i32);
        self.filter(|r| low_profile(r / scale))
    }
}

/// Real-space output of a frequency filter.
#[derive(Clone, Debug, PartialEq)]
pub struct Filtered {
    pub n: usize,
    /// Row-major real parts.
    pub values: Vec<f64>,
    /// Largest imaginary part discarded by the inverse transform.
    pub imag_residue: f64,
}

impl Filtered {
    pub fn sup(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `(∫_{[0,1]²} |f|²)^{1/2}` with cell area `1/N²`.
    pub fn l2(&self) -> f64 {
        (self.values.iter().map(|v| v * v).sum::<f64>() / self.values.len() as f64).sqrt()
    }
}

/// `μ_j` with the plateau cutoff.
pub fn lp_piece(mu: &GridMeasure, j: u32) -> Result<Filtered> {
    Spectrum::of_measure(mu)?.piece(j, Cutoff::Plateau)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LpNormRow {
    pub j: u32,
    pub sup: f64,
    pub l2: f64,
    pub imag_residue: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LpNorms {
    pub rows: Vec<LpNormRow>,
    /// Fit of `log₂(sup + NOISE_FLOOR)` against `j`.
    pub sup_fit: LinearFit,
    /// Fit of `log₂(l2 + NOISE_FLOOR)` against `j`.
    pub l2_fit: LinearFit,
}

/// Sup and `L²` norms of the plateau pieces over `scales`, with slopes.
pub fn lp_norms(mu: &GridMeasure, scales: std::ops::RangeInclusive<u32>) -> Result<LpNorms> {
    let spectrum = Spectrum::of_measure(mu)?;
    let rows: Vec<LpNormRow> = scales
        .map(|j| {
            let p = spectrum.piece(j, Cutoff::Plateau)?;
            Ok(LpNormRow { j, sup: p.sup(), l2: p.l2(), imag_residue: p.imag_residue })
        })
        .collect::<Result<_>>()?;
    if rows.len() < 2 {
        return Err(Error::InsufficientData { needed: 2, got: rows.len() });
    }
    let fit = |f: fn(&LpNormRow) -> f64| {
        let pts: Vec<(f64, f64)> = rows.iter().map(|r| (f64::from(r.j), (f(r) + NOISE_FLOOR).log2())).collect();
        least_squares(&pts)
    };
    Ok(LpNorms { sup_fit: fit(|r| r.sup)?, l2_fit: fit(|r| r.l2)?, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::cantor_measure_grid;
    use crate::seeding::stream_rng;

    #[test]
    fn plateau_profile() {
        for r in [1.0, 1.5, 2.0] {
            assert_eq!(Cutoff::Plateau.value(r), 1.0);
        }
        for r in [0.0, 0.5, 0.3, 4.0, 10.0] {
            assert_eq!(Cutoff::Plateau.value(r), 0.0);
        }
        let mut last = 0.0;
        for i in 0..=100 {
            let v = Cutoff::Plateau.value(0.5 + 0.005 * f64::from(i));
            assert!(v >= last && (0.0..=1.0).contains(&v));
            last = v;
        }
    }

    #[test]
    fn partition_telescopes() {
        for i in 1..400 {
            let r = 0.05 * f64::from(i);
            let sum: f64 = (0..=4).map(|j| Cutoff::Partition.value(r / 2f64.powi(j))).sum();
            assert!((sum + low_profile(r) - low_profile(r / 32.0)).abs() < 1e-12);
            assert!(Cutoff::Partition.value(r) >= -1e-15);
        }
    }

    #[test]
    fn frequencies_match_fftfreq() {
        let f: Vec<f64> = (0..8).map(|i| frequency(i, 8)).collect();
        assert_eq!(f, vec![0.0, 1.0, 2.0, 3.0, -4.0, -3.0, -2.0, -1.0]);
    }

    #[test]
    fn transform_round_trip() {
        let mu = cantor_measure_grid(1.3, 32, &mut stream_rng(1, 0)).unwrap();
        let back = Spectrum::of_measure(&mu).unwrap().filter(|_| 1.0);
        for (a, b) in back.values.iter().zip(mu.density()) {
            assert!((a - b).abs() < 1e-9);
        }
        assert!(back.imag_residue < 1e-9);
    }

    #[test]
    fn uniform_has_no_oscillation() {
        let mu = GridMeasure::uniform(64).unwrap();
        let s = Spectrum::of_measure(&mu).unwrap();
        for j in 3..=s.max_scale().unwrap() {
            assert!(s.piece(j, Cutoff::Plateau).unwrap().sup() < 1e-6);
        }
    }

    #[test]
    fn nyquist_guard() {
        let s = Spectrum::of_measure(&GridMeasure::uniform(1024).unwrap()).unwrap();
        assert_eq!(s.max_scale(), Some(7));
        assert!(s.piece(7, Cutoff::Plateau).is_ok());
        assert!(matches!(s.piece(8, Cutoff::Plateau), Err(Error::ScaleOutOfRange { j: 8, n: 1024 })));
        let tiny = Spectrum::of_density(4, &[1.0; 16]).unwrap();
        assert_eq!(tiny.max_scale(), None);
    }
}
