//! Empirical density of the pushforward of `μ^{k+1}` to the canonical flat.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canonical::canonical_form;
use crate::config::{Configuration, Point2};
use crate::error::{Error, Result};
use crate::generators::{choose_sectors, PlanarMeasure, SectorChoice};
use crate::scaling::histogram::{nu_l2, FlatHistogram};
use crate::seeding::{chunks, stream_rng, PILOT_STREAM};

/// Sector width used when none is given.
pub const DEFAULT_DELTA: f64 = PI / 4.0;

/// Pilot draws used to rank sectors by mass.
pub const PILOT_DRAWS: usize = 1 << 16;

/// Samples per random stream.
pub const SAMPLE_CHUNK: u64 = 1 << 16;

/// How the `k+1` points of each sample are drawn.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Restriction {
    /// Independent draws from `μ`.
    None,
    /// Point `i` is drawn from `μ` conditioned on the `i`-th of `k+1`
    /// pairwise non-adjacent sectors of width `delta`, picked from a pilot
    /// sample by mass.
    Sectors { delta: f64 },
}

impl Default for Restriction {
    fn default() -> Self {
        Restriction::Sectors { delta: DEFAULT_DELTA }
    }
}

#[derive(Clone, Debug)]
pub struct NuEstimate {
    /// One histogram per requested `ε`, in the order given.
    pub histograms: Vec<FlatHistogram>,
    pub samples: u64,
    pub degenerate: u64,
    pub sectors: Option<SectorChoice>,
}

impl NuEstimate {
    /// Plug-in `L²` norms, one per histogram.
    pub fn l2(&self) -> Vec<f64> {
        let kept = self.samples - self.degenerate;
        self.histograms.iter().map(|h| nu_l2(h, kept)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NuRow {
    pub eps: f64,
    pub occupied: u64,
    pub l2: f64,
}

impl NuEstimate {
    pub fn rows(&self) -> Vec<NuRow> {
        self.histograms
            .iter()
            .zip(self.l2())
            .map(|(h, l2)| NuRow { eps: h.eps(), occupied: h.occupied() as u64, l2 })
            .collect()
    }
}

/// Histograms at several grid sides from one stream of samples.
///
/// Samples are produced in chunks of [`SAMPLE_CHUNK`], chunk `c` drawing from
/// stream `c`; the pilot uses [`PILOT_STREAM`]. Degenerate samples are
/// dropped, and more than half of them is an error.
pub fn nu_density<M: PlanarMeasure>(
    mu: &M,
    k: usize,
    eps: &[f64],
    samples: u64,
    restriction: Restriction,
    seed: u64,
) -> Result<NuEstimate> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    if eps.is_empty() {
        return Err(Error::InvalidArgument("at least one eps is required".into()));
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be >= 1".into()));
    }
    for &e in eps {
        FlatHistogram::new(k, e)?;
    }
    let sectors = match restriction {
        Restriction::None => None,
        Restriction::Sectors { delta } => {
            let mut rng = stream_rng(seed, PILOT_STREAM);
            let pilot: Vec<Point2<f64>> = (0..PILOT_DRAWS).map(|_| mu.sample(&mut rng)).collect();
            Some(choose_sectors(&pilot, None, k + 1, delta)?)
        }
    };
    let bounds: Option<Vec<(f64, f64)>> = sectors.as_ref().map(|c| (0..=k).map(|i| c.bounds(i)).collect());

    let work: Vec<(u64, u64)> = chunks(samples, SAMPLE_CHUNK).collect();
    let parts: Vec<Result<(Vec<FlatHistogram>, u64)>> = work
        .par_iter()
        .enumerate()
        .map(|(c, &(_, len))| {
            let mut rng = stream_rng(seed, c as u64);
            let mut hs: Vec<FlatHistogram> = eps.iter().map(|&e| FlatHistogram::new(k, e).expect("checked")).collect();
            let mut degenerate = 0u64;
            let mut pts = Vec::with_capacity(k + 1);
            for _ in 0..len {
                pts.clear();
                match &bounds {
                    None => pts.extend((0..=k).map(|_| mu.sample(&mut rng))),
                    Some(b) => {
                        for &(lo, hi) in b {
                            let p = mu.sample_in_sector(lo, hi, &mut rng).ok_or_else(|| {
                                Error::InvalidArgument(format!("measure has no mass in sector [{lo}, {hi})"))
                            })?;
                            pts.push(p);
                        }
                    }
                }
                match canonical_form(&Configuration::new_unchecked(pts.clone())) {
                    Ok(f) => hs.iter_mut().for_each(|h| h.insert_coords(&f.t)),
                    Err(_) => degenerate += 1,
                }
            }
            Ok((hs, degenerate))
        })
        .collect();

    let mut histograms: Vec<FlatHistogram> = eps.iter().map(|&e| FlatHistogram::new(k, e).expect("checked")).collect();
    let mut degenerate = 0;
    for part in parts {
        let (hs, d) = part?;
        degenerate += d;
        for (acc, h) in histograms.iter_mut().zip(hs) {
            acc.merge(h)?;
        }
    }
    if 2 * degenerate > samples {
        return Err(Error::DegenerateExcess { degenerate, samples });
    }
    Ok(NuEstimate { histograms, samples, degenerate, sectors })
}
