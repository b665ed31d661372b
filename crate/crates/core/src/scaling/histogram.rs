//! Sparse ε-grid histograms on the canonical flat.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::canonical::CanonicalForm;
use crate::error::{Error, Result};

/// Integer cell coordinates `⌊t_i / ε⌋`.
pub type CellKey = SmallVec<[i64; 8]>;

/// Occupancy counts of a `(2k−1)`-dimensional ε-grid.
#[derive(Clone, Debug, PartialEq)]
pub struct FlatHistogram {
    k: usize,
    eps: f64,
    cells: HashMap<CellKey, u64>,
    total: u64,
}

impl FlatHistogram {
    pub fn new(k: usize, eps: f64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("k must be >= 1".into()));
        }
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
        }
        Ok(Self { k, eps, cells: HashMap::new(), total: 0 })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn dim(&self) -> usize {
        2 * self.k - 1
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn occupied(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &HashMap<CellKey, u64> {
        &self.cells
    }

    /// Volume `ε^{2k−1}` of one cell.
    pub fn cell_volume(&self) -> f64 {
        self.eps.powi(self.dim() as i32)
    }

    pub fn key(&self, t: &[f64]) -> CellKey {
        t.iter().map(|v| (v / self.eps).floor() as i64).collect()
    }

    pub fn insert_coords(&mut self, t: &[f64]) {
        debug_assert_eq!(t.len(), self.dim());
        *self.cells.entry(self.key(t)).or_insert(0) += 1;
        self.total += 1;
    }

    pub fn insert(&mut self, form: &CanonicalForm<f64>) -> Result<()> {
        if form.k != self.k {
            return Err(Error::MismatchedK(self.k, form.k));
        }
        self.insert_coords(&form.t);
        Ok(())
    }

    /// Adds another histogram on the same grid.
    pub fn merge(&mut self, other: FlatHistogram) -> Result<()> {
        if other.k != self.k || other.eps != self.eps {
            return Err(Error::InvalidArgument("histograms live on different grids".into()));
        }
        if self.cells.len() < other.cells.len() {
            let mine = std::mem::replace(&mut self.cells, other.cells);
            for (key, c) in mine {
                *self.cells.entry(key).or_insert(0) += c;
            }
        } else {
            for (key, c) in other.cells {
                *self.cells.entry(key).or_insert(0) += c;
            }
        }
        self.total += other.total;
        Ok(())
    }

    /// Box-counting measure estimate: occupied cells times cell volume.
    pub fn measure_estimate(&self) -> f64 {
        self.occupied() as f64 * self.cell_volume()
    }

    /// The same counts re-snapped to the grid of side `2ε`.
    pub fn coarsen(&self) -> FlatHistogram {
        let mut out = FlatHistogram::new(self.k, 2.0 * self.eps).expect("valid grid");
        for (key, &c) in &self.cells {
            let coarse: CellKey = key.iter().map(|i| i.div_euclid(2)).collect();
            *out.cells.entry(coarse).or_insert(0) += c;
        }
        out.total = self.total;
        out
    }

    /// Cells sorted by key, for reproducible export.
    pub fn sorted_cells(&self) -> Vec<(&CellKey, u64)> {
        let mut v: Vec<_> = self.cells.iter().map(|(k, &c)| (k, c)).collect();
        v.sort_unstable_by(|a, b| a.0.cmp(b.0));
        v
    }

    /// Density estimate `count / (samples · ε^{2k−1})` of one cell.
    pub fn density(&self, count: u64, samples: u64) -> f64 {
        count as f64 / (samples as f64 * self.cell_volume())
    }
}

/// Snaps every form to the ε-grid.
pub fn box_count<I>(k: usize, eps: f64, forms: I) -> Result<FlatHistogram>
where
    I: IntoIterator<Item = CanonicalForm<f64>>,
{
    let mut h = FlatHistogram::new(k, eps)?;
    for f in forms {
        h.insert(&f)?;
    }
    Ok(h)
}

/// `sqrt( Σ_cells (count/(samples·ε^{2k−1}))² · ε^{2k−1} )`, summed in
/// cell order so the result does not depend on hashing.
pub fn nu_l2(h: &FlatHistogram, samples: u64) -> f64 {
    let vol = h.cell_volume();
    h.sorted_cells()
        .into_iter()
        .map(|(_, c)| {
            let d = h.density(c, samples);
            d * d * vol
        })
        .sum::<f64>()
        .sqrt()
}

/// Summary shape written alongside histogram exports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HistogramSummary {
    pub schema: String,
    pub k: usize,
    pub eps: f64,
    pub occupied: usize,
    pub estimate: f64,
    /// `nu_l2` when the sample count is known.
    pub l2: Option<f64>,
}

impl HistogramSummary {
    pub fn of(h: &FlatHistogram, samples: Option<u64>) -> Self {
        Self {
            schema: crate::SCHEMA.to_string(),
            k: h.k(),
            eps: h.eps(),
            occupied: h.occupied(),
            estimate: h.measure_estimate(),
            l2: samples.map(|s| nu_l2(h, s)),
        }
    }
}
