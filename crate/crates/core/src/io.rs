//! File formats: point clouds, grid measures, histograms and result tables.
//!
//! Grid measures are stored as a 16-byte header (`GMES`, side `N` as `u32`
//! LE, nominal dimension as `f64` LE) followed by `N²` row-major `f64` LE
//! weights, with an optional JSON sidecar describing the same fields.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::config::Point2;
use crate::counting::CountReport;
use crate::error::{Error, Result};
use crate::generators::GridMeasure;
use crate::scaling::{FlatHistogram, LpNormRow};

const GRID_MAGIC: &[u8; 4] = b"GMES";

/// Reads `x,y` rows. A non-numeric first line is taken as a header; blank
/// lines and lines starting with `#` are skipped.
pub fn read_points_csv<R: Read>(reader: R) -> Result<Vec<Point2<f64>>> {
    let mut out = Vec::new();
    for (lineno, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed: Option<Vec<f64>> = fields.iter().map(|f| f.parse().ok()).collect();
        match parsed {
            Some(v) if v.len() == 2 => out.push(Point2::new(v[0], v[1])?),
            None if out.is_empty() && lineno == 0 => continue,
            _ => return Err(Error::Format(format!("line {}: expected `x,y`, got `{line}`", lineno + 1))),
        }
    }
    Ok(out)
}

pub fn write_points_csv<W: Write>(mut w: W, points: &[Point2<f64>]) -> Result<()> {
    writeln!(w, "x,y")?;
    for p in points {
        writeln!(w, "{},{}", p.x(), p.y())?;
    }
    Ok(())
}

/// Sidecar metadata for a binary grid measure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSidecar {
    pub schema: String,
    pub n: usize,
    pub s: f64,
    pub layout: String,
    pub box_dimension: f64,
}

pub fn encode_grid_measure(mu: &GridMeasure) -> Vec<u8> {
    let mut buf = Vec::with_capacity(16 + 8 * mu.weights().len());
    buf.extend_from_slice(GRID_MAGIC);
    buf.extend_from_slice(&(mu.n() as u32).to_le_bytes());
    buf.extend_from_slice(&mu.s().to_le_bytes());
    for w in mu.weights() {
        buf.extend_from_slice(&w.to_le_bytes());
    }
    buf
}

pub fn decode_grid_measure(bytes: &[u8]) -> Result<GridMeasure> {
    if bytes.len() < 16 || &bytes[..4] != GRID_MAGIC {
        return Err(Error::Format("not a grid measure file".into()));
    }
    let n = u32::from_le_bytes(bytes[4..8].try_into().expect("4 bytes")) as usize;
    let s = f64::from_le_bytes(bytes[8..16].try_into().expect("8 bytes"));
    let body = &bytes[16..];
    if body.len() != 8 * n * n {
        return Err(Error::Format(format!("expected {} weight bytes, found {}", 8 * n * n, body.len())));
    }
    let weights = body
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("8 bytes")))
        .collect();
    GridMeasure::new(n, s, weights)
}

/// Path of the JSON sidecar next to a binary grid file.
pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut p = path.as_os_str().to_owned();
    p.push(".json");
    PathBuf::from(p)
}

pub fn write_grid_measure(path: &Path, mu: &GridMeasure) -> Result<()> {
    std::fs::write(path, encode_grid_measure(mu))?;
    let sidecar = GridSidecar {
        schema: crate::SCHEMA.into(),
        n: mu.n(),
        s: mu.s(),
        layout: "row-major f64 LE, index iy*N+ix".into(),
        box_dimension: mu.box_dimension(),
    };
    let f = BufWriter::new(File::create(sidecar_path(path))?);
    serde_json::to_writer_pretty(f, &sidecar)?;
    Ok(())
}

pub fn read_grid_measure(path: &Path) -> Result<GridMeasure> {
    decode_grid_measure(&std::fs::read(path)?)
}

/// One row per occupied cell: cell indices `i1..i{2k−1}` then `count`,
/// sorted by cell.
pub fn write_histogram_csv<W: Write>(mut w: W, h: &FlatHistogram) -> Result<()> {
    let header: Vec<String> = (1..=h.dim()).map(|i| format!("i{i}")).collect();
    writeln!(w, "{},count", header.join(","))?;
    for (key, c) in h.sorted_cells() {
        let idx: Vec<String> = key.iter().map(i64::to_string).collect();
        writeln!(w, "{},{c}", idx.join(","))?;
    }
    Ok(())
}

pub fn write_norms_csv<W: Write>(mut w: W, rows: &[LpNormRow]) -> Result<()> {
    writeln!(w, "j,sup,l2")?;
    for r in rows {
        writeln!(w, "{},{:e},{:e}", r.j, r.sup, r.l2)?;
    }
    Ok(())
}

pub const COUNT_HEADER: &str = "q,k,exact_upper,float_count,degenerate_excluded,tolerance,seconds";

/// Count rows; `seconds` is left empty when timings are not recorded.
pub fn write_counts_csv<W: Write>(mut w: W, rows: &[(CountReport, Option<f64>)]) -> Result<()> {
    writeln!(w, "{COUNT_HEADER}")?;
    for (r, secs) in rows {
        let secs = secs.map(|s| format!("{s:.3}")).unwrap_or_default();
        writeln!(
            w,
            "{},{},{},{},{},{:e},{secs}",
            r.q, r.k, r.exact_upper, r.float_count, r.degenerate_excluded, r.tolerance
        )?;
    }
    Ok(())
}
