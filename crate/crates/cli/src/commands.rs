//! Command implementations. Each returns the artifact bytes and a one-line
//! summary for stderr.

use std::io::{Read, Write};
use std::path::Path;
use std::time::Instant;

use areatype::canonical::{NeighborhoodGauges, StabilityReport};
use areatype::counting::{scaling_fit, total_tuples, DEFAULT_BUDGET};
use areatype::generators::{
    cantor_measure_grid, lattice_points, neighborhood_sample, polar_image, GridMeasure, GridSampler, LatticeSpec,
    PlanarMeasure, ThickSegment, UniformAnnulus,
};
use areatype::io::{read_grid_measure, write_counts_csv, write_grid_measure, write_histogram_csv, write_norms_csv, write_points_csv};
use areatype::scaling::{box_measure, lp_norms, nu_density, BoxMeasureRow, HistogramSummary, LpNormRow, NuRow, Restriction};
use areatype::seeding::stream_rng;
use areatype::{
    canonical_distance, canonical_form, count_area_types_float, matching_transform, neighborhood_gauges,
    same_area_type, stability_check, Configuration, CountReport, LinearFit, Point2, Q, SCHEMA,
};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::args::*;
use crate::error::CliError;

pub struct Artifact {
    pub bytes: Vec<u8>,
    pub summary: String,
}

pub struct Context {
    pub seed: Option<u64>,
    pub format: Option<Format>,
    pub output: Option<std::path::PathBuf>,
    pub budget: u128,
}

impl Context {
    fn seed(&self, command: &str) -> Result<u64, CliError> {
        self.seed
            .ok_or_else(|| CliError::config(format!("`{command}` is stochastic and needs --seed")))
    }

    fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

/// Enumeration cap from `AREATYPE_BUDGET`, or the library default.
pub fn budget_from_env() -> Result<u128, CliError> {
    match std::env::var("AREATYPE_BUDGET") {
        Ok(v) => v
            .trim()
            .replace('_', "")
            .parse::<u128>()
            .map_err(|e| CliError::config(format!("AREATYPE_BUDGET=`{v}`: {e}"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    let mut v = serde_json::to_vec_pretty(value)?;
    v.push(b'\n');
    Ok(v)
}

fn read_input(path: Option<&Path>) -> Result<Value, CliError> {
    let mut text = String::new();
    match path {
        Some(p) => {
            text = std::fs::read_to_string(p).map_err(|e| CliError::io(format!("{}: {e}", p.display())))?;
        }
        None => {
            std::io::stdin().read_to_string(&mut text)?;
        }
    }
    Ok(serde_json::from_str(&text)?)
}

// ---------------------------------------------------------------------------
// Configuration parsing

/// Exact value of a decimal literal (`-1.25e-3`) or fraction (`7/3`).
pub fn parse_exact(text: &str) -> Result<Q, CliError> {
    let bad = || CliError::config(format!("`{text}` is not a decimal or fraction"));
    let t = text.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d == BigInt::from(0) {
            return Err(CliError::config(format!("`{text}` has a zero denominator")));
        }
        return Ok(Q::new(n, d));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits = format!("{int_part}{frac_part}");
    if frac_part.contains(['+', '-']) || !digits.chars().any(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let numer: BigInt = digits.parse().map_err(|_| bad())?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Ok(if scale >= 0 {
        Q::from_integer(numer * ten.pow(scale as u32))
    } else {
        Q::new(numer, ten.pow((-scale) as u32))
    })
}

fn points_value(v: &Value) -> Result<(&Vec<Value>, Option<u64>), CliError> {
    match v {
        Value::Array(a) => Ok((a, None)),
        Value::Object(o) => {
            let pts = o
                .get("points")
                .and_then(Value::as_array)
                .ok_or_else(|| CliError::config("configuration needs a `points` array"))?;
            let k = match o.get("k") {
                None => None,
                Some(k) => Some(k.as_u64().ok_or_else(|| CliError::config("`k` must be a non-negative integer"))?),
            };
            Ok((pts, k))
        }
        _ => Err(CliError::config("configuration must be an object or a list of points")),
    }
}

fn coords(p: &Value) -> Result<(&Value, &Value), CliError> {
    match p.as_array().map(Vec::as_slice) {
        Some([x, y]) => Ok((x, y)),
        _ => Err(CliError::config(format!("point {p} is not an [x, y] pair"))),
    }
}

fn check_k(k: Option<u64>, len: usize) -> Result<(), CliError> {
    match k {
        Some(k) if k as usize + 1 != len => Err(CliError::config(format!("k = {k} but {len} points given"))),
        _ => Ok(()),
    }
}

fn float_config(v: &Value) -> Result<Configuration<f64>, CliError> {
    let (pts, k) = points_value(v)?;
    check_k(k, pts.len())?;
    let num = |c: &Value| match c {
        Value::Number(n) => n.as_f64().ok_or_else(|| CliError::config(format!("{n} is not a number"))),
        Value::String(s) => s.trim().parse::<f64>().map_err(|_| CliError::config(format!("`{s}` is not a number"))),
        other => Err(CliError::config(format!("{other} is not a number"))),
    };
    let points = pts
        .iter()
        .map(|p| {
            let (x, y) = coords(p)?;
            Ok(Point2::new(num(x)?, num(y)?)?)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(Configuration::new(points)?)
}

fn exact_config(v: &Value) -> Result<Configuration<Q>, CliError> {
    let (pts, k) = points_value(v)?;
    check_k(k, pts.len())?;
    let num = |c: &Value| match c {
        Value::Number(n) => parse_exact(&n.to_string()),
        Value::String(s) => parse_exact(s),
        other => Err(CliError::config(format!("{other} is not a number"))),
    };
    let points = pts
        .iter()
        .map(|p| {
            let (x, y) = coords(p)?;
            Ok(Point2::new(num(x)?, num(y)?)?)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(Configuration::new(points)?)
}

// ---------------------------------------------------------------------------
// canonicalize / compare

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coordinate {
    Float(f64),
    /// Exact rational written `p/q` (or an integer).
    Exact(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CanonicalOutput {
    pub schema: String,
    pub k: usize,
    pub exact: bool,
    pub t: Vec<Coordinate>,
}

pub fn canonicalize(a: &CanonicalizeArgs, ctx: &Context) -> Result<Artifact, CliError> {
    let input = read_input(a.input.as_deref())?;
    let (k, t) = if a.exact {
        let form = canonical_form(&exact_config(&input)?)?;
        (form.k, form.t.iter().map(|v| Coordinate::Exact(v.to_string())).collect::<Vec<_>>())
    } else {
        let form = canonical_form(&float_config(&input)?)?;
        (form.k, form.t.iter().map(|&v| Coordinate::Float(v)).collect())
    };
    let text: Vec<String> = t
        .iter()
        .map(|c| match c {
            Coordinate::Float(v) => v.to_string(),
            Coordinate::Exact(s) => s.clone(),
        })
        .collect();
    let summary = format!("canonicalize: k={k} t=({})", text.join(", "));
    let bytes = match ctx.format(Format::Json) {
        Format::Json => json_bytes(&CanonicalOutput { schema: SCHEMA.into(), k, exact: a.exact, t })?,
        Format::Csv => {
            let header: Vec<String> = (1..=text.len()).map(|i| format!("t{i}")).collect();
            format!("k,{}\n{k},{}\n", header.join(","), text.join(",")).into_bytes()
        }
    };
    Ok(Artifact { bytes, summary })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompareOutput {
    pub schema: String,
    pub k: usize,
    pub same_area_type: bool,
    pub tolerance: f64,
    pub canonical_distance: f64,
    pub area_discrepancy: f64,
    /// `(y¹ y²)(x¹ x²)⁻¹` as `[a, b, c, d]`.
    pub matching_matrix: [f64; 4],
    pub matching_det: f64,
    pub residuals: Vec<f64>,
    pub gauges: NeighborhoodGauges,
    pub stability: Option<StabilityReport>,
}

pub fn compare(a: &CompareArgs, ctx: &Context) -> Result<Artifact, CliError> {
    let input = read_input(a.input.as_deref())?;
    let get = |key: &str| {
        input
            .get(key)
            .ok_or_else(|| CliError::config(format!("input needs `{key}`")))
            .and_then(float_config)
    };
    let (x, y) = (get("x")?, get("y")?);
    let m = matching_transform(&x, &y)?;
    let gauges = neighborhood_gauges(&x, &y)?;
    let stability = match (a.c, a.eps) {
        (Some(c), Some(eps)) => Some(stability_check(&x, &y, c, eps)?),
        _ => None,
    };
    let out = CompareOutput {
        schema: SCHEMA.into(),
        k: x.k(),
        same_area_type: same_area_type(&x, &y, a.tol),
        tolerance: a.tol,
        canonical_distance: canonical_distance(&x, &y)?,
        area_discrepancy: gauges.area_discrepancy,
        matching_matrix: [m.matrix.a, m.matrix.b, m.matrix.c, m.matrix.d],
        matching_det: m.matrix.det(),
        residuals: m.residuals(&x, &y),
        gauges,
        stability,
    };
    let summary = format!(
        "compare: same_area_type={} canonical_distance={:e}",
        out.same_area_type, out.canonical_distance
    );
    let bytes = match ctx.format(Format::Json) {
        Format::Json => json_bytes(&out)?,
        Format::Csv => format!(
            "k,same_area_type,canonical_distance,area_discrepancy,orbit_residual\n{},{},{:e},{:e},{:e}\n",
            out.k, out.same_area_type, out.canonical_distance, out.area_discrepancy, out.gauges.orbit_residual
        )
        .into_bytes(),
    };
    Ok(Artifact { bytes, summary })
}

// ---------------------------------------------------------------------------
// generate

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointsOutput {
    pub schema: String,
    pub q: u32,
    pub s: Option<f64>,
    pub points: Vec<Point2<f64>>,
}

pub fn generate(a: &GenerateArgs, ctx: &Context) -> Result<Artifact, CliError> {
    match a.kind {
        GenerateKind::Lattice => {
            let q = a.q.ok_or_else(|| CliError::config("`generate lattice` needs --q"))?;
            let (points, s) = match a.points_per_cell {
                None => {
                    // The radius does not matter when only the centers are emitted.
                    let spec = LatticeSpec::new(q, a.s.unwrap_or(1.0))?;
                    (lattice_points(&spec).iter().map(polar_image).collect::<Vec<_>>(), a.s)
                }
                Some(ppc) => {
                    let s = a.s.ok_or_else(|| CliError::config("neighborhood sampling needs --s"))?;
                    let spec = LatticeSpec::new(q, s)?;
                    (neighborhood_sample(&spec, ppc, ctx.seed("generate")?)?, Some(s))
                }
            };
            let summary = format!("generate lattice: q={q} points={}", points.len());
            let bytes = match ctx.format(Format::Csv) {
                Format::Csv => {
                    let mut b = Vec::new();
                    write_points_csv(&mut b, &points)?;
                    b
                }
                Format::Json => json_bytes(&PointsOutput { schema: SCHEMA.into(), q, s, points })?,
            };
            Ok(Artifact { bytes, summary })
        }
        GenerateKind::Cantor => {
            let s = a.s.ok_or_else(|| CliError::config("`generate cantor` needs --s"))?;
            let path = ctx
                .output
                .as_deref()
                .ok_or_else(|| CliError::config("`generate cantor` writes a binary file and needs --output"))?;
            let mu = cantor_measure_grid(s, a.n, &mut stream_rng(ctx.seed("generate")?, 0))?;
            write_grid_measure(path, &mu)?;
            let summary = format!(
                "generate cantor: n={} s={s} box_dimension={:.4} -> {}",
                mu.n(),
                mu.box_dimension(),
                path.display()
            );
            Ok(Artifact { bytes: Vec::new(), summary })
        }
    }
}

// ---------------------------------------------------------------------------
// count / sweep-count

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountRow {
    #[serde(flatten)]
    pub report: CountReport,
    pub seconds: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountOutput {
    pub schema: String,
    pub rows: Vec<CountRow>,
    /// `ln exact_upper` against `ln q`.
    pub exact_fit: Option<LinearFit>,
    pub float_fit: Option<LinearFit>,
}

fn count_rows(qs: &[u32], k: usize, tol: f64, timing: bool, budget: u128) -> Result<Vec<CountRow>, CliError> {
    qs.iter()
        .map(|&q| {
            let spec = LatticeSpec::new(q, 1.0)?;
            let start = Instant::now();
            let report = count_area_types_float(&spec, k, tol, budget)?;
            let seconds = timing.then(|| start.elapsed().as_secs_f64());
            Ok(CountRow { report, seconds })
        })
        .collect()
}

fn fit_of(rows: &[CountRow], f: fn(&CountReport) -> u64) -> Option<LinearFit> {
    let pts: Vec<(f64, f64)> = rows.iter().map(|r| (f64::from(r.report.q), f(&r.report) as f64)).collect();
    scaling_fit(&pts).ok()
}

fn count_artifact(rows: Vec<CountRow>, ctx: &Context, with_fit: bool) -> Result<Artifact, CliError> {
    let exact_fit = if with_fit { fit_of(&rows, |r| r.exact_upper) } else { None };
    let float_fit = if with_fit { fit_of(&rows, |r| r.float_count) } else { None };
    let summary = match (&exact_fit, rows.last()) {
        (Some(f), _) => format!("sweep-count: {} sizes, exact_upper slope {:.4} (R2 {:.4})", rows.len(), f.slope, f.r2),
        (None, Some(r)) => format!(
            "count: q={} k={} exact_upper={} float_count={}",
            r.report.q, r.report.k, r.report.exact_upper, r.report.float_count
        ),
        (None, None) => "count: no rows".into(),
    };
    let bytes = match ctx.format(Format::Csv) {
        Format::Csv => {
            let mut b = Vec::new();
            let pairs: Vec<(CountReport, Option<f64>)> = rows.iter().map(|r| (r.report.clone(), r.seconds)).collect();
            write_counts_csv(&mut b, &pairs)?;
            if let (Some(e), Some(f)) = (&exact_fit, &float_fit) {
                writeln!(
                    b,
                    "# fit ln(count) ~ ln(q): exact_upper slope={} r2={}; float_count slope={} r2={}",
                    e.slope, e.r2, f.slope, f.r2
                )?;
            }
            b
        }
        Format::Json => json_bytes(&CountOutput { schema: SCHEMA.into(), rows, exact_fit, float_fit })?,
    };
    Ok(Artifact { bytes, summary })
}

pub fn count(a: &CountArgs, ctx: &Context) -> Result<Artifact, CliError> {
    let rows = count_rows(&[a.q], a.k, a.tolerance, a.timing, ctx.budget)?;
    count_artifact(rows, ctx, false)
}

pub fn sweep_count(a: &SweepCountArgs, ctx: &Context) -> Result<Artifact, CliError> {
    let qs = a.q.values(a.step);
    // Fail before any work if the largest size is over budget.
    let spec = LatticeSpec::new(*qs.last().expect("non-empty range"), 1.0)?;
    let tuples = total_tuples(&spec, a.k);
    if tuples > ctx.budget {
        return Err(areatype::Error::BudgetExceeded { tuples, cap: ctx.budget }.into());
    }
    let rows = count_rows(&qs, a.k, a.tolerance, a.timing, ctx.budget)?;
    count_artifact(rows, ctx, true)
}

// ---------------------------------------------------------------------------
// box-measure

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoxMeasureOutput {
    pub schema: String,
    pub draws_per_tuple: usize,
    pub rows: Vec<BoxMeasureRow>,
    /// `ln estimate` against `ln q`.
    pub fit: Option<LinearFit>,
    /// `2k + 1 − 2(2k − 1)/s`.
    pub predicted_slope: f64,
}

pub fn box_measure_cmd(a: &BoxMeasureArgs, ctx: &Context) -> Result<Artifact, CliError> {
    let seed = ctx.seed("box-measure")?;
    let rows = a
        .q
        .values(a.step)
        .into_iter()
        .map(|q| {
            let spec = LatticeSpec::new(q, a.s)?;
            Ok(box_measure(&spec, a.k, a.draws, seed, ctx.budget)?.0)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let fit = scaling_fit(&rows.iter().map(|r| (f64::from(r.q), r.estimate)).collect::<Vec<_>>()).ok();
    let k = a.k as f64;
    let predicted_slope = 2.0 * k + 1.0 - 2.0 * (2.0 * k - 1.0) / a.s;
    let summary = match &fit {
        Some(f) => format!("box-measure: {} sizes, slope {:.4} (predicted {predicted_slope:.4})", rows.len(), f.slope),
        None => format!("box-measure: {} sizes", rows.len()),
    };
    let bytes = match ctx.format(Format::Csv) {
        Format::Csv => {
            let mut b = Vec::new();
            writeln!(b, "q,s,k,eps,tuples,forms,occupied,estimate")?;
            for r in &rows {
                writeln!(b, "{},{},{},{:e},{},{},{},{:e}", r.q, r.s, r.k, r.eps, r.tuples, r.forms, r.occupied, r.estimate)?;
            }
            if let Some(f) = &fit {
                writeln!(b, "# fit ln(estimate) ~ ln(q): slope={} r2={} predicted={predicted_slope}", f.slope, f.r2)?;
            }
            b
        }
        Format::Json => json_bytes(&BoxMeasureOutput {
            schema: SCHEMA.into(),
            draws_per_tuple: a.draws,
            rows,
            fit,
            predicted_slope,
        })?,
    };
    Ok(Artifact { bytes, summary })
}

// ---------------------------------------------------------------------------
// nu-l2

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NuOutput {
    pub schema: String,
    pub k: usize,
    pub samples: u64,
    pub degenerate: u64,
    /// Chosen sector indices, when the angle restriction is on.
    pub sectors: Option<Vec<usize>>,
    pub rows: Vec<NuRow>,
}

fn run_nu<M: PlanarMeasure>(mu: &M, a: &NuL2Args, seed: u64) -> Result<areatype::scaling::NuEstimate, CliError> {
    let restriction = if a.unrestricted { Restriction::None } else { Restriction::Sectors { delta: a.delta } };
    Ok(nu_density(mu, a.k, &a.eps, a.samples, restriction, seed)?)
}

pub fn nu_l2(a: &NuL2Args, ctx: &Context) -> Result<Artifact, CliError> {
    let seed = ctx.seed("nu-l2")?;
    let est = match a.measure {
        MeasureKind::Annulus => run_nu(&UniformAnnulus::standard(), a, seed)?,
        MeasureKind::Segment => {
            let seg = ThickSegment { half_length: 1.0, thickness: a.thickness, angle: a.angle };
            run_nu(&seg, a, seed)?
        }
        MeasureKind::Grid => {
            let path = a.grid.as_deref().ok_or_else(|| CliError::config("`--measure grid` needs --grid"))?;
            run_nu(&GridSampler::new(read_grid_measure(path)?)?, a, seed)?
        }
    };
    if let Some(dir) = &a.histograms {
        std::fs::create_dir_all(dir)?;
        let kept = est.samples - est.degenerate;
        for (i, h) in est.histograms.iter().enumerate() {
            let mut csv = Vec::new();
            write_histogram_csv(&mut csv, h)?;
            std::fs::write(dir.join(format!("hist_{i}.csv")), csv)?;
            std::fs::write(dir.join(format!("hist_{i}.json")), json_bytes(&HistogramSummary::of(h, Some(kept)))?)?;
        }
    }
    let rows = est.rows();
    let summary = format!(
        "nu-l2: {} samples ({} degenerate), L2 {}",
        est.samples,
        est.degenerate,
        rows.iter().map(|r| format!("{:.4}@{}", r.l2, r.eps)).collect::<Vec<_>>().join(" ")
    );
    let bytes = match ctx.format(Format::Csv) {
        Format::Csv => {
            let mut b = Vec::new();
            writeln!(b, "eps,occupied,l2")?;
            for r in &rows {
                writeln!(b, "{:e},{},{:e}", r.eps, r.occupied, r.l2)?;
            }
            b
        }
        Format::Json => json_bytes(&NuOutput {
            schema: SCHEMA.into(),
            k: a.k,
            samples: est.samples,
            degenerate: est.degenerate,
            sectors: est.sectors.as_ref().map(|c| c.sectors.clone()),
            rows,
        })?,
    };
    Ok(Artifact { bytes, summary })
}

// ---------------------------------------------------------------------------
// lp-slopes

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LpOutput {
    pub schema: String,
    pub n: usize,
    pub s: f64,
    pub rows: Vec<LpNormRow>,
    pub sup_fit: LinearFit,
    pub l2_fit: LinearFit,
}

pub fn lp_slopes(a: &LpSlopesArgs, ctx: &Context) -> Result<Artifact, CliError> {
    let mu: GridMeasure = match (&a.grid, a.s) {
        (Some(path), _) => read_grid_measure(path)?,
        (None, Some(s)) => cantor_measure_grid(s, a.n, &mut stream_rng(ctx.seed("lp-slopes")?, 0))?,
        (None, None) => return Err(CliError::config("`lp-slopes` needs --s or --grid")),
    };
    let norms = lp_norms(&mu, a.j.start..=a.j.end)?;
    let summary = format!(
        "lp-slopes: n={} s={} sup slope {:.4}, L2 slope {:.4}",
        mu.n(),
        mu.s(),
        norms.sup_fit.slope,
        norms.l2_fit.slope
    );
    let bytes = match ctx.format(Format::Csv) {
        Format::Csv => {
            let mut b = Vec::new();
            write_norms_csv(&mut b, &norms.rows)?;
            writeln!(
                b,
                "# fit log2(norm + {:e}) ~ j: sup slope={} r2={}; l2 slope={} r2={}",
                areatype::scaling::NOISE_FLOOR,
                norms.sup_fit.slope,
                norms.sup_fit.r2,
                norms.l2_fit.slope,
                norms.l2_fit.r2
            )?;
            b
        }
        Format::Json => json_bytes(&LpOutput {
            schema: SCHEMA.into(),
            n: mu.n(),
            s: mu.s(),
            rows: norms.rows,
            sup_fit: norms.sup_fit,
            l2_fit: norms.l2_fit,
        })?,
    };
    Ok(Artifact { bytes, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_decimal_parsing() {
        assert_eq!(parse_exact("0.1").unwrap(), Q::new(1.into(), 10.into()));
        assert_eq!(parse_exact("-1.25e-1").unwrap(), Q::new((-1).into(), 8.into()));
        assert_eq!(parse_exact("3e2").unwrap(), Q::from_integer(300.into()));
        assert_eq!(parse_exact("7/3").unwrap(), Q::new(7.into(), 3.into()));
        assert_eq!(parse_exact("5").unwrap(), Q::from_integer(5.into()));
        assert_eq!(parse_exact(".5").unwrap(), Q::new(1.into(), 2.into()));
        for bad in ["", "-", "1/0", "abc", "1.2.3", "e5", "1e"] {
            assert!(parse_exact(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn config_shapes() {
        let bare = serde_json::json!([[1, 0], [0, 5], [2, 3]]);
        let obj = serde_json::json!({"k": 2, "points": [[1, 0], [0, 5], [2, 3]]});
        assert_eq!(float_config(&bare).unwrap(), float_config(&obj).unwrap());
        assert!(float_config(&serde_json::json!({"k": 3, "points": [[1, 0], [0, 1]]})).is_err());
        assert!(float_config(&serde_json::json!([[1, 0, 2], [0, 1]])).is_err());
        let exact = exact_config(&serde_json::json!([["1/3", 0], [0, "0.5"]])).unwrap();
        assert_eq!(exact.k(), 1);
    }

    fn ctx(format: Format, seed: Option<u64>) -> Context {
        Context { seed, format: Some(format), output: None, budget: DEFAULT_BUDGET }
    }

    fn round_trip<T: for<'de> Deserialize<'de> + Serialize + PartialEq + std::fmt::Debug>(a: &Artifact) -> T {
        let parsed: T = serde_json::from_slice(&a.bytes).unwrap();
        assert_eq!(serde_json::to_value(&parsed).unwrap(), serde_json::from_slice::<Value>(&a.bytes).unwrap());
        parsed
    }

    #[test]
    fn json_artifacts_round_trip() {
        let json = ctx(Format::Json, Some(5));
        let count = count(&CountArgs { q: 4, k: 2, tolerance: 1e-9, timing: false }, &json).unwrap();
        let parsed: CountOutput = round_trip(&count);
        assert_eq!(parsed.schema, SCHEMA);

        let boxes = BoxMeasureArgs { q: "4..5".parse().unwrap(), step: 1, k: 1, s: 1.1, draws: 2 };
        let _: BoxMeasureOutput = round_trip(&box_measure_cmd(&boxes, &json).unwrap());

        let nu = NuL2Args {
            measure: MeasureKind::Annulus,
            grid: None,
            k: 1,
            eps: vec![0.1],
            samples: 2000,
            delta: areatype::scaling::DEFAULT_DELTA,
            unrestricted: false,
            thickness: 1e-3,
            angle: 0.3,
            histograms: None,
        };
        let parsed: NuOutput = round_trip(&nu_l2(&nu, &json).unwrap());
        assert_eq!(parsed.sectors.map(|s| s.len()), Some(2));

        let lp = LpSlopesArgs { s: Some(1.2), grid: None, n: 64, j: "1..3".parse().unwrap() };
        let _: LpOutput = round_trip(&lp_slopes(&lp, &json).unwrap());

        let gen = GenerateArgs { kind: GenerateKind::Lattice, q: Some(3), s: None, n: 8, points_per_cell: None };
        let parsed: PointsOutput = round_trip(&generate(&gen, &json).unwrap());
        assert_eq!(parsed.points.len(), 8);
    }

    #[test]
    fn stochastic_commands_need_a_seed() {
        let no_seed = ctx(Format::Csv, None);
        let boxes = BoxMeasureArgs { q: "4".parse().unwrap(), step: 1, k: 1, s: 1.1, draws: 2 };
        assert_eq!(box_measure_cmd(&boxes, &no_seed).err().unwrap().code, crate::error::EXIT_CONFIG);
    }
}
