use areatype::generators::{cantor_measure_grid, GridMeasure};
use areatype::scaling::littlewood_paley::{frequency, low_profile};
use areatype::scaling::{Cutoff, Spectrum};
use areatype::seeding::stream_rng;

fn plane_wave_density(n: usize, fx: f64, fy: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n * n);
    for iy in 0..n {
        for ix in 0..n {
            let (x, y) = (ix as f64 / n as f64, iy as f64 / n as f64);
            out.push(1.0 + 0.5 * (std::f64::consts::TAU * (fx * x + fy * y)).cos());
        }
    }
    out
}

#[test]
fn band_limited_density_is_reconstructed() {
    let n = 64;
    let density = plane_wave_density(n, 3.0, 2.0);
    let s = Spectrum::of_density(n, &density).unwrap();
    let mut sum = s.low_pass(0).values;
    for j in 0..=2 {
        let piece = s.piece(j, Cutoff::Partition).unwrap();
        assert!(piece.imag_residue < 1e-10);
        for (acc, v) in sum.iter_mut().zip(&piece.values) {
            *acc += v;
        }
    }
    for (a, b) in sum.iter().zip(&density) {
        assert!((a - b).abs() < 1e-8, "{a} vs {b}");
    }
}

#[test]
fn partial_sums_equal_direct_low_pass() {
    // low_pass(j0) + Σ_{j0..=J} pieces = χ(2^{-J-1}|ξ|) applied directly.
    let mu = cantor_measure_grid(1.2, 128, &mut stream_rng(11, 0)).unwrap();
    let s = Spectrum::of_measure(&mu).unwrap();
    let (j0, j1) = (1, 4);
    let mut sum = s.low_pass(j0).values;
    for j in j0..=j1 {
        for (acc, v) in sum.iter_mut().zip(&s.piece(j, Cutoff::Partition).unwrap().values) {
            *acc += v;
        }
    }
    let direct = s.filter(|r| low_profile(r / 2f64.powi(j1 as i32 + 1)));
    for (a, b) in sum.iter().zip(&direct.values) {
        assert!((a - b).abs() < 1e-8);
    }
}

#[test]
fn piece_spectrum_lives_in_its_ring() {
    let n = 128;
    let mu = cantor_measure_grid(1.0, n, &mut stream_rng(4, 0)).unwrap();
    let s = Spectrum::of_measure(&mu).unwrap();
    for j in 2..=s.max_scale().unwrap() {
        let piece = s.piece(j, Cutoff::Plateau).unwrap();
        let back = Spectrum::of_density(n, &piece.values).unwrap();
        let scale = 2f64.powi(j as i32);
        let (mut inside, mut outside) = (0.0, 0.0);
        for (i, c) in back.coefficients().iter().enumerate() {
            let r = frequency(i % n, n).hypot(frequency(i / n, n)) / scale;
            if (0.5..=4.0).contains(&r) {
                inside += c.norm_sqr();
            } else {
                outside += c.norm_sqr();
            }
        }
        assert!(outside <= 1e-8 * inside.max(1e-300), "j={j}: {outside} vs {inside}");
    }
}

#[test]
fn uniform_pieces_vanish() {
    let mu = GridMeasure::uniform(256).unwrap();
    let s = Spectrum::of_measure(&mu).unwrap();
    let zero_band = s.low_pass(0).sup();
    for j in 3..=s.max_scale().unwrap() {
        assert!(s.piece(j, Cutoff::Plateau).unwrap().sup() < 1e-6 * zero_band);
    }
}
