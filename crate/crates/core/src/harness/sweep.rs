use super::chain::{trial_rng, Link};
use super::config::SimConfig;
use crate::error::Result;
use crate::metrics::{ber_csv, ccdf, grid, to_db, BerPoint, BerTally, CcdfCurve};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::time::Instant;

/// Generator contract, echoed into every output file.
pub const RNG_DESCRIPTION: &str = "ChaCha8Rng seed_from_u64(seed + point) stream(trial)";

/// Statistics gathered at one Eb/N0 value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointResult {
    pub ebn0_db: f64,
    pub n0: f64,
    pub tally: BerTally,
    pub trials: u64,
    /// The bit budget ran out before the error target was met.
    pub max_bits_hit: bool,
    pub half_width: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialResult {
    pub config: SimConfig,
    pub points: Vec<PointResult>,
    /// PAPR (dB) of every block transmitted at the first grid point.
    pub papr_db: Vec<f64>,
    pub wall_clock_s: f64,
}

impl TrialResult {
    pub fn point(&self, ebn0_db: f64) -> Option<&PointResult> {
        self.points.iter().find(|p| (p.ebn0_db - ebn0_db).abs() < 1e-9)
    }

    /// Deterministic CSV: configuration header, then one row per point.
    pub fn to_csv(&self) -> String {
        let mut out = csv_header(&self.config);
        let rows: Vec<BerPoint> = self.points.iter().map(|p| BerPoint { ebn0_db: p.ebn0_db, tally: p.tally }).collect();
        out += &ber_csv(&rows);
        let capped: Vec<String> =
            self.points.iter().filter(|p| p.max_bits_hit).map(|p| format!("{:.2}", p.ebn0_db)).collect();
        if !capped.is_empty() {
            let _ = writeln!(out, "# max_bits_reached: {}", capped.join(" "));
        }
        out
    }
}

pub fn csv_header(cfg: &SimConfig) -> String {
    format!("# config: {}\n# rng: {RNG_DESCRIPTION}\n", cfg.to_json())
}

/// Accumulates trials in fixed-size parallel waves, merging in trial order so
/// the result depends only on the seed.
fn run_point(link: &Link<f64>, cfg: &SimConfig, point: usize, ebn0_db: f64, keep_papr: bool) -> Result<(PointResult, Vec<f64>)> {
    let n0 = link.n0(ebn0_db);
    let seed = cfg.seed.wrapping_add(point as u64);
    let mut tally = BerTally::default();
    let mut papr = Vec::new();
    let mut trials = 0u64;
    let done = |t: &BerTally| t.errors() >= cfg.stop.min_errors || t.bits() >= cfg.stop.max_bits;
    'outer: while !done(&tally) {
        let wave: Vec<Result<_>> = (trials..trials + cfg.wave as u64)
            .into_par_iter()
            .map(|t| link.run_once(n0, &mut trial_rng(seed, t)))
            .collect();
        for out in wave {
            let out = out?;
            tally += out.tally();
            if keep_papr {
                papr.extend(out.papr.iter().map(|&p| to_db(p)));
            }
            trials += 1;
            if done(&tally) {
                break 'outer;
            }
        }
    }
    let max_bits_hit = tally.errors() < cfg.stop.min_errors;
    let half_width = tally.confidence_half_width();
    Ok((PointResult { ebn0_db, n0, tally, trials, max_bits_hit, half_width }, papr))
}

pub fn run_ber_sweep(cfg: &SimConfig) -> Result<TrialResult> {
    let start = Instant::now();
    let link = Link::<f64>::new(cfg)?;
    let mut points = Vec::with_capacity(cfg.ebn0_db.len());
    let mut papr_db = Vec::new();
    for (i, &ebn0) in cfg.ebn0_db.iter().enumerate() {
        let (p, papr) = run_point(&link, cfg, i, ebn0, i == 0)?;
        if i == 0 {
            papr_db = papr;
        }
        points.push(p);
        if cfg.stop.ber_floor.is_some_and(|f| p.tally.avg_ber() < f) {
            break;
        }
    }
    Ok(TrialResult { config: cfg.clone(), points, papr_db, wall_clock_s: start.elapsed().as_secs_f64() })
}

/// Threshold grid used for CCDF output.
pub fn default_gamma_grid() -> Vec<f64> {
    grid(0.0, 12.0, 0.1)
}

const PAPR_CHUNK: usize = 4096;

/// PAPR samples (dB) of `n_symbols` random blocks.
pub fn papr_samples_db(cfg: &SimConfig, n_symbols: usize) -> Result<Vec<f64>> {
    let link = Link::<f64>::new(cfg)?;
    let chunks: Vec<Result<Vec<f64>>> = (0..n_symbols.div_ceil(PAPR_CHUNK))
        .into_par_iter()
        .map(|c| {
            let count = PAPR_CHUNK.min(n_symbols - c * PAPR_CHUNK);
            link.papr_samples(count, &mut trial_rng(cfg.seed, c as u64))
        })
        .collect();
    let mut out = Vec::with_capacity(n_symbols);
    for c in chunks {
        out.extend(c?.into_iter().map(to_db));
    }
    Ok(out)
}

pub fn run_papr(cfg: &SimConfig, n_symbols: usize) -> Result<CcdfCurve> {
    ccdf(&papr_samples_db(cfg, n_symbols)?, &default_gamma_grid())
}

/// CCDF CSV with the configuration header.
pub fn ccdf_csv(cfg: &SimConfig, curve: &CcdfCurve) -> String {
    let mut out = csv_header(cfg);
    let _ = writeln!(out, "# symbols: {}", curve.samples);
    out + &curve.to_csv()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{preset, Coding};

    fn quick(name: &str) -> SimConfig {
        let mut cfg = preset(name).unwrap();
        cfg.coding = Coding::None;
        cfg.ebn0_db = vec![0.0, 4.0, 8.0];
        cfg.stop.min_errors = 50;
        cfg.stop.max_bits = 200_000;
        cfg.wave = 8;
        cfg
    }

    #[test]
    fn sweep_is_deterministic_and_monotone() {
        let cfg = quick("se1.1/im2");
        let a = run_ber_sweep(&cfg).unwrap();
        let b = run_ber_sweep(&cfg).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
        assert!(a.to_csv().starts_with("# config: {"));
        for w in a.points.windows(2) {
            assert!(w[1].tally.avg_ber() <= w[0].tally.avg_ber() + 3.0 * w[0].half_width);
        }
        assert!(a.points.iter().all(|p| p.tally.errors() >= 50 || p.max_bits_hit));
    }

    #[test]
    fn wave_size_does_not_change_results() {
        let mut cfg = quick("se0.75/tra");
        let a = run_ber_sweep(&cfg).unwrap();
        cfg.wave = 3;
        let b = run_ber_sweep(&cfg).unwrap();
        assert_eq!(a.points, b.points);
    }

    #[test]
    fn ber_floor_truncates_grid() {
        let mut cfg = quick("se0.75/ofdm-im");
        cfg.ebn0_db = vec![20.0, 21.0, 22.0];
        cfg.stop.max_bits = 20_000;
        cfg.stop.ber_floor = Some(1e-3);
        let r = run_ber_sweep(&cfg).unwrap();
        assert_eq!(r.points.len(), 1);
        assert!(r.points[0].max_bits_hit);
        assert!(r.to_csv().contains("# max_bits_reached: 20.00"));
    }

    #[test]
    fn papr_curve_shape() {
        let cfg = preset("se0.75/tra").unwrap();
        let c = run_papr(&cfg, 10_000).unwrap();
        assert_eq!(c.samples, 10_000);
        assert_eq!(c.ccdf[0], 1.0);
        assert_eq!(papr_samples_db(&cfg, 5000).unwrap(), papr_samples_db(&cfg, 5000).unwrap());
        assert!(ccdf_csv(&cfg, &c).contains("gamma_db,ccdf"));
    }
}
