//! Bit error tallies, PAPR statistics, spectral efficiency and detector
//! complexity.

use crate::error::{usage, Error, Result};
use crate::pattern::SchemeSpec;
use crate::scalar::{Cplx, Real};
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::ops::{Add, AddAssign};

/// Error counters kept separately for index and data bits.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BerTally {
    pub index_errors: u64,
    pub index_bits: u64,
    pub data_errors: u64,
    pub data_bits: u64,
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

fn hamming(a: &[u8], b: &[u8]) -> u64 {
    a.iter().zip(b).filter(|(x, y)| (*x & 1) != (*y & 1)).count() as u64
}

impl BerTally {
    pub fn index_ber(&self) -> f64 {
        ratio(self.index_errors, self.index_bits)
    }

    pub fn data_ber(&self) -> f64 {
        ratio(self.data_errors, self.data_bits)
    }

    pub fn avg_ber(&self) -> f64 {
        ratio(self.errors(), self.bits())
    }

    pub fn errors(&self) -> u64 {
        self.index_errors + self.data_errors
    }

    pub fn bits(&self) -> u64 {
        self.index_bits + self.data_bits
    }

    /// Accumulates one pair of aligned transmit/receive streams.
    pub fn record(&mut self, tx_index: &[u8], tx_data: &[u8], rx_index: &[u8], rx_data: &[u8]) -> Result<()> {
        if tx_index.len() != rx_index.len() || tx_data.len() != rx_data.len() {
            return usage(format!(
                "bit stream lengths differ: index {} vs {}, data {} vs {}",
                tx_index.len(),
                rx_index.len(),
                tx_data.len(),
                rx_data.len()
            ));
        }
        self.index_errors += hamming(tx_index, rx_index);
        self.index_bits += tx_index.len() as u64;
        self.data_errors += hamming(tx_data, rx_data);
        self.data_bits += tx_data.len() as u64;
        Ok(())
    }

    /// 95% normal-approximation half-width of the average BER.
    pub fn confidence_half_width(&self) -> f64 {
        let n = self.bits();
        if n == 0 {
            return 1.0;
        }
        let p = self.avg_ber();
        1.96 * (p * (1.0 - p) / n as f64).sqrt()
    }
}

impl Add for BerTally {
    type Output = BerTally;

    fn add(mut self, rhs: BerTally) -> BerTally {
        self += rhs;
        self
    }
}

impl AddAssign for BerTally {
    fn add_assign(&mut self, rhs: BerTally) {
        self.index_errors += rhs.index_errors;
        self.index_bits += rhs.index_bits;
        self.data_errors += rhs.data_errors;
        self.data_bits += rhs.data_bits;
    }
}

impl std::iter::Sum for BerTally {
    fn sum<I: Iterator<Item = BerTally>>(iter: I) -> Self {
        iter.fold(BerTally::default(), Add::add)
    }
}

pub fn ber_tally(tx_index: &[u8], tx_data: &[u8], rx_index: &[u8], rx_data: &[u8]) -> Result<BerTally> {
    let mut t = BerTally::default();
    t.record(tx_index, tx_data, rx_index, rx_data)?;
    Ok(t)
}

/// Peak-to-average power ratio (linear) of one block of samples.
pub fn papr<T: Real>(x: &[Cplx<T>]) -> Result<f64> {
    let powers: Vec<f64> = x.iter().map(|z| z.norm_sqr().as_f64()).collect();
    let total: f64 = powers.iter().sum();
    if x.is_empty() || total <= 0.0 {
        return Err(Error::UndefinedInput("PAPR of an all-zero block".into()));
    }
    let peak = powers.iter().copied().fold(0.0, f64::max);
    Ok(peak / (total / x.len() as f64))
}

pub fn to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

/// Empirical `Pr(PAPR > γ)` on a threshold grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CcdfCurve {
    pub gamma_db: Vec<f64>,
    pub ccdf: Vec<f64>,
    pub samples: usize,
    /// Sorted PAPR samples in dB, kept for quantile queries.
    #[serde(skip)]
    sorted_db: Vec<f64>,
}

/// `papr_db` are PAPR samples in dB; `thresholds_db` is the γ grid.
pub fn ccdf(papr_db: &[f64], thresholds_db: &[f64]) -> Result<CcdfCurve> {
    if papr_db.is_empty() {
        return usage("CCDF needs at least one PAPR sample");
    }
    let mut sorted = papr_db.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let ccdf = thresholds_db
        .iter()
        .map(|&g| {
            let not_above = sorted.partition_point(|&x| x <= g);
            (sorted.len() - not_above) as f64 / n
        })
        .collect();
    Ok(CcdfCurve { gamma_db: thresholds_db.to_vec(), ccdf, samples: sorted.len(), sorted_db: sorted })
}

/// `lo..=hi` in steps of `step`.
pub fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    (0..count).map(|i| lo + i as f64 * step).collect()
}

impl CcdfCurve {
    /// Smallest sampled γ with `Pr(PAPR > γ) ≤ p`.
    pub fn quantile_db(&self, p: f64) -> f64 {
        let n = self.sorted_db.len();
        let allowed = (p * n as f64).floor() as usize;
        let idx = n.saturating_sub(allowed + 1);
        self.sorted_db[idx]
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("gamma_db,ccdf\n");
        for (g, p) in self.gamma_db.iter().zip(&self.ccdf) {
            let _ = writeln!(out, "{g:.3},{p:.8}");
        }
        out
    }
}

/// `(1/α) · R · L / K` in bit/s/Hz.
pub fn spectral_efficiency<T: Real>(scheme: &SchemeSpec<T>, coding_rate: f64) -> f64 {
    coding_rate * scheme.bits_per_subblock() as f64 / (scheme.alpha() * scheme.k() as f64)
}

/// Candidate metrics evaluated per coded bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Complexity {
    /// Ceiling of `raw`.
    pub theta: u64,
    pub raw: Ratio<u64>,
}

/// `⌈U · M'^{K_A'} / L⌉` with the pattern-1 cardinality and active count.
pub fn complexity<T: Real>(scheme: &SchemeSpec<T>) -> Complexity {
    let u = scheme.u() as u64;
    let m = scheme.effective_cardinality() as u64;
    let ka = scheme.effective_active() as u32;
    let raw = Ratio::new(u * m.pow(ka), scheme.bits_per_subblock() as u64);
    Complexity { theta: raw.ceil().to_integer(), raw }
}

/// One BER curve point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BerPoint {
    pub ebn0_db: f64,
    pub tally: BerTally,
}

pub fn ber_csv(points: &[BerPoint]) -> String {
    let mut out = String::from("ebn0_db,index_ber,data_ber,avg_ber,bits_counted\n");
    for p in points {
        let t = &p.tally;
        let _ = writeln!(
            out,
            "{:.2},{:.6e},{:.6e},{:.6e},{}",
            p.ebn0_db,
            t.index_ber(),
            t.data_ber(),
            t.avg_ber(),
            t.bits()
        );
    }
    out
}

/// Rows of `(scheme, se, theta)`.
pub fn tables_csv<T: Real>(schemes: &[(String, &SchemeSpec<T>)], coding_rate: f64) -> String {
    let mut out = String::from("scheme,se,theta\n");
    for (name, s) in schemes {
        let _ = writeln!(out, "{name},{:.4},{}", spectral_efficiency(s, coding_rate), complexity(s).theta);
    }
    out
}
