//! Additive white Gaussian noise and a static multipath channel.

use crate::error::{config, Result};
use crate::linalg::ComplexMatrix;
use crate::pattern::SchemeSpec;
use crate::scalar::{Cplx, Real};
use crate::sefdm::CarrierMatrix;
use num_traits::Zero;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

/// Complex noise variance per sample for a configured Eb/N0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    pub n0: f64,
    pub ebn0_db: f64,
}

impl NoiseModel {
    pub fn new(ebn0_db: f64, n0: f64) -> Result<Self> {
        if !(n0 > 0.0) {
            return config(format!("noise variance must be positive, got {n0}"));
        }
        Ok(Self { n0, ebn0_db })
    }
}

/// Noise variance for unit average transmit power per sample.
///
/// A block of `n` samples carries `coding_rate · L · g` information bits, so
/// `Eb = n / (R·L·G)` and `N0 = Eb / 10^(Eb/N0 / 10)`.
pub fn ebn0_to_n0<T: Real>(ebn0_db: f64, scheme: &SchemeSpec<T>, coding_rate: f64, g: usize, n: usize) -> f64 {
    let info_bits = coding_rate * (scheme.bits_per_subblock() * g) as f64;
    let eb = n as f64 / info_bits;
    eb / 10f64.powf(ebn0_db / 10.0)
}

/// `Y = X + W` with `W ~ CN(0, N0)` i.i.d.
pub fn awgn<T: Real, R: Rng + ?Sized>(x: &[Cplx<T>], n0: f64, rng: &mut R) -> Vec<Cplx<T>> {
    let mut y = x.to_vec();
    add_awgn(&mut y, n0, rng);
    y
}

/// In-place variant of [`awgn`].
pub fn add_awgn<T: Real, R: Rng + ?Sized>(x: &mut [Cplx<T>], n0: f64, rng: &mut R) {
    let sigma = (n0 / 2.0).sqrt();
    for z in x.iter_mut() {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        *z += Cplx::new(T::of(re * sigma), T::of(im * sigma));
    }
}

/// Tapped delay line with a cyclic prefix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultipathChannel {
    /// `(delay in samples, complex gain)`.
    pub taps: Vec<(usize, Cplx<f64>)>,
    pub cp_len: usize,
}

impl MultipathChannel {
    pub fn new(taps: Vec<(usize, Cplx<f64>)>, cp_len: usize) -> Result<Self> {
        let ch = Self { taps, cp_len };
        ch.validate()?;
        Ok(ch)
    }

    /// `h(t) = 0.9137 δ(t) + 0.3179 δ(t - 2Ts) - 0.2532 e^{jπ/2} δ(t - 3Ts)`.
    pub fn paper_three_tap() -> Self {
        Self {
            taps: vec![
                (0, Cplx::new(0.9137, 0.0)),
                (2, Cplx::new(0.3179, 0.0)),
                (3, Cplx::new(0.0, -0.2532)),
            ],
            cp_len: 3,
        }
    }

    pub fn identity() -> Self {
        Self { taps: vec![(0, Cplx::new(1.0, 0.0))], cp_len: 0 }
    }

    pub fn max_delay(&self) -> usize {
        self.taps.iter().map(|t| t.0).max().unwrap_or(0)
    }

    pub fn energy(&self) -> f64 {
        self.taps.iter().map(|t| t.1.norm_sqr()).sum()
    }

    fn validate(&self) -> Result<()> {
        if self.taps.is_empty() {
            return config("multipath channel needs at least one tap");
        }
        if self.cp_len < self.max_delay() {
            return config(format!(
                "cyclic prefix of {} samples is shorter than the maximum delay {}",
                self.cp_len,
                self.max_delay()
            ));
        }
        Ok(())
    }
}

/// Adds the cyclic prefix, convolves with the taps and strips the prefix.
pub fn multipath_apply<T: Real>(x: &[Cplx<T>], ch: &MultipathChannel) -> Result<Vec<Cplx<T>>> {
    ch.validate()?;
    let n = x.len();
    if ch.cp_len > n {
        return config(format!("cyclic prefix {} longer than block {n}", ch.cp_len));
    }
    let mut framed = Vec::with_capacity(n + ch.cp_len);
    framed.extend_from_slice(&x[n - ch.cp_len..]);
    framed.extend_from_slice(x);
    let mut y = vec![Cplx::zero(); n];
    for (i, yi) in y.iter_mut().enumerate() {
        let t = i + ch.cp_len;
        for &(d, h) in &ch.taps {
            let h = Cplx::new(T::of(h.re), T::of(h.im));
            *yi += h * framed[t - d];
        }
    }
    Ok(y)
}

/// Tap-sequence DFT at `n_points` uniform normalised frequencies `f/n_points`.
pub fn frequency_response(ch: &MultipathChannel, n_points: usize) -> Result<Vec<Cplx<f64>>> {
    if n_points == 0 {
        return config("frequency grid needs at least one point");
    }
    Ok((0..n_points)
        .map(|f| {
            ch.taps
                .iter()
                .map(|&(d, h)| {
                    let turns = ((d * f) % n_points) as f64 / n_points as f64;
                    h * Cplx::from_polar(1.0, -2.0 * std::f64::consts::PI * turns)
                })
                .fold(Cplx::zero(), |a, b| a + b)
        })
        .collect())
}

/// `Φ^H H Φ`, where `H` is the circulant matrix the cyclic prefix induces.
pub fn effective_matrix<T: Real>(cm: &CarrierMatrix<T>, ch: &MultipathChannel) -> Result<ComplexMatrix<T>> {
    let phi = cm.matrix();
    let n = cm.n();
    let mut out = ComplexMatrix::zeros(n, n);
    for col in 0..n {
        let column: Vec<Cplx<T>> = (0..n).map(|r| phi[(r, col)]).collect();
        let through = multipath_apply(&column, ch)?;
        for (r, z) in cm.demodulate(&through).into_iter().enumerate() {
            out[(r, col)] = z;
        }
    }
    Ok(out)
}

/// Named channel selection used by configurations and the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChannelKind {
    Awgn,
    Paper3tap,
}

impl std::str::FromStr for ChannelKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "awgn" => Ok(ChannelKind::Awgn),
            "paper3tap" | "3tap" => Ok(ChannelKind::Paper3tap),
            other => config(format!("unknown channel `{other}`")),
        }
    }
}
