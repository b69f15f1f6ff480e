use crate::channel::ChannelKind;
use crate::error::{config, Result};
use crate::pattern::SchemeParams;
use serde::{Deserialize, Serialize};

/// Channel coding applied to the index and data streams separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Coding {
    /// Bits go straight to the mapper; detection is minimum-Ψ.
    None,
    /// Rate-1/2 regular LDPC code of length `n` built from `seed`.
    Ldpc { n: usize, seed: u64 },
}

impl Coding {
    pub fn rate(&self) -> f64 {
        match self {
            Coding::None => 1.0,
            Coding::Ldpc { .. } => 0.5,
        }
    }
}

/// When to stop accumulating trials at one Eb/N0 point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StopRule {
    pub min_errors: u64,
    pub max_bits: u64,
    /// Skip the rest of the grid once a point's average BER drops below this.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ber_floor: Option<f64>,
}

impl Default for StopRule {
    fn default() -> Self {
        StopRule { min_errors: 200, max_bits: 10_000_000, ber_floor: None }
    }
}

fn default_n() -> usize {
    12
}

fn default_wave() -> usize {
    64
}

fn default_uncoded_blocks() -> usize {
    32
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    pub scheme: SchemeParams,
    /// Total subcarriers per block.
    #[serde(default = "default_n")]
    pub n: usize,
    pub coding: Coding,
    pub channel: ChannelKind,
    pub ebn0_db: Vec<f64>,
    #[serde(default)]
    pub stop: StopRule,
    pub seed: u64,
    /// Trials evaluated in parallel before the stop rule is consulted.
    #[serde(default = "default_wave")]
    pub wave: usize,
    /// Blocks per trial when uncoded; coded trials span whole codewords.
    #[serde(default = "default_uncoded_blocks")]
    pub uncoded_blocks: usize,
    #[serde(default)]
    pub max_log: bool,
    /// Where the CLI writes results. Not echoed into output headers.
    #[serde(default, skip_serializing)]
    pub output: Option<String>,
}

impl SimConfig {
    pub fn k(&self) -> usize {
        self.scheme.k
    }

    /// Subblocks per block.
    pub fn g(&self) -> usize {
        self.n / self.scheme.k
    }

    pub fn validate(&self) -> Result<()> {
        if self.scheme.k == 0 || self.n == 0 || self.n % self.scheme.k != 0 {
            return config(format!("N = {} must be a positive multiple of K = {}", self.n, self.scheme.k));
        }
        if self.ebn0_db.is_empty() || self.ebn0_db.iter().any(|x| !x.is_finite()) {
            return config("Eb/N0 grid must be a non-empty list of finite values");
        }
        if self.stop.min_errors == 0 || self.stop.max_bits == 0 {
            return config("stop rule limits must be positive");
        }
        if self.wave == 0 || self.uncoded_blocks == 0 {
            return config("wave size and blocks per trial must be positive");
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("configuration serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: SimConfig =
            serde_json::from_str(text).map_err(|e| crate::Error::Config(format!("invalid configuration: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }
}
