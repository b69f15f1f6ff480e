//! Monte Carlo drivers: configurations, presets, the transmit/receive chain
//! and Eb/N0 sweeps.

mod chain;
mod config;
mod presets;
mod sweep;

pub use chain::{coded_batch_blocks, run_chain_once, trial_rng, ChainOutput, Link};
pub use config::{Coding, SimConfig, StopRule};
pub use presets::{preset, preset_names, DEFAULT_LDPC};
pub use sweep::{
    ccdf_csv, csv_header, default_gamma_grid, papr_samples_db, run_ber_sweep, run_papr, PointResult, TrialResult,
    RNG_DESCRIPTION,
};
