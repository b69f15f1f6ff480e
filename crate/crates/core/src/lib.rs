//! Spectrally efficient FDM with subcarrier index modulation.
//!
//! The transmit chain maps index and data bits onto subblocks of `K`
//! subcarriers ([`pattern`]), modulates them with a bandwidth-compressed
//! carrier matrix ([`sefdm`]), passes them through AWGN or a static multipath
//! channel ([`channel`]) and detects each subblock with exact candidate LLRs
//! ([`detector`]). Rate-1/2 LDPC coding is in [`ldpc`]; Monte Carlo drivers
//! and presets live in [`harness`].
//!
//! Numerical code is generic over [`Real`] (`f32` or `f64`); aliases below
//! fix the common `f64` and `f32` instantiations.

pub mod channel;
pub mod constellation;
pub mod detector;
pub mod error;
pub mod harness;
pub mod ldpc;
pub mod linalg;
pub mod metrics;
pub mod pattern;
pub mod scalar;
pub mod sefdm;

pub use error::{Error, Result};
pub use scalar::{Cplx, Real};

pub type Alphabet64 = constellation::Alphabet<f64>;
pub type Alphabet32 = constellation::Alphabet<f32>;
pub type SchemeSpec64 = pattern::SchemeSpec<f64>;
pub type SchemeSpec32 = pattern::SchemeSpec<f32>;
pub type CarrierMatrix64 = sefdm::CarrierMatrix<f64>;
pub type CarrierMatrix32 = sefdm::CarrierMatrix<f32>;
pub type CorrelationMatrix64 = sefdm::CorrelationMatrix<f64>;
pub type CorrelationMatrix32 = sefdm::CorrelationMatrix<f32>;
pub type BlockDetector64 = detector::BlockDetector<f64>;
pub type BlockDetector32 = detector::BlockDetector<f32>;
pub type LlrFrame64 = detector::LlrFrame<f64>;
pub type LlrFrame32 = detector::LlrFrame<f32>;
pub type ComplexMatrix64 = linalg::ComplexMatrix<f64>;
pub type ComplexMatrix32 = linalg::ComplexMatrix<f32>;
