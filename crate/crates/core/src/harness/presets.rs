use super::config::{Coding, SimConfig, StopRule};
use crate::channel::ChannelKind;
use crate::error::{Error, Result};
use crate::pattern::{Cardinalities, SchemeName, SchemeParams};

const QPSK: usize = 4;
const QAM8: usize = 8;
const QAM16: usize = 16;

/// Length and construction seed of the LDPC code used by every preset.
pub const DEFAULT_LDPC: Coding = Coding::Ldpc { n: 648, seed: 1 };

struct Row {
    name: &'static str,
    scheme: SchemeName,
    active: usize,
    cards: Cardinalities,
    alpha: f64,
}

const fn row(name: &'static str, scheme: SchemeName, active: usize, cards: Cardinalities, alpha: f64) -> Row {
    Row { name, scheme, active, cards, alpha }
}

const fn one(m: usize) -> Cardinalities {
    Cardinalities { a: m, b: None, c: None, d: None }
}

const fn mixed(a: usize, b: usize, c: usize, d: Option<usize>) -> Cardinalities {
    Cardinalities { a, b: Some(b), c: Some(c), d }
}

use SchemeName::*;

const ROWS: &[Row] = &[
    row("se0.75/tra", Tra, 1, one(QPSK), 0.67),
    row("se0.75/im1", Im1, 1, one(QPSK), 0.67),
    row("se0.75/im2", Im2, 1, one(QPSK), 0.67),
    row("se0.75/im3", Im3, 1, mixed(QPSK, 2, 2, None), 0.67),
    row("se0.75/ofdm-im", OfdmIm, 2, one(QPSK), 1.0),
    row("se1/m1", M1, 1, one(QAM8), 0.625),
    row("se1/im1", Im1, 1, one(QAM8), 0.625),
    row("se1/im2", Im2, 1, one(QAM8), 0.625),
    row("se1/im3", Im3, 1, mixed(QAM8, 4, 2, None), 0.625),
    row("se1/tra", Tra, 2, one(QPSK), 0.75),
    row("se1/im1-23", Im1, 2, one(QPSK), 0.75),
    row("se1/im2-23", Im2, 2, one(QPSK), 0.75),
    row("se1/im3-23", Im3, 2, mixed(QPSK, 2, 4, Some(2)), 0.75),
    row("se1/ofdm-im", OfdmIm, 3, one(QPSK), 1.0),
    row("se1.1/tra", Tra, 3, one(QPSK), 0.9),
    row("se1.1/m2", M2, 1, one(QAM16), 0.675),
    row("se1.1/im1", Im1, 1, one(QAM16), 0.675),
    row("se1.1/im2", Im2, 1, one(QAM16), 0.675),
    row("se1.1/im3", Im3, 1, mixed(QAM16, 4, 4, None), 0.675),
    row("se1.25/tra", Tra, 3, one(QPSK), 0.8),
    row("se1.25/m2", M2, 1, one(QAM16), 0.6),
    row("se1.25/im1", Im1, 1, one(QAM16), 0.6),
    row("se1.25/im2", Im2, 1, one(QAM16), 0.6),
    row("se1.25/im3", Im3, 1, mixed(QAM16, 4, 4, None), 0.6),
];

/// Names accepted by [`preset`], grouped by spectral efficiency.
pub fn preset_names() -> Vec<&'static str> {
    ROWS.iter().map(|r| r.name).collect()
}

pub fn preset(name: &str) -> Result<SimConfig> {
    let r = ROWS
        .iter()
        .find(|r| r.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::UnknownPreset(format!("`{name}`; known presets: {}", preset_names().join(", "))))?;
    Ok(SimConfig {
        preset: Some(r.name.to_string()),
        scheme: SchemeParams { name: r.scheme, k: 4, active: r.active, cardinalities: r.cards, alpha: r.alpha },
        n: 12,
        coding: DEFAULT_LDPC,
        channel: ChannelKind::Awgn,
        ebn0_db: (0..=12).map(f64::from).collect(),
        stop: StopRule::default(),
        seed: 1,
        wave: 64,
        uncoded_blocks: 32,
        max_log: false,
        output: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::make_scheme;

    #[test]
    fn all_presets_build() {
        for name in preset_names() {
            let cfg = preset(name).unwrap();
            cfg.validate().unwrap();
            make_scheme::<f64>(cfg.scheme).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
        assert_eq!(preset_names().len(), 24);
    }

    #[test]
    fn examples() {
        let c = preset("se1.1/im2").unwrap();
        assert_eq!((c.scheme.name, c.scheme.active, c.scheme.cardinalities.a, c.scheme.alpha), (Im2, 1, 16, 0.675));
        assert_eq!(c.coding.rate(), 0.5);
        let c = preset("se0.75/ofdm-im").unwrap();
        assert_eq!((c.scheme.name, c.scheme.active, c.scheme.alpha), (OfdmIm, 2, 1.0));
        let c = preset("se1/m1").unwrap();
        assert_eq!((c.scheme.name, c.scheme.cardinalities.a, c.scheme.alpha), (M1, 8, 0.625));
        assert!(matches!(preset("se9/x"), Err(Error::UnknownPreset(_))));
    }
}
