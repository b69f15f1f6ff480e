//! Subcarrier pattern tables.
//!
//! A scheme maps `L1` index bits onto one of `U = 2^L1` pattern entries. Each
//! entry fixes which of the `K` subcarriers in a subblock are active and what
//! every active slot carries: a data symbol, a copy of an earlier slot, or the
//! fixed signalling point. All entries of a scheme carry the same number `L2`
//! of data bits.
//!
//! Built-in tables (`K = 4`, subcarriers numbered from 0, index bits `00..11`):
//!
//! | family          | 00      | 01        | 10        | 11        |
//! |-----------------|---------|-----------|-----------|-----------|
//! | traditional, 1  | {0}     | {3}       | {1}       | {2}       |
//! | traditional, 2  | {0,1}   | {1,2}     | {2,3}     | {0,3}     |
//! | traditional, 3  | {1,2,3} | {0,1,2}   | {0,2,3}   | {0,1,3}   |
//! | proposed, (1,2) | {0}     | {0,2}     | {1}       | {2}       |
//! | proposed, (2,3) | {1,2}   | {0,1,2}   | {0,2}     | {0,1}     |
//!
//! The proposed tables never activate the last subcarrier of a subblock.

use crate::constellation::{build_alphabet, value_to_bits, Alphabet};
use crate::error::{usage, Error, Result};
use crate::scalar::{Cplx, Real};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Which table family and pattern-2 realisation a scheme uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeName {
    /// Traditional table, any position may be active.
    Tra,
    /// Proposed table, signalling point on the extra slot of pattern-2.
    Im1,
    /// Proposed table, repeated data symbol on the extra slot of pattern-2.
    Im2,
    /// Proposed table, mixed cardinalities in pattern-2.
    Im3,
    /// Traditional single-active table with 8QAM.
    M1,
    /// Traditional single-active table with 16QAM.
    M2,
    /// Orthogonal baseline: traditional table at α = 1.
    OfdmIm,
    /// Caller-supplied table.
    Custom,
}

impl SchemeName {
    pub fn is_proposed(self) -> bool {
        matches!(self, SchemeName::Im1 | SchemeName::Im2 | SchemeName::Im3)
    }

    pub fn display_name(self) -> &'static str {
        match self {
            SchemeName::Tra => "SEFDM-IM-Tra",
            SchemeName::Im1 => "SEFDM-IM-1",
            SchemeName::Im2 => "SEFDM-IM-2",
            SchemeName::Im3 => "SEFDM-IM-3",
            SchemeName::M1 => "SEFDM-IM-M1",
            SchemeName::M2 => "SEFDM-IM-M2",
            SchemeName::OfdmIm => "OFDM-IM",
            SchemeName::Custom => "custom",
        }
    }
}

impl std::str::FromStr for SchemeName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "tra" => SchemeName::Tra,
            "im1" | "im-1" => SchemeName::Im1,
            "im2" | "im-2" => SchemeName::Im2,
            "im3" | "im-3" => SchemeName::Im3,
            "m1" => SchemeName::M1,
            "m2" => SchemeName::M2,
            "ofdm-im" | "ofdmim" => SchemeName::OfdmIm,
            other => return Err(Error::Config(format!("unknown scheme name `{other}`"))),
        })
    }
}

/// Alphabet sizes. `a` is used by every pattern except pattern-2 of IM-3,
/// which uses `b`, `c` and (for the three-slot table) `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cardinalities {
    pub a: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
}

impl Cardinalities {
    pub fn single(a: usize) -> Self {
        Self { a, b: None, c: None, d: None }
    }

    pub fn mixed(a: usize, b: usize, c: usize, d: Option<usize>) -> Self {
        Self { a, b: Some(b), c: Some(c), d }
    }
}

/// Construction parameters for a built-in scheme.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchemeParams {
    pub name: SchemeName,
    pub k: usize,
    /// Active subcarriers in the traditional table, or in pattern-1 of a
    /// proposed table (1 for `(1,2)`, 2 for `(2,3)`).
    pub active: usize,
    pub cardinalities: Cardinalities,
    pub alpha: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ActivationPattern {
    flags: Vec<bool>,
}

impl ActivationPattern {
    pub fn new(flags: Vec<bool>) -> Result<Self> {
        if !flags.iter().any(|&f| f) {
            return Err(Error::SchemeValidation(
                "activation pattern has no active subcarrier".into(),
            ));
        }
        Ok(Self { flags })
    }

    pub fn from_positions(k: usize, positions: &[usize]) -> Result<Self> {
        let mut flags = vec![false; k];
        for &p in positions {
            if p >= k {
                return Err(Error::SchemeValidation(format!(
                    "active position {p} outside subblock of {k}"
                )));
            }
            flags[p] = true;
        }
        Self::new(flags)
    }

    pub fn flags(&self) -> &[bool] {
        &self.flags
    }

    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    pub fn active_count(&self) -> usize {
        self.flags.iter().filter(|&&f| f).count()
    }

    pub fn positions(&self) -> Vec<usize> {
        self.flags
            .iter()
            .enumerate()
            .filter_map(|(i, &f)| f.then_some(i))
            .collect()
    }
}

impl fmt::Display for ActivationPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<&str> = self.flags.iter().map(|&b| if b { "1" } else { "0" }).collect();
        write!(f, "{{{}}}", s.join(","))
    }
}

/// What an active slot transmits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SlotRole {
    /// Data symbol from an `m`-ary alphabet; `tag` is the alphabet letter
    /// used when printing tables.
    Data { m: usize, tag: char },
    /// Copy of the symbol on an earlier active subcarrier of the same entry.
    Repeat { of: usize },
    /// Receiver-known signalling point of the `m`-ary alphabet.
    Signalling { m: usize },
}

/// Caller-facing description of one table row, used for custom tables.
#[derive(Debug, Clone, PartialEq)]
pub struct EntryDef {
    pub index_bits: usize,
    /// `(subcarrier, role)` for each active subcarrier.
    pub slots: Vec<(usize, SlotRole)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PatternEntry<T> {
    index_bits: usize,
    activation: ActivationPattern,
    slots: Vec<(usize, SlotRole)>,
    /// Scaled alphabet for each data or signalling slot, aligned with `slots`.
    alphabets: Vec<Option<Alphabet<T>>>,
    scale: T,
}

impl<T: Real> PatternEntry<T> {
    pub fn index_value(&self) -> usize {
        self.index_bits
    }

    pub fn activation(&self) -> &ActivationPattern {
        &self.activation
    }

    pub fn slots(&self) -> &[(usize, SlotRole)] {
        &self.slots
    }

    /// `√(K / K_A)` for this entry's own active count.
    pub fn scale(&self) -> T {
        self.scale
    }

    pub fn data_bits(&self) -> usize {
        self.slots
            .iter()
            .map(|(_, r)| match r {
                SlotRole::Data { m, .. } => m.trailing_zeros() as usize,
                _ => 0,
            })
            .sum()
    }

    fn symbols(&self, mut data: usize, l2: usize) -> Vec<Cplx<T>> {
        // data bits are consumed MSB first, in slot order
        let mut remaining = l2;
        let mut out: Vec<Cplx<T>> = Vec::with_capacity(self.slots.len());
        for (i, (_, role)) in self.slots.iter().enumerate() {
            let sym = match *role {
                SlotRole::Data { m, .. } => {
                    let w = m.trailing_zeros() as usize;
                    remaining -= w;
                    let label = data >> remaining;
                    data &= (1 << remaining) - 1;
                    self.alphabets[i].as_ref().expect("data slot alphabet").point(label)
                }
                SlotRole::Signalling { .. } => self.alphabets[i]
                    .as_ref()
                    .expect("signalling slot alphabet")
                    .signalling_point(),
                SlotRole::Repeat { of } => {
                    let j = self
                        .slots
                        .iter()
                        .position(|(p, _)| *p == of)
                        .expect("validated repeat source");
                    out[j]
                }
            };
            out.push(sym);
        }
        out
    }

    fn render(&self) -> String {
        let k = self.activation.len();
        let mut cells = vec!["0".to_string(); k];
        let mut data_no = 0;
        let mut by_position = Vec::new();
        for (pos, role) in &self.slots {
            let txt = match *role {
                SlotRole::Data { tag, .. } => {
                    data_no += 1;
                    let n = if tag == 'A' { data_no } else { 1 };
                    format!("S_{tag}({n})")
                }
                SlotRole::Signalling { .. } => "S_A(*)".to_string(),
                SlotRole::Repeat { of } => by_position
                    .iter()
                    .find(|(p, _)| *p == of)
                    .map(|(_, t): &(usize, String)| t.clone())
                    .unwrap_or_default(),
            };
            by_position.push((*pos, txt.clone()));
            cells[*pos] = txt;
        }
        format!("[{}]", cells.join(", "))
    }

    fn roles(&self) -> String {
        self.slots
            .iter()
            .map(|(p, r)| match *r {
                SlotRole::Data { m, .. } => format!("{p}:data({m})"),
                SlotRole::Repeat { of } => format!("{p}:repeat({of})"),
                SlotRole::Signalling { m } => format!("{p}:signal({m})"),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Complete description of one index-modulated waveform configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemeSpec<T> {
    name: SchemeName,
    k: usize,
    entries: Vec<PatternEntry<T>>,
    l1: usize,
    l2: usize,
    cardinalities: Cardinalities,
    alpha: f64,
}

/// One hypothesis of the detector: an index/data bit pair and its subblock.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate<T> {
    pub index: usize,
    pub data: usize,
    pub tx: Vec<Cplx<T>>,
}

/// One subblock of the transmitter output.
#[derive(Debug, Clone, PartialEq)]
pub struct SubblockCodeword<T> {
    pub activation: ActivationPattern,
    /// Symbols on the active subcarriers, in subcarrier order.
    pub symbols: Vec<Cplx<T>>,
    /// Length-`K` subblock.
    pub tx: Vec<Cplx<T>>,
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn data(m: usize) -> SlotRole {
    SlotRole::Data { m, tag: 'A' }
}

fn tagged(m: usize, tag: char) -> SlotRole {
    SlotRole::Data { m, tag }
}

fn traditional_table(active: usize, m: usize) -> Result<Vec<EntryDef>> {
    let rows: [&[usize]; 4] = match active {
        1 => [&[0], &[3], &[1], &[2]],
        2 => [&[0, 1], &[1, 2], &[2, 3], &[0, 3]],
        3 => [&[1, 2, 3], &[0, 1, 2], &[0, 2, 3], &[0, 1, 3]],
        _ => {
            return Err(Error::Config(format!(
                "no built-in traditional table with {active} active subcarriers"
            )))
        }
    };
    Ok(rows
        .iter()
        .enumerate()
        .map(|(i, pos)| EntryDef {
            index_bits: i,
            slots: pos.iter().map(|&p| (p, data(m))).collect(),
        })
        .collect())
}

fn proposed_table(name: SchemeName, active: usize, cards: Cardinalities) -> Result<Vec<EntryDef>> {
    let a = cards.a;
    let need = |v: Option<usize>, which: &str| {
        v.ok_or_else(|| Error::SchemeValidation(format!("IM-3 requires cardinality M_{which}")))
    };
    let (regular, pattern2): ([&[usize]; 3], Vec<(usize, SlotRole)>) = match active {
        1 => {
            let p2 = match name {
                SchemeName::Im1 => vec![(0, SlotRole::Signalling { m: a }), (2, data(a))],
                SchemeName::Im2 => vec![(0, data(a)), (2, SlotRole::Repeat { of: 0 })],
                SchemeName::Im3 => {
                    let (b, c) = (need(cards.b, "B")?, need(cards.c, "C")?);
                    if cards.d.is_some() {
                        return Err(Error::SchemeValidation(
                            "two-slot pattern-2 takes only M_B and M_C".into(),
                        ));
                    }
                    if b * c != a {
                        return Err(Error::SchemeValidation(format!(
                            "pattern-2 cardinalities must satisfy M_B·M_C = M_A, got {b}·{c} != {a}"
                        )));
                    }
                    if b == a && c == a {
                        return Err(Error::SchemeValidation(
                            "pattern-2 must use at least one cardinality different from M_A".into(),
                        ));
                    }
                    vec![(0, tagged(b, 'B')), (2, tagged(c, 'C'))]
                }
                _ => unreachable!(),
            };
            ([&[0], &[1], &[2]], p2)
        }
        2 => {
            let p2 = match name {
                SchemeName::Im1 => vec![
                    (0, SlotRole::Signalling { m: a }),
                    (1, data(a)),
                    (2, data(a)),
                ],
                SchemeName::Im2 => vec![(0, data(a)), (1, SlotRole::Repeat { of: 0 }), (2, data(a))],
                SchemeName::Im3 => {
                    let (b, c, d) = (need(cards.b, "B")?, need(cards.c, "C")?, need(cards.d, "D")?);
                    if b * c * d != a * a {
                        return Err(Error::SchemeValidation(format!(
                            "pattern-2 cardinalities must satisfy M_B·M_C·M_D = M_A², got {b}·{c}·{d} != {}",
                            a * a
                        )));
                    }
                    if b == a && c == a && d == a {
                        return Err(Error::SchemeValidation(
                            "pattern-2 must use at least one cardinality different from M_A".into(),
                        ));
                    }
                    vec![(0, tagged(b, 'B')), (1, tagged(c, 'C')), (2, tagged(d, 'D'))]
                }
                _ => unreachable!(),
            };
            ([&[1, 2], &[0, 2], &[0, 1]], p2)
        }
        _ => {
            return Err(Error::Config(format!(
                "no built-in proposed table with {active} active subcarriers in pattern-1"
            )))
        }
    };
    let row = |i: usize, pos: &[usize]| EntryDef {
        index_bits: i,
        slots: pos.iter().map(|&p| (p, data(a))).collect(),
    };
    Ok(vec![
        row(0, regular[0]),
        EntryDef { index_bits: 1, slots: pattern2 },
        row(2, regular[1]),
        row(3, regular[2]),
    ])
}

/// Builds one of the built-in schemes and validates it.
pub fn make_scheme<T: Real>(params: SchemeParams) -> Result<SchemeSpec<T>> {
    let SchemeParams { name, k, active, cardinalities: cards, alpha } = params;
    if k != 4 {
        return Err(Error::Config(format!(
            "built-in tables exist only for K = 4 (got {k}); use SchemeSpec::from_entries"
        )));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Config(format!("compression factor must lie in (0, 1], got {alpha}")));
    }
    if name != SchemeName::Im3 && (cards.b.is_some() || cards.c.is_some() || cards.d.is_some()) {
        return Err(Error::SchemeValidation(format!(
            "{} uses a single cardinality",
            name.display_name()
        )));
    }
    let defs = match name {
        SchemeName::Tra => traditional_table(active, cards.a)?,
        SchemeName::M1 | SchemeName::M2 => {
            let want = if name == SchemeName::M1 { 8 } else { 16 };
            if active != 1 || cards.a != want {
                return Err(Error::SchemeValidation(format!(
                    "{} is the single-active table with {want}-ary symbols",
                    name.display_name()
                )));
            }
            traditional_table(1, cards.a)?
        }
        SchemeName::OfdmIm => {
            if alpha != 1.0 {
                return Err(Error::SchemeValidation("OFDM-IM requires α = 1".into()));
            }
            traditional_table(active, cards.a)?
        }
        SchemeName::Im1 | SchemeName::Im2 | SchemeName::Im3 => proposed_table(name, active, cards)?,
        SchemeName::Custom => {
            return Err(Error::Config("custom schemes are built with SchemeSpec::from_entries".into()))
        }
    };
    let scheme = SchemeSpec::assemble(name, k, alpha, cards, defs)?;
    if !name.is_proposed() {
        let l1 = (binomial(k, active) as f64).log2().floor() as usize;
        if scheme.l1 != l1 {
            return Err(Error::SchemeValidation(format!(
                "index bits {} differ from floor(log2 C({k},{active})) = {l1}",
                scheme.l1
            )));
        }
    }
    Ok(scheme)
}

impl<T: Real> SchemeSpec<T> {
    /// Custom table for `K` other than the built-in ones; it must keep the last
    /// subcarrier of every entry unused.
    pub fn from_entries(k: usize, alpha: f64, cardinalities: Cardinalities, entries: Vec<EntryDef>) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::Config(format!("compression factor must lie in (0, 1], got {alpha}")));
        }
        Self::assemble(SchemeName::Custom, k, alpha, cardinalities, entries)
    }

    fn assemble(name: SchemeName, k: usize, alpha: f64, cards: Cardinalities, mut defs: Vec<EntryDef>) -> Result<Self> {
        let u = defs.len();
        if u == 0 || !u.is_power_of_two() {
            return Err(Error::SchemeValidation(format!(
                "number of patterns must be a power of two, got {u}"
            )));
        }
        let l1 = u.trailing_zeros() as usize;
        defs.sort_by_key(|d| d.index_bits);
        if defs.iter().enumerate().any(|(i, d)| d.index_bits != i) {
            return Err(Error::SchemeValidation(
                "index bit values must cover every L1-bit word exactly once".into(),
            ));
        }
        let mut entries = Vec::with_capacity(u);
        for def in defs {
            let positions: Vec<usize> = def.slots.iter().map(|(p, _)| *p).collect();
            if positions.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::SchemeValidation(format!(
                    "entry {} lists its active subcarriers out of order",
                    def.index_bits
                )));
            }
            let activation = ActivationPattern::from_positions(k, &positions)?;
            let active = activation.active_count();
            let scale = T::of((k as f64 / active as f64).sqrt());
            let mut alphabets = Vec::with_capacity(def.slots.len());
            for (i, (_, role)) in def.slots.iter().enumerate() {
                alphabets.push(match *role {
                    SlotRole::Data { m, .. } | SlotRole::Signalling { m } => Some(build_alphabet(m, scale)?),
                    SlotRole::Repeat { of } => {
                        if !positions[..i].contains(&of) {
                            return Err(Error::SchemeValidation(format!(
                                "entry {} repeats subcarrier {of}, which is not an earlier active slot",
                                def.index_bits
                            )));
                        }
                        None
                    }
                });
            }
            entries.push(PatternEntry {
                index_bits: def.index_bits,
                activation,
                slots: def.slots,
                alphabets,
                scale,
            });
        }
        let l2 = entries[0].data_bits();
        if let Some(e) = entries.iter().find(|e| e.data_bits() != l2) {
            return Err(Error::SchemeValidation(format!(
                "entry {} carries {} data bits but entry 0 carries {l2}; data bits must be constant",
                e.index_bits,
                e.data_bits()
            )));
        }
        if (name.is_proposed() || name == SchemeName::Custom)
            && entries.iter().any(|e| e.activation.flags()[k - 1])
        {
            return Err(Error::SchemeValidation(
                "the last subcarrier of every subblock must stay unused".into(),
            ));
        }
        Ok(Self { name, k, entries, l1, l2, cardinalities: cards, alpha })
    }

    pub fn name(&self) -> SchemeName {
        self.name
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn entries(&self) -> &[PatternEntry<T>] {
        &self.entries
    }

    pub fn cardinalities(&self) -> Cardinalities {
        self.cardinalities
    }

    /// Number of patterns `U = 2^L1`.
    pub fn u(&self) -> usize {
        self.entries.len()
    }

    pub fn l1(&self) -> usize {
        self.l1
    }

    pub fn l2(&self) -> usize {
        self.l2
    }

    pub fn bits_per_subblock(&self) -> usize {
        self.l1 + self.l2
    }

    /// Active subcarriers of pattern-1, used as the effective symbol count in
    /// the complexity count.
    pub fn effective_active(&self) -> usize {
        self.entries[0].activation.active_count()
    }

    /// Cardinality of pattern-1.
    pub fn effective_cardinality(&self) -> usize {
        self.cardinalities.a
    }

    /// e.g. `SEFDM-IM-2 [4,(1,2)] 16QAM α=0.675`.
    pub fn label(&self) -> String {
        let counts: std::collections::BTreeSet<usize> =
            self.entries.iter().map(|e| e.activation.active_count()).collect();
        let ka = if counts.len() == 1 {
            counts.iter().next().unwrap().to_string()
        } else {
            format!(
                "({})",
                counts.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
            )
        };
        format!(
            "{} [{},{}] {} α={}",
            self.name.display_name(),
            self.k,
            ka,
            modulation_name(self.cardinalities.a),
            self.alpha
        )
    }

    pub fn entry_by_activation(&self, activation: &ActivationPattern) -> Option<&PatternEntry<T>> {
        self.entries.iter().find(|e| &e.activation == activation)
    }

    /// Builds the subblock for packed index/data bit values.
    pub fn subblock(&self, index: usize, data: usize) -> SubblockCodeword<T> {
        let entry = &self.entries[index];
        let symbols = entry.symbols(data, self.l2);
        let mut tx = vec![Cplx::zero(); self.k];
        for ((pos, _), s) in entry.slots.iter().zip(&symbols) {
            tx[*pos] = *s;
        }
        SubblockCodeword { activation: entry.activation.clone(), symbols, tx }
    }

    /// Writes the subblock for packed bit values into `out` (length `K`).
    pub fn write_subblock(&self, index: usize, data: usize, out: &mut [Cplx<T>]) {
        let entry = &self.entries[index];
        out.iter_mut().for_each(|z| *z = Cplx::zero());
        for ((pos, _), s) in entry.slots.iter().zip(entry.symbols(data, self.l2)) {
            out[*pos] = s;
        }
    }

    pub fn table_text(&self) -> String {
        let rows: Vec<[String; 4]> = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, e)| {
                [
                    (i + 1).to_string(),
                    bits_str(e.index_bits, self.l1),
                    e.activation.to_string(),
                    e.render(),
                ]
            })
            .collect();
        let head = ["Pattern", "Index bits", "Activation", "Subcarrier pattern"];
        let mut width = head.map(|h| h.chars().count());
        for r in &rows {
            for (w, c) in width.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: [&str; 4]| {
            cells
                .iter()
                .zip(width)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect::<Vec<_>>()
                .join(" | ")
                .trim_end()
                .to_string()
        };
        let mut out = format!("{}\n", self.label());
        out.push_str(&line(head));
        out.push('\n');
        out.push_str(&width.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("-+-"));
        out.push('\n');
        for r in &rows {
            out.push_str(&line([&r[0], &r[1], &r[2], &r[3]]));
            out.push('\n');
        }
        out
    }

    pub fn table_csv(&self) -> String {
        let mut out = String::from("pattern,index_bits,activation,subcarrier_pattern,slot_roles\n");
        for (i, e) in self.entries.iter().enumerate() {
            let flags: String = e.activation.flags().iter().map(|&b| if b { '1' } else { '0' }).collect();
            out.push_str(&format!(
                "{},{},{},\"{}\",{}\n",
                i + 1,
                bits_str(e.index_bits, self.l1),
                flags,
                e.render(),
                e.roles()
            ));
        }
        out
    }
}

fn bits_str(value: usize, width: usize) -> String {
    value_to_bits(value, width).iter().map(|b| char::from(b'0' + b)).collect()
}

pub fn modulation_name(m: usize) -> String {
    match m {
        2 => "BPSK".into(),
        4 => "QPSK".into(),
        m => format!("{m}QAM"),
    }
}

/// Maps index and data bit strings onto a subblock.
pub fn build_subblock<T: Real>(scheme: &SchemeSpec<T>, index_bits: &[u8], data_bits: &[u8]) -> Result<SubblockCodeword<T>> {
    if index_bits.len() != scheme.l1 || data_bits.len() != scheme.l2 {
        return usage(format!(
            "expected {} index and {} data bits, got {} and {}",
            scheme.l1,
            scheme.l2,
            index_bits.len(),
            data_bits.len()
        ));
    }
    Ok(scheme.subblock(
        crate::constellation::bits_to_value(index_bits),
        crate::constellation::bits_to_value(data_bits),
    ))
}

/// Every `(index, data)` hypothesis in enumeration order `index·2^L2 + data`.
pub fn enumerate_candidates<T: Real>(scheme: &SchemeSpec<T>) -> Vec<Candidate<T>> {
    let mut out = Vec::with_capacity(scheme.u() << scheme.l2);
    for index in 0..scheme.u() {
        for data in 0..(1usize << scheme.l2) {
            out.push(Candidate { index, data, tx: scheme.subblock(index, data).tx });
        }
    }
    out
}

/// Inverse table lookup.
pub fn pattern_to_index_bits<T: Real>(scheme: &SchemeSpec<T>, activation: &ActivationPattern) -> Result<Vec<u8>> {
    scheme
        .entry_by_activation(activation)
        .map(|e| value_to_bits(e.index_bits, scheme.l1))
        .ok_or_else(|| Error::DetectionConsistency(format!("activation {activation} is not in the table")))
}
