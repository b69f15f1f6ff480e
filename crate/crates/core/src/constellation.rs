//! M-ary symbol alphabets with Gray bit labelling.
//!
//! Labels are read most-significant bit first: the bit string `[b0, b1, ...]`
//! has label value `b0·2^(m-1) + b1·2^(m-2) + ...`, and `points[label]` is the
//! symbol carrying that label.
//!
//! | M  | in-phase                   | quadrature          | normalisation |
//! |----|----------------------------|---------------------|---------------|
//! | 2  | `1 - 2b0`                  | `0`                 | 1             |
//! | 4  | `1 - 2b0`                  | `1 - 2b1`           | √2            |
//! | 8  | `(1 - 2b0)(1 + 2b1)`       | `1 - 2b2`           | √6            |
//! | 16 | `(1 - 2b0)(1 + 2b2)`       | `(1 - 2b1)(1 + 2b3)`| √10           |
//!
//! The 8-point alphabet is the rectangular 4×2 grid; 16QAM is the square grid
//! with per-axis Gray coding. The all-zeros label always maps to the point in
//! the first quadrant closest to the origin.

use crate::error::{usage, Error, Result};
use crate::scalar::{Cplx, Real};

/// Supported alphabet sizes.
pub const SUPPORTED_CARDINALITIES: [usize; 4] = [2, 4, 8, 16];

#[derive(Debug, Clone, PartialEq)]
pub struct Alphabet<T> {
    cardinality: usize,
    bits_per_symbol: usize,
    /// Unit-energy points indexed by label value.
    unit_points: Vec<Cplx<T>>,
    scale: T,
}

fn bit(label: usize, pos: usize, width: usize) -> f64 {
    ((label >> (width - 1 - pos)) & 1) as f64
}

fn unit_point(m: usize, label: usize) -> (f64, f64) {
    let w = m.trailing_zeros() as usize;
    let b = |p| bit(label, p, w);
    match m {
        2 => (1.0 - 2.0 * b(0), 0.0),
        4 => {
            let s = std::f64::consts::FRAC_1_SQRT_2;
            ((1.0 - 2.0 * b(0)) * s, (1.0 - 2.0 * b(1)) * s)
        }
        8 => {
            let s = 6f64.sqrt().recip();
            (
                (1.0 - 2.0 * b(0)) * (1.0 + 2.0 * b(1)) * s,
                (1.0 - 2.0 * b(2)) * s,
            )
        }
        16 => {
            let s = 10f64.sqrt().recip();
            (
                (1.0 - 2.0 * b(0)) * (1.0 + 2.0 * b(2)) * s,
                (1.0 - 2.0 * b(1)) * (1.0 + 2.0 * b(3)) * s,
            )
        }
        _ => unreachable!("cardinality validated by caller"),
    }
}

/// Packs an MSB-first bit string into a label value.
pub fn bits_to_value(bits: &[u8]) -> usize {
    bits.iter().fold(0usize, |acc, &b| (acc << 1) | (b & 1) as usize)
}

/// Unpacks `value` into `width` bits, MSB first.
pub fn value_to_bits(value: usize, width: usize) -> Vec<u8> {
    (0..width).map(|p| ((value >> (width - 1 - p)) & 1) as u8).collect()
}

/// Builds the canonical Gray-labelled alphabet of size `m`, multiplied by `scale`.
pub fn build_alphabet<T: Real>(m: usize, scale: T) -> Result<Alphabet<T>> {
    if !SUPPORTED_CARDINALITIES.contains(&m) {
        return Err(Error::Config(format!(
            "unsupported alphabet cardinality {m}; expected one of 2, 4, 8, 16"
        )));
    }
    if !(scale > T::zero()) || !scale.is_finite() {
        return Err(Error::Config(format!("alphabet scale must be positive, got {scale}")));
    }
    let unit_points = (0..m)
        .map(|l| {
            let (re, im) = unit_point(m, l);
            Cplx::new(T::of(re), T::of(im))
        })
        .collect();
    Ok(Alphabet {
        cardinality: m,
        bits_per_symbol: m.trailing_zeros() as usize,
        unit_points,
        scale,
    })
}

impl<T: Real> Alphabet<T> {
    pub fn cardinality(&self) -> usize {
        self.cardinality
    }

    pub fn bits_per_symbol(&self) -> usize {
        self.bits_per_symbol
    }

    pub fn scale(&self) -> T {
        self.scale
    }

    /// Same geometry and labels with a different scale.
    pub fn rescaled(&self, scale: T) -> Self {
        Self { scale, ..self.clone() }
    }

    /// Scaled point carrying label value `label`.
    #[inline]
    pub fn point(&self, label: usize) -> Cplx<T> {
        self.unit_points[label] * self.scale
    }

    /// Scaled points in label order.
    pub fn points(&self) -> Vec<Cplx<T>> {
        (0..self.cardinality).map(|l| self.point(l)).collect()
    }

    /// Fixed receiver-known signalling point: the point labelled all-zeros.
    pub fn signalling_point(&self) -> Cplx<T> {
        self.point(0)
    }

    pub fn map_bits(&self, bits: &[u8]) -> Result<Cplx<T>> {
        if bits.len() != self.bits_per_symbol {
            return usage(format!(
                "expected {} bits for a {}-ary symbol, got {}",
                self.bits_per_symbol,
                self.cardinality,
                bits.len()
            ));
        }
        Ok(self.point(bits_to_value(bits)))
    }

    /// Exact inverse of [`map_bits`](Self::map_bits); `None` if `symbol` is not
    /// one of the scaled points.
    pub fn demap_exact(&self, symbol: Cplx<T>) -> Option<Vec<u8>> {
        (0..self.cardinality)
            .find(|&l| self.point(l) == symbol)
            .map(|l| value_to_bits(l, self.bits_per_symbol))
    }

    /// Nearest-point hard decision; returns the label value.
    pub fn nearest_label(&self, symbol: Cplx<T>) -> usize {
        let mut best = 0;
        let mut best_d = T::infinity();
        for l in 0..self.cardinality {
            let d = (self.point(l) - symbol).norm_sqr();
            if d < best_d {
                best = l;
                best_d = d;
            }
        }
        best
    }

    pub fn mean_energy(&self) -> T {
        let total: T = (0..self.cardinality).map(|l| self.point(l).norm_sqr()).sum();
        total / T::of_usize(self.cardinality)
    }
}

/// CSV listing (`M,label,re,im`) of all supported unit-energy alphabets.
pub fn alphabets_csv() -> String {
    let mut out = String::from("M,label,re,im\n");
    for &m in &SUPPORTED_CARDINALITIES {
        let a = build_alphabet::<f64>(m, 1.0).expect("supported cardinality");
        for l in 0..m {
            let p = a.point(l);
            let label: String = value_to_bits(l, a.bits_per_symbol())
                .iter()
                .map(|b| char::from(b'0' + b))
                .collect();
            out.push_str(&format!("{m},{label},{:.12},{:.12}\n", p.re, p.im));
        }
    }
    out
}
