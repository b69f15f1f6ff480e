//! Subblock soft and hard detection.
//!
//! For a received subblock `R` and a diagonal block `C` of the correlation (or
//! effective channel) matrix, every candidate subblock `S` is scored with
//!
//! ```text
//! Ψ(S) = |R - C S|² / N0
//! ```
//!
//! Bit LLRs are `ln Σ_{bit=0} e^{-Ψ} - ln Σ_{bit=1} e^{-Ψ}` over all candidates,
//! evaluated with max-shifted log-sum-exp. Positive values favour bit 0.

use crate::constellation::value_to_bits;
use crate::linalg::ComplexMatrix;
use crate::pattern::{enumerate_candidates, Candidate, SchemeSpec};
use crate::scalar::{Cplx, Real};

/// Magnitude bound applied to every emitted LLR.
pub const LLR_CLIP: f64 = 50.0;

/// Largest `L1 + L2` a subblock detector accepts.
pub const MAX_BITS: usize = 24;

/// Soft outputs for one block, subblock-major.
#[derive(Debug, Clone, PartialEq)]
pub struct LlrFrame<T> {
    l1: usize,
    l2: usize,
    pub index_llrs: Vec<T>,
    pub data_llrs: Vec<T>,
}

impl<T: Real> LlrFrame<T> {
    pub fn subblocks(&self) -> usize {
        if self.l1 > 0 {
            self.index_llrs.len() / self.l1
        } else {
            self.data_llrs.len() / self.l2.max(1)
        }
    }

    pub fn index(&self, g: usize) -> &[T] {
        &self.index_llrs[g * self.l1..(g + 1) * self.l1]
    }

    pub fn data(&self, g: usize) -> &[T] {
        &self.data_llrs[g * self.l2..(g + 1) * self.l2]
    }
}

/// `Ψ = (1/N0) |R - C S|²`.
pub fn psi<T: Real>(rg: &[Cplx<T>], cg: &ComplexMatrix<T>, sg: &[Cplx<T>], n0: T) -> T {
    let cs = cg.mul_vec(sg);
    residual(rg, &cs) / n0
}

#[inline]
fn residual<T: Real>(r: &[Cplx<T>], cs: &[Cplx<T>]) -> T {
    r.iter().zip(cs).map(|(a, b)| (a - b).norm_sqr()).sum()
}

fn clip<T: Real>(x: T) -> T {
    let c = T::of(LLR_CLIP);
    if x.is_nan() {
        T::zero()
    } else {
        x.max(-c).min(c)
    }
}

/// Candidate set of one subblock position with `C S` precomputed.
#[derive(Debug, Clone)]
pub struct SubblockDetector<T> {
    l1: usize,
    l2: usize,
    candidates: Vec<Candidate<T>>,
    predicted: Vec<Vec<Cplx<T>>>,
    max_log: bool,
}

impl<T: Real> SubblockDetector<T> {
    pub fn new(scheme: &SchemeSpec<T>, cg: &ComplexMatrix<T>) -> Self {
        let candidates = enumerate_candidates(scheme);
        let predicted = candidates.iter().map(|c| cg.mul_vec(&c.tx)).collect();
        Self {
            l1: scheme.l1(),
            l2: scheme.l2(),
            candidates,
            predicted,
            max_log: false,
        }
    }

    /// Replace log-sum-exp by its max-log approximation.
    pub fn with_max_log(mut self, max_log: bool) -> Self {
        self.max_log = max_log;
        self
    }

    pub fn candidates(&self) -> &[Candidate<T>] {
        &self.candidates
    }

    /// Ψ of every candidate, in enumeration order.
    pub fn psi_all(&self, rg: &[Cplx<T>], n0: T, out: &mut Vec<T>) {
        out.clear();
        let inv = n0.recip();
        out.extend(self.predicted.iter().map(|cs| residual(rg, cs) * inv));
    }

    /// Index and data LLRs from precomputed Ψ values.
    ///
    /// Every candidate weight `e^{Ψmin - Ψ}` is shared by all bit positions,
    /// so one exponential per candidate suffices. A bit whose weights all
    /// underflow has an exact LLR beyond the clip level and saturates.
    pub fn llrs_from_psi(&self, psi: &[T], index_out: &mut [T], data_out: &mut [T]) {
        let bits = self.l1 + self.l2;
        assert!(bits <= MAX_BITS, "subblocks carry at most {MAX_BITS} bits");
        let mut best = [[T::infinity(); 2]; MAX_BITS];
        let mut sums = [[T::zero(); 2]; MAX_BITS];
        let (best, sums) = (&mut best[..bits], &mut sums[..bits]);
        let floor = psi.iter().copied().fold(T::infinity(), T::min);
        for (c, &p) in self.candidates.iter().zip(psi) {
            let w = if self.max_log { T::zero() } else { (floor - p).exp() };
            let word = (c.index << self.l2) | c.data;
            for (j, (b, s)) in best.iter_mut().zip(sums.iter_mut()).enumerate() {
                let v = (word >> (bits - 1 - j)) & 1;
                if p < b[v] {
                    b[v] = p;
                }
                s[v] += w;
            }
        }
        let outs = index_out.iter_mut().chain(data_out.iter_mut());
        for ((out, b), s) in outs.zip(best.iter()).zip(sums.iter()) {
            let llr = if self.max_log { b[1] - b[0] } else { s[0].ln() - s[1].ln() };
            *out = clip(llr);
        }
    }

    pub fn llrs(&self, rg: &[Cplx<T>], n0: T) -> (Vec<T>, Vec<T>) {
        let mut psi = Vec::with_capacity(self.candidates.len());
        self.psi_all(rg, n0, &mut psi);
        let mut il = vec![T::zero(); self.l1];
        let mut dl = vec![T::zero(); self.l2];
        self.llrs_from_psi(&psi, &mut il, &mut dl);
        (il, dl)
    }

    /// Enumeration position of the candidate with the smallest residual;
    /// ties go to the earliest candidate.
    pub fn hard_index(&self, rg: &[Cplx<T>]) -> usize {
        let mut best = 0;
        let mut best_d = T::infinity();
        for (i, cs) in self.predicted.iter().enumerate() {
            let d = residual(rg, cs);
            if d < best_d {
                best = i;
                best_d = d;
            }
        }
        best
    }

    /// Packed `(index, data)` values of the ML candidate.
    pub fn hard(&self, rg: &[Cplx<T>]) -> (usize, usize) {
        let c = &self.candidates[self.hard_index(rg)];
        (c.index, c.data)
    }
}

/// Per-subblock detectors for a whole block, built from the diagonal blocks
/// of an `N×N` matrix.
#[derive(Debug, Clone)]
pub struct BlockDetector<T> {
    k: usize,
    l1: usize,
    l2: usize,
    subblocks: Vec<SubblockDetector<T>>,
}

impl<T: Real> BlockDetector<T> {
    pub fn new(scheme: &SchemeSpec<T>, matrix: &ComplexMatrix<T>) -> Self {
        let k = scheme.k();
        assert_eq!(matrix.rows() % k, 0, "block length must be a multiple of K");
        let g = matrix.rows() / k;
        let first = SubblockDetector::new(scheme, &matrix.diagonal_block(0, k));
        let mut subblocks = vec![first];
        for gi in 1..g {
            let block = matrix.diagonal_block(gi * k, k);
            // Toeplitz matrices repeat the same block; reuse the candidate products
            if block == matrix.diagonal_block(0, k) {
                subblocks.push(subblocks[0].clone());
            } else {
                subblocks.push(SubblockDetector::new(scheme, &block));
            }
        }
        Self { k, l1: scheme.l1(), l2: scheme.l2(), subblocks }
    }

    pub fn with_max_log(mut self, max_log: bool) -> Self {
        self.subblocks = self.subblocks.into_iter().map(|d| d.with_max_log(max_log)).collect();
        self
    }

    pub fn subblock(&self, g: usize) -> &SubblockDetector<T> {
        &self.subblocks[g]
    }

    pub fn detect(&self, r: &[Cplx<T>], n0: T) -> LlrFrame<T> {
        let g = self.subblocks.len();
        let mut frame = LlrFrame {
            l1: self.l1,
            l2: self.l2,
            index_llrs: vec![T::zero(); g * self.l1],
            data_llrs: vec![T::zero(); g * self.l2],
        };
        let mut psi = Vec::new();
        for (gi, det) in self.subblocks.iter().enumerate() {
            let rg = &r[gi * self.k..(gi + 1) * self.k];
            det.psi_all(rg, n0, &mut psi);
            det.llrs_from_psi(
                &psi,
                &mut frame.index_llrs[gi * self.l1..(gi + 1) * self.l1],
                &mut frame.data_llrs[gi * self.l2..(gi + 1) * self.l2],
            );
        }
        frame
    }

    /// Packed `(index, data)` decisions per subblock.
    pub fn hard(&self, r: &[Cplx<T>]) -> Vec<(usize, usize)> {
        self.subblocks
            .iter()
            .enumerate()
            .map(|(gi, det)| det.hard(&r[gi * self.k..(gi + 1) * self.k]))
            .collect()
    }
}

pub fn index_llrs<T: Real>(rg: &[Cplx<T>], scheme: &SchemeSpec<T>, cg: &ComplexMatrix<T>, n0: T) -> Vec<T> {
    SubblockDetector::new(scheme, cg).llrs(rg, n0).0
}

pub fn data_llrs<T: Real>(rg: &[Cplx<T>], scheme: &SchemeSpec<T>, cg: &ComplexMatrix<T>, n0: T) -> Vec<T> {
    SubblockDetector::new(scheme, cg).llrs(rg, n0).1
}

/// Splits `r` into subblocks and detects each against its diagonal block of
/// `c` (the correlation matrix or an effective channel matrix).
pub fn detect_block<T: Real>(r: &[Cplx<T>], scheme: &SchemeSpec<T>, c: &ComplexMatrix<T>, n0: T) -> LlrFrame<T> {
    BlockDetector::new(scheme, c).detect(r, n0)
}

/// Minimum-Ψ decision as `(index bits, data bits)`.
pub fn hard_detect<T: Real>(rg: &[Cplx<T>], scheme: &SchemeSpec<T>, cg: &ComplexMatrix<T>) -> (Vec<u8>, Vec<u8>) {
    let (i, d) = SubblockDetector::new(scheme, cg).hard(rg);
    (value_to_bits(i, scheme.l1()), value_to_bits(d, scheme.l2()))
}
