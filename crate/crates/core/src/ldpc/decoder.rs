//! Flooding sum-product decoding in the log domain.

use super::LdpcCode;
use crate::error::{usage, Result};
use crate::scalar::Real;

const PHI_MIN: f64 = 1e-9;
const PHI_MAX: f64 = 30.0;
pub const DEFAULT_MAX_ITERATIONS: usize = 50;

#[derive(Debug, Clone, PartialEq)]
pub struct DecodeOutput {
    pub info: Vec<u8>,
    pub codeword: Vec<u8>,
    pub converged: bool,
    pub iterations: usize,
}

/// `phi(x) = -ln tanh(x/2)`, its own inverse on the clipped range.
fn phi<T: Real>(x: T) -> T {
    let x = x.max(T::of(PHI_MIN)).min(T::of(PHI_MAX));
    -(x / T::of(2.0)).tanh().ln()
}

/// Edge-indexed decoder state for one code.
#[derive(Debug, Clone)]
pub struct LdpcDecoder<'a> {
    code: &'a LdpcCode,
    check_start: Vec<usize>,
    edge_var: Vec<usize>,
    var_edges: Vec<Vec<usize>>,
    max_iterations: usize,
}

impl<'a> LdpcDecoder<'a> {
    pub fn new(code: &'a LdpcCode) -> Self {
        let mut check_start = vec![0];
        let mut edge_var = Vec::new();
        let mut var_edges = vec![Vec::new(); code.n()];
        for vars in code.checks() {
            for &v in vars {
                var_edges[v].push(edge_var.len());
                edge_var.push(v);
            }
            check_start.push(edge_var.len());
        }
        LdpcDecoder { code, check_start, edge_var, var_edges, max_iterations: DEFAULT_MAX_ITERATIONS }
    }

    pub fn with_max_iterations(mut self, iterations: usize) -> Self {
        self.max_iterations = iterations.max(1);
        self
    }

    /// Decodes channel LLRs; positive values favour bit 0.
    pub fn decode<T: Real>(&self, llrs: &[T]) -> Result<DecodeOutput> {
        let n = self.code.n();
        if llrs.len() != n {
            return usage(format!("expected {n} LLRs, got {}", llrs.len()));
        }
        let edges = self.edge_var.len();
        let mut v2c: Vec<T> = self.edge_var.iter().map(|&v| llrs[v]).collect();
        let mut c2v = vec![T::zero(); edges];
        let mut mags = vec![T::zero(); ROW_CAP];
        let mut hard = vec![0u8; n];
        let mut converged = false;
        let mut iterations = 0;
        while iterations < self.max_iterations {
            iterations += 1;
            for c in 0..self.check_start.len() - 1 {
                let range = self.check_start[c]..self.check_start[c + 1];
                let deg = range.len();
                if mags.len() < deg {
                    mags.resize(deg, T::zero());
                }
                let mut negative = false;
                let mut total = T::zero();
                for (j, e) in range.clone().enumerate() {
                    let x = v2c[e];
                    negative ^= x < T::zero();
                    mags[j] = phi(x.abs());
                    total += mags[j];
                }
                for (j, e) in range.enumerate() {
                    let own_negative = v2c[e] < T::zero();
                    let magnitude = phi(total - mags[j]);
                    c2v[e] = if negative ^ own_negative { -magnitude } else { magnitude };
                }
            }
            for (v, list) in self.var_edges.iter().enumerate() {
                let post = list.iter().fold(llrs[v], |acc, &e| acc + c2v[e]);
                hard[v] = (post < T::zero()) as u8;
                for &e in list {
                    v2c[e] = post - c2v[e];
                }
            }
            if self.code.syndrome_is_zero(&hard) {
                converged = true;
                break;
            }
        }
        Ok(DecodeOutput { info: hard[..self.code.k()].to_vec(), codeword: hard, converged, iterations })
    }
}

const ROW_CAP: usize = super::ROW_WEIGHT;

/// One-shot decode with the default iteration budget.
pub fn decode<T: Real>(code: &LdpcCode, llrs: &[T]) -> Result<DecodeOutput> {
    LdpcDecoder::new(code).decode(llrs)
}
