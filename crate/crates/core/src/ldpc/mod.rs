//! Rate-1/2 regular LDPC codes.
//!
//! Codes are built from a seed: a (3,6)-regular parity-check structure is
//! grown edge by edge, preferring check nodes that do not close a 4-cycle.
//! Variable nodes are then reordered so that the first `k` positions are
//! information bits and the last `m = n - k` are parity bits, which makes the
//! encoder systematic.

mod decoder;

pub use decoder::{decode, DecodeOutput, LdpcDecoder};

use crate::error::{config, usage, Error, Result};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const COLUMN_WEIGHT: usize = 3;
pub const ROW_WEIGHT: usize = 6;
const MAX_ATTEMPTS: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LdpcCode {
    n: usize,
    k: usize,
    seed: u64,
    check_vars: Vec<Vec<usize>>,
    var_checks: Vec<Vec<usize>>,
    /// Parity bit `i` is the GF(2) inner product of row `i` with the
    /// information word; rows are packed 64 bits per word.
    parity_rows: Vec<Vec<u64>>,
}

fn words(bits: usize) -> usize {
    bits.div_ceil(64)
}

fn get_bit(row: &[u64], i: usize) -> bool {
    (row[i / 64] >> (i % 64)) & 1 == 1
}

fn set_bit(row: &mut [u64], i: usize) {
    row[i / 64] |= 1 << (i % 64);
}

fn grow_structure(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Option<Vec<Vec<usize>>> {
    let mut check_vars: Vec<Vec<usize>> = vec![Vec::with_capacity(ROW_WEIGHT); m];
    let mut var_checks: Vec<Vec<usize>> = vec![Vec::with_capacity(COLUMN_WEIGHT); n];
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut checks: Vec<usize> = (0..m).collect();
    for &v in &order {
        for _ in 0..COLUMN_WEIGHT {
            // variables already two hops away from v
            let near: Vec<usize> = var_checks[v].iter().flat_map(|&c| check_vars[c].iter().copied()).collect();
            checks.shuffle(rng);
            let mut pick: Option<(bool, usize, usize)> = None;
            for &c in &checks {
                if check_vars[c].len() >= ROW_WEIGHT || var_checks[v].contains(&c) {
                    continue;
                }
                let cycles = check_vars[c].iter().any(|u| near.contains(u));
                let key = (cycles, check_vars[c].len(), c);
                if pick.is_none_or(|p| (key.0, key.1) < (p.0, p.1)) {
                    pick = Some(key);
                }
            }
            let (_, _, c) = pick?;
            check_vars[c].push(v);
            var_checks[v].push(c);
        }
    }
    Some(check_vars)
}

/// Reduced row echelon form over GF(2); returns the pivot column of each row.
fn row_reduce(rows: &mut [Vec<u64>], n: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| get_bit(&rows[i], col)) else {
            continue;
        };
        rows.swap(r, p);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && get_bit(row, col) {
                row.iter_mut().zip(&pivot_row).for_each(|(a, b)| *a ^= b);
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Deterministic construction of a rate-1/2 (3,6)-regular code of length `n`.
pub fn build_code(n: usize, seed: u64) -> Result<LdpcCode> {
    if n < 96 || n % 2 != 0 {
        return config(format!("LDPC length must be even and at least 96, got {n}"));
    }
    let m = n / 2;
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(attempt);
        let Some(check_vars) = grow_structure(n, m, &mut rng) else {
            continue;
        };
        let mut dense: Vec<Vec<u64>> = check_vars
            .iter()
            .map(|vars| {
                let mut row = vec![0u64; words(n)];
                vars.iter().for_each(|&v| set_bit(&mut row, v));
                row
            })
            .collect();
        let pivots = row_reduce(&mut dense, n);
        if pivots.len() < m {
            continue;
        }
        // info columns first, parity (pivot) columns last
        let mut is_pivot = vec![false; n];
        pivots.iter().for_each(|&p| is_pivot[p] = true);
        let info_cols: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let mut new_pos = vec![0usize; n];
        for (i, &c) in info_cols.iter().chain(&pivots).enumerate() {
            new_pos[c] = i;
        }
        let k = n - m;
        let parity_rows = dense
            .iter()
            .map(|row| {
                let mut packed = vec![0u64; words(k)];
                for (j, &c) in info_cols.iter().enumerate() {
                    if get_bit(row, c) {
                        set_bit(&mut packed, j);
                    }
                }
                packed
            })
            .collect();
        let check_vars: Vec<Vec<usize>> = check_vars
            .into_iter()
            .map(|vars| {
                let mut v: Vec<usize> = vars.into_iter().map(|c| new_pos[c]).collect();
                v.sort_unstable();
                v
            })
            .collect();
        let mut var_checks = vec![Vec::with_capacity(COLUMN_WEIGHT); n];
        for (c, vars) in check_vars.iter().enumerate() {
            vars.iter().for_each(|&v| var_checks[v].push(c));
        }
        return Ok(LdpcCode { n, k, seed, check_vars, var_checks, parity_rows });
    }
    Err(Error::Config(format!(
        "could not construct a full-rank ({COLUMN_WEIGHT},{ROW_WEIGHT}) code of length {n} from seed {seed}"
    )))
}

impl LdpcCode {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.n - self.k
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    /// Variable nodes of each check.
    pub fn checks(&self) -> &[Vec<usize>] {
        &self.check_vars
    }

    /// Check nodes of each variable.
    pub fn variables(&self) -> &[Vec<usize>] {
        &self.var_checks
    }

    /// Number of length-4 cycles in the Tanner graph.
    pub fn four_cycles(&self) -> usize {
        let mut count = 0;
        for a in 0..self.check_vars.len() {
            for b in a + 1..self.check_vars.len() {
                let shared = self.check_vars[a].iter().filter(|v| self.check_vars[b].contains(v)).count();
                count += shared * shared.saturating_sub(1) / 2;
            }
        }
        count
    }

    pub fn syndrome_is_zero(&self, codeword: &[u8]) -> bool {
        self.check_vars
            .iter()
            .all(|vars| vars.iter().fold(0u8, |acc, &v| acc ^ (codeword[v] & 1)) == 0)
    }

    /// Systematic encoding: the first `k` bits of the codeword are `info`.
    pub fn encode(&self, info: &[u8]) -> Result<Vec<u8>> {
        if info.len() != self.k {
            return usage(format!("expected {} information bits, got {}", self.k, info.len()));
        }
        let mut packed = vec![0u64; words(self.k)];
        for (i, &b) in info.iter().enumerate() {
            if b & 1 == 1 {
                set_bit(&mut packed, i);
            }
        }
        let mut cw = Vec::with_capacity(self.n);
        cw.extend(info.iter().map(|b| b & 1));
        cw.extend(self.parity_rows.iter().map(|row| {
            let ones: u32 = row.iter().zip(&packed).map(|(a, b)| (a & b).count_ones()).sum();
            (ones & 1) as u8
        }));
        Ok(cw)
    }

    /// MacKay alist representation of the parity-check matrix.
    pub fn to_alist(&self) -> String {
        let m = self.m();
        let max_col = self.var_checks.iter().map(Vec::len).max().unwrap_or(0);
        let max_row = self.check_vars.iter().map(Vec::len).max().unwrap_or(0);
        let join = |v: Vec<String>| v.join(" ");
        let mut out = format!("{} {}\n{} {}\n", self.n, m, max_col, max_row);
        out += &join(self.var_checks.iter().map(|c| c.len().to_string()).collect());
        out.push('\n');
        out += &join(self.check_vars.iter().map(|c| c.len().to_string()).collect());
        out.push('\n');
        for (list, width) in [(&self.var_checks, max_col), (&self.check_vars, max_row)] {
            for entries in list.iter() {
                let mut cells: Vec<String> = entries.iter().map(|x| (x + 1).to_string()).collect();
                cells.resize(width, "0".into());
                out += &join(cells);
                out.push('\n');
            }
        }
        out
    }
}

/// Parses the check structure of an alist file into `(n, checks)`.
pub fn parse_alist(text: &str) -> Result<(usize, Vec<Vec<usize>>)> {
    let mut nums = text.split_whitespace().map(|t| {
        t.parse::<usize>()
            .map_err(|_| Error::Usage(format!("alist token `{t}` is not a non-negative integer")))
    });
    let mut next = || nums.next().unwrap_or_else(|| usage("alist ended early"));
    let n = next()?;
    let m = next()?;
    let max_col = next()?;
    let max_row = next()?;
    for _ in 0..n + m {
        next()?;
    }
    for _ in 0..n * max_col {
        next()?;
    }
    let mut checks = Vec::with_capacity(m);
    for _ in 0..m {
        let mut row = Vec::new();
        for _ in 0..max_row {
            let v = next()?;
            if v > 0 {
                row.push(v - 1);
            }
        }
        checks.push(row);
    }
    Ok((n, checks))
}

/// Random information word.
pub fn random_info<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Vec<u8> {
    (0..k).map(|_| rng.random::<bool>() as u8).collect()
}
