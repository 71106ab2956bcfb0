//! Regular LDPC codes with normalized min-sum decoding.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LdpcError {
    #[error("n = {n} with degrees ({dv}, {dc}) does not give an integral number of checks")]
    Shape { n: usize, dv: usize, dc: usize },
    #[error("no full-rank regular parity-check matrix after {attempts} seeds starting at {seed}")]
    Construction { seed: u64, attempts: u32 },
    #[error("expected {expected} soft values, got {actual}")]
    Length { expected: usize, actual: usize },
}

/// Dense GF(2) row stored as 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq)]
struct BitRow(Vec<u64>);

impl BitRow {
    fn zeros(n: usize) -> Self {
        BitRow(vec![0; n.div_ceil(64)])
    }

    #[inline]
    fn get(&self, i: usize) -> bool {
        (self.0[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    fn flip(&mut self, i: usize) {
        self.0[i / 64] ^= 1 << (i % 64);
    }

    fn xor_assign(&mut self, other: &BitRow) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }

    fn dot(&self, other: &BitRow) -> bool {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }
}

/// Decoder output for one codeword.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LdpcDecoded {
    pub message: Vec<u8>,
    pub codeword: Vec<u8>,
    pub iterations: usize,
    /// All parity checks satisfied.
    pub converged: bool,
}

/// A `(dv, dc)`-regular LDPC code with a systematic encoder.
#[derive(Debug, Clone)]
pub struct LdpcCode {
    n: usize,
    /// check -> variables
    checks: Vec<Vec<usize>>,
    /// variable -> checks
    vars: Vec<Vec<usize>>,
    /// Message positions in the codeword, ascending.
    info_positions: Vec<usize>,
    /// (pivot column, reduced row) pairs of the row-reduced H.
    parity_rows: Vec<(usize, BitRow)>,
    pub max_iterations: usize,
    pub normalization: f64,
}

impl LdpcCode {
    /// The `n = 1000`, `(5, 20)` code, rate 3/4.
    pub fn standard(seed: u64) -> Result<Self, LdpcError> {
        Self::regular(1000, 5, 20, seed)
    }

    /// Random `(dv, dc)`-regular code of length `n`, drawn by socket
    /// permutation and repaired so no variable meets a check twice. Seeds
    /// `seed, seed + 1, ...` are tried until `H` has full row rank.
    pub fn regular(n: usize, dv: usize, dc: usize, seed: u64) -> Result<Self, LdpcError> {
        if n == 0 || dv == 0 || dc == 0 || (n * dv) % dc != 0 {
            return Err(LdpcError::Shape { n, dv, dc });
        }
        const ATTEMPTS: u32 = 64;
        for attempt in 0..ATTEMPTS {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(u64::from(attempt)));
            let Some(checks) = random_regular(n, dv, dc, &mut rng) else {
                continue;
            };
            if let Some(code) = Self::from_checks(n, checks) {
                return Ok(code);
            }
        }
        Err(LdpcError::Construction {
            seed,
            attempts: ATTEMPTS,
        })
    }

    /// Builds the encoder; `None` if `H` is rank deficient.
    fn from_checks(n: usize, checks: Vec<Vec<usize>>) -> Option<Self> {
        let m = checks.len();
        let mut rows: Vec<BitRow> = checks
            .iter()
            .map(|c| {
                let mut r = BitRow::zeros(n);
                for &v in c {
                    r.set(v);
                }
                r
            })
            .collect();
        // Reduced row echelon form over GF(2).
        let mut pivots = Vec::with_capacity(m);
        let mut rank = 0;
        for col in 0..n {
            if rank == m {
                break;
            }
            let Some(p) = (rank..m).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        if rank < m {
            return None;
        }
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let info_positions = (0..n).filter(|&c| !is_pivot[c]).collect();
        let parity_rows = pivots.into_iter().zip(rows).collect();
        let mut vars = vec![Vec::new(); n];
        for (c, vs) in checks.iter().enumerate() {
            for &v in vs {
                vars[v].push(c);
            }
        }
        Some(Self {
            n,
            checks,
            vars,
            info_positions,
            parity_rows,
            max_iterations: 50,
            normalization: 0.8,
        })
    }

    /// Codeword length.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Message length per codeword.
    pub fn k(&self) -> usize {
        self.info_positions.len()
    }

    pub fn checks(&self) -> &[Vec<usize>] {
        &self.checks
    }

    pub fn column_weights(&self) -> Vec<usize> {
        self.vars.iter().map(Vec::len).collect()
    }

    /// Encodes exactly `k` bits.
    pub fn encode(&self, message: &[u8]) -> Vec<u8> {
        assert_eq!(message.len(), self.k(), "LDPC message must be k bits");
        let mut word = BitRow::zeros(self.n);
        for (&pos, &b) in self.info_positions.iter().zip(message) {
            if b & 1 == 1 {
                word.set(pos);
            }
        }
        // Each reduced row touches one pivot column and otherwise only
        // message columns, all of which are already in place.
        for (pivot, row) in &self.parity_rows {
            if row.dot(&word) {
                word.flip(*pivot);
            }
        }
        (0..self.n).map(|i| u8::from(word.get(i))).collect()
    }

    pub fn syndrome_ok(&self, codeword: &[u8]) -> bool {
        self.checks
            .iter()
            .all(|c| c.iter().map(|&v| codeword[v]).fold(0, |a, b| a ^ b) == 0)
    }

    /// Normalized min-sum belief propagation with a flooding schedule.
    ///
    /// `soft[i] > 0` favours bit 0. The decoder is invariant to positive
    /// scaling of the input, so channel symbols can be passed directly.
    pub fn decode(&self, soft: &[f64]) -> Result<LdpcDecoded, LdpcError> {
        if soft.len() != self.n {
            return Err(LdpcError::Length {
                expected: self.n,
                actual: soft.len(),
            });
        }
        // Edge ids are laid out check by check.
        let mut edge_var = Vec::new();
        let mut check_edges = Vec::with_capacity(self.checks.len());
        for c in &self.checks {
            let start = edge_var.len();
            edge_var.extend_from_slice(c);
            check_edges.push(start..edge_var.len());
        }
        let mut var_edges: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for (e, &v) in edge_var.iter().enumerate() {
            var_edges[v].push(e);
        }

        let mut c2v = vec![0.0f64; edge_var.len()];
        let mut v2c = vec![0.0f64; edge_var.len()];
        let mut posterior = soft.to_vec();
        let mut hard: Vec<u8> = posterior.iter().map(|&l| u8::from(l < 0.0)).collect();
        if self.syndrome_ok(&hard) {
            return Ok(self.finish(hard, 0, true));
        }

        for iteration in 1..=self.max_iterations {
            for (v, edges) in var_edges.iter().enumerate() {
                let total: f64 = soft[v] + edges.iter().map(|&e| c2v[e]).sum::<f64>();
                for &e in edges {
                    v2c[e] = total - c2v[e];
                }
            }
            for edges in &check_edges {
                let mut sign = 1.0f64;
                let (mut min1, mut min2, mut argmin) = (f64::INFINITY, f64::INFINITY, usize::MAX);
                for e in edges.clone() {
                    let x = v2c[e];
                    if x < 0.0 {
                        sign = -sign;
                    }
                    let a = x.abs();
                    if a < min1 {
                        min2 = min1;
                        min1 = a;
                        argmin = e;
                    } else if a < min2 {
                        min2 = a;
                    }
                }
                for e in edges.clone() {
                    let own_sign = if v2c[e] < 0.0 { -1.0 } else { 1.0 };
                    let magnitude = if e == argmin { min2 } else { min1 };
                    c2v[e] = self.normalization * sign * own_sign * magnitude;
                }
            }
            for (v, edges) in var_edges.iter().enumerate() {
                posterior[v] = soft[v] + edges.iter().map(|&e| c2v[e]).sum::<f64>();
                hard[v] = u8::from(posterior[v] < 0.0);
            }
            if self.syndrome_ok(&hard) {
                return Ok(self.finish(hard, iteration, true));
            }
        }
        Ok(self.finish(hard, self.max_iterations, false))
    }

    fn finish(&self, codeword: Vec<u8>, iterations: usize, converged: bool) -> LdpcDecoded {
        LdpcDecoded {
            message: self.info_positions.iter().map(|&p| codeword[p]).collect(),
            codeword,
            iterations,
            converged,
        }
    }

    /// Number of codewords needed for `bits` message bits.
    pub fn blocks_for(&self, bits: usize) -> usize {
        bits.div_ceil(self.k())
    }

    /// Zero-pads `bits` to whole blocks and encodes each block.
    pub fn encode_stream(&self, bits: &[u8]) -> Vec<u8> {
        let k = self.k();
        let mut out = Vec::with_capacity(self.blocks_for(bits.len()) * self.n);
        for chunk in bits.chunks(k) {
            let mut block = chunk.to_vec();
            block.resize(k, 0);
            out.extend(self.encode(&block));
        }
        out
    }

    /// Decodes whole blocks and truncates the padding back off.
    pub fn decode_stream(&self, soft: &[f64], message_len: usize) -> Result<Vec<u8>, LdpcError> {
        let expected = self.blocks_for(message_len) * self.n;
        if soft.len() != expected {
            return Err(LdpcError::Length {
                expected,
                actual: soft.len(),
            });
        }
        let mut out = Vec::with_capacity(expected);
        for block in soft.chunks(self.n) {
            out.extend(self.decode(block)?.message);
        }
        out.truncate(message_len);
        Ok(out)
    }
}

/// Socket-permutation construction with swap repair of repeated edges.
fn random_regular<R: Rng>(n: usize, dv: usize, dc: usize, rng: &mut R) -> Option<Vec<Vec<usize>>> {
    let m = n * dv / dc;
    // socket s belongs to variable s / dv
    let mut check_of_socket: Vec<usize> = (0..m).flat_map(|c| std::iter::repeat(c).take(dc)).collect();
    check_of_socket.shuffle(rng);

    let has_repeat = |sockets: &[usize], v: usize| {
        let s = &sockets[v * dv..(v + 1) * dv];
        (0..dv).any(|i| (i + 1..dv).any(|j| s[i] == s[j]))
    };
    for _ in 0..100 * n {
        let Some(v) = (0..n).find(|&v| has_repeat(&check_of_socket, v)) else {
            let mut checks = vec![Vec::with_capacity(dc); m];
            for (s, &c) in check_of_socket.iter().enumerate() {
                checks[c].push(s / dv);
            }
            for c in &mut checks {
                c.sort_unstable();
            }
            return Some(checks);
        };
        // Swap one socket of the offending variable with a random socket.
        let a = v * dv + rng.random_range(0..dv);
        let b = rng.random_range(0..n * dv);
        check_of_socket.swap(a, b);
    }
    None
}
