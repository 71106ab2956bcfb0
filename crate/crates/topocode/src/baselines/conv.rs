//! Rate-2/3 punctured convolutional code with soft-decision Viterbi decoding.
//!
//! The mother code is the rate-1/2, constraint-length-7 code with generators
//! 171 and 133 (octal). Every second output of the 133 branch is punctured,
//! so two input bits produce three channel bits. The trellis is terminated
//! with six zero tail bits.

const CONSTRAINT: usize = 7;
const MEMORY: usize = CONSTRAINT - 1;
const STATES: usize = 1 << MEMORY;

/// Convolutional code parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConvCode {
    pub generators: [u8; 2],
    /// Keep mask per period for each generator output, period 2.
    pub puncture: [[bool; 2]; 2],
}

impl Default for ConvCode {
    fn default() -> Self {
        Self::standard()
    }
}

#[inline]
fn parity(x: u8) -> u8 {
    (x.count_ones() & 1) as u8
}

impl ConvCode {
    /// K = 7, (171, 133), punctured to rate 2/3 with pattern `[1 1; 1 0]`.
    pub const fn standard() -> Self {
        Self {
            generators: [0o171, 0o133],
            puncture: [[true, true], [true, false]],
        }
    }

    pub fn tail_bits(&self) -> usize {
        MEMORY
    }

    #[inline]
    fn kept(&self, step: usize, branch: usize) -> bool {
        self.puncture[branch][step % 2]
    }

    /// Register `(input << 6) | state`: the two branch outputs.
    #[inline]
    fn outputs(&self, register: u8) -> [u8; 2] {
        [
            parity(register & self.generators[0]),
            parity(register & self.generators[1]),
        ]
    }

    /// Channel bits produced for a message of `len` bits.
    pub fn encoded_len(&self, len: usize) -> usize {
        (0..len + MEMORY)
            .map(|step| (0..2).filter(|&b| self.kept(step, b)).count())
            .sum()
    }

    pub fn encode(&self, bits: &[u8]) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.encoded_len(bits.len()));
        let mut state = 0u8;
        for (step, &b) in bits
            .iter()
            .chain(std::iter::repeat(&0).take(MEMORY))
            .enumerate()
        {
            let register = ((b & 1) << MEMORY) | state;
            let outs = self.outputs(register);
            for (branch, &o) in outs.iter().enumerate() {
                if self.kept(step, branch) {
                    out.push(o);
                }
            }
            state = register >> 1;
        }
        out
    }

    /// Soft-decision Viterbi decoding of a terminated block.
    ///
    /// `soft[i] > 0` favours bit 0. Punctured positions are filled with 0.
    pub fn decode(&self, soft: &[f64], message_len: usize) -> Vec<u8> {
        let steps = message_len + MEMORY;
        assert_eq!(
            soft.len(),
            self.encoded_len(message_len),
            "soft input length does not match the message length"
        );
        // Depuncture into two streams.
        let mut streams = vec![[0.0f64; 2]; steps];
        let mut it = soft.iter();
        for (step, slot) in streams.iter_mut().enumerate() {
            for branch in 0..2 {
                if self.kept(step, branch) {
                    slot[branch] = *it.next().expect("length checked above");
                }
            }
        }

        // Branch labels: expected symbol (+1 for bit 0) per (state, input).
        let mut expected = [[[0.0f64; 2]; 2]; STATES];
        for (state, row) in expected.iter_mut().enumerate() {
            for input in 0..2u8 {
                let outs = self.outputs((input << MEMORY) | state as u8);
                row[input as usize] = [
                    1.0 - 2.0 * f64::from(outs[0]),
                    1.0 - 2.0 * f64::from(outs[1]),
                ];
            }
        }

        let mut metric = [f64::NEG_INFINITY; STATES];
        metric[0] = 0.0;
        // decisions[step] bit s' = which predecessor (low bit of old state).
        let mut decisions = vec![0u64; steps];
        for (step, r) in streams.iter().enumerate() {
            let mut next = [f64::NEG_INFINITY; STATES];
            let mut dec = 0u64;
            for (s_next, slot) in next.iter_mut().enumerate() {
                let input = s_next >> (MEMORY - 1);
                let base = (s_next & (STATES / 2 - 1)) << 1;
                let mut best = f64::NEG_INFINITY;
                let mut choice = 0u64;
                for low in 0..2 {
                    let prev = base | low;
                    if metric[prev] == f64::NEG_INFINITY {
                        continue;
                    }
                    let e = expected[prev][input];
                    let m = metric[prev] + e[0] * r[0] + e[1] * r[1];
                    if m > best {
                        best = m;
                        choice = low as u64;
                    }
                }
                *slot = best;
                dec |= choice << s_next;
            }
            metric = next;
            decisions[step] = dec;
        }

        let mut state = 0usize;
        let mut bits = vec![0u8; steps];
        for step in (0..steps).rev() {
            bits[step] = (state >> (MEMORY - 1)) as u8;
            let low = ((decisions[step] >> state) & 1) as usize;
            state = ((state & (STATES / 2 - 1)) << 1) | low;
        }
        bits.truncate(message_len);
        bits
    }
}
