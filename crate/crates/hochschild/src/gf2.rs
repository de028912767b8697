//! Packed-bit elimination over GF(2).

use rayon::prelude::*;

/// A GF(2) matrix with rows packed into 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        BitMatrix { rows, cols, words, bits: vec![0; rows * words] }
    }

    pub fn from_dense(data: &[u32], rows: usize, cols: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if data[i * cols + j] & 1 == 1 {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn to_dense(&self, out: &mut [u32]) {
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[i * self.cols + j] = self.get(i, j) as u32;
            }
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.bits[i * self.words + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for w in 0..self.words {
                self.bits.swap(a * self.words + w, b * self.words + w);
            }
        }
    }

    /// Reduced row echelon form in place, pivots restricted to columns `< limit`.
    pub fn echelon(&mut self, limit: usize) -> Vec<usize> {
        let words = self.words;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit.min(self.cols) {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.swap_rows(p, r);
            let w0 = c / 64;
            let mask = 1u64 << (c % 64);
            let (before, rest) = self.bits.split_at_mut(r * words);
            let (prow, after) = rest.split_at_mut(words);
            let prow = &prow[w0..];
            let elim = |row: &mut [u64]| {
                if row[w0] & mask != 0 {
                    for (y, x) in row[w0..].iter_mut().zip(prow) {
                        *y ^= *x;
                    }
                }
            };
            if self.rows * (words - w0) > 1 << 16 {
                before.par_chunks_mut(words).for_each(elim);
                after.par_chunks_mut(words).for_each(elim);
            } else {
                before.chunks_mut(words).for_each(elim);
                after.chunks_mut(words).for_each(elim);
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }
}

pub(crate) fn echelon(data: &mut [u32], rows: usize, cols: usize, limit: usize) -> Vec<usize> {
    let mut m = BitMatrix::from_dense(data, rows, cols);
    let piv = m.echelon(limit);
    m.to_dense(data);
    piv
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{generic_echelon, PrimeField};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn packed_matches_generic() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f = PrimeField::new(2).unwrap();
        for _ in 0..40 {
            let rows = rng.gen_range(1..90);
            let cols = rng.gen_range(1..150);
            let data: Vec<u32> = (0..rows * cols).map(|_| rng.gen_range(0..2)).collect();
            let mut a = data.clone();
            let mut b = data.clone();
            let pa = echelon(&mut a, rows, cols, cols);
            let pb = generic_echelon(&f, &mut b, rows, cols, cols);
            assert_eq!(pa, pb);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn set_get_roundtrip() {
        let mut m = BitMatrix::zeros(3, 130);
        m.set(2, 129, true);
        m.set(0, 64, true);
        assert!(m.get(2, 129) && m.get(0, 64) && !m.get(1, 0));
        m.set(2, 129, false);
        assert!(!m.get(2, 129));
    }
}
