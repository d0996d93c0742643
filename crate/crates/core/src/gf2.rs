//! Dense GF(2) matrices packed into 64-bit words.
//!
//! Row-major, one bit per entry. Rank is computed by in-place Gaussian
//! elimination whose inner loop is a word-wise XOR; the complexes built
//! elsewhere in this crate have at most a few thousand cells, so no
//! sparse machinery is needed.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64);
        Gf2Matrix {
            rows,
            cols,
            words_per_row,
            data: vec![0; rows * words_per_row],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols);
        let w = r * self.words_per_row + c / 64;
        let bit = 1u64 << (c % 64);
        if value {
            self.data[w] |= bit;
        } else {
            self.data[w] &= !bit;
        }
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        self.data[r * self.words_per_row + c / 64] >> (c % 64) & 1 == 1
    }

    /// Flip entry (r, c).
    pub fn toggle(&mut self, r: usize, c: usize) {
        assert!(r < self.rows && c < self.cols);
        self.data[r * self.words_per_row + c / 64] ^= 1 << (c % 64);
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    fn xor_row_into(&mut self, src: usize, dst: usize, from_word: usize) {
        debug_assert_ne!(src, dst);
        let w = self.words_per_row;
        let (s, d) = (src * w, dst * w);
        for i in from_word..w {
            let v = self.data[s + i];
            self.data[d + i] ^= v;
        }
    }

    /// Rank over GF(2). Works on a copy; `self` is untouched.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let word = col / 64;
            let bit = 1u64 << (col % 64);
            let Some(pivot) =
                (rank..m.rows).find(|&r| m.data[r * m.words_per_row + word] & bit != 0)
            else {
                continue;
            };
            if pivot != rank {
                for i in word..m.words_per_row {
                    m.data.swap(pivot * m.words_per_row + i, rank * m.words_per_row + i);
                }
            }
            for r in rank + 1..m.rows {
                if m.data[r * m.words_per_row + word] & bit != 0 {
                    m.xor_row_into(rank, r, word);
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    /// Matrix product over GF(2); `self.cols` must equal `other.rows`.
    pub fn mul(&self, other: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Gf2Matrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for (k, word) in self.row(r).iter().enumerate() {
                let mut bits = *word;
                while bits != 0 {
                    let j = k * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    let src = j * other.words_per_row;
                    let dst = r * out.words_per_row;
                    for i in 0..other.words_per_row {
                        out.data[dst + i] ^= other.data[src + i];
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }
}
