//! Packed bit rows used for compatibility matrices.

use alloc::string::String;
use alloc::vec::Vec;

const WORD: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// Fixed-length set of bit positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    len: usize,
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            len,
            words: alloc::vec![0; words_for(len)],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, k: usize) -> bool {
        debug_assert!(k < self.len);
        self.words[k / WORD] >> (k % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, k: usize) {
        debug_assert!(k < self.len);
        self.words[k / WORD] |= 1 << (k % WORD);
    }

    #[inline]
    pub fn clear(&mut self, k: usize) {
        debug_assert!(k < self.len);
        self.words[k / WORD] &= !(1 << (k % WORD));
    }

    pub fn none(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// True when some position is set in both sets.
    #[inline]
    pub fn intersects(&self, other: &BitSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .any(|(a, b)| a & b != 0)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            core::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * WORD + bit)
            })
        })
    }
}

/// Row-major bit matrix; each row is a [`BitSet`] over the columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: Vec<BitSet>,
    cols: usize,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            rows: (0..rows).map(|_| BitSet::new(cols)).collect(),
            cols,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize) {
        self.rows[r].set(c)
    }

    #[inline]
    pub fn clear(&mut self, r: usize, c: usize) {
        self.rows[r].clear(c)
    }

    pub fn row(&self, r: usize) -> &BitSet {
        &self.rows[r]
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitSet::none)
    }

    pub fn count_ones(&self) -> usize {
        self.rows.iter().map(BitSet::count_ones).sum()
    }

    /// Column views: element `c` holds the rows set in column `c`.
    pub fn columns(&self) -> Vec<BitSet> {
        let mut cols: Vec<BitSet> = (0..self.cols).map(|_| BitSet::new(self.rows.len())).collect();
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones() {
                cols[c].set(r);
            }
        }
        cols
    }

    /// Each row rendered as a string of `0`/`1` characters.
    pub fn row_strings(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|row| (0..self.cols).map(|c| if row.get(c) { '1' } else { '0' }).collect())
            .collect()
    }

    /// Parses rows written as `0`/`1` strings. Whitespace is ignored.
    /// Returns `None` on ragged rows or stray characters.
    pub fn from_row_strings<S: AsRef<str>>(rows: &[S]) -> Option<Self> {
        let parsed: Vec<Vec<bool>> = rows
            .iter()
            .map(|r| {
                r.as_ref()
                    .chars()
                    .filter(|c| !c.is_whitespace())
                    .map(|c| match c {
                        '0' => Some(false),
                        '1' => Some(true),
                        _ => None,
                    })
                    .collect::<Option<Vec<bool>>>()
            })
            .collect::<Option<_>>()?;
        let cols = parsed.first().map_or(0, Vec::len);
        if parsed.iter().any(|r| r.len() != cols) {
            return None;
        }
        let mut m = BitMatrix::zeros(parsed.len(), cols);
        for (r, row) in parsed.iter().enumerate() {
            for (c, &bit) in row.iter().enumerate() {
                if bit {
                    m.set(r, c);
                }
            }
        }
        Some(m)
    }

    /// Matrix with rows rearranged: result row `k` is source row `order[k]`.
    pub fn permute_rows(&self, order: &[usize]) -> BitMatrix {
        BitMatrix {
            rows: order.iter().map(|&k| self.rows[k].clone()).collect(),
            cols: self.cols,
        }
    }

    /// Matrix with columns rearranged: result column `k` is source column `order[k]`.
    pub fn permute_cols(&self, order: &[usize]) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows(), order.len());
        for (r, row) in self.rows.iter().enumerate() {
            for (k, &c) in order.iter().enumerate() {
                if row.get(c) {
                    out.set(r, k);
                }
            }
        }
        out
    }
}
