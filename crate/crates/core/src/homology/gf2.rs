//! Dense bit-packed matrices over GF(2).

/// A `rows × cols` matrix over GF(2), each row packed into `u64` words.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        Self { rows, cols, words, data: vec![0; rows * words] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        let w = &mut self.data[r * self.words + c / 64];
        if value {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    /// Adds 1 to entry `(r, c)`.
    pub fn toggle(&mut self, r: usize, c: usize) {
        self.data[r * self.words + c / 64] ^= 1 << (c % 64);
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Rank by forward Gaussian elimination on a copy.
    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let w = self.words;
        let mut rank = 0;
        for col in 0..self.cols {
            let (word, bit) = (col / 64, 1u64 << (col % 64));
            let Some(pivot) = (rank..self.rows).find(|&r| m[r * w + word] & bit != 0) else {
                continue;
            };
            if pivot != rank {
                for k in 0..w {
                    m.swap(pivot * w + k, rank * w + k);
                }
            }
            let (head, tail) = m.split_at_mut((rank + 1) * w);
            let pivot_row = &head[rank * w + word..(rank + 1) * w];
            for row in tail.chunks_exact_mut(w) {
                if row[word] & bit != 0 {
                    for (x, &p) in row[word..].iter_mut().zip(pivot_row) {
                        *x ^= p;
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in GF(2) product");
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let dst = &mut out.data[r * out.words..(r + 1) * out.words];
            for (wi, &word) in self.row(r).iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let k = wi * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    for (d, &s) in dst.iter_mut().zip(other.row(k)) {
                        *d ^= s;
                    }
                }
            }
        }
        out
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let line: String = (0..self.cols).map(|c| if self.get(r, c) { '1' } else { '0' }).collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}
