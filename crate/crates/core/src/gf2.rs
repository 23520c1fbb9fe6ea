//! Bit-packed linear algebra over F_2.
//!
//! Rows are stored as contiguous runs of `u64` words. All eliminations pick the
//! lowest-index candidate row as pivot, so every result is a deterministic
//! function of the input matrix.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};

const WORD: usize = 64;

/// Below this many words of work per pivot step the row updates stay serial.
const PAR_THRESHOLD: usize = 1 << 14;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

#[inline]
fn bit(words: &[u64], i: usize) -> bool {
    (words[i / WORD] >> (i % WORD)) & 1 == 1
}

#[inline]
fn xor_words(dst: &mut [u64], src: &[u64], from: usize) {
    for (d, s) in dst[from..].iter_mut().zip(&src[from..]) {
        *d ^= *s;
    }
}

/// A fixed-length vector over F_2.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for w in v.words.iter_mut() {
            *w = u64::MAX;
        }
        v.clear_tail();
        v
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.set(i, true);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_indices(
            bits.len(),
            bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i),
        )
    }

    pub(crate) fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        let mut v = Self { len, words };
        v.clear_tail();
        v
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        bit(&self.words, i)
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len);
        xor_words(&mut self.words, &other.words, 0);
    }

    pub fn and_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len);
        for (d, s) in self.words.iter_mut().zip(&other.words) {
            *d &= *s;
        }
    }

    pub fn or_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len);
        for (d, s) in self.words.iter_mut().zip(&other.words) {
            *d |= *s;
        }
    }

    pub fn not(&self) -> BitVec {
        let mut v = BitVec::from_words(self.len, self.words.iter().map(|w| !w).collect());
        v.clear_tail();
        v
    }

    /// Parity of the bitwise AND.
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// True when every set bit of `self` is also set in `mask`.
    pub fn is_subset_of(&self, mask: &BitVec) -> bool {
        assert_eq!(self.len, mask.len);
        self.words
            .iter()
            .zip(&mask.words)
            .all(|(a, m)| a & !m == 0)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let t = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD + t)
                }
            })
        })
    }

    /// Concatenation `[self | other]`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut v = BitVec::zeros(self.len + other.len);
        for i in self.iter_ones() {
            v.set(i, true);
        }
        for i in other.iter_ones() {
            v.set(self.len + i, true);
        }
        v
    }

    pub fn slice(&self, start: usize, end: usize) -> BitVec {
        assert!(start <= end && end <= self.len);
        BitVec::from_indices(
            end - start,
            self.iter_ones()
                .filter(|&i| i >= start && i < end)
                .map(|i| i - start),
        )
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if bit(&self.words, i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for BitVec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Config(format!("invalid bit character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BitVec::from_bools(&bits))
    }
}

/// Dense row-major matrix over F_2.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    n_rows: usize,
    n_cols: usize,
    wpr: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        let wpr = words_for(n_cols);
        Self {
            n_rows,
            n_cols,
            wpr,
            data: vec![0; n_rows * wpr],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn empty(n_cols: usize) -> Self {
        Self::zeros(0, n_cols)
    }

    pub fn from_rows(n_cols: usize, rows: &[BitVec]) -> Result<Self> {
        let mut m = Self::empty(n_cols);
        for r in rows {
            m.push_row(r)?;
        }
        Ok(m)
    }

    /// Parses rows of `0`/`1` characters, the same layout [`fmt::Display`] produces.
    pub fn from_ascii(n_cols: usize, rows: &[&str]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.parse::<BitVec>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(n_cols, &parsed)
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn push_row(&mut self, row: &BitVec) -> Result<()> {
        if row.len() != self.n_cols {
            return Err(Error::DimensionMismatch {
                expected: self.n_cols,
                found: row.len(),
            });
        }
        self.data.extend_from_slice(row.words());
        self.n_rows += 1;
        Ok(())
    }

    pub fn append(&mut self, other: &BitMatrix) -> Result<()> {
        if other.n_cols != self.n_cols {
            return Err(Error::DimensionMismatch {
                expected: self.n_cols,
                found: other.n_cols,
            });
        }
        self.data.extend_from_slice(&other.data);
        self.n_rows += other.n_rows;
        Ok(())
    }

    #[inline]
    fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.wpr..(i + 1) * self.wpr]
    }

    pub fn row(&self, i: usize) -> BitVec {
        BitVec::from_words(self.n_cols, self.row_words(i).to_vec())
    }

    pub fn rows(&self) -> impl Iterator<Item = BitVec> + '_ {
        (0..self.n_rows).map(|i| self.row(i))
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.n_rows && c < self.n_cols);
        bit(self.row_words(r), c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.n_rows && c < self.n_cols);
        let w = &mut self.data[r * self.wpr + c / WORD];
        let mask = 1u64 << (c % WORD);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.n_cols, self.n_rows);
        for r in 0..self.n_rows {
            for c in self.row(r).iter_ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Keeps only the listed columns, in the listed order.
    pub fn select_columns(&self, cols: &[usize]) -> BitMatrix {
        let mut m = BitMatrix::zeros(self.n_rows, cols.len());
        for r in 0..self.n_rows {
            let src = self.row_words(r);
            for (j, &c) in cols.iter().enumerate() {
                if bit(src, c) {
                    m.set(r, j, true);
                }
            }
        }
        m
    }

    /// Row-vector times matrix: the F_2 combination of rows selected by `coeffs`.
    pub fn combine_rows(&self, coeffs: &BitVec) -> BitVec {
        assert_eq!(coeffs.len(), self.n_rows);
        let mut acc = vec![0u64; self.wpr];
        for i in coeffs.iter_ones() {
            xor_words(&mut acc, self.row_words(i), 0);
        }
        BitVec::from_words(self.n_cols, acc)
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.n_cols);
        BitVec::from_indices(
            self.n_rows,
            (0..self.n_rows).filter(|&i| self.row(i).dot(v)),
        )
    }

    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.eliminate(0..self.n_cols, false).len()
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn row_reduce(&self) -> (BitMatrix, Vec<usize>) {
        let mut work = self.clone();
        let pivots = work.eliminate(0..self.n_cols, true);
        (work, pivots)
    }

    pub fn echelon(&self) -> Echelon {
        let (rref, pivots) = self.row_reduce();
        let mut rows = rref;
        rows.truncate(pivots.len());
        Echelon { rows, pivots }
    }

    pub fn kernel_basis(&self) -> BitMatrix {
        let ech = self.echelon();
        let mut is_pivot = vec![false; self.n_cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.n_cols).filter(|&c| !is_pivot[c]).collect();
        let mut kernel = BitMatrix::zeros(free.len(), self.n_cols);
        let rows: Vec<&[u64]> = (0..ech.rows.n_rows).map(|i| ech.rows.row_words(i)).collect();
        let fill = |(k, chunk): (usize, &mut [u64])| {
            let f = free[k];
            chunk[f / WORD] |= 1u64 << (f % WORD);
            for (i, r) in rows.iter().enumerate() {
                if bit(r, f) {
                    let p = ech.pivots[i];
                    chunk[p / WORD] |= 1u64 << (p % WORD);
                }
            }
        };
        if kernel.wpr > 0 {
            let wpr = kernel.wpr;
            if free.len() * rows.len() > PAR_THRESHOLD {
                kernel.data.par_chunks_mut(wpr).enumerate().for_each(fill);
            } else {
                kernel.data.chunks_mut(wpr).enumerate().for_each(fill);
            }
        }
        kernel
    }

    pub fn in_rowspace(&self, v: &BitVec) -> Result<bool> {
        if v.len() != self.n_cols {
            return Err(Error::DimensionMismatch {
                expected: self.n_cols,
                found: v.len(),
            });
        }
        Ok(self.echelon().contains(v))
    }

    /// Basis of the rowspace elements that vanish outside `mask`.
    pub fn rowspace_restricted_to(&self, mask: &BitVec) -> Result<BitMatrix> {
        if mask.len() != self.n_cols {
            return Err(Error::DimensionMismatch {
                expected: self.n_cols,
                found: mask.len(),
            });
        }
        let outside: Vec<usize> = (0..self.n_cols).filter(|&c| !mask.get(c)).collect();
        let mut work = self.clone();
        let used = work.eliminate(outside.iter().copied(), false).len();
        let mut rest = BitMatrix::zeros(work.n_rows - used, self.n_cols);
        rest.data
            .copy_from_slice(&work.data[used * work.wpr..work.n_rows * work.wpr]);
        let ech = rest.echelon();
        Ok(ech.rows)
    }

    fn truncate(&mut self, n_rows: usize) {
        self.n_rows = n_rows.min(self.n_rows);
        self.data.truncate(self.n_rows * self.wpr);
    }

    /// Gaussian elimination visiting columns in the given order.
    ///
    /// Returns the pivot columns in the order they were found; pivot `i` lives
    /// in row `i`. With `full` set, pivot columns are cleared from every other
    /// row, otherwise only from the rows below.
    fn eliminate(&mut self, columns: impl Iterator<Item = usize>, full: bool) -> Vec<usize> {
        let wpr = self.wpr;
        let mut pivots = Vec::new();
        let mut next = 0usize;
        for c in columns {
            if next == self.n_rows {
                break;
            }
            let (cw, cm) = (c / WORD, 1u64 << (c % WORD));
            let Some(found) = (next..self.n_rows).find(|&r| self.data[r * wpr + cw] & cm != 0)
            else {
                continue;
            };
            if found != next {
                for w in 0..wpr {
                    self.data.swap(found * wpr + w, next * wpr + w);
                }
            }
            let pivot: Vec<u64> = self.data[next * wpr..(next + 1) * wpr].to_vec();
            let from = pivot.iter().position(|w| *w != 0).unwrap_or(0);
            let apply = |chunk: &mut [u64]| {
                if chunk[cw] & cm != 0 {
                    xor_words(chunk, &pivot, from);
                }
            };
            let below = (next + 1) * wpr;
            let work = (self.n_rows - next) * (wpr - from);
            if work > PAR_THRESHOLD {
                self.data[below..].par_chunks_mut(wpr).for_each(apply);
                if full {
                    self.data[..next * wpr].par_chunks_mut(wpr).for_each(apply);
                }
            } else {
                self.data[below..].chunks_mut(wpr).for_each(apply);
                if full {
                    self.data[..next * wpr].chunks_mut(wpr).for_each(apply);
                }
            }
            pivots.push(c);
            next += 1;
        }
        pivots
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.n_rows, self.n_cols)?;
        fmt::Display::fmt(self, f)
    }
}

/// ASCII dump: one row per line, `0`/`1` per column.
impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.n_rows {
            writeln!(f, "{}", self.row(r))?;
        }
        Ok(())
    }
}

/// A reduced echelon basis kept around for repeated membership queries.
#[derive(Clone, Debug)]
pub struct Echelon {
    rows: BitMatrix,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> &BitMatrix {
        &self.rows
    }

    /// Reduces `v` in place against the basis; the remainder is zero iff `v` was in the span.
    pub fn reduce(&self, v: &mut BitVec) {
        for (i, &p) in self.pivots.iter().enumerate() {
            if v.get(p) {
                xor_words(&mut v.words, self.rows.row_words(i), 0);
            }
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }

    /// An empty basis over `n_cols` columns.
    pub fn empty(n_cols: usize) -> Self {
        Self {
            rows: BitMatrix::empty(n_cols),
            pivots: Vec::new(),
        }
    }

    /// Adds `v` to the span, keeping the basis fully reduced. Returns false if `v` was
    /// already in the span. Pivots are no longer sorted after an insertion.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        let mut r = v.clone();
        self.reduce(&mut r);
        let Some(p) = r.iter_ones().next() else {
            return false;
        };
        let (pw, pm) = (p / WORD, 1u64 << (p % WORD));
        let wpr = self.rows.wpr;
        for chunk in self.rows.data.chunks_mut(wpr.max(1)) {
            if wpr > 0 && chunk[pw] & pm != 0 {
                xor_words(chunk, &r.words, 0);
            }
        }
        self.rows.push_row(&r).expect("row width matches");
        self.pivots.push(p);
        true
    }
}

/// Finds coefficients `c` with `c · rows = target`, if any.
pub fn solve_row_combination(rows: &BitMatrix, target: &BitVec) -> Option<BitVec> {
    assert_eq!(target.len(), rows.n_cols());
    let n = rows.n_rows();
    let mut aug = BitMatrix::zeros(n, rows.n_cols() + n);
    for i in 0..n {
        for c in rows.row(i).iter_ones() {
            aug.set(i, c, true);
        }
        aug.set(i, rows.n_cols() + i, true);
    }
    let pivots = aug.eliminate(0..rows.n_cols(), true);
    let mut rem = target.clone();
    let mut coeffs = BitVec::zeros(n);
    for (i, &p) in pivots.iter().enumerate() {
        if rem.get(p) {
            let row = aug.row(i);
            rem.xor_assign(&row.slice(0, rows.n_cols()));
            coeffs.xor_assign(&row.slice(rows.n_cols(), rows.n_cols() + n));
        }
    }
    rem.is_zero().then_some(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&str]) -> BitMatrix {
        BitMatrix::from_ascii(rows[0].len(), rows).unwrap()
    }

    #[test]
    fn rank_small_cases() {
        assert_eq!(BitMatrix::identity(3).rank(), 3);
        assert_eq!(BitMatrix::zeros(4, 7).rank(), 0);
        assert_eq!(m(&["110", "011", "101"]).rank(), 2);
        assert_eq!(BitMatrix::empty(5).rank(), 0);
        assert_eq!(BitMatrix::zeros(0, 0).rank(), 0);
    }

    #[test]
    fn row_reduce_cases() {
        let (r, p) = BitMatrix::identity(3).row_reduce();
        assert_eq!(r, BitMatrix::identity(3));
        assert_eq!(p, vec![0, 1, 2]);

        let (r, p) = m(&["11", "11"]).row_reduce();
        assert_eq!(r, m(&["11", "00"]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn kernel_cases() {
        assert_eq!(BitMatrix::identity(4).kernel_basis().n_rows(), 0);
        assert_eq!(BitMatrix::zeros(2, 5).kernel_basis().n_rows(), 5);
        let k = m(&["110", "011"]).kernel_basis();
        assert_eq!(k, m(&["111"]));
    }

    #[test]
    fn rowspace_membership() {
        let a = m(&["110", "011"]);
        assert!(a.in_rowspace(&BitVec::zeros(3)).unwrap());
        assert!(a.in_rowspace(&a.row(0)).unwrap());
        assert!(!a.in_rowspace(&"100".parse().unwrap()).unwrap());
        assert_eq!(
            a.in_rowspace(&BitVec::zeros(4)),
            Err(Error::DimensionMismatch {
                expected: 3,
                found: 4
            })
        );
    }

    #[test]
    fn restriction_cases() {
        let a = m(&["110", "011", "101"]);
        assert_eq!(a.rowspace_restricted_to(&BitVec::ones(3)).unwrap().n_rows(), 2);
        assert_eq!(a.rowspace_restricted_to(&BitVec::zeros(3)).unwrap().n_rows(), 0);
        let r = a.rowspace_restricted_to(&"110".parse().unwrap()).unwrap();
        assert_eq!(r, m(&["110"]));
        assert!(a.rowspace_restricted_to(&BitVec::zeros(2)).is_err());
    }

    #[test]
    fn solve_combination() {
        let a = m(&["1100", "0110", "0011"]);
        let c = solve_row_combination(&a, &"1001".parse().unwrap()).unwrap();
        assert_eq!(a.combine_rows(&c).to_string(), "1001");
        assert!(solve_row_combination(&a, &"1000".parse().unwrap()).is_none());
    }

    #[test]
    fn echelon_insert_tracks_span() {
        let mut e = Echelon::empty(4);
        assert!(e.insert(&"1100".parse().unwrap()));
        assert!(e.insert(&"0110".parse().unwrap()));
        assert!(!e.insert(&"1010".parse().unwrap()));
        assert!(e.contains(&"1010".parse().unwrap()));
        assert!(!e.contains(&"0001".parse().unwrap()));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn wide_rows_cross_word_boundaries() {
        let n = 200;
        let mut a = BitMatrix::zeros(n - 1, n);
        for i in 0..n - 1 {
            a.set(i, i, true);
            a.set(i, i + 1, true);
        }
        assert_eq!(a.rank(), n - 1);
        let k = a.kernel_basis();
        assert_eq!(k.n_rows(), 1);
        assert_eq!(k.row(0).count_ones(), n);
    }

    #[test]
    fn ascii_dump_round_trips() {
        let a = m(&["1010", "0111"]);
        let text = a.to_string();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(BitMatrix::from_ascii(4, &lines).unwrap(), a);
    }
}
