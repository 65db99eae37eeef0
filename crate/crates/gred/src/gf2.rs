//! Dense bit matrices over GF(2).
//!
//! Rows are packed into 64-bit words so that row elimination, the workhorse
//! of every rank and solve below, is word-parallel XOR. Addition is XOR and
//! multiplication is AND-then-XOR accumulation; in characteristic 2 we have
//! `a + a = 0` and `-a = a`, so subtraction never appears in this module.
//!
//! Matrices with zero rows or zero columns are legal values: the rank of an
//! empty matrix is 0 and the inverse of the 0x0 matrix is the 0x0 matrix.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

const WORD_BITS: usize = 64;

/// Dense matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitMatrix {
    n_rows: usize,
    n_cols: usize,
    words_per_row: usize,
    // row-major; bit j of a row lives in word j/64, bit j%64.
    // Bits at column indices >= n_cols are kept zero so that Eq and Hash
    // see only real entries.
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        let words_per_row = n_cols.div_ceil(WORD_BITS);
        BitMatrix {
            n_rows,
            n_cols,
            words_per_row,
            bits: vec![0; n_rows * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(n_rows: usize, n_cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = BitMatrix::zeros(n_rows, n_cols);
        for i in 0..n_rows {
            for j in 0..n_cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Build a matrix from rows written as strings of `0`/`1` characters.
    ///
    /// # Panics
    ///
    /// Panics on ragged rows or characters other than `0`/`1`; this is a
    /// fixture helper, not a loader (see the `FromStr` impl for that).
    pub fn from_bit_rows(rows: &[&str]) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.len());
        let mut m = BitMatrix::zeros(n_rows, n_cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n_cols, "ragged row {i}");
            for (j, c) in row.chars().enumerate() {
                match c {
                    '0' => {}
                    '1' => m.set(i, j, true),
                    _ => panic!("bad bit character {c:?} in row {i}"),
                }
            }
        }
        m
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.n_rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// # Panics
    ///
    /// Panics if the index is out of range.
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(row < self.n_rows && col < self.n_cols, "index ({row}, {col}) out of range");
        let w = self.bits[row * self.words_per_row + col / WORD_BITS];
        (w >> (col % WORD_BITS)) & 1 == 1
    }

    /// # Panics
    ///
    /// Panics if the index is out of range.
    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        assert!(row < self.n_rows && col < self.n_cols, "index ({row}, {col}) out of range");
        let w = &mut self.bits[row * self.words_per_row + col / WORD_BITS];
        let mask = 1u64 << (col % WORD_BITS);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    fn row_words(&self, row: usize) -> &[u64] {
        &self.bits[row * self.words_per_row..(row + 1) * self.words_per_row]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let w = self.words_per_row;
        let (a, b) = (a.min(b), a.max(b));
        let (head, tail) = self.bits.split_at_mut(b * w);
        head[a * w..(a + 1) * w].swap_with_slice(&mut tail[..w]);
    }

    /// row `to` ^= row `from`
    fn xor_row(&mut self, to: usize, from: usize) {
        let w = self.words_per_row;
        if to == from {
            // a row XORed with itself vanishes
            for word in &mut self.bits[to * w..(to + 1) * w] {
                *word = 0;
            }
            return;
        }
        let (dst, src) = if to < from {
            let (head, tail) = self.bits.split_at_mut(from * w);
            (&mut head[to * w..(to + 1) * w], &tail[..w])
        } else {
            let (head, tail) = self.bits.split_at_mut(to * w);
            (&mut tail[..w], &head[from * w..(from + 1) * w])
        };
        for (t, f) in dst.iter_mut().zip(src) {
            *t ^= f;
        }
    }

    /// In-place reduction to reduced row-echelon form; returns the pivot
    /// columns in increasing order. RREF is canonical: two matrices have
    /// equal row space iff their RREFs are bit-identical.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..self.n_cols {
            if next_row == self.n_rows {
                break;
            }
            let Some(pivot_row) = (next_row..self.n_rows).find(|&r| self.get(r, col)) else {
                continue;
            };
            self.swap_rows(next_row, pivot_row);
            for r in 0..self.n_rows {
                if r != next_row && self.get(r, col) {
                    self.xor_row(r, next_row);
                }
            }
            pivots.push(col);
            next_row += 1;
        }
        pivots
    }

    /// Reduced row-echelon form.
    pub fn rref(&self) -> BitMatrix {
        let mut m = self.clone();
        m.rref_in_place();
        m
    }

    pub fn rref_with_pivots(&self) -> (BitMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    /// Dimension of the row space over GF(2).
    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    pub fn nullity(&self) -> usize {
        self.n_cols - self.rank()
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.n_cols, self.n_rows);
        for i in 0..self.n_rows {
            for j in 0..self.n_cols {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    /// Entrywise XOR.
    ///
    /// # Panics
    ///
    /// Panics on shape mismatch.
    pub fn xor(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(
            (self.n_rows, self.n_cols),
            (other.n_rows, other.n_cols),
            "shape mismatch in xor"
        );
        let mut out = self.clone();
        for (w, v) in out.bits.iter_mut().zip(&other.bits) {
            *w ^= v;
        }
        out
    }

    /// Matrix product over GF(2).
    ///
    /// # Panics
    ///
    /// Panics on shape mismatch.
    pub fn multiply(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.n_cols, other.n_rows, "shape mismatch in multiply");
        let mut out = BitMatrix::zeros(self.n_rows, other.n_cols);
        let w = out.words_per_row;
        for i in 0..self.n_rows {
            for k in 0..self.n_cols {
                if self.get(i, k) {
                    let dst = &mut out.bits[i * w..(i + 1) * w];
                    for (d, s) in dst.iter_mut().zip(other.row_words(k)) {
                        *d ^= s;
                    }
                }
            }
        }
        out
    }

    /// Copy of the entries at `rows` x `cols`, in the given index order.
    ///
    /// # Panics
    ///
    /// Panics if any index is out of range.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> BitMatrix {
        for &r in rows {
            assert!(r < self.n_rows, "row index {r} out of range");
        }
        for &c in cols {
            assert!(c < self.n_cols, "column index {c} out of range");
        }
        BitMatrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }

    /// Horizontal concatenation `[self | right]`.
    ///
    /// # Panics
    ///
    /// Panics on row-count mismatch.
    pub fn hstack(&self, right: &BitMatrix) -> BitMatrix {
        assert_eq!(self.n_rows, right.n_rows, "row mismatch in hstack");
        BitMatrix::from_fn(self.n_rows, self.n_cols + right.n_cols, |i, j| {
            if j < self.n_cols {
                self.get(i, j)
            } else {
                right.get(i, j - self.n_cols)
            }
        })
    }

    /// Assemble `[[p, q], [r, s]]` from four quadrants.
    ///
    /// # Panics
    ///
    /// Panics unless the quadrant shapes agree.
    pub fn from_blocks(p: &BitMatrix, q: &BitMatrix, r: &BitMatrix, s: &BitMatrix) -> BitMatrix {
        assert_eq!(p.n_rows, q.n_rows, "block row mismatch (p/q)");
        assert_eq!(r.n_rows, s.n_rows, "block row mismatch (r/s)");
        assert_eq!(p.n_cols, r.n_cols, "block column mismatch (p/r)");
        assert_eq!(q.n_cols, s.n_cols, "block column mismatch (q/s)");
        BitMatrix::from_fn(p.n_rows + r.n_rows, p.n_cols + q.n_cols, |i, j| {
            match (i < p.n_rows, j < p.n_cols) {
                (true, true) => p.get(i, j),
                (true, false) => q.get(i, j - p.n_cols),
                (false, true) => r.get(i - p.n_rows, j),
                (false, false) => s.get(i - p.n_rows, j - p.n_cols),
            }
        })
    }

    /// Some `b` with `self * b == b * self == I`, or `None` when singular.
    ///
    /// # Panics
    ///
    /// Panics if the matrix is not square.
    pub fn inverse(&self) -> Option<BitMatrix> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.n_rows;
        let aug = self.hstack(&BitMatrix::identity(n));
        let (red, pivots) = aug.rref_with_pivots();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Some(red.submatrix(&rows, &cols))
    }

    /// A basis of `{ x : self * x == 0 }`, returned as the rows of a
    /// `nullity x n_cols` matrix. The basis is the standard one read off
    /// the RREF free columns, in increasing column order.
    pub fn nullspace_basis(&self) -> BitMatrix {
        let (red, pivots) = self.rref_with_pivots();
        let free: Vec<usize> = (0..self.n_cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = BitMatrix::zeros(free.len(), self.n_cols);
        for (k, &f) in free.iter().enumerate() {
            basis.set(k, f, true);
            for (row, &p) in pivots.iter().enumerate() {
                if red.get(row, f) {
                    basis.set(k, p, true);
                }
            }
        }
        basis
    }

    /// Raw packed words; the derived `Ord` over these gives downstream code
    /// a stable sort key.
    pub fn bit_words(&self) -> &[u64] {
        &self.bits
    }

    /// The `code`-th symmetric `n x n` matrix: bit `k` of `code` drives the
    /// `k`-th upper-triangle entry `(i, j)`, `i <= j`, in row-major order.
    /// There are `2^(n(n+1)/2)` such matrices, so this enumerates every
    /// graph shape on up to 10 vertices from a single `u64`.
    ///
    /// # Panics
    ///
    /// Panics if `n(n+1)/2 > 64`.
    pub fn symmetric_from_code(n: usize, code: u64) -> BitMatrix {
        assert!(n * (n + 1) / 2 <= 64, "code word too small for n = {n}");
        let mut m = BitMatrix::zeros(n, n);
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                if code >> k & 1 == 1 {
                    m.set(i, j, true);
                    m.set(j, i, true);
                }
                k += 1;
            }
        }
        m
    }
}

/// Some `m` with `p * m == q`, or `None` when the column space of `q` is
/// not contained in the column space of `p`.
///
/// The returned solution is the one obtained by back-substitution from the
/// RREF of `[p | q]` with all free variables zero, so repeated calls are
/// bit-identical even though any solution would do.
///
/// # Panics
///
/// Panics if `p` and `q` disagree on row count.
pub fn solve_right(p: &BitMatrix, q: &BitMatrix) -> Option<BitMatrix> {
    assert_eq!(p.n_rows(), q.n_rows(), "solve_right: row mismatch");
    let (red, pivots) = p.hstack(q).rref_with_pivots();
    if pivots.iter().any(|&c| c >= p.n_cols()) {
        return None;
    }
    let mut m = BitMatrix::zeros(p.n_cols(), q.n_cols());
    for (row, &pc) in pivots.iter().enumerate() {
        for j in 0..q.n_cols() {
            if red.get(row, p.n_cols() + j) {
                m.set(pc, j, true);
            }
        }
    }
    Some(m)
}

impl fmt::Display for BitMatrix {
    /// Matrix text format: first line `R C`, then `R` lines of `C`
    /// characters in `{0,1}`. Round-trips bit-exactly through `FromStr`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n_rows, self.n_cols)?;
        for i in 0..self.n_rows {
            for j in 0..self.n_cols {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix({}x{})\n{}", self.n_rows, self.n_cols, self)
    }
}

impl FromStr for BitMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut lines = s.lines();
        let header = lines.next().ok_or_else(|| Error::Parse {
            line: 1,
            message: "expected a `R C` header".into(),
        })?;
        let mut parts = header.split_whitespace();
        let parse_dim = |tok: Option<&str>| -> Result<usize, Error> {
            tok.and_then(|t| t.parse().ok()).ok_or_else(|| Error::Parse {
                line: 1,
                message: format!("bad matrix header `{header}`: expected `R C`"),
            })
        };
        let n_rows = parse_dim(parts.next())?;
        let n_cols = parse_dim(parts.next())?;
        if parts.next().is_some() {
            return Err(Error::Parse {
                line: 1,
                message: format!("bad matrix header `{header}`: expected `R C`"),
            });
        }
        let mut m = BitMatrix::zeros(n_rows, n_cols);
        for i in 0..n_rows {
            let line_no = i + 2;
            let row = lines.next().ok_or_else(|| Error::Parse {
                line: line_no,
                message: format!("expected {n_rows} rows, found {i}"),
            })?;
            if row.chars().count() != n_cols {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected {} characters, found {}", n_cols, row.chars().count()),
                });
            }
            for (j, c) in row.chars().enumerate() {
                match c {
                    '0' => {}
                    '1' => m.set(i, j, true),
                    _ => {
                        return Err(Error::Parse {
                            line: line_no,
                            message: format!("column {}: expected `0` or `1`, found `{c}`", j + 1),
                        })
                    }
                }
            }
        }
        if let Some(extra) = lines.find(|l| !l.trim().is_empty()) {
            return Err(Error::Parse {
                line: 0,
                message: format!("unexpected trailing content `{extra}`"),
            });
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&str]) -> BitMatrix {
        BitMatrix::from_bit_rows(rows)
    }

    #[test]
    fn rank_basics() {
        assert_eq!(BitMatrix::identity(3).rank(), 3);
        assert_eq!(BitMatrix::zeros(2, 4).rank(), 0);
        assert_eq!(m(&["11", "11"]).rank(), 1);
        assert_eq!(BitMatrix::zeros(0, 0).rank(), 0);
        assert_eq!(BitMatrix::zeros(0, 5).rank(), 0);
    }

    #[test]
    fn solve_right_identity_and_zero() {
        let p = m(&["1"]);
        let q = m(&["11"]);
        assert_eq!(solve_right(&p, &q), Some(m(&["11"])));

        let p = m(&["0"]);
        let q = m(&["1"]);
        assert_eq!(solve_right(&p, &q), None);
    }

    #[test]
    fn solve_right_swap_matches_enumeration() {
        // Oracle: enumerate all 2^2 candidate 2x1 matrices over GF(2).
        let p = m(&["01", "10"]);
        let q = m(&["1", "0"]);
        let mut oracle = Vec::new();
        for bits in 0..4u8 {
            let cand = BitMatrix::from_fn(2, 1, |i, _| (bits >> i) & 1 == 1);
            if p.multiply(&cand) == q {
                oracle.push(cand);
            }
        }
        assert_eq!(oracle.len(), 1);
        assert_eq!(oracle[0], m(&["0", "1"]));
        assert_eq!(solve_right(&p, &q), Some(oracle.remove(0)));
    }

    #[test]
    #[should_panic(expected = "row mismatch")]
    fn solve_right_rejects_dimension_mismatch() {
        let _ = solve_right(&BitMatrix::zeros(2, 2), &BitMatrix::zeros(3, 1));
    }

    #[test]
    fn inverse_basics() {
        for n in 0..5 {
            let id = BitMatrix::identity(n);
            assert_eq!(id.inverse(), Some(id.clone()));
        }
        let swap = m(&["01", "10"]);
        assert_eq!(swap.inverse(), Some(swap.clone()));
        assert_eq!(m(&["11", "11"]).inverse(), None);
    }

    #[test]
    fn inverse_of_dense_5x5() {
        let a = m(&["10011", "01111", "01100", "11011", "11010"]);
        let printed = m(&["11100", "10010", "10110", "01111", "00011"]);
        let inv = a.inverse().expect("nonsingular");
        assert_eq!(inv, printed);
        assert_eq!(a.multiply(&inv), BitMatrix::identity(5));
        assert_eq!(inv.multiply(&a), BitMatrix::identity(5));
    }

    #[test]
    fn nullspace_basics() {
        assert_eq!(BitMatrix::identity(2).nullspace_basis().n_rows(), 0);
        assert_eq!(BitMatrix::zeros(1, 3).nullspace_basis().n_rows(), 3);
    }

    #[test]
    fn nullspace_of_all_ones_matches_enumeration() {
        // Oracle: check all 4 vectors of GF(2)^2.
        let a = m(&["11", "11"]);
        let mut kernel = Vec::new();
        for bits in 0..4u8 {
            let x = BitMatrix::from_fn(2, 1, |i, _| (bits >> i) & 1 == 1);
            if a.multiply(&x).is_zero() {
                kernel.push(x);
            }
        }
        // zero vector plus (1,1)
        assert_eq!(kernel.len(), 2);
        let basis = a.nullspace_basis();
        assert_eq!(basis, m(&["11"]));
    }

    #[test]
    fn submatrix_cases() {
        let a = m(&["100", "011", "011"]);
        let all = [0, 1, 2];
        assert_eq!(a.submatrix(&all, &all), a);
        // Rows/cols {2,3} (1-based) pick out the repeated twin rows.
        assert_eq!(a.submatrix(&[1, 2], &[1, 2]), m(&["11", "11"]));
        let empty = a.submatrix(&[], &[]);
        assert_eq!((empty.n_rows(), empty.n_cols()), (0, 0));
        assert_eq!(empty.rank(), 0);
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn submatrix_rejects_out_of_range() {
        let _ = BitMatrix::identity(2).submatrix(&[2], &[0]);
    }

    #[test]
    fn zero_by_zero_inverse() {
        let e = BitMatrix::zeros(0, 0);
        assert_eq!(e.inverse(), Some(e.clone()));
    }

    #[test]
    fn block_assembly() {
        let p = m(&["10", "01"]);
        let q = m(&["1", "0"]);
        let r = m(&["11"]);
        let s = m(&["0"]);
        assert_eq!(BitMatrix::from_blocks(&p, &q, &r, &s), m(&["101", "010", "110"]));
        // Degenerate quadrants still assemble.
        let e = BitMatrix::zeros(0, 0);
        let wide = BitMatrix::zeros(0, 2);
        let tall = BitMatrix::zeros(2, 0);
        assert_eq!(BitMatrix::from_blocks(&e, &wide, &tall, &p), p);
    }

    #[test]
    fn rref_is_canonical_for_row_equivalent_matrices() {
        let a = m(&["110", "011"]);
        let mut b = a.clone();
        b.xor_row(0, 1); // same row space
        assert_ne!(a, b);
        assert_eq!(a.rref(), b.rref());
        assert_eq!(a.rref().rref(), a.rref());
    }

    #[test]
    fn text_format_round_trip() {
        let a = m(&["10011", "01111", "01100", "11011", "11010"]);
        let text = a.to_string();
        assert_eq!(text.parse::<BitMatrix>().unwrap(), a);
        assert_eq!(text, "5 5\n10011\n01111\n01100\n11011\n11010\n");

        let empty = BitMatrix::zeros(0, 0);
        assert_eq!(empty.to_string().parse::<BitMatrix>().unwrap(), empty);
        let wide = BitMatrix::zeros(0, 4);
        assert_eq!(wide.to_string().parse::<BitMatrix>().unwrap(), wide);
    }

    #[test]
    fn text_format_errors_carry_line_numbers() {
        let err = "2 2\n10\n1x".parse::<BitMatrix>().unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 3,
                message: "column 2: expected `0` or `1`, found `x`".into()
            }
        );
        assert!(matches!("2 2\n10".parse::<BitMatrix>(), Err(Error::Parse { line: 3, .. })));
        assert!(matches!("nope".parse::<BitMatrix>(), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn wide_matrices_cross_word_boundaries() {
        // 70 columns forces two words per row.
        let a = BitMatrix::from_fn(3, 70, |i, j| (i + j) % 3 == 0);
        let t = a.transpose();
        assert_eq!(t.transpose(), a);
        assert_eq!(a.rank(), t.rank());
        let round = a.to_string().parse::<BitMatrix>().unwrap();
        assert_eq!(round, a);
    }
}
