use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::HomalgError;

/// Matrix over GF(2) stored as the set of its 1-entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    entries: BTreeSet<(usize, usize)>,
}

/// Dense rows as 64-bit words, used for elimination.
pub(crate) type Bits = Vec<u64>;

pub(crate) fn words(n: usize) -> usize {
    n.div_ceil(64)
}

pub(crate) fn get_bit(b: &[u64], i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

pub(crate) fn flip_bit(b: &mut [u64], i: usize) {
    b[i / 64] ^= 1 << (i % 64);
}

pub(crate) fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

/// Row-reduces in place; returns the pivot column of each leading row.
pub(crate) fn eliminate(rows: &mut [Bits], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| get_bit(&rows[i], c)) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && get_bit(row, c) {
                xor_into(row, &pivot);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Rank of a set of dense vectors of length `ncols`.
pub(crate) fn rank_of(mut rows: Vec<Bits>, ncols: usize) -> usize {
    eliminate(&mut rows, ncols).len()
}

impl F2Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        F2Matrix {
            rows,
            cols,
            entries: BTreeSet::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        F2Matrix {
            rows: n,
            cols: n,
            entries: (0..n).map(|i| (i, i)).collect(),
        }
    }

    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, HomalgError> {
        let mut m = Self::zero(rows, cols);
        for (r, c) in entries {
            if r >= rows || c >= cols {
                return Err(HomalgError::Entry { r, c, rows, cols });
            }
            m.toggle(r, c);
        }
        Ok(m)
    }

    /// From a row-major table of 0/1 values.
    pub fn from_bits(rows: usize, cols: usize, bits: &[Vec<u8>]) -> Self {
        let mut m = Self::zero(rows, cols);
        for (r, row) in bits.iter().enumerate().take(rows) {
            for (c, &b) in row.iter().enumerate().take(cols) {
                if b & 1 == 1 {
                    m.entries.insert((r, c));
                }
            }
        }
        m
    }

    pub(crate) fn from_dense(rows: Vec<Bits>, cols: usize) -> Self {
        let mut m = Self::zero(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            for c in 0..cols {
                if get_bit(row, c) {
                    m.entries.insert((r, c));
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.entries.iter().copied()
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.entries.contains(&(r, c))
    }

    pub fn toggle(&mut self, r: usize, c: usize) {
        if !self.entries.remove(&(r, c)) {
            self.entries.insert((r, c));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub(crate) fn dense_rows(&self) -> Vec<Bits> {
        let mut out = vec![vec![0u64; words(self.cols)]; self.rows];
        for &(r, c) in &self.entries {
            flip_bit(&mut out[r], c);
        }
        out
    }

    pub(crate) fn dense_cols(&self) -> Vec<Bits> {
        self.transpose().dense_rows()
    }

    pub fn transpose(&self) -> Self {
        F2Matrix {
            rows: self.cols,
            cols: self.rows,
            entries: self.entries.iter().map(|&(r, c)| (c, r)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        rank_of(self.dense_rows(), self.cols)
    }

    /// Basis of the null space, as the columns of a `cols × k` matrix.
    pub fn kernel(&self) -> F2Matrix {
        let mut rows = self.dense_rows();
        let pivots = eliminate(&mut rows, self.cols);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = F2Matrix::zero(self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k.entries.insert((f, j));
            for (r, &p) in pivots.iter().enumerate() {
                if get_bit(&rows[r], f) {
                    k.entries.insert((p, j));
                }
            }
        }
        k
    }

    pub fn mul(&self, other: &F2Matrix) -> Result<F2Matrix, HomalgError> {
        if self.cols != other.rows {
            return Err(HomalgError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let b = other.dense_rows();
        let mut out = vec![vec![0u64; words(other.cols)]; self.rows];
        for &(r, c) in &self.entries {
            xor_into(&mut out[r], &b[c]);
        }
        Ok(F2Matrix::from_dense(out, other.cols))
    }

    pub fn add(&self, other: &F2Matrix) -> Result<F2Matrix, HomalgError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(HomalgError::Shape(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(F2Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: &self.entries ^ &other.entries,
        })
    }

    /// Applies the matrix to a dense vector.
    pub(crate) fn apply(&self, v: &[u64]) -> Bits {
        let mut out = vec![0u64; words(self.rows)];
        for &(r, c) in &self.entries {
            if get_bit(v, c) {
                flip_bit(&mut out, r);
            }
        }
        out
    }

    /// `rows cols` on the first line, then one sorted `r c` line per 1-entry.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for (r, c) in &self.entries {
            let _ = writeln!(s, "{r} {c}");
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self, HomalgError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let parse_pair = |n: usize, l: &str| -> Result<(usize, usize), HomalgError> {
            let bad = |reason: &str| HomalgError::Parse {
                line: n + 1,
                reason: reason.to_string(),
            };
            let mut it = l.split_whitespace();
            let a = it
                .next()
                .ok_or_else(|| bad("missing number"))?
                .parse()
                .map_err(|_| bad("not a number"))?;
            let b = it
                .next()
                .ok_or_else(|| bad("missing second number"))?
                .parse()
                .map_err(|_| bad("not a number"))?;
            if it.next().is_some() {
                return Err(bad("expected two numbers"));
            }
            Ok((a, b))
        };
        let (n, head) = lines.next().ok_or(HomalgError::Parse {
            line: 1,
            reason: "empty input".into(),
        })?;
        let (rows, cols) = parse_pair(n, head)?;
        let mut m = Self::zero(rows, cols);
        for (n, l) in lines {
            let (r, c) = parse_pair(n, l)?;
            if r >= rows || c >= cols {
                return Err(HomalgError::Parse {
                    line: n + 1,
                    reason: format!("entry ({r}, {c}) outside {rows}x{cols}"),
                });
            }
            if !m.entries.insert((r, c)) {
                return Err(HomalgError::Parse {
                    line: n + 1,
                    reason: format!("entry ({r}, {c}) repeated"),
                });
            }
        }
        Ok(m)
    }

    /// Block matrix from a grid of blocks with consistent shapes.
    pub fn blocks(
        row_sizes: &[usize],
        col_sizes: &[usize],
        blocks: &[(usize, usize, &F2Matrix)],
    ) -> Result<Self, HomalgError> {
        let ro: Vec<usize> = row_sizes
            .iter()
            .scan(0, |a, &x| {
                let o = *a;
                *a += x;
                Some(o)
            })
            .collect();
        let co: Vec<usize> = col_sizes
            .iter()
            .scan(0, |a, &x| {
                let o = *a;
                *a += x;
                Some(o)
            })
            .collect();
        let mut m = Self::zero(row_sizes.iter().sum(), col_sizes.iter().sum());
        for &(i, j, b) in blocks {
            if b.rows != row_sizes[i] || b.cols != col_sizes[j] {
                return Err(HomalgError::Shape(format!(
                    "block ({i}, {j}) has shape {}x{}",
                    b.rows, b.cols
                )));
            }
            for (r, c) in b.entries() {
                m.toggle(ro[i] + r, co[j] + c);
            }
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_ranks() {
        assert_eq!(F2Matrix::identity(3).rank(), 3);
        let anti = F2Matrix::from_bits(3, 3, &[vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
        assert_eq!(anti.rank(), 3);
        let all = F2Matrix::from_bits(2, 2, &[vec![1, 1], vec![1, 1]]);
        assert_eq!(all.rank(), 1);
        assert_eq!(F2Matrix::zero(4, 7).rank(), 0);
    }

    #[test]
    fn text_round_trip() {
        let m = F2Matrix::from_entries(3, 4, [(2, 1), (0, 3), (1, 1)]).unwrap();
        let t = m.to_text();
        assert_eq!(t, "3 4\n0 3\n1 1\n2 1\n");
        assert_eq!(F2Matrix::from_text(&t).unwrap(), m);
        let e = F2Matrix::from_text("2 2\n0 0\n5 1\n").unwrap_err();
        assert!(matches!(e, HomalgError::Parse { line: 3, .. }));
    }

    fn arb_matrix() -> impl Strategy<Value = F2Matrix> {
        (1usize..12, 1usize..70).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(0u8..2, c), r)
                .prop_map(move |bits| F2Matrix::from_bits(r, c, &bits))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix()) {
            let k = m.kernel();
            prop_assert_eq!(m.rank() + k.cols(), m.cols());
            prop_assert!(m.mul(&k).unwrap().is_zero());
            prop_assert_eq!(k.rank(), k.cols());
        }

        #[test]
        fn rank_of_transpose(m in arb_matrix()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }
    }
}
