use num_rational::Rational64;

use crate::error::{Error, Result};

/// Cap on protomatrix entries when none is given.
pub const DEFAULT_MAX_ENTRY: u32 = 30;

/// A protomatrix `B`: check nodes are rows, variable nodes are columns and
/// each entry counts the parallel edges between them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Protomatrix {
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
    punctured: Vec<usize>,
    max_entry: u32,
}

impl Protomatrix {
    /// Builds and validates a protomatrix from row-major rows.
    pub fn new(matrix: Vec<Vec<u32>>, punctured: Vec<usize>, max_entry: u32) -> Result<Self> {
        let rows = matrix.len();
        if rows == 0 {
            return Err(Error::validation("protomatrix", "m must be positive"));
        }
        let cols = matrix[0].len();
        if let Some((i, _)) = matrix.iter().enumerate().find(|(_, r)| r.len() != cols) {
            return Err(Error::validation(
                "protomatrix",
                format!("row {i} has a different length than row 0"),
            ));
        }
        let entries = matrix.into_iter().flatten().collect();
        Self::from_parts(rows, cols, entries, punctured, max_entry)
    }

    /// Builds from a flat row-major entry vector.
    pub fn from_parts(
        rows: usize,
        cols: usize,
        entries: Vec<u32>,
        mut punctured: Vec<usize>,
        max_entry: u32,
    ) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::validation("protomatrix", "m and n must be positive"));
        }
        if entries.len() != rows * cols {
            return Err(Error::validation(
                "protomatrix",
                format!("expected {} entries for a {rows}x{cols} matrix, got {}", rows * cols, entries.len()),
            ));
        }
        if max_entry == 0 {
            return Err(Error::validation("protomatrix", "e_p must be positive"));
        }
        if let Some(pos) = entries.iter().position(|&b| b > max_entry) {
            return Err(Error::validation(
                "protomatrix",
                format!(
                    "entry ({}, {}) = {} exceeds e_p = {max_entry}",
                    pos / cols,
                    pos % cols,
                    entries[pos]
                ),
            ));
        }
        if cols <= rows {
            return Err(Error::validation(
                "protomatrix",
                format!("n = {cols} must exceed m = {rows} for a positive design rate"),
            ));
        }
        let len_before = punctured.len();
        punctured.sort_unstable();
        punctured.dedup();
        if punctured.len() != len_before {
            return Err(Error::validation("protomatrix", "punctured indices must be distinct"));
        }
        if let Some(&p) = punctured.iter().find(|&&p| p >= cols) {
            return Err(Error::validation(
                "protomatrix",
                format!("punctured index {p} out of range for n = {cols}"),
            ));
        }
        if punctured.len() >= cols {
            return Err(Error::validation("protomatrix", "at least one column must be transmitted"));
        }
        for i in 0..rows {
            if entries[i * cols..(i + 1) * cols].iter().all(|&b| b == 0) {
                return Err(Error::validation("protomatrix", format!("row {i} is all zero")));
            }
        }
        for j in 0..cols {
            if (0..rows).all(|i| entries[i * cols + j] == 0) {
                return Err(Error::validation("protomatrix", format!("column {j} is all zero")));
            }
        }
        Ok(Self {
            rows,
            cols,
            entries,
            punctured,
            max_entry,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn max_entry(&self) -> u32 {
        self.max_entry
    }

    /// Sorted punctured column indices.
    pub fn punctured(&self) -> &[usize] {
        &self.punctured
    }

    pub fn is_punctured(&self, col: usize) -> bool {
        self.punctured.binary_search(&col).is_ok()
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.entries[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[u32] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[u32]> {
        self.entries.chunks(self.cols)
    }

    /// Largest entry actually present.
    pub fn largest_entry(&self) -> u32 {
        self.entries.iter().copied().max().unwrap_or(0)
    }

    pub fn row_degree(&self, row: usize) -> u32 {
        self.row(row).iter().sum()
    }

    pub fn col_degree(&self, col: usize) -> u32 {
        (0..self.rows).map(|i| self.get(i, col)).sum()
    }

    /// `(n - m) / (n - n_p)`, exact.
    pub fn design_rate(&self) -> Rational64 {
        design_rate(self.rows, self.cols, self.punctured.len())
    }
}

/// Exact design rate of a protograph with the given dimensions.
pub fn design_rate(rows: usize, cols: usize, punctured: usize) -> Rational64 {
    Rational64::new(cols as i64 - rows as i64, cols as i64 - punctured as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rate_half_single_check() {
        let b = Protomatrix::new(vec![vec![3, 3]], vec![], DEFAULT_MAX_ENTRY).unwrap();
        assert_eq!(b.design_rate(), Rational64::new(1, 2));
    }

    #[test]
    fn rate_single_information_column() {
        for n in 2..12usize {
            let mut rows = vec![vec![0u32; n]; n - 1];
            for (i, row) in rows.iter_mut().enumerate() {
                row[0] = 1;
                row[i + 1] = 1;
            }
            let b = Protomatrix::new(rows, vec![], DEFAULT_MAX_ENTRY).unwrap();
            assert_eq!(b.design_rate(), Rational64::new(1, n as i64));
        }
    }

    #[test]
    fn rate_with_puncturing() {
        assert_eq!(design_rate(7, 9, 1), Rational64::new(1, 4));
    }

    #[test]
    fn rejects_zero_row_and_column() {
        assert!(Protomatrix::new(vec![vec![1, 1, 0], vec![0, 0, 0]], vec![], 30).is_err());
        assert!(Protomatrix::new(vec![vec![1, 0, 1]], vec![], 30).is_err());
    }

    #[test]
    fn rejects_non_positive_rate_and_bad_puncturing() {
        assert!(Protomatrix::new(vec![vec![1, 1], vec![1, 1]], vec![], 30).is_err());
        assert!(Protomatrix::new(vec![vec![1, 1]], vec![2], 30).is_err());
        assert!(Protomatrix::new(vec![vec![1, 1, 1]], vec![0, 0], 30).is_err());
        assert!(Protomatrix::new(vec![vec![1, 1]], vec![0, 1], 30).is_err());
    }

    #[test]
    fn rejects_entry_above_cap() {
        let err = Protomatrix::new(vec![vec![5, 1]], vec![], 4).unwrap_err();
        assert!(err.to_string().contains("exceeds e_p"));
    }
}
