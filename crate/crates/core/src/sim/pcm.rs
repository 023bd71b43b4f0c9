use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::protograph::{design_rate, Protomatrix};

/// One unit of one protomatrix entry: a `q x q` permutation block mapping
/// row `block_row * q + r` to column `block_col * q + perm[r]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeUnit {
    pub block_row: usize,
    pub block_col: usize,
    pub perm: Vec<u32>,
}

/// Outcome of 4-cycle removal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RepairReport {
    pub seed: u64,
    pub passes: usize,
    pub swaps: usize,
}

/// Where a lifted matrix came from.
#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub protomatrix: Protomatrix,
    pub lifting_factor: usize,
    pub seed: u64,
    pub units: Vec<EdgeUnit>,
    pub repair: Option<RepairReport>,
}

/// Binary parity-check matrix stored as row and column adjacency lists.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseParityCheckMatrix {
    rows: usize,
    cols: usize,
    row_adj: Vec<Vec<usize>>,
    col_adj: Vec<Vec<usize>>,
    punctured: Vec<usize>,
    provenance: Option<Provenance>,
}

impl SparseParityCheckMatrix {
    /// Builds a matrix from per-row column indices. Rows may be listed in any
    /// order; repeated `(row, col)` pairs are rejected.
    pub fn from_rows(cols: usize, mut row_adj: Vec<Vec<usize>>, punctured: Vec<usize>) -> Result<Self> {
        let rows = row_adj.len();
        let mut col_adj = vec![Vec::new(); cols];
        for (i, row) in row_adj.iter_mut().enumerate() {
            row.sort_unstable();
            if row.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::validation("parity-check matrix", format!("row {i} repeats a column")));
            }
            for &j in row.iter() {
                if j >= cols {
                    return Err(Error::validation(
                        "parity-check matrix",
                        format!("row {i} references column {j} of {cols}"),
                    ));
                }
                col_adj[j].push(i);
            }
        }
        let mut punctured = punctured;
        punctured.sort_unstable();
        punctured.dedup();
        if punctured.last().is_some_and(|&p| p >= cols) {
            return Err(Error::validation("parity-check matrix", "punctured position out of range"));
        }
        Ok(Self {
            rows,
            cols,
            row_adj,
            col_adj,
            punctured,
            provenance: None,
        })
    }

    pub(crate) fn from_units(q: usize, provenance: Provenance) -> Result<Self> {
        let b = &provenance.protomatrix;
        let mut row_adj = vec![Vec::new(); b.rows() * q];
        for u in &provenance.units {
            for (r, &p) in u.perm.iter().enumerate() {
                row_adj[u.block_row * q + r].push(u.block_col * q + p as usize);
            }
        }
        let punctured = b.punctured().iter().flat_map(|&p| p * q..(p + 1) * q).collect();
        let mut h = Self::from_rows(b.cols() * q, row_adj, punctured)?;
        h.provenance = Some(provenance);
        Ok(h)
    }

    pub fn with_punctured(mut self, punctured: Vec<usize>) -> Result<Self> {
        let rebuilt = Self::from_rows(self.cols, std::mem::take(&mut self.row_adj), punctured)?;
        Ok(Self {
            provenance: self.provenance,
            ..rebuilt
        })
    }

    /// `M`
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// `N`
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Sorted column indices of row `i`.
    pub fn row(&self, i: usize) -> &[usize] {
        &self.row_adj[i]
    }

    /// Sorted row indices of column `j`.
    pub fn col(&self, j: usize) -> &[usize] {
        &self.col_adj[j]
    }

    pub fn num_edges(&self) -> usize {
        self.row_adj.iter().map(Vec::len).sum()
    }

    pub fn row_degrees(&self) -> Vec<usize> {
        self.row_adj.iter().map(Vec::len).collect()
    }

    pub fn col_degrees(&self) -> Vec<usize> {
        self.col_adj.iter().map(Vec::len).collect()
    }

    pub fn punctured(&self) -> &[usize] {
        &self.punctured
    }

    pub fn punctured_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.cols];
        for &p in &self.punctured {
            mask[p] = true;
        }
        mask
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub(crate) fn provenance_mut(&mut self) -> Option<&mut Provenance> {
        self.provenance.as_mut()
    }

    /// `(N - M) / (N - punctured)`, assuming full row rank.
    pub fn design_rate(&self) -> Rational64 {
        design_rate(self.rows, self.cols, self.punctured.len())
    }

    /// True when `H x = 0` over GF(2).
    pub fn syndrome_is_zero(&self, bits: &[u8]) -> bool {
        self.row_adj
            .iter()
            .all(|row| row.iter().fold(0u8, |acc, &j| acc ^ (bits[j] & 1)) == 0)
    }
}
