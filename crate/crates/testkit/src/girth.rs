use std::collections::HashMap;

use tbp_core::protograph::Protomatrix;
use tbp_core::sim::SparseParityCheckMatrix;

/// Row pairs that share two or more columns, found by listing every row
/// pair of every column.
pub fn four_cycle_row_pairs(h: &SparseParityCheckMatrix) -> usize {
    let mut cols = vec![Vec::new(); h.cols()];
    for r in 0..h.rows() {
        for &c in h.row(r) {
            cols[c].push(r);
        }
    }
    let mut seen: HashMap<(usize, usize), u32> = HashMap::new();
    for rows in &cols {
        for (x, &a) in rows.iter().enumerate() {
            for &b in &rows[x + 1..] {
                *seen.entry((a, b)).or_default() += 1;
            }
        }
    }
    seen.values().filter(|&&k| k >= 2).count()
}

/// Checks that row `r` (column `c`) of a `q`-lift of `b` has the degree of
/// its protograph row `r / q` (column `c / q`) and that each `q x q` block
/// holds exactly `q * b_ij` ones. Returns a description of the first
/// mismatch.
pub fn degree_audit(b: &Protomatrix, q: usize, h: &SparseParityCheckMatrix) -> Result<(), String> {
    if h.rows() != b.rows() * q || h.cols() != b.cols() * q {
        return Err(format!("dimensions {}x{} for a {}-lift of {}x{}", h.rows(), h.cols(), q, b.rows(), b.cols()));
    }
    let mut block = vec![0usize; b.rows() * b.cols()];
    for r in 0..h.rows() {
        let want = b.row_degree(r / q) as usize;
        if h.row(r).len() != want {
            return Err(format!("row {r} has degree {}, expected {want}", h.row(r).len()));
        }
        for &c in h.row(r) {
            block[(r / q) * b.cols() + c / q] += 1;
        }
    }
    let mut col_deg = vec![0usize; h.cols()];
    for r in 0..h.rows() {
        for &c in h.row(r) {
            col_deg[c] += 1;
        }
    }
    for (c, &d) in col_deg.iter().enumerate() {
        let want = b.col_degree(c / q) as usize;
        if d != want {
            return Err(format!("column {c} has degree {d}, expected {want}"));
        }
    }
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            let got = block[i * b.cols() + j];
            if got != q * b.get(i, j) as usize {
                return Err(format!("block ({i},{j}) holds {got} ones, expected {}", q * b.get(i, j) as usize));
            }
        }
    }
    Ok(())
}
