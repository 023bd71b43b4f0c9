//! MacKay alist format.
//!
//! ```text
//! N M
//! max_col_degree max_row_degree
//! col degrees (N values)
//! row degrees (M values)
//! N lines: 1-based row indices of each column, zero-padded to max_col_degree
//! M lines: 1-based column indices of each row, zero-padded to max_row_degree
//! ```
//!
//! Punctured positions are not part of the format.

use std::fmt::Write;

use super::pcm::SparseParityCheckMatrix;
use crate::error::{Error, Result};

pub fn write_alist(h: &SparseParityCheckMatrix) -> String {
    let col_deg = h.col_degrees();
    let row_deg = h.row_degrees();
    let max_c = col_deg.iter().copied().max().unwrap_or(0);
    let max_r = row_deg.iter().copied().max().unwrap_or(0);
    let mut out = String::new();
    let join = |v: &mut dyn Iterator<Item = usize>| v.map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    writeln!(out, "{} {}", h.cols(), h.rows()).unwrap();
    writeln!(out, "{max_c} {max_r}").unwrap();
    writeln!(out, "{}", join(&mut col_deg.iter().copied())).unwrap();
    writeln!(out, "{}", join(&mut row_deg.iter().copied())).unwrap();
    for j in 0..h.cols() {
        let col = h.col(j);
        let mut it = col.iter().map(|r| r + 1).chain(std::iter::repeat(0)).take(max_c);
        writeln!(out, "{}", join(&mut it)).unwrap();
    }
    for i in 0..h.rows() {
        let row = h.row(i);
        let mut it = row.iter().map(|c| c + 1).chain(std::iter::repeat(0)).take(max_r);
        writeln!(out, "{}", join(&mut it)).unwrap();
    }
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    /// Next non-blank line as numbers, with its 1-based line number.
    fn numbers(&mut self, what: &str) -> Result<(usize, Vec<usize>)> {
        loop {
            let (idx, line) = self.inner.next().ok_or_else(|| Error::Parse {
                location: "end of file".into(),
                message: format!("missing {what}"),
            })?;
            if line.trim().is_empty() {
                continue;
            }
            let nums = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>().map_err(|_| Error::Parse {
                        location: format!("line {}", idx + 1),
                        message: format!("expected a non-negative integer in {what}, found {t:?}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok((idx + 1, nums));
        }
    }
}

fn expect_len(line: usize, nums: &[usize], len: usize, what: &str) -> Result<()> {
    if nums.len() != len {
        return Err(Error::Parse {
            location: format!("line {line}"),
            message: format!("{what} has {} values, expected {len}", nums.len()),
        });
    }
    Ok(())
}

/// Parses an alist document. The column and row sections must agree.
pub fn read_alist(text: &str) -> Result<SparseParityCheckMatrix> {
    let mut lines = Lines { inner: text.lines().enumerate() };
    let (l, dims) = lines.numbers("dimensions")?;
    expect_len(l, &dims, 2, "dimension line")?;
    let (n, m) = (dims[0], dims[1]);
    let (l, maxes) = lines.numbers("maximum degrees")?;
    expect_len(l, &maxes, 2, "maximum degree line")?;
    let (l, col_deg) = lines.numbers("column degrees")?;
    expect_len(l, &col_deg, n, "column degree line")?;
    let (l, row_deg) = lines.numbers("row degrees")?;
    expect_len(l, &row_deg, m, "row degree line")?;
    let max_c = col_deg.iter().copied().max().unwrap_or(0);
    let max_r = row_deg.iter().copied().max().unwrap_or(0);
    if maxes != [max_c, max_r] {
        return Err(Error::Parse {
            location: "line 2".into(),
            message: format!("maximum degrees {maxes:?} do not match the degree lists ({max_c}, {max_r})"),
        });
    }

    let mut from_cols: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (j, &d) in col_deg.iter().enumerate() {
        let (l, idx) = lines.numbers("column entries")?;
        let entries: Vec<usize> = idx.into_iter().filter(|&x| x != 0).collect();
        if entries.len() != d || entries.iter().any(|&r| r > m) {
            return Err(Error::Parse {
                location: format!("line {l}"),
                message: format!("column {} lists {entries:?}, expected {d} rows in 1..={m}", j + 1),
            });
        }
        for r in entries {
            from_cols[r - 1].push(j);
        }
    }
    let mut rows: Vec<Vec<usize>> = Vec::with_capacity(m);
    for (i, &d) in row_deg.iter().enumerate() {
        let (l, idx) = lines.numbers("row entries")?;
        let mut entries: Vec<usize> = idx.into_iter().filter(|&x| x != 0).map(|c| c - 1).collect();
        entries.sort_unstable();
        let mut expected = from_cols[i].clone();
        expected.sort_unstable();
        if entries.len() != d || entries != expected {
            return Err(Error::Parse {
                location: format!("line {l}"),
                message: format!("row {} disagrees with the column section", i + 1),
            });
        }
        rows.push(entries);
    }
    SparseParityCheckMatrix::from_rows(n, rows, Vec::new())
}
