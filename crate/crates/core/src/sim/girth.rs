//! 4-cycle counting and removal by swaps inside permutation blocks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::lift::lift_protomatrix;
use super::pcm::{RepairReport, SparseParityCheckMatrix};
use crate::error::{Error, Result};
use crate::protograph::Protomatrix;

/// Default number of repair passes.
pub const DEFAULT_MAX_PASSES: usize = 200;

/// Number of 4-cycles, i.e. `sum over row pairs of C(shared columns, 2)`.
pub fn count_four_cycles(h: &SparseParityCheckMatrix) -> usize {
    let mut overlap = vec![0u32; h.rows()];
    let mut touched = Vec::new();
    let mut total = 0usize;
    for x in 0..h.rows() {
        for &c in h.row(x) {
            for &y in h.col(c) {
                if y > x {
                    if overlap[y] == 0 {
                        touched.push(y);
                    }
                    overlap[y] += 1;
                }
            }
        }
        for y in touched.drain(..) {
            let k = overlap[y] as usize;
            total += k * (k - 1) / 2;
            overlap[y] = 0;
        }
    }
    total
}

/// Row-column constraint: no two rows share more than one column.
pub fn is_four_cycle_free(h: &SparseParityCheckMatrix) -> bool {
    count_four_cycles(h) == 0
}

/// Mutable lifted graph: per row the `(col, unit)` pairs, per column the rows.
struct Work {
    q: usize,
    perms: Vec<Vec<u32>>,
    unit_block: Vec<(usize, usize)>,
    row_edges: Vec<Vec<(usize, usize)>>,
    col_rows: Vec<Vec<usize>>,
    overlap: Vec<u32>,
    touched: Vec<usize>,
}

impl Work {
    /// Rows sharing at least two columns with `x`, each with its overlap.
    fn heavy_partners(&mut self, x: usize) -> Vec<usize> {
        self.fill_overlap(x);
        let out = self.touched.iter().copied().filter(|&y| self.overlap[y] >= 2).collect();
        self.clear_overlap();
        out
    }

    fn fill_overlap(&mut self, x: usize) {
        for &(c, _) in &self.row_edges[x] {
            for &y in &self.col_rows[c] {
                if y != x {
                    if self.overlap[y] == 0 {
                        self.touched.push(y);
                    }
                    self.overlap[y] += 1;
                }
            }
        }
    }

    fn clear_overlap(&mut self) {
        for y in self.touched.drain(..) {
            self.overlap[y] = 0;
        }
    }

    /// 4-cycles through `x` or `y`.
    fn local_cycles(&mut self, x: usize, y: usize) -> usize {
        let mut total = 0;
        let mut shared = 0;
        for (row, other) in [(x, y), (y, x)] {
            self.fill_overlap(row);
            for &z in &self.touched {
                let k = self.overlap[z] as usize;
                total += k * (k.saturating_sub(1)) / 2;
            }
            shared = self.overlap[other] as usize;
            self.clear_overlap();
        }
        total - shared * shared.saturating_sub(1) / 2
    }

    fn has_edge(&self, row: usize, col: usize) -> bool {
        self.row_edges[row].iter().any(|&(c, _)| c == col)
    }

    fn move_edge(&mut self, row: usize, unit: usize, from: usize, to: usize) {
        let slot = self.row_edges[row]
            .iter_mut()
            .find(|e| e.0 == from && e.1 == unit)
            .expect("edge present");
        slot.0 = to;
        let rows = &mut self.col_rows[from];
        let at = rows.iter().position(|&r| r == row).expect("edge present");
        rows.swap_remove(at);
        self.col_rows[to].push(row);
    }

    /// Exchanges the targets of positions `r` and `s` in `unit`. Returns
    /// false, leaving everything untouched, if that would duplicate an edge.
    fn swap(&mut self, unit: usize, r: usize, s: usize) -> bool {
        let (bi, bj) = self.unit_block[unit];
        let (x, y) = (bi * self.q + r, bi * self.q + s);
        let (a, b) = (
            bj * self.q + self.perms[unit][r] as usize,
            bj * self.q + self.perms[unit][s] as usize,
        );
        if self.has_edge(x, b) || self.has_edge(y, a) {
            return false;
        }
        self.move_edge(x, unit, a, b);
        self.move_edge(y, unit, b, a);
        self.perms[unit].swap(r, s);
        true
    }
}

/// Removes 4-cycles from a lifted matrix by swapping targets inside the
/// permutation block of an offending edge.
///
/// Each pass visits every row that lies on a 4-cycle in random order, picks
/// one of its cycle edges and tries a random swap within that edge's block;
/// the swap is kept if the number of 4-cycles through the two touched rows
/// does not grow. Degrees and the block structure are preserved exactly.
pub fn remove_4cycles(
    h: &SparseParityCheckMatrix,
    seed: u64,
    max_passes: usize,
) -> Result<(SparseParityCheckMatrix, RepairReport)> {
    let prov = h.provenance().ok_or_else(|| {
        Error::validation("parity-check matrix", "4-cycle removal needs the lifting structure")
    })?;
    let q = prov.lifting_factor;
    let mut work = Work {
        q,
        perms: prov.units.iter().map(|u| u.perm.clone()).collect(),
        unit_block: prov.units.iter().map(|u| (u.block_row, u.block_col)).collect(),
        row_edges: vec![Vec::new(); h.rows()],
        col_rows: vec![Vec::new(); h.cols()],
        overlap: vec![0; h.rows()],
        touched: Vec::new(),
    };
    for (k, u) in prov.units.iter().enumerate() {
        for (r, &p) in u.perm.iter().enumerate() {
            let (row, col) = (u.block_row * q + r, u.block_col * q + p as usize);
            work.row_edges[row].push((col, k));
            work.col_rows[col].push(row);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = RepairReport { seed, passes: 0, swaps: 0 };
    let mut residual = count_four_cycles(h);
    let mut order: Vec<usize> = (0..h.rows()).collect();
    while residual > 0 && q > 1 {
        if report.passes >= max_passes {
            return Err(Error::GirthRepair {
                passes: report.passes,
                residual,
            });
        }
        report.passes += 1;
        order.shuffle(&mut rng);
        for &x in &order {
            let partners = work.heavy_partners(x);
            if partners.is_empty() {
                continue;
            }
            let y = partners[rng.random_range(0..partners.len())];
            let shared: Vec<(usize, usize)> = work.row_edges[x]
                .iter()
                .copied()
                .filter(|&(c, _)| work.has_edge(y, c))
                .collect();
            let (_, unit) = shared[rng.random_range(0..shared.len())];
            let r = x % q;
            let s = (r + rng.random_range(1..q)) % q;
            let other = work.unit_block[unit].0 * q + s;
            let before = work.local_cycles(x, other);
            if !work.swap(unit, r, s) {
                continue;
            }
            if work.local_cycles(x, other) > before {
                work.swap(unit, r, s);
            } else {
                report.swaps += 1;
            }
        }
        residual = count_cycles_in(&mut work);
    }
    if residual > 0 {
        return Err(Error::GirthRepair {
            passes: report.passes,
            residual,
        });
    }

    let mut out_prov = prov.clone();
    for (u, p) in out_prov.units.iter_mut().zip(work.perms) {
        u.perm = p;
    }
    out_prov.repair = Some(report);
    let mut out = SparseParityCheckMatrix::from_units(q, out_prov)?;
    if let Some(p) = out.provenance_mut() {
        p.repair = Some(report);
    }
    Ok((out, report))
}

fn count_cycles_in(work: &mut Work) -> usize {
    let mut total = 0;
    for x in 0..work.row_edges.len() {
        work.fill_overlap(x);
        for &y in &work.touched {
            if y > x {
                let k = work.overlap[y] as usize;
                total += k * (k - 1) / 2;
            }
        }
        work.clear_overlap();
    }
    total
}

/// Lifts and repairs, retrying with fresh seeds when repair gives up.
/// Attempt `k` uses seed `seed + k` for both steps.
pub fn construct_pcm(
    b: &Protomatrix,
    q: usize,
    seed: u64,
    max_passes: usize,
    retries: usize,
) -> Result<(SparseParityCheckMatrix, RepairReport)> {
    let mut last = None;
    for attempt in 0..=retries as u64 {
        let s = seed.wrapping_add(attempt);
        let lifted = lift_protomatrix(b, q, s)?;
        match remove_4cycles(&lifted, s, max_passes) {
            Ok(ok) => return Ok(ok),
            Err(e) => {
                log::debug!("4-cycle removal attempt {attempt} failed: {e}");
                last = Some(e);
            }
        }
    }
    Err(last.expect("at least one attempt"))
}
