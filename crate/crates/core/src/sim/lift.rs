use rand::seq::{index, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::pcm::{EdgeUnit, Provenance, SparseParityCheckMatrix};
use crate::error::{Error, Result};
use crate::protograph::Protomatrix;

/// Lifts `b` by a factor `q` with random permutation blocks.
///
/// A single edge becomes a uniformly random permutation. The `t > 1` units
/// of a parallel entry are `tau((sigma(r) + s_k) mod q)` with random
/// `sigma`, `tau` and distinct shifts `s_k`: each unit is still a uniform
/// permutation, and no two units share a `(row, col)` pair.
pub fn lift_protomatrix(b: &Protomatrix, q: usize, seed: u64) -> Result<SparseParityCheckMatrix> {
    if q == 0 {
        return Err(Error::Lifting("lifting factor must be positive".into()));
    }
    if (b.largest_entry() as usize) > q {
        return Err(Error::Lifting(format!(
            "lifting factor {q} is smaller than the largest entry {}",
            b.largest_entry()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut units = Vec::new();
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            let t = b.get(i, j) as usize;
            match t {
                0 => {}
                1 => {
                    let mut perm: Vec<u32> = (0..q as u32).collect();
                    perm.shuffle(&mut rng);
                    units.push(EdgeUnit { block_row: i, block_col: j, perm });
                }
                _ => {
                    let mut sigma: Vec<usize> = (0..q).collect();
                    let mut tau: Vec<u32> = (0..q as u32).collect();
                    sigma.shuffle(&mut rng);
                    tau.shuffle(&mut rng);
                    for s in index::sample(&mut rng, q, t) {
                        let perm = (0..q).map(|r| tau[(sigma[r] + s) % q]).collect();
                        units.push(EdgeUnit { block_row: i, block_col: j, perm });
                    }
                }
            }
        }
    }
    SparseParityCheckMatrix::from_units(
        q,
        Provenance {
            protomatrix: b.clone(),
            lifting_factor: q,
            seed,
            units,
            repair: None,
        },
    )
}
