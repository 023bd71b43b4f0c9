use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::types::TypeDescription;
use crate::error::{Error, Result};

/// Lifting factor used for expanded type descriptions unless overridden.
pub const DEFAULT_TYPE_LIFT: usize = 4;

/// Lifts a type description by `q_tilde` into a binary expanded description.
///
/// Type `i` becomes sub-types `i * q_tilde + r` for `r < q_tilde`, so fixed
/// types stay in front. Entry `t` becomes a `q_tilde x q_tilde` block that is
/// the sum of `t` disjoint permutation matrices: a band of `t` cyclic
/// diagonals conjugated by two random permutations. Sub-types inherit the
/// fixed/optimizable split and puncturing of their parent.
pub fn lift_type_description(td: &TypeDescription, q_tilde: usize, seed: u64) -> Result<TypeDescription> {
    if q_tilde == 0 {
        return Err(Error::Lifting("q_tilde must be at least 1".into()));
    }
    if q_tilde == 1 {
        return Ok(td.clone());
    }
    if td.largest_entry() as usize > q_tilde {
        return Err(Error::Lifting(format!(
            "entry {} cannot be split into binary {q_tilde}x{q_tilde} permutation blocks",
            td.largest_entry()
        )));
    }

    let (kk, ll) = (td.check_types() * q_tilde, td.var_types() * q_tilde);
    let mut entries = vec![0u32; kk * ll];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut row_perm: Vec<usize> = (0..q_tilde).collect();
    let mut col_perm: Vec<usize> = (0..q_tilde).collect();
    for i in 0..td.check_types() {
        for j in 0..td.var_types() {
            let t = td.get(i, j) as usize;
            if t == 0 {
                continue;
            }
            row_perm.shuffle(&mut rng);
            col_perm.shuffle(&mut rng);
            for r in 0..q_tilde {
                for s in 0..t {
                    let c = col_perm[(row_perm[r] + s) % q_tilde];
                    entries[(i * q_tilde + r) * ll + j * q_tilde + c] = 1;
                }
            }
        }
    }

    let punctured = td
        .punctured_var_types()
        .iter()
        .flat_map(|&j| (0..q_tilde).map(move |r| j * q_tilde + r))
        .collect();
    let (k, l) = (td.fixed_check_types() * q_tilde, td.fixed_var_types() * q_tilde);
    let mut pairing = Vec::new();
    for i in k..kk {
        for j in l..ll {
            if entries[i * ll + j] != 0 {
                pairing.push((i, j));
            }
        }
    }
    TypeDescription::from_parts(kk, k, ll, l, entries, punctured, pairing)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> TypeDescription {
        TypeDescription::new(1, 2, vec![vec![3, 2, 0], vec![2, 1, 1]], vec![1], vec![(1, 2)]).unwrap()
    }

    #[test]
    fn identity_lift() {
        let td = sample();
        assert_eq!(lift_type_description(&td, 1, 7).unwrap(), td);
    }

    #[test]
    fn block_sums_match_entries() {
        let td = sample();
        let q = 4;
        let lifted = lift_type_description(&td, q, 11).unwrap();
        assert_eq!(lifted.largest_entry(), 1);
        for i in 0..td.check_types() {
            for j in 0..td.var_types() {
                let t = td.get(i, j);
                for r in 0..q {
                    let row: u32 = (0..q).map(|c| lifted.get(i * q + r, j * q + c)).sum();
                    let col: u32 = (0..q).map(|c| lifted.get(i * q + c, j * q + r)).sum();
                    assert_eq!((row, col), (t, t));
                }
            }
        }
        assert_eq!(lifted.punctured_var_types(), &[4, 5, 6, 7]);
        assert_eq!((lifted.fixed_check_types(), lifted.fixed_var_types()), (4, 8));
    }

    #[test]
    fn rejects_entry_above_lift() {
        assert!(lift_type_description(&sample(), 2, 0).is_err());
    }

    #[test]
    fn deterministic_in_seed() {
        let td = sample();
        assert_eq!(
            lift_type_description(&td, 4, 5).unwrap(),
            lift_type_description(&td, 4, 5).unwrap()
        );
    }
}
