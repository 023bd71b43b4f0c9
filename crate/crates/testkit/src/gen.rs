//! Random instances for property checks.

use rand::seq::SliceRandom;
use rand::Rng;
use tbp_core::protograph::{fixed_nodes_connected, OccurrenceAssignment, Protomatrix, TypeDescription};

/// A valid type description with `1..=max_s` optimizable check types, each
/// paired one-to-one with an optimizable variable type, `k in 1..=2` fixed
/// check types and `l > k` fixed variable types. With `puncture`, some
/// draws puncture one fixed variable type.
pub fn random_type_description(rng: &mut impl Rng, max_s: usize, puncture: bool) -> TypeDescription {
    loop {
        let k = rng.random_range(1..=2usize);
        let l = rng.random_range(k + 1..=k + 2);
        let s = rng.random_range(1..=max_s);
        let (kk, ll) = (k + s, l + s);
        let mut m = vec![vec![0u32; ll]; kk];
        for row in m.iter_mut().take(k) {
            for (j, x) in row.iter_mut().enumerate() {
                *x = if j < l { rng.random_range(0..=3) } else { rng.random_range(0..=2) };
            }
        }
        let mut partner: Vec<usize> = (l..ll).collect();
        partner.shuffle(rng);
        let mut pairing = Vec::new();
        for (o, &vn) in partner.iter().enumerate() {
            let i = k + o;
            for x in m[i].iter_mut().take(l) {
                *x = rng.random_range(0..=2);
            }
            m[i][vn] = rng.random_range(1..=2);
            pairing.push((i, vn));
        }
        let punctured = if puncture && rng.random_bool(0.3) { vec![rng.random_range(0..l)] } else { vec![] };
        if let Ok(td) = TypeDescription::new(k, l, m, punctured, pairing) {
            return td;
        }
    }
}

/// A random split of `h in 1..=max_h` over the optimizable check types that
/// leaves every fixed node connected; `None` after repeated failures.
pub fn random_assignment(rng: &mut impl Rng, td: &TypeDescription, max_h: u32) -> Option<OccurrenceAssignment> {
    let s = td.optimizable_check_types();
    for _ in 0..100 {
        let h = rng.random_range(1..=max_h);
        let mut counts = vec![0u32; s];
        for _ in 0..h {
            counts[rng.random_range(0..s)] += 1;
        }
        if let Ok(a) = OccurrenceAssignment::from_check_counts(td, &counts) {
            if fixed_nodes_connected(td, &a) {
                return Some(a);
            }
        }
    }
    None
}

/// A sparse protomatrix (`m <= 3` rows, `m < n <= 6` columns, entries in
/// `{0, 1, 2}`, no empty row or column) and a lifting factor `q in 24..=100`.
/// The density keeps a 4-cycle-free lift within reach of the repair pass.
pub fn random_lifting_instance(rng: &mut impl Rng) -> (Protomatrix, usize) {
    loop {
        let m = rng.random_range(1..=3usize);
        let n = rng.random_range(m + 1..=6usize);
        let rows: Vec<Vec<u32>> = (0..m)
            .map(|_| {
                (0..n)
                    .map(|_| match rng.random_range(0..10) {
                        0..=3 => 0,
                        4..=8 => 1,
                        _ => 2,
                    })
                    .collect()
            })
            .collect();
        let row_ok = rows.iter().all(|r| r.iter().any(|&x| x > 0));
        let col_ok = (0..n).all(|j| rows.iter().any(|r| r[j] > 0));
        if !(row_ok && col_ok) {
            continue;
        }
        let q = rng.random_range(24..=100usize);
        return (Protomatrix::new(rows, vec![], 2).expect("valid by construction"), q);
    }
}
