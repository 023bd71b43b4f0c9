use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::protograph::{composition_count, OccurrenceAssignment, TypeDescription};

/// Default cap on the number of enumerated assignments.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 100_000;

/// Weak compositions of `h` into `parts` parts in ascending lexicographic
/// order, from `(0, .., 0, h)` to `(h, 0, .., 0)`.
#[derive(Debug, Clone)]
pub struct Compositions {
    current: Option<Vec<u32>>,
}

impl Compositions {
    pub fn new(parts: usize, h: u32) -> Self {
        let current = match parts {
            0 if h == 0 => Some(Vec::new()),
            0 => None,
            _ => {
                let mut first = vec![0; parts];
                first[parts - 1] = h;
                Some(first)
            }
        };
        Self { current }
    }
}

impl Iterator for Compositions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.current.take()?;
        let n = out.len();
        let mut next = out.clone();
        let mut tail = 0u32;
        for j in (0..n.saturating_sub(1)).rev() {
            tail += next[j + 1];
            if tail > 0 {
                next[j] += 1;
                for x in next[j + 1..].iter_mut() {
                    *x = 0;
                }
                next[n - 1] = tail - 1;
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

/// Streams every occurrence assignment of `td` with `h` optimizable check
/// occurrences, i.e. every split of `h` over the `S` optimizable check types
/// that is consistent with the pairing. There are
/// `composition_count(S, h) = C(S + h - 1, S - 1)` candidate splits.
pub fn enumerate(
    td: &TypeDescription,
    h: u32,
    limit: u64,
) -> Result<impl Iterator<Item = OccurrenceAssignment> + '_> {
    let s = td.optimizable_check_types();
    let size = composition_count(s as u64, h as u64);
    if size > BigUint::from(limit) {
        return Err(Error::SpaceTooLarge {
            size: size.to_string(),
            limit,
        });
    }
    Ok(Compositions::new(s, h).filter_map(move |counts| OccurrenceAssignment::from_check_counts(td, &counts).ok()))
}
