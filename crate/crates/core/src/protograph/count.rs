//! Sizes of protograph search spaces.
//!
//! Two counts appear side by side. [`search_space_size`] is the closed form
//! `C(S + h - 1, h - 1)` used to compare type-based search against
//! entry-wise protomatrix search. [`composition_count`] is `C(S + h - 1, S - 1)`,
//! the number of ways to split exactly `h` optimizable check occurrences over
//! `S` types, which is what the enumerator in [`crate::optimize`] yields.
//! They are related by `search_space_size(S, h) = composition_count(S + 1, h - 1)`,
//! i.e. the closed form also counts splits where up to one occurrence is
//! left unassigned.

use num_bigint::BigUint;
use num_traits::{One, Zero};

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(S + h - 1, h - 1)` with `S = K - k` optimizable check node types.
pub fn search_space_size(optimizable_types: u64, h: u64) -> BigUint {
    assert!(optimizable_types >= 1 && h >= 1, "S and h must be positive");
    binomial(optimizable_types + h - 1, h - 1)
}

/// Weak compositions of `h` into `S` parts, `C(S + h - 1, S - 1)`.
pub fn composition_count(optimizable_types: u64, h: u64) -> BigUint {
    if optimizable_types == 0 {
        return if h == 0 { BigUint::one() } else { BigUint::zero() };
    }
    binomial(optimizable_types + h - 1, optimizable_types - 1)
}

/// `(1 + e_p)^(m n)`, the entry-wise protomatrix search space.
pub fn conventional_space_size(max_entry: u64, rows: u64, cols: u64) -> BigUint {
    let exp = u32::try_from(rows * cols).expect("exponent fits in u32");
    BigUint::from(1 + max_entry).pow(exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reported_counts() {
        assert_eq!(search_space_size(6, 8), BigUint::from(1716u32));
        assert_eq!(search_space_size(1, 1), BigUint::one());
        assert_eq!(conventional_space_size(4, 8, 2), BigUint::from(152_587_890_625u64));
    }

    #[test]
    fn closed_form_relation() {
        for s in 1..8 {
            for h in 1..12 {
                assert_eq!(search_space_size(s, h), composition_count(s + 1, h - 1));
            }
        }
        assert_eq!(composition_count(3, 4), BigUint::from(15u32));
    }

    #[test]
    fn large_values_are_exact() {
        // C(150, 49) for S = 101, h = 50
        let big = search_space_size(101, 50);
        assert!(big.bits() > 128);
        assert_eq!(big, binomial(150, 101));
    }
}
