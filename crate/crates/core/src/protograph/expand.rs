use super::protomatrix::{Protomatrix, DEFAULT_MAX_ENTRY};
use super::types::{OccurrenceAssignment, TypeDescription};
use crate::error::{Error, Result};

/// Index map from expanded rows/columns back to node types.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionLayout {
    /// Check node type of every protomatrix row.
    pub row_types: Vec<usize>,
    /// Occurrence index of every row within its type.
    pub row_occurrence: Vec<usize>,
    /// Variable node type of every protomatrix column.
    pub col_types: Vec<usize>,
    pub col_occurrence: Vec<usize>,
}

impl ExpansionLayout {
    pub fn new(td: &TypeDescription, a: &OccurrenceAssignment) -> Self {
        let mut layout = ExpansionLayout {
            row_types: Vec::new(),
            row_occurrence: Vec::new(),
            col_types: Vec::new(),
            col_occurrence: Vec::new(),
        };
        for (i, &ci) in a.c.iter().enumerate() {
            for r in 0..ci as usize {
                layout.row_types.push(i);
                layout.row_occurrence.push(r);
            }
        }
        for (j, &vj) in a.v.iter().enumerate() {
            for r in 0..vj as usize {
                layout.col_types.push(j);
                layout.col_occurrence.push(r);
            }
        }
        debug_assert_eq!(layout.row_types.len(), a.expanded_dims(td).0);
        layout
    }
}

/// Expands a type description into the protomatrix it describes.
///
/// Rows list the fixed check types first, then each optimizable check type
/// repeated `c_i` times; columns follow the same order with `v_j`. The r-th
/// occurrence of an optimizable check type connects only to the r-th
/// occurrence of each paired variable type, while fixed nodes connect to
/// every occurrence of an optimizable neighbour type.
pub fn expand_type_description(td: &TypeDescription, a: &OccurrenceAssignment) -> Result<Protomatrix> {
    a.validate(td)?;
    let layout = ExpansionLayout::new(td, a);
    let (m, n) = (layout.row_types.len(), layout.col_types.len());
    let mut entries = vec![0u32; m * n];
    for (r, (&ti, &oi)) in layout.row_types.iter().zip(&layout.row_occurrence).enumerate() {
        for (col, (&tj, &oj)) in layout.col_types.iter().zip(&layout.col_occurrence).enumerate() {
            let t = td.get(ti, tj);
            if t == 0 {
                continue;
            }
            let connected = td.is_fixed_check(ti) || td.is_fixed_var(tj) || oi == oj;
            if connected {
                entries[r * n + col] = t;
            }
        }
    }

    for r in 0..td.fixed_check_types() {
        if entries[r * n..(r + 1) * n].iter().all(|&b| b == 0) {
            return Err(Error::validation(
                "occurrence assignment",
                format!("fixed check node type {r} ends with degree 0"),
            ));
        }
    }
    for col in 0..td.fixed_var_types() {
        if (0..m).all(|r| entries[r * n + col] == 0) {
            return Err(Error::validation(
                "occurrence assignment",
                format!("fixed variable node type {col} ends with degree 0"),
            ));
        }
    }

    let punctured = layout
        .col_types
        .iter()
        .enumerate()
        .filter(|(_, &tj)| td.is_punctured(tj))
        .map(|(col, _)| col)
        .collect();
    let cap = DEFAULT_MAX_ENTRY.max(td.largest_entry());
    Protomatrix::from_parts(m, n, entries, punctured, cap)
}

/// Checks whether every fixed node keeps a nonzero degree under `a`
/// without building the protomatrix.
pub fn fixed_nodes_connected(td: &TypeDescription, a: &OccurrenceAssignment) -> bool {
    let fixed_rows_ok = (0..td.fixed_check_types()).all(|i| {
        (0..td.var_types()).any(|j| td.check_side_multiplicity(a, i, j) > 0)
    });
    let fixed_cols_ok = (0..td.fixed_var_types()).all(|j| {
        (0..td.check_types()).any(|i| td.var_side_multiplicity(a, i, j) > 0)
    });
    fixed_rows_ok && fixed_cols_ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protograph::types::tbp_design_rate;

    fn degree_audit(td: &TypeDescription, a: &OccurrenceAssignment, b: &Protomatrix) {
        let layout = ExpansionLayout::new(td, a);
        for (r, &ti) in layout.row_types.iter().enumerate() {
            if !td.is_fixed_check(ti) {
                let want: u32 = td.row(ti).iter().sum();
                assert_eq!(b.row_degree(r), want, "row {r}");
            }
        }
        for (col, &tj) in layout.col_types.iter().enumerate() {
            if !td.is_fixed_var(tj) {
                let want: u32 = (0..td.check_types()).map(|i| td.get(i, tj)).sum();
                assert_eq!(b.col_degree(col), want, "col {col}");
            }
        }
    }

    #[test]
    fn two_type_hand_expansion() {
        let td = TypeDescription::new(1, 2, vec![vec![2, 1, 0], vec![1, 1, 1]], vec![], vec![(1, 2)]).unwrap();
        let a = OccurrenceAssignment::from_check_counts(&td, &[3]).unwrap();
        let b = expand_type_description(&td, &a).unwrap();
        let want = vec![
            vec![2, 1, 0, 0, 0],
            vec![1, 1, 1, 0, 0],
            vec![1, 1, 0, 1, 0],
            vec![1, 1, 0, 0, 1],
        ];
        assert_eq!(b, Protomatrix::new(want, vec![], DEFAULT_MAX_ENTRY).unwrap());
        degree_audit(&td, &a, &b);
        assert_eq!(b.design_rate(), tbp_design_rate(&td, &a).unwrap());
    }

    #[test]
    fn unit_occurrences_reproduce_the_matrix() {
        let rows = vec![vec![3, 2, 0, 0], vec![2, 1, 1, 0], vec![1, 0, 0, 1]];
        let td = TypeDescription::new(1, 2, rows.clone(), vec![], vec![(1, 2), (2, 3)]).unwrap();
        let a = OccurrenceAssignment::from_check_counts(&td, &[1, 1]).unwrap();
        let b = expand_type_description(&td, &a).unwrap();
        assert_eq!(b, Protomatrix::new(rows, vec![], DEFAULT_MAX_ENTRY).unwrap());
    }

    #[test]
    fn zero_occurrence_drops_type() {
        let td = TypeDescription::new(1, 2, vec![vec![3, 2, 0, 0], vec![2, 1, 1, 0], vec![1, 0, 0, 1]], vec![], vec![(1, 2), (2, 3)]).unwrap();
        let a = OccurrenceAssignment::from_check_counts(&td, &[0, 2]).unwrap();
        let b = expand_type_description(&td, &a).unwrap();
        assert_eq!((b.rows(), b.cols()), (3, 4));
        degree_audit(&td, &a, &b);
    }

    #[test]
    fn fixed_node_left_without_edges_is_rejected() {
        // fixed variable type 1 is only reached through the optimizable check type
        let td = TypeDescription::new(1, 2, vec![vec![1, 0, 0], vec![1, 1, 1]], vec![], vec![(1, 2)]).unwrap();
        let a = OccurrenceAssignment::from_check_counts(&td, &[0]).unwrap();
        assert!(!fixed_nodes_connected(&td, &a));
        assert!(expand_type_description(&td, &a).is_err());
    }

    #[test]
    fn fixed_check_reaches_every_occurrence() {
        let td = TypeDescription::new(1, 2, vec![vec![1, 1, 1], vec![1, 0, 1]], vec![], vec![(1, 2)]).unwrap();
        let a = OccurrenceAssignment::from_check_counts(&td, &[2]).unwrap();
        let b = expand_type_description(&td, &a).unwrap();
        assert_eq!(b.row(0), &[1, 1, 1, 1]);
        assert_eq!(b.row(1), &[1, 0, 1, 0]);
        assert_eq!(b.row(2), &[1, 0, 0, 1]);
    }

    #[test]
    fn punctured_types_map_to_all_occurrences() {
        let td = TypeDescription::new(1, 2, vec![vec![2, 1, 0], vec![1, 1, 1]], vec![0, 2], vec![(1, 2)]).unwrap();
        let a = OccurrenceAssignment::from_check_counts(&td, &[3]).unwrap();
        let b = expand_type_description(&td, &a).unwrap();
        assert_eq!(b.punctured(), &[0, 2, 3, 4]);
    }
}
