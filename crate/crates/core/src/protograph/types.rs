use num_rational::Rational64;

use crate::error::{Error, Result};

/// Type description `T` of a type-based protograph.
///
/// Check node types `0..k` and variable node types `0..l` are fixed (they
/// occur exactly once); the remaining types are optimizable and occur as
/// often as an [`OccurrenceAssignment`] says. Entry `(i, j)` is the number of
/// edges between one check node of type `i` and one variable node of type
/// `j`. The pairing lists which optimizable variable node types each
/// optimizable check node type connects to; paired types share their
/// occurrence count.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TypeDescription {
    check_types: usize,
    fixed_check_types: usize,
    var_types: usize,
    fixed_var_types: usize,
    entries: Vec<u32>,
    punctured_var_types: Vec<usize>,
    pairing: Vec<(usize, usize)>,
}

impl TypeDescription {
    pub fn new(
        fixed_check_types: usize,
        fixed_var_types: usize,
        matrix: Vec<Vec<u32>>,
        punctured_var_types: Vec<usize>,
        pairing: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let check_types = matrix.len();
        let var_types = matrix.first().map_or(0, Vec::len);
        if let Some(i) = matrix.iter().position(|r| r.len() != var_types) {
            return Err(Error::validation(
                "type description",
                format!("row {i} has a different length than row 0"),
            ));
        }
        Self::from_parts(
            check_types,
            fixed_check_types,
            var_types,
            fixed_var_types,
            matrix.into_iter().flatten().collect(),
            punctured_var_types,
            pairing,
        )
    }

    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        check_types: usize,
        fixed_check_types: usize,
        var_types: usize,
        fixed_var_types: usize,
        entries: Vec<u32>,
        mut punctured_var_types: Vec<usize>,
        mut pairing: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let invalid = |msg: String| Err(Error::validation("type description", msg));
        if check_types == 0 || var_types == 0 {
            return invalid("K and L must be positive".into());
        }
        if fixed_check_types > check_types {
            return invalid(format!("k = {fixed_check_types} exceeds K = {check_types}"));
        }
        if fixed_var_types > var_types {
            return invalid(format!("l = {fixed_var_types} exceeds L = {var_types}"));
        }
        if entries.len() != check_types * var_types {
            return invalid(format!(
                "matrix has {} entries, expected K x L = {}",
                entries.len(),
                check_types * var_types
            ));
        }
        let at = |i: usize, j: usize| entries[i * var_types + j];
        for i in 0..check_types {
            if (0..var_types).all(|j| at(i, j) == 0) {
                return invalid(format!("check node type {i} has no edges"));
            }
        }
        for j in 0..var_types {
            if (0..check_types).all(|i| at(i, j) == 0) {
                return invalid(format!("variable node type {j} has no edges"));
            }
        }

        let n = punctured_var_types.len();
        punctured_var_types.sort_unstable();
        punctured_var_types.dedup();
        if punctured_var_types.len() != n {
            return invalid("punctured variable node types must be distinct".into());
        }
        if let Some(&p) = punctured_var_types.iter().find(|&&p| p >= var_types) {
            return invalid(format!("punctured type {p} out of range for L = {var_types}"));
        }

        let n = pairing.len();
        pairing.sort_unstable();
        pairing.dedup();
        if pairing.len() != n {
            return invalid("pairing lists a pair twice".into());
        }
        for &(cn, vn) in &pairing {
            if cn < fixed_check_types || cn >= check_types {
                return invalid(format!("pairing check type {cn} is not an optimizable type"));
            }
            if vn < fixed_var_types || vn >= var_types {
                return invalid(format!("pairing variable type {vn} is not an optimizable type"));
            }
        }
        let mut expected = Vec::new();
        for i in fixed_check_types..check_types {
            for j in fixed_var_types..var_types {
                if at(i, j) != 0 {
                    expected.push((i, j));
                }
            }
        }
        if expected != pairing {
            return invalid(
                "pairing must list exactly the nonzero optimizable-to-optimizable entries".into(),
            );
        }
        for i in fixed_check_types..check_types {
            if !pairing.iter().any(|&(cn, _)| cn == i) {
                return invalid(format!(
                    "optimizable check node type {i} is not paired with an optimizable variable node type"
                ));
            }
        }
        for j in fixed_var_types..var_types {
            if !pairing.iter().any(|&(_, vn)| vn == j) {
                return invalid(format!(
                    "optimizable variable node type {j} is not paired with an optimizable check node type"
                ));
            }
        }

        Ok(Self {
            check_types,
            fixed_check_types,
            var_types,
            fixed_var_types,
            entries,
            punctured_var_types,
            pairing,
        })
    }

    /// `K`
    pub fn check_types(&self) -> usize {
        self.check_types
    }

    /// `k`
    pub fn fixed_check_types(&self) -> usize {
        self.fixed_check_types
    }

    /// `L`
    pub fn var_types(&self) -> usize {
        self.var_types
    }

    /// `l`
    pub fn fixed_var_types(&self) -> usize {
        self.fixed_var_types
    }

    /// Number of optimizable check node types, `S = K - k`.
    pub fn optimizable_check_types(&self) -> usize {
        self.check_types - self.fixed_check_types
    }

    pub fn get(&self, check_type: usize, var_type: usize) -> u32 {
        self.entries[check_type * self.var_types + var_type]
    }

    pub fn row(&self, check_type: usize) -> &[u32] {
        &self.entries[check_type * self.var_types..(check_type + 1) * self.var_types]
    }

    pub fn is_fixed_check(&self, check_type: usize) -> bool {
        check_type < self.fixed_check_types
    }

    pub fn is_fixed_var(&self, var_type: usize) -> bool {
        var_type < self.fixed_var_types
    }

    pub fn punctured_var_types(&self) -> &[usize] {
        &self.punctured_var_types
    }

    pub fn is_punctured(&self, var_type: usize) -> bool {
        self.punctured_var_types.binary_search(&var_type).is_ok()
    }

    /// Sorted `(check type, variable type)` pairs.
    pub fn pairing(&self) -> &[(usize, usize)] {
        &self.pairing
    }

    pub fn largest_entry(&self) -> u32 {
        self.entries.iter().copied().max().unwrap_or(0)
    }

    /// Number of edges one node of the check type has towards *all* nodes of
    /// the variable type under the given occurrences. A fixed node sees every
    /// occurrence of an optimizable neighbour type; every other pairing sees
    /// exactly one neighbour node.
    pub(crate) fn check_side_multiplicity(&self, a: &OccurrenceAssignment, i: usize, j: usize) -> u64 {
        let t = self.get(i, j) as u64;
        if self.is_fixed_check(i) && !self.is_fixed_var(j) {
            t * a.v[j] as u64
        } else {
            t
        }
    }

    /// Counterpart of [`Self::check_side_multiplicity`] seen from the variable node.
    pub(crate) fn var_side_multiplicity(&self, a: &OccurrenceAssignment, i: usize, j: usize) -> u64 {
        let t = self.get(i, j) as u64;
        if self.is_fixed_var(j) && !self.is_fixed_check(i) {
            t * a.c[i] as u64
        } else {
            t
        }
    }
}

/// Occurrence vectors `c` (per check node type) and `v` (per variable node type).
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct OccurrenceAssignment {
    pub c: Vec<u32>,
    pub v: Vec<u32>,
}

impl OccurrenceAssignment {
    /// Builds the full assignment from the optimizable check node counts;
    /// fixed types get one occurrence and `v` is induced through the pairing.
    pub fn from_check_counts(td: &TypeDescription, counts: &[u32]) -> Result<Self> {
        let s = td.optimizable_check_types();
        if counts.len() != s {
            return Err(Error::validation(
                "occurrence assignment",
                format!("expected {s} optimizable check counts, got {}", counts.len()),
            ));
        }
        let mut c = vec![1; td.fixed_check_types()];
        c.extend_from_slice(counts);
        let mut v: Vec<Option<u32>> = vec![None; td.var_types()];
        for slot in v.iter_mut().take(td.fixed_var_types()) {
            *slot = Some(1);
        }
        for &(cn, vn) in td.pairing() {
            match v[vn] {
                None => v[vn] = Some(c[cn]),
                Some(existing) if existing != c[cn] => {
                    return Err(Error::validation(
                        "occurrence assignment",
                        format!("check types paired with variable type {vn} disagree on its occurrence"),
                    ))
                }
                Some(_) => {}
            }
        }
        let v = v.into_iter().map(|x| x.unwrap_or(0)).collect();
        let a = Self { c, v };
        a.validate(td)?;
        Ok(a)
    }

    /// `h`, the total occurrences of optimizable check node types.
    pub fn h(&self, td: &TypeDescription) -> u64 {
        self.c[td.fixed_check_types()..].iter().map(|&x| x as u64).sum()
    }

    /// Total occurrences of optimizable variable node types.
    pub fn optimizable_var_occurrences(&self, td: &TypeDescription) -> u64 {
        self.v[td.fixed_var_types()..].iter().map(|&x| x as u64).sum()
    }

    /// The optimizable part of `c`.
    pub fn check_counts<'a>(&'a self, td: &TypeDescription) -> &'a [u32] {
        &self.c[td.fixed_check_types()..]
    }

    pub fn validate(&self, td: &TypeDescription) -> Result<()> {
        let invalid = |msg: String| Err(Error::validation("occurrence assignment", msg));
        if self.c.len() != td.check_types() || self.v.len() != td.var_types() {
            return invalid(format!(
                "c and v must have lengths K = {} and L = {}",
                td.check_types(),
                td.var_types()
            ));
        }
        if self.c[..td.fixed_check_types()].iter().any(|&x| x != 1) {
            return invalid("fixed check node types must occur exactly once".into());
        }
        if self.v[..td.fixed_var_types()].iter().any(|&x| x != 1) {
            return invalid("fixed variable node types must occur exactly once".into());
        }
        for &(cn, vn) in td.pairing() {
            if self.c[cn] != self.v[vn] {
                return invalid(format!("c_{cn} must equal v_{vn} for paired types"));
            }
        }
        if self.h(td) != self.optimizable_var_occurrences(td) {
            return invalid("h must equal the total optimizable variable node occurrences".into());
        }
        Ok(())
    }

    /// Rows `k + h` and columns `l + sum(v_opt)` of the expanded protomatrix.
    pub fn expanded_dims(&self, td: &TypeDescription) -> (usize, usize) {
        (
            td.fixed_check_types() + self.h(td) as usize,
            td.fixed_var_types() + self.optimizable_var_occurrences(td) as usize,
        )
    }

    /// Number of punctured columns in the expanded protomatrix.
    pub fn punctured_columns(&self, td: &TypeDescription) -> usize {
        td.punctured_var_types()
            .iter()
            .map(|&j| self.v[j] as usize)
            .sum()
    }

    /// Design rate of the expansion, honouring punctured types.
    pub fn expanded_rate(&self, td: &TypeDescription) -> Rational64 {
        let (m, n) = self.expanded_dims(td);
        super::protomatrix::design_rate(m, n, self.punctured_columns(td))
    }
}

/// `(l - k) / (l + h)`, exact.
pub fn tbp_design_rate(td: &TypeDescription, a: &OccurrenceAssignment) -> Result<Rational64> {
    let (k, l) = (td.fixed_check_types() as i64, td.fixed_var_types() as i64);
    if l <= k {
        return Err(Error::validation(
            "type description",
            format!("l = {l} must exceed k = {k} for a positive rate"),
        ));
    }
    a.validate(td)?;
    Ok(Rational64::new(l - k, l + a.h(td) as i64))
}
