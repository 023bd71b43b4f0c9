use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use parking_lot::Mutex;
use rayon::prelude::*;

use crate::error::Error;
use crate::pexit::{threshold_on_graph, PexitConfig, PexitGraph, Threshold, ThresholdSearch};
use crate::protograph::{fixed_nodes_connected, OccurrenceAssignment, TypeDescription};

/// Threshold-based fitness of one candidate; lower is better.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fitness {
    /// `+inf` for invalid or undecodable candidates.
    pub threshold_db: f64,
    /// PEXIT iterations at the threshold point, the first tie-break.
    pub iterations: usize,
    /// False when the counts do not form a usable assignment.
    pub valid: bool,
    pub threshold: Option<Threshold>,
}

impl Fitness {
    fn invalid() -> Self {
        Self {
            threshold_db: f64::INFINITY,
            iterations: usize::MAX,
            valid: false,
            threshold: None,
        }
    }

    fn undecodable() -> Self {
        Self {
            valid: true,
            ..Self::invalid()
        }
    }

    /// Orders by threshold, then iterations.
    pub fn cmp_score(&self, other: &Self) -> Ordering {
        self.threshold_db
            .total_cmp(&other.threshold_db)
            .then(self.iterations.cmp(&other.iterations))
    }
}

/// Memoizing threshold evaluator for one type description.
///
/// Results are keyed by the optimizable check counts. The cache can be
/// shared by several optimizer runs over the same description and PEXIT
/// settings.
pub struct FitnessEvaluator<'a> {
    td: &'a TypeDescription,
    search: ThresholdSearch,
    pexit: PexitConfig,
    cache: Mutex<HashMap<Vec<u32>, Fitness>>,
    bisections: AtomicUsize,
    hits: AtomicUsize,
}

/// Counters of one batch evaluation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BatchStats {
    pub evaluations: usize,
    pub cache_hits: usize,
}

impl<'a> FitnessEvaluator<'a> {
    pub fn new(td: &'a TypeDescription, search: ThresholdSearch, pexit: PexitConfig) -> Self {
        Self {
            td,
            search,
            pexit,
            cache: Mutex::new(HashMap::new()),
            bisections: AtomicUsize::new(0),
            hits: AtomicUsize::new(0),
        }
    }

    pub fn type_description(&self) -> &TypeDescription {
        self.td
    }

    /// Threshold bisections actually executed so far.
    pub fn bisections(&self) -> usize {
        self.bisections.load(AtomicOrdering::Relaxed)
    }

    pub fn cache_hits(&self) -> usize {
        self.hits.load(AtomicOrdering::Relaxed)
    }

    /// Fitness of the given optimizable check counts.
    pub fn evaluate(&self, counts: &[u32]) -> Fitness {
        if let Some(f) = self.cache.lock().get(counts) {
            self.hits.fetch_add(1, AtomicOrdering::Relaxed);
            return *f;
        }
        let f = self.compute(counts);
        self.cache.lock().insert(counts.to_vec(), f);
        f
    }

    /// Evaluates a whole batch. Distinct uncached keys are computed once each,
    /// possibly in parallel; every other entry counts as a cache hit.
    pub fn evaluate_batch(&self, batch: &[Vec<u32>]) -> (Vec<Fitness>, BatchStats) {
        let missing: Vec<Vec<u32>> = {
            let cache = self.cache.lock();
            let mut seen = std::collections::HashSet::new();
            batch
                .iter()
                .filter(|c| !cache.contains_key(*c) && seen.insert((*c).clone()))
                .cloned()
                .collect()
        };
        let fresh: Vec<(Vec<u32>, Fitness)> = missing
            .into_par_iter()
            .map(|c| {
                let f = self.compute(&c);
                (c, f)
            })
            .collect();
        let stats = BatchStats {
            evaluations: fresh.len(),
            cache_hits: batch.len() - fresh.len(),
        };
        self.hits.fetch_add(stats.cache_hits, AtomicOrdering::Relaxed);
        let mut cache = self.cache.lock();
        for (c, f) in fresh {
            cache.insert(c, f);
        }
        let out = batch.iter().map(|c| cache[c]).collect();
        (out, stats)
    }

    fn compute(&self, counts: &[u32]) -> Fitness {
        let assignment = match OccurrenceAssignment::from_check_counts(self.td, counts) {
            Ok(a) => a,
            Err(_) => return Fitness::invalid(),
        };
        if !fixed_nodes_connected(self.td, &assignment) {
            return Fitness::invalid();
        }
        let (m, n) = assignment.expanded_dims(self.td);
        if n <= m || assignment.punctured_columns(self.td) >= n {
            return Fitness::invalid();
        }
        let graph = match PexitGraph::from_type_description(self.td, &assignment) {
            Ok(g) => g,
            Err(_) => return Fitness::invalid(),
        };
        self.bisections.fetch_add(1, AtomicOrdering::Relaxed);
        match threshold_on_graph(&graph, assignment.expanded_rate(self.td), &self.search, &self.pexit) {
            Ok(t) => Fitness {
                threshold_db: t.eb_n0_db_star,
                iterations: t.iterations_used,
                valid: true,
                threshold: Some(t),
            },
            Err(Error::Undecodable { .. }) => Fitness::undecodable(),
            Err(e) => {
                log::warn!("threshold search failed for {counts:?}: {e}");
                Fitness::invalid()
            }
        }
    }
}

/// Stand-alone fitness of one assignment, without a cache.
pub fn evaluate_fitness(
    td: &TypeDescription,
    assignment: &OccurrenceAssignment,
    search: &ThresholdSearch,
    pexit: &PexitConfig,
) -> Fitness {
    if assignment.validate(td).is_err() {
        return Fitness::invalid();
    }
    FitnessEvaluator::new(td, *search, *pexit).evaluate(assignment.check_counts(td))
}
