//! DE/rand/1/bin over the occurrence counts of the optimizable check types.
//!
//! Individuals live in the continuous relaxation `R^S`; before evaluation
//! each trial vector is mapped onto the compositions of `h` by [`repair`],
//! which keeps the design rate fixed for every evaluated candidate. Accepted
//! trials keep their real-valued vector; snapping the population onto the
//! repaired counts collapses its diversity within a few generations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::fitness::{Fitness, FitnessEvaluator};
use super::repair::repair;
use crate::error::{Error, Result};
use crate::pexit::{PexitConfig, Threshold, ThresholdSearch};
use crate::protograph::{tbp_design_rate, OccurrenceAssignment, TypeDescription};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DeConfig {
    /// `NP`
    pub population_size: usize,
    /// `F`
    pub differential_weight: f64,
    /// `CR`
    pub crossover_rate: f64,
    /// `G`
    pub generations: usize,
    pub seed: u64,
    /// Worker threads for fitness evaluation; 0 uses the ambient pool.
    pub threads: usize,
    pub search: ThresholdSearch,
    pub pexit: PexitConfig,
    /// Optional counts injected as the first individual.
    pub initial_counts: Option<Vec<u32>>,
}

impl Default for DeConfig {
    fn default() -> Self {
        Self {
            population_size: 20,
            differential_weight: 0.5,
            crossover_rate: 0.9,
            generations: 200,
            seed: 0,
            threads: 0,
            search: ThresholdSearch::default(),
            pexit: PexitConfig::default(),
            initial_counts: None,
        }
    }
}

impl DeConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population_size < 4 {
            return Err(Error::Config(format!(
                "population size {} is below 4",
                self.population_size
            )));
        }
        if !(self.differential_weight > 0.0 && self.differential_weight <= 2.0) {
            return Err(Error::Config("differential weight F must lie in (0, 2]".into()));
        }
        if !(0.0..=1.0).contains(&self.crossover_rate) {
            return Err(Error::Config("crossover rate CR must lie in [0, 1]".into()));
        }
        Ok(())
    }
}

/// One scored individual.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub counts: Vec<u32>,
    pub fitness: Fitness,
}

impl Candidate {
    /// Threshold, then PEXIT iterations, then lexicographic counts.
    fn better_than(&self, other: &Candidate) -> bool {
        self.fitness
            .cmp_score(&other.fitness)
            .then_with(|| self.counts.cmp(&other.counts))
            .is_lt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GenerationStats {
    pub generation: usize,
    pub best_threshold_db: f64,
    /// Mean over population members with a finite threshold.
    pub mean_threshold_db: f64,
    /// Threshold bisections executed in this generation.
    pub evaluations: usize,
    pub cache_hits: usize,
}

#[derive(Debug, Clone)]
pub struct OptimizeResult {
    pub best: Candidate,
    pub assignment: OccurrenceAssignment,
    pub threshold: Threshold,
    pub history: Vec<GenerationStats>,
}

/// Runs differential evolution with a private fitness cache.
pub fn optimize(td: &TypeDescription, h: u32, cfg: &DeConfig) -> Result<OptimizeResult> {
    let evaluator = FitnessEvaluator::new(td, cfg.search, cfg.pexit);
    optimize_with(&evaluator, h, cfg)
}

/// Runs differential evolution against an existing evaluator, reusing its
/// cache. The evaluator's search and PEXIT settings take precedence over
/// those in `cfg`.
pub fn optimize_with(evaluator: &FitnessEvaluator<'_>, h: u32, cfg: &DeConfig) -> Result<OptimizeResult> {
    cfg.validate()?;
    let td = evaluator.type_description();
    if h == 0 {
        return Err(Error::validation("optimization target", "h must be positive"));
    }
    let probe = OccurrenceAssignment::from_check_counts(td, &{
        let mut c = vec![0; td.optimizable_check_types()];
        if let Some(first) = c.first_mut() {
            *first = h;
        }
        c
    });
    if let Ok(a) = &probe {
        tbp_design_rate(td, a)?;
    }
    let s = td.optimizable_check_types();
    if s == 0 {
        return Err(Error::Config("type description has no optimizable check node types".into()));
    }

    if cfg.threads > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
        pool.install(|| run(evaluator, td, h, cfg, s))
    } else {
        run(evaluator, td, h, cfg, s)
    }
}

fn finish(td: &TypeDescription, best: Candidate, history: Vec<GenerationStats>) -> Result<OptimizeResult> {
    let threshold = best.fitness.threshold.ok_or(Error::Undecodable {
        max_db: crate::pexit::WIDEN_LIMIT_DB,
    })?;
    let assignment = OccurrenceAssignment::from_check_counts(td, &best.counts)?;
    Ok(OptimizeResult {
        best,
        assignment,
        threshold,
        history,
    })
}

fn stats(generation: usize, best: &Candidate, population: &[Candidate], evaluations: usize, cache_hits: usize) -> GenerationStats {
    let finite: Vec<f64> = population
        .iter()
        .map(|c| c.fitness.threshold_db)
        .filter(|t| t.is_finite())
        .collect();
    let mean = if finite.is_empty() {
        f64::INFINITY
    } else {
        finite.iter().sum::<f64>() / finite.len() as f64
    };
    GenerationStats {
        generation,
        best_threshold_db: best.fitness.threshold_db,
        mean_threshold_db: mean,
        evaluations,
        cache_hits,
    }
}

fn run(evaluator: &FitnessEvaluator<'_>, td: &TypeDescription, h: u32, cfg: &DeConfig, s: usize) -> Result<OptimizeResult> {
    if s == 1 {
        let counts = vec![h];
        let (fit, batch) = evaluator.evaluate_batch(std::slice::from_ref(&counts));
        let best = Candidate { counts, fitness: fit[0] };
        if !best.fitness.valid {
            return Err(Error::Config(format!("the only assignment with h = {h} is invalid")));
        }
        let history = vec![stats(0, &best, std::slice::from_ref(&best), batch.evaluations, batch.cache_hits)];
        return finish(td, best, history);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let np = cfg.population_size;
    let mut vectors: Vec<Vec<f64>> = (0..np)
        .map(|_| (0..s).map(|_| rng.random::<f64>()).collect())
        .collect();
    if let Some(init) = &cfg.initial_counts {
        if init.len() != s || init.iter().map(|&x| x as u64).sum::<u64>() != h as u64 {
            return Err(Error::Config(format!("initial counts must be {s} values summing to {h}")));
        }
        vectors[0] = init.iter().map(|&x| x as f64).collect();
    }
    let counts: Vec<Vec<u32>> = vectors.iter().map(|v| repair(v, h)).collect();
    let (fits, batch) = evaluator.evaluate_batch(&counts);
    if fits.iter().all(|f| !f.valid) {
        return Err(Error::Config(format!(
            "every initial candidate is invalid; h = {h} is too small for this type description"
        )));
    }
    let mut population: Vec<Candidate> = counts
        .into_iter()
        .zip(fits)
        .map(|(counts, fitness)| Candidate { counts, fitness })
        .collect();
    let mut best = population[0].clone();
    for c in &population[1..] {
        if c.better_than(&best) {
            best = c.clone();
        }
    }
    let mut history = vec![stats(0, &best, &population, batch.evaluations, batch.cache_hits)];

    for generation in 1..=cfg.generations {
        let mut trials = Vec::with_capacity(np);
        for i in 0..np {
            let (r1, r2, r3) = distinct_partners(&mut rng, np, i);
            let forced = rng.random_range(0..s);
            let trial: Vec<f64> = (0..s)
                .map(|d| {
                    if d == forced || rng.random::<f64>() < cfg.crossover_rate {
                        vectors[r1][d] + cfg.differential_weight * (vectors[r2][d] - vectors[r3][d])
                    } else {
                        vectors[i][d]
                    }
                })
                .collect();
            trials.push(trial);
        }
        let counts: Vec<Vec<u32>> = trials.iter().map(|t| repair(t, h)).collect();
        let (fits, batch) = evaluator.evaluate_batch(&counts);
        for (i, ((raw, counts), fitness)) in trials.into_iter().zip(counts).zip(fits).enumerate() {
            let trial = Candidate { counts, fitness };
            if trial.fitness.cmp_score(&population[i].fitness).is_le() {
                if trial.better_than(&best) {
                    best = trial.clone();
                }
                vectors[i] = raw;
                population[i] = trial;
            }
        }
        history.push(stats(generation, &best, &population, batch.evaluations, batch.cache_hits));
    }
    finish(td, best, history)
}

fn distinct_partners(rng: &mut ChaCha8Rng, np: usize, target: usize) -> (usize, usize, usize) {
    let mut pick = |exclude: &[usize]| loop {
        let r = rng.random_range(0..np);
        if !exclude.contains(&r) {
            return r;
        }
    };
    let r1 = pick(&[target]);
    let r2 = pick(&[target, r1]);
    let r3 = pick(&[target, r1, r2]);
    (r1, r2, r3)
}
