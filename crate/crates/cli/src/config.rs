//! Run configuration: defaults, overridden by `--config`, overridden by flags.

use std::path::Path;

use anyhow::Context;
use serde::{Deserialize, Serialize};
use tbp_core::optimize::DeConfig;
use tbp_core::pexit::{PexitConfig, ThresholdSearch};
use tbp_core::sim::{MonteCarloConfig, DEFAULT_MAX_PASSES};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DeSettings {
    pub population_size: usize,
    pub differential_weight: f64,
    pub crossover_rate: f64,
    pub generations: usize,
}

impl Default for DeSettings {
    fn default() -> Self {
        let d = DeConfig::default();
        Self {
            population_size: d.population_size,
            differential_weight: d.differential_weight,
            crossover_rate: d.crossover_rate,
            generations: d.generations,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LiftSettings {
    pub max_passes: usize,
    /// Extra lift attempts with fresh seeds when 4-cycle removal gives up.
    pub retries: usize,
}

impl Default for LiftSettings {
    fn default() -> Self {
        Self {
            max_passes: DEFAULT_MAX_PASSES,
            retries: 10,
        }
    }
}

/// Fully resolved settings; written verbatim into every manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    /// 0 lets rayon pick.
    pub threads: usize,
    pub pexit: PexitConfig,
    pub search: ThresholdSearch,
    pub de: DeSettings,
    pub sim: MonteCarloConfig,
    pub lift: LiftSettings,
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> anyhow::Result<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| {
            tbp_core::Error::Parse {
                location: format!("{} line {}, column {}", path.display(), e.line(), e.column()),
                message: e.to_string(),
            }
            .into()
        })
    }

    pub fn de_config(&self) -> DeConfig {
        DeConfig {
            population_size: self.de.population_size,
            differential_weight: self.de.differential_weight,
            crossover_rate: self.de.crossover_rate,
            generations: self.de.generations,
            seed: self.seed,
            // the global pool is already sized by main
            threads: 0,
            search: self.search,
            pexit: self.pexit,
            initial_counts: None,
        }
    }
}
