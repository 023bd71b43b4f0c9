//! Occurrence-vector search: differential evolution and exhaustive enumeration.

pub mod de;
pub mod enumerate;
pub mod fitness;
pub mod repair;

pub use de::{optimize, optimize_with, Candidate, DeConfig, GenerationStats, OptimizeResult};
pub use enumerate::{enumerate, Compositions, DEFAULT_ENUMERATION_LIMIT};
pub use fitness::{evaluate_fitness, BatchStats, Fitness, FitnessEvaluator};
pub use repair::repair;
