//! PEXIT analysis: J-function, convergence checks and thresholds.

pub mod analysis;
pub mod channel;
pub mod hermite;
pub mod jfn;
pub mod threshold;

pub use analysis::{pexit_converges, tbp_pexit_converges, PexitConfig, PexitEdge, PexitGraph, PexitOutcome, PexitState};
pub use channel::{
    bi_awgn_capacity, capacity_limit_eb_n0_db, capacity_limit_es_n0_db, db_to_linear, eb_to_es_db, es_to_eb_db,
    linear_to_db, rational_to_f64, reconciliation_efficiency, ChannelQuality,
};
pub use hermite::GaussHermiteRule;
pub use jfn::{j_function, j_inverse, JFunction, COMPLEMENT_FLOOR, DEFAULT_HERMITE_POINTS};
pub use threshold::{threshold, threshold_on_graph, Code, Threshold, ThresholdSearch, WIDEN_LIMIT_DB};
