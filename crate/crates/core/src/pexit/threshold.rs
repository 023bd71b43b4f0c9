use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use super::analysis::{PexitConfig, PexitGraph, PexitOutcome};
use super::channel::{capacity_limit_eb_n0_db, eb_to_es_db, rational_to_f64, reconciliation_efficiency, ChannelQuality};
use crate::error::{Error, Result};
use crate::protograph::{OccurrenceAssignment, Protomatrix, TypeDescription};

/// The bracket is never widened past this magnitude in dB.
pub const WIDEN_LIMIT_DB: f64 = 30.0;

const DEFAULT_BRACKET_WIDTH_DB: f64 = 2.56;

/// Bisection bracket in `Eb/N0` dB. Missing edges are placed just below
/// the BI-AWGN Shannon limit of the code rate and 2.56 dB above that.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ThresholdSearch {
    pub lo_db: Option<f64>,
    pub hi_db: Option<f64>,
    pub precision_db: f64,
}

impl Default for ThresholdSearch {
    fn default() -> Self {
        Self {
            lo_db: None,
            hi_db: None,
            precision_db: 0.01,
        }
    }
}

/// What to analyse.
#[derive(Debug, Clone, Copy)]
pub enum Code<'a> {
    Protomatrix(&'a Protomatrix),
    TypeBased(&'a TypeDescription, &'a OccurrenceAssignment),
}

impl Code<'_> {
    pub fn rate(&self) -> Rational64 {
        match self {
            Code::Protomatrix(b) => b.design_rate(),
            Code::TypeBased(td, a) => a.expanded_rate(td),
        }
    }

    pub fn graph(&self) -> Result<PexitGraph> {
        match self {
            Code::Protomatrix(b) => Ok(PexitGraph::from_protomatrix(b)),
            Code::TypeBased(td, a) => PexitGraph::from_type_description(td, a),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Threshold {
    pub rate: Rational64,
    /// Upper edge of the final bracket: PEXIT converges here.
    pub eb_n0_db_star: f64,
    pub bracket_width_db: f64,
    /// PEXIT iterations needed at `eb_n0_db_star`.
    pub iterations_used: usize,
    /// Set when PEXIT already converged at the lowest admissible SNR.
    pub converged_at_lower_limit: bool,
    pub pexit_runs: usize,
}

impl Threshold {
    pub fn rate_f64(&self) -> f64 {
        rational_to_f64(self.rate)
    }

    pub fn es_n0_db_star(&self) -> f64 {
        eb_to_es_db(self.eb_n0_db_star, self.rate_f64())
    }

    /// Shannon limit for the rate, in `Eb/N0` dB.
    pub fn capacity_limit_db(&self) -> Result<f64> {
        capacity_limit_eb_n0_db(self.rate_f64())
    }

    pub fn gap_db(&self) -> Result<f64> {
        Ok(self.eb_n0_db_star - self.capacity_limit_db()?)
    }

    /// Reconciliation efficiency when operating exactly at the threshold.
    pub fn beta(&self) -> Result<f64> {
        reconciliation_efficiency(self.rate_f64(), self.es_n0_db_star())
    }
}

fn default_bracket(rate: f64) -> (f64, f64) {
    match capacity_limit_eb_n0_db(rate) {
        Ok(limit) => {
            let lo = (limit * 100.0).floor() / 100.0 - 0.01;
            (lo, lo + DEFAULT_BRACKET_WIDTH_DB)
        }
        Err(_) => (-10.0, -10.0 + 8.0 * DEFAULT_BRACKET_WIDTH_DB),
    }
}

/// Bisects the minimal `Eb/N0` at which PEXIT converges.
pub fn threshold(code: Code<'_>, search: &ThresholdSearch, cfg: &PexitConfig) -> Result<Threshold> {
    let graph = code.graph()?;
    threshold_on_graph(&graph, code.rate(), search, cfg)
}

pub fn threshold_on_graph(
    graph: &PexitGraph,
    rate: Rational64,
    search: &ThresholdSearch,
    cfg: &PexitConfig,
) -> Result<Threshold> {
    if !(search.precision_db > 0.0) {
        return Err(Error::Config("precision_db must be positive".into()));
    }
    if cfg.hermite_points < 2 {
        return Err(Error::Config("at least two Gauss-Hermite points are required".into()));
    }
    let (default_lo, default_hi) = default_bracket(rational_to_f64(rate));
    let mut lo = search.lo_db.unwrap_or(default_lo).max(-WIDEN_LIMIT_DB);
    let mut hi = search.hi_db.unwrap_or(if search.lo_db.is_some() {
        lo + DEFAULT_BRACKET_WIDTH_DB
    } else {
        default_hi
    });
    hi = hi.min(WIDEN_LIMIT_DB);
    if !(lo < hi) {
        return Err(Error::Config(format!("search bracket [{lo}, {hi}] dB is empty")));
    }

    let mut runs = 0usize;
    let mut run = |db: f64| -> PexitOutcome {
        runs += 1;
        graph.run(&ChannelQuality::new(db, rate), cfg, None)
    };

    let mut width = hi - lo;
    let mut at_hi = run(hi);
    while !at_hi.converged {
        if hi >= WIDEN_LIMIT_DB {
            return Err(Error::Undecodable { max_db: hi });
        }
        lo = hi;
        width *= 2.0;
        hi = (lo + width).min(WIDEN_LIMIT_DB);
        at_hi = run(hi);
    }
    let mut at_lo = run(lo);
    while at_lo.converged {
        hi = lo;
        at_hi = at_lo;
        if lo <= -WIDEN_LIMIT_DB {
            return Ok(Threshold {
                rate,
                eb_n0_db_star: lo,
                bracket_width_db: 0.0,
                iterations_used: at_hi.iterations,
                converged_at_lower_limit: true,
                pexit_runs: runs,
            });
        }
        width *= 2.0;
        lo = (hi - width).max(-WIDEN_LIMIT_DB);
        at_lo = run(lo);
    }

    while hi - lo > search.precision_db * (1.0 + 1e-9) {
        let mid = 0.5 * (lo + hi);
        let out = run(mid);
        if out.converged {
            hi = mid;
            at_hi = out;
        } else {
            lo = mid;
        }
    }
    Ok(Threshold {
        rate,
        eb_n0_db_star: hi,
        bracket_width_db: hi - lo,
        iterations_used: at_hi.iterations,
        converged_at_lower_limit: false,
        pexit_runs: runs,
    })
}
