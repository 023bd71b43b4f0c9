//! Protograph EXIT analysis.
//!
//! Both a full protomatrix and a type description with occurrences are
//! reduced to a [`PexitGraph`]: one node per protograph node (or per node
//! type), one edge per nonzero entry, and on each edge the number of
//! parallel connections as seen from either end. For a protomatrix both
//! multiplicities are `b_ij`. For a type description a fixed node sees every
//! occurrence of an optimizable neighbour type, so its multiplicity is
//! `t_ij` times that occurrence count, while an optimizable node sees `t_ij`.

use serde::{Deserialize, Serialize};

use super::channel::ChannelQuality;
use super::jfn::{JFunction, DEFAULT_HERMITE_POINTS};
use crate::error::Result;
use crate::protograph::{OccurrenceAssignment, Protomatrix, TypeDescription};

/// Iteration limits of a single PEXIT run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PexitConfig {
    pub max_iter: usize,
    /// Converged once every `I_APP >= 1 - tol`.
    pub tol: f64,
    /// Stop early once no a-posteriori MI grows by more than this per iteration.
    pub stall_tol: f64,
    /// Gauss-Hermite points of the J-function rule (`mu`).
    pub hermite_points: usize,
}

impl Default for PexitConfig {
    fn default() -> Self {
        Self {
            max_iter: 10_000,
            tol: 1e-6,
            stall_tol: 1e-10,
            hermite_points: DEFAULT_HERMITE_POINTS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PexitEdge {
    pub check: usize,
    pub var: usize,
    /// Parallel edges counted at the check node.
    pub check_mult: f64,
    /// Parallel edges counted at the variable node.
    pub var_mult: f64,
}

/// Message-passing skeleton shared by full and type-based analysis.
#[derive(Debug, Clone)]
pub struct PexitGraph {
    edges: Vec<PexitEdge>,
    check_edges: Vec<Vec<usize>>,
    var_edges: Vec<Vec<usize>>,
    punctured: Vec<bool>,
    /// Original check (type) index of each graph check node.
    check_labels: Vec<usize>,
    /// Original variable (type) index of each graph variable node.
    var_labels: Vec<usize>,
}

/// MI values after one iteration, indexed like [`PexitGraph::edges`].
#[derive(Debug, Clone, PartialEq)]
pub struct PexitState {
    pub iteration: usize,
    /// `I_Ev`, variable to check.
    pub ev: Vec<f64>,
    /// `I_Ec`, check to variable.
    pub ec: Vec<f64>,
    /// `I_APP` per variable node.
    pub app: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PexitOutcome {
    pub converged: bool,
    pub iterations: usize,
    /// `min_j I_APP` at the last iteration.
    pub min_app: f64,
}

impl PexitGraph {
    fn build(
        edges: Vec<PexitEdge>,
        punctured: Vec<bool>,
        check_labels: Vec<usize>,
        var_labels: Vec<usize>,
    ) -> Self {
        let mut check_edges = vec![Vec::new(); check_labels.len()];
        let mut var_edges = vec![Vec::new(); var_labels.len()];
        for (e, edge) in edges.iter().enumerate() {
            check_edges[edge.check].push(e);
            var_edges[edge.var].push(e);
        }
        Self {
            edges,
            check_edges,
            var_edges,
            punctured,
            check_labels,
            var_labels,
        }
    }

    pub fn from_protomatrix(b: &Protomatrix) -> Self {
        let mut edges = Vec::new();
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                let x = b.get(i, j);
                if x > 0 {
                    edges.push(PexitEdge {
                        check: i,
                        var: j,
                        check_mult: x as f64,
                        var_mult: x as f64,
                    });
                }
            }
        }
        let punctured = (0..b.cols()).map(|j| b.is_punctured(j)).collect();
        Self::build(edges, punctured, (0..b.rows()).collect(), (0..b.cols()).collect())
    }

    /// Graph over the node types that occur at least once.
    pub fn from_type_description(td: &TypeDescription, a: &OccurrenceAssignment) -> Result<Self> {
        a.validate(td)?;
        let checks: Vec<usize> = (0..td.check_types()).filter(|&i| a.c[i] > 0).collect();
        let vars: Vec<usize> = (0..td.var_types()).filter(|&j| a.v[j] > 0).collect();
        let mut var_index = vec![usize::MAX; td.var_types()];
        for (g, &j) in vars.iter().enumerate() {
            var_index[j] = g;
        }
        let mut edges = Vec::new();
        for (gi, &i) in checks.iter().enumerate() {
            for &j in &vars {
                if td.get(i, j) > 0 {
                    edges.push(PexitEdge {
                        check: gi,
                        var: var_index[j],
                        check_mult: td.check_side_multiplicity(a, i, j) as f64,
                        var_mult: td.var_side_multiplicity(a, i, j) as f64,
                    });
                }
            }
        }
        let punctured = vars.iter().map(|&j| td.is_punctured(j)).collect();
        Ok(Self::build(edges, punctured, checks, vars))
    }

    pub fn edges(&self) -> &[PexitEdge] {
        &self.edges
    }

    pub fn num_checks(&self) -> usize {
        self.check_labels.len()
    }

    pub fn num_vars(&self) -> usize {
        self.var_labels.len()
    }

    pub fn check_label(&self, check: usize) -> usize {
        self.check_labels[check]
    }

    pub fn var_label(&self, var: usize) -> usize {
        self.var_labels[var]
    }

    /// Runs PEXIT from `I_Ec = 0`. When `trace` is given, the MI state after
    /// every iteration is appended to it.
    pub fn run(
        &self,
        channel: &ChannelQuality,
        cfg: &PexitConfig,
        mut trace: Option<&mut Vec<PexitState>>,
    ) -> PexitOutcome {
        let j = JFunction::cached(cfg.hermite_points);
        let sigma_ch = channel.sigma_ch();
        let ch_sq: Vec<f64> = self
            .punctured
            .iter()
            .map(|&p| if p { 0.0 } else { sigma_ch * sigma_ch })
            .collect();
        let n_edges = self.edges.len();
        // (J^{-1}(I_Ec))^2 per edge
        let mut ec_sq = vec![0.0; n_edges];
        // 1 - I_Ev per edge
        let mut ev_comp = vec![1.0; n_edges];
        // (J^{-1}(1 - I_Ev))^2 per edge
        let mut ev_sq = vec![0.0; n_edges];
        // I_Ec per edge
        let mut ec = vec![0.0; n_edges];
        let mut app_comp = vec![1.0; self.num_vars()];
        let mut prev_app = vec![0.0; self.num_vars()];
        let mut outcome = PexitOutcome {
            converged: false,
            iterations: 0,
            min_app: 0.0,
        };

        for iteration in 1..=cfg.max_iter {
            for (v, edges) in self.var_edges.iter().enumerate() {
                let total = weighted_sum(edges.iter().map(|&e| (self.edges[e].var_mult, ec_sq[e])));
                for &e in edges {
                    let x = (total - ec_sq[e] + ch_sq[v]).max(0.0);
                    ev_comp[e] = complement_of_sigma_sq(j, x);
                }
            }
            for edges in &self.check_edges {
                // an incoming I_Ev of exactly zero means J^{-1}(1) = inf, which
                // silences every other outgoing message of the check
                let mut silent = 0.0;
                for &e in edges {
                    let iev = 1.0 - ev_comp[e];
                    if iev <= 0.0 {
                        ev_sq[e] = 0.0;
                        silent += self.edges[e].check_mult;
                    } else {
                        let s = j.inverse_complement(iev);
                        ev_sq[e] = s * s;
                    }
                }
                let total = weighted_sum(edges.iter().map(|&e| (self.edges[e].check_mult, ev_sq[e])));
                for &e in edges {
                    let own = if ev_comp[e] >= 1.0 { 1.0 } else { 0.0 };
                    let y = (total - ev_sq[e]).max(0.0);
                    // I_Ec = 1 - J(y)
                    let iec = if silent - own > 0.0 { 0.0 } else { j.complement(y.sqrt()) };
                    ec[e] = iec;
                    let s = j.inverse_complement(1.0 - iec);
                    ec_sq[e] = s * s;
                }
            }
            let mut max_gain = f64::NEG_INFINITY;
            let mut worst = 0.0f64;
            for (v, edges) in self.var_edges.iter().enumerate() {
                let total = weighted_sum(edges.iter().map(|&e| (self.edges[e].var_mult, ec_sq[e])));
                app_comp[v] = complement_of_sigma_sq(j, total + ch_sq[v]);
                let app = 1.0 - app_comp[v];
                max_gain = max_gain.max(app - prev_app[v]);
                prev_app[v] = app;
                worst = worst.max(app_comp[v]);
            }

            if let Some(trace) = trace.as_deref_mut() {
                trace.push(PexitState {
                    iteration,
                    ev: ev_comp.iter().map(|c| 1.0 - c).collect(),
                    ec: ec.clone(),
                    app: app_comp.iter().map(|c| 1.0 - c).collect(),
                });
            }

            outcome.iterations = iteration;
            outcome.min_app = 1.0 - worst;
            if worst <= cfg.tol {
                outcome.converged = true;
                break;
            }
            if iteration > 1 && max_gain < cfg.stall_tol {
                break;
            }
        }
        outcome
    }
}

/// `sum m_i x_i` with error-free products and Neumaier compensation.
///
/// A type node with multiplicity `m` and its `m` expanded copies then round
/// to the same value, instead of `m x` drifting from `x + x + ... + x` by a
/// few ulps that slow convergence near the threshold amplifies.
fn weighted_sum(terms: impl Iterator<Item = (f64, f64)>) -> f64 {
    let (mut s, mut c) = (0.0f64, 0.0f64);
    for (m, x) in terms {
        let p = m * x;
        c += m.mul_add(x, -p);
        let t = s + p;
        c += if s.abs() >= p.abs() { (s - t) + p } else { (p - t) + s };
        s = t;
    }
    s + c
}

#[inline]
fn complement_of_sigma_sq(j: &JFunction, sigma_sq: f64) -> f64 {
    if sigma_sq.is_infinite() {
        0.0
    } else {
        j.complement(sigma_sq.sqrt())
    }
}

/// Full-protograph PEXIT; `channel.rate` should be the design rate of `b`.
pub fn pexit_converges(b: &Protomatrix, channel: &ChannelQuality, cfg: &PexitConfig) -> PexitOutcome {
    PexitGraph::from_protomatrix(b).run(channel, cfg, None)
}

/// Type-based PEXIT: per-type updates with occurrence-weighted sums at the
/// fixed nodes.
pub fn tbp_pexit_converges(
    td: &TypeDescription,
    a: &OccurrenceAssignment,
    channel: &ChannelQuality,
    cfg: &PexitConfig,
) -> Result<PexitOutcome> {
    Ok(PexitGraph::from_type_description(td, a)?.run(channel, cfg, None))
}
