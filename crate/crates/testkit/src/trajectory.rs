use std::collections::HashMap;

use tbp_core::pexit::{ChannelQuality, PexitConfig, PexitGraph, PexitOutcome, PexitState};
use tbp_core::protograph::{expand_type_description, ExpansionLayout, OccurrenceAssignment, TypeDescription};
use tbp_core::Result;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryComparison {
    pub type_based: PexitOutcome,
    pub expanded: PexitOutcome,
    /// Largest MI difference between an expanded edge or node and its type,
    /// over all iterations; infinite if the traces differ in length.
    pub max_diff: f64,
}

/// Runs PEXIT on the type graph of `(td, a)` and on its expanded
/// protomatrix, mapping every expanded edge and variable node to its type.
pub fn compare_trajectories(
    td: &TypeDescription,
    a: &OccurrenceAssignment,
    channel: &ChannelQuality,
    cfg: &PexitConfig,
) -> Result<TrajectoryComparison> {
    let tbp = PexitGraph::from_type_description(td, a)?;
    let b = expand_type_description(td, a)?;
    let full = PexitGraph::from_protomatrix(&b);
    let layout = ExpansionLayout::new(td, a);

    let mut tbp_trace: Vec<PexitState> = Vec::new();
    let mut full_trace: Vec<PexitState> = Vec::new();
    let type_based = tbp.run(channel, cfg, Some(&mut tbp_trace));
    let expanded = full.run(channel, cfg, Some(&mut full_trace));

    let var_of_type: HashMap<usize, usize> = (0..tbp.num_vars()).map(|g| (tbp.var_label(g), g)).collect();
    let edge_of_types: HashMap<(usize, usize), usize> = tbp
        .edges()
        .iter()
        .enumerate()
        .map(|(e, x)| ((tbp.check_label(x.check), tbp.var_label(x.var)), e))
        .collect();
    let edge_map: Vec<usize> = full
        .edges()
        .iter()
        .map(|x| {
            let key = (layout.row_types[full.check_label(x.check)], layout.col_types[full.var_label(x.var)]);
            edge_of_types[&key]
        })
        .collect();
    let var_map: Vec<usize> = (0..full.num_vars())
        .map(|v| var_of_type[&layout.col_types[full.var_label(v)]])
        .collect();

    let mut max_diff = 0.0f64;
    if tbp_trace.len() != full_trace.len() {
        max_diff = f64::INFINITY;
    } else {
        for (t, f) in tbp_trace.iter().zip(&full_trace) {
            for (e, &te) in edge_map.iter().enumerate() {
                max_diff = max_diff.max((f.ev[e] - t.ev[te]).abs()).max((f.ec[e] - t.ec[te]).abs());
            }
            for (v, &tv) in var_map.iter().enumerate() {
                max_diff = max_diff.max((f.app[v] - t.app[tv]).abs());
            }
        }
    }
    Ok(TrajectoryComparison {
        type_based,
        expanded,
        max_diff,
    })
}
