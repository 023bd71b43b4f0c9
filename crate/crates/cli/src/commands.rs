use std::path::Path;

use anyhow::Context;
use serde::Serialize;
use serde_json::{json, Value};
use tbp_core::optimize::optimize;
use tbp_core::pexit::{
    eb_to_es_db, rational_to_f64, threshold, Code, Threshold, ThresholdSearch,
};
use tbp_core::protograph::{
    expand_type_description, lift_type_description, parse_protomatrix, parse_type_description, presets,
    serialize_protomatrix, serialize_type_description, tbp_design_rate, OccurrenceAssignment, Protomatrix,
    TypeDescription,
};
use tbp_core::sim::{
    construct_pcm, monte_carlo, operating_point, read_alist, secret_key_rate, write_alist, SkrInputs,
    SparseParityCheckMatrix,
};
use tbp_core::Error;

use crate::config::RunConfig;
use crate::output::{as_json, parse_counts, parse_grid, read_input, OutDir};
use crate::{Cli, Command, TdSource};

pub fn run(cli: Cli) -> anyhow::Result<()> {
    let mut cfg = RunConfig::load(cli.config.as_deref())?;
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(t) = cli.threads {
        cfg.threads = t;
    }
    if cfg.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build_global()
            .context("configuring the worker pool")?;
    }
    let out = &cli.out;
    match cli.command {
        Command::Optimize(a) => cmd_optimize(cfg, out, a),
        Command::Threshold(a) => cmd_threshold(cfg, out, a),
        Command::Expand(a) => cmd_expand(cfg, out, a),
        Command::LiftType(a) => cmd_lift_type(cfg, out, a),
        Command::LiftPcm(a) => cmd_lift_pcm(cfg, out, a),
        Command::Simulate(a) => cmd_simulate(cfg, out, a),
        Command::Skr(a) => cmd_skr(cfg, out, a),
    }
}

fn load_td(td: Option<&Path>, preset: Option<&str>) -> anyhow::Result<TypeDescription> {
    match (td, preset) {
        (Some(path), None) => Ok(parse_type_description(&read_input(path)?)?),
        (None, Some("ldgm-family")) => Ok(presets::ldgm_family()),
        (None, Some(other)) => Err(Error::Config(format!("unknown preset {other:?}; known: ldgm-family")).into()),
        _ => Err(Error::Config("give exactly one of --td and --preset".into()).into()),
    }
}

fn load_source(src: &TdSource) -> anyhow::Result<TypeDescription> {
    load_td(src.td.as_deref(), src.preset.as_deref())
}

fn with_max_entry(b: Protomatrix, ep: Option<u32>) -> anyhow::Result<Protomatrix> {
    let Some(ep) = ep else { return Ok(b) };
    let rows: Vec<Vec<u32>> = b.rows_iter().map(<[u32]>::to_vec).collect();
    Ok(Protomatrix::new(rows, b.punctured().to_vec(), ep)?)
}

/// `p/q` or a decimal.
fn parse_rate(s: &str) -> anyhow::Result<f64> {
    let bad = || Error::Config(format!("cannot read rate {s:?}"));
    let r = match s.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|_| bad())?;
            let q: f64 = q.trim().parse().map_err(|_| bad())?;
            p / q
        }
        None => s.trim().parse().map_err(|_| bad())?,
    };
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Config(format!("rate {s} must lie in (0, 1)")).into());
    }
    Ok(r)
}

/// Smallest `h` whose design rate equals `rate`, using assignments that
/// put all occurrences on the first optimizable type.
fn solve_h(td: &TypeDescription, rate: f64) -> anyhow::Result<u32> {
    let s = td.optimizable_check_types();
    for h in 1..=100_000u32 {
        let mut counts = vec![0; s];
        if let Some(c) = counts.first_mut() {
            *c = h;
        }
        let Ok(a) = OccurrenceAssignment::from_check_counts(td, &counts) else { continue };
        let Ok(r) = tbp_design_rate(td, &a) else { continue };
        let r = rational_to_f64(r);
        if (r - rate).abs() < 1e-12 {
            return Ok(h);
        }
    }
    Err(Error::Config(format!("no h up to 100000 gives rate {rate}")).into())
}

#[derive(Serialize)]
struct ThresholdRow {
    rate: f64,
    eb_n0_db_star: f64,
    es_n0_db_star: f64,
    capacity_limit_db: f64,
    gap_db: f64,
    beta_at_threshold: f64,
}

impl ThresholdRow {
    fn new(t: &Threshold) -> anyhow::Result<Self> {
        Ok(Self {
            rate: t.rate_f64(),
            eb_n0_db_star: t.eb_n0_db_star,
            es_n0_db_star: t.es_n0_db_star(),
            capacity_limit_db: t.capacity_limit_db()?,
            gap_db: t.gap_db()?,
            beta_at_threshold: t.beta()?,
        })
    }
}

fn cmd_optimize(mut cfg: RunConfig, out: &Path, a: crate::OptimizeArgs) -> anyhow::Result<()> {
    let td = load_source(&a.source)?;
    if let Some(v) = a.np {
        cfg.de.population_size = v;
    }
    if let Some(v) = a.f {
        cfg.de.differential_weight = v;
    }
    if let Some(v) = a.cr {
        cfg.de.crossover_rate = v;
    }
    if let Some(v) = a.generations {
        cfg.de.generations = v;
    }
    if let Some(v) = a.mu {
        cfg.pexit.hermite_points = v;
    }
    let h = match (a.h, &a.rate) {
        (Some(h), _) => h,
        (None, Some(r)) => solve_h(&td, parse_rate(r)?)?,
        (None, None) => return Err(Error::Config("give --h or --rate".into()).into()),
    };
    let result = optimize(&td, h, &cfg.de_config())?;
    let t = &result.threshold;
    let row = ThresholdRow::new(t)?;
    let dir = OutDir::create(out)?;
    dir.write_json(
        "best_assignment.json",
        &json!({
            "h": h,
            "counts": result.best.counts,
            "c": result.assignment.c,
            "v": result.assignment.v,
            "rate": t.rate.to_string(),
            "eb_n0_db_star": row.eb_n0_db_star,
            "es_n0_db_star": row.es_n0_db_star,
            "pexit_iterations": t.iterations_used,
            "capacity_limit_db": row.capacity_limit_db,
            "gap_db": row.gap_db,
            "beta_at_threshold": row.beta_at_threshold,
        }),
    )?;
    let b = expand_type_description(&td, &result.assignment)?;
    dir.write("best_protomatrix.json", &serialize_protomatrix(&b))?;
    dir.write_csv("history.csv", &result.history)?;
    dir.write_manifest(
        "optimize",
        &cfg,
        json!({ "type_description": as_json(&serialize_type_description(&td)) }),
        json!({ "h": h }),
    )?;
    println!(
        "h = {h}, rate {}: threshold Eb/N0* = {:.2} dB (Es/N0* = {:.3} dB), beta at threshold = {:.4}, counts {:?}",
        t.rate, row.eb_n0_db_star, row.es_n0_db_star, row.beta_at_threshold, result.best.counts
    );
    Ok(())
}

fn cmd_threshold(mut cfg: RunConfig, out: &Path, a: crate::ThresholdArgs) -> anyhow::Result<()> {
    if let Some(v) = a.mu {
        cfg.pexit.hermite_points = v;
    }
    cfg.search = ThresholdSearch {
        lo_db: a.lo.or(cfg.search.lo_db),
        hi_db: a.hi.or(cfg.search.hi_db),
        precision_db: a.precision.unwrap_or(cfg.search.precision_db),
    };
    let (t, inputs) = if let Some(path) = &a.protomatrix {
        let b = with_max_entry(parse_protomatrix(&read_input(path)?)?, a.ep)?;
        let t = threshold(Code::Protomatrix(&b), &cfg.search, &cfg.pexit)?;
        (t, json!({ "protomatrix": as_json(&serialize_protomatrix(&b)) }))
    } else {
        let td = load_td(a.td.as_deref(), a.preset.as_deref())?;
        let counts = a
            .counts
            .as_deref()
            .ok_or_else(|| Error::Config("--counts is required with a type description".into()))?;
        let assignment = OccurrenceAssignment::from_check_counts(&td, &parse_counts(counts)?)?;
        let t = threshold(Code::TypeBased(&td, &assignment), &cfg.search, &cfg.pexit)?;
        (
            t,
            json!({
                "type_description": as_json(&serialize_type_description(&td)),
                "assignment": assignment,
            }),
        )
    };
    let row = ThresholdRow::new(&t)?;
    let dir = OutDir::create(out)?;
    dir.write_csv("threshold.csv", std::slice::from_ref(&row))?;
    dir.write_manifest("threshold", &cfg, inputs, Value::Null)?;
    println!(
        "rate {}: Eb/N0* = {:.2} dB, Es/N0* = {:.3} dB, gap to capacity {:.3} dB, beta {:.4}",
        t.rate, row.eb_n0_db_star, row.es_n0_db_star, row.gap_db, row.beta_at_threshold
    );
    Ok(())
}

fn cmd_expand(cfg: RunConfig, out: &Path, a: crate::ExpandArgs) -> anyhow::Result<()> {
    let td = load_source(&a.source)?;
    let assignment = OccurrenceAssignment::from_check_counts(&td, &parse_counts(&a.counts)?)?;
    let b = with_max_entry(expand_type_description(&td, &assignment)?, a.ep)?;
    let dir = OutDir::create(out)?;
    dir.write("protomatrix.json", &serialize_protomatrix(&b))?;
    dir.write_manifest(
        "expand",
        &cfg,
        json!({ "type_description": as_json(&serialize_type_description(&td)), "assignment": assignment }),
        json!({ "ep": a.ep }),
    )?;
    println!("{} x {} protomatrix, rate {}", b.rows(), b.cols(), b.design_rate());
    Ok(())
}

fn cmd_lift_type(cfg: RunConfig, out: &Path, a: crate::LiftTypeArgs) -> anyhow::Result<()> {
    let td = load_source(&a.source)?;
    let lifted = lift_type_description(&td, a.q_tilde, cfg.seed)?;
    let dir = OutDir::create(out)?;
    dir.write("type_description.json", &serialize_type_description(&lifted))?;
    dir.write_manifest(
        "lift-type",
        &cfg,
        json!({ "type_description": as_json(&serialize_type_description(&td)) }),
        json!({ "q_tilde": a.q_tilde }),
    )?;
    println!(
        "lifted to {} check and {} variable node types",
        lifted.check_types(),
        lifted.var_types()
    );
    Ok(())
}

fn pcm_meta(h: &SparseParityCheckMatrix) -> Value {
    let mut meta = json!({
        "N": h.cols(),
        "M": h.rows(),
        "punctured": h.punctured(),
        "rate": h.design_rate().to_string(),
    });
    if let Some(p) = h.provenance() {
        meta["lifting_factor"] = json!(p.lifting_factor);
        meta["seed"] = json!(p.seed);
        meta["protomatrix"] = as_json(&serialize_protomatrix(&p.protomatrix));
        if let Some(r) = p.repair {
            meta["repair"] = json!({ "method": "block swap", "seed": r.seed, "passes": r.passes, "swaps": r.swaps });
        }
    }
    meta
}

fn build_pcm(cfg: &RunConfig, protomatrix: &Path, q: usize) -> anyhow::Result<(Protomatrix, SparseParityCheckMatrix)> {
    let b = parse_protomatrix(&read_input(protomatrix)?)?;
    let (h, _) = construct_pcm(&b, q, cfg.seed, cfg.lift.max_passes, cfg.lift.retries)?;
    Ok((b, h))
}

fn cmd_lift_pcm(mut cfg: RunConfig, out: &Path, a: crate::LiftPcmArgs) -> anyhow::Result<()> {
    if let Some(v) = a.max_passes {
        cfg.lift.max_passes = v;
    }
    if let Some(v) = a.retries {
        cfg.lift.retries = v;
    }
    let (b, h) = build_pcm(&cfg, &a.protomatrix, a.q)?;
    let dir = OutDir::create(out)?;
    dir.write("pcm.alist", &write_alist(&h))?;
    dir.write_json("pcm_meta.json", &pcm_meta(&h))?;
    dir.write_manifest(
        "lift-pcm",
        &cfg,
        json!({ "protomatrix": as_json(&serialize_protomatrix(&b)) }),
        json!({ "q": a.q }),
    )?;
    println!("N = {}, M = {}, rate {}", h.cols(), h.rows(), h.design_rate());
    Ok(())
}

#[derive(Serialize)]
struct ResultRow {
    es_n0_db: f64,
    eb_n0_db: f64,
    frames: u64,
    frame_errors: u64,
    bit_errors: u64,
    fer: f64,
    fer_ci_lo: f64,
    fer_ci_hi: f64,
    ber: f64,
    avg_iters: f64,
}

fn cmd_simulate(mut cfg: RunConfig, out: &Path, a: crate::SimulateArgs) -> anyhow::Result<()> {
    if let Some(v) = a.max_frames {
        cfg.sim.max_frames = v;
    }
    if let Some(v) = a.target_errors {
        cfg.sim.target_frame_errors = v;
    }
    if let Some(v) = a.max_iter {
        cfg.sim.max_iter = v;
    }
    cfg.sim.seed = cfg.seed;
    let (h, inputs) = match (&a.alist, &a.protomatrix, a.q) {
        (Some(path), None, _) => {
            let mut h = read_alist(&read_input(path)?)?;
            let mut inputs = json!({ "alist": path.display().to_string() });
            if let Some(meta) = &a.meta {
                let doc: Value = serde_json::from_str(&read_input(meta)?).map_err(|e| Error::Parse {
                    location: format!("{} line {}, column {}", meta.display(), e.line(), e.column()),
                    message: e.to_string(),
                })?;
                let punctured: Vec<usize> = serde_json::from_value(doc["punctured"].clone()).map_err(|e| {
                    Error::Parse {
                        location: format!("{}: punctured", meta.display()),
                        message: e.to_string(),
                    }
                })?;
                h = h.with_punctured(punctured)?;
                inputs["meta"] = doc;
            }
            (h, inputs)
        }
        (None, Some(path), Some(q)) => {
            let (b, h) = build_pcm(&cfg, path, q)?;
            (h, json!({ "protomatrix": as_json(&serialize_protomatrix(&b)), "q": q }))
        }
        _ => return Err(Error::Config("give --alist, or --protomatrix with --q".into()).into()),
    };
    let grid = parse_grid(&a.snr)?;
    let rate = rational_to_f64(h.design_rate());
    let es_grid: Vec<f64> = if a.eb {
        grid.iter().map(|&eb| eb_to_es_db(eb, rate)).collect()
    } else {
        grid.clone()
    };
    let records = monte_carlo(&h, &es_grid, &cfg.sim);
    let rows: Vec<ResultRow> = records
        .iter()
        .zip(&grid)
        .map(|(r, &g)| ResultRow {
            // report the grid value exactly as given
            es_n0_db: if a.eb { r.es_n0_db } else { g },
            eb_n0_db: if a.eb { g } else { r.eb_n0_db },
            frames: r.frames,
            frame_errors: r.frame_errors,
            bit_errors: r.bit_errors,
            fer: r.fer,
            fer_ci_lo: r.fer_ci_lo,
            fer_ci_hi: r.fer_ci_hi,
            ber: r.ber,
            avg_iters: r.avg_iters,
        })
        .collect();
    let dir = OutDir::create(out)?;
    dir.write_csv("results.csv", &rows)?;
    dir.write_manifest(
        "simulate",
        &cfg,
        inputs,
        json!({ "snr": a.snr, "eb": a.eb, "N": h.cols(), "M": h.rows() }),
    )?;
    for r in &rows {
        println!(
            "Es/N0 {:.3} dB  Eb/N0 {:.3} dB  FER {:.3e} [{:.2e}, {:.2e}]  BER {:.3e}  ({} / {} frames)",
            r.es_n0_db, r.eb_n0_db, r.fer, r.fer_ci_lo, r.fer_ci_hi, r.ber, r.frame_errors, r.frames
        );
    }
    Ok(())
}

fn cmd_skr(cfg: RunConfig, out: &Path, a: crate::SkrArgs) -> anyhow::Result<()> {
    let doc = match (a.beta, a.i_ab) {
        (Some(beta), Some(i_ab)) => {
            let inputs = SkrInputs::new(a.fer, beta, i_ab, a.chi_be)?;
            let skr = secret_key_rate(&inputs);
            json!({ "fer": a.fer, "beta": beta, "i_ab": i_ab, "chi_be": a.chi_be, "skr": skr, "valid": skr >= 0.0 && beta <= 1.0 })
        }
        _ => {
            let rate = parse_rate(
                a.rate
                    .as_deref()
                    .ok_or_else(|| Error::Config("give --beta with --i-ab, or --rate with an SNR".into()))?,
            )?;
            let es = match (a.es_n0, a.eb_n0) {
                (Some(es), None) => es,
                (None, Some(eb)) => eb_to_es_db(eb, rate),
                _ => return Err(Error::Config("give one of --es-n0 and --eb-n0".into()).into()),
            };
            serde_json::to_value(operating_point(rate, es, a.fer, a.chi_be)?)?
        }
    };
    let dir = OutDir::create(out)?;
    dir.write_json("skr.json", &doc)?;
    dir.write_manifest("skr", &cfg, Value::Null, doc.clone())?;
    println!("SKR = {}", doc["skr"]);
    if doc["skr"].as_f64().is_some_and(|s| s < 0.0) {
        log::warn!("negative secret key rate: no key can be distilled at this operating point");
    }
    Ok(())
}
