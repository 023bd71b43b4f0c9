//! The J-function: mutual information between a code bit and a consistent
//! Gaussian LLR with standard deviation `sigma` (mean `sigma^2 / 2`).
//!
//! With the substitution `tau = sigma^2/2 + sqrt(2) sigma x` the defining
//! integral becomes a Gauss-Hermite sum
//!
//! ```text
//! 1 - J(sigma) = sum_i w_i / sqrt(pi) * log2(1 + exp(-sqrt(2) sigma x_i - sigma^2 / 2))
//! ```
//!
//! The right-hand side is evaluated directly so that values close to 1 keep
//! their relative precision; PEXIT works on these complements internally.

use std::f64::consts::{LN_2, PI, SQRT_2};
use std::collections::HashMap;
use std::sync::OnceLock;

use parking_lot::Mutex;

use super::hermite::GaussHermiteRule;
use crate::error::{Error, Result};

/// Quadrature size used unless configured otherwise.
pub const DEFAULT_HERMITE_POINTS: usize = 100;

/// Smallest complement `1 - I` handed to the inverse; MI is clamped to
/// `1 - COMPLEMENT_FLOOR` before inversion.
pub const COMPLEMENT_FLOOR: f64 = 1e-15;

const TABLE_STEP: f64 = 1.0 / 256.0;
const TABLE_MAX_SIGMA: f64 = 24.0;

#[derive(Debug, Clone)]
pub struct JFunction {
    rule: GaussHermiteRule,
    /// `sqrt(2) x_i`
    scaled_nodes: Vec<f64>,
    /// `w_i / (sqrt(pi) ln 2)`
    scaled_weights: Vec<f64>,
    /// `ln(1 - J(k * TABLE_STEP))`, strictly decreasing.
    log_complement_table: Vec<f64>,
}

impl JFunction {
    pub fn new(points: usize) -> Self {
        let rule = GaussHermiteRule::new(points);
        let scaled_nodes = rule.nodes().iter().map(|x| SQRT_2 * x).collect();
        let scaled_weights = rule.weights().iter().map(|w| w / (PI.sqrt() * LN_2)).collect();
        let mut j = Self {
            rule,
            scaled_nodes,
            scaled_weights,
            log_complement_table: Vec::new(),
        };
        let steps = (TABLE_MAX_SIGMA / TABLE_STEP).round() as usize;
        j.log_complement_table = (0..=steps)
            .map(|k| j.complement(k as f64 * TABLE_STEP).ln())
            .collect();
        j
    }

    /// Shared instance with the default 100-point rule.
    pub fn standard() -> &'static JFunction {
        static STANDARD: OnceLock<JFunction> = OnceLock::new();
        STANDARD.get_or_init(|| JFunction::new(DEFAULT_HERMITE_POINTS))
    }

    /// Shared instance with a `points`-point rule, built on first use.
    pub fn cached(points: usize) -> &'static JFunction {
        if points == DEFAULT_HERMITE_POINTS {
            return Self::standard();
        }
        static OTHERS: OnceLock<Mutex<HashMap<usize, &'static JFunction>>> = OnceLock::new();
        let mut map = OTHERS.get_or_init(Default::default).lock();
        map.entry(points)
            .or_insert_with(|| Box::leak(Box::new(JFunction::new(points.max(1)))))
    }

    pub fn rule(&self) -> &GaussHermiteRule {
        &self.rule
    }

    /// `J(sigma)` clamped to `[0, 1]`; `sigma` must be non-negative.
    pub fn value(&self, sigma: f64) -> f64 {
        if sigma <= 0.0 {
            return 0.0;
        }
        (1.0 - self.complement(sigma)).clamp(0.0, 1.0)
    }

    /// `1 - J(sigma)` computed without cancellation.
    pub fn complement(&self, sigma: f64) -> f64 {
        if sigma <= 0.0 {
            return 1.0;
        }
        let shift = 0.5 * sigma * sigma;
        let mut acc = 0.0;
        for (&a, &w) in self.scaled_nodes.iter().zip(&self.scaled_weights) {
            let z = -sigma * a - shift;
            acc += w * softplus(z);
        }
        acc.min(1.0)
    }

    /// `1 - J(sigma)` and its derivative in `sigma`.
    fn complement_with_derivative(&self, sigma: f64) -> (f64, f64) {
        let shift = 0.5 * sigma * sigma;
        let (mut acc, mut der) = (0.0, 0.0);
        for (&a, &w) in self.scaled_nodes.iter().zip(&self.scaled_weights) {
            let z = -sigma * a - shift;
            let e = (-z.abs()).exp();
            let sp = z.max(0.0) + e.ln_1p();
            let sig = if z >= 0.0 { 1.0 / (1.0 + e) } else { e / (1.0 + e) };
            acc += w * sp;
            der -= w * sig * (a + sigma);
        }
        (acc, der)
    }

    /// Solves `1 - J(sigma) = complement` for `sigma`.
    ///
    /// The complement is clamped to `[COMPLEMENT_FLOOR, 1]`. A table over
    /// `sigma` brackets the root and Newton steps on `ln(1 - J)` polish it,
    /// falling back to bisection whenever a step leaves the bracket.
    pub fn inverse_complement(&self, complement: f64) -> f64 {
        let target = complement.clamp(COMPLEMENT_FLOOR, 1.0);
        if target >= 1.0 {
            return 0.0;
        }
        let log_target = target.ln();
        let table = &self.log_complement_table;
        // first index whose value is below the target
        let hi_idx = table.partition_point(|&v| v >= log_target);
        if hi_idx >= table.len() {
            return self.bisect_complement(target, TABLE_MAX_SIGMA, 2.0 * TABLE_MAX_SIGMA);
        }
        let lo_idx = hi_idx - 1;
        let (mut lo, mut hi) = (lo_idx as f64 * TABLE_STEP, hi_idx as f64 * TABLE_STEP);
        let (f_lo, f_hi) = (table[lo_idx] - log_target, table[hi_idx] - log_target);
        let mut sigma = lo + (hi - lo) * f_lo / (f_lo - f_hi);
        for _ in 0..60 {
            let (c, dc) = self.complement_with_derivative(sigma);
            let f = c.ln() - log_target;
            if f == 0.0 {
                return sigma;
            }
            if f > 0.0 {
                lo = sigma;
            } else {
                hi = sigma;
            }
            let mut next = sigma - f * c / dc;
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            if (next - sigma).abs() <= 4.0 * f64::EPSILON * sigma.max(1e-3) || hi - lo <= f64::EPSILON * hi {
                return next;
            }
            sigma = next;
        }
        sigma
    }

    fn bisect_complement(&self, target: f64, mut lo: f64, mut hi: f64) -> f64 {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.complement(mid) > target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// `J^{-1}(mi)` with MI clamped to `[0, 1 - COMPLEMENT_FLOOR]`.
    pub fn inverse(&self, mi: f64) -> f64 {
        if mi <= 0.0 {
            return 0.0;
        }
        self.inverse_complement(1.0 - mi)
    }
}

#[inline]
fn softplus(z: f64) -> f64 {
    z.max(0.0) + (-z.abs()).exp().ln_1p()
}

/// `J(sigma)` with the default quadrature.
pub fn j_function(sigma: f64) -> Result<f64> {
    if !(sigma >= 0.0) {
        return Err(Error::domain("j_function", format!("sigma must be non-negative, got {sigma}")));
    }
    Ok(JFunction::standard().value(sigma))
}

/// `J^{-1}(mi)` for `mi` in `[0, 1)`.
pub fn j_inverse(mi: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&mi) {
        return Err(Error::domain(
            "j_inverse",
            format!("mutual information must lie in [0, 1), got {mi}"),
        ));
    }
    Ok(JFunction::standard().inverse(mi))
}
