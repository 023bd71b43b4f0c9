use std::f64::consts::PI;

use nalgebra::DMatrix;

/// Gauss-Hermite rule: `sum_i w_i f(x_i)` approximates the integral of
/// `exp(-x^2) f(x)` over the real line.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussHermiteRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussHermiteRule {
    /// Computes a `points`-node rule.
    ///
    /// Nodes come from the eigenvalues of the symmetric Jacobi matrix
    /// (Golub-Welsch). Each node is then polished by Newton steps on the
    /// orthonormal Hermite recurrence, which also yields the weights with
    /// full relative accuracy even where they underflow the eigenvector
    /// components.
    pub fn new(points: usize) -> Self {
        assert!(points >= 1, "a quadrature rule needs at least one node");
        let mut jacobi = DMatrix::<f64>::zeros(points, points);
        for i in 0..points - 1 {
            let b = ((i + 1) as f64 / 2.0).sqrt();
            jacobi[(i, i + 1)] = b;
            jacobi[(i + 1, i)] = b;
        }
        let mut nodes: Vec<f64> = jacobi.symmetric_eigen().eigenvalues.iter().copied().collect();
        nodes.sort_by(|a, b| a.total_cmp(b));

        let mut weights = Vec::with_capacity(points);
        for x in nodes.iter_mut() {
            let mut w = 0.0;
            for _ in 0..8 {
                let (p, dp) = orthonormal_hermite(points, *x);
                let step = p / dp;
                *x -= step;
                w = 2.0 / (dp * dp);
                if step.abs() <= 1e-15 * x.abs().max(1.0) {
                    let (_, dp) = orthonormal_hermite(points, *x);
                    w = 2.0 / (dp * dp);
                    break;
                }
            }
            weights.push(w);
        }
        // exact symmetry
        for i in 0..points / 2 {
            let j = points - 1 - i;
            let x = 0.5 * (nodes[j] - nodes[i]);
            let w = 0.5 * (weights[i] + weights[j]);
            nodes[i] = -x;
            nodes[j] = x;
            weights[i] = w;
            weights[j] = w;
        }
        if points % 2 == 1 {
            nodes[points / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn points(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// Orthonormal Hermite polynomial `p_n(x)` and `sqrt(2n) p_{n-1}(x)`, its
/// derivative.
fn orthonormal_hermite(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 0.0;
    let mut p = PI.powf(-0.25);
    for j in 1..=n {
        let jf = j as f64;
        let next = x * (2.0 / jf).sqrt() * p - ((jf - 1.0) / jf).sqrt() * p_prev;
        p_prev = p;
        p = next;
    }
    (p, (2.0 * n as f64).sqrt() * p_prev)
}
