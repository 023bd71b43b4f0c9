use super::pcm::SparseParityCheckMatrix;

/// Iteration cap used in the validation runs.
pub const DEFAULT_DECODER_ITERATIONS: usize = 500;

/// Internal messages are kept inside `[-LLR_CLAMP, LLR_CLAMP]`.
pub const LLR_CLAMP: f64 = 50.0;

#[derive(Debug, Clone, PartialEq)]
pub struct DecodeOutcome {
    /// Hard decisions on all `N` bits, punctured ones included.
    pub decisions: Vec<u8>,
    /// True exactly when the syndrome of `decisions` is zero.
    pub success: bool,
    pub iterations: usize,
}

/// Flooding sum-product decoder with tanh-rule check updates. Holds the
/// edge layout and message buffers, so one instance can decode many frames.
#[derive(Debug, Clone)]
pub struct SumProductDecoder<'a> {
    h: &'a SparseParityCheckMatrix,
    /// Edges ordered by row: start offsets into `edge_col`.
    row_start: Vec<usize>,
    edge_col: Vec<usize>,
    /// Edge ids of each column.
    col_edges: Vec<Vec<usize>>,
    v2c: Vec<f64>,
    c2v: Vec<f64>,
    scratch: Vec<f64>,
    decisions: Vec<u8>,
}

impl<'a> SumProductDecoder<'a> {
    pub fn new(h: &'a SparseParityCheckMatrix) -> Self {
        let mut row_start = Vec::with_capacity(h.rows() + 1);
        let mut edge_col = Vec::with_capacity(h.num_edges());
        let mut col_edges = vec![Vec::new(); h.cols()];
        row_start.push(0);
        for i in 0..h.rows() {
            for &j in h.row(i) {
                col_edges[j].push(edge_col.len());
                edge_col.push(j);
            }
            row_start.push(edge_col.len());
        }
        let e = edge_col.len();
        let widest = h.row_degrees().into_iter().max().unwrap_or(0);
        Self {
            h,
            row_start,
            edge_col,
            col_edges,
            v2c: vec![0.0; e],
            c2v: vec![0.0; e],
            scratch: vec![0.0; 2 * (widest + 1)],
            decisions: vec![0; h.cols()],
        }
    }

    pub fn decode(&mut self, llr: &[f64], max_iter: usize) -> DecodeOutcome {
        let (success, iterations) = self.run(llr, max_iter);
        DecodeOutcome {
            decisions: self.decisions.clone(),
            success,
            iterations,
        }
    }

    /// Decodes without copying the decisions out; see [`Self::decisions`].
    pub fn run(&mut self, llr: &[f64], max_iter: usize) -> (bool, usize) {
        assert_eq!(llr.len(), self.h.cols(), "LLR length must equal N");
        for (e, &j) in self.edge_col.iter().enumerate() {
            self.v2c[e] = llr[j].clamp(-LLR_CLAMP, LLR_CLAMP);
        }
        for iteration in 1..=max_iter {
            self.check_update();
            self.variable_update(llr);
            if self.syndrome_is_zero() {
                return (true, iteration);
            }
        }
        (false, max_iter)
    }

    pub fn decisions(&self) -> &[u8] {
        &self.decisions
    }

    fn check_update(&mut self) {
        let Self { row_start, v2c, c2v, scratch, .. } = self;
        let half = scratch.len() / 2;
        let (th, suffix) = scratch.split_at_mut(half);
        for w in row_start.windows(2) {
            let (s, end) = (w[0], w[1]);
            let d = end - s;
            for k in 0..d {
                th[k] = (0.5 * v2c[s + k]).tanh();
            }
            suffix[d] = 1.0;
            for k in (0..d).rev() {
                suffix[k] = suffix[k + 1] * th[k];
            }
            let mut prefix = 1.0;
            for k in 0..d {
                let others = prefix * suffix[k + 1];
                c2v[s + k] = (2.0 * others.atanh()).clamp(-LLR_CLAMP, LLR_CLAMP);
                prefix *= th[k];
            }
        }
    }

    fn variable_update(&mut self, llr: &[f64]) {
        for (j, edges) in self.col_edges.iter().enumerate() {
            let total = llr[j] + edges.iter().map(|&e| self.c2v[e]).sum::<f64>();
            self.decisions[j] = u8::from(total < 0.0);
            for &e in edges {
                self.v2c[e] = (total - self.c2v[e]).clamp(-LLR_CLAMP, LLR_CLAMP);
            }
        }
    }

    fn syndrome_is_zero(&self) -> bool {
        (0..self.h.rows()).all(|i| {
            self.edge_col[self.row_start[i]..self.row_start[i + 1]]
                .iter()
                .fold(0u8, |acc, &j| acc ^ self.decisions[j])
                == 0
        })
    }
}

/// One-shot sum-product decoding of a single frame.
pub fn sum_product_decode(h: &SparseParityCheckMatrix, llr: &[f64], max_iter: usize) -> DecodeOutcome {
    SumProductDecoder::new(h).decode(llr, max_iter)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hamming() -> SparseParityCheckMatrix {
        SparseParityCheckMatrix::from_rows(7, vec![vec![0, 1, 2, 4], vec![0, 1, 3, 5], vec![0, 2, 3, 6]], vec![]).unwrap()
    }

    #[test]
    fn noiseless_frame_decodes_at_once() {
        let out = sum_product_decode(&hamming(), &[5.0; 7], 500);
        assert!(out.success);
        assert_eq!(out.iterations, 1);
        assert_eq!(out.decisions, vec![0; 7]);
    }

    #[test]
    fn corrects_a_single_flip() {
        let mut llr = [4.0; 7];
        llr[3] = -1.0;
        let out = sum_product_decode(&hamming(), &llr, 50);
        assert!(out.success);
        assert_eq!(out.decisions, vec![0; 7]);
    }

    #[test]
    fn erased_bit_is_recovered() {
        let mut llr = [4.0; 7];
        llr[6] = 0.0;
        let out = sum_product_decode(&hamming(), &llr, 50);
        assert!(out.success);
        assert_eq!(out.decisions[6], 0);
    }

    #[test]
    fn success_means_zero_syndrome() {
        let h = hamming();
        let llr = [-3.0, 2.0, -0.5, 1.0, 0.1, -2.0, 0.3];
        let out = sum_product_decode(&h, &llr, 100);
        assert_eq!(out.success, h.syndrome_is_zero(&out.decisions));
    }

    #[test]
    fn saturated_inputs_stay_finite() {
        let out = sum_product_decode(&hamming(), &[1e6; 7], 3);
        assert!(out.success);
    }
}
