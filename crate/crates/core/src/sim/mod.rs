//! Finite-length realization and Monte-Carlo validation.

pub mod alist;
pub mod channel;
pub mod decoder;
pub mod girth;
pub mod lift;
pub mod montecarlo;
pub mod pcm;
pub mod skr;

pub use alist::{read_alist, write_alist};
pub use channel::{noise_sigma, simulate_channel};
pub use decoder::{sum_product_decode, DecodeOutcome, SumProductDecoder, DEFAULT_DECODER_ITERATIONS, LLR_CLAMP};
pub use girth::{construct_pcm, count_four_cycles, is_four_cycle_free, remove_4cycles, DEFAULT_MAX_PASSES};
pub use lift::lift_protomatrix;
pub use montecarlo::{frame_rng, monte_carlo, wilson_interval, MonteCarloConfig, MonteCarloRecord, Z_95};
pub use pcm::{EdgeUnit, Provenance, RepairReport, SparseParityCheckMatrix};
pub use skr::{operating_point, secret_key_rate, OperatingPoint, SkrInputs};
