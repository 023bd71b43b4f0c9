//! Independent reference implementations used by the test suites.
//!
//! Nothing in here calls into the numerical code it is meant to check:
//! the J-function is integrated adaptively rather than by Gauss-Hermite,
//! density evolution runs on quantized densities instead of Gaussian MI,
//! and the girth scan and composition enumerator are brute force.
//! [`trajectory`] is the exception: it drives the library's own PEXIT on two
//! graphs and compares them.

pub mod compositions;
pub mod dde;
pub mod gen;
pub mod girth;
pub mod jmi;
pub mod trajectory;

pub use compositions::brute_force_compositions;
pub use dde::{regular_threshold_eb_n0_db, DiscretizedDe};
pub use gen::{random_assignment, random_lifting_instance, random_type_description};
pub use girth::{degree_audit, four_cycle_row_pairs};
pub use jmi::{j_inverse_bisect, j_quadrature};
pub use trajectory::{compare_trajectories, TrajectoryComparison};
