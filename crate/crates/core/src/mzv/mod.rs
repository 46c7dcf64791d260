//! Multiple zeta values and the Drinfeld associator.
//!
//! Index convention: `zeta(k_1, ..., k_m)` sums over `0 < n_1 < ... < n_m`,
//! so `k_m > 1` is the convergence condition.

pub mod build;
pub mod eval;
pub mod index;
pub mod regularize;
pub mod table;
pub mod zagier;

pub use build::{build_phi_kz, required_digits, AssociatorCandidate};
pub use eval::{zeta, MzvEvaluator};
pub use index::MzvIndex;
pub use regularize::{convergent_combination, shuffle_regularize};
pub use table::{admissible_indices, MzvTable};
pub use zagier::{euler_shuffle_check, euler_stuffle_check, zagier_check, zagier_sides};
