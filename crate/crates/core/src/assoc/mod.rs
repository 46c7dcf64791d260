//! Associator equations and the groups acting on their solutions.

pub mod grt;
pub mod hexagon;
pub mod mu;
pub mod pentagon;
pub mod relations;
pub mod solver;

pub use grt::{grt_inverse, grt_mul, grt_mul_alt, is_grt1, Grt1Report};
pub use hexagon::{hexagon_differences, hexagon_residuals, hexagon_residuals_adjoined};
pub use mu::{hexagons_at_recovered_mu, mu_squared, recover_mu, MuSummary, RecoveredMu, SquareRoot};
pub use pentagon::{pentagon_difference, pentagon_factors, pentagon_residual};
pub use relations::{evaluate_relation, extract_relations, symbolic_grouplike, Relation};
pub use solver::{pentagon_extend, solve_pentagon, Extension, Normalization};
