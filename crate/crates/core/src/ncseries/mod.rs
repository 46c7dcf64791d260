//! Truncated non-commutative formal power series `k<<X>>_{<=N}`.

pub mod algebra;
pub mod alphabet;
pub mod grouplike;
pub mod json;
pub mod lyndon;
pub mod series;
pub mod shuffle;

pub use algebra::{conjugate, exp, inverse, log, TruncatedAlgebra};
pub use alphabet::{Alphabet, Word, X0, X1};
pub use grouplike::{group_like_residual, grouplike_from_lyndon, GroupLikeReport};
pub use json::{AnySeries, JsonCoeff, SeriesEnvelope};
pub use series::{substitute, Series};
