//! Computer algebra for Drinfeld associators and the Grothendieck–Teichmüller,
//! double shuffle and Kashiwara–Vergne groups, on degree-truncated
//! non-commutative power series.

pub mod assoc;
pub mod braid;
pub mod cli;
pub mod config;
pub mod dmr;
pub mod error;
pub mod kv;
pub mod linalg;
pub mod mzv;
pub mod ncseries;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};
