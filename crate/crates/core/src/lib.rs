//! Sturmian sequences generated by irrational circle rotations, decided
//! exactly: order checks on finite windows, pattern frequencies and their
//! bounded discrepancy, the forbidden-distance characterization, and the
//! non-frustrated lattice-gas Hamiltonian whose zero-energy configurations
//! are exactly the Sturmian ones.

pub mod characterization;
pub mod config;
pub mod discrepancy;
pub mod error;
pub mod exact_angle;
pub mod lattice_gas;
pub mod order_analysis;
pub mod sturmian_gen;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use exact_angle::{rotate, EndpointPolicy, QuadIrrational, RotationParams};
pub use word::Word;

/// Version string embedded in every JSON report.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
