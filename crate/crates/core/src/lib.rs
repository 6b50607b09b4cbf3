//! Coined quantum walks on the line and their correlated classical
//! counterparts: direct simulation, closed-form amplitudes, equivalence
//! classes of coin setups, and limiting densities.

pub mod classical;
pub mod classify;
pub mod closed_form;
pub mod coin;
pub mod error;
pub mod io;
pub mod limit;
pub mod quantum;

mod lattice;
#[cfg(test)]
mod properties;

pub use classical::{ClassicalJointState, CorrelationParams};
pub use closed_form::{AmplitudeTable, FHCoefficients, Mat2};
pub use coin::{CoinMatrix, CoinSetup, CoinState, SymmetricStates};
pub use error::{Error, Result};
pub use quantum::{SpatialDistribution, WalkState};
