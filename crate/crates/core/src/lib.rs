//! Gaussian-state phase-space toolkit with Rényi-2 correlation measures,
//! applied to field modes seen by inertial and uniformly accelerated observers.

pub mod closed_forms;
pub mod error;
pub mod figures;
pub mod measurement;
pub mod optim;
pub mod phase_space;
pub mod renyi;
pub mod report;
pub mod sweep;
pub mod tripartite;
pub mod unruh;
pub mod validate;

pub use error::{Error, Result};
pub use phase_space::{CovarianceMatrix, ModePartition, SymplecticTransform};
pub use unruh::{FrameScenario, Setting};
