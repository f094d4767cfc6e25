//! Numerical building blocks shared by the model and the diagnostics.

pub mod cluster;
pub mod linalg;
pub mod matching;
pub mod poly;
pub mod quad;
pub mod roots;
pub mod sum;

pub use cluster::{cluster_points, Cluster};
pub use matching::{match_spectra, SpectrumMatch};
pub use poly::Poly;
pub use sum::{CompensatedSum, RealCompensatedSum};
