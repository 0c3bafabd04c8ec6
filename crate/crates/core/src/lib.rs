//! Oil-water flow-pattern identification with a Mamdani fuzzy inference system,
//! plus a resilient-backpropagation neural baseline and evaluation tooling.

pub mod bp;
pub mod dataset;
pub mod error;
pub mod eval;
pub mod fuzzy;
pub mod kb;
pub mod scalar;
pub mod sweep;

pub use error::{FlowError, Result};
pub use kb::{classify, ClassificationResult, FlowPattern, OperatingPoint};
pub use scalar::Scalar;

pub type FuzzySystemF64 = fuzzy::FuzzySystem<f64>;
pub type FuzzySystemF32 = fuzzy::FuzzySystem<f32>;
pub type NetworkF64 = bp::NetworkParams<f64>;
pub type TrainedModelF64 = bp::TrainedModel<f64>;
