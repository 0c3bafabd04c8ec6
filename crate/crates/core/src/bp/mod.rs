//! Neural-network baseline: two tanh hidden layers regressing the pattern code, trained by Rprop.

mod model;
mod network;
mod normalize;
mod rprop;

pub use model::{LayerDoc, ModelFile, MODEL_FORMAT_VERSION};
pub use network::{gradients, mse, Activations, Layer, NetworkParams, INPUT_SIZE};
pub use normalize::Normalizer;
pub use rprop::{
    code_to_pattern, rprop_step, train, TrainConfig, TrainHistory, TrainState, TrainedModel,
};
