//! JSON model files for trained networks.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{FlowError, Result};
use crate::scalar::Scalar;

use super::network::{Layer, NetworkParams};
use super::normalize::Normalizer;
use super::rprop::{TrainConfig, TrainHistory, TrainedModel};

pub const MODEL_FORMAT_VERSION: &str = "flowpat-bp/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayerDoc {
    /// Row-major `inputs x outputs`.
    pub weights: Vec<f64>,
    pub biases: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub version: String,
    pub layer_sizes: Vec<usize>,
    pub layers: Vec<LayerDoc>,
    pub normalizer: Normalizer,
    pub config: TrainConfig,
    pub history: TrainHistory,
}

impl ModelFile {
    pub fn from_model<T: Scalar>(model: &TrainedModel<T>) -> Self {
        Self {
            version: MODEL_FORMAT_VERSION.into(),
            layer_sizes: model.params.layer_sizes(),
            layers: model
                .params
                .layers
                .iter()
                .map(|l| LayerDoc {
                    weights: l.weights.iter().map(|w| w.as_f64()).collect(),
                    biases: l.biases.iter().map(|b| b.as_f64()).collect(),
                })
                .collect(),
            normalizer: model.normalizer.clone(),
            config: model.config.clone(),
            history: model.history.clone(),
        }
    }

    pub fn into_model<T: Scalar>(self) -> Result<TrainedModel<T>> {
        let bad = |m: String| FlowError::Parse {
            location: "model".into(),
            message: m,
        };
        if self.version != MODEL_FORMAT_VERSION {
            return Err(bad(format!("unsupported version `{}`", self.version)));
        }
        if self.layer_sizes.len() != self.layers.len() + 1 || self.layer_sizes.len() < 2 {
            return Err(bad("layer_sizes does not match layers".into()));
        }
        let dim = self.layer_sizes[0];
        if self.normalizer.min.len() != dim || self.normalizer.max.len() != dim {
            return Err(bad(
                "normalizer dimension does not match the input layer".into()
            ));
        }
        let layers = self
            .layers
            .iter()
            .zip(self.layer_sizes.windows(2))
            .enumerate()
            .map(|(k, (doc, w))| {
                if doc.weights.len() != w[0] * w[1] || doc.biases.len() != w[1] {
                    return Err(bad(format!("layer {k} has the wrong shape")));
                }
                Ok(Layer {
                    inputs: w[0],
                    outputs: w[1],
                    weights: doc.weights.iter().map(|&x| T::of(x)).collect(),
                    biases: doc.biases.iter().map(|&x| T::of(x)).collect(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let params = NetworkParams { layers };
        if !params.is_finite() {
            return Err(bad("non-finite parameter".into()));
        }
        Ok(TrainedModel {
            params,
            normalizer: self.normalizer,
            config: self.config,
            history: self.history,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("model serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| FlowError::Parse {
            location: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bp::train;
    use crate::dataset::embedded_dataset;

    #[test]
    fn model_file_round_trip() {
        let cfg = TrainConfig {
            epochs: 20,
            ..Default::default()
        };
        let model = train::<f64>(&cfg, &embedded_dataset()).unwrap();
        let file = ModelFile::from_model(&model);
        let text = file.to_json();
        let back = ModelFile::from_json(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.into_model::<f64>().unwrap(), model);
    }

    #[test]
    fn shape_mismatch_rejected() {
        let cfg = TrainConfig {
            epochs: 1,
            ..Default::default()
        };
        let model = train::<f64>(&cfg, &embedded_dataset()).unwrap();
        let mut file = ModelFile::from_model(&model);
        file.layers[1].biases.pop();
        assert!(file.into_model::<f64>().is_err());
    }
}
