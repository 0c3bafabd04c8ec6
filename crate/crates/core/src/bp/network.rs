//! Feedforward network with tanh hidden layers and a linear scalar output.

use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{FlowError, Result};
use crate::scalar::Scalar;

/// Dense layer; `weights[i * outputs + j]` connects input `i` to output `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Layer<T> {
    pub inputs: usize,
    pub outputs: usize,
    pub weights: Vec<T>,
    pub biases: Vec<T>,
}

impl<T: Scalar> Layer<T> {
    pub fn zeros(inputs: usize, outputs: usize) -> Self {
        Self {
            inputs,
            outputs,
            weights: vec![T::zero(); inputs * outputs],
            biases: vec![T::zero(); outputs],
        }
    }

    pub fn weight(&self, i: usize, j: usize) -> T {
        self.weights[i * self.outputs + j]
    }

    fn affine(&self, x: &[T]) -> Vec<T> {
        let mut z = self.biases.clone();
        for (i, &xi) in x.iter().enumerate() {
            let row = &self.weights[i * self.outputs..(i + 1) * self.outputs];
            for (zj, &w) in z.iter_mut().zip(row) {
                *zj = *zj + xi * w;
            }
        }
        z
    }
}

/// Weights and biases of every layer, input to output.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkParams<T> {
    pub layers: Vec<Layer<T>>,
}

/// Per-layer outputs of a forward pass; `values[0]` is the input.
#[derive(Debug, Clone, PartialEq)]
pub struct Activations<T> {
    pub values: Vec<Vec<T>>,
}

pub const INPUT_SIZE: usize = 3;

impl<T: Scalar> NetworkParams<T> {
    /// All-zero network with the given layer sizes, e.g. `[3, 8, 6, 1]`.
    pub fn zeros(sizes: &[usize]) -> Self {
        Self {
            layers: sizes.windows(2).map(|w| Layer::zeros(w[0], w[1])).collect(),
        }
    }

    /// `[3, h1, h2, 1]` with weights and biases drawn from `U(-1/√fan_in, 1/√fan_in)`.
    pub fn init(seed: u64, h1: usize, h2: usize) -> Result<Self> {
        if h1 == 0 || h2 == 0 {
            return Err(FlowError::Config("hidden layer sizes must be >= 1".into()));
        }
        Ok(Self::init_with_sizes(&[INPUT_SIZE, h1, h2, 1], seed))
    }

    pub fn init_with_sizes(sizes: &[usize], seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut net = Self::zeros(sizes);
        for layer in &mut net.layers {
            let r = 1.0 / (layer.inputs as f64).sqrt();
            let dist = Uniform::new_inclusive(-r, r);
            for w in layer.weights.iter_mut().chain(layer.biases.iter_mut()) {
                *w = T::of(dist.sample(&mut rng));
            }
        }
        net
    }

    pub fn layer_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![self.layers.first().map_or(0, |l| l.inputs)];
        sizes.extend(self.layers.iter().map(|l| l.outputs));
        sizes
    }

    pub fn param_count(&self) -> usize {
        self.layers
            .iter()
            .map(|l| l.weights.len() + l.biases.len())
            .sum()
    }

    /// Every parameter in a fixed order: per layer, weights then biases.
    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.layers
            .iter()
            .flat_map(|l| l.weights.iter().chain(l.biases.iter()))
    }

    pub fn iter_mut(&mut self) -> impl Iterator<Item = &mut T> {
        self.layers
            .iter_mut()
            .flat_map(|l| l.weights.iter_mut().chain(l.biases.iter_mut()))
    }

    pub fn is_finite(&self) -> bool {
        self.iter().all(|w| w.is_finite())
    }

    /// Forward pass: tanh on hidden layers, identity on the output layer.
    pub fn forward(&self, x: &[T]) -> (T, Activations<T>) {
        let mut values = vec![x.to_vec()];
        let last = self.layers.len().saturating_sub(1);
        for (k, layer) in self.layers.iter().enumerate() {
            let mut z = layer.affine(values.last().expect("non-empty"));
            if k != last {
                z.iter_mut().for_each(|v| *v = v.tanh());
            }
            values.push(z);
        }
        let y = values
            .last()
            .and_then(|v| v.first())
            .copied()
            .unwrap_or_else(T::zero);
        (y, Activations { values })
    }

    pub fn predict(&self, x: &[T]) -> T {
        self.forward(x).0
    }
}

/// Mean squared error of a batch.
pub fn mse<T: Scalar>(predictions: &[T], targets: &[T]) -> Result<T> {
    if predictions.is_empty() {
        return Err(FlowError::Config("mse of an empty batch".into()));
    }
    if predictions.len() != targets.len() {
        return Err(FlowError::Config(format!(
            "{} predictions for {} targets",
            predictions.len(),
            targets.len()
        )));
    }
    let sum = predictions
        .iter()
        .zip(targets)
        .fold(T::zero(), |acc, (&p, &t)| acc + (p - t) * (p - t));
    Ok(sum / T::of(predictions.len() as f64))
}

/// Batch MSE and its exact gradient with respect to every parameter.
///
/// The gradient is returned in the shape of the network itself.
pub fn gradients<T: Scalar>(
    params: &NetworkParams<T>,
    inputs: &[Vec<T>],
    targets: &[T],
) -> Result<(T, NetworkParams<T>)> {
    if inputs.is_empty() || inputs.len() != targets.len() {
        return Err(FlowError::Config(format!(
            "gradient batch needs matching non-empty inputs ({}) and targets ({})",
            inputs.len(),
            targets.len()
        )));
    }
    let n = T::of(inputs.len() as f64);
    let two = T::of(2.0);
    let mut grad = NetworkParams::zeros(&params.layer_sizes());
    let mut sq = T::zero();

    for (x, &t) in inputs.iter().zip(targets) {
        let (y, acts) = params.forward(x);
        sq = sq + (y - t) * (y - t);
        let mut delta = vec![two * (y - t) / n];
        for k in (0..params.layers.len()).rev() {
            let layer = &params.layers[k];
            let a_in = &acts.values[k];
            let g = &mut grad.layers[k];
            for (i, &ai) in a_in.iter().enumerate() {
                for (j, &dj) in delta.iter().enumerate() {
                    let idx = i * layer.outputs + j;
                    g.weights[idx] = g.weights[idx] + ai * dj;
                }
            }
            for (gb, &dj) in g.biases.iter_mut().zip(&delta) {
                *gb = *gb + dj;
            }
            if k > 0 {
                // a_in is a tanh output here: d tanh = 1 - a².
                delta = a_in
                    .iter()
                    .enumerate()
                    .map(|(i, &ai)| {
                        let back = delta
                            .iter()
                            .enumerate()
                            .fold(T::zero(), |acc, (j, &dj)| acc + layer.weight(i, j) * dj);
                        back * (T::one() - ai * ai)
                    })
                    .collect();
            }
        }
    }
    Ok((sq / n, grad))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn init_is_seeded() {
        let a = NetworkParams::<f64>::init(1, 8, 6).unwrap();
        let b = NetworkParams::<f64>::init(1, 8, 6).unwrap();
        let c = NetworkParams::<f64>::init(2, 8, 6).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(NetworkParams::<f64>::init(1, 0, 6).is_err());
    }

    #[test]
    fn init_shapes_and_bounds() {
        let net = NetworkParams::<f64>::init(3, 8, 6).unwrap();
        let shapes: Vec<(usize, usize, usize)> = net
            .layers
            .iter()
            .map(|l| (l.inputs, l.outputs, l.biases.len()))
            .collect();
        assert_eq!(shapes, vec![(3, 8, 8), (8, 6, 6), (6, 1, 1)]);
        assert_eq!(net.param_count(), 3 * 8 + 8 + 8 * 6 + 6 + 6 + 1);
        for l in &net.layers {
            let r = 1.0 / (l.inputs as f64).sqrt();
            assert!(l.weights.iter().chain(&l.biases).all(|w| w.abs() <= r));
        }
    }

    #[test]
    fn zero_network_outputs_zero() {
        let net = NetworkParams::<f64>::zeros(&[3, 8, 6, 1]);
        assert_eq!(net.predict(&[0.3, -0.7, 1.0]), 0.0);
    }

    #[test]
    fn hidden_activations_are_bounded() {
        let net = NetworkParams::<f64>::init(9, 8, 6).unwrap();
        let (_, acts) = net.forward(&[50.0, -80.0, 3.0]);
        for hidden in &acts.values[1..acts.values.len() - 1] {
            assert!(hidden.iter().all(|h| h.abs() <= 1.0));
        }
    }

    #[test]
    fn scalar_network_by_hand() {
        // y = w * tanh(v * x)
        let mut net = NetworkParams::<f64>::zeros(&[1, 1, 1]);
        net.layers[0].weights[0] = 0.7;
        net.layers[1].weights[0] = -1.3;
        let x = 0.4;
        assert_abs_diff_eq!(
            net.predict(&[x]),
            -1.3 * (0.7f64 * 0.4).tanh(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn mse_cases() {
        assert_eq!(mse(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), 0.0);
        assert_eq!(mse(&[1.0, 2.0], &[2.0, 2.0]).unwrap(), 0.5);
        assert!(mse::<f64>(&[], &[]).is_err());
        assert!(mse(&[1.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn gradient_vanishes_at_a_minimum() {
        // y = w * tanh(v * x) with target exactly reached.
        let mut net = NetworkParams::<f64>::zeros(&[1, 1, 1]);
        net.layers[0].weights[0] = 0.5;
        net.layers[1].weights[0] = 2.0;
        let x = vec![vec![1.0]];
        let t = vec![net.predict(&x[0])];
        let (loss, g) = gradients(&net, &x, &t).unwrap();
        assert_eq!(loss, 0.0);
        assert!(g.iter().all(|&v| v == 0.0));
    }
}
