//! Full-batch resilient backpropagation (Rprop without weight backtracking).

use serde::{Deserialize, Serialize};

use crate::dataset::ExperimentRecord;
use crate::error::{FlowError, Result};
use crate::kb::{FlowPattern, OperatingPoint};
use crate::scalar::Scalar;

use super::network::{gradients, NetworkParams};
use super::normalize::Normalizer;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub epochs: usize,
    /// Training stops once the batch MSE reaches this value. A non-finite goal disables the check.
    pub goal_mse: f64,
    pub delta0: f64,
    pub eta_plus: f64,
    pub eta_minus: f64,
    pub delta_max: f64,
    pub delta_min: f64,
    pub seed: u64,
    pub hidden: [usize; 2],
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            epochs: 300,
            goal_mse: 1e-5,
            delta0: 0.05,
            eta_plus: 1.2,
            eta_minus: 0.5,
            delta_max: 50.0,
            delta_min: 1e-6,
            seed: 42,
            hidden: [8, 6],
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(FlowError::Config(m.to_string()));
        if self.epochs == 0 {
            return fail("epochs must be > 0");
        }
        if !(0.0 < self.eta_minus && self.eta_minus < 1.0 && 1.0 < self.eta_plus) {
            return fail("Rprop factors need 0 < eta_minus < 1 < eta_plus");
        }
        if !(self.delta_min < self.delta0 && self.delta0 < self.delta_max) || self.delta_min <= 0.0
        {
            return fail("step sizes need 0 < delta_min < delta0 < delta_max");
        }
        if self.hidden.contains(&0) {
            return fail("hidden layer sizes must be >= 1");
        }
        if self.goal_mse.is_nan() {
            return fail("goal_mse is NaN");
        }
        Ok(())
    }
}

/// Per-parameter step sizes and the gradient remembered from the previous epoch.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainState<T> {
    pub step: Vec<T>,
    pub prev_grad: Vec<T>,
    pub epoch: usize,
}

impl<T: Scalar> TrainState<T> {
    pub fn new(param_count: usize, config: &TrainConfig) -> Self {
        Self {
            step: vec![T::of(config.delta0); param_count],
            prev_grad: vec![T::zero(); param_count],
            epoch: 0,
        }
    }
}

/// One Rprop update.
///
/// Same gradient sign as last time grows the step by `eta_plus` (capped at `delta_max`);
/// a sign flip shrinks it by `eta_minus` (floored at `delta_min`) and forgets the
/// remembered gradient. Each parameter then moves by `-sign(g) * step`.
pub fn rprop_step<T: Scalar>(
    state: &mut TrainState<T>,
    grad: &NetworkParams<T>,
    params: &mut NetworkParams<T>,
    config: &TrainConfig,
) {
    let eta_plus = T::of(config.eta_plus);
    let eta_minus = T::of(config.eta_minus);
    let delta_max = T::of(config.delta_max);
    let delta_min = T::of(config.delta_min);
    for (((w, &g), step), prev) in params
        .iter_mut()
        .zip(grad.iter())
        .zip(state.step.iter_mut())
        .zip(state.prev_grad.iter_mut())
    {
        let trend = g * *prev;
        if trend > T::zero() {
            *step = (*step * eta_plus).min(delta_max);
            *prev = g;
        } else if trend < T::zero() {
            *step = (*step * eta_minus).max(delta_min);
            *prev = T::zero();
        } else {
            *prev = g;
        }
        if g > T::zero() {
            *w = *w - *step;
        } else if g < T::zero() {
            *w = *w + *step;
        }
    }
    state.epoch += 1;
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainHistory {
    /// `mse[0]` is the initial error, `mse[k]` the error after `k` epochs.
    pub mse: Vec<f64>,
    pub epochs_run: usize,
    /// Whether the MSE goal was reached. `false` also flags data the network cannot fit.
    pub converged: bool,
}

impl TrainHistory {
    pub fn final_mse(&self) -> f64 {
        *self.mse.last().expect("history holds the initial error")
    }
}

/// A trained network together with everything needed to apply it.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainedModel<T = f64> {
    pub params: NetworkParams<T>,
    pub normalizer: Normalizer,
    pub config: TrainConfig,
    pub history: TrainHistory,
}

pub(crate) fn features(r: &OperatingPoint<f64>) -> Vec<f64> {
    vec![r.angle, r.flow, r.watercut]
}

/// Trains on the numeric pattern codes with full-batch Rprop.
pub fn train<T: Scalar>(
    config: &TrainConfig,
    records: &[ExperimentRecord],
) -> Result<TrainedModel<T>> {
    config.validate()?;
    if records.len() < 2 {
        return Err(FlowError::Config(format!(
            "training needs at least 2 records, got {}",
            records.len()
        )));
    }
    let raw: Vec<Vec<f64>> = records.iter().map(|r| features(&r.point())).collect();
    let normalizer = Normalizer::fit(&raw);
    let inputs: Vec<Vec<T>> = raw.iter().map(|x| normalizer.normalize(x)).collect();
    let targets: Vec<T> = records
        .iter()
        .map(|r| T::of(f64::from(r.pattern.code())))
        .collect();

    let [h1, h2] = config.hidden;
    let mut params = NetworkParams::<T>::init(config.seed, h1, h2)?;
    let mut state = TrainState::new(params.param_count(), config);
    let goal_reached = |e: T| config.goal_mse.is_finite() && e.as_f64() <= config.goal_mse;

    let (mut err, mut grad) = gradients(&params, &inputs, &targets)?;
    let mut history = vec![err.as_f64()];
    while state.epoch < config.epochs && !goal_reached(err) {
        rprop_step(&mut state, &grad, &mut params, config);
        (err, grad) = gradients(&params, &inputs, &targets)?;
        history.push(err.as_f64());
    }
    Ok(TrainedModel {
        params,
        normalizer,
        config: config.clone(),
        history: TrainHistory {
            mse: history,
            epochs_run: state.epoch,
            converged: goal_reached(err),
        },
    })
}

/// Nearest pattern code to a raw network output, clamped to `[1, 4]`; halves round down.
pub fn code_to_pattern(y: f64) -> FlowPattern {
    let code = if y.is_nan() {
        1.0
    } else {
        (y - 0.5).ceil().clamp(1.0, 4.0)
    };
    FlowPattern::from_code(code as u8).expect("clamped to a valid code")
}

impl<T: Scalar> TrainedModel<T> {
    pub fn raw_output(&self, point: &OperatingPoint<f64>) -> f64 {
        let x: Vec<T> = self.normalizer.normalize(&features(point));
        self.params.predict(&x).as_f64()
    }

    pub fn predict_class(&self, point: &OperatingPoint<f64>) -> FlowPattern {
        code_to_pattern(self.raw_output(point))
    }
}
