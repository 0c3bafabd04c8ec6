use crate::error::{FlowError, Result};
use crate::fuzzy::{ClampNote, FiredRule, FuzzySystem};
use crate::scalar::Scalar;

use super::default::{ANGLE, FLOW, WATERCUT};
use super::pattern::{FlowPattern, OperatingPoint};

/// Per-pattern confidences Φ, the winning pattern and the inference trace.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationResult<T = f64> {
    /// Φ per pattern, indexed by [`FlowPattern::index`].
    pub phi: [T; 4],
    pub predicted: FlowPattern,
    /// Fired rules per pattern, indexed like `phi`.
    pub trace: [Vec<FiredRule<T>>; 4],
    pub clamps: Vec<ClampNote<T>>,
}

impl<T: Scalar> ClassificationResult<T> {
    pub fn phi_of(&self, pattern: FlowPattern) -> T {
        self.phi[pattern.index()]
    }
}

/// Runs every rule at `point` and picks the pattern with the largest Φ.
///
/// Ties resolve to the pattern with the lowest numeric code.
pub fn classify<T: Scalar>(
    system: &FuzzySystem<T>,
    point: &OperatingPoint<T>,
) -> Result<ClassificationResult<T>> {
    let mut inputs = vec![T::zero(); system.inputs().len()];
    for (name, value) in [
        (ANGLE, point.angle),
        (FLOW, point.flow),
        (WATERCUT, point.watercut),
    ] {
        let i = system
            .inputs()
            .iter()
            .position(|v| v.name == name)
            .ok_or_else(|| FlowError::UnknownVariable(name.to_string()))?;
        inputs[i] = value;
    }
    let class_idx = FlowPattern::ALL.map(|p| {
        system
            .class_index(p.label())
            .ok_or_else(|| FlowError::UnknownClass(p.label().into()))
    });
    let class_idx = {
        let mut out = [0usize; 4];
        for (o, r) in out.iter_mut().zip(class_idx) {
            *o = r?;
        }
        out
    };

    let mut inference = system.infer(&inputs)?;
    let clamps = inference.clamps().cloned().collect();
    let phi = class_idx.map(|c| inference.classes[c].phi);
    let trace = class_idx.map(|c| std::mem::take(&mut inference.classes[c].fired));

    let mut best = 0;
    for i in 1..4 {
        if phi[i] > phi[best] {
            best = i;
        }
    }
    Ok(ClassificationResult {
        phi,
        predicted: FlowPattern::ALL[best],
        trace,
        clamps,
    })
}
