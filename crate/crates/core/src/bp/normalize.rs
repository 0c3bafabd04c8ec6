use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// Per-feature affine map of the training range onto `[-1, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Normalizer {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

impl Normalizer {
    pub fn fit(rows: &[Vec<f64>]) -> Self {
        let dim = rows.first().map_or(0, Vec::len);
        let mut min = vec![f64::INFINITY; dim];
        let mut max = vec![f64::NEG_INFINITY; dim];
        for row in rows {
            for (k, &x) in row.iter().enumerate() {
                min[k] = min[k].min(x);
                max[k] = max[k].max(x);
            }
        }
        Self { min, max }
    }

    /// Constant features map to 0.
    pub fn normalize<T: Scalar>(&self, x: &[f64]) -> Vec<T> {
        x.iter()
            .enumerate()
            .map(|(k, &v)| {
                let span = self.max[k] - self.min[k];
                if span > 0.0 {
                    T::of(2.0 * (v - self.min[k]) / span - 1.0)
                } else {
                    T::zero()
                }
            })
            .collect()
    }

    pub fn denormalize<T: Scalar>(&self, z: &[T]) -> Vec<f64> {
        z.iter()
            .enumerate()
            .map(|(k, &v)| {
                let span = self.max[k] - self.min[k];
                self.min[k] + (v.as_f64() + 1.0) * 0.5 * span
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn maps_range_to_unit_box() {
        let n = Normalizer::fit(&[vec![0.0, 100.0], vec![90.0, 600.0]]);
        assert_eq!(n.normalize::<f64>(&[0.0, 100.0]), vec![-1.0, -1.0]);
        assert_eq!(n.normalize::<f64>(&[90.0, 600.0]), vec![1.0, 1.0]);
        assert_eq!(n.normalize::<f64>(&[45.0, 350.0]), vec![0.0, 0.0]);
    }

    proptest! {
        #[test]
        fn round_trip(a in 0.0f64..=90.0, q in 100.0f64..=600.0, w in 0.0f64..=1.0) {
            let n = Normalizer::fit(&[vec![0.0, 100.0, 0.2], vec![90.0, 600.0, 0.9]]);
            let back = n.denormalize(&n.normalize::<f64>(&[a, q, w]));
            for (x, y) in back.iter().zip([a, q, w]) {
                prop_assert!((x - y).abs() <= 1e-12 * y.abs().max(1.0));
            }
        }
    }
}
