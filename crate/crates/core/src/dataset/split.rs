use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{FlowError, Result};

use super::embedded::PAPER_TEST_POINTS;
use super::record::ExperimentRecord;

/// How to divide records into training and test sets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SplitSpec {
    /// Test set = the 18 published test points, matched by coordinates.
    Paper,
    /// Deterministic shuffle; `test_fraction` of the records (rounded) go to test.
    SeededRandom { test_fraction: f64, seed: u64 },
}

/// Returns `(train, test)`, each in the input order.
pub fn split(
    records: &[ExperimentRecord],
    spec: SplitSpec,
) -> Result<(Vec<ExperimentRecord>, Vec<ExperimentRecord>)> {
    if records.is_empty() {
        return Err(FlowError::Split("no records to split".into()));
    }
    let is_test: Vec<bool> = match spec {
        SplitSpec::Paper => {
            let mut flags = vec![false; records.len()];
            for &(a, q, w, _) in &PAPER_TEST_POINTS {
                let i = records
                    .iter()
                    .position(|r| r.same_point(a, q, w))
                    .ok_or_else(|| {
                        FlowError::Split(format!(
                            "dataset lacks published test point ({a}°, {q} m³/d, {w})"
                        ))
                    })?;
                flags[i] = true;
            }
            flags
        }
        SplitSpec::SeededRandom {
            test_fraction,
            seed,
        } => {
            if !(0.0..=1.0).contains(&test_fraction) {
                return Err(FlowError::Split(format!(
                    "test fraction {test_fraction} outside [0, 1]"
                )));
            }
            let n_test = (test_fraction * records.len() as f64).round() as usize;
            if n_test == 0 {
                return Err(FlowError::Split("test set would be empty".into()));
            }
            if n_test == records.len() {
                return Err(FlowError::Split("training set would be empty".into()));
            }
            let mut order: Vec<usize> = (0..records.len()).collect();
            order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            let mut flags = vec![false; records.len()];
            for &i in &order[..n_test] {
                flags[i] = true;
            }
            flags
        }
    };
    let (test, train): (Vec<_>, Vec<_>) = records.iter().zip(&is_test).partition(|(_, &t)| t);
    Ok((
        train.into_iter().map(|(r, _)| *r).collect(),
        test.into_iter().map(|(r, _)| *r).collect(),
    ))
}
