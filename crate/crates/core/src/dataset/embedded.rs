//! The 60-point design-grid dataset.
//!
//! 18 points carry their published labels. The other 42 labels are reconstructed:
//! they never contradict a published neighbour at the same angle and flow, keep
//! 60° free of separated flow, and give separated flow at 85° and 90° for the
//! lowest flow rate.

use crate::kb::FlowPattern::{
    self, DualDispersion as DWO, OilInWaterOverWater as DOW, Stratified as ST, WaterInOil as WO,
};

use super::record::{ExperimentRecord, Provenance};

/// Published test points: (angle °, flow m³/d, water cut, observed pattern).
pub const PAPER_TEST_POINTS: [(f64, f64, f64, FlowPattern); 18] = [
    (0.0, 100.0, 0.8, DOW),
    (0.0, 100.0, 0.9, DOW),
    (0.0, 300.0, 0.2, DOW),
    (0.0, 300.0, 0.4, DOW),
    (0.0, 600.0, 0.2, WO),
    (60.0, 100.0, 0.2, DOW),
    (60.0, 100.0, 0.4, DOW),
    (60.0, 300.0, 0.6, WO),
    (60.0, 300.0, 0.8, DWO),
    (60.0, 600.0, 0.9, DWO),
    (85.0, 100.0, 0.2, ST),
    (85.0, 100.0, 0.9, ST),
    (85.0, 300.0, 0.8, DOW),
    (85.0, 300.0, 0.9, DOW),
    (85.0, 600.0, 0.6, WO),
    (90.0, 100.0, 0.8, ST),
    (90.0, 300.0, 0.4, DWO),
    (90.0, 600.0, 0.8, DWO),
];

const RECONSTRUCTED_POINTS: [(f64, f64, f64, FlowPattern); 42] = [
    (0.0, 100.0, 0.2, DOW),
    (0.0, 100.0, 0.4, DOW),
    (0.0, 100.0, 0.6, DOW),
    (0.0, 300.0, 0.6, DOW),
    (0.0, 300.0, 0.8, DOW),
    (0.0, 300.0, 0.9, DOW),
    (0.0, 600.0, 0.4, WO),
    (0.0, 600.0, 0.6, DWO),
    (0.0, 600.0, 0.8, DOW),
    (0.0, 600.0, 0.9, DOW),
    (60.0, 100.0, 0.6, DOW),
    (60.0, 100.0, 0.8, DOW),
    (60.0, 100.0, 0.9, DOW),
    (60.0, 300.0, 0.2, WO),
    (60.0, 300.0, 0.4, WO),
    (60.0, 300.0, 0.9, DWO),
    (60.0, 600.0, 0.2, WO),
    (60.0, 600.0, 0.4, WO),
    (60.0, 600.0, 0.6, WO),
    (60.0, 600.0, 0.8, DWO),
    (85.0, 100.0, 0.4, ST),
    (85.0, 100.0, 0.6, ST),
    (85.0, 100.0, 0.8, ST),
    (85.0, 300.0, 0.2, DWO),
    (85.0, 300.0, 0.4, DWO),
    (85.0, 300.0, 0.6, DWO),
    (85.0, 600.0, 0.2, WO),
    (85.0, 600.0, 0.4, WO),
    (85.0, 600.0, 0.8, DWO),
    (85.0, 600.0, 0.9, DWO),
    (90.0, 100.0, 0.2, ST),
    (90.0, 100.0, 0.4, ST),
    (90.0, 100.0, 0.6, ST),
    (90.0, 100.0, 0.9, ST),
    (90.0, 300.0, 0.2, DWO),
    (90.0, 300.0, 0.6, DWO),
    (90.0, 300.0, 0.8, DOW),
    (90.0, 300.0, 0.9, DOW),
    (90.0, 600.0, 0.2, WO),
    (90.0, 600.0, 0.4, WO),
    (90.0, 600.0, 0.6, WO),
    (90.0, 600.0, 0.9, DWO),
];

/// All 60 records in design-grid order (angle, then flow, then water cut).
pub fn embedded_dataset() -> Vec<ExperimentRecord> {
    let tagged = |rows: &[(f64, f64, f64, FlowPattern)], provenance| {
        rows.iter()
            .map(|&(angle, flow, watercut, pattern)| ExperimentRecord {
                angle,
                flow,
                watercut,
                pattern,
                provenance,
            })
            .collect::<Vec<_>>()
    };
    let mut all = tagged(&PAPER_TEST_POINTS, Provenance::PaperTable);
    all.extend(tagged(&RECONSTRUCTED_POINTS, Provenance::Reconstructed));
    all.sort_by(|a, b| {
        (a.angle, a.flow, a.watercut)
            .partial_cmp(&(b.angle, b.flow, b.watercut))
            .expect("finite")
    });
    all
}
