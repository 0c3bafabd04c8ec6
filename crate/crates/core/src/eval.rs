//! Head-to-head evaluation of the fuzzy system and the neural baseline.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::bp::TrainedModel;
use crate::dataset::{ExperimentRecord, Provenance};
use crate::error::Result;
use crate::fuzzy::FuzzySystem;
use crate::kb::{classify, FlowPattern};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationRow {
    pub angle: f64,
    pub flow: f64,
    pub watercut: f64,
    pub provenance: Provenance,
    pub actual: FlowPattern,
    pub fis: FlowPattern,
    /// Φ per pattern in code order.
    pub fis_phi: [f64; 4],
    pub bp: Option<FlowPattern>,
}

/// Accuracy and confusion matrix; rows are actual patterns, columns predictions.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Score {
    pub correct: usize,
    pub total: usize,
    pub accuracy: f64,
    pub confusion: [[usize; 4]; 4],
}

impl Score {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (FlowPattern, FlowPattern)>) -> Self {
        let mut confusion = [[0usize; 4]; 4];
        for (actual, predicted) in pairs {
            confusion[actual.index()][predicted.index()] += 1;
        }
        let correct = (0..4).map(|i| confusion[i][i]).sum();
        let total: usize = confusion.iter().flatten().sum();
        let accuracy = if total == 0 {
            0.0
        } else {
            correct as f64 / total as f64
        };
        Self {
            correct,
            total,
            accuracy,
            confusion,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelReport {
    pub overall: Score,
    pub paper_table: Score,
    pub reconstructed: Score,
}

impl ModelReport {
    fn from_rows(rows: &[EvaluationRow], pick: impl Fn(&EvaluationRow) -> FlowPattern) -> Self {
        let subset = |p: Option<Provenance>| {
            Score::from_pairs(
                rows.iter()
                    .filter(|r| p.is_none_or(|p| r.provenance == p))
                    .map(|r| (r.actual, pick(r))),
            )
        };
        Self {
            overall: subset(None),
            paper_table: subset(Some(Provenance::PaperTable)),
            reconstructed: subset(Some(Provenance::Reconstructed)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub rows: Vec<EvaluationRow>,
    pub fis: ModelReport,
    pub bp: Option<ModelReport>,
    /// Indices into `rows` where the two models predict different patterns.
    pub disagreements: Vec<usize>,
}

pub fn evaluate(
    system: &FuzzySystem<f64>,
    bp: Option<&TrainedModel<f64>>,
    records: &[ExperimentRecord],
) -> Result<EvaluationReport> {
    let rows = records
        .iter()
        .map(|r| {
            let point = r.point();
            let fis = classify(system, &point)?;
            Ok(EvaluationRow {
                angle: r.angle,
                flow: r.flow,
                watercut: r.watercut,
                provenance: r.provenance,
                actual: r.pattern,
                fis: fis.predicted,
                fis_phi: fis.phi,
                bp: bp.map(|m| m.predict_class(&point)),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let fis = ModelReport::from_rows(&rows, |r| r.fis);
    let bp_report = bp.map(|_| ModelReport::from_rows(&rows, |r| r.bp.expect("bp evaluated")));
    let disagreements = rows
        .iter()
        .enumerate()
        .filter(|(_, r)| r.bp.is_some_and(|b| b != r.fis))
        .map(|(i, _)| i)
        .collect();
    Ok(EvaluationReport {
        rows,
        fis,
        bp: bp_report,
        disagreements,
    })
}

impl EvaluationReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Plain-text comparison table with accuracies and confusion matrices.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let with_bp = self.bp.is_some();
        let _ = write!(
            out,
            "{:>9} {:>10} {:>9}  {:<9} {:<9}",
            "Angle(°)", "Flow(m³/d)", "Water-cut", "Actual", "FIS"
        );
        if with_bp {
            let _ = write!(out, " {:<9}", "BP");
        }
        out.push('\n');
        for r in &self.rows {
            let _ = write!(
                out,
                "{:>9} {:>10} {:>9}  {:<9} {:<9}",
                r.angle,
                r.flow,
                format!("{}%", (r.watercut * 100.0).round()),
                r.actual,
                r.fis
            );
            if let Some(bp) = r.bp {
                let _ = write!(out, " {:<9}", bp);
            }
            let mark = |ok: bool| if ok { "" } else { " *" };
            let fis_ok = r.fis == r.actual;
            let bp_ok = r.bp.is_none_or(|b| b == r.actual);
            out.push_str(mark(fis_ok && bp_ok));
            out.push('\n');
        }
        out.push('\n');
        write_model(&mut out, "FIS", &self.fis);
        if let Some(bp) = &self.bp {
            write_model(&mut out, "BP", bp);
            let _ = writeln!(
                out,
                "FIS and BP disagree on {} of {} points",
                self.disagreements.len(),
                self.rows.len()
            );
        }
        out
    }
}

fn write_model(out: &mut String, name: &str, report: &ModelReport) {
    let s = &report.overall;
    let _ = writeln!(
        out,
        "{name} accuracy: {}/{} = {:.4}",
        s.correct, s.total, s.accuracy
    );
    for (label, sub) in [
        ("paper-table", &report.paper_table),
        ("reconstructed", &report.reconstructed),
    ] {
        if sub.total > 0 {
            let _ = writeln!(
                out,
                "  {label}: {}/{} = {:.4}",
                sub.correct, sub.total, sub.accuracy
            );
        }
    }
    let _ = writeln!(out, "  confusion (rows actual, columns predicted):");
    let _ = write!(out, "  {:<9}", "");
    for p in FlowPattern::ALL {
        let _ = write!(out, " {:>9}", p);
    }
    out.push('\n');
    for p in FlowPattern::ALL {
        let _ = write!(out, "  {:<9}", p);
        for n in s.confusion[p.index()] {
            let _ = write!(out, " {:>9}", n);
        }
        out.push('\n');
    }
}
