//! Flow-pattern maps over a (flow, water cut) grid at fixed inclination.

use std::fmt::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::{ANGLE_RANGE, FLOW_RANGE, WATERCUT_RANGE};
use crate::error::{FlowError, Result};
use crate::fuzzy::FuzzySystem;
use crate::kb::{classify, FlowPattern, OperatingPoint};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Axis {
    pub fn new(min: f64, max: f64, steps: usize) -> Self {
        Self { min, max, steps }
    }

    /// Evenly spaced values; the last one is exactly `max`.
    pub fn values(&self) -> Vec<f64> {
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.max
                } else {
                    self.min + (self.max - self.min) * i as f64 / (self.steps - 1) as f64
                }
            })
            .collect()
    }

    fn check(&self, name: &str, (lo, hi): (f64, f64)) -> Result<()> {
        if self.steps < 2 {
            return Err(FlowError::Config(format!(
                "{name} axis needs at least 2 steps"
            )));
        }
        if !(self.min < self.max && self.min >= lo && self.max <= hi) {
            return Err(FlowError::Config(format!(
                "{name} axis [{}, {}] must be increasing and inside [{lo}, {hi}]",
                self.min, self.max
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub angle: f64,
    pub flow: Axis,
    pub watercut: Axis,
}

impl SweepSpec {
    /// Full flow and water-cut universes at `steps` x `steps`.
    pub fn full(angle: f64, steps: usize) -> Self {
        Self {
            angle,
            flow: Axis::new(FLOW_RANGE.0, FLOW_RANGE.1, steps),
            watercut: Axis::new(WATERCUT_RANGE.0, WATERCUT_RANGE.1, steps),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub flow: f64,
    pub watercut: f64,
    pub pattern: FlowPattern,
    pub phi: [f64; 4],
}

/// Cells ordered by flow, then water cut.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub spec: SweepSpec,
    pub cells: Vec<SweepCell>,
}

pub fn run_sweep(system: &FuzzySystem<f64>, spec: &SweepSpec) -> Result<SweepGrid> {
    if !(spec.angle >= ANGLE_RANGE.0 && spec.angle <= ANGLE_RANGE.1) {
        return Err(FlowError::Config(format!(
            "sweep angle {} outside [{}, {}]",
            spec.angle, ANGLE_RANGE.0, ANGLE_RANGE.1
        )));
    }
    spec.flow.check("flow", FLOW_RANGE)?;
    spec.watercut.check("water-cut", WATERCUT_RANGE)?;

    let watercuts = spec.watercut.values();
    let points: Vec<(f64, f64)> = spec
        .flow
        .values()
        .into_iter()
        .flat_map(|q| watercuts.iter().map(move |&w| (q, w)))
        .collect();
    let cells = points
        .into_par_iter()
        .map(|(flow, watercut)| {
            let r = classify(system, &OperatingPoint::new(spec.angle, flow, watercut))?;
            Ok(SweepCell {
                flow,
                watercut,
                pattern: r.predicted,
                phi: r.phi,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepGrid { spec: *spec, cells })
}

const COLORS: [&str; 4] = ["#d95f02", "#7570b3", "#1b9e77", "#e7298a"];
const CELL_PX: usize = 10;

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

impl SweepGrid {
    pub fn count(&self, pattern: FlowPattern) -> usize {
        self.cells.iter().filter(|c| c.pattern == pattern).count()
    }

    /// `flow_m3d,watercut_frac,pattern`, optionally followed by the four Φ columns.
    pub fn to_csv(&self, with_phi: bool) -> String {
        let mut out = String::from("flow_m3d,watercut_frac,pattern");
        if with_phi {
            out.push_str(",phi_wo,phi_st,phi_dow_w,phi_dwo_ow");
        }
        out.push('\n');
        for c in &self.cells {
            let _ = write!(out, "{},{},{}", c.flow, c.watercut, c.pattern.label());
            if with_phi {
                for p in c.phi {
                    let _ = write!(out, ",{p}");
                }
            }
            out.push('\n');
        }
        out
    }

    /// Raster of cells (flow left to right, water cut bottom to top) with a legend.
    pub fn to_svg(&self) -> String {
        let nf = self.spec.flow.steps;
        let nw = self.spec.watercut.steps;
        let margin = 40;
        let legend_w = 110;
        let width = margin * 2 + nf * CELL_PX + legend_w;
        let height = margin * 2 + nw * CELL_PX;
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
        );
        let _ = writeln!(
            out,
            r#"<title>Flow-pattern map at {}°</title>"#,
            self.spec.angle
        );
        for (k, c) in self.cells.iter().enumerate() {
            let i = k / nw;
            let j = k % nw;
            let x = margin + i * CELL_PX;
            let y = margin + (nw - 1 - j) * CELL_PX;
            let _ = writeln!(
                out,
                r#"<rect x="{x}" y="{y}" width="{CELL_PX}" height="{CELL_PX}" fill="{}" data-flow="{}" data-watercut="{}" data-pattern="{}"/>"#,
                COLORS[c.pattern.index()],
                c.flow,
                c.watercut,
                xml_escape(c.pattern.label())
            );
        }
        let bottom = margin + nw * CELL_PX;
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="11" text-anchor="middle">total flow (m³/d) {} – {}</text>"#,
            margin + nf * CELL_PX / 2,
            bottom + 18,
            self.spec.flow.min,
            self.spec.flow.max
        );
        let _ = writeln!(
            out,
            r#"<text x="12" y="{}" font-size="11" text-anchor="middle" transform="rotate(-90 12 {})">water cut {} – {}</text>"#,
            margin + nw * CELL_PX / 2,
            margin + nw * CELL_PX / 2,
            self.spec.watercut.min,
            self.spec.watercut.max
        );
        let lx = margin * 2 + nf * CELL_PX - 20;
        for p in FlowPattern::ALL {
            let ly = margin + p.index() * 20;
            let _ = writeln!(
                out,
                r#"<rect x="{lx}" y="{ly}" width="12" height="12" fill="{}"/><text x="{}" y="{}" font-size="11">{}</text>"#,
                COLORS[p.index()],
                lx + 18,
                ly + 10,
                xml_escape(p.label())
            );
        }
        out.push_str("</svg>\n");
        out
    }
}
