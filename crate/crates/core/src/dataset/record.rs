use serde::{Deserialize, Serialize};

use crate::kb::{FlowPattern, OperatingPoint};

/// Where a record's label comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// One of the 18 published test points.
    PaperTable,
    /// A design-grid point whose label was reconstructed.
    Reconstructed,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::PaperTable => "paper-table",
            Provenance::Reconstructed => "reconstructed",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "paper-table" => Some(Provenance::PaperTable),
            "reconstructed" => Some(Provenance::Reconstructed),
            _ => None,
        }
    }
}

/// One labeled operating point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub angle: f64,
    pub flow: f64,
    pub watercut: f64,
    pub pattern: FlowPattern,
    pub provenance: Provenance,
}

pub const ANGLE_RANGE: (f64, f64) = (0.0, 90.0);
pub const FLOW_RANGE: (f64, f64) = (100.0, 600.0);
pub const WATERCUT_RANGE: (f64, f64) = (0.0, 1.0);

impl ExperimentRecord {
    pub fn new(angle: f64, flow: f64, watercut: f64, pattern: FlowPattern) -> Self {
        Self {
            angle,
            flow,
            watercut,
            pattern,
            provenance: Provenance::Reconstructed,
        }
    }

    pub fn point(&self) -> OperatingPoint<f64> {
        OperatingPoint::new(self.angle, self.flow, self.watercut)
    }

    /// Name of the first field outside its declared range, if any.
    pub fn out_of_range_field(&self) -> Option<&'static str> {
        let inside = |x: f64, (lo, hi): (f64, f64)| x >= lo && x <= hi;
        if !inside(self.angle, ANGLE_RANGE) {
            Some("angle_deg")
        } else if !inside(self.flow, FLOW_RANGE) {
            Some("flow_m3d")
        } else if !inside(self.watercut, WATERCUT_RANGE) {
            Some("watercut_frac")
        } else {
            None
        }
    }

    pub fn same_point(&self, angle: f64, flow: f64, watercut: f64) -> bool {
        const EPS: f64 = 1e-9;
        (self.angle - angle).abs() < EPS
            && (self.flow - flow).abs() < EPS
            && (self.watercut - watercut).abs() < EPS
    }
}

/// Test-fluid and pipe properties of the flow loop. Metadata only.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FluidProperties {
    pub oil_density_g_cm3: f64,
    pub oil_viscosity_mpa_s: f64,
    pub water_density_g_cm3: f64,
    pub water_viscosity_mpa_s: f64,
    pub pipe_inner_diameter_mm: f64,
}

/// White oil and tap water at 20 °C in a 159 mm pipe.
pub const FLUID_PROPERTIES: FluidProperties = FluidProperties {
    oil_density_g_cm3: 0.8263,
    oil_viscosity_mpa_s: 2.92,
    water_density_g_cm3: 0.9884,
    water_viscosity_mpa_s: 1.16,
    pipe_inner_diameter_mm: 159.0,
};

pub const DESIGN_ANGLES: [f64; 4] = [0.0, 60.0, 85.0, 90.0];
pub const DESIGN_FLOWS: [f64; 3] = [100.0, 300.0, 600.0];
pub const DESIGN_WATERCUTS: [f64; 5] = [0.2, 0.4, 0.6, 0.8, 0.9];

/// The 60 design points, angle-major then flow then water cut.
pub fn design_grid() -> impl Iterator<Item = (f64, f64, f64)> {
    DESIGN_ANGLES.into_iter().flat_map(|a| {
        DESIGN_FLOWS
            .into_iter()
            .flat_map(move |q| DESIGN_WATERCUTS.into_iter().map(move |w| (a, q, w)))
    })
}
