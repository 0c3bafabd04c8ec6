use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalar::Scalar;

/// The four oil-water flow patterns, in their numeric-code order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FlowPattern {
    /// W/O: water-in-oil emulsion.
    WaterInOil,
    /// ST: separated (smooth stratified or stratified with interfacial mixing).
    Stratified,
    /// DO/W&W: dispersion of oil in water over a free water layer.
    OilInWaterOverWater,
    /// DW/O&O/W: coexisting water-in-oil and oil-in-water dispersions.
    DualDispersion,
}

impl FlowPattern {
    /// All patterns in code order, which is also the classification tie-break order.
    pub const ALL: [FlowPattern; 4] = [
        FlowPattern::WaterInOil,
        FlowPattern::Stratified,
        FlowPattern::OilInWaterOverWater,
        FlowPattern::DualDispersion,
    ];

    pub fn label(self) -> &'static str {
        match self {
            FlowPattern::WaterInOil => "W/O",
            FlowPattern::Stratified => "ST",
            FlowPattern::OilInWaterOverWater => "DO/W&W",
            FlowPattern::DualDispersion => "DW/O&O/W",
        }
    }

    pub fn code(self) -> u8 {
        self.index() as u8 + 1
    }

    pub fn index(self) -> usize {
        match self {
            FlowPattern::WaterInOil => 0,
            FlowPattern::Stratified => 1,
            FlowPattern::OilInWaterOverWater => 2,
            FlowPattern::DualDispersion => 3,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            1..=4 => Some(Self::ALL[code as usize - 1]),
            _ => None,
        }
    }

    pub fn from_label(label: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.label() == label)
    }

    pub fn is_dispersed(self) -> bool {
        self != FlowPattern::Stratified
    }
}

impl fmt::Display for FlowPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown flow pattern `{0}` (expected W/O, ST, DO/W&W or DW/O&O/W)")]
pub struct UnknownPattern(pub String);

impl FromStr for FlowPattern {
    type Err = UnknownPattern;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::from_label(s.trim()).ok_or_else(|| UnknownPattern(s.to_string()))
    }
}

impl Serialize for FlowPattern {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

impl<'de> Deserialize<'de> for FlowPattern {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Pipe inclination (degrees, 0 vertical .. 90 horizontal), total flow (m³/d) and water cut (fraction).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint<T = f64> {
    pub angle: T,
    pub flow: T,
    pub watercut: T,
}

impl<T: Scalar> OperatingPoint<T> {
    pub fn new(angle: T, flow: T, watercut: T) -> Self {
        Self {
            angle,
            flow,
            watercut,
        }
    }
}
