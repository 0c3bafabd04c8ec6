//! Labeled experiment records: CSV I/O, the embedded design-grid dataset, splits.

mod csv_io;
mod embedded;
mod record;
mod split;

pub use csv_io::{parse_csv, serialize_csv, CSV_HEADER, PROVENANCE_COLUMN};
pub use embedded::{embedded_dataset, PAPER_TEST_POINTS};
pub use record::{
    design_grid, ExperimentRecord, FluidProperties, Provenance, ANGLE_RANGE, DESIGN_ANGLES,
    DESIGN_FLOWS, DESIGN_WATERCUTS, FLOW_RANGE, FLUID_PROPERTIES, WATERCUT_RANGE,
};
pub use split::{split, SplitSpec};
