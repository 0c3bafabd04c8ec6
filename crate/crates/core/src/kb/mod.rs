//! Oil-water flow-pattern domain layer on top of the fuzzy engine.

mod classify;
mod default;
mod doc;
mod pattern;

pub use classify::{classify, ClassificationResult};
pub use default::{build_default_kb, default_kb_def, ANGLE, FLOW, MATCH_TERM, WATERCUT};
pub use doc::{
    load_kb, load_kb_file, save_kb, ClauseDoc, ClauseTarget, KnowledgeBaseDoc, OutputDoc, RuleDoc,
    TermDoc, VariableDoc, KB_FORMAT_VERSION,
};
pub use pattern::{FlowPattern, OperatingPoint, UnknownPattern};
