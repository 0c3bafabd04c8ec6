//! Generic Mamdani inference engine.

mod inference;
mod membership;
mod rule;
mod system;
mod variable;

pub use inference::{
    and_strength, defuzzify_centroid, fuzzify, rule_strength, ClampNote, ClassInference, FiredRule,
    FuzzifiedVar, Inference,
};
pub use membership::{
    Aggregate, ClippedSet, FuzzySet, MembershipFunction, ShapeKind, Universe, DEFAULT_RESOLUTION,
};
pub use rule::{Clause, Consequent, Rule};
pub use system::{validate_system, Diagnostic, FuzzySystem, SystemDef};
pub use variable::{LinguisticVariable, Term};
