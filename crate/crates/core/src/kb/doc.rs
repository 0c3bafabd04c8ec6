//! JSON knowledge-base documents.
//!
//! ```json
//! {
//!   "version": "flowpat-kb/1",
//!   "inputs": [
//!     { "name": "angle", "lo": 0, "hi": 90, "resolution": 1001,
//!       "terms": [ { "label": "PS", "kind": "trapezoid", "breakpoints": [0, 0, 15, 45] } ] }
//!   ],
//!   "output": { "lo": 0, "hi": 1, "resolution": 1001, "terms": [ ... ] },
//!   "classes": ["W/O", "ST", "DO/W&W", "DW/O&O/W"],
//!   "rules": [
//!     { "id": "R1", "if": [ { "variable": "angle", "term": "PS" } ],
//!       "then": { "class": "DO/W&W", "term": "IN" }, "weight": 1.0 }
//!   ]
//! }
//! ```
//!
//! `resolution` defaults to 1001 and `weight` to 1.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{FlowError, Result};
use crate::fuzzy::{
    Clause, Consequent, Diagnostic, FuzzySystem, LinguisticVariable, MembershipFunction, Rule,
    ShapeKind, SystemDef, Term, Universe, DEFAULT_RESOLUTION,
};
use crate::scalar::Scalar;

pub const KB_FORMAT_VERSION: &str = "flowpat-kb/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnowledgeBaseDoc {
    pub version: String,
    pub inputs: Vec<VariableDoc>,
    pub output: OutputDoc,
    pub classes: Vec<String>,
    pub rules: Vec<RuleDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariableDoc {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
    #[serde(default = "default_resolution")]
    pub resolution: usize,
    pub terms: Vec<TermDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputDoc {
    pub lo: f64,
    pub hi: f64,
    #[serde(default = "default_resolution")]
    pub resolution: usize,
    pub terms: Vec<TermDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub label: String,
    pub kind: ShapeKind,
    pub breakpoints: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleDoc {
    pub id: String,
    #[serde(rename = "if")]
    pub antecedent: Vec<ClauseDoc>,
    pub then: ClauseTarget,
    #[serde(default = "default_weight")]
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClauseDoc {
    pub variable: String,
    pub term: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClauseTarget {
    pub class: String,
    pub term: String,
}

fn default_resolution() -> usize {
    DEFAULT_RESOLUTION
}

fn default_weight() -> f64 {
    1.0
}

impl KnowledgeBaseDoc {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| FlowError::Parse {
            location: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    /// Converts to an unvalidated definition. Fails on structural problems that have
    /// no diagnostic form: wrong version, wrong breakpoint counts, unordered breakpoints.
    pub fn to_def<T: Scalar>(&self) -> Result<SystemDef<T>> {
        if self.version != KB_FORMAT_VERSION {
            return Err(FlowError::Parse {
                location: "version".into(),
                message: format!(
                    "unsupported version `{}`, expected `{KB_FORMAT_VERSION}`",
                    self.version
                ),
            });
        }
        let inputs = self
            .inputs
            .iter()
            .enumerate()
            .map(|(i, v)| {
                Ok(LinguisticVariable::new(
                    v.name.clone(),
                    Universe::new(T::of(v.lo), T::of(v.hi), v.resolution),
                    terms_from_doc(&v.terms, &format!("inputs[{i}]"))?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let output_terms = terms_from_doc(&self.output.terms, "output")?;
        let rules = self
            .rules
            .iter()
            .map(|r| Rule {
                id: r.id.clone(),
                antecedent: r
                    .antecedent
                    .iter()
                    .map(|c| Clause::new(c.variable.clone(), c.term.clone()))
                    .collect(),
                consequent: Consequent {
                    class: r.then.class.clone(),
                    term: r.then.term.clone(),
                },
                weight: T::of(r.weight),
            })
            .collect();
        Ok(SystemDef {
            inputs,
            output_universe: Universe::new(
                T::of(self.output.lo),
                T::of(self.output.hi),
                self.output.resolution,
            ),
            output_terms,
            classes: self.classes.clone(),
            rules,
        })
    }

    /// Validation diagnostics paired with the document path they point at, where derivable.
    pub fn diagnostics(&self) -> Result<Vec<(Option<String>, Diagnostic)>> {
        let def = self.to_def::<f64>()?;
        Ok(def
            .validate()
            .into_iter()
            .map(|d| (self.locate(&d), d))
            .collect())
    }

    fn locate(&self, diag: &Diagnostic) -> Option<String> {
        use Diagnostic::*;
        let var_path = |name: &str| {
            if name == "output" {
                return Some("output".to_string());
            }
            self.inputs
                .iter()
                .position(|v| v.name == name)
                .map(|i| format!("inputs[{i}]"))
        };
        let rule_path = |id: &str| {
            self.rules
                .iter()
                .position(|r| r.id == id)
                .map(|i| format!("rules[{i}]"))
        };
        match diag {
            BadUniverse { variable }
            | DuplicateVariable { variable }
            | TooFewTerms { variable, .. }
            | CoverageGap { variable, .. } => var_path(variable),
            DuplicateTerm { variable, term }
            | BreakpointOrder { variable, term }
            | BreakpointOutOfRange { variable, term } => {
                let base = var_path(variable)?;
                let terms = if variable == "output" {
                    &self.output.terms
                } else {
                    &self.inputs.iter().find(|v| &v.name == variable)?.terms
                };
                let j = terms.iter().position(|t| &t.label == term)?;
                Some(format!("{base}.terms[{j}]"))
            }
            DuplicateRuleId { rule }
            | EmptyAntecedent { rule }
            | UnknownVariable { rule, .. }
            | UnknownTerm { rule, .. }
            | UnknownClass { rule, .. }
            | UnknownOutputTerm { rule, .. }
            | BadWeight { rule, .. } => rule_path(rule),
            ClassWithoutRules { class } | DuplicateClass { class } => self
                .classes
                .iter()
                .position(|c| c == class)
                .map(|i| format!("classes[{i}]")),
            NoClasses => Some("classes".into()),
        }
    }
}

fn terms_from_doc<T: Scalar>(terms: &[TermDoc], base: &str) -> Result<Vec<Term<T>>> {
    terms
        .iter()
        .enumerate()
        .map(|(j, t)| {
            let location = format!("{base}.terms[{j}]");
            let bp: Vec<T> = t.breakpoints.iter().map(|&x| T::of(x)).collect();
            let mf = MembershipFunction::from_breakpoints(t.kind, &bp).ok_or_else(|| {
                FlowError::Parse {
                    location: location.clone(),
                    message: format!(
                        "a {:?} needs {} breakpoints, found {}",
                        t.kind,
                        t.kind.breakpoint_count(),
                        t.breakpoints.len()
                    ),
                }
            })?;
            if !mf.is_ordered() {
                return Err(FlowError::Parse {
                    location,
                    message: format!(
                        "breakpoints {:?} of term `{}` are not non-decreasing",
                        t.breakpoints, t.label
                    ),
                });
            }
            Ok(Term::new(t.label.clone(), mf))
        })
        .collect()
}

fn terms_to_doc<T: Scalar>(terms: &[Term<T>]) -> Vec<TermDoc> {
    terms
        .iter()
        .map(|t| TermDoc {
            label: t.label.clone(),
            kind: t.mf.kind(),
            breakpoints: t.mf.breakpoints().into_iter().map(Scalar::as_f64).collect(),
        })
        .collect()
}

/// Builds and validates a system from a document.
pub fn load_kb<T: Scalar>(doc: &KnowledgeBaseDoc) -> Result<FuzzySystem<T>> {
    doc.to_def()?.build()
}

/// Reads, parses and validates a knowledge-base file.
pub fn load_kb_file<T: Scalar>(path: impl AsRef<Path>) -> Result<FuzzySystem<T>> {
    load_kb(&KnowledgeBaseDoc::read(path)?)
}

pub fn save_kb<T: Scalar>(system: &FuzzySystem<T>) -> KnowledgeBaseDoc {
    let def = system.def();
    KnowledgeBaseDoc {
        version: KB_FORMAT_VERSION.to_string(),
        inputs: def
            .inputs
            .iter()
            .map(|v| VariableDoc {
                name: v.name.clone(),
                lo: v.universe.lo.as_f64(),
                hi: v.universe.hi.as_f64(),
                resolution: v.universe.resolution,
                terms: terms_to_doc(&v.terms),
            })
            .collect(),
        output: OutputDoc {
            lo: def.output_universe.lo.as_f64(),
            hi: def.output_universe.hi.as_f64(),
            resolution: def.output_universe.resolution,
            terms: terms_to_doc(&def.output_terms),
        },
        classes: def.classes.clone(),
        rules: def
            .rules
            .iter()
            .map(|r| RuleDoc {
                id: r.id.clone(),
                antecedent: r
                    .antecedent
                    .iter()
                    .map(|c| ClauseDoc {
                        variable: c.variable.clone(),
                        term: c.term.clone(),
                    })
                    .collect(),
                then: ClauseTarget {
                    class: r.consequent.class.clone(),
                    term: r.consequent.term.clone(),
                },
                weight: r.weight.as_f64(),
            })
            .collect(),
    }
}
