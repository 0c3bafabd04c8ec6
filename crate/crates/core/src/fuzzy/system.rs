//! System definition, validation and the immutable validated system.

use std::collections::HashSet;
use std::fmt;

use crate::error::{FlowError, Result};
use crate::scalar::Scalar;

use super::membership::Universe;
use super::rule::Rule;
use super::variable::{LinguisticVariable, Term};

/// Everything needed to build a [`FuzzySystem`]. Freely editable; validated on [`build`](Self::build).
#[derive(Debug, Clone, PartialEq)]
pub struct SystemDef<T> {
    pub inputs: Vec<LinguisticVariable<T>>,
    pub output_universe: Universe<T>,
    pub output_terms: Vec<Term<T>>,
    /// Class labels; their order is the tie-break order for classification.
    pub classes: Vec<String>,
    pub rules: Vec<Rule<T>>,
}

/// One problem found by [`validate_system`].
#[derive(Debug, Clone, PartialEq)]
pub enum Diagnostic {
    BadUniverse {
        variable: String,
    },
    DuplicateVariable {
        variable: String,
    },
    TooFewTerms {
        variable: String,
        count: usize,
    },
    DuplicateTerm {
        variable: String,
        term: String,
    },
    BreakpointOrder {
        variable: String,
        term: String,
    },
    BreakpointOutOfRange {
        variable: String,
        term: String,
    },
    CoverageGap {
        variable: String,
        from: f64,
        to: f64,
    },
    NoClasses,
    DuplicateClass {
        class: String,
    },
    DuplicateRuleId {
        rule: String,
    },
    EmptyAntecedent {
        rule: String,
    },
    UnknownVariable {
        rule: String,
        variable: String,
    },
    UnknownTerm {
        rule: String,
        variable: String,
        term: String,
    },
    UnknownClass {
        rule: String,
        class: String,
    },
    UnknownOutputTerm {
        rule: String,
        term: String,
    },
    BadWeight {
        rule: String,
        weight: f64,
    },
    ClassWithoutRules {
        class: String,
    },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Diagnostic::*;
        match self {
            BadUniverse { variable } => write!(
                f,
                "variable `{variable}`: universe needs lo < hi and an odd resolution >= 3"
            ),
            DuplicateVariable { variable } => write!(f, "variable `{variable}` declared twice"),
            TooFewTerms { variable, count } => {
                write!(
                    f,
                    "variable `{variable}` has {count} term(s), needs at least 2"
                )
            }
            DuplicateTerm { variable, term } => {
                write!(f, "variable `{variable}`: term `{term}` declared twice")
            }
            BreakpointOrder { variable, term } => write!(
                f,
                "variable `{variable}`, term `{term}`: breakpoints are not non-decreasing"
            ),
            BreakpointOutOfRange { variable, term } => write!(
                f,
                "variable `{variable}`, term `{term}`: breakpoints fall outside the universe"
            ),
            CoverageGap { variable, from, to } => {
                write!(f, "variable `{variable}`: no term covers [{from}, {to}]")
            }
            NoClasses => write!(f, "no output classes declared"),
            DuplicateClass { class } => write!(f, "class `{class}` declared twice"),
            DuplicateRuleId { rule } => write!(f, "rule id `{rule}` used twice"),
            EmptyAntecedent { rule } => write!(f, "rule `{rule}` has an empty antecedent"),
            UnknownVariable { rule, variable } => {
                write!(f, "rule `{rule}` references unknown variable `{variable}`")
            }
            UnknownTerm {
                rule,
                variable,
                term,
            } => write!(
                f,
                "rule `{rule}` references term `{term}` absent from variable `{variable}`"
            ),
            UnknownClass { rule, class } => {
                write!(f, "rule `{rule}` concludes unknown class `{class}`")
            }
            UnknownOutputTerm { rule, term } => {
                write!(f, "rule `{rule}` uses unknown output term `{term}`")
            }
            BadWeight { rule, weight } => {
                write!(f, "rule `{rule}` has weight {weight}, expected (0, 1]")
            }
            ClassWithoutRules { class } => write!(f, "class `{class}` has no rules"),
        }
    }
}

/// Checks a definition; an empty result means it would be accepted.
pub fn validate_system<T: Scalar>(def: &SystemDef<T>) -> Vec<Diagnostic> {
    let mut diags = Vec::new();

    let mut names = HashSet::new();
    for var in &def.inputs {
        if !names.insert(var.name.as_str()) {
            diags.push(Diagnostic::DuplicateVariable {
                variable: var.name.clone(),
            });
        }
        check_family(&var.name, &var.universe, &var.terms, &mut diags);
    }
    check_family(
        "output",
        &def.output_universe,
        &def.output_terms,
        &mut diags,
    );

    if def.classes.is_empty() {
        diags.push(Diagnostic::NoClasses);
    }
    let mut seen = HashSet::new();
    for class in &def.classes {
        if !seen.insert(class.as_str()) {
            diags.push(Diagnostic::DuplicateClass {
                class: class.clone(),
            });
        }
    }

    let mut ids = HashSet::new();
    for rule in &def.rules {
        let rid = rule.id.clone();
        if !ids.insert(rule.id.as_str()) {
            diags.push(Diagnostic::DuplicateRuleId { rule: rid.clone() });
        }
        if rule.antecedent.is_empty() {
            diags.push(Diagnostic::EmptyAntecedent { rule: rid.clone() });
        }
        for clause in &rule.antecedent {
            match def.inputs.iter().find(|v| v.name == clause.variable) {
                None => diags.push(Diagnostic::UnknownVariable {
                    rule: rid.clone(),
                    variable: clause.variable.clone(),
                }),
                Some(var) if var.term_index(&clause.term).is_none() => {
                    diags.push(Diagnostic::UnknownTerm {
                        rule: rid.clone(),
                        variable: clause.variable.clone(),
                        term: clause.term.clone(),
                    })
                }
                Some(_) => {}
            }
        }
        if !def.classes.contains(&rule.consequent.class) {
            diags.push(Diagnostic::UnknownClass {
                rule: rid.clone(),
                class: rule.consequent.class.clone(),
            });
        }
        if !def
            .output_terms
            .iter()
            .any(|t| t.label == rule.consequent.term)
        {
            diags.push(Diagnostic::UnknownOutputTerm {
                rule: rid.clone(),
                term: rule.consequent.term.clone(),
            });
        }
        let w = rule.weight;
        if !(w > T::zero() && w <= T::one()) {
            diags.push(Diagnostic::BadWeight {
                rule: rid,
                weight: w.as_f64(),
            });
        }
    }

    for class in &def.classes {
        if !def.rules.iter().any(|r| &r.consequent.class == class) {
            diags.push(Diagnostic::ClassWithoutRules {
                class: class.clone(),
            });
        }
    }
    diags
}

fn check_family<T: Scalar>(
    name: &str,
    universe: &Universe<T>,
    terms: &[Term<T>],
    diags: &mut Vec<Diagnostic>,
) {
    let universe_ok = universe.is_well_formed();
    if !universe_ok {
        diags.push(Diagnostic::BadUniverse {
            variable: name.to_string(),
        });
    }
    if terms.len() < 2 {
        diags.push(Diagnostic::TooFewTerms {
            variable: name.to_string(),
            count: terms.len(),
        });
    }
    let mut labels = HashSet::new();
    let mut shapes_ok = true;
    for term in terms {
        if !labels.insert(term.label.as_str()) {
            diags.push(Diagnostic::DuplicateTerm {
                variable: name.to_string(),
                term: term.label.clone(),
            });
        }
        if !term.mf.is_ordered() {
            shapes_ok = false;
            diags.push(Diagnostic::BreakpointOrder {
                variable: name.to_string(),
                term: term.label.clone(),
            });
        } else if universe_ok
            && (term.mf.support_start() < universe.lo || term.mf.support_end() > universe.hi)
        {
            diags.push(Diagnostic::BreakpointOutOfRange {
                variable: name.to_string(),
                term: term.label.clone(),
            });
        }
    }
    if universe_ok && shapes_ok && !terms.is_empty() {
        let probe = LinguisticVariable {
            name: name.to_string(),
            universe: *universe,
            terms: terms.to_vec(),
        };
        for (from, to) in probe.coverage_gaps() {
            diags.push(Diagnostic::CoverageGap {
                variable: name.to_string(),
                from: from.as_f64(),
                to: to.as_f64(),
            });
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct CompiledRule<T> {
    /// `(input index, term index)` per clause.
    pub clauses: Vec<(usize, usize)>,
    pub class: usize,
    pub output_term: usize,
    pub weight: T,
}

/// A validated, immutable Mamdani system (min AND, min implication, max aggregation,
/// centroid defuzzification).
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzySystem<T> {
    def: SystemDef<T>,
    compiled: Vec<CompiledRule<T>>,
}

impl<T: Scalar> SystemDef<T> {
    pub fn validate(&self) -> Vec<Diagnostic> {
        validate_system(self)
    }

    pub fn build(self) -> Result<FuzzySystem<T>> {
        let diags = validate_system(&self);
        if !diags.is_empty() {
            return Err(FlowError::Invalid(diags));
        }
        let compiled = self
            .rules
            .iter()
            .map(|rule| {
                let clauses = rule
                    .antecedent
                    .iter()
                    .map(|c| {
                        let vi = self
                            .inputs
                            .iter()
                            .position(|v| v.name == c.variable)
                            .expect("validated");
                        let ti = self.inputs[vi].term_index(&c.term).expect("validated");
                        (vi, ti)
                    })
                    .collect();
                CompiledRule {
                    clauses,
                    class: self
                        .classes
                        .iter()
                        .position(|c| *c == rule.consequent.class)
                        .expect("validated"),
                    output_term: self
                        .output_terms
                        .iter()
                        .position(|t| t.label == rule.consequent.term)
                        .expect("validated"),
                    weight: rule.weight,
                }
            })
            .collect();
        Ok(FuzzySystem {
            def: self,
            compiled,
        })
    }
}

impl<T: Scalar> FuzzySystem<T> {
    pub fn def(&self) -> &SystemDef<T> {
        &self.def
    }

    pub fn inputs(&self) -> &[LinguisticVariable<T>] {
        &self.def.inputs
    }

    pub fn input(&self, name: &str) -> Option<&LinguisticVariable<T>> {
        self.def.inputs.iter().find(|v| v.name == name)
    }

    pub fn output_universe(&self) -> &Universe<T> {
        &self.def.output_universe
    }

    pub fn output_terms(&self) -> &[Term<T>] {
        &self.def.output_terms
    }

    pub fn classes(&self) -> &[String] {
        &self.def.classes
    }

    pub fn class_index(&self, label: &str) -> Option<usize> {
        self.def.classes.iter().position(|c| c == label)
    }

    pub fn rules(&self) -> &[Rule<T>] {
        &self.def.rules
    }

    pub(crate) fn compiled(&self) -> &[CompiledRule<T>] {
        &self.compiled
    }
}
