use crate::scalar::Scalar;

/// `variable is term`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clause {
    pub variable: String,
    pub term: String,
}

impl Clause {
    pub fn new(variable: impl Into<String>, term: impl Into<String>) -> Self {
        Self {
            variable: variable.into(),
            term: term.into(),
        }
    }
}

/// `class is term` on the shared output universe.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Consequent {
    pub class: String,
    pub term: String,
}

/// A conjunctive if-then rule with an optional weight in `(0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule<T> {
    pub id: String,
    pub antecedent: Vec<Clause>,
    pub consequent: Consequent,
    pub weight: T,
}

impl<T: Scalar> Rule<T> {
    pub fn new(
        id: impl Into<String>,
        antecedent: Vec<Clause>,
        class: impl Into<String>,
        term: impl Into<String>,
    ) -> Self {
        Self {
            id: id.into(),
            antecedent,
            consequent: Consequent {
                class: class.into(),
                term: term.into(),
            },
            weight: T::one(),
        }
    }

    pub fn with_weight(mut self, weight: T) -> Self {
        self.weight = weight;
        self
    }
}
