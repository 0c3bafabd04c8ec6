//! Fuzzification, rule firing, implication, aggregation and centroid defuzzification.

use crate::error::{FlowError, Result};
use crate::scalar::Scalar;

use super::membership::{Aggregate, ClippedSet, FuzzySet, Universe};
use super::rule::Rule;
use super::system::FuzzySystem;
use super::variable::LinguisticVariable;

/// Record of an input that fell outside its universe and was clamped.
#[derive(Debug, Clone, PartialEq)]
pub struct ClampNote<T> {
    pub variable: String,
    pub given: T,
    pub used: T,
}

impl<T: Scalar> std::fmt::Display for ClampNote<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} = {} is outside its universe, clamped to {}",
            self.variable, self.given, self.used
        )
    }
}

/// Degrees of one crisp value in every term of a variable, in term order.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzifiedVar<T> {
    pub variable: String,
    pub labels: Vec<String>,
    pub degrees: Vec<T>,
    pub clamp: Option<ClampNote<T>>,
}

impl<T: Scalar> FuzzifiedVar<T> {
    pub fn degree(&self, label: &str) -> Option<T> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.degrees[i])
    }

    pub fn max_degree(&self) -> T {
        self.degrees.iter().fold(T::zero(), |a, &d| a.max(d))
    }
}

/// Fuzzifies `x` against every term of `var`.
///
/// Values outside the universe are clamped; excursions larger than a relative
/// tolerance of 1e-9 of the span are reported in `clamp`. NaN and infinities are rejected.
pub fn fuzzify<T: Scalar>(var: &LinguisticVariable<T>, x: T) -> Result<FuzzifiedVar<T>> {
    if !x.is_finite() {
        return Err(FlowError::NonFiniteInput {
            variable: var.name.clone(),
        });
    }
    let u = &var.universe;
    let tol = (u.hi - u.lo) * T::of(1e-9);
    let used = u.clamp(x);
    let clamp = (x < u.lo - tol || x > u.hi + tol).then(|| ClampNote {
        variable: var.name.clone(),
        given: x,
        used,
    });
    Ok(FuzzifiedVar {
        variable: var.name.clone(),
        labels: var.terms.iter().map(|t| t.label.clone()).collect(),
        degrees: var.terms.iter().map(|t| t.mf.eval(used)).collect(),
        clamp,
    })
}

/// `weight * min(degrees)`; an empty antecedent has strength zero.
pub fn and_strength<T: Scalar>(weight: T, degrees: impl IntoIterator<Item = T>) -> T {
    let mut iter = degrees.into_iter();
    let Some(first) = iter.next() else {
        return T::zero();
    };
    weight * iter.fold(first, |m, d| m.min(d))
}

/// Firing strength of `rule` given name-addressed fuzzified inputs.
pub fn rule_strength<T: Scalar>(rule: &Rule<T>, fuzzified: &[FuzzifiedVar<T>]) -> Result<T> {
    let degrees = rule
        .antecedent
        .iter()
        .map(|c| {
            let var = fuzzified
                .iter()
                .find(|f| f.variable == c.variable)
                .ok_or_else(|| FlowError::UnknownVariable(c.variable.clone()))?;
            var.degree(&c.term).ok_or_else(|| FlowError::UnknownTerm {
                variable: c.variable.clone(),
                term: c.term.clone(),
            })
        })
        .collect::<Result<Vec<T>>>()?;
    Ok(and_strength(rule.weight, degrees))
}

/// Centroid `Σ xᵢ μ(xᵢ) / Σ μ(xᵢ)` over the universe's uniform samples.
pub fn defuzzify_centroid<T: Scalar>(set: &impl FuzzySet<T>, universe: &Universe<T>) -> Result<T> {
    let mut num = T::zero();
    let mut den = T::zero();
    for x in universe.samples() {
        let mu = set.degree(x);
        num = num + x * mu;
        den = den + mu;
    }
    if den > T::zero() {
        Ok(num / den)
    } else {
        Err(FlowError::EmptySet)
    }
}

/// A rule that fired with positive strength.
#[derive(Debug, Clone, PartialEq)]
pub struct FiredRule<T> {
    pub rule_id: String,
    pub strength: T,
}

/// Per-class confidence and the rules that contributed to it.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassInference<T> {
    pub class: String,
    pub phi: T,
    pub fired: Vec<FiredRule<T>>,
}

/// Result of evaluating every class of a system at one input point.
#[derive(Debug, Clone, PartialEq)]
pub struct Inference<T> {
    pub fuzzified: Vec<FuzzifiedVar<T>>,
    pub classes: Vec<ClassInference<T>>,
}

impl<T: Scalar> Inference<T> {
    pub fn clamps(&self) -> impl Iterator<Item = &ClampNote<T>> {
        self.fuzzified.iter().filter_map(|f| f.clamp.as_ref())
    }

    /// Index of the class with the largest Φ; ties go to the earliest class.
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, c) in self.classes.iter().enumerate().skip(1) {
            if c.phi > self.classes[best].phi {
                best = i;
            }
        }
        best
    }
}

impl<T: Scalar> FuzzySystem<T> {
    /// Fuzzifies inputs given in the order of [`FuzzySystem::inputs`].
    pub fn fuzzify_all(&self, inputs: &[T]) -> Result<Vec<FuzzifiedVar<T>>> {
        if inputs.len() != self.inputs().len() {
            return Err(FlowError::Config(format!(
                "expected {} inputs, got {}",
                self.inputs().len(),
                inputs.len()
            )));
        }
        self.inputs()
            .iter()
            .zip(inputs)
            .map(|(v, &x)| fuzzify(v, x))
            .collect()
    }

    fn strengths(&self, fuzzified: &[FuzzifiedVar<T>]) -> Vec<T> {
        self.compiled()
            .iter()
            .map(|r| {
                and_strength(
                    r.weight,
                    r.clauses.iter().map(|&(vi, ti)| fuzzified[vi].degrees[ti]),
                )
            })
            .collect()
    }

    fn class_from_strengths(&self, class: usize, strengths: &[T]) -> ClassInference<T> {
        let mut aggregate = Aggregate::default();
        let mut fired = Vec::new();
        for (i, (rule, &s)) in self.compiled().iter().zip(strengths).enumerate() {
            if rule.class == class && s > T::zero() {
                aggregate
                    .parts
                    .push(ClippedSet::new(self.output_terms()[rule.output_term].mf, s));
                fired.push(FiredRule {
                    rule_id: self.rules()[i].id.clone(),
                    strength: s,
                });
            }
        }
        let phi = if aggregate.parts.is_empty() {
            T::zero()
        } else {
            defuzzify_centroid(&aggregate, self.output_universe()).unwrap_or_else(|_| T::zero())
        };
        ClassInference {
            class: self.classes()[class].clone(),
            phi,
            fired,
        }
    }

    /// Φ for a single class: clip, aggregate by max, take the centroid. Zero when nothing fires.
    pub fn infer_class(&self, inputs: &[T], class: &str) -> Result<ClassInference<T>> {
        let ci = self
            .class_index(class)
            .ok_or_else(|| FlowError::UnknownClass(class.to_string()))?;
        let fuzzified = self.fuzzify_all(inputs)?;
        let strengths = self.strengths(&fuzzified);
        Ok(self.class_from_strengths(ci, &strengths))
    }

    /// Evaluates every class at once, sharing the fuzzification and rule strengths.
    pub fn infer(&self, inputs: &[T]) -> Result<Inference<T>> {
        let fuzzified = self.fuzzify_all(inputs)?;
        let strengths = self.strengths(&fuzzified);
        let classes = (0..self.classes().len())
            .map(|c| self.class_from_strengths(c, &strengths))
            .collect();
        Ok(Inference { fuzzified, classes })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::{Clause, MembershipFunction, SystemDef, Term};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn unit() -> Universe<f64> {
        Universe::new(0.0, 1.0, 1001)
    }

    #[test]
    fn min_tnorm_strengths() {
        assert_eq!(and_strength(1.0, [0.8, 0.5, 1.0]), 0.5);
        assert_eq!(and_strength(1.0, [0.8, 0.0, 1.0]), 0.0);
        assert_abs_diff_eq!(and_strength(0.5, [0.6, 0.9]), 0.3, epsilon = 1e-15);
    }

    #[test]
    fn centroid_of_symmetric_and_uniform_sets() {
        let tri = MembershipFunction::triangle(0.4, 0.5, 0.6);
        assert_abs_diff_eq!(
            defuzzify_centroid(&tri, &unit()).unwrap(),
            0.5,
            epsilon = 1e-12
        );
        let one = |_x: f64| 1.0;
        assert_abs_diff_eq!(
            defuzzify_centroid(&one, &unit()).unwrap(),
            0.5,
            epsilon = 1e-12
        );
    }

    #[test]
    fn centroid_of_right_triangle_near_one_third() {
        // Continuous centroid of a triangle with vertices at 0, 0, 1 is 1/3.
        let tri = MembershipFunction::triangle(0.0, 0.0, 1.0);
        let c = defuzzify_centroid(&tri, &unit()).unwrap();
        assert!((c - 1.0 / 3.0).abs() < 1e-3, "{c}");
    }

    #[test]
    fn empty_set_is_an_error() {
        let zero = |_x: f64| 0.0;
        assert!(matches!(
            defuzzify_centroid(&zero, &unit()),
            Err(FlowError::EmptySet)
        ));
    }

    fn toy_system() -> crate::fuzzy::FuzzySystem<f64> {
        let var = LinguisticVariable::new(
            "x",
            Universe::new(0.0, 10.0, 101),
            vec![
                Term::new("lo", MembershipFunction::trapezoid(0.0, 0.0, 2.0, 6.0)),
                Term::new("hi", MembershipFunction::trapezoid(4.0, 8.0, 10.0, 10.0)),
            ],
        );
        SystemDef {
            inputs: vec![var],
            output_universe: unit(),
            output_terms: vec![
                Term::new("AWAY", MembershipFunction::trapezoid(0.0, 0.0, 0.1, 0.25)),
                Term::new("IN", MembershipFunction::trapezoid(0.1, 0.9, 1.0, 1.0)),
            ],
            classes: vec!["a".into(), "b".into()],
            rules: vec![
                Rule::new("r1", vec![Clause::new("x", "lo")], "a", "IN"),
                Rule::new("r2", vec![Clause::new("x", "hi")], "b", "IN"),
            ],
        }
        .build()
        .unwrap()
    }

    #[test]
    fn silent_class_has_zero_phi() {
        let sys = toy_system();
        let r = sys.infer_class(&[0.0], "b").unwrap();
        assert_eq!(r.phi, 0.0);
        assert!(r.fired.is_empty());
    }

    #[test]
    fn full_strength_rule_gives_centroid_of_unclipped_term() {
        let sys = toy_system();
        let r = sys.infer_class(&[1.0], "a").unwrap();
        let oracle = brute_centroid(
            |x| MembershipFunction::trapezoid(0.1, 0.9, 1.0, 1.0).eval(x),
            1001,
        );
        assert_abs_diff_eq!(r.phi, oracle, epsilon = 1e-12);
        assert_eq!(r.fired.len(), 1);
        assert_eq!(r.fired[0].strength, 1.0);
    }

    #[test]
    fn out_of_range_is_clamped_with_note() {
        let sys = toy_system();
        let inf = sys.infer(&[25.0]).unwrap();
        let note = inf.clamps().next().unwrap();
        assert_eq!(note.used, 10.0);
        assert!(sys.infer(&[f64::NAN]).is_err());
    }

    #[test]
    fn rule_strength_reports_unknown_terms() {
        let sys = toy_system();
        let f = sys.fuzzify_all(&[3.0]).unwrap();
        let bad = Rule::<f64>::new("r", vec![Clause::new("x", "XL")], "a", "IN");
        assert!(matches!(
            rule_strength(&bad, &f),
            Err(FlowError::UnknownTerm { .. })
        ));
        let ok = rule_strength(&sys.rules()[0], &f).unwrap();
        assert_abs_diff_eq!(ok, 0.75, epsilon = 1e-15);
    }

    fn brute_centroid(mu: impl Fn(f64) -> f64, n: usize) -> f64 {
        let xs: Vec<f64> = (0..n)
            .map(|i| {
                if i + 1 == n {
                    1.0
                } else {
                    i as f64 / (n - 1) as f64
                }
            })
            .collect();
        let ys: Vec<f64> = xs.iter().map(|&x| mu(x)).collect();
        let num: f64 = xs.iter().zip(&ys).map(|(x, y)| x * y).sum();
        let den: f64 = ys.iter().sum();
        num / den
    }

    proptest! {
        #[test]
        fn strength_is_monotone(
            degs in prop::collection::vec(0.0f64..=1.0, 1..5),
            idx in 0usize..5,
            bump in 0.0f64..1.0,
            w in 0.01f64..=1.0,
        ) {
            let base = and_strength(w, degs.clone());
            let mut raised = degs.clone();
            let i = idx % raised.len();
            raised[i] = (raised[i] + bump).min(1.0);
            prop_assert!(and_strength(w, raised) >= base);
        }

        #[test]
        fn centroid_stays_in_support(a in 0.0f64..0.5, w1 in 0.01f64..0.25, w2 in 0.01f64..0.25, h in 0.01f64..=1.0) {
            let mf = MembershipFunction::triangle(a, a + w1, a + w1 + w2);
            let clipped = ClippedSet::new(mf, h);
            let c = defuzzify_centroid(&clipped, &unit()).unwrap();
            prop_assert!(c >= a - 1e-12 && c <= a + w1 + w2 + 1e-12);
        }
    }
}
