use crate::scalar::Scalar;

use super::membership::{MembershipFunction, Universe};

/// A named term attached to a linguistic variable.
#[derive(Debug, Clone, PartialEq)]
pub struct Term<T> {
    pub label: String,
    pub mf: MembershipFunction<T>,
}

impl<T> Term<T> {
    pub fn new(label: impl Into<String>, mf: MembershipFunction<T>) -> Self {
        Self {
            label: label.into(),
            mf,
        }
    }
}

/// An input quantity with its universe and ordered term family.
#[derive(Debug, Clone, PartialEq)]
pub struct LinguisticVariable<T> {
    pub name: String,
    pub universe: Universe<T>,
    pub terms: Vec<Term<T>>,
}

impl<T: Scalar> LinguisticVariable<T> {
    pub fn new(name: impl Into<String>, universe: Universe<T>, terms: Vec<Term<T>>) -> Self {
        Self {
            name: name.into(),
            universe,
            terms,
        }
    }

    pub fn term_index(&self, label: &str) -> Option<usize> {
        self.terms.iter().position(|t| t.label == label)
    }

    pub fn term(&self, label: &str) -> Option<&Term<T>> {
        self.terms.iter().find(|t| t.label == label)
    }

    /// Sub-intervals of the universe on which every term has degree zero.
    ///
    /// Intervals are reported closed; a single uncovered point shows up as `(x, x)`.
    pub fn coverage_gaps(&self) -> Vec<(T, T)> {
        let lo = self.universe.lo;
        let hi = self.universe.hi;
        let mut intervals: Vec<(T, bool, T, bool)> = self
            .terms
            .iter()
            .filter(|t| t.mf.is_ordered())
            .map(|t| t.mf.positive_interval())
            .collect();
        intervals.sort_by(|x, y| {
            x.0.partial_cmp(&y.0)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(y.1.cmp(&x.1))
        });

        let mut gaps = Vec::new();
        // Everything strictly left of `reach` is covered; `reach` itself iff `reach_closed`.
        let mut reach = lo;
        let mut reach_closed = false;
        for (l, lc, r, rc) in intervals {
            if r < lo || (r == lo && !rc) {
                continue;
            }
            let (l, lc) = if l < lo { (lo, true) } else { (l, lc) };
            let gap_before = l > reach || (l == reach && !reach_closed && !lc);
            if gap_before && reach <= hi {
                gaps.push((reach, l.min(hi)));
            }
            if r > reach {
                reach = r;
                reach_closed = rc;
            } else if r == reach {
                reach_closed |= rc;
            }
        }
        if reach < hi || (reach == hi && !reach_closed) {
            gaps.push((reach, hi));
        }
        gaps
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(terms: Vec<Term<f64>>) -> LinguisticVariable<f64> {
        LinguisticVariable::new("angle", Universe::new(0.0, 90.0, 1001), terms)
    }

    #[test]
    fn full_cover_has_no_gaps() {
        let v = var(vec![
            Term::new("PS", MembershipFunction::trapezoid(0.0, 0.0, 15.0, 45.0)),
            Term::new("P", MembershipFunction::trapezoid(30.0, 45.0, 70.0, 85.0)),
            Term::new("PL", MembershipFunction::trapezoid(75.0, 85.0, 90.0, 90.0)),
        ]);
        assert!(v.coverage_gaps().is_empty());
    }

    #[test]
    fn interior_gap_is_reported() {
        let v = var(vec![
            Term::new("A", MembershipFunction::trapezoid(0.0, 0.0, 30.0, 46.0)),
            Term::new("B", MembershipFunction::trapezoid(54.0, 70.0, 90.0, 90.0)),
        ]);
        assert_eq!(v.coverage_gaps(), vec![(46.0, 54.0)]);
    }

    #[test]
    fn touching_zero_ends_leave_a_point_gap() {
        let v = var(vec![
            Term::new("A", MembershipFunction::triangle(0.0, 0.0, 50.0)),
            Term::new("B", MembershipFunction::triangle(50.0, 90.0, 90.0)),
        ]);
        assert_eq!(v.coverage_gaps(), vec![(50.0, 50.0)]);
    }

    #[test]
    fn uncovered_edges() {
        let v = var(vec![
            Term::new("A", MembershipFunction::triangle(0.0, 20.0, 60.0)),
            Term::new("B", MembershipFunction::triangle(40.0, 60.0, 80.0)),
        ]);
        assert_eq!(v.coverage_gaps(), vec![(0.0, 0.0), (80.0, 90.0)]);
    }
}
