//! The shipped oil-water knowledge base.
//!
//! Term breakpoints sit on the experimental design grid (angles 0/60/85/90°,
//! flows 100/300/600 m³/d, water cuts 0.2..0.9). Every rule concludes
//! `<pattern> is IN`; lower weights on the broad rules let the narrower
//! water-cut rules override them where both fire.

use crate::fuzzy::{
    Clause, FuzzySystem, LinguisticVariable, MembershipFunction as Mf, Rule, SystemDef, Term,
    Universe,
};
use crate::scalar::Scalar;

use super::pattern::FlowPattern;

pub const ANGLE: &str = "angle";
pub const FLOW: &str = "flow";
pub const WATERCUT: &str = "watercut";
pub const MATCH_TERM: &str = "IN";

type RuleRow = (&'static [(&'static str, &'static str)], FlowPattern, f64);

use FlowPattern::{
    DualDispersion as DWO, OilInWaterOverWater as DOW, Stratified as ST, WaterInOil as WO,
};

const RULES: [RuleRow; 20] = [
    // Vertical and near-vertical flow.
    (&[(ANGLE, "PS"), (FLOW, "M")], DOW, 1.0),
    (&[(ANGLE, "PS"), (FLOW, "H")], DOW, 1.0),
    (&[(ANGLE, "PS"), (FLOW, "VH"), (WATERCUT, "VL")], WO, 1.0),
    (&[(ANGLE, "PS"), (FLOW, "VH"), (WATERCUT, "L")], WO, 1.0),
    (&[(ANGLE, "PS"), (FLOW, "VH"), (WATERCUT, "ML")], DWO, 1.0),
    (&[(ANGLE, "PS"), (FLOW, "VH"), (WATERCUT, "M")], DOW, 1.0),
    (&[(ANGLE, "PS"), (FLOW, "VH"), (WATERCUT, "H")], DOW, 1.0),
    // Highly deviated: dispersed patterns only.
    (&[(ANGLE, "P"), (FLOW, "M")], DOW, 1.0),
    (&[(ANGLE, "P"), (FLOW, "H")], WO, 0.95),
    (&[(ANGLE, "P"), (FLOW, "VH")], WO, 0.95),
    (&[(ANGLE, "P"), (FLOW, "VH"), (WATERCUT, "VL")], WO, 1.0),
    (&[(ANGLE, "P"), (WATERCUT, "M")], DWO, 0.98),
    (&[(ANGLE, "P"), (WATERCUT, "H")], DWO, 0.98),
    // Near-horizontal and horizontal.
    (&[(ANGLE, "PL"), (FLOW, "M")], ST, 1.0),
    (&[(ANGLE, "PL"), (FLOW, "H")], DWO, 0.95),
    (&[(ANGLE, "PL"), (FLOW, "H"), (WATERCUT, "M")], DOW, 1.0),
    (&[(ANGLE, "PL"), (FLOW, "H"), (WATERCUT, "H")], DOW, 1.0),
    (&[(ANGLE, "PL"), (FLOW, "VH")], WO, 0.95),
    (&[(ANGLE, "PL"), (FLOW, "VH"), (WATERCUT, "M")], DWO, 1.0),
    (&[(ANGLE, "PL"), (FLOW, "VH"), (WATERCUT, "H")], DWO, 1.0),
];

fn tri<T: Scalar>(a: f64, b: f64, c: f64) -> Mf<T> {
    Mf::triangle(T::of(a), T::of(b), T::of(c))
}

fn trap<T: Scalar>(a: f64, b: f64, c: f64, d: f64) -> Mf<T> {
    Mf::trapezoid(T::of(a), T::of(b), T::of(c), T::of(d))
}

fn universe<T: Scalar>(lo: f64, hi: f64) -> Universe<T> {
    Universe::with_default_resolution(T::of(lo), T::of(hi))
}

/// The definition behind [`build_default_kb`], for callers that want to edit it.
pub fn default_kb_def<T: Scalar>() -> SystemDef<T> {
    let angle = LinguisticVariable::new(
        ANGLE,
        universe(0.0, 90.0),
        vec![
            Term::new("PS", trap(0.0, 0.0, 15.0, 45.0)),
            Term::new("P", trap(30.0, 45.0, 70.0, 85.0)),
            Term::new("PL", trap(75.0, 85.0, 90.0, 90.0)),
        ],
    );
    let flow = LinguisticVariable::new(
        FLOW,
        universe(100.0, 600.0),
        vec![
            Term::new("M", trap(100.0, 100.0, 175.0, 325.0)),
            Term::new("H", tri(175.0, 350.0, 525.0)),
            Term::new("VH", trap(350.0, 500.0, 600.0, 600.0)),
        ],
    );
    let watercut = LinguisticVariable::new(
        WATERCUT,
        universe(0.0, 1.0),
        vec![
            Term::new("VL", trap(0.0, 0.0, 0.2, 0.35)),
            Term::new("L", tri(0.2, 0.4, 0.6)),
            Term::new("ML", tri(0.4, 0.6, 0.75)),
            Term::new("M", tri(0.65, 0.8, 0.92)),
            Term::new("H", trap(0.85, 0.9, 1.0, 1.0)),
        ],
    );
    let output_terms = vec![
        Term::new("AWAY", trap(0.0, 0.0, 0.1, 0.25)),
        Term::new("FAR", tri(0.15, 0.3, 0.45)),
        Term::new("BORDER", tri(0.35, 0.5, 0.65)),
        Term::new("CLOSE", tri(0.55, 0.7, 0.85)),
        Term::new(MATCH_TERM, trap(0.75, 0.9, 1.0, 1.0)),
    ];
    let rules = RULES
        .iter()
        .enumerate()
        .map(|(i, (clauses, pattern, weight))| {
            Rule::new(
                format!("R{}", i + 1),
                clauses.iter().map(|&(v, t)| Clause::new(v, t)).collect(),
                pattern.label(),
                MATCH_TERM,
            )
            .with_weight(T::of(*weight))
        })
        .collect();

    SystemDef {
        inputs: vec![angle, flow, watercut],
        output_universe: universe(0.0, 1.0),
        output_terms,
        classes: FlowPattern::ALL
            .iter()
            .map(|p| p.label().to_string())
            .collect(),
        rules,
    }
}

/// Builds the shipped 20-rule oil-water flow-pattern system.
pub fn build_default_kb<T: Scalar>() -> FuzzySystem<T> {
    default_kb_def()
        .build()
        .expect("shipped knowledge base validates")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::fuzzify;
    use approx::assert_abs_diff_eq;

    #[test]
    fn counts_and_consequents() {
        let kb = build_default_kb::<f64>();
        let counts: Vec<usize> = kb.inputs().iter().map(|v| v.terms.len()).collect();
        assert_eq!(counts, vec![3, 3, 5]);
        assert_eq!(kb.output_terms().len(), 5);
        assert_eq!(kb.rules().len(), 20);
        assert!(kb.rules().iter().all(|r| r.consequent.term == "IN"));
        assert!(default_kb_def::<f64>().validate().is_empty());
    }

    #[test]
    fn builds_in_single_precision() {
        let kb = build_default_kb::<f32>();
        assert_eq!(kb.rules().len(), 20);
    }

    #[test]
    fn fuzzify_design_points() {
        let kb = build_default_kb::<f64>();
        let angle = kb.input(ANGLE).unwrap();
        let at0 = fuzzify(angle, 0.0).unwrap();
        assert_eq!(at0.degrees, vec![1.0, 0.0, 0.0]);
        // 85° sits on PL's left plateau corner and P's right foot.
        let at85 = fuzzify(angle, 85.0).unwrap();
        assert_eq!(at85.degrees, vec![0.0, 0.0, 1.0]);
        // 80°: P = (85-80)/15, PL = (80-75)/10.
        let at80 = fuzzify(angle, 80.0).unwrap();
        assert_abs_diff_eq!(at80.degrees[1], 1.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(at80.degrees[2], 0.5, epsilon = 1e-12);

        let wc = kb.input(WATERCUT).unwrap();
        let at1 = fuzzify(wc, 1.0).unwrap();
        assert_eq!(at1.degrees, vec![0.0, 0.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn every_input_universe_is_covered() {
        let kb = build_default_kb::<f64>();
        for var in kb.inputs() {
            let u = Universe::new(var.universe.lo, var.universe.hi, 1001);
            for x in u.samples() {
                assert!(
                    fuzzify(var, x).unwrap().max_degree() > 0.0,
                    "{} at {x}",
                    var.name
                );
            }
        }
    }
}
