//! The inference path against a brute-force reimplementation that materializes
//! every set pointwise from raw breakpoints.

use flowpat::fuzzy::{
    defuzzify_centroid, Aggregate, Clause, ClippedSet, FuzzySystem, LinguisticVariable,
    MembershipFunction, Rule, SystemDef, Term, Universe,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Raw trapezoid evaluation, written independently of the library.
fn raw_trap(bp: &[f64; 4], x: f64) -> f64 {
    let [a, b, c, d] = *bp;
    if x < a || x > d {
        0.0
    } else if x < b {
        (x - a) / (b - a)
    } else if x <= c {
        1.0
    } else {
        (d - x) / (d - c)
    }
}

fn raw_of(mf: &MembershipFunction<f64>) -> [f64; 4] {
    let bp = mf.breakpoints();
    match bp.len() {
        3 => [bp[0], bp[1], bp[1], bp[2]],
        _ => [bp[0], bp[1], bp[2], bp[3]],
    }
}

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| {
            if i + 1 == n {
                hi
            } else {
                lo + (hi - lo) * (i as f64 / (n - 1) as f64)
            }
        })
        .collect()
}

fn brute_centroid(xs: &[f64], mus: &[f64]) -> Option<f64> {
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, m) in xs.iter().zip(mus) {
        num += x * m;
        den += m;
    }
    (den > 0.0).then(|| num / den)
}

/// Overlapping family covering `[lo, hi]`: term k peaks around the k-th of
/// sorted random centres and reaches its neighbours' centres.
fn random_family(rng: &mut ChaCha8Rng, lo: f64, hi: f64, n: usize) -> Vec<MembershipFunction<f64>> {
    let mut centres: Vec<f64> = (0..n - 2).map(|_| rng.gen_range(lo..hi)).collect();
    centres.push(lo);
    centres.push(hi);
    centres.sort_by(f64::total_cmp);
    (0..n)
        .map(|k| {
            let left = if k == 0 { lo } else { centres[k - 1] };
            let right = if k + 1 == n { hi } else { centres[k + 1] };
            let c = centres[k];
            if rng.gen_bool(0.5) {
                MembershipFunction::triangle(left, c, right)
            } else {
                let half = 0.25 * (right - c).min(c - left);
                let b = (c - half).max(left);
                let e = (c + half).min(right);
                MembershipFunction::trapezoid(left, b, e, right)
            }
        })
        .collect()
}

fn random_system(rng: &mut ChaCha8Rng) -> FuzzySystem<f64> {
    let n_inputs = rng.gen_range(1..=2);
    let inputs: Vec<LinguisticVariable<f64>> = (0..n_inputs)
        .map(|i| {
            let nt = rng.gen_range(2..=3);
            let terms = random_family(rng, 0.0, 10.0, nt)
                .into_iter()
                .enumerate()
                .map(|(k, mf)| Term::new(format!("t{k}"), mf))
                .collect();
            LinguisticVariable::new(format!("x{i}"), Universe::new(0.0, 10.0, 101), terms)
        })
        .collect();
    let n_out = rng.gen_range(2..=3);
    let output_terms: Vec<Term<f64>> = random_family(rng, 0.0, 1.0, n_out)
        .into_iter()
        .enumerate()
        .map(|(k, mf)| Term::new(format!("o{k}"), mf))
        .collect();
    let n_rules = rng.gen_range(2..=4);
    let rules = (0..n_rules)
        .map(|r| {
            let mut clauses = Vec::new();
            for v in &inputs {
                if clauses.is_empty() || rng.gen_bool(0.6) {
                    let t = &v.terms[rng.gen_range(0..v.terms.len())];
                    clauses.push(Clause::new(v.name.clone(), t.label.clone()));
                }
            }
            let class = if r < 2 { r } else { rng.gen_range(0..2) };
            let out = &output_terms[rng.gen_range(0..output_terms.len())];
            Rule::new(
                format!("r{r}"),
                clauses,
                ["a", "b"][class],
                out.label.clone(),
            )
            .with_weight(rng.gen_range(0.05..=1.0))
        })
        .collect();
    SystemDef {
        inputs,
        output_universe: Universe::new(0.0, 1.0, 1001),
        output_terms,
        classes: vec!["a".into(), "b".into()],
        rules,
    }
    .build()
    .expect("random system validates")
}

/// Φ for `class` computed from scratch.
fn brute_phi(sys: &FuzzySystem<f64>, inputs: &[f64], class: &str) -> f64 {
    let xs = grid(0.0, 1.0, sys.output_universe().resolution);
    let mut agg = vec![0.0f64; xs.len()];
    for rule in sys.rules().iter().filter(|r| r.consequent.class == class) {
        let mut s = f64::INFINITY;
        for c in &rule.antecedent {
            let vi = sys
                .inputs()
                .iter()
                .position(|v| v.name == c.variable)
                .unwrap();
            let mf = &sys.inputs()[vi].term(&c.term).unwrap().mf;
            s = s.min(raw_trap(&raw_of(mf), inputs[vi]));
        }
        s *= rule.weight;
        if s <= 0.0 {
            continue;
        }
        let out = raw_of(
            &sys.output_terms()
                .iter()
                .find(|t| t.label == rule.consequent.term)
                .unwrap()
                .mf,
        );
        for (m, &x) in agg.iter_mut().zip(&xs) {
            *m = m.max(raw_trap(&out, x).min(s));
        }
    }
    brute_centroid(&xs, &agg).unwrap_or(0.0)
}

#[test]
fn inference_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut checked = 0;
    for _ in 0..100 {
        let sys = random_system(&mut rng);
        for _ in 0..10 {
            let inputs: Vec<f64> = sys
                .inputs()
                .iter()
                .map(|_| rng.gen_range(0.0..=10.0))
                .collect();
            for class in ["a", "b"] {
                let got = sys.infer_class(&inputs, class).unwrap().phi;
                let want = brute_phi(&sys, &inputs, class);
                assert!((got - want).abs() <= 1e-12, "{got} vs {want}");
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 2000);
}

#[test]
fn centroid_matches_discrete_sum_on_random_aggregates() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let u = Universe::new(0.0, 1.0, 1001);
    let xs = grid(0.0, 1.0, 1001);
    for _ in 0..100 {
        let parts: Vec<ClippedSet<f64>> = (0..rng.gen_range(1..=4))
            .map(|_| {
                let mut p = [0.0; 4];
                p.iter_mut().for_each(|v| *v = rng.gen_range(0.0..=1.0));
                p.sort_by(f64::total_cmp);
                ClippedSet::new(
                    MembershipFunction::trapezoid(p[0], p[1], p[2], p[3]),
                    rng.gen_range(0.01..=1.0),
                )
            })
            .collect();
        let agg = Aggregate {
            parts: parts.clone(),
        };
        let mus: Vec<f64> = xs
            .iter()
            .map(|&x| {
                parts
                    .iter()
                    .map(|c| raw_trap(&raw_of(&c.base), x).min(c.height))
                    .fold(0.0, f64::max)
            })
            .collect();
        match (defuzzify_centroid(&agg, &u), brute_centroid(&xs, &mus)) {
            (Ok(got), Some(want)) => assert!((got - want).abs() <= 1e-12, "{got} vs {want}"),
            (Err(_), None) => {}
            (got, want) => panic!("disagree on emptiness: {got:?} vs {want:?}"),
        }
    }
}

#[test]
fn symmetric_sets_defuzzify_to_their_centre() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let u = Universe::new(0.0, 1.0, 1001);
    let step = u.step();
    for _ in 0..100 {
        let m: f64 = rng.gen_range(0.2..0.8);
        let inner: f64 = rng.gen_range(0.0..0.1);
        let outer = inner + rng.gen_range(0.01..0.1);
        let mf = MembershipFunction::trapezoid(m - outer, m - inner, m + inner, m + outer);
        let set = ClippedSet::new(mf, rng.gen_range(0.05..=1.0));
        let c = defuzzify_centroid(&set, &u).unwrap();
        assert!((c - m).abs() < step, "centre {m}, centroid {c}");
        assert!(c >= m - outer && c <= m + outer);
    }
}

#[test]
fn inference_is_bit_for_bit_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let sys = random_system(&mut rng);
    let inputs: Vec<f64> = sys.inputs().iter().map(|_| 4.2).collect();
    let a = sys.infer(&inputs).unwrap();
    let b = sys.clone().infer(&inputs).unwrap();
    assert_eq!(a, b);
    for (x, y) in a.classes.iter().zip(&b.classes) {
        assert_eq!(x.phi.to_bits(), y.phi.to_bits());
    }
}

#[test]
fn validated_system_is_shareable_across_threads() {
    let sys = flowpat::kb::build_default_kb::<f64>();
    let reference = sys.infer(&[45.0, 350.0, 0.5]).unwrap();
    std::thread::scope(|s| {
        for _ in 0..4 {
            s.spawn(|| assert_eq!(sys.infer(&[45.0, 350.0, 0.5]).unwrap(), reference));
        }
    });
}
