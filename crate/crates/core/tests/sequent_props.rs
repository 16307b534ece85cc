//! Property tests for the sequent checker: witness soundness, monotonicity,
//! determinism, and agreement with two-valued logic on the classical
//! fragment.

use proptest::prelude::*;
use syat::formula::Formula;
use syat::valuation::{check_sequent, verify_countermodel, ContextId, EnumerationOptions, Sequent};
use syat::Execution;

const ATOMS: [&str; 4] = ["A", "B", "C", "D"];

fn arb_formula() -> impl Strategy<Value = Formula> {
    let leaf = prop::sample::select(ATOMS.to_vec()).prop_map(Formula::atom);
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::implies(a, b)),
        ]
    })
}

fn arb_sequent() -> impl Strategy<Value = Sequent> {
    (
        prop::collection::vec(arb_formula(), 0..3),
        prop::collection::vec(arb_formula(), 0..3),
    )
        .prop_map(|(g, d)| Sequent::new(g, d, ContextId::new("c").unwrap()))
}

fn classical(f: &Formula, env: &dyn Fn(&str) -> bool) -> bool {
    match f {
        Formula::Atom(a) => env(a.as_str()),
        Formula::Not(g) => !classical(g, env),
        Formula::And(a, b) => classical(a, env) && classical(b, env),
        Formula::Or(a, b) => classical(a, env) || classical(b, env),
        Formula::Implies(a, b) => !classical(a, env) || classical(b, env),
    }
}

/// Two-valued validity by truth tables over all four atoms.
fn classically_valid(s: &Sequent) -> bool {
    (0u32..16).all(|bits| {
        let env = |name: &str| {
            let i = ATOMS.iter().position(|a| *a == name).unwrap();
            bits >> i & 1 == 1
        };
        !s.gamma().iter().all(|g| classical(g, &env)) || s.delta().iter().any(|d| classical(d, &env))
    })
}

fn opts() -> EnumerationOptions {
    EnumerationOptions::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn classical_fragment_agrees_with_truth_tables(s in arb_sequent()) {
        let r = check_sequent(&s, &EnumerationOptions { classical_only: true, ..opts() }).unwrap();
        prop_assert_eq!(r.valid, classically_valid(&s));
    }

    #[test]
    fn countermodels_re_evaluate(s in arb_sequent()) {
        let r = check_sequent(&s, &opts()).unwrap();
        prop_assert_eq!(r.valid, r.countermodel.is_none());
        if let Some(cm) = &r.countermodel {
            prop_assert!(verify_countermodel(&s, cm).unwrap());
        }
    }

    #[test]
    fn validity_is_monotone(s in arb_sequent(), extra in arb_formula(), left in any::<bool>()) {
        let r = check_sequent(&s, &opts()).unwrap();
        if r.valid {
            let (mut g, mut d) = (s.gamma().to_vec(), s.delta().to_vec());
            if left { g.push(extra) } else { d.push(extra) }
            let weakened = Sequent::new(g, d, s.context().clone());
            prop_assert!(check_sequent(&weakened, &opts()).unwrap().valid);
        }
    }

    #[test]
    fn deterministic_across_runs_and_strategies(s in arb_sequent()) {
        let a = check_sequent(&s, &EnumerationOptions { execution: Execution::Sequential, ..opts() }).unwrap();
        let b = check_sequent(&s, &EnumerationOptions { execution: Execution::Parallel, ..opts() }).unwrap();
        let c = check_sequent(&s, &opts()).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(&a, &c);
    }
}

#[test]
fn eight_atoms_fit_the_default_cap() {
    let g: Vec<Formula> = ["A", "B", "C", "D", "E", "F", "G"]
        .iter()
        .map(|a| Formula::atom(a))
        .collect();
    let s = Sequent::new(g, vec![Formula::atom("H")], ContextId::new("c").unwrap());
    let r = check_sequent(&s, &opts()).unwrap();
    assert!(!r.valid);
    // first countermodel: A..G = (1,0,0), H = (0,1,0)
    assert_eq!(r.valuations_checked, 2);
}
