//! Translation between the triple semantics and finite models.
//!
//! A context `C` of a model derives the triple
//! `t = C≠∅ ∧ C⊆p`, `f = C≠∅ ∧ C∩p=∅`, `u = C≠∅ ∧ C⊆q`.
//! An empty context yields `(0,0,1)` flagged vacuous. A non-empty context
//! whose flags are all clear is mixed and yields `(1,1,0)` flagged mixed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exec::{self, Execution};
use crate::formula::Atom;
use crate::quantlogic::{ContextSlot, FiniteModel, Form};
use crate::truth::TruthValue;

pub const MAX_SAMPLE_DOMAIN: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BridgeError {
    #[error("context {0} is not declared in the model")]
    UndeclaredContext(ContextSlot),
    #[error("sample domain bound must be between 1 and {MAX_SAMPLE_DOMAIN}, got {0}")]
    SampleDomain(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedTriplet {
    pub context: ContextSlot,
    pub predicate: Atom,
    pub value: TruthValue,
    pub vacuous: bool,
    pub mixed: bool,
}

impl DerivedTriplet {
    /// Uniform: neither vacuous nor mixed.
    pub fn is_uniform(&self) -> bool {
        !self.vacuous && !self.mixed
    }
}

impl Serialize for DerivedTriplet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(6))?;
        map.serialize_entry("context", &self.context)?;
        map.serialize_entry("predicate", self.predicate.as_str())?;
        map.serialize_entry("value", &self.value)?;
        map.serialize_entry("name", &self.value.name())?;
        map.serialize_entry("vacuous", &self.vacuous)?;
        map.serialize_entry("mixed", &self.mixed)?;
        map.end()
    }
}

fn derive_from_masks(ctx: u64, p: u64, q: u64) -> (TruthValue, bool, bool) {
    if ctx == 0 {
        return (TruthValue::V4, true, false);
    }
    let t = ctx & !p == 0;
    let f = ctx & p == 0;
    let u = ctx & !q == 0;
    match TruthValue::new(t, f, u) {
        Ok(v) => (v, false, false),
        Err(_) => {
            let has_p = ctx & p != 0;
            let has_not_p = ctx & !p != 0;
            let v = if has_p && has_not_p {
                TruthValue::V3
            } else {
                TruthValue::V4
            };
            (v, false, true)
        }
    }
}

/// Reads a context of `m` as a triple.
pub fn derive_triplet(m: &FiniteModel, context: ContextSlot, predicate: &Atom) -> Result<DerivedTriplet, BridgeError> {
    let ctx = m.context_mask(context).ok_or(BridgeError::UndeclaredContext(context))?;
    let (value, vacuous, mixed) = derive_from_masks(ctx, m.p_mask(), m.q_mask());
    Ok(DerivedTriplet {
        context,
        predicate: predicate.clone(),
        value,
        vacuous,
        mixed,
    })
}

/// Triplets of every declared context, in slot order.
pub fn derive_all(m: &FiniteModel, predicate: &Atom) -> Vec<DerivedTriplet> {
    ContextSlot::ALL
        .into_iter()
        .filter(|&s| m.has_context(s))
        .map(|s| derive_triplet(m, s, predicate).expect("declared"))
        .collect()
}

/// Componentwise OR of the derived flags of every declared context.
pub fn combine(triplets: &[DerivedTriplet]) -> Option<TruthValue> {
    let (t, f, u) = triplets.iter().fold((false, false, false), |(t, f, u), d| {
        (t || d.value.t(), f || d.value.f(), u || d.value.u())
    });
    TruthValue::new(t, f, u).ok()
}

/// A minimal model whose pairwise disjoint contexts jointly express `v`.
///
/// Each set flag gets its own context: `t` a context inside `p`, `f` one
/// outside `p`, `u` one inside `q`. The element of the `u` context sits
/// outside `p` when `f` is set, else inside `p` when `t` is set, so it adds
/// no stray flag. For `(0,0,1)` it is a two-element context split by `p`.
pub fn realize_value(v: TruthValue) -> FiniteModel {
    let mut n = 0;
    let mut contexts: Vec<u64> = Vec::new();
    let (mut p, mut q) = (0u64, 0u64);
    let mut fresh = || {
        let bit = 1u64 << n;
        n += 1;
        bit
    };
    if v.t() {
        let e = fresh();
        p |= e;
        contexts.push(e);
    }
    if v.f() {
        contexts.push(fresh());
    }
    if v.u() {
        let e = fresh();
        let ctx = if v.f() {
            e
        } else if v.t() {
            p |= e;
            e
        } else {
            let e2 = fresh();
            p |= e;
            e | e2
        };
        q |= ctx;
        contexts.push(ctx);
    }
    FiniteModel::from_masks(n, contexts[0], contexts.get(1).copied(), contexts.get(2).copied(), p, q)
}

/// The form whose satisfaction [`realize_value`]'s model witnesses.
pub fn form_for_value(v: TruthValue) -> Form {
    match (v.t(), v.f(), v.u()) {
        (true, false, false) => Form::I,
        (false, true, false) => Form::II,
        (false, false, true) => Form::III,
        (true, true, false) => Form::IV,
        (true, false, true) => Form::V,
        (false, true, true) => Form::VI,
        _ => Form::VII,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct ContradictionReport {
    pub seed: u64,
    pub samples: u64,
    pub max_domain: usize,
    pub contexts_checked: u64,
    pub uniform: u64,
    pub vacuous: u64,
    pub mixed: u64,
    /// Uniform contexts that derived `t = f = 1`.
    pub violations: u64,
}

/// The `index`-th sampled model of a seeded run. Independent of execution
/// order: each sample draws from its own ChaCha stream.
pub fn sample_model(seed: u64, index: u64, max_domain: usize) -> FiniteModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let n = rng.gen_range(1..=max_domain);
    let full = (1u64 << n) - 1;
    let mut mask = || rng.gen::<u64>() & full;
    let (phi, phi2, phi3, p, q) = (mask(), mask(), mask(), mask(), mask());
    FiniteModel::from_masks(n, phi, Some(phi2), Some(phi3), p, q)
}

/// Samples `samples` random models and counts uniform contexts deriving
/// both `t` and `f`.
pub fn verify_no_intra_context_contradiction(
    samples: u64,
    max_domain: usize,
    seed: u64,
    exec: Execution,
) -> Result<ContradictionReport, BridgeError> {
    if max_domain == 0 || max_domain > MAX_SAMPLE_DOMAIN {
        return Err(BridgeError::SampleDomain(max_domain));
    }
    let tally = |index: u64| {
        let m = sample_model(seed, index, max_domain);
        let mut r = ContradictionReport::default();
        for slot in ContextSlot::ALL {
            let ctx = m.context_mask(slot).expect("sampled models declare all contexts");
            let (v, vacuous, mixed) = derive_from_masks(ctx, m.p_mask(), m.q_mask());
            r.contexts_checked += 1;
            if vacuous {
                r.vacuous += 1;
            } else if mixed {
                r.mixed += 1;
            } else {
                r.uniform += 1;
                if v.t() && v.f() {
                    r.violations += 1;
                }
            }
        }
        r
    };
    let mut report = exec::map_reduce(exec, samples, ContradictionReport::default(), tally, |a, b| {
        ContradictionReport {
            contexts_checked: a.contexts_checked + b.contexts_checked,
            uniform: a.uniform + b.uniform,
            vacuous: a.vacuous + b.vacuous,
            mixed: a.mixed + b.mixed,
            violations: a.violations + b.violations,
            ..Default::default()
        }
    });
    report.seed = seed;
    report.samples = samples;
    report.max_domain = max_domain;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantlogic::{check_form, corpus, DistinctnessMode};

    fn p() -> Atom {
        Atom::new("p").unwrap()
    }

    #[test]
    fn claypot_triplets() {
        let m = corpus::claypot();
        assert_eq!(
            derive_triplet(&m, ContextSlot::Phi, &p()).unwrap().value,
            TruthValue::V1
        );
        assert_eq!(
            derive_triplet(&m, ContextSlot::Phi2, &p()).unwrap().value,
            TruthValue::V2
        );
        let d = derive_triplet(&m, ContextSlot::Phi3, &p()).unwrap();
        // pot_firing is outside p and inside q
        assert_eq!(d.value, TruthValue::V6);
        assert!(d.is_uniform());
    }

    #[test]
    fn vacuous_and_undeclared() {
        let m = FiniteModel::from_sets(&["a"], &[], None, None, &["a"], &["a"]).unwrap();
        let d = derive_triplet(&m, ContextSlot::Phi, &p()).unwrap();
        assert_eq!(d.value, TruthValue::V4);
        assert!(d.vacuous);
        assert_eq!(
            derive_triplet(&m, ContextSlot::Phi2, &p()),
            Err(BridgeError::UndeclaredContext(ContextSlot::Phi2))
        );
    }

    #[test]
    fn mixed_context() {
        let m = FiniteModel::from_sets(&["a", "b"], &["a", "b"], None, None, &["a"], &[]).unwrap();
        let d = derive_triplet(&m, ContextSlot::Phi, &p()).unwrap();
        assert_eq!(d.value, TruthValue::V3);
        assert!(d.mixed);
    }

    #[test]
    fn single_element_samples() {
        let m = FiniteModel::from_sets(&["a"], &["a"], None, None, &["a"], &[]).unwrap();
        let v = derive_triplet(&m, ContextSlot::Phi, &p()).unwrap().value;
        assert!(v.t() && !v.f());
        let m = FiniteModel::from_sets(&["a"], &["a"], None, None, &[], &[]).unwrap();
        let v = derive_triplet(&m, ContextSlot::Phi, &p()).unwrap().value;
        assert!(!v.t() && v.f());
    }

    #[test]
    fn realize_examples() {
        assert_eq!(
            realize_value(TruthValue::V1).to_json(),
            r#"{"domain":["e0"],"phi":["e0"],"p":["e0"],"q":[]}"#
        );
        assert_eq!(
            realize_value(TruthValue::V3).to_json(),
            r#"{"domain":["e0","e1"],"phi":["e0"],"phi2":["e1"],"p":["e0"],"q":[]}"#
        );
        assert_eq!(
            realize_value(TruthValue::V7).to_json(),
            r#"{"domain":["e0","e1","e2"],"phi":["e0"],"phi2":["e1"],"phi3":["e2"],"p":["e0"],"q":["e2"]}"#
        );
    }

    #[test]
    fn realize_round_trips_and_satisfies_its_form() {
        for v in TruthValue::ALL {
            let m = realize_value(v);
            assert!(m.domain().len() <= 3);
            assert_eq!(combine(&derive_all(&m, &p())), Some(v), "{v:?}");
            let verdict = check_form(&m, form_for_value(v), DistinctnessMode::Disjoint).unwrap();
            assert!(verdict.holds, "{v:?} {verdict:?}");
        }
    }

    #[test]
    fn sampling_is_reproducible_and_clean() {
        let a = verify_no_intra_context_contradiction(500, 4, 7, Execution::Sequential).unwrap();
        let b = verify_no_intra_context_contradiction(500, 4, 7, Execution::Parallel).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.violations, 0);
        assert_eq!(a.contexts_checked, 1500);
        assert_eq!(a.uniform + a.vacuous + a.mixed, 1500);
        assert!(a.uniform > 0);
        assert_eq!(
            verify_no_intra_context_contradiction(1, 5, 0, Execution::Sequential),
            Err(BridgeError::SampleDomain(5))
        );
    }

    #[test]
    fn triplet_json() {
        let m = corpus::claypot();
        let d = derive_triplet(&m, ContextSlot::Phi, &p()).unwrap();
        assert_eq!(
            serde_json::to_string(&d).unwrap(),
            r#"{"context":"phi","predicate":"p","value":[1,0,0],"name":"ASTI","vacuous":false,"mixed":false}"#
        );
    }
}
