//! Finite-domain checker for the seven quantified-conditional predications.
//!
//! A model has a finite domain, up to three context predicates `φ, φ′, φ″`,
//! the property `p` and the indescribability predicate `q`, all unary.
//! Each form is a universally quantified conjunction of conditionals,
//! plus a distinctness requirement on the contexts it mentions:
//!
//! | form | body                                   | distinct pairs          |
//! |------|----------------------------------------|-------------------------|
//! | I    | `φ→p`                                  |                         |
//! | II   | `φ→¬p`                                 |                         |
//! | III  | `φ→q`                                  |                         |
//! | IV   | `(φ→p) ∧ (φ′→¬p)`                      | `(φ,φ′)`                |
//! | V    | `(φ→p) ∧ (φ′→q)`                       | `(φ,φ′)`                |
//! | VI   | `(φ→¬p) ∧ (φ′→q)`                      | `(φ,φ′)`                |
//! | VII  | `(φ→p) ∧ (φ′→¬p) ∧ (φ″→q)`             | `(φ,φ′) (φ′,φ″) (φ,φ″)` |
//!
//! Subsets are stored as bit masks over the domain (element `i` is bit `i`),
//! which caps domains at 64 elements.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::exec::{self, Execution};

pub const MAX_DOMAIN: usize = 64;
pub const MAX_SEARCH_DOMAIN: usize = 6;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("cannot read model file")]
    Io(#[from] std::io::Error),
    #[error("malformed model file")]
    Json(#[from] serde_json::Error),
    #[error("model domain is empty")]
    EmptyDomain,
    #[error("model domain has {0} elements, at most {MAX_DOMAIN} are supported")]
    DomainTooLarge(usize),
    #[error("element `{0}` appears twice in the domain")]
    DuplicateElement(String),
    #[error("`{predicate}` mentions `{element}`, which is not in the domain")]
    UnknownElement { predicate: &'static str, element: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("form {form} needs context {slot}, which the model does not declare")]
    MissingContext { form: Form, slot: ContextSlot },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("domain size must be between 1 and {MAX_SEARCH_DOMAIN}, got {0}")]
    SizeCap(usize),
}

/// One of the three context predicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ContextSlot {
    Phi,
    Phi2,
    Phi3,
}

impl ContextSlot {
    pub const ALL: [ContextSlot; 3] = [ContextSlot::Phi, ContextSlot::Phi2, ContextSlot::Phi3];

    pub fn as_str(self) -> &'static str {
        match self {
            ContextSlot::Phi => "phi",
            ContextSlot::Phi2 => "phi2",
            ContextSlot::Phi3 => "phi3",
        }
    }
}

impl fmt::Display for ContextSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ContextSlot {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ContextSlot::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown context `{s}` (expected phi, phi2, phi3)"))
    }
}

impl Serialize for ContextSlot {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Form {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
}

/// The consequent of a conditional clause.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Literal {
    P,
    NotP,
    Q,
}

impl Form {
    pub const ALL: [Form; 7] = [Form::I, Form::II, Form::III, Form::IV, Form::V, Form::VI, Form::VII];

    pub fn as_str(self) -> &'static str {
        match self {
            Form::I => "I",
            Form::II => "II",
            Form::III => "III",
            Form::IV => "IV",
            Form::V => "V",
            Form::VI => "VI",
            Form::VII => "VII",
        }
    }

    /// The conditionals `context(x) → literal(x)` of the body.
    pub fn clauses(self) -> &'static [(ContextSlot, Literal)] {
        use ContextSlot::*;
        use Literal::*;
        match self {
            Form::I => &[(Phi, P)],
            Form::II => &[(Phi, NotP)],
            Form::III => &[(Phi, Q)],
            Form::IV => &[(Phi, P), (Phi2, NotP)],
            Form::V => &[(Phi, P), (Phi2, Q)],
            Form::VI => &[(Phi, NotP), (Phi2, Q)],
            Form::VII => &[(Phi, P), (Phi2, NotP), (Phi3, Q)],
        }
    }

    /// Context pairs that must be distinct.
    pub fn distinct_pairs(self) -> &'static [(ContextSlot, ContextSlot)] {
        use ContextSlot::*;
        match self {
            Form::I | Form::II | Form::III => &[],
            Form::IV | Form::V | Form::VI => &[(Phi, Phi2)],
            Form::VII => &[(Phi, Phi2), (Phi2, Phi3), (Phi, Phi3)],
        }
    }

    pub fn uses(self, slot: ContextSlot) -> bool {
        self.clauses().iter().any(|(s, _)| *s == slot)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Form {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let upper = s.trim().to_ascii_uppercase();
        Form::ALL
            .into_iter()
            .find(|f| f.as_str() == upper)
            .ok_or_else(|| format!("unknown form `{s}` (expected i..vii)"))
    }
}

impl Serialize for Form {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// How the distinctness clause between two contexts is closed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DistinctnessMode {
    /// No element satisfies both contexts.
    #[default]
    Disjoint,
    /// Some element satisfies exactly one of them.
    NotCoextensive,
    /// Every element satisfies exactly one of them.
    PointwiseXor,
}

impl DistinctnessMode {
    pub const ALL: [DistinctnessMode; 3] = [
        DistinctnessMode::Disjoint,
        DistinctnessMode::NotCoextensive,
        DistinctnessMode::PointwiseXor,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DistinctnessMode::Disjoint => "disjoint",
            DistinctnessMode::NotCoextensive => "notcoext",
            DistinctnessMode::PointwiseXor => "xor",
        }
    }

    fn distinct(self, a: u64, b: u64, full: u64) -> bool {
        match self {
            DistinctnessMode::Disjoint => a & b == 0,
            DistinctnessMode::NotCoextensive => a != b,
            DistinctnessMode::PointwiseXor => a ^ b == full,
        }
    }
}

impl fmt::Display for DistinctnessMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DistinctnessMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DistinctnessMode::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown distinctness mode `{s}` (expected disjoint, notcoext, xor)"))
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    domain: Vec<String>,
    phi: Vec<String>,
    phi2: Option<Vec<String>>,
    phi3: Option<Vec<String>>,
    #[serde(default)]
    p: Vec<String>,
    #[serde(default)]
    q: Vec<String>,
}

/// A finite model over unary predicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteModel {
    domain: Vec<String>,
    phi: u64,
    phi2: Option<u64>,
    phi3: Option<u64>,
    p: u64,
    q: u64,
}

impl FiniteModel {
    /// Builds a model from element names. `phi2`/`phi3` of `None` leave the
    /// context undeclared.
    pub fn from_sets(
        domain: &[&str],
        phi: &[&str],
        phi2: Option<&[&str]>,
        phi3: Option<&[&str]>,
        p: &[&str],
        q: &[&str],
    ) -> Result<Self, ModelError> {
        let own = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        Self::from_raw(RawModel {
            domain: own(domain),
            phi: own(phi),
            phi2: phi2.map(own),
            phi3: phi3.map(own),
            p: own(p),
            q: own(q),
        })
    }

    pub fn from_json(json: &str) -> Result<Self, ModelError> {
        Self::from_raw(serde_json::from_str(json)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ModelError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    fn from_raw(raw: RawModel) -> Result<Self, ModelError> {
        if raw.domain.is_empty() {
            return Err(ModelError::EmptyDomain);
        }
        if raw.domain.len() > MAX_DOMAIN {
            return Err(ModelError::DomainTooLarge(raw.domain.len()));
        }
        for (i, e) in raw.domain.iter().enumerate() {
            if raw.domain[..i].contains(e) {
                return Err(ModelError::DuplicateElement(e.clone()));
            }
        }
        let mask = |predicate: &'static str, xs: &[String]| -> Result<u64, ModelError> {
            xs.iter().try_fold(0u64, |acc, x| {
                let i = raw
                    .domain
                    .iter()
                    .position(|d| d == x)
                    .ok_or_else(|| ModelError::UnknownElement {
                        predicate,
                        element: x.clone(),
                    })?;
                Ok(acc | 1 << i)
            })
        };
        Ok(FiniteModel {
            phi: mask("phi", &raw.phi)?,
            phi2: raw.phi2.as_deref().map(|x| mask("phi2", x)).transpose()?,
            phi3: raw.phi3.as_deref().map(|x| mask("phi3", x)).transpose()?,
            p: mask("p", &raw.p)?,
            q: mask("q", &raw.q)?,
            domain: raw.domain,
        })
    }

    /// A model over `e0..e{n-1}` from raw masks. Used by the searches.
    pub(crate) fn from_masks(n: usize, phi: u64, phi2: Option<u64>, phi3: Option<u64>, p: u64, q: u64) -> Self {
        FiniteModel {
            domain: (0..n).map(|i| format!("e{i}")).collect(),
            phi,
            phi2,
            phi3,
            p,
            q,
        }
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    fn full(&self) -> u64 {
        full_mask(self.domain.len())
    }

    pub fn context_mask(&self, slot: ContextSlot) -> Option<u64> {
        match slot {
            ContextSlot::Phi => Some(self.phi),
            ContextSlot::Phi2 => self.phi2,
            ContextSlot::Phi3 => self.phi3,
        }
    }

    pub fn p_mask(&self) -> u64 {
        self.p
    }

    pub fn q_mask(&self) -> u64 {
        self.q
    }

    pub fn has_context(&self, slot: ContextSlot) -> bool {
        self.context_mask(slot).is_some()
    }

    fn names(&self, mask: u64) -> Vec<&str> {
        self.domain
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, e)| e.as_str())
            .collect()
    }

    /// Elements of a context in domain order, or `None` if undeclared.
    pub fn context(&self, slot: ContextSlot) -> Option<Vec<&str>> {
        self.context_mask(slot).map(|m| self.names(m))
    }

    pub fn p(&self) -> Vec<&str> {
        self.names(self.p)
    }

    pub fn q(&self) -> Vec<&str> {
        self.names(self.q)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("model serializes")
    }
}

impl Serialize for FiniteModel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("domain", &self.domain)?;
        map.serialize_entry("phi", &self.names(self.phi))?;
        if let Some(m) = self.phi2 {
            map.serialize_entry("phi2", &self.names(m))?;
        }
        if let Some(m) = self.phi3 {
            map.serialize_entry("phi3", &self.names(m))?;
        }
        map.serialize_entry("p", &self.names(self.p))?;
        map.serialize_entry("q", &self.names(self.q))?;
        map.end()
    }
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormVerdict {
    pub form: Form,
    pub holds: bool,
    /// First element (in domain order) falsifying the quantified body.
    pub witness: Option<String>,
    /// First context pair failing the distinctness clause.
    pub pair: Option<(ContextSlot, ContextSlot)>,
}

fn required_masks(m: &FiniteModel, form: Form) -> Result<[u64; 3], FormError> {
    let mut out = [0u64; 3];
    for slot in ContextSlot::ALL {
        let needed = form.uses(slot);
        match m.context_mask(slot) {
            Some(mask) => out[slot as usize] = mask,
            None if needed => return Err(FormError::MissingContext { form, slot }),
            None => {}
        }
    }
    Ok(out)
}

/// Evaluates one form classically over the model's domain.
pub fn check_form(m: &FiniteModel, form: Form, mode: DistinctnessMode) -> Result<FormVerdict, FormError> {
    let ctx = required_masks(m, form)?;
    let n = m.domain.len();
    let holds_at = |slot: ContextSlot, lit: Literal, x: usize| {
        let in_ctx = ctx[slot as usize] >> x & 1 == 1;
        let sat = match lit {
            Literal::P => m.p >> x & 1 == 1,
            Literal::NotP => m.p >> x & 1 == 0,
            Literal::Q => m.q >> x & 1 == 1,
        };
        !in_ctx || sat
    };
    let witness = (0..n)
        .find(|&x| !form.clauses().iter().all(|&(s, l)| holds_at(s, l, x)))
        .map(|x| m.domain[x].clone());
    let pair = if witness.is_none() {
        form.distinct_pairs()
            .iter()
            .copied()
            .find(|&(a, b)| !mode.distinct(ctx[a as usize], ctx[b as usize], m.full()))
    } else {
        None
    };
    Ok(FormVerdict {
        form,
        holds: witness.is_none() && pair.is_none(),
        witness,
        pair,
    })
}

/// Evaluates all seven forms on one model.
pub fn check_all_forms(m: &FiniteModel, mode: DistinctnessMode) -> Result<Vec<FormVerdict>, FormError> {
    Form::ALL.into_iter().map(|f| check_form(m, f, mode)).collect()
}

/// Searches all models over `e0..e{n-1}` for one satisfying every form in
/// `forms` simultaneously.
///
/// Candidates are ordered lexicographically by the masks of
/// `(φ, φ′, φ″, p, q)`, each mask read as a binary counter with `e0` as
/// the lowest bit. `φ′` is only varied when a requested form uses it, and
/// likewise `φ″`; unused contexts are left undeclared. Among satisfying
/// models, those with the most non-empty requested contexts are preferred,
/// and the first such model in canonical order is returned.
pub fn find_joint_model(
    domain_size: usize,
    forms: &[Form],
    mode: DistinctnessMode,
    exec: Execution,
) -> Result<Option<FiniteModel>, SearchError> {
    if domain_size == 0 || domain_size > MAX_SEARCH_DOMAIN {
        return Err(SearchError::SizeCap(domain_size));
    }
    let n = domain_size;
    let full = full_mask(n);
    let side = 1u64 << n;
    let used: Vec<ContextSlot> = ContextSlot::ALL
        .into_iter()
        .filter(|&s| s == ContextSlot::Phi || forms.iter().any(|f| f.uses(s)))
        .collect();
    let total = side.pow(used.len() as u32);

    // p and q only appear positively or negatively per element, so for a
    // fixed choice of contexts the least satisfying p and q are exactly
    // the elements forced into them.
    let solve = |index: u64| -> Option<Hit> {
        let mut ctx = [0u64; 3];
        let mut rest = index;
        for &slot in used.iter().rev() {
            ctx[slot as usize] = rest % side;
            rest /= side;
        }
        let (mut must_p, mut must_not_p, mut must_q) = (0u64, 0u64, 0u64);
        for form in forms {
            for &(slot, lit) in form.clauses() {
                let c = ctx[slot as usize];
                match lit {
                    Literal::P => must_p |= c,
                    Literal::NotP => must_not_p |= c,
                    Literal::Q => must_q |= c,
                }
            }
            let distinct = form
                .distinct_pairs()
                .iter()
                .all(|&(a, b)| mode.distinct(ctx[a as usize], ctx[b as usize], full));
            if !distinct {
                return None;
            }
        }
        if must_p & must_not_p != 0 {
            return None;
        }
        Some(Hit {
            score: used.iter().filter(|&&s| ctx[s as usize] != 0).count() as u32,
            index,
            ctx,
            p: must_p,
            q: must_q,
        })
    };

    let best = exec::map_reduce(exec, total, None, solve, |a: Option<Hit>, b| match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => Some(if b.better_than(&a) { b } else { a }),
    });
    Ok(best.map(|h| {
        let declared = |s: ContextSlot| used.contains(&s).then_some(h.ctx[s as usize]);
        FiniteModel::from_masks(
            n,
            h.ctx[0],
            declared(ContextSlot::Phi2),
            declared(ContextSlot::Phi3),
            h.p,
            h.q,
        )
    }))
}

#[derive(Debug, Clone, Copy)]
struct Hit {
    score: u32,
    index: u64,
    ctx: [u64; 3],
    p: u64,
    q: u64,
}

impl Hit {
    fn better_than(&self, other: &Hit) -> bool {
        self.score > other.score || (self.score == other.score && self.index < other.index)
    }
}

/// The bundled three-pot model.
pub mod corpus {
    use super::FiniteModel;

    pub const CLAYPOT: &str = include_str!("../data/models/claypot.json");

    pub fn claypot() -> FiniteModel {
        FiniteModel::from_json(CLAYPOT).expect("bundled model is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verdict(m: &FiniteModel, f: Form, d: DistinctnessMode) -> FormVerdict {
        check_form(m, f, d).unwrap()
    }

    #[test]
    fn form_one_examples() {
        let m = FiniteModel::from_sets(&["pot1"], &["pot1"], None, None, &["pot1"], &[]).unwrap();
        assert!(verdict(&m, Form::I, DistinctnessMode::Disjoint).holds);

        let m = FiniteModel::from_sets(&["a"], &["a"], None, None, &[], &[]).unwrap();
        let v = verdict(&m, Form::I, DistinctnessMode::Disjoint);
        assert!(!v.holds);
        assert_eq!(v.witness.as_deref(), Some("a"));
    }

    #[test]
    fn form_four_disjoint() {
        let m = FiniteModel::from_sets(&["pot1", "pot2"], &["pot1"], Some(&["pot2"]), None, &["pot1"], &[]).unwrap();
        assert!(verdict(&m, Form::IV, DistinctnessMode::Disjoint).holds);
    }

    #[test]
    fn missing_contexts() {
        let m = FiniteModel::from_sets(&["a"], &["a"], None, None, &["a"], &[]).unwrap();
        assert_eq!(
            check_form(&m, Form::IV, DistinctnessMode::Disjoint),
            Err(FormError::MissingContext {
                form: Form::IV,
                slot: ContextSlot::Phi2
            })
        );
        let m = FiniteModel::from_sets(&["a"], &["a"], Some(&[]), None, &["a"], &[]).unwrap();
        assert_eq!(
            check_form(&m, Form::VII, DistinctnessMode::Disjoint),
            Err(FormError::MissingContext {
                form: Form::VII,
                slot: ContextSlot::Phi3
            })
        );
        assert!(check_all_forms(&m, DistinctnessMode::Disjoint).is_err());
    }

    #[test]
    fn claypot_verdicts() {
        let m = corpus::claypot();
        let vs = check_all_forms(&m, DistinctnessMode::Disjoint).unwrap();
        let holding: Vec<Form> = vs.iter().filter(|v| v.holds).map(|v| v.form).collect();
        assert_eq!(holding, vec![Form::I, Form::IV, Form::VII]);
        assert_eq!(vs[1].witness.as_deref(), Some("pot_baked"));
        assert_eq!(vs[4].witness.as_deref(), Some("pot_unbaked"));
    }

    #[test]
    fn empty_contexts_hold_vacuously_and_fail_notcoext() {
        let m = FiniteModel::from_sets(&["a", "b"], &[], Some(&[]), Some(&[]), &["a"], &["a", "b"]).unwrap();
        let vs = check_all_forms(&m, DistinctnessMode::NotCoextensive).unwrap();
        for v in &vs[..3] {
            assert!(v.holds, "{:?}", v);
        }
        for v in &vs[3..] {
            assert!(!v.holds);
            assert!(v.witness.is_none());
            assert_eq!(v.pair, Some((ContextSlot::Phi, ContextSlot::Phi2)));
        }
    }

    #[test]
    fn xor_of_identical_contexts_fails() {
        let m = FiniteModel::from_sets(&["a", "b"], &["a"], Some(&["a"]), Some(&["b"]), &[], &["a", "b"]).unwrap();
        for f in [Form::IV, Form::V, Form::VI, Form::VII] {
            let v = verdict(&m, f, DistinctnessMode::PointwiseXor);
            assert!(!v.holds);
        }
    }

    #[test]
    fn joint_model_examples() {
        let m = find_joint_model(1, &[Form::I], DistinctnessMode::Disjoint, Execution::Sequential)
            .unwrap()
            .unwrap();
        assert_eq!(m.to_json(), r#"{"domain":["e0"],"phi":["e0"],"p":["e0"],"q":[]}"#);

        for d in DistinctnessMode::ALL {
            let m = find_joint_model(1, &[Form::I, Form::II], d, Execution::Sequential)
                .unwrap()
                .unwrap();
            assert!(m.context(ContextSlot::Phi).unwrap().is_empty());
        }
    }

    #[test]
    fn search_size_cap() {
        assert_eq!(
            find_joint_model(7, &[Form::I], DistinctnessMode::Disjoint, Execution::Sequential),
            Err(SearchError::SizeCap(7))
        );
        assert_eq!(
            find_joint_model(0, &[Form::I], DistinctnessMode::Disjoint, Execution::Sequential),
            Err(SearchError::SizeCap(0))
        );
    }

    #[test]
    fn search_strategies_agree() {
        let forms = [Form::IV, Form::V, Form::VI, Form::VII];
        for d in DistinctnessMode::ALL {
            let a = find_joint_model(4, &forms, d, Execution::Sequential).unwrap();
            let b = find_joint_model(4, &forms, d, Execution::Parallel).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn model_file_validation() {
        assert!(matches!(
            FiniteModel::from_json(r#"{"domain": [], "phi": []}"#),
            Err(ModelError::EmptyDomain)
        ));
        assert!(matches!(
            FiniteModel::from_json(r#"{"domain": ["a"], "phi": ["b"]}"#),
            Err(ModelError::UnknownElement { predicate: "phi", .. })
        ));
        assert!(matches!(
            FiniteModel::from_json(r#"{"domain": ["a", "a"], "phi": []}"#),
            Err(ModelError::DuplicateElement(_))
        ));
        assert!(matches!(
            FiniteModel::from_json(r#"{"domain": ["a"], "phi": [], "r": []}"#),
            Err(ModelError::Json(_))
        ));
        let m = FiniteModel::from_json(r#"{"domain": ["a", "b"], "phi": ["b"]}"#).unwrap();
        assert!(!m.has_context(ContextSlot::Phi2));
        assert!(m.p().is_empty());
    }

    #[test]
    fn parse_names() {
        assert_eq!("iv".parse::<Form>().unwrap(), Form::IV);
        assert_eq!("VII".parse::<Form>().unwrap(), Form::VII);
        assert!("viii".parse::<Form>().is_err());
        assert_eq!(
            "notcoext".parse::<DistinctnessMode>().unwrap(),
            DistinctnessMode::NotCoextensive
        );
        assert_eq!("phi3".parse::<ContextSlot>().unwrap(), ContextSlot::Phi3);
    }
}
