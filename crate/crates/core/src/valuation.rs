//! Context-indexed valuations and the brute-force sequent checker.
//!
//! A sequent `Γ ⇒ Δ [c]` is valid when every valuation in context `c`
//! either leaves some premise undesignated or designates some conclusion.
//! Validity is decided by enumerating all `7^n` assignments to the `n`
//! atoms of the sequent.

use std::fmt;
use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::{self, Execution};
use crate::formula::{Atom, Formula};
use crate::truth::TruthValue;

pub const DEFAULT_ATOM_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("atom `{0}` is not assigned")]
    Unassigned(Atom),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequentError {
    #[error("sequent has {atoms} atoms, above the enumeration cap of {cap}")]
    CapExceeded { atoms: usize, cap: usize },
}

#[derive(Debug, Error)]
pub enum ValuationFileError {
    #[error("cannot read valuation file")]
    Io(#[from] std::io::Error),
    #[error("malformed valuation file")]
    Json(#[from] serde_json::Error),
    #[error("invalid context name `{0}`")]
    Context(String),
}

/// Name of an evaluation context.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ContextId(String);

impl ContextId {
    pub fn new(name: impl Into<String>) -> Result<Self, String> {
        let name = name.into();
        if name.trim().is_empty() {
            Err(name)
        } else {
            Ok(ContextId(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for ContextId {
    type Error = String;
    fn try_from(s: String) -> Result<Self, String> {
        ContextId::new(s).map_err(|s| format!("invalid context name `{s}`"))
    }
}

impl From<ContextId> for String {
    fn from(c: ContextId) -> String {
        c.0
    }
}

impl fmt::Display for ContextId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Atom-to-value map. Iteration follows insertion order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Assignment(IndexMap<Atom, TruthValue>);

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, atom: &Atom) -> Option<TruthValue> {
        self.0.get(atom).copied()
    }

    pub fn insert(&mut self, atom: Atom, value: TruthValue) -> Option<TruthValue> {
        self.0.insert(atom, value)
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.0.contains_key(atom)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Atom, TruthValue)> {
        self.0.iter().map(|(a, v)| (a, *v))
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.0.keys()
    }

    pub fn evaluate(&self, f: &Formula) -> Result<TruthValue, EvalError> {
        Ok(match f {
            Formula::Atom(a) => self.get(a).ok_or_else(|| EvalError::Unassigned(a.clone()))?,
            Formula::Not(g) => self.evaluate(g)?.negate(),
            Formula::And(a, b) => self.evaluate(a)?.conj(self.evaluate(b)?),
            Formula::Or(a, b) => self.evaluate(a)?.disj(self.evaluate(b)?),
            Formula::Implies(a, b) => self.evaluate(a)?.implies(self.evaluate(b)?),
        })
    }
}

impl FromIterator<(Atom, TruthValue)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (Atom, TruthValue)>>(iter: I) -> Self {
        Assignment(iter.into_iter().collect())
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, v)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}={}", v.name())?;
        }
        Ok(())
    }
}

/// The assignment `V(·, c)` for one context.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Valuation {
    pub context: ContextId,
    pub assignment: Assignment,
}

impl Valuation {
    pub fn new(context: ContextId, assignment: Assignment) -> Self {
        Valuation { context, assignment }
    }

    pub fn get(&self, atom: &Atom) -> Option<TruthValue> {
        self.assignment.get(atom)
    }
}

/// Evaluates `f` under `v`. Fails on the first unassigned atom met in
/// left-to-right order.
pub fn evaluate(f: &Formula, v: &Valuation) -> Result<TruthValue, EvalError> {
    v.assignment.evaluate(f)
}

/// Reads `{"context": {"atom": [t,f,u], ...}, ...}`.
pub fn parse_valuations(json: &str) -> Result<Vec<Valuation>, ValuationFileError> {
    let raw: IndexMap<String, Assignment> = serde_json::from_str(json)?;
    raw.into_iter()
        .map(|(c, a)| {
            let context = ContextId::new(c).map_err(ValuationFileError::Context)?;
            Ok(Valuation::new(context, a))
        })
        .collect()
}

pub fn load_valuations(path: impl AsRef<Path>) -> Result<Vec<Valuation>, ValuationFileError> {
    parse_valuations(&std::fs::read_to_string(path)?)
}

/// `Γ ⇒ Δ [c]` with duplicate formulas removed on each side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequent {
    gamma: Vec<Formula>,
    delta: Vec<Formula>,
    context: ContextId,
}

fn dedup(fs: Vec<Formula>) -> Vec<Formula> {
    let mut out: Vec<Formula> = Vec::with_capacity(fs.len());
    for f in fs {
        if !out.contains(&f) {
            out.push(f);
        }
    }
    out
}

impl Sequent {
    pub fn new(gamma: Vec<Formula>, delta: Vec<Formula>, context: ContextId) -> Self {
        Sequent {
            gamma: dedup(gamma),
            delta: dedup(delta),
            context,
        }
    }

    pub fn gamma(&self) -> &[Formula] {
        &self.gamma
    }

    pub fn delta(&self) -> &[Formula] {
        &self.delta
    }

    pub fn context(&self) -> &ContextId {
        &self.context
    }

    /// Atoms of Γ then Δ, in first-occurrence order.
    pub fn atoms(&self) -> Vec<Atom> {
        let mut out = Vec::new();
        for f in self.gamma.iter().chain(&self.delta) {
            f.collect_atoms(&mut out);
        }
        out
    }

    /// Whether `assignment` falsifies the sequent: every premise designated
    /// and no conclusion designated.
    pub fn is_countermodel(&self, assignment: &Assignment) -> Result<bool, EvalError> {
        for g in &self.gamma {
            if !assignment.evaluate(g)?.is_designated() {
                return Ok(false);
            }
        }
        for d in &self.delta {
            if assignment.evaluate(d)?.is_designated() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |fs: &[Formula]| fs.iter().map(Formula::print).collect::<Vec<_>>().join(", ");
        write!(f, "{} => {} [{}]", side(&self.gamma), side(&self.delta), self.context)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntailmentResult {
    pub valid: bool,
    pub countermodel: Option<Valuation>,
    /// All assignments when valid; the 1-based index of the countermodel
    /// when invalid.
    pub valuations_checked: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationOptions {
    pub cap: usize,
    /// Restrict every atom to `{(1,0,0), (0,1,0)}`.
    pub classical_only: bool,
    pub execution: Execution,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            cap: DEFAULT_ATOM_CAP,
            classical_only: false,
            execution: Execution::default(),
        }
    }
}

const CLASSICAL: [TruthValue; 2] = [TruthValue::V1, TruthValue::V2];

/// Postfix program over atom slots; evaluation needs no recursion.
#[derive(Debug, Clone)]
enum Op {
    Load(usize),
    Not,
    And,
    Or,
    Implies,
}

fn compile(f: &Formula, atoms: &[Atom], out: &mut Vec<Op>) {
    match f {
        Formula::Atom(a) => {
            let slot = atoms.iter().position(|b| b == a).expect("atom collected");
            out.push(Op::Load(slot));
        }
        Formula::Not(g) => {
            compile(g, atoms, out);
            out.push(Op::Not);
        }
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            compile(a, atoms, out);
            compile(b, atoms, out);
            out.push(match f {
                Formula::And(..) => Op::And,
                Formula::Or(..) => Op::Or,
                _ => Op::Implies,
            });
        }
    }
}

fn run(program: &[Op], values: &[TruthValue], stack: &mut Vec<TruthValue>) -> TruthValue {
    stack.clear();
    for op in program {
        match *op {
            Op::Load(i) => stack.push(values[i]),
            Op::Not => {
                let v = stack.pop().expect("operand");
                stack.push(v.negate());
            }
            Op::And | Op::Or | Op::Implies => {
                let b = stack.pop().expect("operand");
                let a = stack.pop().expect("operand");
                stack.push(match *op {
                    Op::And => a.conj(b),
                    Op::Or => a.disj(b),
                    _ => a.implies(b),
                });
            }
        }
    }
    stack.pop().expect("result")
}

/// Decides validity by exhaustive enumeration.
///
/// Assignments are visited lexicographically: the first atom is the most
/// significant position and values run `V1..V7`. The reported countermodel
/// is the first one in that order regardless of execution strategy.
pub fn check_sequent(s: &Sequent, opts: &EnumerationOptions) -> Result<EntailmentResult, SequentError> {
    let atoms = s.atoms();
    let n = atoms.len();
    if n > opts.cap {
        return Err(SequentError::CapExceeded {
            atoms: n,
            cap: opts.cap,
        });
    }
    let domain: &[TruthValue] = if opts.classical_only {
        &CLASSICAL
    } else {
        &TruthValue::ALL
    };
    let base = domain.len() as u64;
    let total = base.checked_pow(n as u32).ok_or(SequentError::CapExceeded {
        atoms: n,
        cap: opts.cap,
    })?;

    let compile_side = |fs: &[Formula]| -> Vec<Vec<Op>> {
        fs.iter()
            .map(|f| {
                let mut prog = Vec::new();
                compile(f, &atoms, &mut prog);
                prog
            })
            .collect()
    };
    let gamma = compile_side(&s.gamma);
    let delta = compile_side(&s.delta);

    let scan = |start: u64, end: u64| -> Option<u64> {
        let mut digits = vec![0usize; n];
        let mut rest = start;
        for d in digits.iter_mut().rev() {
            *d = (rest % base) as usize;
            rest /= base;
        }
        let mut values: Vec<TruthValue> = digits.iter().map(|&d| domain[d]).collect();
        let mut stack = Vec::new();
        for index in start..end {
            let falsified = gamma.iter().all(|p| run(p, &values, &mut stack).is_designated())
                && !delta.iter().any(|p| run(p, &values, &mut stack).is_designated());
            if falsified {
                return Some(index);
            }
            // odometer step, last atom fastest
            for pos in (0..n).rev() {
                digits[pos] += 1;
                if digits[pos] < domain.len() {
                    values[pos] = domain[digits[pos]];
                    break;
                }
                digits[pos] = 0;
                values[pos] = domain[0];
            }
        }
        None
    };

    let hit = exec::find_first(opts.execution, total, scan);
    Ok(match hit {
        None => EntailmentResult {
            valid: true,
            countermodel: None,
            valuations_checked: total,
        },
        Some(index) => {
            let mut rest = index;
            let mut values = vec![domain[0]; n];
            for v in values.iter_mut().rev() {
                *v = domain[(rest % base) as usize];
                rest /= base;
            }
            let assignment = atoms.into_iter().zip(values).collect();
            EntailmentResult {
                valid: false,
                countermodel: Some(Valuation::new(s.context.clone(), assignment)),
                valuations_checked: index + 1,
            }
        }
    })
}

/// Re-evaluates a reported countermodel against the sequent.
pub fn verify_countermodel(s: &Sequent, v: &Valuation) -> Result<bool, EvalError> {
    s.is_countermodel(&v.assignment)
}

/// One entry of the fixed paraconsistency battery.
#[derive(Debug, Clone)]
pub struct NamedCheck {
    pub name: &'static str,
    pub sequent: Sequent,
    pub expected_valid: bool,
    pub result: EntailmentResult,
    /// `Some(true)` when an invalid verdict's countermodel re-evaluates
    /// correctly; `None` for valid verdicts.
    pub witness_verified: Option<bool>,
}

impl NamedCheck {
    pub fn passed(&self) -> bool {
        self.result.valid == self.expected_valid && self.witness_verified != Some(false)
    }
}

#[derive(Debug, Clone)]
pub struct NamedPropertyReport {
    pub checks: Vec<NamedCheck>,
}

impl NamedPropertyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(NamedCheck::passed)
    }
}

/// The battery: explosion, identity, conjunction elimination, modus ponens
/// and excluded middle, each with its expected verdict.
pub fn named_sequents() -> Vec<(&'static str, Sequent, bool)> {
    let c = ContextId::new("c").expect("nonempty");
    let p = Formula::atom("P");
    let q = Formula::atom("Q");
    vec![
        (
            "explosion",
            Sequent::new(vec![p.clone(), Formula::not(p.clone())], vec![q.clone()], c.clone()),
            false,
        ),
        (
            "identity",
            Sequent::new(vec![p.clone()], vec![p.clone()], c.clone()),
            true,
        ),
        (
            "conjunction-elimination",
            Sequent::new(vec![Formula::and(p.clone(), q.clone())], vec![p.clone()], c.clone()),
            true,
        ),
        (
            "modus-ponens",
            Sequent::new(
                vec![p.clone(), Formula::implies(p.clone(), q.clone())],
                vec![q.clone()],
                c.clone(),
            ),
            false,
        ),
        (
            "excluded-middle",
            Sequent::new(vec![], vec![Formula::or(p.clone(), Formula::not(p))], c),
            false,
        ),
    ]
}

pub fn check_named_properties() -> NamedPropertyReport {
    let opts = EnumerationOptions::default();
    let checks = named_sequents()
        .into_iter()
        .map(|(name, sequent, expected_valid)| {
            let result = check_sequent(&sequent, &opts).expect("battery is below the cap");
            let witness_verified = result
                .countermodel
                .as_ref()
                .map(|v| verify_countermodel(&sequent, v).unwrap_or(false));
            NamedCheck {
                name,
                sequent,
                expected_valid,
                result,
                witness_verified,
            }
        })
        .collect();
    NamedPropertyReport { checks }
}
