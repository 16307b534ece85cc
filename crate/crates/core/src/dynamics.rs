//! Scenario engine: deterministic evolution inside a context and labeled
//! switches between contexts.
//!
//! Evolution within a context is a finite transition table over valuation
//! snapshots and never changes the context. Switches are the only way to
//! change context; on arrival the target context's declared valuation is
//! loaded and the rule's overrides are applied on top.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{Atom, Formula};
use crate::truth::TruthValue;
use crate::valuation::{Assignment, ContextId, EvalError, Valuation};

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot read scenario file")]
    Io(#[from] std::io::Error),
    #[error("malformed scenario file")]
    Json(#[from] serde_json::Error),
    #[error("scenario declares no contexts")]
    NoContexts,
    #[error("context `{0}` declared twice")]
    DuplicateContext(ContextId),
    #[error("atom `{0}` declared twice")]
    DuplicateAtom(Atom),
    #[error("{place} refers to undeclared context `{context}`")]
    UndeclaredContext { place: String, context: ContextId },
    #[error("context `{0}` has no declared valuation")]
    MissingValuation(ContextId),
    #[error("{place}: atom `{atom}` is not in the atom universe")]
    UnknownAtom { place: String, atom: Atom },
    #[error("{place}: atom `{atom}` is unassigned")]
    PartialValuation { place: String, atom: Atom },
    #[error("transition table of `{0}` has two entries for the same snapshot")]
    AmbiguousTransition(ContextId),
    #[error("switch label `{label}` declared twice from context `{from}`")]
    DuplicateSwitch { label: String, from: ContextId },
    #[error("invalid switch label `{0}`")]
    BadLabel(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynamicsError {
    #[error("context `{0}` is not declared in this scenario")]
    UnknownContext(ContextId),
    #[error("no transition from the current valuation in context `{0}`")]
    MissingTransition(ContextId),
    #[error("no switch `{label}` from context `{context}` (available: {})", available.join(", "))]
    UnknownLabel {
        label: String,
        context: ContextId,
        available: Vec<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("program instruction {index}: {source}")]
pub struct RunError {
    /// 0-based position in the program.
    pub index: usize,
    pub source: DynamicsError,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad program instruction `{0}` (expected `step` or `switch:LABEL`)")]
pub struct ProgramError(pub String);

/// Within-context evolution for one context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionTable {
    pub identity_by_default: bool,
    pub entries: Vec<(Assignment, Assignment)>,
}

impl TransitionTable {
    pub fn identity() -> Self {
        TransitionTable {
            identity_by_default: true,
            entries: Vec::new(),
        }
    }

    fn lookup(&self, snapshot: &Assignment) -> Option<&Assignment> {
        self.entries.iter().find(|(from, _)| from == snapshot).map(|(_, to)| to)
    }
}

/// A labeled context switch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwitchRule {
    pub label: String,
    pub from: ContextId,
    pub to: ContextId,
    pub post: Assignment,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    contexts: Vec<ContextId>,
    atoms: Vec<Atom>,
    valuations: IndexMap<ContextId, Assignment>,
    #[serde(default)]
    steps: IndexMap<ContextId, RawTable>,
    #[serde(default)]
    switches: Vec<RawSwitch>,
    initial: ContextId,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTable {
    #[serde(default)]
    identity_by_default: bool,
    #[serde(default)]
    table: Vec<RawEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    from: Assignment,
    to: Assignment,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSwitch {
    label: String,
    from: ContextId,
    to: ContextId,
    #[serde(default)]
    post: Assignment,
}

/// A validated, immutable scenario.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    contexts: Vec<ContextId>,
    atoms: Vec<Atom>,
    valuations: IndexMap<ContextId, Assignment>,
    steps: IndexMap<ContextId, TransitionTable>,
    switches: Vec<SwitchRule>,
    initial: ContextId,
}

impl Scenario {
    pub fn from_json(json: &str) -> Result<Self, ScenarioError> {
        let raw: RawScenario = serde_json::from_str(json)?;
        Self::from_raw(raw)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ScenarioError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    fn from_raw(raw: RawScenario) -> Result<Self, ScenarioError> {
        if raw.contexts.is_empty() {
            return Err(ScenarioError::NoContexts);
        }
        for (i, c) in raw.contexts.iter().enumerate() {
            if raw.contexts[..i].contains(c) {
                return Err(ScenarioError::DuplicateContext(c.clone()));
            }
        }
        for (i, a) in raw.atoms.iter().enumerate() {
            if raw.atoms[..i].contains(a) {
                return Err(ScenarioError::DuplicateAtom(a.clone()));
            }
        }
        let declared = |place: String, c: &ContextId| {
            if raw.contexts.contains(c) {
                Ok(())
            } else {
                Err(ScenarioError::UndeclaredContext {
                    place,
                    context: c.clone(),
                })
            }
        };
        declared("initial".into(), &raw.initial)?;

        let atoms = raw.atoms.clone();
        let total = |place: String, a: &Assignment| normalize(&atoms, place, a, true);
        let partial = |place: String, a: &Assignment| normalize(&atoms, place, a, false);

        for c in raw.valuations.keys() {
            declared(format!("valuations.{c}"), c)?;
        }
        let mut valuations = IndexMap::new();
        for c in &raw.contexts {
            let a = raw
                .valuations
                .get(c)
                .ok_or_else(|| ScenarioError::MissingValuation(c.clone()))?;
            valuations.insert(c.clone(), total(format!("valuations.{c}"), a)?);
        }

        let mut steps = IndexMap::new();
        for (c, t) in &raw.steps {
            declared(format!("steps.{c}"), c)?;
            let mut entries: Vec<(Assignment, Assignment)> = Vec::new();
            for (i, e) in t.table.iter().enumerate() {
                let from = total(format!("steps.{c}.table[{i}].from"), &e.from)?;
                let to = total(format!("steps.{c}.table[{i}].to"), &e.to)?;
                if entries.iter().any(|(f, _)| *f == from) {
                    return Err(ScenarioError::AmbiguousTransition(c.clone()));
                }
                entries.push((from, to));
            }
            steps.insert(
                c.clone(),
                TransitionTable {
                    identity_by_default: t.identity_by_default,
                    entries,
                },
            );
        }

        let mut switches: Vec<SwitchRule> = Vec::new();
        for (i, s) in raw.switches.iter().enumerate() {
            if Atom::new(s.label.as_str()).is_err() {
                return Err(ScenarioError::BadLabel(s.label.clone()));
            }
            declared(format!("switches[{i}].from"), &s.from)?;
            declared(format!("switches[{i}].to"), &s.to)?;
            if switches.iter().any(|r| r.label == s.label && r.from == s.from) {
                return Err(ScenarioError::DuplicateSwitch {
                    label: s.label.clone(),
                    from: s.from.clone(),
                });
            }
            switches.push(SwitchRule {
                label: s.label.clone(),
                from: s.from.clone(),
                to: s.to.clone(),
                post: partial(format!("switches[{i}].post"), &s.post)?,
            });
        }

        Ok(Scenario {
            contexts: raw.contexts,
            atoms: raw.atoms,
            valuations,
            steps,
            switches,
            initial: raw.initial,
        })
    }

    pub fn contexts(&self) -> &[ContextId] {
        &self.contexts
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn switches(&self) -> &[SwitchRule] {
        &self.switches
    }

    pub fn initial(&self) -> &ContextId {
        &self.initial
    }

    /// The declared valuation of a context.
    pub fn valuation(&self, context: &ContextId) -> Option<Valuation> {
        self.valuations
            .get(context)
            .map(|a| Valuation::new(context.clone(), a.clone()))
    }

    pub fn initial_state(&self) -> Valuation {
        self.valuation(&self.initial).expect("initial context validated")
    }

    /// Switch labels executable from `context`, in declaration order.
    pub fn labels_from(&self, context: &ContextId) -> Vec<String> {
        self.switches
            .iter()
            .filter(|r| &r.from == context)
            .map(|r| r.label.clone())
            .collect()
    }

    fn check_context(&self, context: &ContextId) -> Result<(), DynamicsError> {
        if self.contexts.contains(context) {
            Ok(())
        } else {
            Err(DynamicsError::UnknownContext(context.clone()))
        }
    }

    /// One tick of within-context evolution.
    pub fn step(&self, state: &Valuation) -> Result<Valuation, DynamicsError> {
        self.check_context(&state.context)?;
        let missing = || DynamicsError::MissingTransition(state.context.clone());
        let table = self.steps.get(&state.context).ok_or_else(missing)?;
        match table.lookup(&state.assignment) {
            Some(next) => Ok(Valuation::new(state.context.clone(), next.clone())),
            None if table.identity_by_default => Ok(state.clone()),
            None => Err(missing()),
        }
    }

    /// Applies the switch `label` from the current context.
    pub fn switch(&self, state: &Valuation, label: &str) -> Result<Valuation, DynamicsError> {
        self.check_context(&state.context)?;
        let rule = self
            .switches
            .iter()
            .find(|r| r.label == label && r.from == state.context)
            .ok_or_else(|| DynamicsError::UnknownLabel {
                label: label.to_string(),
                context: state.context.clone(),
                available: self.labels_from(&state.context),
            })?;
        let mut arrival = self.valuation(&rule.to).expect("switch target validated");
        for (atom, value) in rule.post.iter() {
            arrival.assignment.insert(atom.clone(), value);
        }
        Ok(arrival)
    }

    /// Folds `program` over the initial state.
    pub fn run(&self, program: &[Command]) -> Result<Trace, RunError> {
        let initial = self.initial_state();
        let mut state = initial.clone();
        let mut events = Vec::with_capacity(program.len());
        let mut tick = 0;
        for (index, cmd) in program.iter().enumerate() {
            let wrap = |source| RunError { index, source };
            let (next, kind, label, at) = match cmd {
                Command::Step => {
                    let next = self.step(&state).map_err(wrap)?;
                    tick += 1;
                    (next, EventKind::Step, None, Some(tick))
                }
                Command::Switch(l) => {
                    let next = self.switch(&state, l).map_err(wrap)?;
                    (next, EventKind::Switch, Some(l.clone()), None)
                }
            };
            events.push(TraceEvent {
                kind,
                before: state.context.clone(),
                after: next.context.clone(),
                label,
                tick: at,
                valuation: next.assignment.clone(),
            });
            state = next;
        }
        Ok(Trace { initial, events })
    }

    /// Evaluates `f` under every context's declared valuation.
    ///
    /// This is the only operation that reads more than one context; it
    /// reports the values side by side and never merges them.
    pub fn assert_no_global_valuation(&self, f: &Formula) -> Result<GlobalReport, EvalError> {
        let per_context = self
            .contexts
            .iter()
            .map(|c| Ok((c.clone(), self.valuations[c].evaluate(f)?)))
            .collect::<Result<Vec<_>, EvalError>>()?;
        let globally_uniform = per_context.windows(2).all(|w| w[0].1 == w[1].1);
        Ok(GlobalReport {
            formula: f.clone(),
            per_context,
            globally_uniform,
        })
    }
}

fn normalize(atoms: &[Atom], place: String, a: &Assignment, require_total: bool) -> Result<Assignment, ScenarioError> {
    if let Some(atom) = a.atoms().find(|x| !atoms.contains(x)) {
        return Err(ScenarioError::UnknownAtom {
            place,
            atom: atom.clone(),
        });
    }
    let mut out = Assignment::new();
    for atom in atoms {
        match a.get(atom) {
            Some(v) => {
                out.insert(atom.clone(), v);
            }
            None if require_total => {
                return Err(ScenarioError::PartialValuation {
                    place,
                    atom: atom.clone(),
                })
            }
            None => {}
        }
    }
    Ok(out)
}

/// One program instruction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Step,
    Switch(String),
}

impl FromStr for Command {
    type Err = ProgramError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "step" {
            return Ok(Command::Step);
        }
        match s.strip_prefix("switch:") {
            Some(label) if !label.trim().is_empty() => Ok(Command::Switch(label.trim().to_string())),
            _ => Err(ProgramError(s.to_string())),
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::Step => f.write_str("step"),
            Command::Switch(l) => write!(f, "switch:{l}"),
        }
    }
}

/// Parses `"step,switch:open_alive,..."`. Blank input is the empty program.
pub fn parse_program(src: &str) -> Result<Vec<Command>, ProgramError> {
    if src.trim().is_empty() {
        return Ok(Vec::new());
    }
    src.split(',').map(str::parse).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum EventKind {
    Step,
    Switch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceEvent {
    pub kind: EventKind,
    pub before: ContextId,
    pub after: ContextId,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    /// Running count of steps, set on step events.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tick: Option<u64>,
    pub valuation: Assignment,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub initial: Valuation,
    pub events: Vec<TraceEvent>,
}

impl Trace {
    pub fn final_state(&self) -> Valuation {
        match self.events.last() {
            Some(e) => Valuation::new(e.after.clone(), e.valuation.clone()),
            None => self.initial.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalReport {
    pub formula: Formula,
    pub per_context: Vec<(ContextId, TruthValue)>,
    pub globally_uniform: bool,
}

impl GlobalReport {
    pub fn value_in(&self, context: &str) -> Option<TruthValue> {
        self.per_context
            .iter()
            .find(|(c, _)| c.as_str() == context)
            .map(|(_, v)| *v)
    }
}

/// The scenarios shipped with the crate.
pub mod corpus {
    use super::Scenario;

    pub const DOUBLE_SLIT: &str = include_str!("../data/scenarios/double_slit.json");
    pub const SPIN_HALF: &str = include_str!("../data/scenarios/spin_half.json");
    pub const CAT_ASTINASTI: &str = include_str!("../data/scenarios/cat_astinasti.json");
    pub const CAT_AVAKTAVYAM: &str = include_str!("../data/scenarios/cat_avaktavyam.json");
    pub const WIGNER: &str = include_str!("../data/scenarios/wigner.json");

    /// `(file name, contents)` for every bundled scenario.
    pub const ALL: [(&str, &str); 5] = [
        ("double_slit.json", DOUBLE_SLIT),
        ("spin_half.json", SPIN_HALF),
        ("cat_astinasti.json", CAT_ASTINASTI),
        ("cat_avaktavyam.json", CAT_AVAKTAVYAM),
        ("wigner.json", WIGNER),
    ];

    pub fn load(json: &str) -> Scenario {
        Scenario::from_json(json).expect("bundled scenario is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn ctx(s: &str) -> ContextId {
        ContextId::new(s).unwrap()
    }

    fn atom(s: &str) -> Atom {
        Atom::new(s).unwrap()
    }

    const TOGGLE: &str = r#"{
        "contexts": ["c", "d"],
        "atoms": ["A"],
        "valuations": {"c": {"A": [1,0,0]}, "d": {"A": [0,0,1]}},
        "steps": {
            "c": {"identity_by_default": false, "table": [
                {"from": {"A": [1,0,0]}, "to": {"A": [0,1,0]}},
                {"from": {"A": [0,1,0]}, "to": {"A": [1,0,0]}}
            ]}
        },
        "switches": [
            {"label": "go", "from": "c", "to": "d"},
            {"label": "stay", "from": "c", "to": "c"},
            {"label": "back", "from": "d", "to": "c", "post": {"A": [1,1,0]}}
        ],
        "initial": "c"
    }"#;

    #[test]
    fn identity_step_is_fixed_point() {
        let s = corpus::load(corpus::CAT_AVAKTAVYAM);
        let st = s.initial_state();
        assert_eq!(s.step(&st).unwrap(), st);
    }

    #[test]
    fn single_entry_table_step() {
        let s = Scenario::from_json(TOGGLE).unwrap();
        let st = s.initial_state();
        let next = s.step(&st).unwrap();
        assert_eq!(next.context, ctx("c"));
        assert_eq!(next.get(&atom("A")), Some(TruthValue::V2));
        // (1,1,0) has no entry and identity is off
        let stuck = s.switch(&s.switch(&st, "go").unwrap(), "back").unwrap();
        assert_eq!(s.step(&stuck), Err(DynamicsError::MissingTransition(ctx("c"))));
        // d has no table at all
        let in_d = s.switch(&st, "go").unwrap();
        assert_eq!(s.step(&in_d), Err(DynamicsError::MissingTransition(ctx("d"))));
    }

    #[test]
    fn cat_switches() {
        let s = corpus::load(corpus::CAT_AVAKTAVYAM);
        let st = s.initial_state();
        let alive = s.switch(&st, "open_alive").unwrap();
        assert_eq!(alive.context, ctx("c_open"));
        assert_eq!(alive.get(&atom("Alive")), Some(TruthValue::V1));
        let dead = s.switch(&st, "open_dead").unwrap();
        assert_eq!(dead.get(&atom("Alive")), Some(TruthValue::V2));
    }

    #[test]
    fn self_switch_reloads_declared_valuation() {
        let s = Scenario::from_json(TOGGLE).unwrap();
        let st = s.step(&s.initial_state()).unwrap();
        let back = s.switch(&st, "stay").unwrap();
        assert_eq!(back, s.initial_state());
    }

    #[test]
    fn unknown_label_lists_available() {
        let s = corpus::load(corpus::CAT_ASTINASTI);
        let err = s.switch(&s.initial_state(), "peek").unwrap_err();
        assert_eq!(
            err,
            DynamicsError::UnknownLabel {
                label: "peek".into(),
                context: ctx("c_closed"),
                available: vec!["open_alive".into(), "open_dead".into()],
            }
        );
        assert!(err.to_string().contains("open_alive, open_dead"));
    }

    #[test]
    fn run_traces() {
        let s = corpus::load(corpus::CAT_AVAKTAVYAM);
        let empty = s.run(&[]).unwrap();
        assert!(empty.events.is_empty());
        assert_eq!(empty.final_state(), s.initial_state());

        let trace = s.run(&parse_program("step,switch:open_alive,step").unwrap()).unwrap();
        assert_eq!(trace.events.len(), 3);
        assert_eq!(trace.events[0].tick, Some(1));
        assert_eq!(trace.events[1].kind, EventKind::Switch);
        assert_eq!(trace.events[2].tick, Some(2));
        let fin = trace.final_state();
        assert_eq!(fin.context, ctx("c_open"));
        assert_eq!(fin.get(&atom("Alive")), Some(TruthValue::V1));
        for e in &trace.events {
            if e.kind == EventKind::Step {
                assert_eq!(e.before, e.after);
            }
        }
    }

    #[test]
    fn run_error_reports_index() {
        let s = corpus::load(corpus::CAT_AVAKTAVYAM);
        let err = s
            .run(&parse_program("step,switch:open_alive,switch:open_dead").unwrap())
            .unwrap_err();
        assert_eq!(err.index, 2);
        assert!(matches!(err.source, DynamicsError::UnknownLabel { .. }));
    }

    #[test]
    fn program_parsing() {
        assert_eq!(
            parse_program("step, switch:open_alive").unwrap(),
            vec![Command::Step, Command::Switch("open_alive".into())]
        );
        assert!(parse_program("").unwrap().is_empty());
        assert!(parse_program("jump").is_err());
        assert!(parse_program("switch:").is_err());
    }

    #[test]
    fn global_valuation_reports() {
        let s = corpus::load(corpus::WIGNER);
        let r = s.assert_no_global_valuation(&parse("Outcome_o").unwrap()).unwrap();
        assert_eq!(r.value_in("c_friend"), Some(TruthValue::V1));
        assert_eq!(r.value_in("c_Wigner"), Some(TruthValue::V4));
        assert!(!r.globally_uniform);

        let single = r#"{"contexts": ["c"], "atoms": ["A"], "valuations": {"c": {"A": [0,1,1]}}, "initial": "c"}"#;
        let s = Scenario::from_json(single).unwrap();
        assert!(
            s.assert_no_global_valuation(&parse("A | !A").unwrap())
                .unwrap()
                .globally_uniform
        );
    }

    #[test]
    fn validation_errors() {
        let bad = |json: &str| Scenario::from_json(json).unwrap_err();
        assert!(matches!(
            bad(r#"{"contexts": ["c"], "atoms": ["A"], "valuations": {"c": {"A": [1,0,0]}}, "initial": "x"}"#),
            ScenarioError::UndeclaredContext { .. }
        ));
        assert!(matches!(
            bad(r#"{"contexts": ["c"], "atoms": ["A", "B"], "valuations": {"c": {"A": [1,0,0]}}, "initial": "c"}"#),
            ScenarioError::PartialValuation { .. }
        ));
        assert!(matches!(
            bad(r#"{"contexts": ["c", "d"], "atoms": ["A"], "valuations": {"c": {"A": [1,0,0]}}, "initial": "c"}"#),
            ScenarioError::MissingValuation(_)
        ));
        assert!(matches!(
            bad(
                r#"{"contexts": ["c"], "atoms": ["A"], "valuations": {"c": {"A": [1,0,0], "Z": [1,0,0]}}, "initial": "c"}"#
            ),
            ScenarioError::UnknownAtom { .. }
        ));
        assert!(matches!(
            bad(
                r#"{"contexts": ["c"], "atoms": ["A"], "valuations": {"c": {"A": [1,0,0]}}, "initial": "c",
                "switches": [{"label": "s", "from": "c", "to": "c"}, {"label": "s", "from": "c", "to": "c"}]}"#
            ),
            ScenarioError::DuplicateSwitch { .. }
        ));
        assert!(matches!(
            bad(r#"{"contexts": [], "atoms": [], "valuations": {}, "initial": "c"}"#),
            ScenarioError::NoContexts
        ));
        assert!(matches!(
            bad(
                r#"{"contexts": ["c"], "atoms": ["A"], "valuations": {"c": {"A": [1,0,0]}}, "initial": "c", "extra": 1}"#
            ),
            ScenarioError::Json(_)
        ));
    }

    #[test]
    fn switch_totality_over_declared_rules() {
        for (name, json) in corpus::ALL {
            let s = corpus::load(json);
            for rule in s.switches() {
                let st = s.valuation(&rule.from).unwrap();
                let arrived = s.switch(&st, &rule.label).unwrap_or_else(|e| panic!("{name}: {e}"));
                assert_eq!(arrived.context, rule.to);
            }
        }
    }
}
