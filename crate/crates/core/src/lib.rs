//! A seven-valued, context-indexed paraconsistent logic engine.
//!
//! Truth values are non-empty triples `(t, f, u)` read relative to a
//! context. On top of the connectives the crate provides a sequent checker,
//! a scenario engine for context switches, a finite-model checker for the
//! quantified-conditional formulation, and a bridge between the two.

pub mod bridge;
pub mod dynamics;
pub mod exec;
pub mod formula;
pub mod quantlogic;
pub mod truth;
pub mod valuation;

pub use dynamics::Scenario;
pub use exec::Execution;
pub use formula::{parse, parse_list, Atom, Formula, ParseError};
pub use quantlogic::{check_all_forms, check_form, find_joint_model, DistinctnessMode, FiniteModel, Form};
pub use truth::{check_laws, Connective, LawCheck, TruthTable, TruthValue, ValueName};
pub use valuation::{
    check_named_properties, check_sequent, evaluate, Assignment, ContextId, EntailmentResult, EnumerationOptions,
    Sequent, Valuation,
};
