//! The seven context-relative truth values and their connectives.
//!
//! A value is a non-empty triple `(t, f, u)` of flags read relative to a
//! context: `t` true-in-context, `f` false-in-context, `u` unsayable-in-context.
//! The connectives act componentwise on the flags.

use std::fmt;
use std::ops::{BitAnd, BitOr, Not};
use std::str::FromStr;

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TruthValueError {
    #[error("the triple (0,0,0) is not a truth value")]
    Empty,
    #[error("truth-value component must be 0 or 1, got {0}")]
    NotABit(u64),
    #[error("unknown truth-value name `{0}`")]
    UnknownName(String),
}

/// A non-empty triple of context flags.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruthValue {
    t: bool,
    f: bool,
    u: bool,
}

impl TruthValue {
    /// `(1,0,0)` syāt asti.
    pub const V1: TruthValue = TruthValue::raw(true, false, false);
    /// `(0,1,0)` syāt nāsti.
    pub const V2: TruthValue = TruthValue::raw(false, true, false);
    /// `(1,1,0)` syāt asti-nāsti.
    pub const V3: TruthValue = TruthValue::raw(true, true, false);
    /// `(0,0,1)` syāt avaktavyam.
    pub const V4: TruthValue = TruthValue::raw(false, false, true);
    /// `(1,0,1)` syāt asti-avaktavyam.
    pub const V5: TruthValue = TruthValue::raw(true, false, true);
    /// `(0,1,1)` syāt nāsti-avaktavyam.
    pub const V6: TruthValue = TruthValue::raw(false, true, true);
    /// `(1,1,1)` syāt asti-nāsti-avaktavyam.
    pub const V7: TruthValue = TruthValue::raw(true, true, true);

    /// All seven values in canonical order `V1..V7`.
    pub const ALL: [TruthValue; 7] = [Self::V1, Self::V2, Self::V3, Self::V4, Self::V5, Self::V6, Self::V7];

    const fn raw(t: bool, f: bool, u: bool) -> Self {
        TruthValue { t, f, u }
    }

    pub fn new(t: bool, f: bool, u: bool) -> Result<Self, TruthValueError> {
        if !(t || f || u) {
            return Err(TruthValueError::Empty);
        }
        Ok(Self::raw(t, f, u))
    }

    /// Builds a value from numeric bits; each must be 0 or 1.
    pub fn from_bits(t: u64, f: u64, u: u64) -> Result<Self, TruthValueError> {
        let bit = |b: u64| match b {
            0 => Ok(false),
            1 => Ok(true),
            other => Err(TruthValueError::NotABit(other)),
        };
        Self::new(bit(t)?, bit(f)?, bit(u)?)
    }

    pub fn t(self) -> bool {
        self.t
    }

    pub fn f(self) -> bool {
        self.f
    }

    pub fn u(self) -> bool {
        self.u
    }

    pub fn bits(self) -> [u8; 3] {
        [self.t as u8, self.f as u8, self.u as u8]
    }

    /// Position in the canonical `V1..V7` order (0-based).
    pub fn index(self) -> usize {
        Self::ALL
            .iter()
            .position(|v| *v == self)
            .expect("every truth value is canonical")
    }

    pub fn name(self) -> ValueName {
        ValueName::ALL[self.index()]
    }

    /// Designated iff true-in-context.
    pub fn is_designated(self) -> bool {
        self.t
    }

    /// `¬(t,f,u) = (f,t,u)`.
    pub fn negate(self) -> Self {
        Self::raw(self.f, self.t, self.u)
    }

    /// `(t∧t′, f∨f′, u∨u′∨(t∧u′)∨(u∧t′))`, evaluated literally.
    pub fn conj(self, other: Self) -> Self {
        let (t, f, u) = (self.t, self.f, self.u);
        let (t2, f2, u2) = (other.t, other.f, other.u);
        closed(t && t2, f || f2, u || u2 || (t && u2) || (u && t2))
    }

    /// `(t∨t′, f∧f′, u∨u′∨(f∧u′)∨(u∧f′))`, evaluated literally.
    pub fn disj(self, other: Self) -> Self {
        let (t, f, u) = (self.t, self.f, self.u);
        let (t2, f2, u2) = (other.t, other.f, other.u);
        closed(t || t2, f && f2, u || u2 || (f && u2) || (u && f2))
    }

    /// Material implication `¬a ∨ b`.
    pub fn implies(self, other: Self) -> Self {
        self.negate().disj(other)
    }
}

// Closure of the connectives is checked exhaustively by tests; a zero
// triple here means the connective definitions were broken.
fn closed(t: bool, f: bool, u: bool) -> TruthValue {
    TruthValue::new(t, f, u).expect("connectives are closed over the seven values")
}

pub fn negate(v: TruthValue) -> TruthValue {
    v.negate()
}

pub fn conj(a: TruthValue, b: TruthValue) -> TruthValue {
    a.conj(b)
}

pub fn disj(a: TruthValue, b: TruthValue) -> TruthValue {
    a.disj(b)
}

pub fn implies(a: TruthValue, b: TruthValue) -> TruthValue {
    a.implies(b)
}

pub fn is_designated(v: TruthValue) -> bool {
    v.is_designated()
}

impl Not for TruthValue {
    type Output = TruthValue;
    fn not(self) -> TruthValue {
        self.negate()
    }
}

impl BitAnd for TruthValue {
    type Output = TruthValue;
    fn bitand(self, rhs: TruthValue) -> TruthValue {
        self.conj(rhs)
    }
}

impl BitOr for TruthValue {
    type Output = TruthValue;
    fn bitor(self, rhs: TruthValue) -> TruthValue {
        self.disj(rhs)
    }
}

impl fmt::Debug for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [t, fl, u] = self.bits();
        write!(f, "({t},{fl},{u})")
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for TruthValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut tup = serializer.serialize_tuple(3)?;
        for b in self.bits() {
            tup.serialize_element(&b)?;
        }
        tup.end()
    }
}

impl<'de> Deserialize<'de> for TruthValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct TripleVisitor;

        impl<'de> Visitor<'de> for TripleVisitor {
            type Value = TruthValue;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a [t, f, u] array of 0/1 bits, not all zero")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<TruthValue, A::Error> {
                let mut bits = [0u64; 3];
                for (i, slot) in bits.iter_mut().enumerate() {
                    *slot = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(i, &self))?;
                }
                if seq.next_element::<de::IgnoredAny>()?.is_some() {
                    return Err(de::Error::invalid_length(4, &self));
                }
                TruthValue::from_bits(bits[0], bits[1], bits[2]).map_err(de::Error::custom)
            }
        }

        deserializer.deserialize_tuple(3, TripleVisitor)
    }
}

/// The saptabhaṅgī name of each value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ValueName {
    Asti,
    Nasti,
    AstiNasti,
    Avaktavyam,
    AstiAvaktavyam,
    NastiAvaktavyam,
    AstiNastiAvaktavyam,
}

impl ValueName {
    pub const ALL: [ValueName; 7] = [
        ValueName::Asti,
        ValueName::Nasti,
        ValueName::AstiNasti,
        ValueName::Avaktavyam,
        ValueName::AstiAvaktavyam,
        ValueName::NastiAvaktavyam,
        ValueName::AstiNastiAvaktavyam,
    ];

    pub fn value(self) -> TruthValue {
        TruthValue::ALL[self as usize]
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ValueName::Asti => "ASTI",
            ValueName::Nasti => "NASTI",
            ValueName::AstiNasti => "ASTI_NASTI",
            ValueName::Avaktavyam => "AVAKTAVYAM",
            ValueName::AstiAvaktavyam => "ASTI_AVAKTAVYAM",
            ValueName::NastiAvaktavyam => "NASTI_AVAKTAVYAM",
            ValueName::AstiNastiAvaktavyam => "ASTI_NASTI_AVAKTAVYAM",
        }
    }
}

impl fmt::Display for ValueName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ValueName {
    type Err = TruthValueError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ValueName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| TruthValueError::UnknownName(s.to_string()))
    }
}

impl From<ValueName> for TruthValue {
    fn from(name: ValueName) -> Self {
        name.value()
    }
}

impl Serialize for ValueName {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Connective {
    Neg,
    And,
    Or,
    Implies,
}

impl Connective {
    pub const ALL: [Connective; 4] = [Connective::Neg, Connective::And, Connective::Or, Connective::Implies];

    pub fn as_str(self) -> &'static str {
        match self {
            Connective::Neg => "neg",
            Connective::And => "and",
            Connective::Or => "or",
            Connective::Implies => "implies",
        }
    }

    pub fn is_unary(self) -> bool {
        self == Connective::Neg
    }

    /// Applies a binary connective; `Neg` ignores `b`.
    pub fn apply(self, a: TruthValue, b: TruthValue) -> TruthValue {
        match self {
            Connective::Neg => a.negate(),
            Connective::And => a.conj(b),
            Connective::Or => a.disj(b),
            Connective::Implies => a.implies(b),
        }
    }
}

impl fmt::Display for Connective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Connective {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Connective::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown connective `{s}` (expected neg, and, or, implies)"))
    }
}

/// An exhaustive tabulation of one connective in canonical order.
///
/// Unary tables have seven rows of one entry; binary tables are 7×7 with
/// the left operand indexing rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    pub connective: Connective,
    pub rows: Vec<Vec<TruthValue>>,
}

pub fn truth_table(connective: Connective) -> TruthTable {
    let rows = TruthValue::ALL
        .iter()
        .map(|&a| {
            if connective.is_unary() {
                vec![a.negate()]
            } else {
                TruthValue::ALL.iter().map(|&b| connective.apply(a, b)).collect()
            }
        })
        .collect();
    TruthTable { connective, rows }
}

impl TruthTable {
    pub fn get(&self, row: TruthValue, col: TruthValue) -> TruthValue {
        let r = &self.rows[row.index()];
        if self.connective.is_unary() {
            r[0]
        } else {
            r[col.index()]
        }
    }

    /// Value names, row-major.
    pub fn names(&self) -> Vec<Vec<ValueName>> {
        self.rows.iter().map(|r| r.iter().map(|v| v.name()).collect()).collect()
    }

    /// Aligned text grid, one line per row, `\n`-terminated.
    pub fn render_text(&self) -> String {
        let width = ValueName::ALL.iter().map(|n| n.as_str().len()).max().unwrap_or(0);
        let header = self.connective.as_str().to_uppercase();
        let mut out = String::new();
        let mut line = format!("{header:<width$} |");
        if self.connective.is_unary() {
            line.push_str(" NEG");
        } else {
            for n in ValueName::ALL {
                line.push_str(&format!(" {:<width$}", n.as_str()));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
        let cols = if self.connective.is_unary() { 1 } else { 7 };
        out.push_str(&"-".repeat(width + 1));
        out.push('+');
        out.push_str(&"-".repeat(cols * (width + 1)));
        out.push('\n');
        for (a, row) in ValueName::ALL.iter().zip(self.rows.iter()) {
            let mut line = format!("{:<width$} |", a.as_str());
            for v in row {
                line.push_str(&format!(" {:<width$}", v.name().as_str()));
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

/// Outcome of one exhaustively checked algebraic law.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawCheck {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
}

impl LawCheck {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn law<I: Iterator<Item = bool>>(name: &'static str, outcomes: I) -> LawCheck {
    let (cases, failures) = outcomes.fold((0, 0), |(c, f), ok| (c + 1, f + usize::from(!ok)));
    LawCheck { name, cases, failures }
}

/// Checks the connective laws over every pair or triple of values.
pub fn check_laws() -> Vec<LawCheck> {
    let all = TruthValue::ALL;
    let pairs = || all.into_iter().flat_map(move |a| all.into_iter().map(move |b| (a, b)));
    let triples = || pairs().flat_map(move |(a, b)| all.into_iter().map(move |c| (a, b, c)));
    let in_range = |v: TruthValue| all.contains(&v) && v.bits() != [0, 0, 0];
    vec![
        law(
            "closure",
            Connective::ALL
                .into_iter()
                .flat_map(|c| truth_table(c).rows.into_iter().flatten())
                .map(in_range),
        ),
        law("negation-involution", all.into_iter().map(|a| a.negate().negate() == a)),
        law("conj-commutative", pairs().map(|(a, b)| a.conj(b) == b.conj(a))),
        law("disj-commutative", pairs().map(|(a, b)| a.disj(b) == b.disj(a))),
        law(
            "de-morgan-conj",
            pairs().map(|(a, b)| a.conj(b).negate() == a.negate().disj(b.negate())),
        ),
        law(
            "de-morgan-disj",
            pairs().map(|(a, b)| a.disj(b).negate() == a.negate().conj(b.negate())),
        ),
        law(
            "conj-associative",
            triples().map(|(a, b, c)| a.conj(b).conj(c) == a.conj(b.conj(c))),
        ),
        law(
            "disj-associative",
            triples().map(|(a, b, c)| a.disj(b).disj(c) == a.disj(b.disj(c))),
        ),
        law(
            "conj-u-simplification",
            pairs().map(|(a, b)| a.conj(b).u() == (a.u() || b.u())),
        ),
        law(
            "disj-u-simplification",
            pairs().map(|(a, b)| a.disj(b).u() == (a.u() || b.u())),
        ),
    ]
}
