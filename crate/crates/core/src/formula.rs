//! Propositional formulas over named atoms.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! formula  := implica
//! implica  := disjunct ( "->" implica )?
//! disjunct := conjunct ( "|" conjunct )*
//! conjunct := unary ( "&" unary )*
//! unary    := "!" unary | atom | "(" formula ")"
//! atom     := letter ( letter | digit | "_" )*
//! ```
//!
//! `~` and `¬` are accepted for `!`, `∧` for `&`, `∨` for `|` and `→` for
//! `->`. The printer always emits the ASCII forms.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Maximum syntax-tree depth accepted by the parser.
pub const MAX_NESTING: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at {offset}: {message}")]
pub struct ParseError {
    /// 1-based character offset into the input.
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid atom name `{0}`")]
pub struct AtomError(pub String);

/// A propositional letter. Case-sensitive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Atom(String);

impl Atom {
    pub fn new(name: impl Into<String>) -> Result<Self, AtomError> {
        let name = name.into();
        if is_atom_name(&name) {
            Ok(Atom(name))
        } else {
            Err(AtomError(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

fn is_atom_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl TryFrom<String> for Atom {
    type Error = AtomError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        Atom::new(s)
    }
}

impl From<Atom> for String {
    fn from(a: Atom) -> String {
        a.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for Atom {
    type Err = AtomError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Atom::new(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    /// Panics on an invalid name; use [`Atom::new`] for untrusted input.
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(Atom::new(name).expect("valid atom name"))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    /// Distinct atoms in first-occurrence order (left to right, depth first).
    pub fn atoms(&self) -> Vec<Atom> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    pub(crate) fn collect_atoms(&self, out: &mut Vec<Atom>) {
        match self {
            Formula::Atom(a) => {
                if !out.contains(a) {
                    out.push(a.clone());
                }
            }
            Formula::Not(f) => f.collect_atoms(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Not(f) => 1 + f.depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Implies(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            Formula::Not(_) | Formula::Atom(_) => 4,
        }
    }

    fn write_child(&self, out: &mut String, parens: bool) {
        if parens {
            out.push('(');
            self.write_to(out);
            out.push(')');
        } else {
            self.write_to(out);
        }
    }

    fn write_to(&self, out: &mut String) {
        let prec = self.precedence();
        match self {
            Formula::Atom(a) => out.push_str(a.as_str()),
            Formula::Not(f) => {
                out.push('!');
                f.write_child(out, f.precedence() < prec);
            }
            Formula::And(a, b) | Formula::Or(a, b) => {
                let op = if matches!(self, Formula::And(..)) { " & " } else { " | " };
                a.write_child(out, a.precedence() < prec);
                out.push_str(op);
                b.write_child(out, b.precedence() <= prec);
            }
            Formula::Implies(a, b) => {
                a.write_child(out, a.precedence() <= prec);
                out.push_str(" -> ");
                b.write_child(out, b.precedence() < prec);
            }
        }
    }

    /// Minimally parenthesized ASCII rendering.
    pub fn print(&self) -> String {
        let mut out = String::new();
        self.write_to(&mut out);
        out
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.print())
    }
}

impl FromStr for Formula {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

pub fn print(f: &Formula) -> String {
    f.print()
}

pub fn atoms_of(f: &Formula) -> Vec<Atom> {
    f.atoms()
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Not,
    And,
    Or,
    Arrow,
    LParen,
    RParen,
    Ident(String),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Not => "`!`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Ident(s) => format!("atom `{s}`"),
        }
    }
}

/// Tokens paired with their 1-based character offsets.
fn lex(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = input.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '!' | '~' | '¬' => Tok::Not,
            '&' | '∧' => Tok::And,
            '|' | '∨' => Tok::Or,
            '→' => Tok::Arrow,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '-' => {
                if chars.get(i + 1) == Some(&'>') {
                    i += 1;
                    Tok::Arrow
                } else {
                    return Err(ParseError {
                        offset: pos,
                        message: "expected `->`".into(),
                    });
                }
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i + 1 < chars.len() && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_') {
                    i += 1;
                }
                Tok::Ident(chars[start..=i].iter().collect())
            }
            other => {
                return Err(ParseError {
                    offset: pos,
                    message: format!("unexpected character `{}`", other.escape_debug()),
                })
            }
        };
        toks.push((pos, tok));
        i += 1;
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    nesting: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            offset: self.offset(),
            message: message.into(),
        }
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        match self.peek() {
            Some(t) => self.error(format!("expected {expected}, found {}", t.describe())),
            None => self.error(format!("expected {expected}, found end of input")),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.nesting += 1;
        if self.nesting > MAX_NESTING {
            return Err(self.error(format!("nesting deeper than {MAX_NESTING}")));
        }
        Ok(())
    }

    fn implica(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunct()?;
        if self.eat(&Tok::Arrow) {
            self.enter()?;
            let rhs = self.implica()?;
            self.nesting -= 1;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disjunct(&mut self) -> Result<Formula, ParseError> {
        let saved = self.nesting;
        let mut lhs = self.conjunct()?;
        while self.eat(&Tok::Or) {
            self.enter()?;
            let rhs = self.conjunct()?;
            lhs = Formula::or(lhs, rhs);
        }
        self.nesting = saved;
        Ok(lhs)
    }

    fn conjunct(&mut self) -> Result<Formula, ParseError> {
        let saved = self.nesting;
        let mut lhs = self.unary()?;
        while self.eat(&Tok::And) {
            self.enter()?;
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        self.nesting = saved;
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Not) => {
                self.pos += 1;
                self.enter()?;
                let inner = self.unary()?;
                self.nesting -= 1;
                Ok(Formula::not(inner))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Formula::Atom(Atom(name)))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                self.enter()?;
                let inner = self.implica()?;
                self.nesting -= 1;
                if !self.eat(&Tok::RParen) {
                    return Err(self.unexpected("`)`"));
                }
                Ok(inner)
            }
            _ => Err(self.unexpected("an atom, `!` or `(`")),
        }
    }
}

/// Parses one formula.
pub fn parse(input: &str) -> Result<Formula, ParseError> {
    let toks = lex(input)?;
    let end = input.chars().count() + 1;
    if toks.is_empty() {
        return Err(ParseError {
            offset: end.max(1),
            message: "empty formula".into(),
        });
    }
    let mut parser = Parser {
        toks,
        pos: 0,
        end,
        nesting: 0,
    };
    let f = parser.implica()?;
    if parser.pos < parser.toks.len() {
        return Err(parser.unexpected("end of input"));
    }
    Ok(f)
}

/// Parses a comma-separated list of formulas. Blank input is the empty list.
///
/// Error offsets are relative to the whole input.
pub fn parse_list(input: &str) -> Result<Vec<Formula>, ParseError> {
    if input.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut base = 0;
    for piece in input.split(',') {
        let f = parse(piece).map_err(|e| ParseError {
            offset: e.offset + base,
            message: e.message,
        })?;
        out.push(f);
        base += piece.chars().count() + 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn a(s: &str) -> Formula {
        Formula::atom(s)
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            p("P & !P -> Q"),
            Formula::implies(Formula::and(a("P"), Formula::not(a("P"))), a("Q"))
        );
        assert_eq!(p("!(P | Q)"), Formula::not(Formula::or(a("P"), a("Q"))));
        assert_eq!(
            p("A -> B -> C"),
            Formula::implies(a("A"), Formula::implies(a("B"), a("C")))
        );
        assert_eq!(p("A | B | C"), Formula::or(Formula::or(a("A"), a("B")), a("C")));
        assert_eq!(
            p("A & B | C & D"),
            Formula::or(Formula::and(a("A"), a("B")), Formula::and(a("C"), a("D")))
        );
    }

    #[test]
    fn unicode_aliases() {
        assert_eq!(p("¬P ∧ Q → R ∨ S"), p("!P & Q -> R | S"));
        assert_eq!(p("~P"), p("!P"));
    }

    #[test]
    fn printing() {
        assert_eq!(
            Formula::implies(Formula::and(a("P"), Formula::not(a("P"))), a("Q")).print(),
            "P & !P -> Q"
        );
        assert_eq!(Formula::not(Formula::or(a("P"), a("Q"))).print(), "!(P | Q)");
        assert_eq!(a("S_z").print(), "S_z");
        assert_eq!(
            Formula::implies(Formula::implies(a("A"), a("B")), a("C")).print(),
            "(A -> B) -> C"
        );
        assert_eq!(Formula::or(a("Q"), Formula::or(a("P"), a("Q"))).print(), "Q | (P | Q)");
        assert_eq!(Formula::not(Formula::not(a("P"))).print(), "!!P");
    }

    #[test]
    fn atoms_in_first_occurrence_order() {
        assert_eq!(
            p("P & !P -> Q").atoms(),
            vec![Atom::new("P").unwrap(), Atom::new("Q").unwrap()]
        );
        assert_eq!(
            p("Q | P | Q").atoms(),
            vec![Atom::new("Q").unwrap(), Atom::new("P").unwrap()]
        );
        assert_eq!(atoms_of(&p("X")), vec![Atom::new("X").unwrap()]);
    }

    #[test]
    fn corpus_atoms_parse() {
        for name in ["P", "Q", "P_A", "I", "S_z", "S_x", "Alive", "Outcome_o"] {
            assert_eq!(p(name), a(name));
        }
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        let e = parse("").unwrap_err();
        assert_eq!(e.offset, 1);
        let e = parse("   ").unwrap_err();
        assert!(e.message.contains("empty"));
        let e = parse("(").unwrap_err();
        assert_eq!(e.offset, 2);
        let e = parse("P & ").unwrap_err();
        assert_eq!(e.offset, 5);
        let e = parse("P Q").unwrap_err();
        assert_eq!(e.offset, 3);
        let e = parse("P - Q").unwrap_err();
        assert_eq!(e.offset, 3);
        let e = parse("P # Q").unwrap_err();
        assert_eq!(e.offset, 3);
        let e = parse("_P").unwrap_err();
        assert_eq!(e.offset, 1);
        assert_eq!(e.to_string(), "syntax error at 1: unexpected character `_`");
    }

    #[test]
    fn deep_nesting_is_an_error_not_a_crash() {
        let deep = "(".repeat(100_000);
        assert!(parse(&deep).is_err());
        let negs = format!("{}P", "!".repeat(100_000));
        assert!(parse(&negs).is_err());
        let chain = vec!["P"; 100_000].join(" & ");
        assert!(parse(&chain).is_err());
        let ok = vec!["P"; 200].join(" | ");
        assert!(parse(&ok).is_ok());
    }

    #[test]
    fn list_parsing() {
        assert_eq!(parse_list("P, !P").unwrap(), vec![a("P"), Formula::not(a("P"))]);
        assert_eq!(parse_list("").unwrap(), vec![]);
        let e = parse_list("P, (").unwrap_err();
        assert_eq!(e.offset, 5);
        assert!(parse_list("P,,Q").is_err());
    }

    #[test]
    fn atom_validation() {
        assert!(Atom::new("P_1").is_ok());
        assert!(Atom::new("1P").is_err());
        assert!(Atom::new("").is_err());
        assert!(Atom::new("P-Q").is_err());
    }

    #[test]
    fn printer_is_minimal_on_fixed_corpus() {
        let corpus = [
            "!(P | Q)",
            "(A -> B) -> C",
            "Q | (P | Q)",
            "A & (B | C)",
            "(A | B) & C",
            "!(A & B) -> C",
            "A & (B & C)",
            "(A -> B) & !(C -> D)",
        ];
        for src in corpus {
            let f = p(src);
            let printed = f.print();
            assert_eq!(printed, src);
            let opens: Vec<usize> = printed.match_indices('(').map(|(i, _)| i).collect();
            for open in opens {
                let close = matching_paren(&printed, open);
                let mut stripped = printed.clone();
                stripped.remove(close);
                stripped.remove(open);
                if let Ok(g) = parse(&stripped) {
                    assert_ne!(g, f, "redundant parens in {printed}");
                }
            }
        }
    }

    fn matching_paren(s: &str, open: usize) -> usize {
        let mut depth = 0;
        for (i, c) in s.char_indices().skip_while(|(i, _)| *i < open) {
            match c {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        return i;
                    }
                }
                _ => {}
            }
        }
        unreachable!("unbalanced printer output")
    }

    pub(crate) fn arb_formula() -> impl Strategy<Value = Formula> {
        let leaf = prop::sample::select(vec!["P", "Q", "R", "S_z", "P_A", "I"]).prop_map(Formula::atom);
        leaf.prop_recursive(8, 256, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| Formula::implies(a, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(f in arb_formula()) {
            prop_assert_eq!(parse(&f.print()).unwrap(), f);
        }

        #[test]
        fn parser_is_total(s in "\\PC*") {
            let _ = parse(&s);
        }

        #[test]
        fn parser_is_total_on_logic_noise(s in "[PQ!~&|()\\- >¬∧∨→_0-9]{0,40}") {
            if let Ok(f) = parse(&s) {
                prop_assert_eq!(parse(&f.print()).unwrap(), f);
            }
        }
    }
}
