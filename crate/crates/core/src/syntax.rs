//! Formulae of intuitionistic propositional logic, their concrete syntax, the
//! hereditary Harrop classification and programs.
//!
//! Concrete syntax, loosest to tightest:
//!
//! ```text
//! formula := imp
//! imp     := or ("->" imp)?
//! or      := and ("|" and)*
//! and     := unit ("&" unit)*
//! unit    := atom | "false" | "~" unit | "(" formula ")"
//! ```
//!
//! `~x` is sugar for `x -> false`. Atoms are `[a-z][a-zA-Z0-9_']*`; names
//! starting with `#` are reserved for atoms minted by flattening and are
//! accepted by the parser so generated programs can be read back.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Name of the atom that stands in for absurdity after flattening.
pub const BOTTOM_FLAT: &str = "#bot";

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(Arc<str>);

impl Atom {
    /// Builds an atom from a user-facing name, rejecting anything outside the
    /// atom grammar.
    pub fn new(name: &str) -> Result<Atom, SyntaxError> {
        if is_user_atom(name) || is_flat_atom(name) {
            Ok(Atom(Arc::from(name)))
        } else {
            Err(SyntaxError::BadAtom(name.to_string()))
        }
    }

    pub(crate) fn unchecked(name: impl AsRef<str>) -> Atom {
        Atom(Arc::from(name.as_ref()))
    }

    pub fn flat(n: usize) -> Atom {
        Atom::unchecked(format!("#{n}"))
    }

    pub fn bottom_flat() -> Atom {
        Atom::unchecked(BOTTOM_FLAT)
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    /// True for atoms minted by flattening (`#...`).
    pub fn is_flat(&self) -> bool {
        self.0.starts_with('#')
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn is_user_atom(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    name != "false" && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

fn is_flat_atom(name: &str) -> bool {
    name.len() > 1
        && name.starts_with('#')
        && name[1..].chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A formula. Variant order fixes the canonical order used for sets.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(Atom),
    Falsum,
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Imp(Arc<Formula>, Arc<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(Atom::new(name).expect("invalid atom name"))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Arc::new(l), Arc::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Arc::new(l), Arc::new(r))
    }

    pub fn imp(l: Formula, r: Formula) -> Formula {
        Formula::Imp(Arc::new(l), Arc::new(r))
    }

    /// `¬φ` is `φ → ⊥`.
    pub fn negation(f: Formula) -> Formula {
        Formula::imp(f, Formula::Falsum)
    }

    /// Left-nested conjunction of a non-empty list.
    pub fn conjoin(parts: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        parts.into_iter().reduce(Formula::and)
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Atom(_) | Formula::Falsum)
    }

    pub fn as_atom(&self) -> Option<&Atom> {
        match self {
            Formula::Atom(a) => Some(a),
            _ => None,
        }
    }

    /// Height of the syntax tree; atoms and `⊥` have depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Falsum => 1,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                1 + l.depth().max(r.depth())
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Falsum => 1,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => 1 + l.size() + r.size(),
        }
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub(crate) fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::Falsum => {}
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    pub fn mentions_falsum(&self) -> bool {
        match self {
            Formula::Atom(_) => false,
            Formula::Falsum => true,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                l.mentions_falsum() || r.mentions_falsum()
            }
        }
    }

    pub fn subformulae(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        self.collect_subformulae(&mut out);
        out
    }

    fn collect_subformulae(&self, out: &mut BTreeSet<Formula>) {
        if !out.insert(self.clone()) {
            return;
        }
        if let Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) = self {
            l.collect_subformulae(out);
            r.collect_subformulae(out);
        }
    }

    pub fn classify(&self) -> Class {
        Class::from_flags(self.is_definite(), self.is_goal())
    }

    /// `D := A | G -> A | D & D`, with `⊥` admitted wherever `A` is.
    pub fn is_definite(&self) -> bool {
        match self {
            Formula::Atom(_) | Formula::Falsum => true,
            Formula::Imp(g, a) => a.is_atomic() && g.is_goal(),
            Formula::And(l, r) => l.is_definite() && r.is_definite(),
            Formula::Or(..) => false,
        }
    }

    /// `G := A | D -> G | G & G | G | G`, with `⊥` admitted wherever `A` is.
    pub fn is_goal(&self) -> bool {
        match self {
            Formula::Atom(_) | Formula::Falsum => true,
            Formula::Imp(d, g) => d.is_definite() && g.is_goal(),
            Formula::And(l, r) | Formula::Or(l, r) => l.is_goal() && r.is_goal(),
        }
    }

    pub fn render(&self) -> String {
        self.to_string()
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        // 0 = imp, 1 = or, 2 = and, 3 = unit
        let own = match self {
            Formula::Atom(_) | Formula::Falsum => 3,
            Formula::Imp(_, c) if **c == Formula::Falsum => 3,
            Formula::Imp(..) => 0,
            Formula::Or(..) => 1,
            Formula::And(..) => 2,
        };
        let paren = own < prec;
        if paren {
            f.write_str("(")?;
        }
        match self {
            Formula::Atom(a) => write!(f, "{a}")?,
            Formula::Falsum => f.write_str("false")?,
            Formula::Imp(a, c) if **c == Formula::Falsum => {
                f.write_str("~")?;
                a.fmt_prec(f, 3)?;
            }
            Formula::Imp(a, c) => {
                a.fmt_prec(f, 1)?;
                f.write_str(" -> ")?;
                c.fmt_prec(f, 0)?;
            }
            Formula::Or(l, r) => {
                l.fmt_prec(f, 1)?;
                f.write_str(" | ")?;
                r.fmt_prec(f, 2)?;
            }
            Formula::And(l, r) => {
                l.fmt_prec(f, 2)?;
                f.write_str(" & ")?;
                r.fmt_prec(f, 3)?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

impl FromStr for Formula {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_formula(&text).map_err(serde::de::Error::custom)
    }
}

impl Serialize for Atom {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Atom {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Atom::new(&text).map_err(serde::de::Error::custom)
    }
}

/// Hereditary Harrop classification of a formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Class {
    DefiniteOnly,
    GoalOnly,
    Both,
    Neither,
}

impl Class {
    fn from_flags(definite: bool, goal: bool) -> Class {
        match (definite, goal) {
            (true, true) => Class::Both,
            (true, false) => Class::DefiniteOnly,
            (false, true) => Class::GoalOnly,
            (false, false) => Class::Neither,
        }
    }

    pub fn is_definite(self) -> bool {
        matches!(self, Class::DefiniteOnly | Class::Both)
    }

    pub fn is_goal(self) -> bool {
        matches!(self, Class::GoalOnly | Class::Both)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("syntax error at byte {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error("invalid atom name `{0}`")]
    BadAtom(String),
    #[error("`{0}` is not a definite formula")]
    NotDefinite(Formula),
    #[error("line {line}: {error}")]
    Line {
        line: usize,
        error: Box<SyntaxError>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    False,
    And,
    Or,
    Arrow,
    Not,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>, SyntaxError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\r' | '\n' => i += 1,
            '&' => {
                out.push((start, Token::And));
                i += 1;
            }
            '|' => {
                out.push((start, Token::Or));
                i += 1;
            }
            '~' => {
                out.push((start, Token::Not));
                i += 1;
            }
            '(' => {
                out.push((start, Token::LParen));
                i += 1;
            }
            ')' => {
                out.push((start, Token::RParen));
                i += 1;
            }
            '-' if bytes.get(i + 1) == Some(&b'>') => {
                out.push((start, Token::Arrow));
                i += 2;
            }
            '#' => {
                i += 1;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                if i == start + 1 {
                    return Err(SyntaxError::Parse {
                        pos: start,
                        message: "expected a name after `#`".into(),
                    });
                }
                out.push((start, Token::Ident(text[start..i].to_string())));
            }
            c if c.is_ascii_lowercase() => {
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'\'')
                {
                    i += 1;
                }
                let word = &text[start..i];
                out.push((
                    start,
                    if word == "false" {
                        Token::False
                    } else {
                        Token::Ident(word.to_string())
                    },
                ));
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(SyntaxError::Parse {
                    pos: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError::Parse {
            pos: self.offset(),
            message: message.into(),
        })
    }

    fn imp(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.or()?;
        if self.peek() == Some(&Token::Arrow) {
            self.pos += 1;
            let rhs = self.imp()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.and()?;
        while self.peek() == Some(&Token::Or) {
            self.pos += 1;
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.unit()?;
        while self.peek() == Some(&Token::And) {
            self.pos += 1;
            lhs = Formula::and(lhs, self.unit()?);
        }
        Ok(lhs)
    }

    fn unit(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek().cloned() {
            Some(Token::Ident(name)) => {
                self.pos += 1;
                Ok(Formula::Atom(Atom::unchecked(name)))
            }
            Some(Token::False) => {
                self.pos += 1;
                Ok(Formula::Falsum)
            }
            Some(Token::Not) => {
                self.pos += 1;
                Ok(Formula::negation(self.unit()?))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.imp()?;
                if self.peek() != Some(&Token::RParen) {
                    return self.error("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(t) => self.error(format!("unexpected token {t:?}")),
            None => self.error("unexpected end of input"),
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, SyntaxError> {
    let mut parser = Parser {
        tokens: lex(text)?,
        pos: 0,
        end: text.len(),
    };
    let f = parser.imp()?;
    if parser.pos != parser.tokens.len() {
        return parser.error("trailing input");
    }
    Ok(f)
}

/// A sequent `Γ ▷ φ`; the context is a set.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sequent {
    pub context: BTreeSet<Formula>,
    pub conclusion: Formula,
}

impl Sequent {
    pub fn new(context: impl IntoIterator<Item = Formula>, conclusion: Formula) -> Sequent {
        Sequent {
            context: context.into_iter().collect(),
            conclusion,
        }
    }

    pub fn closed(conclusion: Formula) -> Sequent {
        Sequent::new([], conclusion)
    }

    /// Every subformula of every formula in the sequent.
    pub fn subformulae(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        for f in self.context.iter().chain(std::iter::once(&self.conclusion)) {
            f.collect_subformulae(&mut out);
        }
        out
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        for f in self.context.iter().chain(std::iter::once(&self.conclusion)) {
            f.collect_atoms(&mut out);
        }
        out
    }

    pub fn depth(&self) -> usize {
        self.context
            .iter()
            .chain(std::iter::once(&self.conclusion))
            .map(Formula::depth)
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctx: Vec<String> = self.context.iter().map(|c| c.to_string()).collect();
        if ctx.is_empty() {
            write!(f, "|- {}", self.conclusion)
        } else {
            write!(f, "{} |- {}", ctx.join(", "), self.conclusion)
        }
    }
}

impl fmt::Debug for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

impl FromStr for Sequent {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_sequent(s)
    }
}

/// Parses `ctx |- concl`; a missing turnstile means an empty context.
pub fn parse_sequent(text: &str) -> Result<Sequent, SyntaxError> {
    let (ctx, concl) = match text.find("|-") {
        Some(at) => (&text[..at], &text[at + 2..]),
        None => ("", text),
    };
    let conclusion = parse_formula(concl).map_err(|e| shift(e, text.len() - concl.len()))?;
    Ok(Sequent::new(parse_context(ctx)?, conclusion))
}

/// Parses a comma-separated list of formulae; blank input is the empty list.
pub fn parse_context(text: &str) -> Result<Vec<Formula>, SyntaxError> {
    let mut out = Vec::new();
    if text.trim().is_empty() {
        return Ok(out);
    }
    let mut offset = 0;
    for part in text.split(',') {
        out.push(parse_formula(part).map_err(|e| shift(e, offset))?);
        offset += part.len() + 1;
    }
    Ok(out)
}

fn shift(e: SyntaxError, by: usize) -> SyntaxError {
    match e {
        SyntaxError::Parse { pos, message } => SyntaxError::Parse {
            pos: pos + by,
            message,
        },
        other => other,
    }
}

/// One sequent per non-blank line; `%` starts a comment line.
pub fn parse_sequent_file(text: &str) -> Result<Vec<Sequent>, SyntaxError> {
    content_lines(text)
        .map(|(line, body)| {
            parse_sequent(body).map_err(|e| SyntaxError::Line {
                line,
                error: Box::new(e),
            })
        })
        .collect()
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let t = l.trim();
        (!t.is_empty() && !t.starts_with('%')).then_some((i + 1, t))
    })
}

/// A finite set of definite formulae together with its decomposition `[P]`.
#[derive(Clone, Default)]
pub struct Program {
    clauses: BTreeSet<Formula>,
    decomposition: BTreeSet<Formula>,
}

impl PartialEq for Program {
    fn eq(&self, other: &Self) -> bool {
        self.clauses == other.clauses
    }
}

impl Eq for Program {}

impl PartialOrd for Program {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Program {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.clauses.cmp(&other.clauses)
    }
}

impl std::hash::Hash for Program {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.clauses.hash(state)
    }
}

impl Program {
    pub fn new(clauses: impl IntoIterator<Item = Formula>) -> Result<Program, SyntaxError> {
        let clauses: BTreeSet<Formula> = clauses.into_iter().collect();
        if let Some(bad) = clauses.iter().find(|c| !c.is_definite()) {
            return Err(SyntaxError::NotDefinite(bad.clone()));
        }
        let decomposition = decompose(&clauses);
        Ok(Program {
            clauses,
            decomposition,
        })
    }

    pub fn empty() -> Program {
        Program::default()
    }

    pub fn clauses(&self) -> &BTreeSet<Formula> {
        &self.clauses
    }

    /// The least superset of the clauses closed under splitting conjunctions.
    pub fn decomposition(&self) -> &BTreeSet<Formula> {
        &self.decomposition
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.clauses.contains(f)
    }

    pub fn is_subset(&self, other: &Program) -> bool {
        self.clauses.is_subset(&other.clauses)
    }

    /// `P ∪ {d}`. Fails if `d` is not definite.
    pub fn with(&self, d: &Formula) -> Result<Program, SyntaxError> {
        if !d.is_definite() {
            return Err(SyntaxError::NotDefinite(d.clone()));
        }
        if self.clauses.contains(d) {
            return Ok(self.clone());
        }
        let mut out = self.clone();
        out.clauses.insert(d.clone());
        let mut extra = BTreeSet::new();
        extra.insert(d.clone());
        out.decomposition.extend(decompose(&extra));
        Ok(out)
    }

    pub fn union(&self, other: &Program) -> Program {
        let mut out = self.clone();
        out.clauses.extend(other.clauses.iter().cloned());
        out.decomposition
            .extend(other.decomposition.iter().cloned());
        out
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        for c in &self.clauses {
            c.collect_atoms(&mut out);
        }
        out
    }

    /// Canonical one-line rendering, used as a key in dumps.
    pub fn canonical(&self) -> String {
        let parts: Vec<String> = self.clauses.iter().map(|c| c.to_string()).collect();
        format!("{{{}}}", parts.join(", "))
    }

    /// One clause per line.
    pub fn to_prog(&self) -> String {
        self.clauses.iter().map(|c| format!("{c}\n")).collect()
    }
}

impl fmt::Debug for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

/// Parses a program file: one definite formula per non-blank line, `%`
/// comments.
pub fn parse_program(text: &str) -> Result<Program, SyntaxError> {
    let clauses = content_lines(text)
        .map(|(line, body)| {
            let f = parse_formula(body).and_then(|f| match f.is_definite() {
                true => Ok(f),
                false => Err(SyntaxError::NotDefinite(f)),
            });
            f.map_err(|e| SyntaxError::Line {
                line,
                error: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Program::new(clauses)
}

/// `[P]`: the least superset of `clauses` closed under `D1 ∧ D2 ↦ D1, D2`.
pub fn decompose(clauses: &BTreeSet<Formula>) -> BTreeSet<Formula> {
    let mut out = BTreeSet::new();
    let mut todo: Vec<Formula> = clauses.iter().cloned().collect();
    while let Some(f) = todo.pop() {
        if let Formula::And(l, r) = &f {
            todo.push((**l).clone());
            todo.push((**r).clone());
        }
        out.insert(f);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn a(n: &str) -> Formula {
        Formula::atom(n)
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            f("a & b -> c"),
            Formula::imp(Formula::and(a("a"), a("b")), a("c"))
        );
        assert_eq!(f("false"), Formula::Falsum);
        assert_eq!(
            f("a -> b -> c"),
            Formula::imp(a("a"), Formula::imp(a("b"), a("c")))
        );
        assert_eq!(
            f("a | b & c"),
            Formula::or(a("a"), Formula::and(a("b"), a("c")))
        );
        assert_eq!(f("~a"), Formula::imp(a("a"), Formula::Falsum));
        assert_eq!(f("a & b & c"), Formula::and(Formula::and(a("a"), a("b")), a("c")));
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_formula("a & ") {
            Err(SyntaxError::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        match parse_formula("a $ b") {
            Err(SyntaxError::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_formula("(a -> b").is_err());
        assert!(parse_formula("a b").is_err());
        assert!(parse_formula("").is_err());
        assert!(parse_formula("A").is_err());
    }

    #[test]
    fn render_minimal_parens() {
        for s in [
            "a & b -> c",
            "(a -> b) -> c",
            "a -> b -> c",
            "a & (b & c)",
            "(a | b) & c",
            "~(a & b)",
            "~~a",
            "#3 -> #bot",
            "(a -> b | c) -> (a -> b) | (a -> c)",
        ] {
            assert_eq!(f(s).to_string(), s);
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(a("a").classify(), Class::Both);
        assert_eq!(f("b | c -> a").classify(), Class::DefiniteOnly);
        assert_eq!(f("a | b").classify(), Class::GoalOnly);
        assert_eq!(f("(a | b) -> c -> d").classify(), Class::Neither);
        assert_eq!(Formula::Falsum.classify(), Class::Both);
        assert_eq!(f("~a").classify(), Class::Both);
    }

    #[test]
    fn decompose_examples() {
        let set = |xs: &[&str]| xs.iter().map(|s| f(s)).collect::<BTreeSet<_>>();
        assert_eq!(decompose(&set(&["a & b", "c"])), set(&["a & b", "a", "b", "c"]));
        assert_eq!(decompose(&set(&[])), set(&[]));
        assert_eq!(
            decompose(&set(&["(a & b) & (g -> c)"])),
            set(&["(a & b) & (g -> c)", "a & b", "g -> c", "a", "b"])
        );
    }

    #[test]
    fn subformulae_examples() {
        let set = |xs: &[&str]| xs.iter().map(|s| f(s)).collect::<BTreeSet<_>>();
        assert_eq!(Sequent::closed(f("a -> a")).subformulae(), set(&["a -> a", "a"]));
        assert_eq!(
            Sequent::new([f("p & q")], f("p | q")).subformulae(),
            set(&["p & q", "p | q", "p", "q"])
        );
        assert_eq!(
            Sequent::closed(f("~a")).subformulae(),
            set(&["~a", "a", "false"])
        );
    }

    #[test]
    fn sequents_and_programs() {
        let s = parse_sequent("a, a -> b |- b").unwrap();
        assert_eq!(s.context.len(), 2);
        assert_eq!(s.conclusion, a("b"));
        assert_eq!(parse_sequent("|- a -> a").unwrap(), Sequent::closed(f("a -> a")));
        assert_eq!(parse_sequent("a -> a").unwrap(), Sequent::closed(f("a -> a")));
        let file = parse_sequent_file("% comment\n a |- a\n\n|- b -> b\n").unwrap();
        assert_eq!(file.len(), 2);

        let p = parse_program("a\n% note\nb | c -> a\n").unwrap();
        assert_eq!(p.len(), 2);
        assert!(matches!(
            parse_program("a | b"),
            Err(SyntaxError::Line { line: 1, .. })
        ));
        assert_eq!(parse_program(&p.to_prog()).unwrap(), p);
    }

    #[test]
    fn atom_names() {
        assert!(Atom::new("pbar").is_ok());
        assert!(Atom::new("p'").is_ok());
        assert!(Atom::new("#12").is_ok());
        assert!(Atom::new("false").is_err());
        assert!(Atom::new("P").is_err());
        assert!(Atom::new("").is_err());
        assert!(Atom::new("#").is_err());
    }
}
