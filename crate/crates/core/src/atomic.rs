//! Atomic rules, atomic systems (bases) and their encoding as definite
//! formulae.
//!
//! A rule concludes an atom from premises; each premise is an atom derived
//! under a (possibly empty) set of hypothesis rules that it discharges. The
//! level of a rule is 0 without premises, 1 when no premise discharges
//! anything, and otherwise one more than the level of the hypotheses it
//! discharges, counting a discharged atom as level 1.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::{Atom, Formula, Program};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AtomicError {
    #[error("atomic system has level {0}; only levels up to 2 are supported here")]
    UnsupportedLevel(usize),
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AtomicRule {
    #[serde(rename = "concl")]
    pub conclusion: Atom,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub premises: Vec<Premise>,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Premise {
    #[serde(rename = "hyps", default)]
    pub hypotheses: BTreeSet<AtomicRule>,
    #[serde(rename = "concl")]
    pub conclusion: Atom,
}

impl AtomicRule {
    /// `⇒ c`
    pub fn axiom(c: Atom) -> AtomicRule {
        AtomicRule {
            conclusion: c,
            premises: Vec::new(),
        }
    }

    /// `p1, ..., pn ⇒ c`
    pub fn first_level(premises: impl IntoIterator<Item = Atom>, c: Atom) -> AtomicRule {
        AtomicRule {
            conclusion: c,
            premises: premises
                .into_iter()
                .map(|p| Premise {
                    hypotheses: BTreeSet::new(),
                    conclusion: p,
                })
                .collect(),
        }
    }

    /// Premises given as `(discharged atoms, premise conclusion)` pairs.
    pub fn second_level(
        premises: impl IntoIterator<Item = (Vec<Atom>, Atom)>,
        c: Atom,
    ) -> AtomicRule {
        AtomicRule {
            conclusion: c,
            premises: premises
                .into_iter()
                .map(|(hyps, p)| Premise {
                    hypotheses: hyps.into_iter().map(AtomicRule::axiom).collect(),
                    conclusion: p,
                })
                .collect(),
        }
    }

    pub fn level(&self) -> usize {
        if self.premises.is_empty() {
            return 0;
        }
        let hyp = self
            .premises
            .iter()
            .flat_map(|p| &p.hypotheses)
            .map(|h| h.level() + 1)
            .max()
            .unwrap_or(0);
        1 + hyp
    }

    pub fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        out.insert(self.conclusion.clone());
        for p in &self.premises {
            out.insert(p.conclusion.clone());
            for h in &p.hypotheses {
                h.collect_atoms(out);
            }
        }
    }

    /// `⌊⇒c⌋ = c`; otherwise `(⌊Σ1⌋ → p1) ∧ ... ∧ (⌊Σn⌋ → pn) → c`, where an
    /// empty `Σi` leaves the bare `pi`.
    pub fn encode(&self) -> Formula {
        let head = Formula::Atom(self.conclusion.clone());
        let body = Formula::conjoin(self.premises.iter().map(|p| {
            let concl = Formula::Atom(p.conclusion.clone());
            match Formula::conjoin(p.hypotheses.iter().map(AtomicRule::encode)) {
                Some(hyps) => Formula::imp(hyps, concl),
                None => concl,
            }
        }));
        match body {
            Some(body) => Formula::imp(body, head),
            None => head,
        }
    }
}

impl fmt::Display for AtomicRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prems: Vec<String> = self
            .premises
            .iter()
            .map(|p| {
                if p.hypotheses.is_empty() {
                    p.conclusion.to_string()
                } else {
                    let hs: Vec<String> = p.hypotheses.iter().map(|h| h.to_string()).collect();
                    format!("[{}] {}", hs.join(", "), p.conclusion)
                }
            })
            .collect();
        if prems.is_empty() {
            write!(f, "=> {}", self.conclusion)
        } else {
            write!(f, "{} => {}", prems.join(", "), self.conclusion)
        }
    }
}

impl fmt::Debug for AtomicRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// A finite set of atomic rules.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AtomicSystem {
    pub rules: BTreeSet<AtomicRule>,
}

impl fmt::Debug for AtomicSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.rules).finish()
    }
}

impl FromIterator<AtomicRule> for AtomicSystem {
    fn from_iter<T: IntoIterator<Item = AtomicRule>>(iter: T) -> Self {
        AtomicSystem {
            rules: iter.into_iter().collect(),
        }
    }
}

impl AtomicSystem {
    pub fn empty() -> AtomicSystem {
        AtomicSystem::default()
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn level(&self) -> usize {
        self.rules.iter().map(AtomicRule::level).max().unwrap_or(0)
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        for r in &self.rules {
            r.collect_atoms(&mut out);
        }
        out
    }

    pub fn union(&self, other: &AtomicSystem) -> AtomicSystem {
        self.rules.iter().chain(&other.rules).cloned().collect()
    }

    pub fn is_subset(&self, other: &AtomicSystem) -> bool {
        self.rules.is_subset(&other.rules)
    }

    /// One definite clause per rule.
    pub fn encode(&self) -> Program {
        Program::new(self.rules.iter().map(AtomicRule::encode))
            .expect("encoded rules are definite")
    }

    pub fn from_json(text: &str) -> serde_json::Result<AtomicSystem> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("atomic systems serialize")
    }
}

/// `Γ ⊢_A c` for systems of level at most 2, where `Γ` is a set of atoms used
/// as extra zeroth-level rules.
pub fn derive_atomic(
    sys: &AtomicSystem,
    assumptions: &BTreeSet<Atom>,
    goal: &Atom,
) -> Result<bool, AtomicError> {
    let level = sys.level();
    if level > 2 {
        return Err(AtomicError::UnsupportedLevel(level));
    }
    let mut by_head: HashMap<&Atom, Vec<&AtomicRule>> = HashMap::new();
    for r in &sys.rules {
        by_head.entry(&r.conclusion).or_default().push(r);
    }
    let mut search = Derive {
        by_head,
        on_stack: HashSet::new(),
        derived: HashSet::new(),
    };
    Ok(search.derive(assumptions, goal))
}

struct Derive<'a> {
    by_head: HashMap<&'a Atom, Vec<&'a AtomicRule>>,
    on_stack: HashSet<(BTreeSet<Atom>, Atom)>,
    derived: HashSet<(BTreeSet<Atom>, Atom)>,
}

impl Derive<'_> {
    fn derive(&mut self, available: &BTreeSet<Atom>, goal: &Atom) -> bool {
        if available.contains(goal) {
            return true;
        }
        let key = (available.clone(), goal.clone());
        if self.derived.contains(&key) {
            return true;
        }
        if !self.on_stack.insert(key.clone()) {
            return false;
        }
        let rules = self.by_head.get(goal).cloned().unwrap_or_default();
        let found = rules.into_iter().any(|rule| {
            rule.premises.iter().all(|p| {
                let mut extended = available.clone();
                extended.extend(p.hypotheses.iter().map(|h| h.conclusion.clone()));
                self.derive(&extended, &p.conclusion)
            })
        });
        self.on_stack.remove(&key);
        if found {
            self.derived.insert(key);
        }
        found
    }
}
