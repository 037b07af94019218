//! Natural deduction derivations and their checker.
//!
//! Discharge is by label: `ImpI` and `OrE` bind labels, and an assumption leaf
//! carrying a bound label is discharged by the nearest enclosing binder. A
//! binder may discharge nothing. Every other leaf is an open assumption and
//! must belong to the sequent's context.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::{Formula, Sequent};

pub type Label = String;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rule {
    Assumption(Option<Label>),
    AndI,
    AndE1,
    AndE2,
    OrI1,
    OrI2,
    /// Labels discharged in the left and right minor premises.
    OrE(Label, Label),
    ImpI(Label),
    /// Children: the antecedent, then the implication.
    ImpE,
    FalsumE,
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::Assumption(_) => "assume",
            Rule::AndI => "and-i",
            Rule::AndE1 => "and-e1",
            Rule::AndE2 => "and-e2",
            Rule::OrI1 => "or-i1",
            Rule::OrI2 => "or-i2",
            Rule::OrE(..) => "or-e",
            Rule::ImpI(_) => "imp-i",
            Rule::ImpE => "imp-e",
            Rule::FalsumE => "false-e",
        }
    }

    fn arity(&self) -> usize {
        match self {
            Rule::Assumption(_) => 0,
            Rule::AndI | Rule::ImpE => 2,
            Rule::OrE(..) => 3,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDerivation", into = "RawDerivation")]
pub struct Derivation {
    pub formula: Formula,
    pub rule: Rule,
    pub children: Vec<Derivation>,
}

impl Derivation {
    pub fn assume(formula: Formula) -> Derivation {
        Derivation::new(formula, Rule::Assumption(None), vec![])
    }

    pub fn discharged(formula: Formula, label: impl Into<Label>) -> Derivation {
        Derivation::new(formula, Rule::Assumption(Some(label.into())), vec![])
    }

    pub fn new(formula: Formula, rule: Rule, children: Vec<Derivation>) -> Derivation {
        Derivation {
            formula,
            rule,
            children,
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Derivation::size).sum::<usize>()
    }
}

/// First ill-formed node: child-index path from the root and what was wrong.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at {path:?}: {message}")]
pub struct Diagnostic {
    pub path: Vec<usize>,
    pub message: String,
}

/// Checks that `d` is an NJ derivation of `s.conclusion` whose open
/// assumptions all belong to `s.context`.
pub fn check_derivation(d: &Derivation, s: &Sequent) -> Result<(), Diagnostic> {
    if d.formula != s.conclusion {
        return Err(Diagnostic {
            path: vec![],
            message: format!("root concludes {} but the sequent wants {}", d.formula, s.conclusion),
        });
    }
    let mut checker = Checker {
        sequent: s,
        scope: HashMap::new(),
        path: Vec::new(),
    };
    checker.check(d)
}

struct Checker<'a> {
    sequent: &'a Sequent,
    scope: HashMap<Label, Vec<Formula>>,
    path: Vec<usize>,
}

impl Checker<'_> {
    fn fail<T>(&self, message: String) -> Result<T, Diagnostic> {
        Err(Diagnostic {
            path: self.path.clone(),
            message,
        })
    }

    fn child(&mut self, d: &Derivation, i: usize, bind: Option<(&Label, &Formula)>) -> Result<(), Diagnostic> {
        if let Some((l, f)) = bind {
            self.scope.entry(l.clone()).or_default().push(f.clone());
        }
        self.path.push(i);
        let r = self.check(&d.children[i]);
        self.path.pop();
        if let Some((l, _)) = bind {
            self.scope.get_mut(l).map(Vec::pop);
        }
        r
    }

    fn check(&mut self, d: &Derivation) -> Result<(), Diagnostic> {
        if d.children.len() != d.rule.arity() {
            return self.fail(format!(
                "{} expects {} premises, found {}",
                d.rule.name(),
                d.rule.arity(),
                d.children.len()
            ));
        }
        let phi = &d.formula;
        let kid = |i: usize| &d.children[i].formula;
        let shape_error = |expected: String| {
            format!("{}: expected {expected}, found {}", d.rule.name(), phi)
        };
        match &d.rule {
            Rule::Assumption(label) => {
                let bound = label
                    .as_ref()
                    .and_then(|l| self.scope.get(l))
                    .and_then(|stack| stack.last());
                match bound {
                    Some(f) if f == phi => {}
                    Some(f) => {
                        return self.fail(format!(
                            "assumption {phi} carries a label bound to {f}"
                        ))
                    }
                    None if self.sequent.context.contains(phi) => {}
                    None => return self.fail(format!("open assumption {phi} is not in the context")),
                }
                return Ok(());
            }
            Rule::AndI => {
                if *phi != Formula::and(kid(0).clone(), kid(1).clone()) {
                    return self.fail(shape_error(format!("{} & {}", kid(0), kid(1))));
                }
            }
            Rule::AndE1 | Rule::AndE2 => {
                let Formula::And(l, r) = kid(0) else {
                    return self.fail(format!("{}: premise {} is not a conjunction", d.rule.name(), kid(0)));
                };
                let want = if d.rule == Rule::AndE1 { l } else { r };
                if **want != *phi {
                    return self.fail(shape_error(want.to_string()));
                }
            }
            Rule::OrI1 | Rule::OrI2 => {
                let Formula::Or(l, r) = phi else {
                    return self.fail(shape_error("a disjunction".into()));
                };
                let want = if d.rule == Rule::OrI1 { l } else { r };
                if **want != *kid(0) {
                    return self.fail(format!("{}: premise {} is not {want}", d.rule.name(), kid(0)));
                }
            }
            Rule::OrE(left, right) => {
                let Formula::Or(l, r) = kid(0).clone() else {
                    return self.fail(format!("or-e: major premise {} is not a disjunction", kid(0)));
                };
                if kid(1) != phi || kid(2) != phi {
                    return self.fail(format!("or-e: minor premises must both conclude {phi}"));
                }
                self.child(d, 0, None)?;
                self.child(d, 1, Some((left, &l)))?;
                return self.child(d, 2, Some((right, &r)));
            }
            Rule::ImpI(label) => {
                let Formula::Imp(a, b) = phi else {
                    return self.fail(shape_error("an implication".into()));
                };
                if **b != *kid(0) {
                    return self.fail(format!("imp-i: premise {} is not {b}", kid(0)));
                }
                let a = (**a).clone();
                return self.child(d, 0, Some((label, &a)));
            }
            Rule::ImpE => {
                if *kid(1) != Formula::imp(kid(0).clone(), phi.clone()) {
                    return self.fail(format!(
                        "imp-e: major premise {} is not {} -> {phi}",
                        kid(1),
                        kid(0)
                    ));
                }
            }
            Rule::FalsumE => {
                if *kid(0) != Formula::Falsum {
                    return self.fail(format!("false-e: premise {} is not false", kid(0)));
                }
            }
        }
        for i in 0..d.children.len() {
            self.child(d, i, None)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct RawDerivation {
    rule: String,
    formula: Formula,
    #[serde(default)]
    children: Vec<Derivation>,
    #[serde(default)]
    discharges: Vec<Label>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<Label>,
}

impl From<Derivation> for RawDerivation {
    fn from(d: Derivation) -> Self {
        let name = d.rule.name().to_string();
        let (discharges, label) = match d.rule {
            Rule::Assumption(l) => (vec![], l),
            Rule::OrE(l, r) => (vec![l, r], None),
            Rule::ImpI(l) => (vec![l], None),
            _ => (vec![], None),
        };
        RawDerivation {
            rule: name,
            formula: d.formula,
            children: d.children,
            discharges,
            label,
        }
    }
}

impl TryFrom<RawDerivation> for Derivation {
    type Error = String;

    fn try_from(raw: RawDerivation) -> Result<Self, Self::Error> {
        let mut labels = raw.discharges.into_iter();
        let mut take = || labels.next().ok_or_else(|| format!("{}: missing discharge label", raw.rule));
        let rule = match raw.rule.as_str() {
            "assume" => Rule::Assumption(raw.label),
            "and-i" => Rule::AndI,
            "and-e1" => Rule::AndE1,
            "and-e2" => Rule::AndE2,
            "or-i1" => Rule::OrI1,
            "or-i2" => Rule::OrI2,
            "or-e" => Rule::OrE(take()?, take()?),
            "imp-i" => Rule::ImpI(take()?),
            "imp-e" => Rule::ImpE,
            "false-e" => Rule::FalsumE,
            other => return Err(format!("unknown rule `{other}`")),
        };
        Ok(Derivation::new(raw.formula, rule, raw.children))
    }
}
