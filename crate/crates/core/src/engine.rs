//! Goal-directed (uniform) proof search for hereditary Harrop programs.
//!
//! A query `P ▷ G` succeeds when one of the following applies:
//!
//! | step   | condition                                   |
//! |--------|---------------------------------------------|
//! | IN     | `A ∈ [P]`                                   |
//! | CLAUSE | `G → A ∈ [P]` and `P ⊢ G`                   |
//! | EFQ    | `P ⊢ ⊥`                                     |
//! | OR     | `P ⊢ G1` or `P ⊢ G2`                        |
//! | AND    | `P ⊢ G1` and `P ⊢ G2`                       |
//! | LOAD   | `P ∪ {D} ⊢ G` for the goal `D → G`          |
//!
//! Compound goals are always reduced by their own step first. Atomic goals try
//! IN, then every matching clause in canonical order, then EFQ. EFQ is only
//! tried at atomic goals other than `⊥`.
//!
//! Search is made total by a branch-local loop check on `(program, goal)`
//! pairs. Successes are tabled per call; failures are tabled only when they
//! did not depend on a loop check against an ancestor.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::{decompose, Formula, Program, SyntaxError};

pub const DEFAULT_BUDGET: usize = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "UPPERCASE")]
pub enum Step {
    In,
    Clause { clause: Formula },
    Efq,
    Or { branch: Branch },
    And,
    Load { loaded: Formula },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Left,
    Right,
}

/// A successful execution: one node per step, children prove its subgoals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub goal: Formula,
    #[serde(flatten)]
    pub step: Step,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<Trace>,
}

impl Trace {
    fn leaf(goal: Formula, step: Step) -> Trace {
        Trace {
            goal,
            step,
            children: Vec::new(),
        }
    }

    fn node(goal: Formula, step: Step, children: Vec<Trace>) -> Trace {
        Trace {
            goal,
            step,
            children,
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Trace::size).sum::<usize>()
    }

    /// Checks every node against the step it records, starting from `program`.
    pub fn validate(&self, program: &Program) -> Result<(), TraceError> {
        self.validate_at(program, &mut Vec::new())
    }

    fn validate_at(&self, program: &Program, path: &mut Vec<usize>) -> Result<(), TraceError> {
        let fail = |msg: String| {
            Err(TraceError {
                path: path.clone(),
                message: msg,
            })
        };
        let arity = match self.step {
            Step::In => 0,
            Step::And => 2,
            _ => 1,
        };
        if self.children.len() != arity {
            return fail(format!(
                "{:?} expects {arity} children, found {}",
                self.step,
                self.children.len()
            ));
        }
        let child_goal = |i: usize| &self.children[i].goal;
        let mut child_program = None;
        match (&self.step, &self.goal) {
            (Step::In, g) => {
                if !g.is_atomic() || !program.decomposition().contains(g) {
                    return fail(format!("IN: {g} is not an atom of the program"));
                }
            }
            (Step::Clause { clause }, g) => {
                let ok = matches!(clause, Formula::Imp(_, head) if **head == *g)
                    && program.decomposition().contains(clause);
                if !ok || !g.is_atomic() {
                    return fail(format!("CLAUSE: {clause} does not conclude {g} in the program"));
                }
                if let Formula::Imp(body, _) = clause {
                    if child_goal(0) != &**body {
                        return fail(format!("CLAUSE: child proves {} not {body}", child_goal(0)));
                    }
                }
            }
            (Step::Efq, g) => {
                if *g == Formula::Falsum || child_goal(0) != &Formula::Falsum {
                    return fail("EFQ: must prove ⊥ for a goal other than ⊥".into());
                }
            }
            (Step::Or { branch }, Formula::Or(l, r)) => {
                let want = if *branch == Branch::Left { l } else { r };
                if child_goal(0) != &**want {
                    return fail(format!("OR: child proves {} not {want}", child_goal(0)));
                }
            }
            (Step::And, Formula::And(l, r)) => {
                if child_goal(0) != &**l || child_goal(1) != &**r {
                    return fail("AND: children do not match conjuncts".into());
                }
            }
            (Step::Load { loaded }, Formula::Imp(d, g)) => {
                if loaded != &**d || child_goal(0) != &**g {
                    return fail("LOAD: loaded formula or subgoal mismatch".into());
                }
                match program.with(loaded) {
                    Ok(p) => child_program = Some(p),
                    Err(e) => return fail(format!("LOAD: {e}")),
                }
            }
            (step, g) => return fail(format!("{step:?} does not apply to {g}")),
        }
        let next = child_program.as_ref().unwrap_or(program);
        for (i, child) in self.children.iter().enumerate() {
            path.push(i);
            child.validate_at(next, path)?;
            path.pop();
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid trace at {path:?}: {message}")]
pub struct TraceError {
    pub path: Vec<usize>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Success(Trace),
    Failure,
}

impl Outcome {
    pub fn is_success(&self) -> bool {
        matches!(self, Outcome::Success(_))
    }

    pub fn trace(&self) -> Option<&Trace> {
        match self {
            Outcome::Success(t) => Some(t),
            Outcome::Failure => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("`{0}` is not a goal formula")]
    InvalidGoal(Formula),
    #[error("search exceeded the node budget of {0}")]
    Budget(usize),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
}

/// Counters and the set of programs visited by one call.
#[derive(Debug, Clone, Default)]
pub struct Stats {
    pub nodes: usize,
    pub programs: BTreeSet<Program>,
}

#[derive(Debug, Clone, Copy)]
pub struct Engine {
    pub budget: usize,
}

impl Default for Engine {
    fn default() -> Self {
        Engine {
            budget: DEFAULT_BUDGET,
        }
    }
}

impl Engine {
    pub fn with_budget(budget: usize) -> Engine {
        Engine { budget }
    }

    pub fn solve(&self, program: &Program, goal: &Formula) -> Result<Outcome, EngineError> {
        self.solve_with_stats(program, goal).map(|(o, _)| o)
    }

    pub fn solve_with_stats(
        &self,
        program: &Program,
        goal: &Formula,
    ) -> Result<(Outcome, Stats), EngineError> {
        if !goal.is_goal() {
            return Err(EngineError::InvalidGoal(goal.clone()));
        }
        let mut search = Search::new(program, self.budget, true);
        let (found, _) = search.prove(0, goal)?;
        let stats = Stats {
            nodes: search.nodes,
            programs: search.states.iter().map(|s| search.program(s)).collect(),
        };
        let outcome = match found {
            Some(t) => Outcome::Success(t),
            None => Outcome::Failure,
        };
        Ok((outcome, stats))
    }

    /// Like `solve`, but skips building the trace.
    pub fn provable(&self, program: &Program, goal: &Formula) -> Result<bool, EngineError> {
        if !goal.is_goal() {
            return Err(EngineError::InvalidGoal(goal.clone()));
        }
        let mut search = Search::new(program, self.budget, false);
        Ok(search.prove(0, goal)?.0.is_some())
    }
}

/// Convenience wrapper using the default budget.
pub fn solve(program: &Program, goal: &Formula) -> Result<Outcome, EngineError> {
    Engine::default().solve(program, goal)
}

/// A program reached from the root by loading `extras`, indexed for lookup.
#[derive(Clone)]
struct ProgState {
    extras: BTreeSet<Formula>,
    facts: HashSet<Formula>,
    /// Clauses by head, in canonical order.
    rules: HashMap<Formula, Vec<Formula>>,
    loads: HashMap<Formula, usize>,
}

impl ProgState {
    fn new(program: &Program) -> ProgState {
        let mut state = ProgState {
            extras: BTreeSet::new(),
            facts: HashSet::new(),
            rules: HashMap::new(),
            loads: HashMap::new(),
        };
        state.add(program.decomposition());
        state
    }

    fn add<'a>(&mut self, clauses: impl IntoIterator<Item = &'a Formula>) {
        for clause in clauses {
            match clause {
                f if f.is_atomic() => {
                    self.facts.insert(f.clone());
                }
                Formula::Imp(_, head) => {
                    let rules = self.rules.entry((**head).clone()).or_default();
                    if let Err(at) = rules.binary_search(clause) {
                        rules.insert(at, clause.clone());
                    }
                }
                _ => {}
            }
        }
    }
}

const NO_LOOP: usize = usize::MAX;

type Key = (usize, Formula);

struct Search {
    root: Program,
    states: Vec<ProgState>,
    index: HashMap<BTreeSet<Formula>, usize>,
    on_stack: HashMap<Key, usize>,
    depth: usize,
    proved: HashMap<Key, Trace>,
    refuted: HashSet<Key>,
    nodes: usize,
    budget: usize,
    /// Off when only the verdict is wanted; proofs are then empty stubs.
    tracing: bool,
}

impl Search {
    fn new(root: &Program, budget: usize, tracing: bool) -> Search {
        Search {
            root: root.clone(),
            states: vec![ProgState::new(root)],
            index: HashMap::new(),
            on_stack: HashMap::new(),
            depth: 0,
            proved: HashMap::new(),
            refuted: HashSet::new(),
            nodes: 0,
            budget,
            tracing,
        }
    }

    fn node(&self, goal: &Formula, step: impl FnOnce() -> Step, children: Vec<Trace>) -> Trace {
        if self.tracing {
            Trace::node(goal.clone(), step(), children)
        } else {
            Trace::leaf(Formula::Falsum, Step::In)
        }
    }

    fn load(&mut self, pid: usize, d: &Formula) -> Result<usize, EngineError> {
        if let Some(&next) = self.states[pid].loads.get(d) {
            return Ok(next);
        }
        if !d.is_definite() {
            return Err(SyntaxError::NotDefinite(d.clone()).into());
        }
        let next = if self.root.contains(d) || self.states[pid].extras.contains(d) {
            pid
        } else {
            let mut extras = self.states[pid].extras.clone();
            extras.insert(d.clone());
            match self.index.get(&extras) {
                Some(&id) => id,
                None => {
                    let mut state = self.states[pid].clone();
                    state.loads.clear();
                    state.extras = extras.clone();
                    state.add(&decompose(&[d.clone()].into()));
                    self.states.push(state);
                    self.index.insert(extras, self.states.len() - 1);
                    self.states.len() - 1
                }
            }
        };
        self.states[pid].loads.insert(d.clone(), next);
        Ok(next)
    }

    fn program(&self, state: &ProgState) -> Program {
        let extras = Program::new(state.extras.iter().cloned()).expect("loaded clauses are definite");
        self.root.union(&extras)
    }

    fn tick(&mut self) -> Result<(), EngineError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(EngineError::Budget(self.budget));
        }
        Ok(())
    }

    /// Returns the proof, if any, and the shallowest stack depth hit by a
    /// loop check underneath (`NO_LOOP` if none).
    fn prove(&mut self, pid: usize, goal: &Formula) -> Result<(Option<Trace>, usize), EngineError> {
        self.tick()?;
        match goal {
            Formula::And(l, r) => {
                let (left, low_l) = self.prove(pid, l)?;
                let Some(left) = left else {
                    return Ok((None, low_l));
                };
                let (right, low_r) = self.prove(pid, r)?;
                let low = low_l.min(low_r);
                Ok((right.map(|right| self.node(goal, || Step::And, vec![left, right])), low))
            }
            Formula::Or(l, r) => {
                let (left, low_l) = self.prove(pid, l)?;
                if let Some(t) = left {
                    let step = || Step::Or { branch: Branch::Left };
                    return Ok((Some(self.node(goal, step, vec![t])), low_l));
                }
                let (right, low_r) = self.prove(pid, r)?;
                let step = || Step::Or { branch: Branch::Right };
                Ok((right.map(|t| self.node(goal, step, vec![t])), low_l.min(low_r)))
            }
            Formula::Imp(d, g) => {
                let next = self.load(pid, d)?;
                let (sub, low) = self.prove(next, g)?;
                let step = || Step::Load { loaded: (**d).clone() };
                Ok((sub.map(|t| self.node(goal, step, vec![t])), low))
            }
            Formula::Atom(_) | Formula::Falsum => self.prove_atomic(pid, goal),
        }
    }

    fn prove_atomic(
        &mut self,
        pid: usize,
        goal: &Formula,
    ) -> Result<(Option<Trace>, usize), EngineError> {
        let key = (pid, goal.clone());
        if let Some(t) = self.proved.get(&key) {
            return Ok((Some(t.clone()), NO_LOOP));
        }
        if self.refuted.contains(&key) {
            return Ok((None, NO_LOOP));
        }
        if let Some(&d) = self.on_stack.get(&key) {
            return Ok((None, d));
        }
        if self.states[pid].facts.contains(goal) {
            let t = self.node(goal, || Step::In, vec![]);
            self.proved.insert(key, t.clone());
            return Ok((Some(t), NO_LOOP));
        }

        let depth = self.depth;
        self.on_stack.insert(key.clone(), depth);
        self.depth += 1;
        let result = self.try_clauses(pid, goal);
        self.depth -= 1;
        self.on_stack.remove(&key);
        let (found, low) = result?;

        match found {
            Some(t) => {
                self.proved.insert(key, t.clone());
                Ok((Some(t), low))
            }
            None if low >= depth => {
                self.refuted.insert(key);
                Ok((None, NO_LOOP))
            }
            None => Ok((None, low)),
        }
    }

    fn try_clauses(
        &mut self,
        pid: usize,
        goal: &Formula,
    ) -> Result<(Option<Trace>, usize), EngineError> {
        let mut low = NO_LOOP;
        let candidates = self.states[pid].rules.get(goal).cloned().unwrap_or_default();
        for clause in candidates {
            let Formula::Imp(body, _) = &clause else {
                unreachable!("rules index holds implications only");
            };
            let (sub, l) = self.prove(pid, body)?;
            low = low.min(l);
            if let Some(t) = sub {
                let step = || Step::Clause { clause: clause.clone() };
                return Ok((Some(self.node(goal, step, vec![t])), low));
            }
        }
        if *goal != Formula::Falsum {
            let (sub, l) = self.prove(pid, &Formula::Falsum)?;
            low = low.min(l);
            if let Some(t) = sub {
                return Ok((Some(self.node(goal, || Step::Efq, vec![t])), low));
            }
        }
        Ok((None, low))
    }
}
