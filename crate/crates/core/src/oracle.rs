//! Decision procedure for IPL consequence, independent of the proof-search
//! engine.
//!
//! Provability is decided by backward search in the contraction-free sequent
//! calculus G4ip, where the implication-left rule is split on the shape of the
//! antecedent so that every premise is smaller in the multiset ordering and
//! search terminates without loop checks. Refutations are witnessed by a
//! finite Kripke countermodel found by enumerating rooted posets.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::syntax::{Atom, Formula, Sequent};

pub const DEFAULT_BUDGET: usize = 5_000_000;
pub const DEFAULT_WORLDS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Provable,
    Refuted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub countermodel: Option<KripkeModel>,
}

impl Verdict {
    pub fn is_provable(&self) -> bool {
        self.status == Status::Provable
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("decision procedure exceeded the node budget of {0}")]
    Budget(usize),
}

#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    pub budget: usize,
    pub max_worlds: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            budget: DEFAULT_BUDGET,
            max_worlds: DEFAULT_WORLDS,
        }
    }
}

impl Oracle {
    /// Decides the sequent; refutations carry a countermodel when one exists
    /// within `max_worlds` worlds.
    pub fn decide(&self, s: &Sequent) -> Result<Verdict, OracleError> {
        if self.provable(s)? {
            return Ok(Verdict {
                status: Status::Provable,
                countermodel: None,
            });
        }
        Ok(Verdict {
            status: Status::Refuted,
            countermodel: find_countermodel(s, self.max_worlds),
        })
    }

    pub fn provable(&self, s: &Sequent) -> Result<bool, OracleError> {
        let mut g4 = G4 {
            memo: HashMap::new(),
            nodes: 0,
            budget: self.budget,
        };
        g4.prove(s.context.iter().cloned().collect(), s.conclusion.clone())
    }
}

pub fn decide(s: &Sequent) -> Result<Verdict, OracleError> {
    Oracle::default().decide(s)
}

pub fn provable(s: &Sequent) -> Result<bool, OracleError> {
    Oracle::default().provable(s)
}

struct G4 {
    memo: HashMap<(Vec<Formula>, Formula), bool>,
    nodes: usize,
    budget: usize,
}

impl G4 {
    fn prove(&mut self, mut ctx: Vec<Formula>, goal: Formula) -> Result<bool, OracleError> {
        ctx.sort();
        ctx.dedup();
        let key = (ctx, goal);
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(OracleError::Budget(self.budget));
        }
        let v = self.search(&key.0, &key.1)?;
        self.memo.insert(key, v);
        Ok(v)
    }

    fn search(&mut self, ctx: &[Formula], goal: &Formula) -> Result<bool, OracleError> {
        if ctx.contains(&Formula::Falsum) || ctx.contains(goal) {
            return Ok(true);
        }

        // Invertible left rules, one at a time.
        for (i, h) in ctx.iter().enumerate() {
            let rest = || {
                let mut r = ctx.to_vec();
                r.remove(i);
                r
            };
            match h {
                Formula::And(a, b) => {
                    let mut r = rest();
                    r.push((**a).clone());
                    r.push((**b).clone());
                    return self.prove(r, goal.clone());
                }
                Formula::Or(a, b) => {
                    let mut left = rest();
                    left.push((**a).clone());
                    if !self.prove(left, goal.clone())? {
                        return Ok(false);
                    }
                    let mut right = rest();
                    right.push((**b).clone());
                    return self.prove(right, goal.clone());
                }
                Formula::Imp(ante, cons) => match &**ante {
                    Formula::Falsum => return self.prove(rest(), goal.clone()),
                    Formula::Atom(_) if ctx.contains(ante) => {
                        let mut r = rest();
                        r.push((**cons).clone());
                        return self.prove(r, goal.clone());
                    }
                    Formula::And(c, d) => {
                        let mut r = rest();
                        r.push(Formula::imp((**c).clone(), Formula::imp((**d).clone(), (**cons).clone())));
                        return self.prove(r, goal.clone());
                    }
                    Formula::Or(c, d) => {
                        let mut r = rest();
                        r.push(Formula::imp((**c).clone(), (**cons).clone()));
                        r.push(Formula::imp((**d).clone(), (**cons).clone()));
                        return self.prove(r, goal.clone());
                    }
                    _ => {}
                },
                _ => {}
            }
        }

        // Invertible right rules.
        match goal {
            Formula::And(a, b) => {
                return Ok(self.prove(ctx.to_vec(), (**a).clone())?
                    && self.prove(ctx.to_vec(), (**b).clone())?);
            }
            Formula::Imp(a, b) => {
                let mut r = ctx.to_vec();
                r.push((**a).clone());
                return self.prove(r, (**b).clone());
            }
            _ => {}
        }

        // Non-invertible choices.
        if let Formula::Or(a, b) = goal {
            if self.prove(ctx.to_vec(), (**a).clone())? || self.prove(ctx.to_vec(), (**b).clone())? {
                return Ok(true);
            }
        }
        for (i, h) in ctx.iter().enumerate() {
            let Formula::Imp(ante, cons) = h else { continue };
            let Formula::Imp(_, d) = &**ante else { continue };
            let mut rest = ctx.to_vec();
            rest.remove(i);
            let mut first = rest.clone();
            first.push(Formula::imp((**d).clone(), (**cons).clone()));
            if !self.prove(first, (**ante).clone())? {
                continue;
            }
            rest.push((**cons).clone());
            if self.prove(rest, goal.clone())? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// A finite rooted Kripke model. World 0 is the root; `order` lists the pairs
/// `(v, w)` with `v ≤ w`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KripkeModel {
    pub worlds: usize,
    pub order: Vec<(usize, usize)>,
    pub valuation: BTreeMap<Atom, Vec<usize>>,
}

impl KripkeModel {
    fn frame(&self) -> Frame {
        let mut up = vec![0u32; self.worlds];
        for &(v, w) in &self.order {
            up[v] |= 1 << w;
        }
        for (w, mask) in up.iter_mut().enumerate() {
            *mask |= 1 << w;
        }
        Frame { up }
    }

    fn mask(&self, atom: &Atom) -> u32 {
        self.valuation
            .get(atom)
            .map_or(0, |ws| ws.iter().fold(0, |m, &w| m | (1 << w)))
    }

    /// Whether world `w` forces `f`.
    pub fn forces(&self, w: usize, f: &Formula) -> bool {
        let frame = self.frame();
        frame.eval(f, &|a| self.mask(a)) & (1 << w) != 0
    }

    /// True when some world forces the whole context but not the conclusion.
    pub fn refutes(&self, s: &Sequent) -> bool {
        (0..self.worlds)
            .any(|w| s.context.iter().all(|c| self.forces(w, c)) && !self.forces(w, &s.conclusion))
    }

    /// Valuations are upward closed.
    pub fn is_monotone(&self) -> bool {
        let frame = self.frame();
        self.valuation.keys().all(|a| frame.is_up_set(self.mask(a)))
    }
}

struct Frame {
    /// `up[w]`: bitmask of worlds above (and including) `w`.
    up: Vec<u32>,
}

impl Frame {
    fn is_up_set(&self, m: u32) -> bool {
        self.up
            .iter()
            .enumerate()
            .all(|(w, &u)| m & (1 << w) == 0 || u & !m == 0)
    }

    fn up_sets(&self) -> Vec<u32> {
        (0..1u32 << self.up.len()).filter(|&m| self.is_up_set(m)).collect()
    }

    fn eval(&self, f: &Formula, val: &dyn Fn(&Atom) -> u32) -> u32 {
        match f {
            Formula::Atom(a) => val(a),
            Formula::Falsum => 0,
            Formula::And(l, r) => self.eval(l, val) & self.eval(r, val),
            Formula::Or(l, r) => self.eval(l, val) | self.eval(r, val),
            Formula::Imp(l, r) => {
                let (a, b) = (self.eval(l, val), self.eval(r, val));
                self.up
                    .iter()
                    .enumerate()
                    .filter(|(_, &u)| u & a & !b == 0)
                    .fold(0, |m, (w, _)| m | (1 << w))
            }
        }
    }
}

/// Rooted, naturally labelled posets on `n` worlds (root 0, `v ≤ w ⇒ v ≤ w`
/// as integers), each given as its `up` masks.
fn rooted_posets(n: usize) -> &'static [Vec<u32>] {
    const MAX: usize = 7;
    static CACHE: OnceLock<Vec<Vec<Vec<u32>>>> = OnceLock::new();
    assert!((1..=MAX).contains(&n), "poset size {n} out of range");
    let all = CACHE.get_or_init(|| (0..=MAX).map(enumerate_posets).collect());
    &all[n]
}

fn enumerate_posets(n: usize) -> Vec<Vec<u32>> {
    if n == 0 {
        return Vec::new();
    }
    // `down[w]`: worlds below w, including w.
    let mut out = Vec::new();
    let mut down = vec![1u32];
    extend_posets(n, &mut down, &mut out);
    out
}

fn extend_posets(n: usize, down: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let k = down.len();
    if k == n {
        let mut up = vec![0u32; n];
        for (w, &d) in down.iter().enumerate() {
            for (v, u) in up.iter_mut().enumerate() {
                if d & (1 << v) != 0 {
                    *u |= 1 << w;
                }
            }
        }
        out.push(up);
        return;
    }
    // The strict predecessors of the new world form a down-closed set of
    // earlier worlds that contains the root.
    for preds in 0..(1u32 << k) {
        if preds & 1 == 0 {
            continue;
        }
        let closed = (0..k).all(|v| preds & (1 << v) == 0 || down[v] & !preds == 0);
        if closed {
            down.push(preds | (1 << k));
            extend_posets(n, down, out);
            down.pop();
        }
    }
}

/// Searches rooted posets of up to `max_worlds` worlds for a model whose root
/// forces the context but not the conclusion.
pub fn find_countermodel(s: &Sequent, max_worlds: usize) -> Option<KripkeModel> {
    let atoms: Vec<Atom> = s.atoms().into_iter().collect();
    for n in 1..=max_worlds {
        for up in rooted_posets(n) {
            let frame = Frame { up: up.clone() };
            let ups = frame.up_sets();
            let mut choice = vec![0usize; atoms.len()];
            loop {
                let masks: HashMap<&Atom, u32> = atoms
                    .iter()
                    .zip(&choice)
                    .map(|(a, &i)| (a, ups[i]))
                    .collect();
                let val = |a: &Atom| masks.get(a).copied().unwrap_or(0);
                let root_ok = |f: &Formula| frame.eval(f, &val) & 1 != 0;
                if s.context.iter().all(root_ok) && !root_ok(&s.conclusion) {
                    return Some(model_from(&frame, &atoms, &masks));
                }
                if !advance(&mut choice, ups.len()) {
                    break;
                }
            }
        }
    }
    None
}

fn advance(choice: &mut [usize], radix: usize) -> bool {
    for c in choice.iter_mut() {
        *c += 1;
        if *c < radix {
            return true;
        }
        *c = 0;
    }
    false
}

fn model_from(frame: &Frame, atoms: &[Atom], masks: &HashMap<&Atom, u32>) -> KripkeModel {
    let n = frame.up.len();
    let order = (0..n)
        .flat_map(|v| (0..n).filter(move |&w| v != w).map(move |w| (v, w)))
        .filter(|&(v, w)| frame.up[v] & (1 << w) != 0)
        .collect();
    let valuation = atoms
        .iter()
        .map(|a| {
            let m = masks[a];
            (a.clone(), (0..n).filter(|w| m & (1 << w) != 0).collect())
        })
        .collect::<BTreeMap<_, _>>();
    KripkeModel {
        worlds: n,
        order,
        valuation,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_sequent;

    fn seq(s: &str) -> Sequent {
        parse_sequent(s).unwrap()
    }

    #[test]
    fn poset_counts() {
        // naturally labelled posets with a bottom: 1, 1, 2, 7, 40
        let counts: Vec<usize> = (1..=5).map(|n| rooted_posets(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 7, 40]);
    }

    #[test]
    fn examples() {
        assert!(decide(&seq("|- p -> p")).unwrap().is_provable());
        let v = decide(&seq("|- (a -> b | c) -> (a -> b) | (a -> c)")).unwrap();
        assert_eq!(v.status, Status::Refuted);
        let m = v.countermodel.unwrap();
        assert!(m.refutes(&seq("|- (a -> b | c) -> (a -> b) | (a -> c)")));
        let peirce = seq("|- ((p -> q) -> p) -> p");
        let v = decide(&peirce).unwrap();
        assert_eq!(v.status, Status::Refuted);
        let m = v.countermodel.unwrap();
        assert!(m.worlds <= 3 && m.refutes(&peirce) && m.is_monotone());
    }

    #[test]
    fn classic_tautologies() {
        for s in [
            "|- ~~(p | ~p)",
            "|- (p -> q) -> ~q -> ~p",
            "p & q |- q & p",
            "p | q |- q | p",
            "|- false -> p",
            "|- ((p -> q) -> r) -> (p -> q -> r)",
            "~~~p |- ~p",
            "|- (p | q -> r) -> (p -> r) & (q -> r)",
        ] {
            assert!(provable(&seq(s)).unwrap(), "{s}");
        }
        for s in ["|- p | ~p", "|- ~~p -> p", "~p -> q |- ~q -> p", "|- p", "|- false"] {
            assert!(!provable(&seq(s)).unwrap(), "{s}");
            assert!(find_countermodel(&seq(s), 3).is_some(), "{s}");
        }
    }

    #[test]
    fn budget() {
        let o = Oracle {
            budget: 1,
            max_worlds: 1,
        };
        assert_eq!(
            o.provable(&seq("|- (p -> q) -> p -> q")),
            Err(OracleError::Budget(1))
        );
    }
}
