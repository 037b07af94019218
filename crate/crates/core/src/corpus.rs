//! Exhaustive and seeded-random generators for test corpora.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::atomic::{AtomicRule, AtomicSystem, Premise};
use crate::syntax::{Atom, Formula, Program, Sequent};

/// Atomic formulae for the given names; `"false"` gives falsum.
pub fn leaves(names: &[&str]) -> Vec<Formula> {
    names
        .iter()
        .map(|n| match *n {
            "false" => Formula::Falsum,
            n => Formula::Atom(Atom::new(n).expect("valid atom name")),
        })
        .collect()
}

/// Every formula of depth at most `depth` built from `leaves`, shallow first.
pub fn formulas(leaves: &[Formula], depth: usize) -> Vec<Formula> {
    let mut all: Vec<Formula> = leaves.to_vec();
    if depth == 0 {
        return Vec::new();
    }
    for _ in 1..depth {
        let prev = all.clone();
        all = leaves.to_vec();
        for l in &prev {
            for r in &prev {
                all.push(Formula::and(l.clone(), r.clone()));
                all.push(Formula::or(l.clone(), r.clone()));
                all.push(Formula::imp(l.clone(), r.clone()));
            }
        }
    }
    all
}

/// All selections of at most `max` distinct items, in index order.
pub fn subsets<T: Clone>(items: &[T], max: usize) -> Vec<Vec<T>> {
    fn go<T: Clone>(items: &[T], max: usize, start: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        out.push(cur.clone());
        if cur.len() == max {
            return;
        }
        for i in start..items.len() {
            cur.push(items[i].clone());
            go(items, max, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, max, 0, &mut Vec::new(), &mut out);
    out
}

/// Programs of at most `max` clauses drawn from `clauses`.
pub fn programs(clauses: &[Formula], max: usize) -> Vec<Program> {
    subsets(clauses, max)
        .into_iter()
        .map(|cs| Program::new(cs).expect("clauses are definite"))
        .collect()
}

/// Sequents with at most `max_context` premises; all formulae from `pool`.
pub fn sequents(pool: &[Formula], max_context: usize) -> Vec<Sequent> {
    let mut out = Vec::new();
    for ctx in subsets(pool, max_context) {
        for c in pool {
            out.push(Sequent::new(ctx.iter().cloned(), c.clone()));
        }
    }
    out
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A formula of depth at most `depth`; connectives are equally likely and
/// leaves appear early with probability 1/4.
pub fn random_formula(rng: &mut impl Rng, leaves: &[Formula], depth: usize) -> Formula {
    if depth <= 1 || rng.gen_ratio(1, 4) {
        return leaves.choose(rng).expect("leaves").clone();
    }
    let l = random_formula(rng, leaves, depth - 1);
    let r = random_formula(rng, leaves, depth - 1);
    match rng.gen_range(0..3) {
        0 => Formula::and(l, r),
        1 => Formula::or(l, r),
        _ => Formula::imp(l, r),
    }
}

pub fn random_sequents(
    seed: u64,
    count: usize,
    leaves: &[Formula],
    depth: usize,
    max_context: usize,
) -> Vec<Sequent> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(0..=max_context);
            let ctx: Vec<_> = (0..n).map(|_| random_formula(&mut rng, leaves, depth)).collect();
            Sequent::new(ctx, random_formula(&mut rng, leaves, depth))
        })
        .collect()
}

/// A system of level at most 2 with up to `max_rules` rules: up to two
/// premises per rule, and a third of the premises discharge one or two atoms.
pub fn random_system(rng: &mut impl Rng, atoms: &[Atom], max_rules: usize) -> AtomicSystem {
    let n = rng.gen_range(0..=max_rules);
    let pick = |rng: &mut dyn rand::RngCore| atoms.choose(rng).expect("atoms").clone();
    (0..n)
        .map(|_| {
            let premises = (0..rng.gen_range(0..=2))
                .map(|_| {
                    let hyps = if rng.gen_ratio(1, 3) {
                        (0..rng.gen_range(1..=2)).map(|_| AtomicRule::axiom(pick(rng))).collect()
                    } else {
                        BTreeSet::new()
                    };
                    Premise {
                        hypotheses: hyps,
                        conclusion: pick(rng),
                    }
                })
                .collect();
            AtomicRule {
                conclusion: pick(rng),
                premises,
            }
        })
        .collect()
}

/// Rules concluding one of `conclusions`, with at most two distinct premises
/// over `atoms`, each discharging nothing or a single atom.
pub fn rule_universe(conclusions: &[Atom], atoms: &[Atom]) -> Vec<AtomicRule> {
    let mut premises = Vec::new();
    for c in atoms {
        premises.push(Premise {
            hypotheses: BTreeSet::new(),
            conclusion: c.clone(),
        });
        for h in atoms {
            premises.push(Premise {
                hypotheses: [AtomicRule::axiom(h.clone())].into(),
                conclusion: c.clone(),
            });
        }
    }
    let mut out = Vec::new();
    for c in conclusions {
        for ps in subsets(&premises, 2) {
            out.push(AtomicRule {
                conclusion: c.clone(),
                premises: ps,
            });
        }
    }
    out
}

/// Every base of at most `max` rules from `universe`.
pub fn bases(universe: &[AtomicRule], max: usize) -> Vec<AtomicSystem> {
    subsets(universe, max)
        .into_iter()
        .map(|rs| rs.into_iter().collect())
        .collect()
}
