//! The acceptance criteria as runnable checks over generated corpora.
//!
//! Cases are independent, so each criterion maps its check over the corpus in
//! parallel (with the `parallel` feature) and reports the first failing case
//! in corpus order.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use crate::atomic::{derive_atomic, AtomicRule, AtomicSystem};
use crate::bes::{self, build_n, Naf, SupportQuery};
use crate::corpus;
use crate::engine::Engine;
use crate::fixpoint::{lfp, satisfies};
use crate::nj::check_derivation;
use crate::oracle::Oracle;
use crate::syntax::{Atom, Formula, Program, Sequent};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Sequential,
    /// Falls back to sequential when built without the `parallel` feature.
    Parallel,
}

/// `Desk` is the full acceptance corpus; `Smoke` shrinks every corpus so the
/// whole suite runs in about a second.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Desk,
    Smoke,
}

#[derive(Debug, Clone, Copy)]
pub struct Config {
    pub mode: Mode,
    pub scale: Scale,
    pub engine: Engine,
    pub oracle: Oracle,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            mode: Mode::Parallel,
            scale: Scale::Desk,
            engine: Engine::default(),
            oracle: Oracle::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub id: usize,
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub example: Option<String>,
    pub elapsed: Duration,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}. {:<28} {:>8} cases {:>6} failures {:>8.2}s",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.cases,
            self.failures,
            self.elapsed.as_secs_f64()
        )?;
        if let Some(e) = &self.example {
            write!(f, "\n        first failure: {e}")?;
        }
        Ok(())
    }
}

pub const CRITERIA: [&str; 8] = [
    "engine = least fixed point",
    "engine = IPL (hH fragment)",
    "validity = IPL",
    "extracted NJ proofs check",
    "encoding faithfulness",
    "bases are not contexts",
    "negation as failure",
    "conservativity",
];

/// Maps `check` over `items`; returns the failure count and the first failure.
pub fn check_all<T, F>(mode: Mode, items: &[T], check: F) -> (usize, Option<String>)
where
    T: Sync,
    F: Fn(&T) -> Result<(), String> + Sync,
{
    let results: Vec<Option<String>> = match mode {
        #[cfg(feature = "parallel")]
        Mode::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(|x| check(x).err()).collect()
        }
        _ => items.iter().map(|x| check(x).err()).collect(),
    };
    let failures = results.iter().filter(|r| r.is_some()).count();
    (failures, results.into_iter().flatten().next())
}

fn agree(what: impl fmt::Display, left: (&str, bool), right: (&str, bool)) -> Result<(), String> {
    if left.1 == right.1 {
        Ok(())
    } else {
        Err(format!("{what}: {} = {}, {} = {}", left.0, left.1, right.0, right.1))
    }
}

fn atom(n: &str) -> Atom {
    Atom::new(n).expect("valid atom")
}

/// Programs of at most two definite clauses of depth ≤ 2 over {a, b} (plus
/// the clause `false`), paired with every goal of depth ≤ 3 over {a, b}.
pub fn program_goal_corpus(scale: Scale) -> Vec<(Program, Formula)> {
    let ab = corpus::leaves(&["a", "b"]);
    let goal_depth = if scale == Scale::Desk { 3 } else { 2 };
    let mut clauses: Vec<_> = corpus::formulas(&ab, 2).into_iter().filter(Formula::is_definite).collect();
    clauses.push(Formula::Falsum);
    let goals: Vec<_> = corpus::formulas(&ab, goal_depth).into_iter().filter(Formula::is_goal).collect();
    let mut out = Vec::new();
    for p in corpus::programs(&clauses, 2) {
        for g in &goals {
            out.push((p.clone(), g.clone()));
        }
    }
    out
}

/// Every sequent with at most two premises, all of depth ≤ 2 over {a, b,
/// false}, followed by random sequents of depth ≤ 3 over {a, b, c, false}.
pub fn sequent_corpus(scale: Scale) -> Vec<Sequent> {
    let (names, random): (&[&str], usize) = match scale {
        Scale::Desk => (&["a", "b", "false"], 1000),
        Scale::Smoke => (&["a", "b"], 100),
    };
    let mut out = corpus::sequents(&corpus::formulas(&corpus::leaves(names), 2), 2);
    let abc = corpus::leaves(&["a", "b", "c", "false"]);
    out.extend(corpus::random_sequents(0x5eed, random, &abc, 3, 2));
    out
}

pub fn system_corpus(scale: Scale) -> Vec<AtomicSystem> {
    let atoms: Vec<Atom> = ["a", "b", "c"].map(atom).into();
    let n = if scale == Scale::Desk { 600 } else { 60 };
    let mut rng = corpus::rng(0xba5e);
    (0..n).map(|_| corpus::random_system(&mut rng, &atoms, 5)).collect()
}

/// Rules over {p, q} that may also conclude `#bot`; bases of at most three.
pub fn naf_bases(scale: Scale) -> Vec<AtomicSystem> {
    let pq = [atom("p"), atom("q")];
    let universe = corpus::rule_universe(&[atom("p"), atom("q"), Atom::bottom_flat()], &pq);
    let bases = corpus::bases(&universe, 3);
    match scale {
        Scale::Desk => bases,
        Scale::Smoke => bases.into_iter().step_by(97).collect(),
    }
}

pub fn naf_formulas() -> Vec<Formula> {
    corpus::formulas(&corpus::leaves(&["p", "q", "false"]), 2)
}

pub fn run(id: usize, cfg: &Config) -> Report {
    let start = Instant::now();
    let (cases, (failures, example)) = match id {
        1 => engine_vs_fixpoint(cfg),
        2 => harrop_completeness(cfg),
        3 => validity_vs_ipl(cfg),
        4 => simulation(cfg),
        5 => encoding(cfg),
        6 => bases_not_contexts(cfg),
        7 => negation_as_failure(cfg),
        8 => conservativity(cfg),
        _ => panic!("no criterion {id}"),
    };
    Report {
        id,
        name: CRITERIA[id - 1],
        cases,
        failures,
        example,
        elapsed: start.elapsed(),
    }
}

pub fn run_all(cfg: &Config) -> Vec<Report> {
    (1..=CRITERIA.len()).map(|id| run(id, cfg)).collect()
}

type Tally = (usize, (usize, Option<String>));

fn engine_vs_fixpoint(cfg: &Config) -> Tally {
    let items = program_goal_corpus(cfg.scale);
    let r = check_all(cfg.mode, &items, |(p, g)| {
        let solved = cfg.engine.provable(p, g).map_err(|e| e.to_string())?;
        let i = lfp(p, g);
        let sat = satisfies(&i, p, g).map_err(|e| e.to_string())?;
        agree(format!("{p:?} ⊢ {g}"), ("solve", solved), ("satisfies", sat))
    });
    (items.len(), r)
}

fn harrop_completeness(cfg: &Config) -> Tally {
    let items = program_goal_corpus(cfg.scale);
    let r = check_all(cfg.mode, &items, |(p, g)| {
        let solved = cfg.engine.provable(p, g).map_err(|e| e.to_string())?;
        let s = Sequent::new(p.clauses().iter().cloned(), g.clone());
        let proved = cfg.oracle.provable(&s).map_err(|e| e.to_string())?;
        agree(&s, ("solve", solved), ("oracle", proved))
    });
    (items.len(), r)
}

fn validity_vs_ipl(cfg: &Config) -> Tally {
    let items = sequent_corpus(cfg.scale);
    let r = check_all(cfg.mode, &items, |s| {
        let valid = bes::valid_with(s, &cfg.engine).map_err(|e| e.to_string())?;
        let proved = cfg.oracle.provable(s).map_err(|e| e.to_string())?;
        agree(s, ("valid", valid), ("oracle", proved))
    });
    (items.len(), r)
}

fn simulation(cfg: &Config) -> Tally {
    let items = sequent_corpus(cfg.scale);
    let provable: Vec<&Sequent> = items
        .iter()
        .filter(|s| cfg.oracle.provable(s).unwrap_or(false))
        .collect();
    let r = check_all(cfg.mode, &provable, |s| {
        match bes::prove_nj(s, &cfg.engine).map_err(|e| e.to_string())? {
            Some(d) => check_derivation(&d, s).map_err(|e| format!("{s}: {e}")),
            None => Err(format!("{s}: no execution found")),
        }
    });
    (provable.len(), r)
}

fn encoding(cfg: &Config) -> Tally {
    let atoms = ["a", "b", "c"].map(atom);
    let items: Vec<(AtomicSystem, Atom)> = system_corpus(cfg.scale)
        .into_iter()
        .flat_map(|s| atoms.iter().map(move |a| (s.clone(), a.clone())))
        .collect();
    let r = check_all(cfg.mode, &items, |(sys, p)| {
        let derived = derive_atomic(sys, &BTreeSet::new(), p).map_err(|e| e.to_string())?;
        let goal = Formula::Atom(p.clone());
        let solved = cfg.engine.provable(&sys.encode(), &goal).map_err(|e| e.to_string())?;
        agree(format!("{sys:?} ⊢ {p}"), ("derive", derived), ("solve", solved))
    });
    (items.len(), r)
}

fn bases_not_contexts(cfg: &Config) -> Tally {
    let example: Formula = "(a -> b | c) -> (a -> b) | (a -> c)".parse().expect("formula");
    let Formula::Imp(premise, conclusion) = &example else { unreachable!() };
    let s = Sequent::closed(example.clone());
    let fl = build_n(&s, &BTreeSet::new());
    let base = AtomicSystem::from_iter([AtomicRule::axiom(fl.map.flat(premise).expect("in scope").clone())]);
    let none = BTreeSet::new();
    let err = |e: &dyn fmt::Display| e.to_string();
    let checks: Vec<(&str, Result<bool, String>, bool)> = vec![
        ("oracle rejects the example", cfg.oracle.provable(&s).map_err(|e| err(&e)), false),
        ("valid rejects the example", bes::valid_with(&s, &cfg.engine).map_err(|e| err(&e)), false),
        (
            "base supports the premise",
            fl.support(&base, &none, premise, &cfg.engine).map_err(|e| err(&e)),
            true,
        ),
        (
            "base does not support the conclusion",
            fl.support(&base, &none, conclusion, &cfg.engine).map_err(|e| err(&e)),
            false,
        ),
    ];
    let r = check_all(Mode::Sequential, &checks, |(what, got, want)| {
        agree(what, ("got", got.clone()?), ("want", *want))
    });
    (checks.len(), r)
}

fn negation_as_failure(cfg: &Config) -> Tally {
    let alphabet: BTreeSet<Atom> = ["p", "q"].map(atom).into();
    let phis = naf_formulas();
    let bases = naf_bases(cfg.scale);
    let degenerate: Vec<Result<bool, String>> = bases
        .iter()
        .map(|b| bes::is_degenerate(b, &alphabet).map_err(|e| e.to_string()))
        .collect();
    let items: Vec<(usize, usize)> = (0..bases.len())
        .flat_map(|b| (0..phis.len()).map(move |f| (b, f)))
        .collect();
    let (mut failures, mut example) = check_all(cfg.mode, &items, |&(b, f)| {
        let (base, phi) = (&bases[b], &phis[f]);
        let naf = bes::naf_with(base, phi, &alphabet, &cfg.engine).map_err(|e| e.to_string())?;
        // the right-hand side is false outright for degenerate bases
        let rhs = !degenerate[b].clone()? && {
            let q = SupportQuery::new(base.clone(), [], Formula::negation(phi.clone()));
            bes::support_with(&q, &cfg.engine).map_err(|e| e.to_string())?
        };
        agree(
            format!("{base:?}, ¬{phi}"),
            ("naf supported", naf == Naf::Supported),
            ("support ∧ non-degenerate", rhs),
        )
    });
    let contradictory = AtomicSystem::from_iter([
        AtomicRule::first_level([atom("p"), atom("pbar")], Atom::bottom_flat()),
        AtomicRule::axiom(atom("pbar")),
    ]);
    let p = Formula::Atom(atom("p"));
    match bes::naf_with(&contradictory, &p, &alphabet, &cfg.engine) {
        Ok(Naf::Supported) => {}
        other => {
            failures += 1;
            example.get_or_insert(format!("contradictory atoms: naf(p) = {other:?}"));
        }
    }
    (items.len() + 1, (failures, example))
}

fn conservativity(cfg: &Config) -> Tally {
    use rand::seq::SliceRandom;
    use rand::Rng;
    let bases = naf_bases(cfg.scale);
    let pool = naf_formulas();
    let mut rng = corpus::rng(0xc0de);
    let items: Vec<(AtomicSystem, AtomicSystem, Vec<Formula>, Formula)> = (0..200)
        .map(|_| {
            let big = bases.choose(&mut rng).expect("bases").clone();
            let small: AtomicSystem = big.rules.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
            let ctx = (0..rng.gen_range(0..=2)).map(|_| pool.choose(&mut rng).expect("pool").clone()).collect();
            (small, big, ctx, pool.choose(&mut rng).expect("pool").clone())
        })
        .collect();
    let r = check_all(cfg.mode, &items, |(small, big, ctx, phi)| {
        let at = |b: &AtomicSystem| {
            bes::support_with(&SupportQuery::new(b.clone(), ctx.clone(), phi.clone()), &cfg.engine)
                .map_err(|e| e.to_string())
        };
        if at(small)? && !at(big)? {
            return Err(format!("{ctx:?} ⊩ {phi} in {small:?} but not in {big:?}"));
        }
        Ok(())
    });
    (items.len(), r)
}
