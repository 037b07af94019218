use std::collections::BTreeSet;

use hhbes::atomic::{derive_atomic, AtomicRule, AtomicSystem};
use hhbes::bes::{self, build_n, extract_nj, SupportQuery};
use hhbes::corpus::{self, formulas, leaves, sequents, subsets};
use hhbes::engine::Engine;
use hhbes::fixpoint::{lfp, satisfies};
use hhbes::nj::{check_derivation, Derivation};
use hhbes::oracle;
use hhbes::syntax::{Atom, Formula, Sequent};
use rand::seq::SliceRandom;
use rand::Rng;

fn atoms(names: &[&str]) -> Vec<Atom> {
    names.iter().map(|n| Atom::new(n).unwrap()).collect()
}

/// Rules over `atoms` with at most one premise, discharging at most one atom.
fn small_rules(atoms: &[Atom]) -> Vec<AtomicRule> {
    let mut out = Vec::new();
    for c in atoms {
        out.push(AtomicRule::axiom(c.clone()));
        for p in atoms {
            out.push(AtomicRule::first_level([p.clone()], c.clone()));
            for h in atoms {
                out.push(AtomicRule::second_level([(vec![h.clone()], p.clone())], c.clone()));
            }
        }
    }
    out
}

fn atomic_support_case(base: &AtomicSystem, abc: &[Atom]) {
    for sigma in subsets(abc, 3) {
        let sigma: BTreeSet<Atom> = sigma.into_iter().collect();
        let ctx: Vec<Formula> = sigma.iter().cloned().map(Formula::Atom).collect();
        for p in abc {
            let q = SupportQuery::new(base.clone(), ctx.clone(), Formula::Atom(p.clone()));
            let supported = bes::support(&q).unwrap();
            let derived = derive_atomic(base, &sigma, p).unwrap();
            assert_eq!(supported, derived, "{base:?}, {sigma:?} ⊩ {p}");
        }
    }
}

#[test]
fn atomic_support_is_derivability() {
    let abc = atoms(&["a", "b", "c"]);
    let universe = small_rules(&abc);
    for base in corpus::bases(&universe, 3) {
        atomic_support_case(&base, &abc);
    }
    // wider rules, four at a time, sampled
    let wide = corpus::rule_universe(&abc, &abc);
    let mut rng = corpus::rng(3);
    for _ in 0..1500 {
        let base: AtomicSystem = wide.choose_multiple(&mut rng, 4).cloned().collect();
        atomic_support_case(&base, &abc);
    }
}

fn small_sequents() -> Vec<Sequent> {
    sequents(&formulas(&leaves(&["a", "b", "false"]), 2), 1)
}

/// For each in-scope φ: whether N' proves φ♭, and whether N' supports φ.
fn flat_vs_support(s: &Sequent, extension: &AtomicSystem) -> Vec<(Formula, bool, bool)> {
    let engine = Engine::default();
    let fl = build_n(s, &BTreeSet::new());
    let bigger = fl.system.union(extension);
    let program = bigger.encode();
    s.subformulae()
        .into_iter()
        .map(|phi| {
            let flat = Formula::Atom(fl.map.flat(&phi).unwrap().clone());
            let by_flat = engine.provable(&program, &flat).unwrap();
            let by_support = bes::support(&SupportQuery::new(bigger.clone(), [], phi.clone())).unwrap();
            (phi, by_flat, by_support)
        })
        .collect()
}

#[test]
fn flat_atoms_behave_like_their_formulae_in_extensions_of_n() {
    let mut rng = corpus::rng(4);
    for s in small_sequents().iter().step_by(7) {
        let mut letters: Vec<Atom> = s.atoms().into_iter().collect();
        letters.push(Atom::new("z").unwrap());
        for _ in 0..4 {
            let extension = corpus::random_system(&mut rng, &letters, 3);
            for (phi, by_flat, by_support) in flat_vs_support(s, &extension) {
                assert_eq!(by_flat, by_support, "{s}: {phi} in N ∪ {extension:?}");
            }
        }
    }
}

#[test]
fn support_implies_flat_even_when_extensions_touch_flat_atoms() {
    let mut rng = corpus::rng(5);
    for s in small_sequents().iter().step_by(13) {
        let fl = build_n(s, &BTreeSet::new());
        let letters: Vec<Atom> = fl.system.atoms().into_iter().chain(s.atoms()).collect();
        for _ in 0..4 {
            let extension = corpus::random_system(&mut rng, &letters, 3);
            for (phi, by_flat, by_support) in flat_vs_support(s, &extension) {
                assert!(!by_support || by_flat, "{s}: {phi} in N ∪ {extension:?}");
            }
        }
    }
}

#[test]
fn finite_n_cannot_eliminate_into_outside_atoms() {
    // N only eliminates a ∨ b into subformulae of the sequent. Once (a ∨ b)♭
    // is asserted outright, a fresh atom entailed by both a and b is still
    // underivable, so the flat atom holds while the disjunction is unsupported.
    let s: Sequent = "a | b |- a | b".parse().unwrap();
    let fl = build_n(&s, &BTreeSet::new());
    let or = Formula::or(Formula::atom("a"), Formula::atom("b"));
    let extension = AtomicSystem::from_iter([AtomicRule::axiom(fl.map.flat(&or).unwrap().clone())]);
    let row = flat_vs_support(&s, &extension).into_iter().find(|(phi, ..)| *phi == or).unwrap();
    assert_eq!(row, (or, true, false));
}

#[test]
fn valid_sequents_round_trip_through_fixpoint_engine_and_nj() {
    let engine = Engine::default();
    let mut valid = 0;
    for s in small_sequents() {
        if !bes::valid(&s).unwrap() {
            continue;
        }
        valid += 1;
        let fl = build_n(&s, &BTreeSet::new());
        let program = fl.program.union(&fl.context_program());
        let goal = Formula::Atom(fl.map.flat(&s.conclusion).unwrap().clone());
        assert!(satisfies(&lfp(&program, &goal), &program, &goal).unwrap(), "{s}");
        let out = engine.solve(&program, &goal).unwrap();
        let trace = out.trace().expect("engine agrees with validity");
        trace.validate(&program).unwrap();
        let d = extract_nj(trace, &fl.map).unwrap();
        check_derivation(&d, &s).unwrap_or_else(|e| panic!("{s}: {e}"));
    }
    assert!(valid > 100);
}

/// Replaces the formula at the `k`-th node in preorder.
fn mutate(d: &mut Derivation, k: &mut usize, f: &Formula) {
    if *k == 0 {
        d.formula = f.clone();
    }
    *k = k.wrapping_sub(1);
    for c in &mut d.children {
        mutate(c, k, f);
    }
}

#[test]
fn checked_derivations_are_sound_and_weaken() {
    let engine = Engine::default();
    let pool = formulas(&leaves(&["a", "b", "false"]), 2);
    let mut rng = corpus::rng(5);
    let mut accepted_mutants = 0;
    for s in small_sequents().iter().step_by(3) {
        let Some(d) = bes::prove_nj(s, &engine).unwrap() else { continue };
        for extra in pool.iter().step_by(9) {
            let mut wider = s.clone();
            wider.context.insert(extra.clone());
            check_derivation(&d, &wider).unwrap();
        }
        for _ in 0..5 {
            let mut m = d.clone();
            let mut k = rng.gen_range(0..m.size());
            mutate(&mut m, &mut k, pool.choose(&mut rng).unwrap());
            let target = Sequent::new(s.context.iter().cloned(), m.formula.clone());
            if check_derivation(&m, &target).is_ok() {
                accepted_mutants += 1;
                assert!(oracle::provable(&target).unwrap(), "checker accepted {target}");
            }
        }
    }
    assert!(accepted_mutants > 0);
}

#[test]
fn support_grows_with_the_base() {
    let pq = atoms(&["p", "q"]);
    let mut conclusions = pq.clone();
    conclusions.push(Atom::bottom_flat());
    let universe = corpus::rule_universe(&conclusions, &pq);
    let pool = formulas(&leaves(&["p", "q", "false"]), 2);
    let mut rng = corpus::rng(6);
    for _ in 0..300 {
        let big: AtomicSystem = universe.choose_multiple(&mut rng, 3).cloned().collect();
        let small: AtomicSystem = big.rules.iter().take(rng.gen_range(0..=2)).cloned().collect();
        let n = rng.gen_range(0..=1);
        let ctx: Vec<Formula> = pool.choose_multiple(&mut rng, n).cloned().collect();
        let phi = pool.choose(&mut rng).unwrap().clone();
        let at = |b: &AtomicSystem| bes::support(&SupportQuery::new(b.clone(), ctx.clone(), phi.clone())).unwrap();
        assert!(!at(&small) || at(&big), "{ctx:?} ⊩ {phi}: {small:?} ⊆ {big:?}");
    }
}
