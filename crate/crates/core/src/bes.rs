//! Base-extension semantics, decided through the engine.
//!
//! Every non-atomic subformula of a sequent gets a private atom (its flat
//! form), and the base N makes those atoms behave like the formulae they name.
//! Support in a base B is then a query against N ∪ ⌊B⌋ ∪ Γ♭.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::atomic::{derive_atomic, AtomicError, AtomicRule, AtomicSystem};
use crate::engine::{Engine, EngineError, Step, Trace};
use crate::nj::{Derivation, Rule};
use crate::syntax::{Atom, Formula, Program, Sequent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BesError {
    #[error("base has level {0}; support is only defined for levels up to 2")]
    UnsupportedLevel(usize),
    #[error("trace cannot be read back as a natural deduction: {0}")]
    NotSimulable(String),
    #[error("`{0}` is outside the scope of this flattening")]
    NotInScope(Formula),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

impl From<AtomicError> for BesError {
    fn from(e: AtomicError) -> Self {
        match e {
            AtomicError::UnsupportedLevel(n) => BesError::UnsupportedLevel(n),
        }
    }
}

/// The natural deduction rule a clause of N stands for, with its principal
/// formula (the conclusion for introductions, the major premise otherwise).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scheme {
    AndI(Formula),
    AndE1(Formula),
    AndE2(Formula),
    OrI1(Formula),
    OrI2(Formula),
    /// Disjunction eliminated, and the conclusion of the minor premises.
    OrE(Formula, Formula),
    ImpI(Formula),
    ImpE(Formula),
    /// The formula concluded from falsum.
    FalsumE(Formula),
}

#[derive(Debug, Clone)]
pub struct FlatMap {
    forward: BTreeMap<Formula, Atom>,
    backward: BTreeMap<Atom, Formula>,
    scope: Sequent,
    avoid: BTreeSet<Atom>,
    schemes: BTreeMap<Formula, Scheme>,
}

impl FlatMap {
    fn new(scope: &Sequent, avoid: &BTreeSet<Atom>) -> FlatMap {
        let mut avoid = avoid.clone();
        avoid.extend(scope.atoms());
        let mut forward = BTreeMap::new();
        let mut next = 0;
        for phi in scope.subformulae() {
            let flat = match &phi {
                Formula::Atom(a) => a.clone(),
                Formula::Falsum => Atom::bottom_flat(),
                _ => loop {
                    let a = Atom::flat(next);
                    next += 1;
                    if !avoid.contains(&a) {
                        break a;
                    }
                },
            };
            forward.insert(phi, flat);
        }
        let backward = forward.iter().map(|(f, a)| (a.clone(), f.clone())).collect();
        FlatMap {
            forward,
            backward,
            scope: scope.clone(),
            avoid,
            schemes: BTreeMap::new(),
        }
    }

    /// φ♭, for φ in scope.
    pub fn flat(&self, phi: &Formula) -> Option<&Atom> {
        self.forward.get(phi)
    }

    /// a♮, for flat atoms of in-scope formulae.
    pub fn sharp(&self, a: &Atom) -> Option<&Formula> {
        self.backward.get(a)
    }

    pub fn scope(&self) -> &Sequent {
        &self.scope
    }

    pub fn avoid(&self) -> &BTreeSet<Atom> {
        &self.avoid
    }

    pub fn scheme(&self, clause: &Formula) -> Option<&Scheme> {
        self.schemes.get(clause)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Formula, &Atom)> {
        self.forward.iter()
    }

    fn flat_formula(&self, phi: &Formula) -> Formula {
        Formula::Atom(self.forward[phi].clone())
    }

    /// `{flat atom: formula}` for every in-scope formula.
    pub fn to_json(&self) -> serde_json::Value {
        self.backward
            .iter()
            .map(|(a, f)| (a.to_string(), serde_json::Value::String(f.to_string())))
            .collect::<serde_json::Map<_, _>>()
            .into()
    }
}

/// N for one sequent, as atomic rules and as clauses, plus its flat map.
#[derive(Debug, Clone)]
pub struct Flattening {
    pub system: AtomicSystem,
    pub program: Program,
    pub map: FlatMap,
}

impl Flattening {
    /// Γ♭ as facts.
    pub fn context_program(&self) -> Program {
        let facts = self.map.scope.context.iter().map(|g| self.map.flat_formula(g));
        Program::new(facts).expect("flat atoms are definite")
    }

    /// Whether `context ⊩_base goal`, for formulae in this flattening's scope.
    /// The base is added to N as is; its atoms should already be avoided.
    pub fn support(
        &self,
        base: &AtomicSystem,
        context: &BTreeSet<Formula>,
        goal: &Formula,
        engine: &Engine,
    ) -> Result<bool, BesError> {
        check_level(base)?;
        let flat = |f: &Formula| {
            self.map
                .flat(f)
                .map(|a| Formula::Atom(a.clone()))
                .ok_or_else(|| BesError::NotInScope(f.clone()))
        };
        let facts = context.iter().map(flat).collect::<Result<Vec<_>, _>>()?;
        let goal = flat(goal)?;
        let program = self
            .program
            .union(&base.encode())
            .union(&Program::new(facts).expect("flat atoms are definite"));
        Ok(engine.provable(&program, &goal)?)
    }
}

/// Builds N for `s`, choosing fresh atoms outside `avoid` and the atoms of `s`.
/// Falsum always flattens to the reserved `#bot`, so bases may mention it.
pub fn build_n(s: &Sequent, avoid: &BTreeSet<Atom>) -> Flattening {
    let mut map = FlatMap::new(s, avoid);
    let subs = s.subformulae();
    let falsum = subs.contains(&Formula::Falsum);
    let disjunctions: Vec<_> = subs.iter().filter(|f| matches!(f, Formula::Or(..))).collect();
    let fl = |f: &Formula| map.forward[f].clone();
    let mut rules: Vec<(AtomicRule, Scheme)> = Vec::new();
    for phi in &subs {
        match phi {
            Formula::And(l, r) => {
                rules.push((AtomicRule::first_level([fl(l), fl(r)], fl(phi)), Scheme::AndI(phi.clone())));
                rules.push((AtomicRule::first_level([fl(phi)], fl(l)), Scheme::AndE1(phi.clone())));
                rules.push((AtomicRule::first_level([fl(phi)], fl(r)), Scheme::AndE2(phi.clone())));
            }
            Formula::Or(l, r) => {
                rules.push((AtomicRule::first_level([fl(l)], fl(phi)), Scheme::OrI1(phi.clone())));
                rules.push((AtomicRule::first_level([fl(r)], fl(phi)), Scheme::OrI2(phi.clone())));
            }
            Formula::Imp(l, r) => {
                rules.push((
                    AtomicRule::second_level([(vec![fl(l)], fl(r))], fl(phi)),
                    Scheme::ImpI(phi.clone()),
                ));
                rules.push((AtomicRule::first_level([fl(l), fl(phi)], fl(r)), Scheme::ImpE(phi.clone())));
            }
            Formula::Atom(_) | Formula::Falsum => {}
        }
        for d in &disjunctions {
            let Formula::Or(l, r) = d else { unreachable!() };
            let rule = AtomicRule::second_level(
                [(vec![], fl(d)), (vec![fl(l)], fl(phi)), (vec![fl(r)], fl(phi))],
                fl(phi),
            );
            rules.push((rule, Scheme::OrE((*d).clone(), phi.clone())));
        }
        if falsum && *phi != Formula::Falsum {
            rules.push((
                AtomicRule::first_level([Atom::bottom_flat()], fl(phi)),
                Scheme::FalsumE(phi.clone()),
            ));
        }
    }
    for (rule, scheme) in &rules {
        map.schemes.entry(rule.encode()).or_insert_with(|| scheme.clone());
    }
    let system: AtomicSystem = rules.into_iter().map(|(r, _)| r).collect();
    let program = system.encode();
    Flattening { system, program, map }
}

fn check_level(base: &AtomicSystem) -> Result<(), BesError> {
    match base.level() {
        n if n > 2 => Err(BesError::UnsupportedLevel(n)),
        _ => Ok(()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportQuery {
    pub base: AtomicSystem,
    pub context: BTreeSet<Formula>,
    pub goal: Formula,
}

impl SupportQuery {
    pub fn new(base: AtomicSystem, context: impl IntoIterator<Item = Formula>, goal: Formula) -> Self {
        SupportQuery {
            base,
            context: context.into_iter().collect(),
            goal,
        }
    }
}

/// `Γ ⊩_B φ`, decided as `N ∪ ⌊B⌋ ∪ Γ♭ ⊢ φ♭`.
pub fn support(q: &SupportQuery) -> Result<bool, BesError> {
    support_with(q, &Engine::default())
}

pub fn support_with(q: &SupportQuery, engine: &Engine) -> Result<bool, BesError> {
    check_level(&q.base)?;
    let s = Sequent::new(q.context.iter().cloned(), q.goal.clone());
    build_n(&s, &q.base.atoms()).support(&q.base, &q.context, &q.goal, engine)
}

/// Validity: support in the empty base.
pub fn valid(s: &Sequent) -> Result<bool, BesError> {
    valid_with(s, &Engine::default())
}

pub fn valid_with(s: &Sequent, engine: &Engine) -> Result<bool, BesError> {
    let f = build_n(s, &BTreeSet::new());
    f.support(&AtomicSystem::empty(), &s.context, &s.conclusion, engine)
}

/// Runs N ∪ Γ♭ ⊢ φ♭ and reads the trace back as an NJ derivation of `s`.
/// `None` when the sequent is not valid.
pub fn prove_nj(s: &Sequent, engine: &Engine) -> Result<Option<Derivation>, BesError> {
    let f = build_n(s, &BTreeSet::new());
    let program = f.program.union(&f.context_program());
    let goal = f.map.flat_formula(&s.conclusion);
    match engine.solve(&program, &goal)?.trace() {
        Some(t) => extract_nj(t, &f.map).map(Some),
        None => Ok(None),
    }
}

/// Turns a successful run of N ∪ Γ♭ ⊢ φ♭ into an NJ derivation of Γ ⊢ φ.
/// Each scheme clause becomes its rule; each LOAD of an antecedent opens a
/// labelled assumption that IN steps on that atom discharge.
pub fn extract_nj(trace: &Trace, fm: &FlatMap) -> Result<Derivation, BesError> {
    let context: HashMap<Atom, Formula> = fm
        .scope
        .context
        .iter()
        .map(|g| (fm.forward[g].clone(), g.clone()))
        .collect();
    let mut x = Extractor {
        fm,
        context,
        loaded: Vec::new(),
        next_label: 0,
    };
    x.atom(trace)
}

struct Extractor<'a> {
    fm: &'a FlatMap,
    context: HashMap<Atom, Formula>,
    loaded: Vec<(Atom, String)>,
    next_label: usize,
}

enum Part {
    Proof(Derivation),
    Hypothetical(String, Derivation),
}

fn stuck<T>(msg: impl Into<String>) -> Result<T, BesError> {
    Err(BesError::NotSimulable(msg.into()))
}

impl Extractor<'_> {
    fn sharp(&self, goal: &Formula) -> Result<Formula, BesError> {
        match goal.as_atom().and_then(|a| self.fm.sharp(a)) {
            Some(f) => Ok(f.clone()),
            None => stuck(format!("{goal} is not a flat atom of the sequent")),
        }
    }

    fn atom(&mut self, t: &Trace) -> Result<Derivation, BesError> {
        let phi = self.sharp(&t.goal)?;
        let a = t.goal.as_atom().expect("checked by sharp");
        match &t.step {
            Step::In => {
                if let Some((_, label)) = self.loaded.iter().rev().find(|(b, _)| b == a) {
                    return Ok(Derivation::discharged(phi, label.clone()));
                }
                match self.context.get(a) {
                    Some(g) => Ok(Derivation::assume(g.clone())),
                    None => stuck(format!("{a} is neither loaded nor in the context")),
                }
            }
            Step::Clause { clause } => {
                let Some(scheme) = self.fm.scheme(clause) else {
                    return stuck(format!("clause {clause} is not part of N"));
                };
                let mut parts = Vec::new();
                self.conjuncts(&t.children[0], &mut parts)?;
                self.apply(scheme.clone(), phi, parts)
            }
            step => stuck(format!("{step:?} at atomic goal {}", t.goal)),
        }
    }

    fn conjuncts(&mut self, t: &Trace, out: &mut Vec<Part>) -> Result<(), BesError> {
        match (&t.step, &t.goal) {
            (Step::And, _) => {
                self.conjuncts(&t.children[0], out)?;
                self.conjuncts(&t.children[1], out)
            }
            (Step::Load { loaded }, Formula::Imp(..)) => {
                let Some(a) = loaded.as_atom() else {
                    return stuck(format!("loaded {loaded} is not atomic"));
                };
                self.next_label += 1;
                let label = format!("h{}", self.next_label);
                self.loaded.push((a.clone(), label.clone()));
                let d = self.atom(&t.children[0]);
                self.loaded.pop();
                out.push(Part::Hypothetical(label, d?));
                Ok(())
            }
            _ => {
                let d = self.atom(t)?;
                out.push(Part::Proof(d));
                Ok(())
            }
        }
    }

    fn apply(&self, scheme: Scheme, phi: Formula, parts: Vec<Part>) -> Result<Derivation, BesError> {
        use Part::{Hypothetical as H, Proof as P};
        let shape = || stuck(format!("premises do not fit {scheme:?}"));
        let mut parts = parts.into_iter();
        let (rule, children) = match (&scheme, parts.next(), parts.next(), parts.next()) {
            (Scheme::AndI(_), Some(P(l)), Some(P(r)), None) => (Rule::AndI, vec![l, r]),
            (Scheme::AndE1(_), Some(P(d)), None, None) => (Rule::AndE1, vec![d]),
            (Scheme::AndE2(_), Some(P(d)), None, None) => (Rule::AndE2, vec![d]),
            (Scheme::OrI1(_), Some(P(d)), None, None) => (Rule::OrI1, vec![d]),
            (Scheme::OrI2(_), Some(P(d)), None, None) => (Rule::OrI2, vec![d]),
            (Scheme::OrE(..), Some(P(major)), Some(H(l1, d1)), Some(H(l2, d2))) => {
                (Rule::OrE(l1, l2), vec![major, d1, d2])
            }
            (Scheme::ImpI(_), Some(H(l, d)), None, None) => (Rule::ImpI(l), vec![d]),
            (Scheme::ImpE(_), Some(P(minor)), Some(P(major)), None) => (Rule::ImpE, vec![minor, major]),
            (Scheme::FalsumE(_), Some(P(d)), None, None) => (Rule::FalsumE, vec![d]),
            _ => return shape(),
        };
        Ok(Derivation::new(phi, rule, children))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Naf {
    Supported,
    NotSupported,
    Degenerate,
}

impl std::fmt::Display for Naf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Negation as failure: `¬φ` is supported when loading φ♭ lets N ∪ ⌊B⌋
/// reach `#bot`, provided the base is not degenerate to begin with.
pub fn naf(base: &AtomicSystem, phi: &Formula, alphabet: &BTreeSet<Atom>) -> Result<Naf, BesError> {
    naf_with(base, phi, alphabet, &Engine::default())
}

pub fn naf_with(
    base: &AtomicSystem,
    phi: &Formula,
    alphabet: &BTreeSet<Atom>,
    engine: &Engine,
) -> Result<Naf, BesError> {
    check_level(base)?;
    if is_degenerate(base, alphabet)? {
        return Ok(Naf::Degenerate);
    }
    let s = Sequent::new([phi.clone()], Formula::Falsum);
    let f = build_n(&s, &base.atoms());
    let refutes = f.support(base, &s.context, &Formula::Falsum, engine)?;
    Ok(if refutes { Naf::Supported } else { Naf::NotSupported })
}

/// A base is degenerate when it proves every atom: each letter of `alphabet`
/// and a probe that appears nowhere, using `#bot ⇒ x` as the only way to
/// reach atoms the base says nothing about.
pub fn is_degenerate(base: &AtomicSystem, alphabet: &BTreeSet<Atom>) -> Result<bool, BesError> {
    check_level(base)?;
    let mut known = base.atoms();
    known.extend(alphabet.iter().cloned());
    let probe = (0..).map(Atom::flat).find(|a| !known.contains(a)).expect("unbounded");
    let mut targets = alphabet.clone();
    targets.insert(probe);
    targets.remove(&Atom::bottom_flat());
    let explosion: AtomicSystem = targets
        .iter()
        .map(|x| AtomicRule::first_level([Atom::bottom_flat()], x.clone()))
        .collect();
    let closed = base.union(&explosion);
    for a in &targets {
        if !derive_atomic(&closed, &BTreeSet::new(), a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nj::check_derivation;
    use crate::syntax::{parse_formula, parse_sequent};

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn a(s: &str) -> Atom {
        Atom::new(s).unwrap()
    }

    fn clause(fl: &Flattening, text: &str) -> Formula {
        // spell clauses with in-scope formulae inside [..] for their flat atom
        let mut out = String::new();
        let mut rest = text;
        while let Some(i) = rest.find('[') {
            let j = rest.find(']').unwrap();
            out.push_str(&rest[..i]);
            out.push_str(fl.map.flat(&f(&rest[i + 1..j])).unwrap().name());
            rest = &rest[j + 1..];
        }
        out.push_str(rest);
        parse_formula(&out).unwrap()
    }

    #[test]
    fn flat_atoms_are_fresh() {
        let avoid: BTreeSet<Atom> = [Atom::flat(0)].into();
        let fl = build_n(&parse_sequent("|- p & ~q").unwrap(), &avoid);
        for (phi, flat) in fl.map.entries() {
            if *phi == Formula::Falsum {
                assert_eq!(*flat, Atom::bottom_flat());
            } else if phi.is_atomic() {
                assert_eq!(Formula::Atom(flat.clone()), *phi);
            } else {
                assert!(flat.is_flat() && *flat != Atom::flat(0));
                assert_eq!(fl.map.sharp(flat), Some(phi));
            }
        }
    }

    #[test]
    fn conjunction_schemes() {
        let fl = build_n(&Sequent::closed(f("p & q")), &BTreeSet::new());
        for c in ["p & q -> [p & q]", "[p & q] -> p", "[p & q] -> q"] {
            assert!(fl.program.contains(&clause(&fl, c)), "{c}");
        }
        assert_eq!(fl.program.len(), 3);
    }

    #[test]
    fn implication_schemes() {
        let fl = build_n(&Sequent::closed(f("p -> q")), &BTreeSet::new());
        assert!(fl.program.contains(&clause(&fl, "(p -> q) -> [p -> q]")));
        assert!(fl.program.contains(&clause(&fl, "p & [p -> q] -> q")));
        assert_eq!(fl.system.level(), 2);
    }

    #[test]
    fn disjunction_elimination_scheme() {
        let fl = build_n(&Sequent::closed(f("p | q -> q | p")), &BTreeSet::new());
        let c = clause(&fl, "[p | q] & ([p] -> [q | p]) & ([q] -> [q | p]) -> [q | p]");
        assert_eq!(fl.map.scheme(&c), Some(&Scheme::OrE(f("p | q"), f("q | p"))));
    }

    #[test]
    fn atoms_need_nothing() {
        let fl = build_n(&Sequent::closed(f("a")), &BTreeSet::new());
        assert!(fl.program.is_empty());
    }

    #[test]
    fn falsum_elimination_only_when_falsum_occurs() {
        let without = build_n(&Sequent::closed(f("p -> p")), &BTreeSet::new());
        assert!(without.program.clauses().iter().all(|c| !c.atoms().contains(&Atom::bottom_flat())));
        let with = build_n(&Sequent::closed(f("~p")), &BTreeSet::new());
        assert!(with.program.contains(&parse_formula("#bot -> p").unwrap()));
    }

    #[test]
    fn support_examples() {
        let q = |base, goal: &str| support(&SupportQuery::new(base, [], f(goal))).unwrap();
        assert!(q(AtomicSystem::empty(), "p -> p"));
        assert!(!q(AtomicSystem::empty(), "(a -> b | c) -> (a -> b) | (a -> c)"));
        let base: AtomicSystem = [AtomicRule::axiom(a("p")), AtomicRule::first_level([a("p")], a("q"))]
            .into_iter()
            .collect();
        assert!(q(base.clone(), "q"));
        assert!(derive_atomic(&base, &BTreeSet::new(), &a("q")).unwrap());
        let third = AtomicRule {
            conclusion: a("c"),
            premises: vec![crate::atomic::Premise {
                hypotheses: [AtomicRule::first_level([a("a")], a("b"))].into(),
                conclusion: a("d"),
            }],
        };
        let high = AtomicSystem::from_iter([AtomicRule {
            conclusion: a("e"),
            premises: vec![crate::atomic::Premise {
                hypotheses: [third].into(),
                conclusion: a("d"),
            }],
        }]);
        assert_eq!(
            support(&SupportQuery::new(high, [], f("e"))),
            Err(BesError::UnsupportedLevel(5))
        );
    }

    #[test]
    fn validity_examples() {
        assert!(valid(&parse_sequent("p & q |- p | q").unwrap()).unwrap());
        assert!(!valid(&parse_sequent("|- false").unwrap()).unwrap());
        assert!(valid(&parse_sequent("false |- a").unwrap()).unwrap());
        assert!(!valid(&parse_sequent("|- (a -> b | c) -> (a -> b) | (a -> c)").unwrap()).unwrap());
    }

    #[test]
    fn bases_are_not_contexts() {
        let s = Sequent::closed(f("(a -> b | c) -> (a -> b) | (a -> c)"));
        let fl = build_n(&s, &BTreeSet::new());
        let base = AtomicSystem::from_iter([AtomicRule::axiom(fl.map.flat(&f("a -> b | c")).unwrap().clone())]);
        let none = BTreeSet::new();
        let engine = Engine::default();
        assert!(fl.support(&base, &none, &f("a -> b | c"), &engine).unwrap());
        assert!(!fl.support(&base, &none, &f("(a -> b) | (a -> c)"), &engine).unwrap());
        assert_eq!(
            fl.support(&base, &none, &f("z"), &engine),
            Err(BesError::NotInScope(f("z")))
        );
    }

    fn extracted(s: &str) -> Derivation {
        let s = parse_sequent(s).unwrap();
        let d = prove_nj(&s, &Engine::default()).unwrap().expect("valid");
        check_derivation(&d, &s).unwrap();
        d
    }

    #[test]
    fn extraction_examples() {
        let d = extracted("p & q |- p | q");
        assert_eq!(d.rule, Rule::OrI1);
        assert_eq!(d.children[0].rule, Rule::AndE1);
        assert_eq!(extracted("a |- a").rule, Rule::Assumption(None));
        let d = extracted("|- p -> p");
        assert!(matches!(d.rule, Rule::ImpI(_)));
        assert!(matches!(d.children[0].rule, Rule::Assumption(Some(_))));
        for s in [
            "p | q |- q | p",
            "|- (a -> b) -> (b -> c) -> a -> c",
            "a, ~a |- b",
            "|- ~~(a | ~a)",
            "a -> b | c, a |- c | b",
            "|- (a | b -> c) -> (a -> c) & (b -> c)",
        ] {
            extracted(s);
        }
        assert!(prove_nj(&parse_sequent("|- a | ~a").unwrap(), &Engine::default()).unwrap().is_none());
    }

    #[test]
    fn extraction_rejects_base_clauses() {
        let s = Sequent::closed(f("q"));
        let fl = build_n(&s, &BTreeSet::new());
        let base = AtomicSystem::from_iter([AtomicRule::axiom(a("p")), AtomicRule::first_level([a("p")], a("q"))]);
        let program = fl.program.union(&base.encode());
        let out = Engine::default().solve(&program, &f("q")).unwrap();
        assert!(matches!(extract_nj(out.trace().unwrap(), &fl.map), Err(BesError::NotSimulable(_))));
    }

    #[test]
    fn naf_examples() {
        let alphabet: BTreeSet<Atom> = [a("p"), a("q")].into();
        let empty = AtomicSystem::empty();
        assert_eq!(naf(&empty, &f("p"), &alphabet).unwrap(), Naf::NotSupported);
        let contradictory = AtomicSystem::from_iter([
            AtomicRule::first_level([a("p"), a("pbar")], Atom::bottom_flat()),
            AtomicRule::axiom(a("pbar")),
        ]);
        assert_eq!(naf(&contradictory, &f("p"), &alphabet).unwrap(), Naf::Supported);
        assert!(support(&SupportQuery::new(contradictory, [], f("~p"))).unwrap());
        let everything = AtomicSystem::from_iter(
            [a("p"), a("q"), Atom::bottom_flat()].into_iter().map(AtomicRule::axiom),
        );
        assert_eq!(naf(&everything, &f("p"), &alphabet).unwrap(), Naf::Degenerate);
    }

    #[test]
    fn degeneracy() {
        let p: BTreeSet<Atom> = [a("p")].into();
        assert!(!is_degenerate(&AtomicSystem::empty(), &p).unwrap());
        assert!(!is_degenerate(&AtomicSystem::from_iter([AtomicRule::axiom(a("p"))]), &p).unwrap());
        let pq: BTreeSet<Atom> = [a("p"), a("q")].into();
        let both = AtomicSystem::from_iter([AtomicRule::axiom(a("p")), AtomicRule::axiom(a("q"))]);
        assert!(!is_degenerate(&both, &pq).unwrap());
        let bottom = AtomicSystem::from_iter([AtomicRule::axiom(a("q")), AtomicRule::first_level([a("q")], Atom::bottom_flat())]);
        assert!(is_degenerate(&bottom, &pq).unwrap());
    }
}
