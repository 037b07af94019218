//! Least fixed-point semantics of hereditary Harrop programs.
//!
//! An interpretation maps programs to sets of atoms (with `⊥` treated as one
//! more atom). The operator `T` unfolds one step of clause application:
//!
//! ```text
//! T(I)(P) = { A | A ∈ [P] }
//!         ∪ { A | (G → A) ∈ [P] and I, P ⊨ G }
//!         ∪ { A | I, P ⊨ ⊥ }
//! ```
//!
//! Interpretations here are finite: their domain is the family of programs a
//! query can reach by loading antecedents, which is all that satisfaction of
//! that query ever consults.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::syntax::{Formula, Program};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixpointError {
    #[error("program {0:?} is outside the interpretation's domain")]
    DomainEscape(Program),
}

/// Largest number of loadable antecedents accepted by [`reachable_programs`].
pub const MAX_LOADABLE: usize = 20;

#[derive(Clone, PartialEq, Eq)]
pub struct Interpretation {
    programs: Vec<Program>,
    index: HashMap<Program, usize>,
    loads: Vec<HashMap<Formula, usize>>,
    universe: BTreeSet<Formula>,
    table: Vec<BTreeSet<Formula>>,
}

impl std::fmt::Debug for Interpretation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map()
            .entries(self.programs.iter().zip(&self.table))
            .finish()
    }
}

impl Interpretation {
    /// `I_⊥` on the given domain. The atom universe is every atom of the
    /// domain and of `extra`, plus `⊥`.
    pub fn bottom(domain: impl IntoIterator<Item = Program>, extra: &BTreeSet<Formula>) -> Self {
        let mut programs: Vec<Program> = Vec::new();
        let mut index = HashMap::new();
        for p in domain {
            if !index.contains_key(&p) {
                index.insert(p.clone(), programs.len());
                programs.push(p);
            }
        }
        let mut universe: BTreeSet<Formula> = extra.clone();
        universe.insert(Formula::Falsum);
        for p in &programs {
            universe.extend(p.atoms().into_iter().map(Formula::Atom));
        }
        let loads = programs
            .iter()
            .map(|p| {
                let mut out = HashMap::new();
                for q in &programs {
                    if p.is_subset(q) && q.len() == p.len() + 1 {
                        let d = q.clauses().difference(p.clauses()).next().unwrap();
                        out.insert(d.clone(), index[q]);
                    }
                }
                out
            })
            .collect();
        let table = vec![BTreeSet::new(); programs.len()];
        Interpretation {
            programs,
            index,
            loads,
            universe,
            table,
        }
    }

    pub fn domain(&self) -> &[Program] {
        &self.programs
    }

    pub fn universe(&self) -> &BTreeSet<Formula> {
        &self.universe
    }

    pub fn get(&self, p: &Program) -> Option<&BTreeSet<Formula>> {
        self.index.get(p).map(|&i| &self.table[i])
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Program, &BTreeSet<Formula>)> {
        self.programs.iter().zip(&self.table)
    }

    /// Pointwise inclusion; both sides must share a domain.
    pub fn le(&self, other: &Interpretation) -> bool {
        self.programs == other.programs
            && self.table.iter().zip(&other.table).all(|(a, b)| a.is_subset(b))
    }

    pub fn join(&self, other: &Interpretation) -> Interpretation {
        assert_eq!(self.programs, other.programs, "join over different domains");
        let mut out = self.clone();
        for (mine, theirs) in out.table.iter_mut().zip(&other.table) {
            mine.extend(theirs.iter().cloned());
        }
        out
    }

    /// `P ⊆ Q` implies `I(P) ⊆ I(Q)` across the domain.
    pub fn is_monotone(&self) -> bool {
        self.programs.iter().enumerate().all(|(i, p)| {
            self.programs.iter().enumerate().all(|(j, q)| {
                !p.is_subset(q) || self.table[i].is_subset(&self.table[j])
            })
        })
    }

    /// Adds `atom` at `p` and at every larger program, keeping the result
    /// monotone.
    pub fn seeded(mut self, p: &Program, atom: &Formula) -> Interpretation {
        for (q, row) in self.programs.iter().zip(self.table.iter_mut()) {
            if p.is_subset(q) {
                row.insert(atom.clone());
            }
        }
        self
    }

    fn position(&self, p: &Program) -> Result<usize, FixpointError> {
        self.index
            .get(p)
            .copied()
            .ok_or_else(|| FixpointError::DomainEscape(p.clone()))
    }

    fn sat(&self, at: usize, goal: &Formula) -> Result<bool, FixpointError> {
        Ok(match goal {
            Formula::Atom(_) | Formula::Falsum => self.table[at].contains(goal),
            Formula::And(l, r) => self.sat(at, l)? && self.sat(at, r)?,
            Formula::Or(l, r) => self.sat(at, l)? || self.sat(at, r)?,
            Formula::Imp(d, g) => {
                let next = match self.loads[at].get(&**d) {
                    Some(&n) => n,
                    None if self.programs[at].contains(d) => at,
                    None => {
                        let wanted = self.programs[at]
                            .with(d)
                            .unwrap_or_else(|_| self.programs[at].clone());
                        self.position(&wanted)?
                    }
                };
                self.sat(next, g)?
            }
        })
    }

    /// Dump as `{canonical program: [atoms]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let map: BTreeMap<String, Vec<String>> = self
            .entries()
            .map(|(p, atoms)| (p.canonical(), atoms.iter().map(|a| a.to_string()).collect()))
            .collect();
        serde_json::to_value(map).expect("string map serializes")
    }
}

/// `I, P ⊨ G`.
pub fn satisfies(i: &Interpretation, p: &Program, goal: &Formula) -> Result<bool, FixpointError> {
    i.sat(i.position(p)?, goal)
}

/// One application of `T`.
pub fn apply_t(i: &Interpretation) -> Result<Interpretation, FixpointError> {
    let mut out = i.clone();
    for (at, program) in i.programs.iter().enumerate() {
        let mut row = BTreeSet::new();
        for clause in program.decomposition() {
            match clause {
                f if f.is_atomic() => {
                    row.insert(f.clone());
                }
                Formula::Imp(body, head) if i.sat(at, body)? => {
                    row.insert((**head).clone());
                }
                _ => {}
            }
        }
        if i.table[at].contains(&Formula::Falsum) {
            row.extend(i.universe.iter().cloned());
        }
        out.table[at] = row;
    }
    Ok(out)
}

/// Antecedents that satisfaction of `goal` over `program` may load.
pub fn loadable(program: &Program, goal: &Formula) -> BTreeSet<Formula> {
    fn in_goal(g: &Formula, out: &mut BTreeSet<Formula>) {
        match g {
            Formula::Imp(d, g2) => {
                if out.insert((**d).clone()) {
                    in_definite(d, out);
                }
                in_goal(g2, out);
            }
            Formula::And(l, r) | Formula::Or(l, r) => {
                in_goal(l, out);
                in_goal(r, out);
            }
            Formula::Atom(_) | Formula::Falsum => {}
        }
    }
    fn in_definite(d: &Formula, out: &mut BTreeSet<Formula>) {
        match d {
            Formula::And(l, r) => {
                in_definite(l, out);
                in_definite(r, out);
            }
            Formula::Imp(body, _) => in_goal(body, out),
            _ => {}
        }
    }
    let mut out = BTreeSet::new();
    in_goal(goal, &mut out);
    for c in program.clauses() {
        in_definite(c, &mut out);
    }
    out
}

/// `{ program ∪ S | S ⊆ loadable(program, goal) }`.
pub fn reachable_programs(program: &Program, goal: &Formula) -> Vec<Program> {
    let defs: Vec<Formula> = loadable(program, goal)
        .into_iter()
        .filter(|d| !program.contains(d))
        .collect();
    assert!(
        defs.len() <= MAX_LOADABLE,
        "{} loadable antecedents exceed the limit of {MAX_LOADABLE}",
        defs.len()
    );
    let mut out = BTreeSet::new();
    for mask in 0u64..(1u64 << defs.len()) {
        let mut p = program.clone();
        for (bit, d) in defs.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                p = p.with(d).expect("loadable antecedents are definite");
            }
        }
        out.insert(p);
    }
    out.into_iter().collect()
}

fn query_atoms(program: &Program, goal: &Formula) -> BTreeSet<Formula> {
    let mut atoms = program.atoms();
    goal.collect_atoms(&mut atoms);
    atoms.into_iter().map(Formula::Atom).collect()
}

/// Iterates `T` from `I_⊥` over the reachable family until the table is
/// stable.
pub fn lfp(program: &Program, goal: &Formula) -> Interpretation {
    let bottom = Interpretation::bottom(
        reachable_programs(program, goal),
        &query_atoms(program, goal),
    );
    iterate(bottom, apply_t)
}

/// Iterates `I ↦ I ⊔ T(I)` from a seed. The limit is a pre-fixed point of
/// `T`, so it contains the least fixed point.
pub fn iterate_from(seed: Interpretation) -> Interpretation {
    iterate(seed, |i| Ok(i.join(&apply_t(i)?)))
}

fn iterate(
    mut current: Interpretation,
    step: impl Fn(&Interpretation) -> Result<Interpretation, FixpointError>,
) -> Interpretation {
    loop {
        let next = step(&current).expect("reachable family is closed under loading");
        debug_assert!(current.le(&next), "T-iteration must ascend");
        if next == current {
            return current;
        }
        current = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn prog(xs: &[&str]) -> Program {
        Program::new(xs.iter().map(|s| f(s))).unwrap()
    }

    fn atoms(xs: &[&str]) -> BTreeSet<Formula> {
        xs.iter().map(|s| f(s)).collect()
    }

    #[test]
    fn reachable_examples() {
        assert_eq!(reachable_programs(&prog(&[]), &f("a")), vec![prog(&[])]);
        assert_eq!(
            reachable_programs(&prog(&[]), &f("a -> a")),
            vec![prog(&[]), prog(&["a"])]
        );
        // antecedents inside clause bodies count too
        let fam = reachable_programs(&prog(&["(b -> c) -> a"]), &f("a"));
        assert_eq!(fam.len(), 2);
        assert!(fam.contains(&prog(&["(b -> c) -> a", "b"])));
    }

    #[test]
    fn t_examples() {
        let p = prog(&["a", "g -> b"]);
        let i = apply_t(&Interpretation::bottom([p.clone()], &BTreeSet::new())).unwrap();
        assert_eq!(i.get(&p).unwrap(), &atoms(&["a"]));

        let p = prog(&["a", "a -> b"]);
        let bottom = Interpretation::bottom([p.clone()], &BTreeSet::new());
        let once = apply_t(&bottom).unwrap();
        let twice = apply_t(&once).unwrap();
        assert_eq!(once.get(&p).unwrap(), &atoms(&["a"]));
        assert_eq!(twice.get(&p).unwrap(), &atoms(&["a", "b"]));

        let p = prog(&["false"]);
        let extra = atoms(&["q", "r"]);
        let bottom = Interpretation::bottom([p.clone()], &extra);
        let twice = apply_t(&apply_t(&bottom).unwrap()).unwrap();
        assert_eq!(twice.get(&p).unwrap(), &atoms(&["false", "q", "r"]));
    }

    #[test]
    fn lfp_examples() {
        let i = lfp(&prog(&[]), &f("a"));
        assert_eq!(i.domain().len(), 1);
        assert!(i.get(&prog(&[])).unwrap().is_empty());

        let p = prog(&["a", "a -> b"]);
        assert_eq!(lfp(&p, &f("b")).get(&p).unwrap(), &atoms(&["a", "b"]));

        let p = prog(&["false"]);
        assert!(lfp(&p, &f("q")).get(&p).unwrap().contains(&f("q")));
    }

    #[test]
    fn satisfies_examples() {
        let e = prog(&[]);
        assert!(satisfies(&lfp(&e, &f("a -> a")), &e, &f("a -> a")).unwrap());
        assert!(!satisfies(&lfp(&e, &f("a | b")), &e, &f("a | b")).unwrap());
        let p = prog(&["a"]);
        assert!(satisfies(&lfp(&p, &f("a")), &p, &f("a")).unwrap());
    }

    #[test]
    fn domain_escape() {
        let e = prog(&[]);
        let i = lfp(&e, &f("a"));
        assert!(matches!(
            satisfies(&i, &e, &f("b -> a")),
            Err(FixpointError::DomainEscape(_))
        ));
        assert!(satisfies(&i, &prog(&["z"]), &f("a")).is_err());
    }

    #[test]
    fn fixed_point_and_monotone() {
        let p = prog(&["(b -> a) -> c", "a -> false"]);
        let g = f("(b -> c) | (a -> d)");
        let i = lfp(&p, &g);
        assert_eq!(apply_t(&i).unwrap(), i);
        assert!(i.is_monotone());
    }

    #[test]
    fn seeded_iteration_contains_lfp() {
        let p = prog(&["a -> b"]);
        let g = f("c -> b");
        let least = lfp(&p, &g);
        let seed = Interpretation::bottom(reachable_programs(&p, &g), &atoms(&["a", "b", "c"]))
            .seeded(&p, &f("a"));
        let big = iterate_from(seed);
        assert!(least.le(&big));
        assert!(big.get(&p).unwrap().contains(&f("b")));
    }

    #[test]
    fn json_dump() {
        let p = prog(&["a"]);
        let v = lfp(&p, &f("a")).to_json();
        assert_eq!(v["{a}"][0], "a");
    }
}
