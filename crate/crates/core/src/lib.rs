//! Hereditary Harrop proof search and a base-extension semantics toolkit for
//! intuitionistic propositional logic.

pub mod atomic;
pub mod bes;
pub mod corpus;
pub mod engine;
pub mod fixpoint;
pub mod nj;
pub mod oracle;
pub mod suite;
pub mod syntax;

pub use atomic::{derive_atomic, AtomicRule, AtomicSystem};
pub use engine::{Engine, Outcome, Trace};
pub use nj::{check_derivation, Derivation};
pub use syntax::{parse_formula, parse_sequent, Atom, Formula, Program, Sequent};
