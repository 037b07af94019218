use std::collections::BTreeSet;

use hhbes::corpus::{formulas, leaves};
use hhbes::syntax::{decompose, parse_formula, Class, Formula};
use proptest::prelude::*;

fn arb_formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        4 => prop::sample::select(vec!["a", "b", "c", "x1", "y'"]).prop_map(Formula::atom),
        1 => Just(Formula::Falsum),
    ];
    // depth 6 counts the leaves, so five levels of connectives
    leaf.prop_recursive(5, 64, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::or(l, r)),
            (inner.clone(), inner).prop_map(|(l, r)| Formula::imp(l, r)),
        ]
    })
}

proptest! {
    #[test]
    fn render_parse_round_trip(f in arb_formula()) {
        prop_assert!(f.depth() <= 6);
        prop_assert_eq!(parse_formula(&f.render()).unwrap(), f);
    }

    #[test]
    fn decompose_is_idempotent_and_monotone(
        ps in prop::collection::btree_set(arb_formula(), 0..4),
        qs in prop::collection::btree_set(arb_formula(), 0..4),
    ) {
        let once = decompose(&ps);
        prop_assert_eq!(decompose(&once), once.clone());
        prop_assert!(ps.is_subset(&once));
        let both: BTreeSet<_> = ps.union(&qs).cloned().collect();
        prop_assert!(once.is_subset(&decompose(&both)));
    }
}

// Grammar membership written out directly from the two productions.
fn definite(f: &Formula) -> bool {
    match f {
        Formula::Atom(_) | Formula::Falsum => true,
        Formula::And(l, r) => definite(l) && definite(r),
        Formula::Imp(g, a) => goal(g) && matches!(**a, Formula::Atom(_) | Formula::Falsum),
        Formula::Or(..) => false,
    }
}

fn goal(f: &Formula) -> bool {
    match f {
        Formula::Atom(_) | Formula::Falsum => true,
        Formula::And(l, r) | Formula::Or(l, r) => goal(l) && goal(r),
        Formula::Imp(d, g) => definite(d) && goal(g),
    }
}

#[test]
fn classify_matches_the_grammars() {
    for f in formulas(&leaves(&["a", "b"]), 4) {
        let want = match (definite(&f), goal(&f)) {
            (true, true) => Class::Both,
            (true, false) => Class::DefiniteOnly,
            (false, true) => Class::GoalOnly,
            (false, false) => Class::Neither,
        };
        assert_eq!(f.classify(), want, "{f}");
    }
}
