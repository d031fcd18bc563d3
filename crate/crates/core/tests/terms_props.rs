mod common;

use common::normal_term;
use intertype::terms::SpineError;
use intertype::{parse_term, Term};
use proptest::prelude::*;

const VARS: &[&str] = &["f", "g", "x", "y"];

fn size_oracle(m: &Term) -> usize {
    match m {
        Term::Var(_) => 1,
        Term::Abs(_, b) => 1 + size_oracle(b),
        Term::App(f, a) => 1 + size_oracle(f) + size_oracle(a),
    }
}

/// Rename every binder to a fresh name, substituting bound occurrences.
fn rename_binders(m: &Term, env: &mut Vec<(String, String)>, next: &mut usize) -> Term {
    match m {
        Term::Var(x) => Term::var(
            env.iter()
                .rev()
                .find(|(from, _)| from == x)
                .map_or(x.clone(), |(_, to)| to.clone()),
        ),
        Term::Abs(x, b) => {
            let fresh = format!("w{next}");
            *next += 1;
            env.push((x.clone(), fresh.clone()));
            let body = rename_binders(b, env, next);
            env.pop();
            Term::abs(fresh, body)
        }
        Term::App(f, a) => Term::app(rename_binders(f, env, next), rename_binders(a, env, next)),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn print_then_parse_is_identity(m in normal_term(VARS, 5)) {
        prop_assert_eq!(parse_term(&m.to_string()).unwrap(), m);
    }

    #[test]
    fn generated_terms_are_normal(m in normal_term(VARS, 5)) {
        prop_assert!(m.is_beta_normal());
        prop_assert_eq!(m.size(), size_oracle(&m));
    }

    #[test]
    fn spine_decomposition_is_exhaustive(m in normal_term(VARS, 5)) {
        match m.spine_decompose() {
            Ok((head, args)) => {
                let rebuilt = Term::spine(head, args.into_iter().cloned());
                prop_assert_eq!(rebuilt, m);
            }
            Err(SpineError::Abstraction) => prop_assert!(matches!(m, Term::Abs(..))),
            Err(SpineError::NotNormal) => prop_assert!(false, "normal term reported as redex"),
        }
    }

    #[test]
    fn binder_renaming_preserves_alpha_equality(m in normal_term(VARS, 5)) {
        let renamed = rename_binders(&m, &mut Vec::new(), &mut 0);
        prop_assert!(m.alpha_eq(&renamed));
        prop_assert_eq!(m.free_vars(), renamed.free_vars());
        prop_assert_eq!(m.height(), renamed.height());
    }
}

#[test]
fn redexes_are_rejected_by_spine_decomposition() {
    let m = Term::app(Term::abs("x", Term::var("x")), Term::var("y"));
    assert!(!m.is_beta_normal());
    assert_eq!(m.spine_decompose().unwrap_err(), SpineError::NotNormal);
}
