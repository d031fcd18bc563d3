mod common;

use common::{context, normal_term, small_type};
use intertype::checker::derive;
use intertype::{check, check_multi, Context, Judgment, Term, Type};
use proptest::prelude::*;

const VARS: &[&str] = &["f", "g", "x"];

fn holds(ctx: &Context, m: &Term, t: &Type) -> bool {
    check(ctx, m, t).expect("generated terms are normal")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn intersection_intro_equivalence(
        ctx in context(VARS),
        m in normal_term(VARS, 3),
        s in small_type(),
        t in small_type(),
    ) {
        let both = Type::intersection([s.clone(), t.clone()]);
        prop_assert_eq!(holds(&ctx, &m, &s) && holds(&ctx, &m, &t), holds(&ctx, &m, &both));
    }

    #[test]
    fn intersection_elim(
        ctx in context(VARS),
        m in normal_term(VARS, 3),
        s in small_type(),
        t in small_type(),
    ) {
        if holds(&ctx, &m, &Type::intersection([s.clone(), t.clone()])) {
            prop_assert!(holds(&ctx, &m, &s));
            prop_assert!(holds(&ctx, &m, &t));
        }
    }

    #[test]
    fn weakening(
        ctx in context(VARS),
        m in normal_term(VARS, 3),
        t in small_type(),
        rho in small_type(),
    ) {
        if holds(&ctx, &m, &t) {
            prop_assert!(holds(&ctx.with("z_fresh", rho), &m, &t));
        }
    }

    #[test]
    fn abstraction_inversion(
        ctx in context(VARS),
        body in normal_term(VARS, 3),
        s in small_type(),
        t in small_type(),
    ) {
        let lam = Term::abs("x", body.clone());
        let goal = Type::arrow(s.clone(), t.clone());
        prop_assert_eq!(holds(&ctx, &lam, &goal), holds(&ctx.with("x", s), &body, &t));
    }

    #[test]
    fn every_transcript_replays(
        ctx in context(VARS),
        m in normal_term(VARS, 3),
        t in small_type(),
    ) {
        if let Some(d) = derive(&ctx, &m, &t).unwrap() {
            let transcript = d.transcript();
            prop_assert_eq!(transcript.len(), d.node_count());
            prop_assert!(transcript.verify(&ctx, &m, &t).is_ok());
            let reparsed = intertype::Transcript::parse(&transcript.to_string()).unwrap();
            prop_assert!(reparsed.verify(&ctx, &m, &t).is_ok());
        }
    }

    #[test]
    fn multi_is_the_conjunction(
        c1 in context(VARS),
        c2 in context(VARS),
        m in normal_term(VARS, 3),
        t1 in small_type(),
        t2 in small_type(),
    ) {
        let js = vec![Judgment::new(c1.clone(), t1.clone()), Judgment::new(c2.clone(), t2.clone())];
        prop_assert_eq!(check_multi(&js, &m).unwrap(), holds(&c1, &m, &t1) && holds(&c2, &m, &t2));
    }
}

#[test]
fn identity_inhabits_every_arrow_from_a_type_to_itself() {
    let id = Term::abs("v", Term::var("v"));
    for src in ["a", "a & b", "(a -> b) & c", "a -> a & b"] {
        let t: Type = src.parse().unwrap();
        assert!(
            holds(&Context::new(), &id, &Type::arrow(t.clone(), t)),
            "{src}"
        );
    }
}

#[test]
fn unknown_variable_is_not_an_error() {
    assert_eq!(
        check(&Context::new(), &Term::var("nope"), &Type::atom("a")),
        Ok(false)
    );
}
