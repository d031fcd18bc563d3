#![allow(dead_code)]

use intertype::types::RawType;
use intertype::{Context, Term, Type};
use proptest::prelude::*;

pub const ATOMS: &[&str] = &["a", "b", "c"];

pub fn raw_type(depth: u32) -> impl Strategy<Value = RawType> {
    let leaf = prop::sample::select(ATOMS).prop_map(RawType::atom);
    leaf.prop_recursive(depth, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(s, t)| RawType::arrow(s, t)),
            (inner.clone(), inner).prop_map(|(s, t)| RawType::inter(s, t)),
        ]
    })
}

pub fn small_type() -> impl Strategy<Value = Type> {
    raw_type(3).prop_map(|r| intertype::canonicalize(&r))
}

/// A β-normal term over `vars` and fresh binders, as a tree of spines and
/// abstractions.
pub fn normal_term(vars: &'static [&'static str], depth: u32) -> impl Strategy<Value = Term> {
    let leaf = prop::sample::select(vars).prop_map(Term::var);
    leaf.prop_recursive(depth, 16, 3, move |inner| {
        prop_oneof![
            (
                prop::sample::select(vars),
                prop::collection::vec(inner.clone(), 1..3)
            )
                .prop_map(|(h, args)| Term::spine(h, args)),
            (prop::sample::select(vars), inner).prop_map(|(x, body)| Term::abs(x, body)),
        ]
    })
}

pub fn context(vars: &'static [&'static str]) -> impl Strategy<Value = Context> {
    prop::collection::vec(small_type(), vars.len())
        .prop_map(move |tys| vars.iter().map(|v| v.to_string()).zip(tys).collect())
}
