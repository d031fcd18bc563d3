use intertype::encoder::{
    build_contexts, encode_ssts, encode_tau_star_tm, link_var, sigma_t_components, EncodeError,
};
use intertype::machines::{parse_tm, TmSpec};
use intertype::random::{random_ssts, random_tm};
use intertype::types::{Atom, Type, MARK_DOT, MARK_LEFT, MARK_RIGHT};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn machine(seed: u64) -> TmSpec {
    random_tm(&mut StdRng::seed_from_u64(seed), 4, 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn tm_tau_star_has_rank_and_order_three(seed in any::<u64>()) {
        let b = encode_tau_star_tm(&machine(seed)).unwrap();
        prop_assert_eq!((b.tau_star.rank(), b.tau_star.order()), (3, 3));
    }

    #[test]
    fn ssts_tau_star_is_at_most_three(seed in any::<u64>()) {
        let b = encode_ssts(&random_ssts(&mut StdRng::seed_from_u64(seed), 2, 4)).unwrap();
        prop_assert!(b.tau_star.rank() <= 3 && b.tau_star.order() <= 3);
        prop_assert!(b.emitted_atoms().is_subset(&b.atom_universe));
    }

    #[test]
    fn atom_universe_has_the_counted_size(seed in any::<u64>()) {
        let tm = machine(seed);
        let b = encode_tau_star_tm(&tm).unwrap();
        let (s, q) = (tm.symbols().len(), tm.states().len());
        prop_assert_eq!(b.atom_universe.len(), s + 3 + q * s + 4);
        prop_assert!(b.emitted_atoms().is_subset(&b.atom_universe));
        for c in tm.symbols() {
            prop_assert!(b.atom_universe.contains(&Atom::new(c)));
        }
    }

    #[test]
    fn sigma_t_has_two_per_symbol_plus_one(seed in any::<u64>()) {
        let tm = machine(seed);
        for t in tm.transitions() {
            prop_assert_eq!(sigma_t_components(&tm, &t).len(), 2 * tm.symbols().len() + 1);
        }
    }

    #[test]
    fn encoding_is_deterministic(seed in any::<u64>()) {
        let tm = machine(seed);
        let reparsed = parse_tm(&tm.to_string()).unwrap();
        let (a, b) = (encode_tau_star_tm(&tm).unwrap(), encode_tau_star_tm(&reparsed).unwrap());
        prop_assert_eq!(&a.tau_star, &b.tau_star);
        prop_assert_eq!(a.to_string(), b.to_string());
        prop_assert_eq!(a.transition_order().count(), tm.transition_count());
    }

    #[test]
    fn contexts_satisfy_the_neighbour_property(seed in any::<u64>(), n in 2usize..9) {
        let ctxs = build_contexts(&machine(seed), n, false).unwrap();
        prop_assert_eq!(ctxs.len(), n);
        let (l, r, dot) = (Type::atom(MARK_LEFT), Type::atom(MARK_RIGHT), Type::atom(MARK_DOT));
        for i in 1..n {
            let y = link_var(i);
            prop_assert_eq!(ctxs[i - 1].get(&y), Some(&l));
            prop_assert_eq!(ctxs[i].get(&y), Some(&r));
            for (k, ctx) in ctxs.iter().enumerate() {
                if k + 1 != i && k != i {
                    prop_assert_eq!(ctx.get(&y), Some(&dot));
                }
            }
        }
    }
}

#[test]
fn narrow_contexts_are_rejected() {
    let tm = intertype::machines::catalog::tm1();
    assert!(matches!(
        build_contexts(&tm, 1, false),
        Err(EncodeError::WidthTooSmall { .. })
    ));
    assert!(matches!(
        build_contexts(&tm, 2, true),
        Err(EncodeError::WidthTooSmall { .. })
    ));
    assert!(build_contexts(&tm, 3, true).is_ok());
}
