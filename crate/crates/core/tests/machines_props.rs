use std::collections::{BTreeSet, VecDeque};

use intertype::machines::{
    accepts_at_width, parse_ssts, parse_tm, ssts_reach, ssts_step, tm_run, uniform_word,
    ReachOutcome, RunOutcome, Ssts, Word, ONE, ZERO,
};
use intertype::random::{random_ssts, random_tm};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

/// All words reachable from `0^n`, by plain worklist closure.
fn reachable(system: &Ssts, n: usize) -> BTreeSet<Word> {
    let mut seen = BTreeSet::from([uniform_word(ZERO, n)]);
    let mut queue: VecDeque<Word> = seen.iter().cloned().collect();
    while let Some(w) = queue.pop_front() {
        for r in system.rules() {
            for p in 1..n {
                if let Ok(next) = ssts_step(&w, r, p) {
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    seen
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn acceptance_is_monotone_in_width(seed in any::<u64>()) {
        let tm = random_tm(&mut StdRng::seed_from_u64(seed), 3, 2);
        for n in 1..=4 {
            if let Some(trace) = accepts_at_width(&tm, n) {
                for m in n + 1..=n + 3 {
                    let wider = accepts_at_width(&tm, m);
                    prop_assert!(wider.is_some(), "accepts at {} but not at {}", n, m);
                    prop_assert_eq!(wider.unwrap().steps, trace.steps.clone());
                }
            }
        }
    }

    #[test]
    fn runs_are_deterministic_and_replay(seed in any::<u64>(), n in 1usize..5) {
        let tm = random_tm(&mut StdRng::seed_from_u64(seed), 3, 2);
        let budget = tm.default_budget(n);
        let a = tm_run(&tm, &tm.blank_config(n), budget);
        let b = tm_run(&tm, &tm.blank_config(n), budget);
        prop_assert_eq!(&a, &b);
        if let RunOutcome::Accepted(trace) = a {
            prop_assert!(trace.replays(&tm));
            prop_assert_eq!(trace.configs.len(), trace.steps.len() + 1);
            prop_assert!(trace.configs.iter().all(|c| (1..=n).contains(&c.position)));
        }
    }

    #[test]
    fn exact_budget_loses_no_outcome(seed in any::<u64>(), n in 1usize..5) {
        let tm = random_tm(&mut StdRng::seed_from_u64(seed), 3, 2);
        let exact = tm_run(&tm, &tm.blank_config(n), tm.default_budget(n));
        let generous = tm_run(&tm, &tm.blank_config(n), 4 * tm.default_budget(n) + 16);
        prop_assert_eq!(exact, generous);
    }

    #[test]
    fn spec_files_round_trip(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let tm = random_tm(&mut rng, 3, 3);
        prop_assert_eq!(parse_tm(&tm.to_string()).unwrap(), tm);
        let sys = random_ssts(&mut rng, 1, 3);
        prop_assert_eq!(parse_ssts(&sys.to_string()).unwrap(), sys);
    }

    #[test]
    fn reachability_matches_closure(seed in any::<u64>(), n in 1usize..6) {
        let sys = random_ssts(&mut StdRng::seed_from_u64(seed), 1, 3);
        let target = uniform_word(ONE, n);
        let reach = reachable(&sys, n);
        match ssts_reach(&sys, n, usize::MAX) {
            ReachOutcome::Found(d) => {
                prop_assert!(reach.contains(&target));
                prop_assert!(d.replays(&sys));
                let mut w = d.start.clone();
                for s in &d.steps {
                    prop_assert_eq!(s.result.len(), n);
                    w = ssts_step(&w, &s.rule, s.position).unwrap();
                }
                prop_assert_eq!(w, target);
            }
            ReachOutcome::Exhausted { bound_hit } => {
                prop_assert!(!bound_hit);
                prop_assert!(!reach.contains(&target));
            }
        }
    }
}
