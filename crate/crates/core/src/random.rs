//! Seeded generators for machines, rewriting systems, types, terms and
//! judgment sets. Used by the property suites and the benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::checker::{Context, Judgment};
use crate::machines::{Action, Move, Rule, Ssts, TmSpec, Transition, ONE, ZERO};
use crate::terms::Term;
use crate::types::{Type, BLANK};

/// A machine with `2..=max_states` states (`q0 ..` plus `qf`) and
/// `1..=max_symbols` symbols (`_`, `a`, `b`, ..), with uniformly random δ.
pub fn random_tm<R: Rng + ?Sized>(rng: &mut R, max_states: usize, max_symbols: usize) -> TmSpec {
    let n_states = rng.gen_range(2..=max_states.max(2));
    let n_symbols = rng.gen_range(1..=max_symbols.max(1));
    let mut states: Vec<String> = (0..n_states - 1).map(|i| format!("q{i}")).collect();
    states.push("qf".into());
    let mut symbols = vec![BLANK.to_string()];
    symbols.extend((0..n_symbols - 1).map(|i| ((b'a' + i as u8) as char).to_string()));
    let mut transitions = Vec::new();
    for q in &states[..n_states - 1] {
        for c in &symbols {
            transitions.push(Transition {
                state: q.clone(),
                read: c.clone(),
                action: Action {
                    next: states.choose(rng).unwrap().clone(),
                    write: symbols.choose(rng).unwrap().clone(),
                    moves: if rng.gen_bool(0.5) {
                        Move::Right
                    } else {
                        Move::Left
                    },
                },
            });
        }
    }
    TmSpec::new(symbols, states.clone(), "q0", "qf", transitions)
        .expect("generated machine is valid")
}

/// A rewriting system over `{0, 1}` plus up to `extra_symbols` letters, with
/// `1..=max_rules` random rules.
pub fn random_ssts<R: Rng + ?Sized>(rng: &mut R, extra_symbols: usize, max_rules: usize) -> Ssts {
    let extra = rng.gen_range(0..=extra_symbols);
    let mut alphabet = vec![ZERO.to_string(), ONE.to_string()];
    alphabet.extend((0..extra).map(|i| ((b'a' + i as u8) as char).to_string()));
    let n_rules = rng.gen_range(1..=max_rules.max(1));
    let rules: Vec<Rule> = (0..n_rules)
        .map(|_| {
            let mut pick = || alphabet.choose(rng).unwrap().clone();
            let (a, b, c, d) = (pick(), pick(), pick(), pick());
            Rule::new(&a, &b, &c, &d)
        })
        .collect();
    Ssts::new(alphabet.clone(), rules).expect("generated system is valid")
}

/// Shape limits for [`random_type`].
#[derive(Clone, Copy, Debug)]
pub struct TypeShape<'a> {
    pub atoms: &'a [&'a str],
    pub max_depth: usize,
    /// Probability of an intersection node at each non-leaf position.
    pub inter_prob: f64,
}

pub fn random_type<R: Rng + ?Sized>(rng: &mut R, shape: TypeShape<'_>) -> Type {
    if shape.max_depth == 0 || rng.gen_bool(0.35) {
        return Type::atom(shape.atoms.choose(rng).unwrap());
    }
    let smaller = TypeShape {
        max_depth: shape.max_depth - 1,
        ..shape
    };
    if rng.gen_bool(shape.inter_prob) {
        let n = rng.gen_range(2..=3);
        Type::intersection((0..n).map(|_| random_type(rng, smaller)))
    } else {
        Type::arrow(random_type(rng, smaller), random_type(rng, smaller))
    }
}

/// A type of rank at most `max_rank`, by rejection.
pub fn random_type_of_rank<R: Rng + ?Sized>(
    rng: &mut R,
    shape: TypeShape<'_>,
    max_rank: usize,
) -> Type {
    loop {
        let t = random_type(rng, shape);
        if t.rank() <= max_rank {
            return t;
        }
    }
}

/// A β-normal term over `vars` with at most `max_size` nodes (approximately).
pub fn random_normal_term<R: Rng + ?Sized>(rng: &mut R, vars: &[&str], max_size: usize) -> Term {
    fn go<R: Rng + ?Sized>(
        rng: &mut R,
        scope: &mut Vec<String>,
        budget: usize,
        fresh: &mut usize,
    ) -> Term {
        if budget <= 1 {
            return Term::var(scope.choose(rng).cloned().unwrap_or_else(|| "x".into()));
        }
        if scope.is_empty() || rng.gen_bool(0.3) {
            let name = format!("z{fresh}");
            *fresh += 1;
            scope.push(name.clone());
            let body = go(rng, scope, budget - 1, fresh);
            scope.pop();
            return Term::abs(name, body);
        }
        let head = scope.choose(rng).unwrap().clone();
        let mut args = Vec::new();
        let mut left = budget - 1;
        while left >= 2 && rng.gen_bool(0.6) {
            let size = rng.gen_range(1..left);
            args.push(go(rng, scope, size, fresh));
            left -= size + 1;
        }
        Term::spine(head, args)
    }
    let mut scope: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    let mut fresh = 0;
    go(rng, &mut scope, max_size.max(1), &mut fresh)
}

/// A context binding each of `vars` to a random type.
pub fn random_context<R: Rng + ?Sized>(
    rng: &mut R,
    vars: &[&str],
    shape: TypeShape<'_>,
    max_rank: usize,
) -> Context {
    vars.iter()
        .map(|v| (v.to_string(), random_type_of_rank(rng, shape, max_rank)))
        .collect()
}

/// `1..=max_judgments` judgments over the same variables with independently
/// drawn context types.
pub fn random_judgments<R: Rng + ?Sized>(
    rng: &mut R,
    max_judgments: usize,
    vars: &[&str],
    ctx_shape: TypeShape<'_>,
    goal_shape: TypeShape<'_>,
    max_ctx_rank: usize,
) -> Vec<Judgment> {
    let n = rng.gen_range(1..=max_judgments.max(1));
    let k = rng.gen_range(0..=vars.len());
    let vars = &vars[..k];
    (0..n)
        .map(|_| {
            Judgment::new(
                random_context(rng, vars, ctx_shape, max_ctx_rank),
                random_type_of_rank(rng, goal_shape, max_ctx_rank),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn generated_objects_are_valid() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let tm = random_tm(&mut rng, 3, 2);
            assert!(tm.states().len() <= 3 && tm.symbols().len() <= 2);
            let sys = random_ssts(&mut rng, 1, 3);
            assert!(sys.rule_count() >= 1);
            let term = random_normal_term(&mut rng, &["f", "x"], 6);
            assert!(term.is_beta_normal());
            let shape = TypeShape {
                atoms: &["a", "b"],
                max_depth: 3,
                inter_prob: 0.3,
            };
            assert!(random_type_of_rank(&mut rng, shape, 2).rank() <= 2);
        }
    }
}
