//! Types and context families that encode machine acceptance as inhabitation.
//!
//! A machine run on a tape of `n` cells becomes `n` simultaneous judgments on
//! one shared term, one per cell. The cells are linked through variables
//! `y_1 .. y_{n-1}`: `y_i` is typed `l` in cell `i`, `r` in cell `i+1` and
//! `dot` everywhere else, so a transition component `l -> ..` can only fire at
//! the cell left of the one using `r -> ..`.
//!
//! The closed type `tau_star` first lets the inhabitant grow the tape with
//! `x_*` (cells marked `circ`, `star`, `hash`, `dollar`), then initialises it
//! with `x_0`, and then runs the machine.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::checker::{Context, Judgment};
use crate::machines::{Config, Rule, Ssts, TmSpec, Transition, ONE, ZERO};
use crate::types::{
    is_reserved_mark, Atom, Type, BLANK, MARK_CIRC, MARK_DOLLAR, MARK_DOT, MARK_HASH, MARK_LEFT,
    MARK_RIGHT, MARK_STAR,
};

/// Variable bound to `sigma_0`.
pub const VAR_INIT: &str = "x0";
/// Variable bound to `sigma_*`.
pub const VAR_EXPAND: &str = "xs";
/// Variable bound to `sigma_f` (machines).
pub const VAR_FINAL: &str = "xf";
/// Variable bound to `sigma_1` (rewriting systems).
pub const VAR_ONE: &str = "x1";

/// Variable bound to the `i`-th transition type, 1-based.
pub fn transition_var(i: usize) -> String {
    format!("xt{i}")
}

/// Cell-linking variable `y_i`, 1-based.
pub fn link_var(i: usize) -> String {
    format!("y{i}")
}

/// Smallest tape the expansion phase can produce.
pub const MIN_OUTER_WIDTH: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EncodeError {
    #[error("symbol `{0}` clashes with a reserved mark atom")]
    ReservedSymbol(String),
    #[error("width {width} is below the minimum {min}")]
    WidthTooSmall { width: usize, min: usize },
}

fn atom(name: &str) -> Type {
    Type::atom(name)
}

fn arrow(s: Type, t: Type) -> Type {
    Type::arrow(s, t)
}

fn arrow2(a: Type, b: Type, c: Type) -> Type {
    Type::arrows([a, b], c)
}

fn pair(q: &str, a: &str) -> Type {
    Type::from_atom(Atom::pair(q, a))
}

fn check_symbols<'a>(symbols: impl IntoIterator<Item = &'a String>) -> Result<(), EncodeError> {
    match symbols.into_iter().find(|s| is_reserved_mark(s)) {
        Some(s) => Err(EncodeError::ReservedSymbol(s.clone())),
        None => Ok(()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    TuringMachine,
    SemiThue,
}

/// Everything the encoding produces for one machine or rewriting system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodingBundle {
    pub model: Model,
    pub tau_star: Type,
    pub sigma_0: Type,
    pub sigma_star: Type,
    /// `sigma_f` for machines, `sigma_1` for rewriting systems.
    pub sigma_final: Type,
    /// Per-transition (or per-rule) types in binder order, with a label.
    pub sigma_t: Vec<(String, Type)>,
    /// Goal after all binders: the three cell marks of a two-cell tape.
    pub body_goal: Type,
    pub atom_universe: BTreeSet<Atom>,
}

impl EncodingBundle {
    pub fn transition_order(&self) -> impl Iterator<Item = &str> {
        self.sigma_t.iter().map(|(l, _)| l.as_str())
    }

    pub fn final_var(&self) -> &'static str {
        match self.model {
            Model::TuringMachine => VAR_FINAL,
            Model::SemiThue => VAR_ONE,
        }
    }

    /// Binders of `tau_star` in order, excluding `y_1`.
    pub fn binders(&self) -> Vec<String> {
        let mut out = vec![
            VAR_INIT.to_string(),
            VAR_EXPAND.to_string(),
            self.final_var().to_string(),
        ];
        out.extend((1..=self.sigma_t.len()).map(transition_var));
        out
    }

    /// `Γ`: the final and transition variables, plus `x_0`/`x_*` when `outer`.
    pub fn base_context(&self, outer: bool) -> Context {
        let mut ctx = Context::new();
        ctx.insert(self.final_var(), self.sigma_final.clone());
        for (i, (_, ty)) in self.sigma_t.iter().enumerate() {
            ctx.insert(transition_var(i + 1), ty.clone());
        }
        if outer {
            ctx.insert(VAR_INIT, self.sigma_0.clone());
            ctx.insert(VAR_EXPAND, self.sigma_star.clone());
        }
        ctx
    }

    /// `Γ_1 .. Γ_n` over the base context.
    pub fn contexts(&self, width: usize, outer: bool) -> Result<Vec<Context>, EncodeError> {
        let min = if outer { MIN_OUTER_WIDTH } else { 2 };
        if width < min {
            return Err(EncodeError::WidthTooSmall { width, min });
        }
        Ok(link_contexts(&self.base_context(outer), width))
    }

    /// Every atom mentioned by any emitted type.
    pub fn emitted_atoms(&self) -> BTreeSet<Atom> {
        let mut out = self.tau_star.atoms();
        for t in [&self.sigma_0, &self.sigma_star, &self.sigma_final] {
            out.extend(t.atoms());
        }
        for (_, t) in &self.sigma_t {
            out.extend(t.atoms());
        }
        out
    }
}

/// Human-readable manifest: the type, the transition order and atoms.
impl fmt::Display for EncodingBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "tau_star: {}", self.tau_star)?;
        writeln!(
            f,
            "rank: {}  order: {}",
            self.tau_star.rank(),
            self.tau_star.order()
        )?;
        writeln!(f, "{}: {}", VAR_INIT, self.sigma_0)?;
        writeln!(f, "{}: {}", VAR_EXPAND, self.sigma_star)?;
        writeln!(f, "{}: {}", self.final_var(), self.sigma_final)?;
        for (i, (label, ty)) in self.sigma_t.iter().enumerate() {
            writeln!(f, "{}: {}    # {}", transition_var(i + 1), ty, label)?;
        }
        let atoms: Vec<&str> = self.atom_universe.iter().map(Atom::name).collect();
        writeln!(f, "atoms ({}): {}", atoms.len(), atoms.join(" "))
    }
}

/// `Γ_i = base ∪ {y_{i-1} : r, y_i : l} ∪ {y_j : dot | other j}`.
pub fn link_contexts(base: &Context, width: usize) -> Vec<Context> {
    (1..=width)
        .map(|i| {
            let mut ctx = base.clone();
            for j in 1..width {
                let mark = if j == i {
                    MARK_LEFT
                } else if j + 1 == i {
                    MARK_RIGHT
                } else {
                    MARK_DOT
                };
                ctx.insert(link_var(j), atom(mark));
            }
            ctx
        })
        .collect()
}

/// `⋂_c ⟨q_f, c⟩ ∩ ⋂_c c`.
pub fn encode_sigma_f(spec: &TmSpec) -> Type {
    let symbols = spec.symbols();
    Type::intersection(
        symbols
            .iter()
            .map(|c| pair(spec.final_state(), c))
            .chain(symbols.iter().map(|c| atom(c))),
    )
}

/// Components of `sigma_t` before canonicalisation. For a right move:
/// `⋂_a (dot -> a -> a) ∩ (l -> c' -> ⟨q,c⟩) ∩ ⋂_a (r -> ⟨q',a⟩ -> a)`; a left
/// move swaps `l` and `r`.
pub fn sigma_t_components(spec: &TmSpec, t: &Transition) -> Vec<Type> {
    let (here, there) = match t.action.moves {
        crate::machines::Move::Right => (MARK_LEFT, MARK_RIGHT),
        crate::machines::Move::Left => (MARK_RIGHT, MARK_LEFT),
    };
    let symbols = spec.symbols();
    let mut out: Vec<Type> = symbols
        .iter()
        .map(|a| arrow2(atom(MARK_DOT), atom(a), atom(a)))
        .collect();
    out.push(arrow2(
        atom(here),
        atom(&t.action.write),
        pair(&t.state, &t.read),
    ));
    out.extend(
        symbols
            .iter()
            .map(|a| arrow2(atom(there), pair(&t.action.next, a), atom(a))),
    );
    out
}

pub fn encode_sigma_t(spec: &TmSpec, t: &Transition) -> Type {
    Type::intersection(sigma_t_components(spec, t))
}

/// Tape expansion, independent of the machine.
pub fn encode_sigma_star_tm() -> Type {
    Type::intersection([
        arrow(arrow(atom(MARK_DOT), atom(MARK_CIRC)), atom(MARK_CIRC)),
        arrow(arrow(atom(MARK_DOT), atom(MARK_STAR)), atom(MARK_STAR)),
        arrow(arrow(atom(MARK_LEFT), atom(MARK_STAR)), atom(MARK_HASH)),
        expand_last_cell(),
    ])
}

/// `(r -> hash) ∩ (dot -> dollar) -> dollar`, the one rank-2 component.
fn expand_last_cell() -> Type {
    arrow(
        Type::intersection([
            arrow(atom(MARK_RIGHT), atom(MARK_HASH)),
            arrow(atom(MARK_DOT), atom(MARK_DOLLAR)),
        ]),
        atom(MARK_DOLLAR),
    )
}

/// Tape initialisation: state `q0` on the first cell, blanks everywhere.
pub fn encode_sigma_0_tm(spec: &TmSpec) -> Type {
    Type::intersection([
        arrow(
            arrow(atom(MARK_DOT), pair(spec.initial(), BLANK)),
            atom(MARK_CIRC),
        ),
        arrow(arrow(atom(MARK_DOT), atom(BLANK)), atom(MARK_STAR)),
        arrow(arrow(atom(MARK_LEFT), atom(BLANK)), atom(MARK_HASH)),
        arrow(arrow(atom(MARK_RIGHT), atom(BLANK)), atom(MARK_DOLLAR)),
    ])
}

fn assemble_tau_star(
    sigma_0: &Type,
    sigma_star: &Type,
    sigma_final: &Type,
    sigma_t: &[(String, Type)],
    body_goal: &Type,
) -> Type {
    let args = [sigma_0.clone(), sigma_star.clone(), sigma_final.clone()]
        .into_iter()
        .chain(sigma_t.iter().map(|(_, t)| t.clone()));
    Type::arrows(args, body_goal.clone())
}

/// `tau_star = σ_0 -> σ_* -> σ_f -> σ_t1 -> .. -> σ_tk -> (l -> circ) ∩ (r -> hash) ∩ (dot -> dollar)`
/// with transitions ordered by source `(state, symbol)`.
pub fn encode_tau_star_tm(spec: &TmSpec) -> Result<EncodingBundle, EncodeError> {
    check_symbols(spec.symbols())?;
    let sigma_0 = encode_sigma_0_tm(spec);
    let sigma_star = encode_sigma_star_tm();
    let sigma_final = encode_sigma_f(spec);
    let sigma_t: Vec<(String, Type)> = spec
        .transitions()
        .map(|t| (t.to_string(), encode_sigma_t(spec, &t)))
        .collect();
    let body_goal = Type::intersection([
        arrow(atom(MARK_LEFT), atom(MARK_CIRC)),
        arrow(atom(MARK_RIGHT), atom(MARK_HASH)),
        arrow(atom(MARK_DOT), atom(MARK_DOLLAR)),
    ]);
    let tau_star = assemble_tau_star(&sigma_0, &sigma_star, &sigma_final, &sigma_t, &body_goal);

    let mut atom_universe: BTreeSet<Atom> = spec.symbols().iter().map(Atom::new).collect();
    atom_universe.extend([MARK_LEFT, MARK_RIGHT, MARK_DOT].map(Atom::new));
    for q in spec.states() {
        atom_universe.extend(spec.symbols().iter().map(|a| Atom::pair(q, a)));
    }
    atom_universe.extend([MARK_CIRC, MARK_STAR, MARK_HASH, MARK_DOLLAR].map(Atom::new));

    Ok(EncodingBundle {
        model: Model::TuringMachine,
        tau_star,
        sigma_0,
        sigma_star,
        sigma_final,
        sigma_t,
        body_goal,
        atom_universe,
    })
}

/// `Γ_1 .. Γ_n` for a machine; `outer` adds `x_0` and `x_*`.
pub fn build_contexts(
    spec: &TmSpec,
    width: usize,
    outer: bool,
) -> Result<Vec<Context>, EncodeError> {
    encode_tau_star_tm(spec)?.contexts(width, outer)
}

/// The judgment family for configuration `(q, p, s)`: cell `p` must produce
/// `⟨q, s_p⟩`, every other cell `i` its symbol `s_i`.
pub fn configuration_family(
    bundle: &EncodingBundle,
    config: &Config,
    outer: bool,
) -> Result<Vec<Judgment>, EncodeError> {
    let contexts = bundle.contexts(config.width(), outer)?;
    Ok(contexts
        .into_iter()
        .enumerate()
        .map(|(i, ctx)| {
            let symbol = &config.tape[i];
            let goal = if i + 1 == config.position {
                pair(&config.state, symbol)
            } else {
                atom(symbol)
            };
            Judgment::new(ctx, goal)
        })
        .collect())
}

/// `(l -> c -> a) ∩ (r -> d -> b) ∩ ⋂_e (dot -> e -> e)` for `ab => cd`.
pub fn encode_sigma_rule(system: &Ssts, rule: &Rule) -> Type {
    let (a, b) = (&rule.lhs.0, &rule.lhs.1);
    let (c, d) = (&rule.rhs.0, &rule.rhs.1);
    Type::intersection(
        [
            arrow2(atom(MARK_LEFT), atom(c), atom(a)),
            arrow2(atom(MARK_RIGHT), atom(d), atom(b)),
        ]
        .into_iter()
        .chain(
            system
                .alphabet()
                .iter()
                .map(|e| arrow2(atom(MARK_DOT), atom(e), atom(e))),
        ),
    )
}

pub fn encode_ssts(system: &Ssts) -> Result<EncodingBundle, EncodeError> {
    check_symbols(system.alphabet())?;
    let sigma_star = Type::intersection([
        arrow(arrow(atom(MARK_DOT), atom(MARK_STAR)), atom(MARK_STAR)),
        arrow(arrow(atom(MARK_LEFT), atom(MARK_STAR)), atom(MARK_HASH)),
        expand_last_cell(),
    ]);
    let sigma_0 = Type::intersection([
        arrow(arrow(atom(MARK_DOT), atom(ZERO)), atom(MARK_STAR)),
        arrow(arrow(atom(MARK_LEFT), atom(ZERO)), atom(MARK_HASH)),
        arrow(arrow(atom(MARK_RIGHT), atom(ZERO)), atom(MARK_DOLLAR)),
    ]);
    let sigma_final = atom(ONE);
    let sigma_t: Vec<(String, Type)> = system
        .rules()
        .map(|r| (r.to_string(), encode_sigma_rule(system, r)))
        .collect();
    let body_goal = Type::intersection([
        arrow(atom(MARK_LEFT), atom(MARK_STAR)),
        arrow(atom(MARK_RIGHT), atom(MARK_HASH)),
        arrow(atom(MARK_DOT), atom(MARK_DOLLAR)),
    ]);
    let tau_star = assemble_tau_star(&sigma_0, &sigma_star, &sigma_final, &sigma_t, &body_goal);

    let mut atom_universe: BTreeSet<Atom> = system.alphabet().iter().map(Atom::new).collect();
    atom_universe.extend(
        [
            MARK_LEFT,
            MARK_RIGHT,
            MARK_DOT,
            MARK_STAR,
            MARK_HASH,
            MARK_DOLLAR,
        ]
        .map(Atom::new),
    );

    Ok(EncodingBundle {
        model: Model::SemiThue,
        tau_star,
        sigma_0,
        sigma_star,
        sigma_final,
        sigma_t,
        body_goal,
        atom_universe,
    })
}

/// The judgment family for a word: cell `i` must produce `w_i`.
pub fn word_family(
    bundle: &EncodingBundle,
    word: &[String],
    outer: bool,
) -> Result<Vec<Judgment>, EncodeError> {
    let contexts = bundle.contexts(word.len(), outer)?;
    Ok(contexts
        .into_iter()
        .zip(word)
        .map(|(ctx, s)| Judgment::new(ctx, atom(s)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machines::catalog::*;
    use crate::machines::parse_tm;
    use crate::types::{arrow_components, parse_type};

    fn t(s: &str) -> Type {
        parse_type(s).unwrap()
    }

    #[test]
    fn sigma_f_instances() {
        assert_eq!(encode_sigma_f(&tm1()), t("qf@_ & _"));
        let two = parse_tm("symbols: _ a\nstates: q0 qf\ninitial: q0\nfinal: qf\ndelta: q0 _ -> qf _ R\ndelta: q0 a -> qf a R\n").unwrap();
        let sf = encode_sigma_f(&two);
        assert_eq!(sf.members().len(), 4);
        assert!(sf.members().iter().all(|m| m.as_atom().is_some()));
        assert_eq!((sf.rank(), sf.order()), (1, 0));
    }

    #[test]
    fn sigma_t_instance_and_measures() {
        let spec = tm1();
        let tr = spec.transitions().next().unwrap();
        let st = encode_sigma_t(&spec, &tr);
        assert_eq!(
            st,
            t("(dot -> _ -> _) & (l -> _ -> q0@_) & (r -> qf@_ -> _)")
        );
        assert_eq!(
            sigma_t_components(&spec, &tr).len(),
            2 * spec.symbols().len() + 1
        );
        // An intersection of simple arrows has rank 1 and order 1; as the
        // source of an arrow it contributes 2 and 2.
        assert_eq!((st.rank(), st.order()), (1, 1));
        let as_arg = Type::arrow(st, t("a"));
        assert_eq!((as_arg.rank(), as_arg.order()), (2, 2));
    }

    #[test]
    fn left_moves_swap_marks() {
        let spec =
            parse_tm("symbols: _\nstates: q0 qf\ninitial: q0\nfinal: qf\ndelta: q0 _ -> qf _ L\n")
                .unwrap();
        let tr = spec.transitions().next().unwrap();
        assert_eq!(
            encode_sigma_t(&spec, &tr),
            t("(dot -> _ -> _) & (r -> _ -> q0@_) & (l -> qf@_ -> _)")
        );
    }

    #[test]
    fn sigma_star_and_sigma_0() {
        let s = encode_sigma_star_tm();
        assert_eq!(
            s,
            t("((dot -> circ) -> circ) & ((dot -> star) -> star) & ((l -> star) -> hash) & ((r -> hash) & (dot -> dollar) -> dollar)")
        );
        assert_eq!((s.rank(), s.order()), (2, 2));
        let as_arg = Type::arrow(s.clone(), t("a"));
        assert_eq!((as_arg.rank(), as_arg.order()), (3, 3));
        let comps = arrow_components(&s).unwrap();
        assert_eq!(comps.len(), 4);
        assert!(comps
            .iter()
            .any(|c| c.arguments == vec![t("(r -> hash) & (dot -> dollar)")]
                && c.target == Atom::new("dollar")));

        let s0 = encode_sigma_0_tm(&tm1());
        assert!(s0.members().contains(&t("(dot -> q0@_) -> circ")));
    }

    #[test]
    fn tau_star_tm1() {
        let b = encode_tau_star_tm(&tm1()).unwrap();
        let comps = arrow_components(&b.tau_star);
        // the body goal is an intersection, so the chain does not end in an atom
        assert!(comps.is_err());
        let mut args = 0;
        let mut cur = &b.tau_star;
        while let Some((_, t)) = cur.as_arrow() {
            args += 1;
            cur = t;
        }
        assert_eq!(args, 4);
        assert_eq!(cur, &t("(l -> circ) & (r -> hash) & (dot -> dollar)"));
        assert_eq!((b.tau_star.rank(), b.tau_star.order()), (3, 3));
        let spec = tm1();
        let expected = spec.symbols().len() + 3 + spec.states().len() * spec.symbols().len() + 4;
        assert_eq!(b.atom_universe.len(), expected);
        assert!(b.emitted_atoms().is_subset(&b.atom_universe));
    }

    #[test]
    fn reserved_symbols_clash() {
        let spec = parse_tm("symbols: _ l\nstates: q0 qf\ninitial: q0\nfinal: qf\ndelta: q0 _ -> qf _ R\ndelta: q0 l -> qf l R\n").unwrap();
        assert_eq!(
            encode_tau_star_tm(&spec),
            Err(EncodeError::ReservedSymbol("l".into()))
        );
    }

    #[test]
    fn contexts_width_three() {
        let cs = build_contexts(&tm1(), 3, false).unwrap();
        let y = |c: &Context, i: usize| c.get(&link_var(i)).unwrap().to_string();
        assert_eq!((y(&cs[0], 1), y(&cs[0], 2)), ("l".into(), "dot".into()));
        assert_eq!((y(&cs[1], 1), y(&cs[1], 2)), ("r".into(), "l".into()));
        assert_eq!((y(&cs[2], 1), y(&cs[2], 2)), ("dot".into(), "r".into()));
        assert!(cs[0].contains(VAR_FINAL) && cs[0].contains("xt1") && !cs[0].contains(VAR_INIT));
        let outer = build_contexts(&tm1(), 3, true).unwrap();
        assert!(outer[0].contains(VAR_INIT) && outer[0].contains(VAR_EXPAND));
        assert!(build_contexts(&tm1(), 1, false).is_err());
        assert!(build_contexts(&tm1(), 2, false).is_ok());
        assert!(build_contexts(&tm1(), 2, true).is_err());
    }

    #[test]
    fn neighbour_property() {
        for n in 2..=7 {
            let cs = build_contexts(&tm1(), n, false).unwrap();
            for i in 1..n {
                assert_eq!(cs[i - 1].get(&link_var(i)), Some(&t("l")));
                assert_eq!(cs[i].get(&link_var(i)), Some(&t("r")));
                for (k, c) in cs.iter().enumerate() {
                    if k + 1 != i && k != i {
                        assert_eq!(c.get(&link_var(i)), Some(&t("dot")));
                    }
                }
            }
        }
    }

    #[test]
    fn ssts_encoding() {
        let b = encode_ssts(&ssts_pairs()).unwrap();
        assert_eq!(
            b.sigma_t[0].1,
            t("(l -> 1 -> 0) & (r -> 1 -> 0) & (dot -> 0 -> 0) & (dot -> 1 -> 1)")
        );
        assert_eq!(b.sigma_final, t("1"));
        assert_eq!((b.tau_star.rank(), b.tau_star.order()), (3, 3));
        assert_eq!(
            b.sigma_0,
            t("((dot -> 0) -> star) & ((l -> 0) -> hash) & ((r -> 0) -> dollar)")
        );
        assert!(b.emitted_atoms().is_subset(&b.atom_universe));
        assert_eq!(b.atom_universe.len(), 2 + 6);
    }

    #[test]
    fn configuration_goals() {
        let b = encode_tau_star_tm(&tm1()).unwrap();
        let fam = configuration_family(&b, &tm1().blank_config(3), false).unwrap();
        let goals: Vec<String> = fam.iter().map(|j| j.goal.to_string()).collect();
        assert_eq!(goals, ["q0@_", "_", "_"]);
    }
}
