//! Bounded inhabitation search over judgment sets that share one unknown term.
//!
//! The search builds β-normal terms top down with three moves:
//!
//! * SPLIT: an intersection goal becomes one judgment per member,
//! * ABSTRACT: when every goal is an arrow `σ_i -> ρ_i`, bind one fresh
//!   variable typed `σ_i` in the `i`-th context,
//! * APPLY: pick a head variable bound in every context and an arity `k`;
//!   each judgment picks a walk through the head's type that consumes `k`
//!   arguments and ends in its goal, and each argument position becomes a new
//!   judgment set.
//!
//! Depth is term height. States already on the current path are pruned, and
//! failures not influenced by pruning are memoised.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::rc::Rc;

use thiserror::Error;

use crate::checker::{check_multi, derive_multi, Context, Judgment, Transcript};
use crate::terms::Term;
use crate::types::Type;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum term height.
    pub max_depth: usize,
    /// Cap on per-judgment component combinations tried for one head and
    /// arity. `None` explores all of them.
    pub max_branch: Option<usize>,
}

impl SearchConfig {
    pub fn depth(max_depth: usize) -> SearchConfig {
        SearchConfig {
            max_depth,
            max_branch: None,
        }
    }
}

#[derive(Clone, Debug)]
pub enum SearchResult {
    Found {
        term: Term,
        /// One checker transcript per input judgment.
        transcripts: Vec<Transcript>,
    },
    Exhausted {
        /// False when the search space was finite and fully explored.
        depth_limit_hit: bool,
    },
}

impl SearchResult {
    pub fn term(&self) -> Option<&Term> {
        match self {
            SearchResult::Found { term, .. } => Some(term),
            SearchResult::Exhausted { .. } => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchResult::Found { .. })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("no judgments to inhabit")]
    NoJudgments,
    #[error("max_depth must be at least 1")]
    ZeroDepth,
}

/// `⊢ ? : goal`.
pub fn inhabit(goal: &Type, cfg: SearchConfig) -> Result<SearchResult, SearchError> {
    inhabit_multi(&[Judgment::new(Context::new(), goal.clone())], cfg)
}

pub fn inhabit_multi(
    judgments: &[Judgment],
    cfg: SearchConfig,
) -> Result<SearchResult, SearchError> {
    if judgments.is_empty() {
        return Err(SearchError::NoJudgments);
    }
    if cfg.max_depth == 0 {
        return Err(SearchError::ZeroDepth);
    }
    let mut s = Searcher {
        cfg,
        memo: HashMap::new(),
        path: HashSet::new(),
    };
    match s.solve(judgments.to_vec(), cfg.max_depth) {
        Outcome::Found(term) => {
            let derivations = derive_multi(judgments, &term)
                .expect("search only builds normal terms")
                .unwrap_or_else(|| panic!("search produced `{term}`, which does not check"));
            Ok(SearchResult::Found {
                transcripts: derivations.iter().map(|d| d.transcript()).collect(),
                term,
            })
        }
        Outcome::Failed(info) => Ok(SearchResult::Exhausted {
            depth_limit_hit: info.depth_hit || info.capped,
        }),
    }
}

type State = Vec<Judgment>;

#[derive(Clone, Copy, Debug, Default)]
struct FailInfo {
    depth_hit: bool,
    /// A state on the current path was pruned somewhere below.
    pruned: bool,
    /// `max_branch` cut off part of the space.
    capped: bool,
}

impl FailInfo {
    fn merge(&mut self, other: FailInfo) {
        self.depth_hit |= other.depth_hit;
        self.pruned |= other.pruned;
        self.capped |= other.capped;
    }
}

enum Outcome {
    Found(Term),
    Failed(FailInfo),
}

#[derive(Default)]
struct Memo {
    /// Known to fail at every depth up to and including this one.
    fails_up_to: usize,
    success: Option<Term>,
}

struct Searcher {
    cfg: SearchConfig,
    memo: HashMap<State, Memo>,
    path: HashSet<State>,
}

/// Flatten intersection goals and put the set in canonical order.
fn split(judgments: Vec<Judgment>) -> State {
    let mut set = BTreeSet::new();
    for j in judgments {
        for m in j.goal.members() {
            set.insert(Judgment::new(j.context.clone(), m.clone()));
        }
    }
    set.into_iter().collect()
}

fn fresh_name(state: &State, prefix: &str) -> String {
    (1..)
        .map(|i| format!("{prefix}{i}"))
        .find(|n| state.iter().all(|j| !j.context.contains(n)))
        .expect("unbounded name supply")
}

/// Argument lists of every ∩E/→E walk through `ty` that ends in `goal`,
/// in canonical member order, duplicates removed.
pub(crate) fn walks_to(ty: &Type, goal: &Type) -> Vec<Vec<Type>> {
    fn go(ty: &Type, goal: &Type, prefix: &mut Vec<Type>, out: &mut Vec<Vec<Type>>) {
        for m in ty.members() {
            if m == goal && !out.contains(prefix) {
                out.push(prefix.clone());
            }
            if let Some((s, t)) = m.as_arrow() {
                prefix.push(s.clone());
                go(t, goal, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(ty, goal, &mut Vec::new(), &mut out);
    out
}

/// Variables bound in every context, in name order.
fn shared_heads(state: &State) -> Vec<String> {
    let (first, rest) = state.split_first().expect("non-empty state");
    first
        .context
        .names()
        .filter(|n| rest.iter().all(|j| j.context.contains(n)))
        .map(str::to_string)
        .collect()
}

impl Searcher {
    fn solve(&mut self, judgments: Vec<Judgment>, depth: usize) -> Outcome {
        let state = split(judgments);
        if depth == 0 {
            return Outcome::Failed(FailInfo {
                depth_hit: true,
                ..FailInfo::default()
            });
        }
        if let Some(m) = self.memo.get(&state) {
            if let Some(t) = &m.success {
                if t.height() <= depth {
                    return Outcome::Found(t.clone());
                }
            }
            if m.fails_up_to >= depth {
                return Outcome::Failed(FailInfo {
                    depth_hit: m.fails_up_to != usize::MAX,
                    ..FailInfo::default()
                });
            }
        }
        if self.path.contains(&state) {
            return Outcome::Failed(FailInfo {
                pruned: true,
                ..FailInfo::default()
            });
        }
        self.path.insert(state.clone());
        let out = self.expand(&state, depth);
        self.path.remove(&state);

        let entry = self.memo.entry(state).or_default();
        match &out {
            Outcome::Found(t) => {
                if entry
                    .success
                    .as_ref()
                    .is_none_or(|old| old.height() > t.height())
                {
                    entry.success = Some(t.clone());
                }
            }
            Outcome::Failed(info) if !info.pruned && !info.capped => {
                let bound = if info.depth_hit { depth } else { usize::MAX };
                entry.fails_up_to = entry.fails_up_to.max(bound);
            }
            Outcome::Failed(_) => {}
        }
        out
    }

    fn expand(&mut self, state: &State, depth: usize) -> Outcome {
        let mut fail = FailInfo::default();

        let arrows: Option<Vec<(&Type, &Type)>> = state.iter().map(|j| j.goal.as_arrow()).collect();
        if let Some(arrows) = arrows {
            let name = fresh_name(state, "v");
            let inner: Vec<Judgment> = state
                .iter()
                .zip(arrows)
                .map(|(j, (s, t))| {
                    Judgment::new(j.context.with(name.clone(), s.clone()), t.clone())
                })
                .collect();
            match self.solve(inner, depth - 1) {
                Outcome::Found(body) => return Outcome::Found(Term::abs(name, body)),
                Outcome::Failed(f) => fail.merge(f),
            }
        }

        for head in shared_heads(state) {
            let walks: Vec<Vec<Vec<Type>>> = state
                .iter()
                .map(|j| walks_to(j.context.get(&head).expect("shared head"), &j.goal))
                .collect();
            let arities: BTreeSet<usize> = walks[0].iter().map(Vec::len).collect();
            for arity in arities {
                let choices: Vec<Rc<Vec<&Vec<Type>>>> = walks
                    .iter()
                    .map(|ws| Rc::new(ws.iter().filter(|w| w.len() == arity).collect()))
                    .collect();
                if choices.iter().any(|c| c.is_empty()) {
                    continue;
                }
                if arity > 0 && depth == 1 {
                    fail.depth_hit = true;
                    continue;
                }
                match self.apply(state, &head, arity, &choices, depth, &mut fail) {
                    Some(term) => return Outcome::Found(term),
                    None => continue,
                }
            }
        }
        Outcome::Failed(fail)
    }

    /// Try every combination of per-judgment walks, in odometer order.
    fn apply(
        &mut self,
        state: &State,
        head: &str,
        arity: usize,
        choices: &[Rc<Vec<&Vec<Type>>>],
        depth: usize,
        fail: &mut FailInfo,
    ) -> Option<Term> {
        let mut idx = vec![0usize; choices.len()];
        let mut tried = 0usize;
        'combos: loop {
            if let Some(cap) = self.cfg.max_branch {
                if tried >= cap {
                    fail.capped = true;
                    return None;
                }
            }
            tried += 1;

            let mut args = Vec::with_capacity(arity);
            let mut ok = true;
            for pos in 0..arity {
                let arg_judgments: Vec<Judgment> = state
                    .iter()
                    .zip(&idx)
                    .zip(choices)
                    .map(|((j, &c), ch)| Judgment::new(j.context.clone(), ch[c][pos].clone()))
                    .collect();
                match self.solve(arg_judgments, depth - 1) {
                    Outcome::Found(t) => args.push(t),
                    Outcome::Failed(f) => {
                        fail.merge(f);
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                return Some(Term::spine(head, args));
            }

            // advance the odometer, last judgment fastest
            for k in (0..idx.len()).rev() {
                idx[k] += 1;
                if idx[k] < choices[k].len() {
                    continue 'combos;
                }
                idx[k] = 0;
            }
            return None;
        }
    }
}

/// Every β-normal term with at most `size_bound` nodes whose free variables
/// are bound in all contexts and which checks against every judgment,
/// smallest first.
pub fn enumerate_inhabitants(judgments: &[Judgment], size_bound: usize) -> Vec<Term> {
    let free: Vec<String> = match judgments.split_first() {
        Some((first, rest)) => first
            .context
            .names()
            .filter(|n| rest.iter().all(|j| j.context.contains(n)))
            .map(str::to_string)
            .collect(),
        None => Vec::new(),
    };
    let taken: HashSet<String> = judgments
        .iter()
        .flat_map(|j| j.context.names().map(str::to_string))
        .collect();
    let mut binders = Vec::new();
    let mut next = 0usize;
    while binders.len() < size_bound {
        let name = format!("b{next}");
        next += 1;
        if !taken.contains(&name) {
            binders.push(name);
        }
    }
    let mut gen = Enumerator {
        free,
        binders,
        normal: HashMap::new(),
        neutral: HashMap::new(),
    };
    let mut out = Vec::new();
    for size in 1..=size_bound {
        for t in gen.normal(size, 0).iter() {
            if check_multi(judgments, t).expect("enumerated terms are normal") {
                out.push(t.clone());
            }
        }
    }
    out
}

struct Enumerator {
    free: Vec<String>,
    binders: Vec<String>,
    normal: HashMap<(usize, usize), Rc<Vec<Term>>>,
    neutral: HashMap<(usize, usize), Rc<Vec<Term>>>,
}

impl Enumerator {
    /// Normal terms of exactly `size` nodes under `level` enclosing binders.
    fn normal(&mut self, size: usize, level: usize) -> Rc<Vec<Term>> {
        if let Some(v) = self.normal.get(&(size, level)) {
            return v.clone();
        }
        let mut out: Vec<Term> = Vec::new();
        if size >= 2 && level < self.binders.len() {
            let name = self.binders[level].clone();
            for body in self.normal(size - 1, level + 1).iter() {
                out.push(Term::abs(name.clone(), body.clone()));
            }
        }
        out.extend(self.neutral(size, level).iter().cloned());
        let out = Rc::new(out);
        self.normal.insert((size, level), out.clone());
        out
    }

    /// Spines `x a1 .. ak` of exactly `size` nodes.
    fn neutral(&mut self, size: usize, level: usize) -> Rc<Vec<Term>> {
        if let Some(v) = self.neutral.get(&(size, level)) {
            return v.clone();
        }
        let mut out = Vec::new();
        if size == 1 {
            out.extend(self.free.iter().cloned().map(Term::Var));
            out.extend(self.binders[..level].iter().cloned().map(Term::Var));
        } else if size >= 3 {
            for fsize in 1..size - 1 {
                let asize = size - 1 - fsize;
                let funs = self.neutral(fsize, level);
                let args = self.normal(asize, level);
                for f in funs.iter() {
                    for a in args.iter() {
                        out.push(Term::app(f.clone(), a.clone()));
                    }
                }
            }
        }
        let out = Rc::new(out);
        self.neutral.insert((size, level), out.clone());
        out
    }
}
