//! Deterministic single-tape Turing machines on a bounded tape, and simple
//! semi-Thue systems (rules `ab => cd`).

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::types::BLANK;

pub type Symbol = String;
pub type State = String;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    Left,
    Right,
}

impl Move {
    pub fn offset(self) -> isize {
        match self {
            Move::Left => -1,
            Move::Right => 1,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Move::Left => "L",
            Move::Right => "R",
        })
    }
}

/// Right-hand side of a transition `(q, c) ↦ (q', c', ±1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Action {
    pub next: State,
    pub write: Symbol,
    pub moves: Move,
}

/// A transition, identified by its source pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub state: State,
    pub read: Symbol,
    pub action: Action,
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} -> {} {} {}",
            self.state, self.read, self.action.next, self.action.write, self.action.moves
        )
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("the alphabet must contain the blank `_`")]
    NoBlank,
    #[error("the state set is empty")]
    NoStates,
    #[error("`{0}` is not a valid name (letters, digits, `_`)")]
    BadName(String),
    #[error("state `{0}` is not declared")]
    UnknownState(State),
    #[error("symbol `{0}` is not declared")]
    UnknownSymbol(Symbol),
    #[error("no transition for ({0}, {1})")]
    MissingTransition(State, Symbol),
    #[error("the final state `{0}` must not have transitions")]
    FinalHasTransition(State),
    #[error("duplicate transition for ({0}, {1})")]
    DuplicateTransition(State, Symbol),
    #[error("the alphabet must contain `{0}`")]
    MissingSymbol(Symbol),
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// `T = (Σ, Q, q0, qf, δ)` with δ total on `(Q \ {qf}) × Σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TmSpec {
    symbols: BTreeSet<Symbol>,
    states: BTreeSet<State>,
    initial: State,
    final_state: State,
    delta: BTreeMap<(State, Symbol), Action>,
}

impl TmSpec {
    pub fn new(
        symbols: impl IntoIterator<Item = impl Into<Symbol>>,
        states: impl IntoIterator<Item = impl Into<State>>,
        initial: impl Into<State>,
        final_state: impl Into<State>,
        transitions: impl IntoIterator<Item = Transition>,
    ) -> Result<TmSpec, SpecError> {
        let symbols: BTreeSet<Symbol> = symbols.into_iter().map(Into::into).collect();
        let states: BTreeSet<State> = states.into_iter().map(Into::into).collect();
        let initial = initial.into();
        let final_state = final_state.into();
        if let Some(bad) = symbols.iter().chain(&states).find(|s| !valid_name(s)) {
            return Err(SpecError::BadName(bad.clone()));
        }
        if !symbols.contains(BLANK) {
            return Err(SpecError::NoBlank);
        }
        if states.is_empty() {
            return Err(SpecError::NoStates);
        }
        for q in [&initial, &final_state] {
            if !states.contains(q) {
                return Err(SpecError::UnknownState(q.clone()));
            }
        }
        let mut delta = BTreeMap::new();
        for t in transitions {
            for q in [&t.state, &t.action.next] {
                if !states.contains(q) {
                    return Err(SpecError::UnknownState(q.clone()));
                }
            }
            for c in [&t.read, &t.action.write] {
                if !symbols.contains(c) {
                    return Err(SpecError::UnknownSymbol(c.clone()));
                }
            }
            if t.state == final_state {
                return Err(SpecError::FinalHasTransition(final_state));
            }
            let key = (t.state.clone(), t.read.clone());
            if delta.insert(key, t.action).is_some() {
                return Err(SpecError::DuplicateTransition(t.state, t.read));
            }
        }
        for q in states.iter().filter(|q| **q != final_state) {
            for c in &symbols {
                if !delta.contains_key(&(q.clone(), c.clone())) {
                    return Err(SpecError::MissingTransition(q.clone(), c.clone()));
                }
            }
        }
        Ok(TmSpec {
            symbols,
            states,
            initial,
            final_state,
            delta,
        })
    }

    pub fn symbols(&self) -> &BTreeSet<Symbol> {
        &self.symbols
    }

    pub fn states(&self) -> &BTreeSet<State> {
        &self.states
    }

    pub fn initial(&self) -> &str {
        &self.initial
    }

    pub fn final_state(&self) -> &str {
        &self.final_state
    }

    pub fn action(&self, state: &str, read: &str) -> Option<&Action> {
        self.delta.get(&(state.to_string(), read.to_string()))
    }

    /// All transitions, ordered by source `(state, symbol)`.
    pub fn transitions(&self) -> impl Iterator<Item = Transition> + '_ {
        self.delta.iter().map(|((q, c), a)| Transition {
            state: q.clone(),
            read: c.clone(),
            action: a.clone(),
        })
    }

    pub fn transition_count(&self) -> usize {
        self.delta.len()
    }

    /// Number of distinct configurations on a width-`n` tape; a run longer
    /// than this repeats a configuration and never halts.
    pub fn default_budget(&self, width: usize) -> u64 {
        let per_tape = (self.symbols.len() as u64).saturating_pow(width as u32);
        (self.states.len() as u64)
            .saturating_mul(per_tape)
            .saturating_mul(width as u64)
    }

    pub fn blank_config(&self, width: usize) -> Config {
        Config {
            state: self.initial.clone(),
            position: 1,
            tape: vec![BLANK.to_string(); width],
        }
    }
}

impl fmt::Display for TmSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &BTreeSet<String>| s.iter().cloned().collect::<Vec<_>>().join(" ");
        writeln!(f, "symbols: {}", join(&self.symbols))?;
        writeln!(f, "states: {}", join(&self.states))?;
        writeln!(f, "initial: {}", self.initial)?;
        writeln!(f, "final: {}", self.final_state)?;
        for t in self.transitions() {
            writeln!(f, "delta: {t}")?;
        }
        Ok(())
    }
}

/// `(q, p, s)` with a 1-based head position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Config {
    pub state: State,
    pub position: usize,
    pub tape: Vec<Symbol>,
}

impl Config {
    pub fn width(&self) -> usize {
        self.tape.len()
    }

    pub fn scanned(&self) -> &str {
        &self.tape[self.position - 1]
    }
}

impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            self.state,
            self.position,
            self.tape.join(" ")
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    Next { config: Config, via: Transition },
    Halted,
    OutOfBounds,
}

pub fn tm_step(spec: &TmSpec, c: &Config) -> StepOutcome {
    if c.state == spec.final_state {
        return StepOutcome::Halted;
    }
    let read = c.scanned();
    let action = spec
        .action(&c.state, read)
        .expect("delta is total outside the final state");
    let target = c.position as isize + action.moves.offset();
    if target < 1 || target as usize > c.width() {
        return StepOutcome::OutOfBounds;
    }
    let mut tape = c.tape.clone();
    tape[c.position - 1] = action.write.clone();
    StepOutcome::Next {
        via: Transition {
            state: c.state.clone(),
            read: read.to_string(),
            action: action.clone(),
        },
        config: Config {
            state: action.next.clone(),
            position: target as usize,
            tape,
        },
    }
}

/// An accepting run `C_1 ⇝ … ⇝ C_m`; `steps[i]` justifies `configs[i] ⇝ configs[i+1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub configs: Vec<Config>,
    pub steps: Vec<Transition>,
}

impl Trace {
    pub fn width(&self) -> usize {
        self.configs[0].width()
    }

    /// Number of configurations.
    pub fn len(&self) -> usize {
        self.configs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configs.is_empty()
    }

    /// Re-run every step through [`tm_step`].
    pub fn replays(&self, spec: &TmSpec) -> bool {
        if self.configs.is_empty() || self.steps.len() + 1 != self.configs.len() {
            return false;
        }
        for (i, via) in self.steps.iter().enumerate() {
            match tm_step(spec, &self.configs[i]) {
                StepOutcome::Next { config, via: v }
                    if config == self.configs[i + 1] && &v == via => {}
                _ => return false,
            }
        }
        self.configs.last().unwrap().state == spec.final_state
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RunOutcome {
    Accepted(Trace),
    Rejected,
    BudgetExhausted,
}

pub fn tm_run(spec: &TmSpec, start: &Config, max_steps: u64) -> RunOutcome {
    let mut configs = vec![start.clone()];
    let mut steps = Vec::new();
    let mut taken = 0u64;
    loop {
        let cur = configs.last().unwrap();
        if cur.state == spec.final_state {
            return RunOutcome::Accepted(Trace { configs, steps });
        }
        if taken >= max_steps {
            return RunOutcome::BudgetExhausted;
        }
        match tm_step(spec, cur) {
            StepOutcome::Next { config, via } => {
                configs.push(config);
                steps.push(via);
                taken += 1;
            }
            StepOutcome::OutOfBounds => return RunOutcome::Rejected,
            StepOutcome::Halted => unreachable!("final state handled above"),
        }
    }
}

/// Does the machine accept from the blank width-`n` tape, using the exact
/// per-width budget?
pub fn accepts_at_width(spec: &TmSpec, width: usize) -> Option<Trace> {
    match tm_run(spec, &spec.blank_config(width), spec.default_budget(width)) {
        RunOutcome::Accepted(t) => Some(t),
        _ => None,
    }
}

/// `ab => cd`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rule {
    pub lhs: (Symbol, Symbol),
    pub rhs: (Symbol, Symbol),
}

impl Rule {
    pub fn new(a: &str, b: &str, c: &str, d: &str) -> Rule {
        Rule {
            lhs: (a.into(), b.into()),
            rhs: (c.into(), d.into()),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} => {} {}",
            self.lhs.0, self.lhs.1, self.rhs.0, self.rhs.1
        )
    }
}

pub const ZERO: &str = "0";
pub const ONE: &str = "1";

/// A simple semi-Thue system over an alphabet containing `0` and `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ssts {
    alphabet: BTreeSet<Symbol>,
    rules: BTreeSet<Rule>,
}

impl Ssts {
    pub fn new(
        alphabet: impl IntoIterator<Item = impl Into<Symbol>>,
        rules: impl IntoIterator<Item = Rule>,
    ) -> Result<Ssts, SpecError> {
        let alphabet: BTreeSet<Symbol> = alphabet.into_iter().map(Into::into).collect();
        if let Some(bad) = alphabet.iter().find(|s| !valid_name(s)) {
            return Err(SpecError::BadName(bad.clone()));
        }
        for needed in [ZERO, ONE] {
            if !alphabet.contains(needed) {
                return Err(SpecError::MissingSymbol(needed.into()));
            }
        }
        let rules: BTreeSet<Rule> = rules.into_iter().collect();
        for r in &rules {
            for s in [&r.lhs.0, &r.lhs.1, &r.rhs.0, &r.rhs.1] {
                if !alphabet.contains(s) {
                    return Err(SpecError::UnknownSymbol(s.clone()));
                }
            }
        }
        Ok(Ssts { alphabet, rules })
    }

    pub fn alphabet(&self) -> &BTreeSet<Symbol> {
        &self.alphabet
    }

    /// Rules in canonical order.
    pub fn rules(&self) -> impl Iterator<Item = &Rule> {
        self.rules.iter()
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }
}

impl fmt::Display for Ssts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alpha: Vec<&str> = self.alphabet.iter().map(String::as_str).collect();
        writeln!(f, "alphabet: {}", alpha.join(" "))?;
        for r in &self.rules {
            writeln!(f, "rule: {r}")?;
        }
        Ok(())
    }
}

pub type Word = Vec<Symbol>;

pub fn word(s: &str) -> Word {
    s.chars().map(|c| c.to_string()).collect()
}

pub fn uniform_word(symbol: &str, n: usize) -> Word {
    vec![symbol.to_string(); n]
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("rule `{rule}` does not apply at position {position}")]
pub struct InapplicableRule {
    pub rule: Rule,
    pub position: usize,
}

/// Rewrite cells `position, position+1` (1-based).
pub fn ssts_step(w: &[Symbol], rule: &Rule, position: usize) -> Result<Word, InapplicableRule> {
    let fail = || InapplicableRule {
        rule: rule.clone(),
        position,
    };
    if position == 0 || position + 1 > w.len() {
        return Err(fail());
    }
    let i = position - 1;
    if w[i] != rule.lhs.0 || w[i + 1] != rule.lhs.1 {
        return Err(fail());
    }
    let mut out = w.to_vec();
    out[i] = rule.rhs.0.clone();
    out[i + 1] = rule.rhs.1.clone();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteStep {
    pub rule: Rule,
    pub position: usize,
    pub result: Word,
}

/// A rewrite sequence from `start`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub start: Word,
    pub steps: Vec<RewriteStep>,
}

impl Derivation {
    pub fn width(&self) -> usize {
        self.start.len()
    }

    pub fn last_word(&self) -> &Word {
        self.steps.last().map_or(&self.start, |s| &s.result)
    }

    /// Re-apply every step with [`ssts_step`] and check the recorded words,
    /// that each rule belongs to `system`, and that the run goes `0^n ↠ 1^n`.
    pub fn replays(&self, system: &Ssts) -> bool {
        let n = self.start.len();
        if self.start != uniform_word(ZERO, n) || *self.last_word() != uniform_word(ONE, n) {
            return false;
        }
        let mut cur = self.start.clone();
        for s in &self.steps {
            if !system.rules.contains(&s.rule) {
                return false;
            }
            match ssts_step(&cur, &s.rule, s.position) {
                Ok(next) if next == s.result => cur = next,
                _ => return false,
            }
        }
        true
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.start.join(""))?;
        for s in &self.steps {
            write!(f, " -[{} @{}]-> {}", s.rule, s.position, s.result.join(""))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReachOutcome {
    Found(Derivation),
    /// `bound_hit` is false when the whole reachable set was explored.
    Exhausted {
        bound_hit: bool,
    },
}

/// Breadth-first search for a shortest rewrite `0^n ↠ 1^n` of at most
/// `step_bound` steps.
pub fn ssts_reach(system: &Ssts, n: usize, step_bound: usize) -> ReachOutcome {
    assert!(n >= 1, "word length must be positive");
    let start = uniform_word(ZERO, n);
    let goal = uniform_word(ONE, n);
    let mut parent: HashMap<Word, Option<(Word, Rule, usize)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut frontier = VecDeque::from([(start.clone(), 0usize)]);
    let mut bound_hit = false;
    while let Some((w, depth)) = frontier.pop_front() {
        if w == goal {
            let mut steps = Vec::new();
            let mut cur = w;
            while let Some(Some((prev, rule, position))) = parent.get(&cur).cloned() {
                steps.push(RewriteStep {
                    rule,
                    position,
                    result: cur,
                });
                cur = prev;
            }
            steps.reverse();
            return ReachOutcome::Found(Derivation { start, steps });
        }
        for position in 1..n {
            for rule in &system.rules {
                let Ok(next) = ssts_step(&w, rule, position) else {
                    continue;
                };
                if parent.contains_key(&next) {
                    continue;
                }
                if depth >= step_bound {
                    bound_hit = true;
                    continue;
                }
                parent.insert(next.clone(), Some((w.clone(), rule.clone(), position)));
                frontier.push_back((next, depth + 1));
            }
        }
    }
    ReachOutcome::Exhausted { bound_hit }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct SpecParseError {
    pub line: usize,
    pub message: String,
}

fn split_key(line: &str) -> Option<(&str, &str)> {
    let (k, v) = line.split_once(':')?;
    Some((k.trim(), v.trim()))
}

fn strip_comment(raw: &str) -> &str {
    raw.split('#').next().unwrap_or("").trim()
}

/// Parse the line-based machine format:
///
/// ```text
/// symbols: _ a
/// states: q0 qf
/// initial: q0
/// final: qf
/// delta: q0 _ -> qf _ R
/// ```
pub fn parse_tm(src: &str) -> Result<TmSpec, SpecParseError> {
    let mut symbols = None;
    let mut states = None;
    let mut initial = None;
    let mut final_state = None;
    let mut transitions = Vec::new();
    let mut last_line = 0;
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let err = |message: String| SpecParseError { line, message };
        let text = strip_comment(raw);
        if text.is_empty() {
            continue;
        }
        let (key, value) = split_key(text).ok_or_else(|| err("expected `key: value`".into()))?;
        let words: Vec<String> = value.split_whitespace().map(str::to_string).collect();
        let single = |words: Vec<String>| -> Result<String, SpecParseError> {
            match <[String; 1]>::try_from(words) {
                Ok([w]) => Ok(w),
                Err(_) => Err(err(format!("`{key}` takes exactly one name"))),
            }
        };
        match key {
            "symbols" => symbols = Some(words),
            "states" => states = Some(words),
            "initial" => initial = Some(single(words)?),
            "final" => final_state = Some(single(words)?),
            "delta" => {
                let parts: Vec<&str> = value.split_whitespace().collect();
                let [q, c, "->", q2, c2, mv] = parts.as_slice() else {
                    return Err(err("expected `delta: q c -> q' c' R|L`".into()));
                };
                let moves = match *mv {
                    "R" | "+1" => Move::Right,
                    "L" | "-1" => Move::Left,
                    other => return Err(err(format!("unknown move `{other}`"))),
                };
                transitions.push(Transition {
                    state: q.to_string(),
                    read: c.to_string(),
                    action: Action {
                        next: q2.to_string(),
                        write: c2.to_string(),
                        moves,
                    },
                });
            }
            other => return Err(err(format!("unknown key `{other}`"))),
        }
    }
    let missing = |what: &str| SpecParseError {
        line: last_line,
        message: format!("missing `{what}:` line"),
    };
    let spec = TmSpec::new(
        symbols.ok_or_else(|| missing("symbols"))?,
        states.ok_or_else(|| missing("states"))?,
        initial.ok_or_else(|| missing("initial"))?,
        final_state.ok_or_else(|| missing("final"))?,
        transitions,
    );
    spec.map_err(|e| SpecParseError {
        line: last_line,
        message: e.to_string(),
    })
}

/// Parse `alphabet: 0 1 a` followed by `rule: a b => c d` lines.
pub fn parse_ssts(src: &str) -> Result<Ssts, SpecParseError> {
    let mut alphabet = None;
    let mut rules = Vec::new();
    let mut last_line = 0;
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let err = |message: String| SpecParseError { line, message };
        let text = strip_comment(raw);
        if text.is_empty() {
            continue;
        }
        let (key, value) = split_key(text).ok_or_else(|| err("expected `key: value`".into()))?;
        match key {
            "alphabet" => {
                alphabet = Some(
                    value
                        .split_whitespace()
                        .map(str::to_string)
                        .collect::<Vec<_>>(),
                )
            }
            "rule" => {
                let parts: Vec<&str> = value.split_whitespace().collect();
                let [a, b, "=>", c, d] = parts.as_slice() else {
                    return Err(err("expected `rule: a b => c d`".into()));
                };
                rules.push(Rule::new(a, b, c, d));
            }
            other => return Err(err(format!("unknown key `{other}`"))),
        }
    }
    let alphabet = alphabet.ok_or(SpecParseError {
        line: last_line,
        message: "missing `alphabet:` line".into(),
    })?;
    Ssts::new(alphabet, rules).map_err(|e| SpecParseError {
        line: last_line,
        message: e.to_string(),
    })
}

/// The machines used throughout the tests and examples.
pub mod catalog {
    use super::*;

    /// `δ(q0, _) = (qf, _, +1)`: accepts immediately.
    pub fn tm1() -> TmSpec {
        parse_tm("symbols: _\nstates: q0 qf\ninitial: q0\nfinal: qf\ndelta: q0 _ -> qf _ R\n")
            .expect("tm1 is well-formed")
    }

    /// `δ(q0, _) = (q0, _, +1)`: runs off the right end of every tape.
    pub fn tm2() -> TmSpec {
        parse_tm("symbols: _\nstates: q0 qf\ninitial: q0\nfinal: qf\ndelta: q0 _ -> q0 _ R\n")
            .expect("tm2 is well-formed")
    }

    /// `{00 => 11}`.
    pub fn ssts_pairs() -> Ssts {
        Ssts::new([ZERO, ONE], [Rule::new("0", "0", "1", "1")]).expect("well-formed")
    }

    /// `{00 => 01}`: the first cell never becomes 1.
    pub fn ssts_stuck() -> Ssts {
        Ssts::new([ZERO, ONE], [Rule::new("0", "0", "0", "1")]).expect("well-formed")
    }
}

#[cfg(test)]
mod tests {
    use super::catalog::*;
    use super::*;

    fn cfg(state: &str, position: usize, tape: &str) -> Config {
        Config {
            state: state.into(),
            position,
            tape: tape.chars().map(|c| c.to_string()).collect(),
        }
    }

    #[test]
    fn step_outcomes() {
        match tm_step(&tm1(), &cfg("q0", 1, "___")) {
            StepOutcome::Next { config, .. } => assert_eq!(config, cfg("qf", 2, "___")),
            other => panic!("{other:?}"),
        }
        assert_eq!(tm_step(&tm1(), &cfg("qf", 2, "___")), StepOutcome::Halted);
        assert_eq!(
            tm_step(&tm2(), &cfg("q0", 3, "___")),
            StepOutcome::OutOfBounds
        );
    }

    #[test]
    fn runs() {
        match tm_run(&tm1(), &cfg("q0", 1, "___"), 10) {
            RunOutcome::Accepted(t) => {
                assert_eq!(t.len(), 2);
                assert!(t.replays(&tm1()));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            tm_run(&tm2(), &cfg("q0", 1, "___"), 10),
            RunOutcome::Rejected
        );
        match tm_run(&tm1(), &cfg("qf", 1, "___"), 10) {
            RunOutcome::Accepted(t) => assert_eq!(t.len(), 1),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            tm_run(&tm2(), &cfg("q0", 1, "___"), 1),
            RunOutcome::BudgetExhausted
        );
    }

    #[test]
    fn looping_machine_exhausts_budget() {
        let spec = parse_tm(
            "symbols: _\nstates: q0 q1 qf\ninitial: q0\nfinal: qf\n\
             delta: q0 _ -> q1 _ R\ndelta: q1 _ -> q0 _ L\n",
        )
        .unwrap();
        let budget = spec.default_budget(3);
        assert_eq!(budget, 3 * 3);
        assert_eq!(
            tm_run(&spec, &spec.blank_config(3), budget),
            RunOutcome::BudgetExhausted
        );
    }

    #[test]
    fn spec_validation() {
        let t = |q: &str, c: &str, q2: &str, c2: &str| Transition {
            state: q.into(),
            read: c.into(),
            action: Action {
                next: q2.into(),
                write: c2.into(),
                moves: Move::Right,
            },
        };
        assert_eq!(
            TmSpec::new(["a"], ["q"], "q", "q", []),
            Err(SpecError::NoBlank)
        );
        assert!(matches!(
            TmSpec::new(["_"], ["q0", "qf"], "q0", "qf", []),
            Err(SpecError::MissingTransition(..))
        ));
        assert!(matches!(
            TmSpec::new(
                ["_"],
                ["q0", "qf"],
                "q0",
                "qf",
                [t("q0", "_", "qf", "_"), t("qf", "_", "qf", "_")]
            ),
            Err(SpecError::FinalHasTransition(_))
        ));
        assert!(matches!(
            TmSpec::new(["_"], ["q0", "qf"], "q0", "qf", [t("q0", "_", "qx", "_")]),
            Err(SpecError::UnknownState(_))
        ));
        assert!(matches!(
            TmSpec::new(["_", "a@b"], ["q0"], "q0", "q0", []),
            Err(SpecError::BadName(_))
        ));
    }

    #[test]
    fn rewriting() {
        let r = Rule::new("0", "0", "1", "1");
        assert_eq!(ssts_step(&word("0000"), &r, 1).unwrap(), word("1100"));
        assert_eq!(ssts_step(&word("1100"), &r, 3).unwrap(), word("1111"));
        assert!(ssts_step(&word("1100"), &r, 1).is_err());
        assert!(ssts_step(&word("1100"), &r, 4).is_err());
    }

    #[test]
    fn reachability() {
        match ssts_reach(&ssts_pairs(), 4, 100) {
            ReachOutcome::Found(d) => {
                assert_eq!(d.steps.len(), 2);
                assert!(d.replays(&ssts_pairs()));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            ssts_reach(&ssts_pairs(), 3, 100),
            ReachOutcome::Exhausted { bound_hit: false }
        );
        for n in 1..=6 {
            assert!(matches!(
                ssts_reach(&ssts_stuck(), n, 100),
                ReachOutcome::Exhausted { .. }
            ));
        }
        assert_eq!(
            ssts_reach(&ssts_pairs(), 4, 1),
            ReachOutcome::Exhausted { bound_hit: true }
        );
    }

    #[test]
    fn file_formats() {
        let text = "# a machine\nsymbols: _ a\nstates: q0 qf\ninitial: q0\nfinal: qf\n\
                    delta: q0 _ -> q0 a R\ndelta: q0 a -> qf a L  # done\n";
        let spec = parse_tm(text).unwrap();
        assert_eq!(parse_tm(&spec.to_string()).unwrap(), spec);
        let e = parse_tm("symbols: _\nstates q0\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_tm("symbols: _\ndelta: q0 _ -> q1 _ X\n").unwrap_err();
        assert_eq!(e.line, 2);

        let sys = parse_ssts("alphabet: 0 1 a\nrule: 0 0 => a 1\nrule: a 1 => 1 1\n").unwrap();
        assert_eq!(sys.rule_count(), 2);
        assert_eq!(parse_ssts(&sys.to_string()).unwrap(), sys);
        assert!(parse_ssts("alphabet: 0 a\n").is_err());
        assert_eq!(
            parse_ssts("alphabet: 0 1\nrule: 0 0 -> 1 1\n")
                .unwrap_err()
                .line,
            2
        );
    }
}
