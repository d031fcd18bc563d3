//! Syntax-directed derivability for β-normal terms, with replayable
//! derivation transcripts.
//!
//! The rules are Ax, →I, →E, ∩I and ∩E with no subtyping and no top type.
//! For a normal term the last rules of any derivation are determined by the
//! term and goal shape:
//!
//! * an intersection goal is split member-wise (∩I),
//! * an abstraction against an arrow extends the context (→I),
//! * a spine `x a1 .. ak` is typed by walking the type of `x`: at every step
//!   ∩E selects one member, and →E consumes one argument. The spine has a
//!   non-intersection type ρ iff some walk ends in ρ after `k` arguments.
//!
//! Members are tried in canonical order, depth first.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::terms::{parse_term, Term};
use crate::types::{parse_type, Type};

/// A finite map from variable names to canonical types.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Context(BTreeMap<String, Type>);

impl Context {
    pub fn new() -> Context {
        Context::default()
    }

    /// Bind `name`, replacing (shadowing) any existing binding.
    pub fn insert(&mut self, name: impl Into<String>, ty: Type) {
        self.0.insert(name.into(), ty);
    }

    pub fn with(&self, name: impl Into<String>, ty: Type) -> Context {
        let mut c = self.clone();
        c.insert(name, ty);
        c
    }

    pub fn get(&self, name: &str) -> Option<&Type> {
        self.0.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.0.contains_key(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Type)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Short stable digest used to tag transcript lines.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        for (name, ty) in &self.0 {
            h.update(name.as_bytes());
            h.update(b":");
            h.update(ty.to_string().as_bytes());
            h.update(b";");
        }
        h.finalize()[..8]
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

impl FromIterator<(String, Type)> for Context {
    fn from_iter<I: IntoIterator<Item = (String, Type)>>(iter: I) -> Context {
        Context(iter.into_iter().collect())
    }
}

impl fmt::Debug for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k} : {v}")?;
        }
        f.write_str("}")
    }
}

/// One binding per line, `name : type`.
impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.0 {
            writeln!(f, "{k} : {v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum ContextParseError {
    #[error("line {line}: expected `name : type`")]
    MissingColon { line: usize },
    #[error("line {line}: invalid variable name `{name}`")]
    BadName { line: usize, name: String },
    #[error("line {line}, column {column}: {message}")]
    Type {
        line: usize,
        column: usize,
        message: String,
    },
}

/// Parse a context file: `name : type` per line, `#` starts a comment.
pub fn parse_context(src: &str) -> Result<Context, ContextParseError> {
    let mut ctx = Context::new();
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let (name, ty) = text
            .split_once(':')
            .ok_or(ContextParseError::MissingColon { line })?;
        let name = name.trim();
        if parse_term(name).ok() != Some(Term::var(name)) {
            return Err(ContextParseError::BadName {
                line,
                name: name.to_string(),
            });
        }
        let ty = parse_type(ty).map_err(|e| {
            let start = raw.find(':').map_or(0, |c| raw[..=c].chars().count());
            ContextParseError::Type {
                line,
                column: start + e.column,
                message: e.message,
            }
        })?;
        ctx.insert(name, ty);
    }
    Ok(ctx)
}

/// A typing obligation `context ⊢ ? : goal`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Judgment {
    pub context: Context,
    pub goal: Type,
}

impl Judgment {
    pub fn new(context: Context, goal: Type) -> Judgment {
        Judgment { context, goal }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Ax,
    ArrowIntro,
    ArrowElim,
    InterIntro,
    InterElim,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Ax => "AX",
            Rule::ArrowIntro => "ARR_I",
            Rule::ArrowElim => "ARR_E",
            Rule::InterIntro => "INT_I",
            Rule::InterElim => "INT_E",
        }
    }

    fn premise_count(self) -> usize {
        match self {
            Rule::Ax => 0,
            Rule::ArrowIntro | Rule::InterElim => 1,
            Rule::ArrowElim | Rule::InterIntro => 2,
        }
    }

    fn from_name(s: &str) -> Option<Rule> {
        Some(match s {
            "AX" => Rule::Ax,
            "ARR_I" => Rule::ArrowIntro,
            "ARR_E" => Rule::ArrowElim,
            "INT_I" => Rule::InterIntro,
            "INT_E" => Rule::InterElim,
            _ => return None,
        })
    }
}

/// A derivation tree; every node is one rule instance.
#[derive(Clone, Debug)]
pub struct Derivation {
    pub rule: Rule,
    pub context: Arc<Context>,
    pub term: Term,
    pub goal: Type,
    pub premises: Vec<Derivation>,
}

impl Derivation {
    /// Pre-order rule listing.
    pub fn transcript(&self) -> Transcript {
        let mut lines = Vec::new();
        let mut digests: Vec<(*const Context, String)> = Vec::new();
        self.collect(&mut lines, &mut digests);
        Transcript { lines }
    }

    fn collect(&self, out: &mut Vec<TranscriptLine>, digests: &mut Vec<(*const Context, String)>) {
        let key = Arc::as_ptr(&self.context);
        let digest = match digests.iter().find(|(k, _)| *k == key) {
            Some((_, d)) => d.clone(),
            None => {
                let d = self.context.digest();
                digests.push((key, d.clone()));
                d
            }
        };
        out.push(TranscriptLine {
            rule: self.rule,
            context_digest: digest,
            term: self.term.clone(),
            goal: self.goal.clone(),
        });
        for p in &self.premises {
            p.collect(out, digests);
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self
            .premises
            .iter()
            .map(Derivation::node_count)
            .sum::<usize>()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CheckError {
    #[error("term `{0}` is not in β-normal form")]
    NotNormal(Term),
}

/// Decide `ctx ⊢ m : goal`.
pub fn check(ctx: &Context, m: &Term, goal: &Type) -> Result<bool, CheckError> {
    derive(ctx, m, goal).map(|d| d.is_some())
}

/// Decide `ctx ⊢ m : goal`, returning a derivation when one exists.
pub fn derive(ctx: &Context, m: &Term, goal: &Type) -> Result<Option<Derivation>, CheckError> {
    if !m.is_beta_normal() {
        return Err(CheckError::NotNormal(m.clone()));
    }
    Ok(derive_normal(&Arc::new(ctx.clone()), m, goal))
}

/// The same term against every judgment. An empty list holds vacuously.
pub fn check_multi(judgments: &[Judgment], m: &Term) -> Result<bool, CheckError> {
    derive_multi(judgments, m).map(|d| d.is_some())
}

pub fn derive_multi(
    judgments: &[Judgment],
    m: &Term,
) -> Result<Option<Vec<Derivation>>, CheckError> {
    if !m.is_beta_normal() {
        return Err(CheckError::NotNormal(m.clone()));
    }
    let mut out = Vec::with_capacity(judgments.len());
    for j in judgments {
        match derive_normal(&Arc::new(j.context.clone()), m, &j.goal) {
            Some(d) => out.push(d),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

fn derive_normal(ctx: &Arc<Context>, m: &Term, goal: &Type) -> Option<Derivation> {
    if goal.is_intersection() {
        return intro_intersection(ctx, m, goal.members());
    }
    match m {
        Term::Abs(x, body) => {
            let (source, target) = goal.as_arrow()?;
            let inner = Arc::new(ctx.with(x.clone(), source.clone()));
            let premise = derive_normal(&inner, body, target)?;
            Some(Derivation {
                rule: Rule::ArrowIntro,
                context: ctx.clone(),
                term: m.clone(),
                goal: goal.clone(),
                premises: vec![premise],
            })
        }
        _ => {
            let (head, args) = m.spine_decompose().ok()?;
            let head_ty = ctx.get(head)?.clone();
            let ax = Derivation {
                rule: Rule::Ax,
                context: ctx.clone(),
                term: Term::var(head),
                goal: head_ty,
                premises: vec![],
            };
            walk_spine(ctx, ax, &args, 0, goal)
        }
    }
}

/// Binary ∩I over the canonical member list: first member, then the rest.
fn intro_intersection(ctx: &Arc<Context>, m: &Term, members: &[Type]) -> Option<Derivation> {
    let (first, rest) = members.split_first()?;
    let left = derive_normal(ctx, m, first)?;
    if rest.is_empty() {
        return Some(left);
    }
    let right = intro_intersection(ctx, m, rest)?;
    Some(Derivation {
        rule: Rule::InterIntro,
        context: ctx.clone(),
        term: m.clone(),
        goal: Type::intersection(members.iter().cloned()),
        premises: vec![left, right],
    })
}

/// Can some ∩E/→E walk from `ty` consume `remaining` arguments and end in `goal`?
pub(crate) fn reachable(ty: &Type, remaining: usize, goal: &Type) -> bool {
    if remaining == 0 {
        return ty.members().contains(goal);
    }
    ty.members().iter().any(|m| match m.as_arrow() {
        Some((_, t)) => reachable(t, remaining - 1, goal),
        None => false,
    })
}

fn walk_spine(
    ctx: &Arc<Context>,
    prefix: Derivation,
    args: &[&Term],
    idx: usize,
    goal: &Type,
) -> Option<Derivation> {
    let cur = prefix.goal.clone();
    for member in cur.members() {
        let selected = if cur.is_intersection() {
            Derivation {
                rule: Rule::InterElim,
                context: ctx.clone(),
                term: prefix.term.clone(),
                goal: member.clone(),
                premises: vec![prefix.clone()],
            }
        } else {
            prefix.clone()
        };
        if idx == args.len() {
            if member == goal {
                return Some(selected);
            }
            continue;
        }
        let Some((source, target)) = member.as_arrow() else {
            continue;
        };
        if !reachable(target, args.len() - idx - 1, goal) {
            continue;
        }
        let Some(arg_d) = derive_normal(ctx, args[idx], source) else {
            continue;
        };
        let applied = Derivation {
            rule: Rule::ArrowElim,
            context: ctx.clone(),
            term: Term::app(selected.term.clone(), args[idx].clone()),
            goal: target.clone(),
            premises: vec![selected, arg_d],
        };
        if let Some(d) = walk_spine(ctx, applied, args, idx + 1, goal) {
            return Some(d);
        }
    }
    None
}

/// One rule application: `RULE  context-digest  term  goal`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranscriptLine {
    pub rule: Rule,
    pub context_digest: String,
    pub term: Term,
    pub goal: Type,
}

impl fmt::Display for TranscriptLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}  {}  {}  {}",
            self.rule.name(),
            self.context_digest,
            self.term,
            self.goal
        )
    }
}

/// A derivation flattened in pre-order. Each rule has a fixed number of
/// premises, so the tree is recoverable from the line sequence.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Transcript {
    pub lines: Vec<TranscriptLine>,
}

impl fmt::Display for Transcript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("transcript line {line}: {message}")]
pub struct ReplayError {
    pub line: usize,
    pub message: String,
}

impl Transcript {
    pub fn parse(src: &str) -> Result<Transcript, ReplayError> {
        let mut lines = Vec::new();
        for (i, raw) in src.lines().enumerate() {
            if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
                continue;
            }
            let err = |message: String| ReplayError {
                line: i + 1,
                message,
            };
            let fields: Vec<&str> = raw.trim().splitn(4, "  ").collect();
            if fields.len() != 4 {
                return Err(err("expected four fields separated by two spaces".into()));
            }
            let rule = Rule::from_name(fields[0])
                .ok_or_else(|| err(format!("unknown rule `{}`", fields[0])))?;
            let term = parse_term(fields[2]).map_err(|e| err(e.to_string()))?;
            let goal = parse_type(fields[3]).map_err(|e| err(e.to_string()))?;
            lines.push(TranscriptLine {
                rule,
                context_digest: fields[1].to_string(),
                term,
                goal,
            });
        }
        Ok(Transcript { lines })
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Re-check every step against the typing rules, starting from `ctx`,
    /// and require the root to conclude `ctx ⊢ term : goal`.
    pub fn verify(&self, ctx: &Context, term: &Term, goal: &Type) -> Result<(), ReplayError> {
        let mut replay = Replay {
            lines: &self.lines,
            pos: 0,
        };
        let (t, g) = replay.node(ctx)?;
        if replay.pos != self.lines.len() {
            return Err(replay.fail(replay.pos, "trailing lines after the root derivation"));
        }
        if &t != term {
            return Err(replay.fail(0, format!("root term `{t}` differs from `{term}`")));
        }
        if &g != goal {
            return Err(replay.fail(0, format!("root goal `{g}` differs from `{goal}`")));
        }
        Ok(())
    }
}

struct Replay<'a> {
    lines: &'a [TranscriptLine],
    pos: usize,
}

impl Replay<'_> {
    fn fail(&self, idx: usize, message: impl Into<String>) -> ReplayError {
        ReplayError {
            line: idx + 1,
            message: message.into(),
        }
    }

    /// Replay the subtree at the cursor under `ctx`; returns its conclusion.
    fn node(&mut self, ctx: &Context) -> Result<(Term, Type), ReplayError> {
        let idx = self.pos;
        let line = self
            .lines
            .get(idx)
            .ok_or_else(|| self.fail(idx, "transcript ends before the derivation is complete"))?;
        self.pos += 1;
        if line.context_digest != ctx.digest() {
            return Err(self.fail(idx, "context digest does not match the derived context"));
        }
        let mut premises = Vec::with_capacity(line.rule.premise_count());
        let extended;
        let premise_ctx = match (&line.rule, &line.term, line.goal.as_arrow()) {
            (Rule::ArrowIntro, Term::Abs(x, _), Some((s, _))) => {
                extended = ctx.with(x.clone(), s.clone());
                &extended
            }
            (Rule::ArrowIntro, ..) => {
                return Err(self.fail(idx, "ARR_I needs an abstraction typed by an arrow"))
            }
            _ => ctx,
        };
        for _ in 0..line.rule.premise_count() {
            premises.push(self.node(premise_ctx)?);
        }
        let ok = match line.rule {
            Rule::Ax => match &line.term {
                Term::Var(x) => ctx.get(x) == Some(&line.goal),
                _ => false,
            },
            Rule::ArrowIntro => {
                let Term::Abs(_, body) = &line.term else {
                    unreachable!()
                };
                let (_, target) = line.goal.as_arrow().expect("checked above");
                premises[0].0 == **body && &premises[0].1 == target
            }
            Rule::ArrowElim => match &line.term {
                Term::App(f, a) => {
                    let (ft, fty) = &premises[0];
                    let (at, aty) = &premises[1];
                    ft == &**f
                        && at == &**a
                        && fty
                            .as_arrow()
                            .is_some_and(|(s, t)| s == aty && t == &line.goal)
                }
                _ => false,
            },
            Rule::InterIntro => {
                premises.iter().all(|(t, _)| t == &line.term)
                    && line.goal.is_intersection()
                    && Type::intersection([premises[0].1.clone(), premises[1].1.clone()])
                        == line.goal
            }
            Rule::InterElim => {
                let (t, wider) = &premises[0];
                t == &line.term
                    && wider.is_intersection()
                    && wider != &line.goal
                    && line
                        .goal
                        .members()
                        .iter()
                        .all(|m| wider.members().contains(m))
            }
        };
        if !ok {
            return Err(self.fail(
                idx,
                format!(
                    "{} does not justify `{}  :  {}`",
                    line.rule.name(),
                    line.term,
                    line.goal
                ),
            ));
        }
        Ok((line.term.clone(), line.goal.clone()))
    }
}
