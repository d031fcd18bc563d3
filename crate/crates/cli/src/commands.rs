use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use intertype::checker::{derive, derive_multi, parse_context, Context, Judgment, Transcript};
use intertype::encoder::{
    configuration_family, encode_ssts, encode_tau_star_tm, word_family, MIN_OUTER_WIDTH,
};
use intertype::machines::{
    parse_ssts, parse_tm, ssts_reach, tm_run, uniform_word, ReachOutcome, RunOutcome, Ssts, TmSpec,
    ZERO,
};
use intertype::pipeline::{plural, verify_ssts, verify_tm, VerifyReport};
use intertype::search::{inhabit_multi, SearchConfig, SearchResult};
use intertype::terms::{parse_term, Term};
use intertype::types::{parse_type, Type};
use intertype::witness::{synthesize_ssts, synthesize_tm, WitnessReport};
use serde_json::Value;

use crate::manifest::InputHasher;
use crate::Command;

/// What a subcommand produced: standard output, a short outcome tag and the
/// exit code (0 success/found, 1 rejected/exhausted).
pub struct Report {
    pub stdout: String,
    pub outcome: String,
    pub code: u8,
}

impl Report {
    fn new(stdout: String, outcome: &str, ok: bool) -> Report {
        Report {
            stdout,
            outcome: outcome.to_string(),
            code: if ok { 0 } else { 1 },
        }
    }
}

pub struct Invocation {
    pub subcommand: &'static str,
    pub hasher: InputHasher,
    pub parameters: BTreeMap<&'static str, Value>,
}

impl Invocation {
    pub fn new(subcommand: &'static str) -> Invocation {
        Invocation {
            subcommand,
            hasher: InputHasher::default(),
            parameters: BTreeMap::new(),
        }
    }

    fn param(&mut self, key: &'static str, value: impl Into<Value>) {
        self.parameters.insert(key, value.into());
    }

    fn read(&mut self, path: &Path) -> Result<String, String> {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        self.hasher
            .feed(&path.display().to_string(), text.as_bytes());
        Ok(text)
    }

    fn inline(&mut self, label: &str, text: &str) {
        self.hasher.feed(label, text.as_bytes());
    }
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::EncodeTm { .. } => "encode-tm",
            Command::EncodeSsts { .. } => "encode-ssts",
            Command::SimulateTm { .. } => "simulate-tm",
            Command::RewriteSsts { .. } => "rewrite-ssts",
            Command::Synthesize { .. } => "synthesize",
            Command::Check { .. } => "check",
            Command::Search { .. } => "search",
            Command::Verify { .. } => "verify",
            Command::Rank { .. } => "rank",
        }
    }
}

enum Model {
    Tm(TmSpec),
    Ssts(Ssts),
}

fn located(path: &Path, e: impl std::fmt::Display) -> String {
    format!("{}: {e}", path.display())
}

fn load_tm(inv: &mut Invocation, path: &Path) -> Result<TmSpec, String> {
    parse_tm(&inv.read(path)?).map_err(|e| located(path, e))
}

fn load_ssts(inv: &mut Invocation, path: &Path) -> Result<Ssts, String> {
    parse_ssts(&inv.read(path)?).map_err(|e| located(path, e))
}

/// A file whose first key is `alphabet` is a rewriting system, anything else
/// a machine.
fn load_model(inv: &mut Invocation, path: &Path) -> Result<Model, String> {
    let text = inv.read(path)?;
    let first_key = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .and_then(|l| l.split(':').next())
        .map(str::trim);
    if first_key == Some("alphabet") {
        parse_ssts(&text)
            .map(Model::Ssts)
            .map_err(|e| located(path, e))
    } else {
        parse_tm(&text).map(Model::Tm).map_err(|e| located(path, e))
    }
}

fn parse_goal(inv: &mut Invocation, src: &str) -> Result<Type, String> {
    inv.inline("type", src);
    parse_type(src).map_err(|e| format!("type `{src}`: {e}"))
}

pub fn run(command: &Command, inv: &mut Invocation) -> Result<Report, String> {
    match command {
        Command::EncodeTm { spec } => {
            let tm = load_tm(inv, spec)?;
            let bundle = encode_tau_star_tm(&tm).map_err(|e| e.to_string())?;
            Ok(Report::new(bundle.to_string(), "encoded", true))
        }
        Command::EncodeSsts { spec } => {
            let sys = load_ssts(inv, spec)?;
            let bundle = encode_ssts(&sys).map_err(|e| e.to_string())?;
            Ok(Report::new(bundle.to_string(), "encoded", true))
        }
        Command::SimulateTm {
            spec,
            width,
            max_steps,
        } => simulate(inv, spec, *width, *max_steps),
        Command::RewriteSsts {
            spec,
            width,
            step_bound,
        } => rewrite(inv, spec, *width, *step_bound),
        Command::Synthesize {
            spec,
            width,
            transcript,
        } => synthesize(inv, spec, *width, *transcript),
        Command::Check {
            ctx,
            term,
            goal,
            transcript,
            replay,
        } => check(inv, ctx, term, goal, *transcript, replay.as_deref()),
        Command::Search {
            ty,
            from_tm,
            from_ssts,
            depth,
            width,
            max_branch,
            transcript,
        } => {
            inv.param("depth", *depth);
            inv.param("width", *width);
            inv.param("max_branch", *max_branch);
            let judgments = if let Some(src) = ty {
                if width.is_some() {
                    return Err("--width requires --from-tm or --from-ssts".into());
                }
                vec![Judgment::new(Context::new(), parse_goal(inv, src)?)]
            } else if let Some(path) = from_tm {
                tm_judgments(&load_tm(inv, path)?, *width)?
            } else if let Some(path) = from_ssts {
                ssts_judgments(&load_ssts(inv, path)?, *width)?
            } else {
                return Err("nothing to search: give a type, --from-tm or --from-ssts".into());
            };
            let cfg = SearchConfig {
                max_depth: *depth,
                max_branch: *max_branch,
            };
            search(&judgments, cfg, *transcript)
        }
        Command::Verify {
            spec,
            max_width,
            max_steps,
            transcript,
        } => {
            inv.param("max_width", *max_width);
            inv.param("max_steps", *max_steps);
            let report = match load_model(inv, spec)? {
                Model::Tm(tm) => verify_tm(&tm, *max_width, *max_steps),
                Model::Ssts(sys) => verify_ssts(&sys, *max_width, max_steps.map(|s| s as usize)),
            }
            .map_err(|e| e.to_string())?;
            Ok(verify_output(&report, *transcript))
        }
        Command::Rank { ty } => {
            let t = parse_goal(inv, ty)?;
            let out = format!("type: {t}\nrank: {}\norder: {}\n", t.rank(), t.order());
            Ok(Report::new(out, "computed", true))
        }
    }
}

/// With a width, the blank-tape cell family `Γ_1 ⊢ ⟨q0,_⟩, Γ_i ⊢ _`;
/// otherwise `⊢ tau_star`.
fn tm_judgments(tm: &TmSpec, width: Option<usize>) -> Result<Vec<Judgment>, String> {
    let bundle = encode_tau_star_tm(tm).map_err(|e| e.to_string())?;
    match width {
        Some(n) => {
            configuration_family(&bundle, &tm.blank_config(n), false).map_err(|e| e.to_string())
        }
        None => Ok(vec![Judgment::new(Context::new(), bundle.tau_star)]),
    }
}

/// With a width, the `0^n` cell family; otherwise `⊢ tau_star`.
fn ssts_judgments(sys: &Ssts, width: Option<usize>) -> Result<Vec<Judgment>, String> {
    let bundle = encode_ssts(sys).map_err(|e| e.to_string())?;
    match width {
        Some(n) => word_family(&bundle, &uniform_word(ZERO, n), false).map_err(|e| e.to_string()),
        None => Ok(vec![Judgment::new(Context::new(), bundle.tau_star)]),
    }
}

fn simulate(
    inv: &mut Invocation,
    spec: &Path,
    width: usize,
    max_steps: Option<u64>,
) -> Result<Report, String> {
    let tm = load_tm(inv, spec)?;
    if width == 0 {
        return Err("width must be positive".into());
    }
    let budget = max_steps.unwrap_or_else(|| tm.default_budget(width));
    inv.param("width", width);
    inv.param("max_steps", budget);
    let mut out = String::new();
    let report = match tm_run(&tm, &tm.blank_config(width), budget) {
        RunOutcome::Accepted(trace) => {
            for (i, c) in trace.configs.iter().enumerate() {
                match trace.steps.get(i) {
                    Some(t) => writeln!(out, "{c}    via {t}"),
                    None => writeln!(out, "{c}"),
                }
                .unwrap();
            }
            writeln!(
                out,
                "ACCEPTED in {} step{}",
                trace.steps.len(),
                plural(trace.steps.len())
            )
            .unwrap();
            Report::new(out, "accepted", true)
        }
        RunOutcome::Rejected => Report::new(
            "REJECTED (head leaves the tape)\n".into(),
            "rejected",
            false,
        ),
        RunOutcome::BudgetExhausted => Report::new(
            format!("BUDGET EXHAUSTED after {budget} steps\n"),
            "budget-exhausted",
            false,
        ),
    };
    Ok(report)
}

fn rewrite(
    inv: &mut Invocation,
    spec: &Path,
    width: usize,
    step_bound: Option<usize>,
) -> Result<Report, String> {
    let sys = load_ssts(inv, spec)?;
    if width == 0 {
        return Err("width must be positive".into());
    }
    let bound = step_bound.unwrap_or_else(|| sys.alphabet().len().saturating_pow(width as u32));
    inv.param("width", width);
    inv.param("step_bound", bound);
    Ok(match ssts_reach(&sys, width, bound) {
        ReachOutcome::Found(d) => Report::new(
            format!(
                "{d}\nREACHED in {} step{}\n",
                d.steps.len(),
                plural(d.steps.len())
            ),
            "reached",
            true,
        ),
        ReachOutcome::Exhausted { bound_hit } => {
            let why = if bound_hit {
                "step bound hit"
            } else {
                "reachable set explored"
            };
            Report::new(format!("EXHAUSTED ({why})\n"), "exhausted", false)
        }
    })
}

fn witness_output(w: &WitnessReport, transcript: bool) -> String {
    let mut out = format!(
        "width: {}\nwitness: {}\nchecked: {}\n",
        w.width, w.term, w.checked
    );
    if transcript {
        for j in &w.judgments {
            if let Ok(Some(d)) = derive(&j.context, &w.term, &j.goal) {
                out.push_str(&d.transcript().to_string());
            }
        }
    }
    out
}

fn synthesize(
    inv: &mut Invocation,
    spec: &Path,
    width: usize,
    transcript: bool,
) -> Result<Report, String> {
    inv.param("width", width);
    let model = load_model(inv, spec)?;
    for n in MIN_OUTER_WIDTH..=width {
        let found = match &model {
            Model::Tm(tm) => synthesize_tm(tm, n).map_err(|e| e.to_string())?,
            Model::Ssts(sys) => {
                let bound = sys.alphabet().len().saturating_pow(n as u32);
                match ssts_reach(sys, n, bound) {
                    ReachOutcome::Found(d) => {
                        Some(synthesize_ssts(sys, &d).map_err(|e| e.to_string())?)
                    }
                    ReachOutcome::Exhausted { .. } => None,
                }
            }
        };
        if let Some(w) = found {
            let ok = w.checked;
            return Ok(Report::new(
                witness_output(&w, transcript),
                if ok { "synthesized" } else { "check-failed" },
                ok,
            ));
        }
    }
    Ok(Report::new(
        format!("no accepting run at widths {MIN_OUTER_WIDTH}..={width}\n"),
        "no-acceptance",
        false,
    ))
}

fn check(
    inv: &mut Invocation,
    ctx_paths: &[std::path::PathBuf],
    term: &str,
    goals: &[String],
    transcript: bool,
    replay: Option<&Path>,
) -> Result<Report, String> {
    let mut contexts = Vec::new();
    for p in ctx_paths {
        contexts.push(parse_context(&inv.read(p)?).map_err(|e| located(p, e))?);
    }
    if contexts.is_empty() {
        contexts.push(Context::new());
    }
    inv.inline("term", term);
    let m: Term = parse_term(term).map_err(|e| format!("term `{term}`: {e}"))?;
    let goals = goals
        .iter()
        .map(|g| parse_goal(inv, g))
        .collect::<Result<Vec<_>, _>>()?;
    let judgments: Vec<Judgment> = if contexts.len() == 1 {
        goals
            .into_iter()
            .map(|g| Judgment::new(contexts[0].clone(), g))
            .collect()
    } else if contexts.len() == goals.len() {
        contexts
            .into_iter()
            .zip(goals)
            .map(|(c, g)| Judgment::new(c, g))
            .collect()
    } else {
        return Err(format!(
            "{} contexts but {} goals: give one context or one per goal",
            contexts.len(),
            goals.len()
        ));
    };
    inv.param("judgments", judgments.len());

    if let Some(path) = replay {
        if judgments.len() != 1 {
            return Err("--replay needs exactly one judgment".into());
        }
        let text = inv.read(path)?;
        let t = Transcript::parse(&text).map_err(|e| located(path, e))?;
        let j = &judgments[0];
        return Ok(match t.verify(&j.context, &m, &j.goal) {
            Ok(()) => Report::new(
                format!("replayed {} step{}\n", t.len(), plural(t.len())),
                "replayed",
                true,
            ),
            Err(e) => Report::new(format!("replay failed: {e}\n"), "replay-failed", false),
        });
    }

    let derivations = derive_multi(&judgments, &m).map_err(|e| e.to_string())?;
    Ok(match derivations {
        Some(ds) => {
            let mut out = String::from("true\n");
            if transcript {
                push_transcripts(&mut out, ds.iter().map(|d| d.transcript()));
            }
            Report::new(out, "derivable", true)
        }
        None => Report::new("false\n".into(), "not-derivable", false),
    })
}

fn push_transcripts(out: &mut String, transcripts: impl ExactSizeIterator<Item = Transcript>) {
    let n = transcripts.len();
    for (i, t) in transcripts.enumerate() {
        if n > 1 {
            writeln!(out, "# judgment {}", i + 1).unwrap();
        }
        out.push_str(&t.to_string());
    }
}

fn search(judgments: &[Judgment], cfg: SearchConfig, transcript: bool) -> Result<Report, String> {
    let result = inhabit_multi(judgments, cfg).map_err(|e| e.to_string())?;
    Ok(match result {
        SearchResult::Found { term, transcripts } => {
            let mut out = format!("FOUND {term}\n");
            if transcript {
                push_transcripts(&mut out, transcripts.into_iter());
            }
            Report::new(out, "found", true)
        }
        SearchResult::Exhausted { depth_limit_hit } => {
            let out = if depth_limit_hit {
                format!("EXHAUSTED at depth {}\n", cfg.max_depth)
            } else {
                format!(
                    "EXHAUSTED at depth {} (search space finite)\n",
                    cfg.max_depth
                )
            };
            Report::new(out, "exhausted", false)
        }
    })
}

fn verify_output(report: &VerifyReport, transcript: bool) -> Report {
    let mut out = report.to_string();
    if let Some(w) = &report.success {
        writeln!(out, "tau_star: {}", w.tau_star).unwrap();
        if transcript {
            if let Some(t) = &w.transcript {
                out.push_str(&t.to_string());
            }
        }
    }
    if report.succeeded() {
        Report::new(out, "verified", true)
    } else if report.success.is_some() {
        Report::new(out, "check-failed", false)
    } else {
        Report::new(out, "no-acceptance", false)
    }
}
