//! End-to-end runs: simulate at increasing widths, and on the first success
//! synthesize a closed witness and check it against `tau_star`.

use std::fmt;

use crate::checker::{derive, Context, Transcript};
use crate::encoder::{encode_ssts, encode_tau_star_tm, MIN_OUTER_WIDTH};
use crate::machines::{ssts_reach, tm_run, ReachOutcome, RunOutcome, Ssts, TmSpec};
use crate::terms::Term;
use crate::types::Type;
use crate::witness::{inner_witness_tm, outer_witness, witness_ssts, WitnessError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AttemptOutcome {
    /// Accepted (or rewritten to `1^n`) in this many steps.
    Accepted {
        steps: usize,
    },
    Rejected,
    BudgetExhausted,
    Unreachable {
        bound_hit: bool,
    },
}

impl fmt::Display for AttemptOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AttemptOutcome::Accepted { steps } => {
                write!(f, "accepted in {steps} step{}", plural(*steps))
            }
            AttemptOutcome::Rejected => f.write_str("rejected (head leaves the tape)"),
            AttemptOutcome::BudgetExhausted => f.write_str("step budget exhausted"),
            AttemptOutcome::Unreachable { bound_hit: false } => f.write_str("1^n unreachable"),
            AttemptOutcome::Unreachable { bound_hit: true } => {
                f.write_str("1^n not reached within the step bound")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifiedWitness {
    pub width: usize,
    pub term: Term,
    pub tau_star: Type,
    pub checked: bool,
    /// Checker transcript for `⊢ term : tau_star`, when it checks.
    pub transcript: Option<Transcript>,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub attempts: Vec<(usize, AttemptOutcome)>,
    pub success: Option<VerifiedWitness>,
}

impl VerifyReport {
    pub fn succeeded(&self) -> bool {
        self.success.as_ref().is_some_and(|w| w.checked)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (w, o) in &self.attempts {
            writeln!(f, "width {w}: {o}")?;
        }
        match &self.success {
            Some(s) => {
                writeln!(f, "witness: {}", s.term)?;
                writeln!(f, "checked: {}", s.checked)
            }
            None => {
                let last = self.attempts.last().map_or(MIN_OUTER_WIDTH, |(w, _)| *w);
                writeln!(f, "no acceptance up to width {last}")
            }
        }
    }
}

fn checked_witness(
    width: usize,
    term: Term,
    tau_star: Type,
) -> Result<VerifiedWitness, WitnessError> {
    let d = derive(&Context::new(), &term, &tau_star)?;
    Ok(VerifiedWitness {
        width,
        checked: d.is_some(),
        transcript: d.map(|d| d.transcript()),
        term,
        tau_star,
    })
}

/// Widths `3..=max_width`; `max_steps` defaults to the exact per-width budget.
pub fn verify_tm(
    spec: &TmSpec,
    max_width: usize,
    max_steps: Option<u64>,
) -> Result<VerifyReport, WitnessError> {
    let bundle = encode_tau_star_tm(spec)?;
    let mut attempts = Vec::new();
    for width in MIN_OUTER_WIDTH..=max_width {
        let budget = max_steps.unwrap_or_else(|| spec.default_budget(width));
        match tm_run(spec, &spec.blank_config(width), budget) {
            RunOutcome::Accepted(trace) => {
                attempts.push((
                    width,
                    AttemptOutcome::Accepted {
                        steps: trace.steps.len(),
                    },
                ));
                let inner = inner_witness_tm(spec, &trace)?;
                let term = outer_witness(&bundle, width, inner)?;
                let witness = checked_witness(width, term, bundle.tau_star.clone())?;
                return Ok(VerifyReport {
                    attempts,
                    success: Some(witness),
                });
            }
            RunOutcome::Rejected => attempts.push((width, AttemptOutcome::Rejected)),
            RunOutcome::BudgetExhausted => attempts.push((width, AttemptOutcome::BudgetExhausted)),
        }
    }
    Ok(VerifyReport {
        attempts,
        success: None,
    })
}

/// Widths `3..=max_width`; `step_bound` defaults to the size of `Σ^n`, which
/// makes each width exact.
pub fn verify_ssts(
    system: &Ssts,
    max_width: usize,
    step_bound: Option<usize>,
) -> Result<VerifyReport, WitnessError> {
    let bundle = encode_ssts(system)?;
    let mut attempts = Vec::new();
    for width in MIN_OUTER_WIDTH..=max_width {
        let bound =
            step_bound.unwrap_or_else(|| system.alphabet().len().saturating_pow(width as u32));
        match ssts_reach(system, width, bound) {
            ReachOutcome::Found(d) => {
                attempts.push((
                    width,
                    AttemptOutcome::Accepted {
                        steps: d.steps.len(),
                    },
                ));
                let term = witness_ssts(system, &d)?;
                let witness = checked_witness(width, term, bundle.tau_star.clone())?;
                return Ok(VerifyReport {
                    attempts,
                    success: Some(witness),
                });
            }
            ReachOutcome::Exhausted { bound_hit } => {
                attempts.push((width, AttemptOutcome::Unreachable { bound_hit }))
            }
        }
    }
    Ok(VerifyReport {
        attempts,
        success: None,
    })
}

pub fn plural(n: usize) -> &'static str {
    if n == 1 {
        ""
    } else {
        "s"
    }
}
