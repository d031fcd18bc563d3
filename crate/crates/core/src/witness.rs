//! Inhabitants built from accepting runs.
//!
//! A machine step at head position `p` becomes `xt y (..)`, where `y` is the
//! link variable between the two cells the step touches: `y_p` for a right
//! move, `y_{p-1}` for a left move. The innermost term is the final variable.
//! The outer wrapper abstracts the binders of `tau_star`, expands the tape with
//! `n - 3` uses of `x_*` and initialises it with one use of `x_0`.

use thiserror::Error;

use crate::checker::{check_multi, CheckError, Judgment};
use crate::encoder::{
    configuration_family, encode_ssts, encode_tau_star_tm, link_var, transition_var, word_family,
    EncodeError, EncodingBundle, MIN_OUTER_WIDTH, VAR_EXPAND, VAR_INIT,
};
use crate::machines::{accepts_at_width, Derivation, Move, Ssts, TmSpec, Trace};
use crate::terms::Term;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WitnessError {
    #[error("trace does not replay as an accepting run of the machine")]
    MalformedTrace,
    #[error("derivation does not replay as a rewrite from 0^n to 1^n")]
    MalformedDerivation,
    #[error("width {width} is below the minimum {min}")]
    WidthTooSmall { width: usize, min: usize },
    #[error(transparent)]
    Encode(#[from] EncodeError),
    #[error(transparent)]
    Check(#[from] CheckError),
}

/// `x_{t_i}` for the given transition, by position in the encoder's order.
fn transition_index(spec: &TmSpec, state: &str, read: &str) -> usize {
    spec.transitions()
        .position(|t| t.state == state && t.read == read)
        .expect("trace steps are transitions of the machine")
        + 1
}

/// `M_{C1}^{C2} (M_{C2}^{C3} ( .. (M_{C_{m-1}}^{C_m} xf) .. ))`.
pub fn inner_witness_tm(spec: &TmSpec, trace: &Trace) -> Result<Term, WitnessError> {
    if !trace.replays(spec) {
        return Err(WitnessError::MalformedTrace);
    }
    let mut term = Term::var(crate::encoder::VAR_FINAL);
    for (config, step) in trace.configs.iter().zip(&trace.steps).rev() {
        let link = match step.action.moves {
            Move::Right => config.position,
            Move::Left => config.position - 1,
        };
        let xt = transition_var(transition_index(spec, &step.state, &step.read));
        term = Term::spine(xt, [Term::var(link_var(link)), term]);
    }
    Ok(term)
}

/// `λ binders. λy_1. xs (λy_2. .. xs (λy_{n-2}. x0 (λy_{n-1}. inner)) ..)`.
pub fn outer_witness(
    bundle: &EncodingBundle,
    width: usize,
    inner: Term,
) -> Result<Term, WitnessError> {
    if width < MIN_OUTER_WIDTH {
        return Err(WitnessError::WidthTooSmall {
            width,
            min: MIN_OUTER_WIDTH,
        });
    }
    let mut body = Term::app(Term::var(VAR_INIT), Term::abs(link_var(width - 1), inner));
    for i in (2..=width - 2).rev() {
        body = Term::app(Term::var(VAR_EXPAND), Term::abs(link_var(i), body));
    }
    let mut binders = bundle.binders();
    binders.push(link_var(1));
    Ok(Term::abstractions(binders, body))
}

pub fn outer_witness_tm(spec: &TmSpec, width: usize, inner: Term) -> Result<Term, WitnessError> {
    let bundle = encode_tau_star_tm(spec)?;
    outer_witness(&bundle, width, inner)
}

/// Inner spine for a rewrite sequence: each step `t` at `p` is `xt y_p (..)`,
/// innermost `x1`.
pub fn inner_witness_ssts(system: &Ssts, derivation: &Derivation) -> Result<Term, WitnessError> {
    if !derivation.replays(system) {
        return Err(WitnessError::MalformedDerivation);
    }
    let mut term = Term::var(crate::encoder::VAR_ONE);
    for step in derivation.steps.iter().rev() {
        let idx = system
            .rules()
            .position(|r| r == &step.rule)
            .expect("replayed rules belong to the system")
            + 1;
        term = Term::spine(
            transition_var(idx),
            [Term::var(link_var(step.position)), term],
        );
    }
    Ok(term)
}

pub fn witness_ssts(system: &Ssts, derivation: &Derivation) -> Result<Term, WitnessError> {
    let width = derivation.width();
    if width < MIN_OUTER_WIDTH {
        return Err(WitnessError::WidthTooSmall {
            width,
            min: MIN_OUTER_WIDTH,
        });
    }
    let inner = inner_witness_ssts(system, derivation)?;
    let bundle = encode_ssts(system)?;
    outer_witness(&bundle, width, inner)
}

/// A synthesized term together with the judgments it was built for.
#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub term: Term,
    pub width: usize,
    pub judgments: Vec<Judgment>,
    pub checked: bool,
}

impl WitnessReport {
    fn checked_against(
        term: Term,
        width: usize,
        judgments: Vec<Judgment>,
    ) -> Result<Self, WitnessError> {
        let checked = check_multi(&judgments, &term)?;
        Ok(WitnessReport {
            term,
            width,
            judgments,
            checked,
        })
    }
}

/// Inner witness for the blank width-`n` tape, checked against the cell
/// family. `None` if the machine does not accept at this width. With `outer`
/// the family contexts also bind `x_0` and `x_*`.
pub fn synthesize_inner_tm(
    spec: &TmSpec,
    width: usize,
    outer: bool,
) -> Result<Option<WitnessReport>, WitnessError> {
    let Some(trace) = accepts_at_width(spec, width) else {
        return Ok(None);
    };
    let bundle = encode_tau_star_tm(spec)?;
    let family = configuration_family(&bundle, &trace.configs[0], outer)?;
    let term = inner_witness_tm(spec, &trace)?;
    WitnessReport::checked_against(term, width, family).map(Some)
}

/// Closed witness for `tau_star`, checked against `⊢ ? : tau_star`.
///
/// Widths below the minimum are lifted to it; a machine accepting on a
/// narrower tape accepts on a wider one with the same run.
pub fn synthesize_tm(spec: &TmSpec, width: usize) -> Result<Option<WitnessReport>, WitnessError> {
    let width = width.max(MIN_OUTER_WIDTH);
    let Some(trace) = accepts_at_width(spec, width) else {
        return Ok(None);
    };
    let bundle = encode_tau_star_tm(spec)?;
    let inner = inner_witness_tm(spec, &trace)?;
    let term = outer_witness(&bundle, width, inner)?;
    let judgments = vec![Judgment::new(Default::default(), bundle.tau_star.clone())];
    WitnessReport::checked_against(term, width, judgments).map(Some)
}

/// Closed witness for the rewriting system's `tau_star` from a derivation.
pub fn synthesize_ssts(
    system: &Ssts,
    derivation: &Derivation,
) -> Result<WitnessReport, WitnessError> {
    let term = witness_ssts(system, derivation)?;
    let bundle = encode_ssts(system)?;
    let judgments = vec![Judgment::new(Default::default(), bundle.tau_star.clone())];
    WitnessReport::checked_against(term, derivation.width(), judgments)
}

/// Inner witness for a derivation, checked against the `0^n` cell family.
pub fn synthesize_inner_ssts(
    system: &Ssts,
    derivation: &Derivation,
    outer: bool,
) -> Result<WitnessReport, WitnessError> {
    let bundle = encode_ssts(system)?;
    let family = word_family(&bundle, &derivation.start, outer)?;
    let term = inner_witness_ssts(system, derivation)?;
    WitnessReport::checked_against(term, derivation.width(), family)
}
