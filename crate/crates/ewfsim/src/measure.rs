//! The state-transforming step kinds: entangling measurement, collapse
//! measurement, conditional preparation, and postselection.
//!
//! Entangling measurement records a basis outcome into an agent's memory
//! register without discarding branches; collapse projects onto one chosen
//! outcome and renormalizes. All functions are pure: they take a state and
//! return a new one.

use thiserror::Error;

use crate::basis::Basis;
use crate::event::Event;
use crate::scalar::RadicalScalar;
use crate::state::{StateError, StateVector};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeasureError {
    #[error("recorder `{register}` is not at its ready label in every term")]
    RecorderNotReady { register: String },
    #[error("recorder `{register}` has no ready label")]
    RecorderHasNoReady { register: String },
    #[error("recorder `{register}` lies inside the measured subsystems")]
    RecorderInsideBasis { register: String },
    #[error(
        "state support escapes the span of basis `{basis}` (residual squared norm {residual})"
    )]
    SpanError { basis: String, residual: String },
    #[error("outcome map misses basis vector `{vector}`")]
    OutcomeMapIncomplete { vector: String },
    #[error("outcome `{outcome}` has probability 0")]
    ZeroProbabilityOutcome { outcome: String },
    #[error("renormalization factor √{probability} is not exactly representable")]
    NonMonomialNorm { probability: String },
    #[error("prepare target `{register}` is not at its ready label in every term")]
    TargetNotReady { register: String },
    #[error("prepare target `{register}` has no ready label")]
    TargetHasNoReady { register: String },
    #[error("no preparation rule for control label `{label}`")]
    RuleMissing { label: String },
    #[error("preparation rule for `{label}` has squared norm {norm}, expected 1")]
    NonUnitRule { label: String, norm: String },
    #[error(transparent)]
    State(#[from] StateError),
}

/// How a measurement step acts on the wave function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MeasurementMode {
    /// Unitary recording of every outcome; pure Schrödinger evolution.
    Entangle,
    /// Projection onto the named outcome followed by renormalization.
    Collapse(String),
}

fn check_recorder(
    state: &StateVector,
    basis: &Basis,
    recorder: usize,
) -> Result<u16, MeasureError> {
    let reg = state.system().register(recorder);
    if basis.subsystems().contains(&recorder) {
        return Err(MeasureError::RecorderInsideBasis {
            register: reg.name().to_string(),
        });
    }
    let ready = reg
        .ready()
        .ok_or_else(|| MeasureError::RecorderHasNoReady {
            register: reg.name().to_string(),
        })?;
    if state.terms().any(|(a, _)| a[recorder] != ready) {
        return Err(MeasureError::RecorderNotReady {
            register: reg.name().to_string(),
        });
    }
    Ok(ready)
}

fn recorder_label(
    basis: &Basis,
    outcome_map: &[(usize, u16)],
    vector_index: usize,
) -> Result<u16, MeasureError> {
    outcome_map
        .iter()
        .find(|(v, _)| *v == vector_index)
        .map(|(_, l)| *l)
        .ok_or_else(|| MeasureError::OutcomeMapIncomplete {
            vector: basis.vectors()[vector_index].name.clone(),
        })
}

/// Records the measurement outcome into `recorder` on every branch, keeping
/// all branches. Norm is preserved exactly.
///
/// `outcome_map` pairs basis-vector indices with recorder label indices and
/// must cover every basis vector.
pub fn entangle_measure(
    state: &StateVector,
    basis: &Basis,
    recorder: usize,
    outcome_map: &[(usize, u16)],
) -> Result<StateVector, MeasureError> {
    check_recorder(state, basis, recorder)?;
    for i in 0..basis.vectors().len() {
        recorder_label(basis, outcome_map, i)?;
    }
    let decomposition = state.decompose(basis);
    if !decomposition.residual.is_empty() {
        return Err(MeasureError::SpanError {
            basis: basis.name().to_string(),
            residual: decomposition.residual.norm_squared().to_string(),
        });
    }
    let mut out = StateVector::empty(state.system().clone());
    for i in 0..decomposition.branches.len() {
        let label = recorder_label(basis, outcome_map, i)?;
        out = out.merge(&decomposition.expand_branch(i, Some((recorder, label))))?;
    }
    Ok(out)
}

/// Projects onto the chosen basis outcome, records it, and renormalizes by
/// the exact reciprocal of `√P`. Returns the new state together with the
/// branch probability before renormalization.
pub fn collapse_measure(
    state: &StateVector,
    basis: &Basis,
    recorder: usize,
    outcome_map: &[(usize, u16)],
    chosen: &str,
) -> Result<(StateVector, RadicalScalar), MeasureError> {
    check_recorder(state, basis, recorder)?;
    let chosen_index =
        basis
            .vector_index(chosen)
            .ok_or_else(|| MeasureError::OutcomeMapIncomplete {
                vector: chosen.to_string(),
            })?;
    let label = recorder_label(basis, outcome_map, chosen_index)?;
    let decomposition = state.decompose(basis);
    if !decomposition.residual.is_empty() {
        return Err(MeasureError::SpanError {
            basis: basis.name().to_string(),
            residual: decomposition.residual.norm_squared().to_string(),
        });
    }
    let probability = decomposition.branches[chosen_index].state.norm_squared();
    if probability.is_zero() {
        return Err(MeasureError::ZeroProbabilityOutcome {
            outcome: chosen.to_string(),
        });
    }
    let inv_norm = probability
        .sqrt()
        .and_then(|s| s.invert_monomial())
        .map_err(|_| MeasureError::NonMonomialNorm {
            probability: probability.to_string(),
        })?;
    let projected = decomposition.expand_branch(chosen_index, Some((recorder, label)));
    Ok((projected.scale(&inv_norm), probability))
}

/// Per-term replacement of `target`'s ready label by the unit superposition
/// that `rules` assigns to the term's `control` label. Norm preserved.
pub fn conditional_prepare(
    state: &StateVector,
    control: usize,
    target: usize,
    rules: &[(u16, Vec<(u16, RadicalScalar)>)],
) -> Result<StateVector, MeasureError> {
    let target_reg = state.system().register(target);
    let ready = target_reg
        .ready()
        .ok_or_else(|| MeasureError::TargetHasNoReady {
            register: target_reg.name().to_string(),
        })?;
    if state.terms().any(|(a, _)| a[target] != ready) {
        return Err(MeasureError::TargetNotReady {
            register: target_reg.name().to_string(),
        });
    }
    for (label, superposition) in rules {
        let norm = superposition
            .iter()
            .fold(RadicalScalar::zero(), |acc, (_, c)| acc + c * c);
        if !norm.is_one() {
            return Err(MeasureError::NonUnitRule {
                label: state.system().register(control).label(*label).to_string(),
                norm: norm.to_string(),
            });
        }
    }
    let mut terms = Vec::new();
    for (assignment, coeff) in state.terms() {
        let control_label = assignment[control];
        let rule = rules
            .iter()
            .find(|(l, _)| *l == control_label)
            .map(|(_, sup)| sup)
            .ok_or_else(|| MeasureError::RuleMissing {
                label: state
                    .system()
                    .register(control)
                    .label(control_label)
                    .to_string(),
            })?;
        for (target_label, c) in rule {
            let mut a = assignment.clone();
            a[target] = *target_label;
            terms.push((a, coeff * c));
        }
    }
    Ok(StateVector::from_terms(state.system().clone(), terms))
}

/// Conditions the state on `event`: projects, renormalizes, and returns the
/// exact selection probability.
pub fn postselect(
    state: &StateVector,
    event: &Event,
) -> Result<(StateVector, RadicalScalar), MeasureError> {
    let projected = state.project(event);
    let probability = projected.norm_squared();
    if probability.is_zero() {
        return Err(MeasureError::ZeroProbabilityOutcome {
            outcome: "postselection event".to_string(),
        });
    }
    let inv_norm = probability
        .sqrt()
        .and_then(|s| s.invert_monomial())
        .map_err(|_| MeasureError::NonMonomialNorm {
            probability: probability.to_string(),
        })?;
    Ok((projected.scale(&inv_norm), probability))
}
