//! Deterministic step interpreter, certainty claims, and the
//! cross-perspective consistency report.

use thiserror::Error;

use crate::event::Event;
use crate::measure::{
    collapse_measure, conditional_prepare, entangle_measure, postselect, MeasureError,
};
use crate::scalar::RadicalScalar;
use crate::state::{StateError, StateVector};

use super::{Perspective, ProtocolSpec, StepKind};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RunError {
    #[error("building initial state: {0}")]
    Init(#[from] StateError),
    #[error("step `{step}`: {source}")]
    Step {
        step: String,
        #[source]
        source: MeasureError,
    },
    #[error("common postselection: {0}")]
    Postselect(MeasureError),
    #[error("unknown perspective `{0}`")]
    UnknownPerspective(String),
    #[error("consistency check needs at least two perspectives")]
    TooFewPerspectives,
}

/// State after one step, with the branch/selection probability for collapse
/// and postselection steps.
#[derive(Debug, Clone)]
pub struct TraceEntry {
    pub step_id: String,
    pub state: StateVector,
    pub probability: Option<RadicalScalar>,
}

#[derive(Debug, Clone)]
pub struct QueryResult {
    pub at: String,
    pub event: Event,
    pub value: RadicalScalar,
}

/// The ordered exact states produced by one perspective's run, plus query
/// results. The entry with id `init` is the pre-protocol state.
#[derive(Debug, Clone)]
pub struct Trace {
    pub perspective: String,
    pub entries: Vec<TraceEntry>,
    pub queries: Vec<QueryResult>,
}

impl Trace {
    pub fn entry(&self, step_id: &str) -> Option<&TraceEntry> {
        self.entries.iter().find(|e| e.step_id == step_id)
    }

    pub fn state_after(&self, step_id: &str) -> Option<&StateVector> {
        self.entry(step_id).map(|e| &e.state)
    }

    pub fn final_state(&self) -> &StateVector {
        &self.entries.last().expect("trace has an init entry").state
    }
}

/// Runs the protocol under a perspective: every measure step entangles unless
/// the perspective overrides it with a collapse to a chosen outcome.
pub fn run(spec: &ProtocolSpec, perspective: &Perspective) -> Result<Trace, RunError> {
    let mut state = StateVector::build_initial(spec.system.clone(), &spec.inits)?;
    let mut entries = vec![TraceEntry {
        step_id: "init".to_string(),
        state: state.clone(),
        probability: None,
    }];
    for step in &spec.steps {
        let step_err = |source: MeasureError| RunError::Step {
            step: step.id.clone(),
            source,
        };
        let probability = match &step.kind {
            StepKind::Measure {
                basis,
                recorder,
                outcomes,
                ..
            } => match perspective.override_for(&step.id) {
                None => {
                    state =
                        entangle_measure(&state, basis, *recorder, outcomes).map_err(step_err)?;
                    None
                }
                Some(chosen) => {
                    let (next, p) = collapse_measure(&state, basis, *recorder, outcomes, chosen)
                        .map_err(step_err)?;
                    state = next;
                    Some(p)
                }
            },
            StepKind::Prepare {
                target,
                control,
                rules,
            } => {
                state = conditional_prepare(&state, *control, *target, rules).map_err(step_err)?;
                None
            }
            StepKind::Postselect(event) => {
                let (next, p) = postselect(&state, event).map_err(step_err)?;
                state = next;
                Some(p)
            }
        };
        entries.push(TraceEntry {
            step_id: step.id.clone(),
            state: state.clone(),
            probability,
        });
    }
    let trace_so_far = Trace {
        perspective: perspective.name.clone(),
        entries,
        queries: Vec::new(),
    };
    let queries = spec
        .queries
        .iter()
        .map(|q| {
            let state = trace_so_far
                .state_after(&q.at)
                .expect("query step ids are validated at parse time");
            QueryResult {
                at: q.at.clone(),
                event: q.event.clone(),
                value: state.probability(&q.event),
            }
        })
        .collect();
    Ok(Trace {
        queries,
        ..trace_so_far
    })
}

/// Convenience: run a perspective by its declared name.
pub fn run_named(spec: &ProtocolSpec, perspective: &str) -> Result<Trace, RunError> {
    let p = spec
        .perspective(perspective)
        .ok_or_else(|| RunError::UnknownPerspective(perspective.to_string()))?;
    run(spec, p)
}

/// An event probability on a trace's final state, flagged when it is a
/// certainty (exactly 0 or exactly 1).
#[derive(Debug, Clone)]
pub struct PredictionClaim {
    pub perspective: String,
    pub event: Event,
    pub probability: RadicalScalar,
    pub certain: bool,
}

pub fn certain_claims(trace: &Trace, events: &[Event]) -> Vec<PredictionClaim> {
    events
        .iter()
        .map(|event| {
            let probability = trace.final_state().probability(event);
            let certain = probability.is_zero() || probability.is_one();
            PredictionClaim {
                perspective: trace.perspective.clone(),
                event: event.clone(),
                probability,
                certain,
            }
        })
        .collect()
}

/// One perspective's event probabilities after the common postselection.
#[derive(Debug, Clone)]
pub struct PerspectiveOutcome {
    pub perspective: String,
    /// False when the common postselection has probability 0 under this
    /// perspective; such a perspective cannot contradict anyone.
    pub applicable: bool,
    pub selection_probability: Option<RadicalScalar>,
    /// One probability per report event; empty when inapplicable.
    pub probabilities: Vec<RadicalScalar>,
}

/// A pair of perspectives where one assigns exactly 0 and the other a
/// strictly positive probability to the same event.
#[derive(Debug, Clone)]
pub struct Contradiction {
    pub event_index: usize,
    pub zero_perspective: String,
    pub positive_perspective: String,
    pub positive_probability: RadicalScalar,
}

#[derive(Debug, Clone)]
pub struct ConsistencyReport {
    pub events: Vec<Event>,
    pub outcomes: Vec<PerspectiveOutcome>,
    pub contradictions: Vec<Contradiction>,
}

impl ConsistencyReport {
    pub fn has_contradiction(&self) -> bool {
        !self.contradictions.is_empty()
    }
}

/// Runs every perspective, applies the common postselection where it has
/// positive probability, and lists every event on which one perspective is
/// certain of "never" while another assigns positive probability.
pub fn contradiction_report(
    spec: &ProtocolSpec,
    perspectives: &[&Perspective],
    events: &[Event],
    common_postselect: Option<&Event>,
) -> Result<ConsistencyReport, RunError> {
    if perspectives.len() < 2 {
        return Err(RunError::TooFewPerspectives);
    }
    let mut outcomes = Vec::new();
    for perspective in perspectives {
        let trace = run(spec, perspective)?;
        let final_state = trace.final_state().clone();
        let (state, selection_probability, applicable) = match common_postselect {
            None => (final_state, None, true),
            Some(event) => {
                let p = final_state.probability(event);
                if p.is_zero() {
                    (final_state, Some(p), false)
                } else {
                    let (selected, p) =
                        postselect(&final_state, event).map_err(RunError::Postselect)?;
                    (selected, Some(p), true)
                }
            }
        };
        let probabilities = if applicable {
            events.iter().map(|e| state.probability(e)).collect()
        } else {
            Vec::new()
        };
        outcomes.push(PerspectiveOutcome {
            perspective: perspective.name.clone(),
            applicable,
            selection_probability,
            probabilities,
        });
    }
    let mut contradictions = Vec::new();
    for (event_index, _) in events.iter().enumerate() {
        for i in 0..outcomes.len() {
            for j in (i + 1)..outcomes.len() {
                let (a, b) = (&outcomes[i], &outcomes[j]);
                if !a.applicable || !b.applicable {
                    continue;
                }
                let (pa, pb) = (&a.probabilities[event_index], &b.probabilities[event_index]);
                let (zero, positive) = if pa.is_zero() && !pb.is_zero() {
                    (a, b)
                } else if pb.is_zero() && !pa.is_zero() {
                    (b, a)
                } else {
                    continue;
                };
                contradictions.push(Contradiction {
                    event_index,
                    zero_perspective: zero.perspective.clone(),
                    positive_perspective: positive.perspective.clone(),
                    positive_probability: positive.probabilities[event_index].clone(),
                });
            }
        }
    }
    Ok(ConsistencyReport {
        events: events.to_vec(),
        outcomes,
        contradictions,
    })
}
