//! Protocol DSL: specification types, parser, step interpreter, perspective
//! engine, and the cross-perspective consistency report.

mod json;
mod parse;
mod render;
mod run;

pub use json::{trace_to_json, QueryJson, StepJson, TermJson, TraceJson, ValueJson};
pub use parse::{parse_event, parse_protocol, ParseError};
pub use render::{render_diff, render_event, render_report, render_trace};
pub use run::{
    certain_claims, contradiction_report, run, run_named, ConsistencyReport, Contradiction,
    PerspectiveOutcome, PredictionClaim, QueryResult, RunError, Trace, TraceEntry,
};

use std::sync::Arc;

use crate::basis::Basis;
use crate::event::Event;
use crate::scalar::RadicalScalar;
use crate::system::SystemSpec;

/// A parsed, fully validated protocol: registers, initial state, bases,
/// ordered steps, declared perspectives, and probability queries.
#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolSpec {
    pub system: Arc<SystemSpec>,
    /// Initial per-register superpositions in declaration order; registers
    /// without an entry start at their ready label.
    pub inits: Vec<(usize, Vec<(u16, RadicalScalar)>)>,
    /// Bases declared with `basis` statements (measure steps may additionally
    /// use implicit computational bases).
    pub bases: Vec<Basis>,
    pub steps: Vec<Step>,
    pub perspectives: Vec<Perspective>,
    pub queries: Vec<Query>,
}

impl ProtocolSpec {
    pub fn basis(&self, name: &str) -> Option<&Basis> {
        self.bases.iter().find(|b| b.name() == name)
    }

    pub fn step(&self, id: &str) -> Option<&Step> {
        self.steps.iter().find(|s| s.id == id)
    }

    pub fn perspective(&self, name: &str) -> Option<&Perspective> {
        self.perspectives.iter().find(|p| p.name == name)
    }
}

/// One protocol step with a unique string id.
#[derive(Debug, Clone, PartialEq)]
pub struct Step {
    pub id: String,
    pub kind: StepKind,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StepKind {
    /// Measurement of `basis` recorded into `recorder`. `outcomes` maps basis
    /// vector indices to recorder label indices. `computational` marks a
    /// basis synthesized from a bare register name.
    Measure {
        basis: Basis,
        computational: bool,
        recorder: usize,
        outcomes: Vec<(usize, u16)>,
    },
    /// Controlled preparation: per `control` label, write a unit superposition
    /// into the ready `target`.
    Prepare {
        target: usize,
        control: usize,
        rules: Vec<(u16, Vec<(u16, RadicalScalar)>)>,
    },
    /// Projective conditioning on an event, with renormalization.
    Postselect(Event),
}

/// Per-step collapse overrides: "whose wave function" a run computes.
/// An empty override list is pure Schrödinger evolution.
#[derive(Debug, Clone, PartialEq)]
pub struct Perspective {
    pub name: String,
    /// (step id, chosen outcome vector name)
    pub overrides: Vec<(String, String)>,
}

impl Perspective {
    /// A perspective with no collapse anywhere.
    pub fn ensemble(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            overrides: Vec::new(),
        }
    }

    pub fn override_for(&self, step_id: &str) -> Option<&str> {
        self.overrides
            .iter()
            .find(|(id, _)| id == step_id)
            .map(|(_, v)| v.as_str())
    }
}

/// A probability query evaluated on the trace state after a given step.
#[derive(Debug, Clone, PartialEq)]
pub struct Query {
    pub at: String,
    pub event: Event,
}
