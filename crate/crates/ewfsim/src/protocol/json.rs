//! JSON trace serialization. Field order is preserved, so serializing a
//! deserialized trace reproduces the input byte-for-byte.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::scalar::RadicalScalar;

use super::{render_event, Trace};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ValueJson {
    pub exact: String,
    pub float: f64,
}

impl ValueJson {
    fn new(v: &RadicalScalar) -> Self {
        Self {
            exact: v.to_string(),
            float: v.to_float(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TermJson {
    /// Register name → label, in register declaration order.
    pub assignment: Map<String, Value>,
    pub coeff: ValueJson,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct StepJson {
    pub id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probability: Option<ValueJson>,
    pub state: Vec<TermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct QueryJson {
    pub at: String,
    pub event: String,
    pub exact: String,
    pub float: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TraceJson {
    pub perspective: String,
    pub steps: Vec<StepJson>,
    pub queries: Vec<QueryJson>,
}

impl TraceJson {
    pub fn to_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serialization cannot fail")
    }
}

pub fn trace_to_json(trace: &Trace) -> TraceJson {
    let system = trace.entries[0].state.system().clone();
    let steps = trace
        .entries
        .iter()
        .map(|entry| StepJson {
            id: entry.step_id.clone(),
            probability: entry.probability.as_ref().map(ValueJson::new),
            state: entry
                .state
                .terms()
                .map(|(assignment, coeff)| {
                    let mut map = Map::new();
                    for (i, &label) in assignment.iter().enumerate() {
                        let reg = system.register(i);
                        map.insert(
                            reg.name().to_string(),
                            Value::String(reg.label(label).to_string()),
                        );
                    }
                    TermJson {
                        assignment: map,
                        coeff: ValueJson::new(coeff),
                    }
                })
                .collect(),
        })
        .collect();
    let queries = trace
        .queries
        .iter()
        .map(|q| QueryJson {
            at: q.at.clone(),
            event: render_event(&system, &q.event),
            exact: q.value.to_string(),
            float: q.value.to_float(),
        })
        .collect();
    TraceJson {
        perspective: trace.perspective.clone(),
        steps,
        queries,
    }
}
