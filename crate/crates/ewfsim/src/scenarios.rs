//! Built-in protocol scenarios, embedded at compile time.

use crate::protocol::{parse_protocol, ProtocolSpec};

#[derive(Debug, Clone, Copy)]
pub struct Scenario {
    pub name: &'static str,
    pub description: &'static str,
    pub text: &'static str,
}

/// All built-in scenarios, in listing order.
pub const SCENARIOS: &[Scenario] = &[
    Scenario {
        name: "ewf",
        description: "extended Wigner's-friend experiment: two labs, two \
                      super-observers, cross-perspective contradiction",
        text: include_str!("../scenarios/ewf.protocol"),
    },
    Scenario {
        name: "wigner",
        description: "original Wigner's-friend setup: one lab, one friend, \
                      one outside observer",
        text: include_str!("../scenarios/wigner.protocol"),
    },
];

pub fn builtin(name: &str) -> Option<&'static Scenario> {
    SCENARIOS.iter().find(|s| s.name == name)
}

impl Scenario {
    /// Parses the embedded text; built-in scenarios always parse.
    pub fn spec(&self) -> ProtocolSpec {
        parse_protocol(self.text).expect("built-in scenario parses")
    }
}
