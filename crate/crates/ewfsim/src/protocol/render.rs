//! Text renderings: protocol files (parse/print round-trippable), traces,
//! step diffs, and consistency reports.

use std::fmt;

use crate::event::{Event, EventAtom};
use crate::scalar::RadicalScalar;
use crate::state::StateVector;
use crate::system::SystemSpec;

use super::{ConsistencyReport, ProtocolSpec, StepKind, Trace};

fn coeff_text(c: &RadicalScalar) -> String {
    if c.is_one() {
        String::new()
    } else if c.num_terms() > 1 {
        format!("({})", c)
    } else {
        c.to_string()
    }
}

fn components_text(
    system: &SystemSpec,
    registers: &[usize],
    components: &[(Vec<u16>, RadicalScalar)],
) -> String {
    components
        .iter()
        .map(|(tuple, c)| {
            let labels: Vec<&str> = tuple
                .iter()
                .zip(registers)
                .map(|(&l, &r)| system.register(r).label(l))
                .collect();
            format!("{}|{}>", coeff_text(c), labels.join(","))
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Event text in the protocol grammar: `reg=label` / `basis:vec`, `&`-joined.
pub fn render_event(system: &SystemSpec, event: &Event) -> String {
    event
        .atoms()
        .iter()
        .map(|atom| match atom {
            EventAtom::Label { register, label } => {
                let reg = system.register(*register);
                format!("{}={}", reg.name(), reg.label(*label))
            }
            EventAtom::Vector { basis, vector } => {
                format!("{}:{}", basis.name(), basis.vectors()[*vector].name)
            }
        })
        .collect::<Vec<_>>()
        .join(" & ")
}

impl fmt::Display for ProtocolSpec {
    /// Canonical protocol text; `parse(render(spec))` is structurally equal
    /// to `spec`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.system)?;
        for (reg, sup) in &self.inits {
            let components: Vec<(Vec<u16>, RadicalScalar)> =
                sup.iter().map(|(l, c)| (vec![*l], c.clone())).collect();
            writeln!(
                f,
                "init {} = {}",
                self.system.register(*reg).name(),
                components_text(&self.system, &[*reg], &components)
            )?;
        }
        for basis in &self.bases {
            let regs: Vec<&str> = basis
                .subsystems()
                .iter()
                .map(|&r| self.system.register(r).name())
                .collect();
            writeln!(f, "basis {} on {} {{", basis.name(), regs.join(","))?;
            for v in basis.vectors() {
                writeln!(
                    f,
                    "  {} = {}",
                    v.name,
                    components_text(&self.system, basis.subsystems(), &v.components)
                )?;
            }
            writeln!(f, "}}")?;
        }
        for step in &self.steps {
            match &step.kind {
                StepKind::Measure {
                    basis,
                    recorder,
                    outcomes,
                    ..
                } => {
                    let recorder_reg = self.system.register(*recorder);
                    let entries: Vec<String> = outcomes
                        .iter()
                        .map(|(vi, li)| {
                            format!(
                                "{} -> {}",
                                basis.vectors()[*vi].name,
                                recorder_reg.label(*li)
                            )
                        })
                        .collect();
                    writeln!(
                        f,
                        "step {} measure {} recorder {} outcomes {{ {} }}",
                        step.id,
                        basis.name(),
                        recorder_reg.name(),
                        entries.join("; ")
                    )?;
                }
                StepKind::Prepare {
                    target,
                    control,
                    rules,
                } => {
                    let control_reg = self.system.register(*control);
                    let entries: Vec<String> = rules
                        .iter()
                        .map(|(l, sup)| {
                            let components: Vec<(Vec<u16>, RadicalScalar)> =
                                sup.iter().map(|(tl, c)| (vec![*tl], c.clone())).collect();
                            format!(
                                "{} -> {}",
                                control_reg.label(*l),
                                components_text(&self.system, &[*target], &components)
                            )
                        })
                        .collect();
                    writeln!(
                        f,
                        "step {} prepare {} by {} {{ {} }}",
                        step.id,
                        self.system.register(*target).name(),
                        control_reg.name(),
                        entries.join("; ")
                    )?;
                }
                StepKind::Postselect(event) => {
                    writeln!(
                        f,
                        "step {} postselect {}",
                        step.id,
                        render_event(&self.system, event)
                    )?;
                }
            }
        }
        for p in &self.perspectives {
            if p.overrides.is_empty() {
                writeln!(f, "perspective {} {{ }}", p.name)?;
            } else {
                let entries: Vec<String> = p
                    .overrides
                    .iter()
                    .map(|(id, v)| format!("{} collapse {}", id, v))
                    .collect();
                writeln!(f, "perspective {} {{ {} }}", p.name, entries.join("; "))?;
            }
        }
        for q in &self.queries {
            writeln!(
                f,
                "query at {} probability {}",
                q.at,
                render_event(&self.system, &q.event)
            )?;
        }
        Ok(())
    }
}

fn value_text(v: &RadicalScalar, float: bool) -> String {
    if float {
        format!("{} ({})", v, v.to_float())
    } else {
        v.to_string()
    }
}

/// Full text rendering of one perspective's trace.
pub fn render_trace(trace: &Trace, float: bool) -> String {
    let mut out = String::new();
    out.push_str(&format!("perspective {}\n", trace.perspective));
    for entry in &trace.entries {
        match &entry.probability {
            Some(p) => out.push_str(&format!(
                "step {} (probability {})\n",
                entry.step_id,
                value_text(p, float)
            )),
            None => out.push_str(&format!("step {}\n", entry.step_id)),
        }
        for line in entry.state.render().lines() {
            out.push_str("  ");
            out.push_str(line);
            out.push('\n');
        }
    }
    let system = trace.entries[0].state.system().clone();
    for q in &trace.queries {
        out.push_str(&format!(
            "query at {}: P({}) = {}\n",
            q.at,
            render_event(&system, &q.event),
            value_text(&q.value, float)
        ));
    }
    out
}

fn term_line(state: &StateVector, assignment: &[u16]) -> String {
    let labels: Vec<&str> = assignment
        .iter()
        .enumerate()
        .map(|(i, &l)| state.system().register(i).label(l))
        .collect();
    format!("|{}⟩", labels.join(","))
}

/// Step-aligned diff of two traces over the same protocol. Identical steps
/// are summarized; differing steps list term-level discrepancies.
pub fn render_diff(a: &Trace, b: &Trace) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "trace diff: {} vs {}\n",
        a.perspective, b.perspective
    ));
    let mut first_divergence: Option<&str> = None;
    for (ea, eb) in a.entries.iter().zip(&b.entries) {
        debug_assert_eq!(ea.step_id, eb.step_id);
        if ea.state == eb.state {
            out.push_str(&format!(
                "step {}: identical ({} terms)\n",
                ea.step_id,
                ea.state.num_terms()
            ));
            continue;
        }
        if first_divergence.is_none() {
            first_divergence = Some(&ea.step_id);
        }
        out.push_str(&format!("step {}: differs\n", ea.step_id));
        for (assignment, ca) in ea.state.terms() {
            let cb = eb.state.coefficient(assignment);
            if cb.is_zero() {
                out.push_str(&format!(
                    "  only in {}: {} · {}\n",
                    a.perspective,
                    ca,
                    term_line(&ea.state, assignment)
                ));
            } else if *ca != cb {
                out.push_str(&format!(
                    "  {} vs {} · {}\n",
                    ca,
                    cb,
                    term_line(&ea.state, assignment)
                ));
            }
        }
        for (assignment, cb) in eb.state.terms() {
            if ea.state.coefficient(assignment).is_zero() {
                out.push_str(&format!(
                    "  only in {}: {} · {}\n",
                    b.perspective,
                    cb,
                    term_line(&eb.state, assignment)
                ));
            }
        }
    }
    match first_divergence {
        Some(id) => out.push_str(&format!("first divergence at step {}\n", id)),
        None => out.push_str("traces identical\n"),
    }
    out
}

/// Human-readable consistency report.
pub fn render_report(system: &SystemSpec, report: &ConsistencyReport, float: bool) -> String {
    let mut out = String::new();
    for outcome in &report.outcomes {
        if !outcome.applicable {
            out.push_str(&format!(
                "perspective {}: inapplicable (postselection probability 0)\n",
                outcome.perspective
            ));
            continue;
        }
        if let Some(p) = &outcome.selection_probability {
            out.push_str(&format!(
                "perspective {}: postselected with probability {}\n",
                outcome.perspective,
                value_text(p, float)
            ));
        } else {
            out.push_str(&format!("perspective {}:\n", outcome.perspective));
        }
        for (event, p) in report.events.iter().zip(&outcome.probabilities) {
            out.push_str(&format!(
                "  P({}) = {}\n",
                render_event(system, event),
                value_text(p, float)
            ));
        }
    }
    if report.contradictions.is_empty() {
        out.push_str("NO CONTRADICTION\n");
    } else {
        out.push_str("CONTRADICTION\n");
        for c in &report.contradictions {
            out.push_str(&format!(
                "  event {}: {} gives 0, {} gives {}\n",
                render_event(system, &report.events[c.event_index]),
                c.zero_perspective,
                c.positive_perspective,
                value_text(&c.positive_probability, float)
            ));
        }
    }
    out
}
