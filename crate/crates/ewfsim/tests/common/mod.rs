//! Test support: a dense floating-point simulator used as an independent
//! oracle for the exact engine, plus exact-state construction helpers.
//!
//! The dense simulator interprets the same `ProtocolSpec` but shares no
//! arithmetic with the exact path: it works on a flat `Vec<f64>` over the
//! full product space with explicit projector sums, so agreement between
//! the two routes checks both the linear algebra and the exact arithmetic.

use std::collections::HashMap;
use std::sync::Arc;

use ewfsim::basis::Basis;
use ewfsim::event::{Event, EventAtom};
use ewfsim::protocol::{Perspective, ProtocolSpec, StepKind};
use ewfsim::scalar::RadicalScalar;
use ewfsim::state::StateVector;
use ewfsim::system::SystemSpec;

pub const TOL: f64 = 1e-9;

/// Dense state over the full product space, register 0 most significant.
#[derive(Clone)]
pub struct Dense {
    pub system: Arc<SystemSpec>,
    dims: Vec<usize>,
    pub amps: Vec<f64>,
}

impl Dense {
    pub fn zero(system: Arc<SystemSpec>) -> Self {
        let dims: Vec<usize> = system
            .registers()
            .iter()
            .map(|r| r.labels().len())
            .collect();
        let size = dims.iter().product();
        Self {
            system,
            dims,
            amps: vec![0.0; size],
        }
    }

    pub fn index(&self, assignment: &[u16]) -> usize {
        assignment
            .iter()
            .zip(&self.dims)
            .fold(0usize, |acc, (&a, &d)| acc * d + a as usize)
    }

    pub fn assignment(&self, mut idx: usize) -> Vec<u16> {
        let mut out = vec![0u16; self.dims.len()];
        for (slot, &d) in out.iter_mut().zip(&self.dims).rev() {
            *slot = (idx % d) as u16;
            idx /= d;
        }
        out
    }

    pub fn norm2(&self) -> f64 {
        self.amps.iter().map(|a| a * a).sum()
    }

    /// Initial state: tensor product of per-register superpositions, with
    /// unlisted registers at their ready label.
    pub fn initial(spec: &ProtocolSpec) -> Self {
        let mut out = Self::zero(spec.system.clone());
        let mut factors: Vec<Vec<(u16, f64)>> = Vec::new();
        for (i, reg) in spec.system.registers().iter().enumerate() {
            match spec.inits.iter().find(|(r, _)| *r == i) {
                Some((_, sup)) => {
                    let mut merged: HashMap<u16, f64> = HashMap::new();
                    for (l, c) in sup {
                        *merged.entry(*l).or_insert(0.0) += c.to_float();
                    }
                    factors.push(merged.into_iter().collect());
                }
                None => factors.push(vec![(reg.ready().expect("uninitialized register"), 1.0)]),
            }
        }
        let mut assignment = vec![0u16; factors.len()];
        fill(&mut out, &factors, &mut assignment, 0, 1.0);
        out
    }
}

fn fill(
    out: &mut Dense,
    factors: &[Vec<(u16, f64)>],
    assignment: &mut Vec<u16>,
    reg: usize,
    amp: f64,
) {
    if reg == factors.len() {
        let idx = out.index(assignment);
        out.amps[idx] += amp;
        return;
    }
    for &(label, c) in &factors[reg] {
        assignment[reg] = label;
        fill(out, factors, assignment, reg + 1, amp * c);
    }
}

fn vector_components(basis: &Basis, vector: usize) -> Vec<(Vec<u16>, f64)> {
    basis.vectors()[vector]
        .components
        .iter()
        .map(|(t, c)| (t.clone(), c.to_float()))
        .collect()
}

/// Per basis vector, the amplitude over each "rest" configuration (the full
/// assignment with the basis subsystems zeroed out).
fn branch_amplitudes(state: &Dense, basis: &Basis, vector: usize) -> HashMap<Vec<u16>, f64> {
    let comps = vector_components(basis, vector);
    let mut out: HashMap<Vec<u16>, f64> = HashMap::new();
    for (idx, &amp) in state.amps.iter().enumerate() {
        if amp == 0.0 {
            continue;
        }
        let assignment = state.assignment(idx);
        for (tuple, c) in &comps {
            if basis
                .subsystems()
                .iter()
                .zip(tuple)
                .all(|(&reg, &l)| assignment[reg] == l)
            {
                let mut rest = assignment.clone();
                for &reg in basis.subsystems() {
                    rest[reg] = 0;
                }
                *out.entry(rest).or_insert(0.0) += c * amp;
            }
        }
    }
    out
}

fn expand_branch(
    out: &mut Dense,
    basis: &Basis,
    vector: usize,
    rests: &HashMap<Vec<u16>, f64>,
    recorder: Option<(usize, u16)>,
) {
    let comps = vector_components(basis, vector);
    for (rest, &amp) in rests {
        if amp == 0.0 {
            continue;
        }
        for (tuple, c) in &comps {
            let mut assignment = rest.clone();
            for (&reg, &l) in basis.subsystems().iter().zip(tuple) {
                assignment[reg] = l;
            }
            if let Some((reg, label)) = recorder {
                assignment[reg] = label;
            }
            let idx = out.index(&assignment);
            out.amps[idx] += amp * c;
        }
    }
}

/// Projects onto an event (label filters plus |v><v| for vector atoms).
pub fn project(state: &Dense, event: &Event) -> Dense {
    let mut cur = state.clone();
    for atom in event.atoms() {
        match atom {
            EventAtom::Label { register, label } => {
                for idx in 0..cur.amps.len() {
                    if cur.assignment(idx)[*register] != *label {
                        cur.amps[idx] = 0.0;
                    }
                }
            }
            EventAtom::Vector { basis, vector } => {
                let rests = branch_amplitudes(&cur, basis, *vector);
                let mut next = Dense::zero(cur.system.clone());
                expand_branch(&mut next, basis, *vector, &rests, None);
                cur = next;
            }
        }
    }
    cur
}

pub fn probability(state: &Dense, event: &Event) -> f64 {
    project(state, event).norm2()
}

/// Dense trace: one (step id, state) pair per step plus selection
/// probabilities for collapse steps and query values.
pub struct DenseTrace {
    pub entries: Vec<(String, Dense, Option<f64>)>,
    pub queries: Vec<f64>,
}

pub fn dense_run(spec: &ProtocolSpec, perspective: &Perspective) -> DenseTrace {
    let mut state = Dense::initial(spec);
    let mut entries = vec![("init".to_string(), state.clone(), None)];
    for step in &spec.steps {
        let mut prob = None;
        match &step.kind {
            StepKind::Measure {
                basis,
                recorder,
                outcomes,
                ..
            } => match perspective.override_for(&step.id) {
                None => {
                    let mut next = Dense::zero(state.system.clone());
                    for &(vector, out_label) in outcomes {
                        let rests = branch_amplitudes(&state, basis, vector);
                        expand_branch(
                            &mut next,
                            basis,
                            vector,
                            &rests,
                            Some((*recorder, out_label)),
                        );
                    }
                    state = next;
                }
                Some(chosen) => {
                    let vector = basis.vector_index(chosen).expect("override validated");
                    let out_label = outcomes
                        .iter()
                        .find(|(v, _)| *v == vector)
                        .expect("outcome map is total")
                        .1;
                    let rests = branch_amplitudes(&state, basis, vector);
                    let p: f64 = rests.values().map(|a| a * a).sum();
                    let mut next = Dense::zero(state.system.clone());
                    expand_branch(
                        &mut next,
                        basis,
                        vector,
                        &rests,
                        Some((*recorder, out_label)),
                    );
                    for a in &mut next.amps {
                        *a /= p.sqrt();
                    }
                    state = next;
                    prob = Some(p);
                }
            },
            StepKind::Prepare {
                target,
                control,
                rules,
            } => {
                let mut next = Dense::zero(state.system.clone());
                for (idx, &amp) in state.amps.iter().enumerate() {
                    if amp == 0.0 {
                        continue;
                    }
                    let assignment = state.assignment(idx);
                    let rule = rules
                        .iter()
                        .find(|(l, _)| *l == assignment[*control])
                        .expect("rule per control label");
                    for (tl, c) in &rule.1 {
                        let mut a = assignment.clone();
                        a[*target] = *tl;
                        let j = next.index(&a);
                        next.amps[j] += amp * c.to_float();
                    }
                }
                state = next;
            }
            StepKind::Postselect(event) => {
                let mut next = project(&state, event);
                let p = next.norm2();
                for a in &mut next.amps {
                    *a /= p.sqrt();
                }
                state = next;
                prob = Some(p);
            }
        }
        entries.push((step.id.clone(), state.clone(), prob));
    }
    let queries = spec
        .queries
        .iter()
        .map(|q| {
            let (_, s, _) = entries
                .iter()
                .find(|(id, _, _)| *id == q.at)
                .expect("query step exists");
            probability(s, &q.event)
        })
        .collect();
    DenseTrace { entries, queries }
}

/// Elementwise comparison of an exact sparse state against a dense state.
pub fn assert_state_close(exact: &StateVector, dense: &Dense) {
    let mut expected = Dense::zero(exact.system().clone());
    for (assignment, coeff) in exact.terms() {
        let idx = expected.index(assignment);
        expected.amps[idx] = coeff.to_float();
    }
    for (i, (a, b)) in expected.amps.iter().zip(&dense.amps).enumerate() {
        assert!(
            (a - b).abs() < TOL,
            "amplitude mismatch at {:?}: exact {} vs dense {}",
            dense.assignment(i),
            a,
            b
        );
    }
}

pub fn assert_close(a: f64, b: f64) {
    assert!((a - b).abs() < TOL, "{} vs {}", a, b);
}

/// Shorthand exact-state builder from (coefficient, labels) rows.
pub fn labeled(system: &Arc<SystemSpec>, terms: &[(RadicalScalar, &[&str])]) -> StateVector {
    StateVector::from_labeled_terms(system.clone(), terms).expect("valid labels")
}

/// `n/d * sqrt(k)` shorthand.
pub fn rad(n: i64, d: i64, k: u64) -> RadicalScalar {
    &RadicalScalar::rational(n, d) * &RadicalScalar::sqrt_int(k)
}

pub fn rat(n: i64, d: i64) -> RadicalScalar {
    RadicalScalar::rational(n, d)
}

// ---- random protocol corpus --------------------------------------------

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Unit-norm two-label superpositions as (coeff-on-first, coeff-on-second)
/// DSL fragments; each satisfies c1^2 + c2^2 = 1 exactly.
const UNIT_PAIRS: &[(&str, &str)] = &[
    ("1", "0"),
    ("1/sqrt(2)", "1/sqrt(2)"),
    ("1/sqrt(3)", "sqrt(2)/sqrt(3)"),
    ("1/2", "1/2*sqrt(3)"),
    ("3/5", "4/5"),
];

/// Generates a small random protocol: one measured register, 1–3 recorder
/// registers, computational or two-label rotated measurement bases, one
/// query. Every generated protocol parses and every entangle step spans.
pub fn random_protocol(seed: u64) -> String {
    let mut rng = StdRng::seed_from_u64(seed);
    let n_labels = rng.gen_range(2..=3usize);
    let n_recorders = rng.gen_range(1..=3usize);
    let labels = &["a", "b", "c"][..n_labels];

    let mut text = String::new();
    text.push_str(&format!("register q {{ {} }}\n", labels.join(" ")));
    for i in 0..n_recorders {
        text.push_str(&format!("register m{} {{ r x y z }} ready r\n", i));
    }

    // the initial superposition only ever populates labels a and b
    let (c1, c2) = UNIT_PAIRS[rng.gen_range(0..UNIT_PAIRS.len())];
    if c2 == "0" {
        text.push_str("init q = |a>\n");
    } else {
        text.push_str(&format!("init q = {}|a> + {}|b>\n", c1, c2));
    }

    let mut basis_stmts = String::new();
    let mut step_stmts = String::new();
    for i in 0..n_recorders {
        if rng.gen_bool(0.5) {
            // computational basis over the populated labels only
            step_stmts.push_str(&format!(
                "step s{} measure q recorder m{} outcomes {{ a -> x; b -> y }}\n",
                i, i
            ));
        } else {
            let (r1, r2) = UNIT_PAIRS[rng.gen_range(1..UNIT_PAIRS.len())];
            basis_stmts.push_str(&format!(
                "basis rot{i} on q {{\n  u = {r1}|a> + {r2}|b>\n  w = {r2}|a> - {r1}|b>\n}}\n"
            ));
            step_stmts.push_str(&format!(
                "step s{} measure rot{} recorder m{} outcomes {{ u -> x; w -> y }}\n",
                i, i, i
            ));
        }
    }
    text.push_str(&basis_stmts);
    text.push_str(&step_stmts);
    text.push_str("perspective ensemble { }\n");
    text.push_str(&format!("query at s{} probability q=a\n", n_recorders - 1));
    text
}
