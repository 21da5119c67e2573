//! Sparse product-term state vectors over a fixed register layout, with
//! inner products, norms, and orthonormal-basis decomposition.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::basis::Basis;
use crate::scalar::RadicalScalar;
use crate::system::{SystemError, SystemSpec};

/// One label per register, in register order.
pub type Assignment = Vec<u16>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StateError {
    #[error("states belong to different register layouts")]
    SystemMismatch,
    #[error("initial superposition for register `{register}` has squared norm {norm}, expected 1")]
    NonUnitInit { register: String, norm: String },
    #[error("register `{register}` has no initializer and no ready label")]
    MissingInit { register: String },
    #[error(transparent)]
    System(#[from] SystemError),
}

/// Normalized (or, for decomposition branches, sub-normalized) sum of product
/// terms. Stored sparsely; no duplicate assignments, no zero coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    system: Arc<SystemSpec>,
    terms: BTreeMap<Assignment, RadicalScalar>,
}

impl StateVector {
    pub fn empty(system: Arc<SystemSpec>) -> Self {
        Self {
            system,
            terms: BTreeMap::new(),
        }
    }

    /// Canonicalizing constructor: merges duplicate assignments, drops zeros.
    pub fn from_terms(
        system: Arc<SystemSpec>,
        terms: impl IntoIterator<Item = (Assignment, RadicalScalar)>,
    ) -> Self {
        let mut out = Self::empty(system);
        for (a, c) in terms {
            debug_assert_eq!(a.len(), out.system.len());
            out.accumulate(a, &c);
        }
        out
    }

    /// Test- and example-friendly constructor from label names, one per
    /// register in register order.
    pub fn from_labeled_terms(
        system: Arc<SystemSpec>,
        terms: &[(RadicalScalar, &[&str])],
    ) -> Result<Self, StateError> {
        let mut resolved = Vec::with_capacity(terms.len());
        for (coeff, labels) in terms {
            assert_eq!(labels.len(), system.len(), "one label per register");
            let mut a = Vec::with_capacity(labels.len());
            for (i, l) in labels.iter().enumerate() {
                a.push(system.register(i).label_index(l)?);
            }
            resolved.push((a, coeff.clone()));
        }
        Ok(Self::from_terms(system, resolved))
    }

    /// Tensor-product initial state. `inits` gives a unit-norm label
    /// superposition per register; registers without an initializer start at
    /// their ready label.
    pub fn build_initial(
        system: Arc<SystemSpec>,
        inits: &[(usize, Vec<(u16, RadicalScalar)>)],
    ) -> Result<Self, StateError> {
        // Per-register canonical superpositions (duplicate labels merged).
        let mut factors: Vec<Vec<(u16, RadicalScalar)>> = Vec::with_capacity(system.len());
        for (i, reg) in system.registers().iter().enumerate() {
            let factor = match inits.iter().find(|(r, _)| *r == i) {
                Some((_, sup)) => {
                    let mut merged: BTreeMap<u16, RadicalScalar> = BTreeMap::new();
                    for (l, c) in sup {
                        let e = merged.entry(*l).or_insert_with(RadicalScalar::zero);
                        *e = &*e + c;
                    }
                    merged.retain(|_, c| !c.is_zero());
                    let norm: RadicalScalar = merged
                        .values()
                        .fold(RadicalScalar::zero(), |acc, c| acc + c * c);
                    if !norm.is_one() {
                        return Err(StateError::NonUnitInit {
                            register: reg.name().to_string(),
                            norm: norm.to_string(),
                        });
                    }
                    merged.into_iter().collect()
                }
                None => {
                    let ready = reg.ready().ok_or_else(|| StateError::MissingInit {
                        register: reg.name().to_string(),
                    })?;
                    vec![(ready, RadicalScalar::one())]
                }
            };
            factors.push(factor);
        }
        let mut terms: Vec<(Assignment, RadicalScalar)> = vec![(Vec::new(), RadicalScalar::one())];
        for factor in &factors {
            let mut next = Vec::with_capacity(terms.len() * factor.len());
            for (a, c) in &terms {
                for (l, fc) in factor {
                    let mut a2 = a.clone();
                    a2.push(*l);
                    next.push((a2, c * fc));
                }
            }
            terms = next;
        }
        Ok(Self::from_terms(system, terms))
    }

    pub fn system(&self) -> &Arc<SystemSpec> {
        &self.system
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Assignment, &RadicalScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, assignment: &[u16]) -> RadicalScalar {
        self.terms
            .get(assignment)
            .cloned()
            .unwrap_or_else(RadicalScalar::zero)
    }

    fn accumulate(&mut self, assignment: Assignment, coeff: &RadicalScalar) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(assignment) {
            Entry::Occupied(mut e) => {
                let v = e.get() + coeff;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            Entry::Vacant(e) => {
                e.insert(coeff.clone());
            }
        }
    }

    /// `⟨a|b⟩` over shared assignments; amplitudes are real, so no conjugation.
    pub fn inner_product(&self, other: &StateVector) -> Result<RadicalScalar, StateError> {
        if self.system != other.system {
            return Err(StateError::SystemMismatch);
        }
        let mut acc = RadicalScalar::zero();
        for (a, c) in &self.terms {
            if let Some(d) = other.terms.get(a) {
                acc = acc + c * d;
            }
        }
        Ok(acc)
    }

    pub fn norm_squared(&self) -> RadicalScalar {
        self.terms
            .values()
            .fold(RadicalScalar::zero(), |acc, c| acc + c * c)
    }

    pub fn scale(&self, factor: &RadicalScalar) -> StateVector {
        Self::from_terms(
            self.system.clone(),
            self.terms.iter().map(|(a, c)| (a.clone(), c * factor)),
        )
    }

    pub fn merge(&self, other: &StateVector) -> Result<StateVector, StateError> {
        if self.system != other.system {
            return Err(StateError::SystemMismatch);
        }
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.accumulate(a.clone(), c);
        }
        Ok(out)
    }

    /// Splits the state along an orthonormal basis over a register subset:
    /// `state = Σᵢ |bᵢ⟩ ⊗ branchᵢ + residual`, exactly. The residual is empty
    /// iff the support on the basis subsystems lies in the basis span.
    pub fn decompose(&self, basis: &Basis) -> Decomposition {
        let subsystems = basis.subsystems().to_vec();
        let complement_regs: Vec<usize> = (0..self.system.len())
            .filter(|i| !subsystems.contains(i))
            .collect();
        let complement_system = Arc::new(
            SystemSpec::new(
                complement_regs
                    .iter()
                    .map(|&i| self.system.register(i).clone())
                    .collect(),
            )
            .expect("complement of a valid system is valid"),
        );

        // Group terms by their complement assignment.
        let mut groups: BTreeMap<Assignment, Vec<(Assignment, RadicalScalar)>> = BTreeMap::new();
        for (a, c) in &self.terms {
            let sub: Assignment = subsystems.iter().map(|&i| a[i]).collect();
            let rest: Assignment = complement_regs.iter().map(|&i| a[i]).collect();
            groups.entry(rest).or_default().push((sub, c.clone()));
        }

        let mut branches: Vec<Branch> = basis
            .vectors()
            .iter()
            .enumerate()
            .map(|(i, v)| Branch {
                vector: v.name.clone(),
                vector_index: i,
                state: StateVector::empty(complement_system.clone()),
            })
            .collect();
        let mut residual = StateVector::empty(self.system.clone());

        for (rest, subs) in &groups {
            // Projection amplitude onto each basis vector for this group.
            let mut remainder: BTreeMap<Assignment, RadicalScalar> = subs.iter().cloned().collect();
            for (vi, v) in basis.vectors().iter().enumerate() {
                let mut amp = RadicalScalar::zero();
                for (sub, c) in subs {
                    amp = amp + &v.component(sub) * c;
                }
                if amp.is_zero() {
                    continue;
                }
                branches[vi].state.accumulate(rest.clone(), &amp);
                for (tuple, vc) in &v.components {
                    let e = remainder
                        .entry(tuple.clone())
                        .or_insert_with(RadicalScalar::zero);
                    *e = &*e - &(&amp * vc);
                }
            }
            for (sub, c) in remainder {
                if c.is_zero() {
                    continue;
                }
                let full = interleave(self.system.len(), &subsystems, &sub, &complement_regs, rest);
                residual.accumulate(full, &c);
            }
        }

        Decomposition {
            basis: basis.clone(),
            full_system: self.system.clone(),
            subsystems,
            complement_regs,
            branches,
            residual,
        }
    }

    /// Stable text rendering: one line per term, `coeff · |label,label,…⟩` in
    /// register order, sorted lexicographically by the label tuple.
    pub fn render(&self) -> String {
        let mut lines: Vec<(Vec<&str>, String)> = self
            .terms
            .iter()
            .map(|(a, c)| {
                let labels: Vec<&str> = a
                    .iter()
                    .enumerate()
                    .map(|(i, &l)| self.system.register(i).label(l))
                    .collect();
                let line = format!("{} · |{}⟩", c, labels.join(","));
                (labels, line)
            })
            .collect();
        lines.sort();
        lines
            .into_iter()
            .map(|(_, l)| l)
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "(empty state)");
        }
        write!(f, "{}", self.render())
    }
}

fn interleave(
    len: usize,
    subsystems: &[usize],
    sub: &[u16],
    complement: &[usize],
    rest: &[u16],
) -> Assignment {
    let mut full = vec![0u16; len];
    for (pos, &reg) in subsystems.iter().enumerate() {
        full[reg] = sub[pos];
    }
    for (pos, &reg) in complement.iter().enumerate() {
        full[reg] = rest[pos];
    }
    full
}

/// One component of a basis decomposition: the complement-system state paired
/// with a basis vector.
#[derive(Debug, Clone)]
pub struct Branch {
    pub vector: String,
    pub vector_index: usize,
    /// State over the complement registers (basis subsystems removed).
    pub state: StateVector,
}

/// Result of [`StateVector::decompose`]; exactly reconstructible via
/// [`Decomposition::recombine`].
#[derive(Debug, Clone)]
pub struct Decomposition {
    basis: Basis,
    full_system: Arc<SystemSpec>,
    subsystems: Vec<usize>,
    complement_regs: Vec<usize>,
    pub branches: Vec<Branch>,
    /// Part of the state outside the basis span, over the full system.
    pub residual: StateVector,
}

impl Decomposition {
    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn branch(&self, vector: &str) -> Option<&Branch> {
        self.branches.iter().find(|b| b.vector == vector)
    }

    /// Expands branch `index` back into a full-system state, optionally
    /// rewriting one complement register's label (the measurement recorder).
    pub fn expand_branch(&self, index: usize, recorder: Option<(usize, u16)>) -> StateVector {
        let branch = &self.branches[index];
        let vector = &self.basis.vectors()[index];
        let mut terms = Vec::new();
        for (rest, amp) in branch.state.terms() {
            let mut rest = rest.clone();
            if let Some((reg, label)) = recorder {
                let pos = self
                    .complement_regs
                    .iter()
                    .position(|&r| r == reg)
                    .expect("recorder must be outside the basis subsystems");
                rest[pos] = label;
            }
            for (tuple, vc) in &vector.components {
                let full = interleave(
                    self.full_system.len(),
                    &self.subsystems,
                    tuple,
                    &self.complement_regs,
                    &rest,
                );
                terms.push((full, amp * vc));
            }
        }
        StateVector::from_terms(self.full_system.clone(), terms)
    }

    /// `Σᵢ |bᵢ⟩ ⊗ branchᵢ + residual`; equals the decomposed state exactly.
    pub fn recombine(&self) -> StateVector {
        let mut out = self.residual.clone();
        for i in 0..self.branches.len() {
            out = out
                .merge(&self.expand_branch(i, None))
                .expect("branch expansion shares the full system");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::BasisVector;
    use crate::system::RegisterSpec;

    fn sys() -> Arc<SystemSpec> {
        Arc::new(
            SystemSpec::new(vec![
                RegisterSpec::new("coin", vec!["h".into(), "t".into()], None).unwrap(),
                RegisterSpec::new("mem", vec!["r".into(), "h".into(), "t".into()], Some("r"))
                    .unwrap(),
            ])
            .unwrap(),
        )
    }

    fn coin_superposition() -> Vec<(u16, RadicalScalar)> {
        // (|h⟩ + √2|t⟩)/√3
        vec![
            (0, RadicalScalar::radical(1, 3, 3)),
            (1, RadicalScalar::radical(1, 3, 6)),
        ]
    }

    #[test]
    fn build_initial_tensor() {
        let s = StateVector::build_initial(sys(), &[(0, coin_superposition())]).unwrap();
        assert_eq!(s.num_terms(), 2);
        assert_eq!(s.coefficient(&[0, 0]), RadicalScalar::radical(1, 3, 3));
        assert_eq!(s.coefficient(&[1, 0]), RadicalScalar::radical(1, 3, 6));
        assert!(s.norm_squared().is_one());
    }

    #[test]
    fn build_initial_all_ready_needs_coin_init() {
        // coin has no ready label, so it must be initialized
        let err = StateVector::build_initial(sys(), &[]).unwrap_err();
        assert!(matches!(err, StateError::MissingInit { .. }));
        let one =
            StateVector::build_initial(sys(), &[(0, vec![(1, RadicalScalar::one())])]).unwrap();
        assert_eq!(one.num_terms(), 1);
        assert!(one.coefficient(&[1, 0]).is_one());
    }

    #[test]
    fn build_initial_duplicate_label_is_non_unit() {
        // (1/√2)|h⟩ + (1/√2)|h⟩ merges to √2|h⟩ with norm 2
        let dup = vec![
            (0u16, RadicalScalar::radical(1, 2, 2)),
            (0u16, RadicalScalar::radical(1, 2, 2)),
        ];
        let err = StateVector::build_initial(sys(), &[(0, dup)]).unwrap_err();
        match err {
            StateError::NonUnitInit { register, norm } => {
                assert_eq!(register, "coin");
                assert_eq!(norm, "2");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn inner_product_basics() {
        let s = StateVector::build_initial(sys(), &[(0, coin_superposition())]).unwrap();
        assert!(s.inner_product(&s).unwrap().is_one());
        let other = StateVector::from_labeled_terms(
            s.system().clone(),
            &[(RadicalScalar::one(), &["h", "t"])],
        )
        .unwrap();
        assert!(s.inner_product(&other).unwrap().is_zero());
    }

    #[test]
    fn decompose_recombines_and_reports_residual() {
        let system = sys();
        // ok̄/f̄ analog over (coin, mem)
        let okbar = Basis::new(
            "okbar",
            &system,
            vec![0, 1],
            vec![
                BasisVector {
                    name: "ok".into(),
                    components: vec![
                        (vec![0, 1], RadicalScalar::radical(1, 2, 2)),
                        (vec![1, 2], RadicalScalar::radical(-1, 2, 2)),
                    ],
                },
                BasisVector {
                    name: "f".into(),
                    components: vec![
                        (vec![0, 1], RadicalScalar::radical(1, 2, 2)),
                        (vec![1, 2], RadicalScalar::radical(1, 2, 2)),
                    ],
                },
            ],
        )
        .unwrap();

        // |h, r⟩ is orthogonal to span{|h,h⟩, |t,t⟩}: all branches empty.
        let outside =
            StateVector::from_labeled_terms(system.clone(), &[(RadicalScalar::one(), &["h", "r"])])
                .unwrap();
        let d = outside.decompose(&okbar);
        assert!(d.branches.iter().all(|b| b.state.is_empty()));
        assert_eq!(d.residual, outside);
        assert_eq!(d.recombine(), outside);

        // (|h,h⟩ + √2|t,t⟩)/√3 lies in the span; residual empty.
        let inside = StateVector::from_labeled_terms(
            system.clone(),
            &[
                (RadicalScalar::radical(1, 3, 3), &["h", "h"]),
                (RadicalScalar::radical(1, 3, 6), &["t", "t"]),
            ],
        )
        .unwrap();
        let d = inside.decompose(&okbar);
        assert!(d.residual.is_empty());
        assert_eq!(d.recombine(), inside);
        // ⟨ok|ψ⟩ = (1/√2)(1/√3) − (1/√2)(√2/√3) = (1 − √2)/√6
        let ok_amp = d.branch("ok").unwrap().state.coefficient(&[]);
        let expect = &(RadicalScalar::one() - RadicalScalar::sqrt_int(2))
            * &RadicalScalar::sqrt_int(6).invert_monomial().unwrap();
        assert_eq!(ok_amp, expect);
    }

    #[test]
    fn render_is_sorted_and_stable() {
        let system = sys();
        let s = StateVector::from_labeled_terms(
            system,
            &[
                (RadicalScalar::radical(1, 2, 2), &["t", "t"]),
                (RadicalScalar::radical(-1, 2, 2), &["h", "h"]),
            ],
        )
        .unwrap();
        assert_eq!(s.render(), "-1/2*sqrt(2) · |h,h⟩\n1/2*sqrt(2) · |t,t⟩");
    }
}
