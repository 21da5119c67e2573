//! Events (conjunctions of label and basis-vector atoms) and the probability
//! queries built on them.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::basis::Basis;
use crate::scalar::RadicalScalar;
use crate::state::StateVector;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EventError {
    #[error("event atoms overlap on register `{0}`")]
    OverlappingAtoms(String),
    #[error("basis `{basis}` has no vector `{vector}`")]
    UnknownVector { basis: String, vector: String },
    #[error("conditioning event has probability 0")]
    ZeroCondition,
    #[error("exact division requires a monomial conditioning probability, got `{0}`")]
    NonMonomialDivision(String),
}

/// One conjunct of an [`Event`].
#[derive(Debug, Clone, PartialEq)]
pub enum EventAtom {
    /// A register reads a specific label.
    Label { register: usize, label: u16 },
    /// A subsystem group lies along one vector of an orthonormal basis.
    Vector { basis: Basis, vector: usize },
}

/// Conjunction of atoms with pairwise disjoint register footprints.
#[derive(Debug, Clone, PartialEq)]
pub struct Event {
    atoms: Vec<EventAtom>,
}

impl Event {
    pub fn new(atoms: Vec<EventAtom>) -> Result<Self, EventError> {
        let mut seen: HashSet<usize> = HashSet::new();
        for atom in &atoms {
            let regs: Vec<usize> = match atom {
                EventAtom::Label { register, .. } => vec![*register],
                EventAtom::Vector { basis, .. } => basis.subsystems().to_vec(),
            };
            for r in regs {
                if !seen.insert(r) {
                    return Err(EventError::OverlappingAtoms(r.to_string()));
                }
            }
        }
        Ok(Self { atoms })
    }

    pub fn label(register: usize, label: u16) -> Self {
        Self {
            atoms: vec![EventAtom::Label { register, label }],
        }
    }

    pub fn vector(basis: &Basis, vector: &str) -> Result<Self, EventError> {
        let idx = basis
            .vector_index(vector)
            .ok_or_else(|| EventError::UnknownVector {
                basis: basis.name().to_string(),
                vector: vector.to_string(),
            })?;
        Ok(Self {
            atoms: vec![EventAtom::Vector {
                basis: basis.clone(),
                vector: idx,
            }],
        })
    }

    pub fn atoms(&self) -> &[EventAtom] {
        &self.atoms
    }
}

impl StateVector {
    /// Unnormalized projection of the state onto the event. Atoms are applied
    /// in sequence; their projectors commute because their register footprints
    /// are disjoint.
    pub fn project(&self, event: &Event) -> StateVector {
        let mut state = self.clone();
        for atom in &event.atoms {
            state = match atom {
                EventAtom::Label { register, label } => StateVector::from_terms(
                    state.system().clone(),
                    state
                        .terms()
                        .filter(|(a, _)| a[*register] == *label)
                        .map(|(a, c)| (a.clone(), c.clone())),
                ),
                EventAtom::Vector { basis, vector } => {
                    state.decompose(basis).expand_branch(*vector, None)
                }
            };
        }
        state
    }

    /// Squared norm of the event projection; a value in [0, 1] for
    /// normalized states.
    pub fn probability(&self, event: &Event) -> RadicalScalar {
        self.project(event).norm_squared()
    }

    /// `P(query ∧ given) / P(given)`, computed exactly. The division goes
    /// through the monomial reciprocal; a non-monomial conditioning
    /// probability is an error rather than an approximation.
    pub fn conditional_probability(
        &self,
        given: &Event,
        query: &Event,
    ) -> Result<RadicalScalar, EventError> {
        let conditioned = self.project(given);
        let p_given = conditioned.norm_squared();
        if p_given.is_zero() {
            return Err(EventError::ZeroCondition);
        }
        let inv = p_given
            .invert_monomial()
            .map_err(|_| EventError::NonMonomialDivision(p_given.to_string()))?;
        let p_joint = conditioned.probability(query);
        Ok(&p_joint * &inv)
    }
}

impl fmt::Display for EventAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EventAtom::Label { register, label } => write!(f, "reg{}={}", register, label),
            EventAtom::Vector { basis, vector } => {
                write!(f, "{}:{}", basis.name(), basis.vectors()[*vector].name)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::basis::BasisVector;
    use crate::system::{RegisterSpec, SystemSpec};

    fn sys() -> Arc<SystemSpec> {
        Arc::new(
            SystemSpec::new(vec![
                RegisterSpec::new("a", vec!["0".into(), "1".into()], None).unwrap(),
                RegisterSpec::new("b", vec!["0".into(), "1".into()], None).unwrap(),
            ])
            .unwrap(),
        )
    }

    fn bell_state(system: Arc<SystemSpec>) -> StateVector {
        StateVector::from_labeled_terms(
            system,
            &[
                (RadicalScalar::radical(1, 2, 2), &["0", "0"]),
                (RadicalScalar::radical(1, 2, 2), &["1", "1"]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn rejects_overlapping_atoms() {
        let err = Event::new(vec![
            EventAtom::Label {
                register: 0,
                label: 0,
            },
            EventAtom::Label {
                register: 0,
                label: 1,
            },
        ]);
        assert!(matches!(err, Err(EventError::OverlappingAtoms(_))));
    }

    #[test]
    fn label_probability() {
        let s = bell_state(sys());
        assert_eq!(
            s.probability(&Event::label(0, 0)),
            RadicalScalar::rational(1, 2)
        );
        let joint = Event::new(vec![
            EventAtom::Label {
                register: 0,
                label: 0,
            },
            EventAtom::Label {
                register: 1,
                label: 1,
            },
        ])
        .unwrap();
        assert!(s.probability(&joint).is_zero());
    }

    #[test]
    fn vector_probability() {
        let system = sys();
        let s = bell_state(system.clone());
        let plus = Basis::new(
            "bell",
            &system,
            vec![0, 1],
            vec![
                BasisVector {
                    name: "plus".into(),
                    components: vec![
                        (vec![0, 0], RadicalScalar::radical(1, 2, 2)),
                        (vec![1, 1], RadicalScalar::radical(1, 2, 2)),
                    ],
                },
                BasisVector {
                    name: "minus".into(),
                    components: vec![
                        (vec![0, 0], RadicalScalar::radical(1, 2, 2)),
                        (vec![1, 1], RadicalScalar::radical(-1, 2, 2)),
                    ],
                },
            ],
        )
        .unwrap();
        assert!(s
            .probability(&Event::vector(&plus, "plus").unwrap())
            .is_one());
        assert!(s
            .probability(&Event::vector(&plus, "minus").unwrap())
            .is_zero());
    }

    #[test]
    fn conditional_probability_exact() {
        let s = bell_state(sys());
        let p = s
            .conditional_probability(&Event::label(0, 1), &Event::label(1, 1))
            .unwrap();
        assert!(p.is_one());
        let err = s.conditional_probability(
            &Event::new(vec![
                EventAtom::Label {
                    register: 0,
                    label: 0,
                },
                EventAtom::Label {
                    register: 1,
                    label: 1,
                },
            ])
            .unwrap(),
            &Event::label(0, 0),
        );
        assert_eq!(err, Err(EventError::ZeroCondition));
    }
}
