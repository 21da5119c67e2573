//! Named orthonormal vector sets over a subsystem list.
//!
//! A basis need not span the full subsystem space (the ok/fail pairs span a
//! 2-dimensional subspace of a larger product space); span sufficiency is
//! checked where it matters, at measurement time.

use thiserror::Error;

use crate::scalar::RadicalScalar;
use crate::system::SystemSpec;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BasisError {
    #[error("basis `{basis}`: vector `{vector}` has squared norm {norm}, expected 1")]
    NonUnitVector {
        basis: String,
        vector: String,
        norm: String,
    },
    #[error("basis `{basis}`: vectors `{a}` and `{b}` are not orthogonal")]
    NotOrthogonal { basis: String, a: String, b: String },
    #[error("basis `{basis}`: vector `{vector}` repeats a label tuple")]
    DuplicateTuple { basis: String, vector: String },
    #[error("basis `{basis}`: vector `{vector}` has a component of wrong arity")]
    ArityMismatch { basis: String, vector: String },
    #[error("basis `{basis}`: duplicate vector name `{vector}`")]
    DuplicateVectorName { basis: String, vector: String },
    #[error("basis `{basis}`: vector `{vector}` has no components")]
    EmptyVector { basis: String, vector: String },
    #[error("basis `{basis}` repeats subsystem register")]
    SubsystemRepeated { basis: String },
    #[error("basis `{basis}` has no subsystems")]
    NoSubsystems { basis: String },
}

/// One weighted label-tuple combination, e.g. `(|h,h⟩ − |t,t⟩)/√2`.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisVector {
    pub name: String,
    /// (label tuple over the basis subsystems, coefficient); tuples distinct.
    pub components: Vec<(Vec<u16>, RadicalScalar)>,
}

impl BasisVector {
    /// Exact real inner product of two vectors over the same subsystems.
    pub fn inner(&self, other: &BasisVector) -> RadicalScalar {
        let mut acc = RadicalScalar::zero();
        for (tuple, c) in &self.components {
            if let Some((_, d)) = other.components.iter().find(|(t, _)| t == tuple) {
                acc = acc + c * d;
            }
        }
        acc
    }

    /// Coefficient of the given label tuple, zero if absent.
    pub fn component(&self, tuple: &[u16]) -> RadicalScalar {
        self.components
            .iter()
            .find(|(t, _)| t == tuple)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(RadicalScalar::zero)
    }
}

/// Validated orthonormal set of [`BasisVector`]s over an ordered register
/// subset of a [`SystemSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct Basis {
    name: String,
    /// Register indices into the owning system, in declaration order.
    subsystems: Vec<usize>,
    vectors: Vec<BasisVector>,
}

impl Basis {
    pub fn new(
        name: impl Into<String>,
        system: &SystemSpec,
        subsystems: Vec<usize>,
        vectors: Vec<BasisVector>,
    ) -> Result<Self, BasisError> {
        let name = name.into();
        if subsystems.is_empty() {
            return Err(BasisError::NoSubsystems { basis: name });
        }
        for (i, s) in subsystems.iter().enumerate() {
            if subsystems[..i].contains(s) {
                return Err(BasisError::SubsystemRepeated { basis: name });
            }
        }
        for (vi, v) in vectors.iter().enumerate() {
            if vectors[..vi].iter().any(|o| o.name == v.name) {
                return Err(BasisError::DuplicateVectorName {
                    basis: name,
                    vector: v.name.clone(),
                });
            }
            if v.components.is_empty() {
                return Err(BasisError::EmptyVector {
                    basis: name,
                    vector: v.name.clone(),
                });
            }
            for (ci, (tuple, _)) in v.components.iter().enumerate() {
                if tuple.len() != subsystems.len() {
                    return Err(BasisError::ArityMismatch {
                        basis: name,
                        vector: v.name.clone(),
                    });
                }
                for (pos, &reg) in subsystems.iter().enumerate() {
                    debug_assert!((tuple[pos] as usize) < system.register(reg).labels().len());
                }
                if v.components[..ci].iter().any(|(t, _)| t == tuple) {
                    return Err(BasisError::DuplicateTuple {
                        basis: name,
                        vector: v.name.clone(),
                    });
                }
            }
            let norm = v.inner(v);
            if !norm.is_one() {
                return Err(BasisError::NonUnitVector {
                    basis: name,
                    vector: v.name.clone(),
                    norm: norm.to_string(),
                });
            }
        }
        for (i, a) in vectors.iter().enumerate() {
            for b in &vectors[i + 1..] {
                if !a.inner(b).is_zero() {
                    return Err(BasisError::NotOrthogonal {
                        basis: name,
                        a: a.name.clone(),
                        b: b.name.clone(),
                    });
                }
            }
        }
        Ok(Self {
            name,
            subsystems,
            vectors,
        })
    }

    /// Computational basis over one register, restricted to the given labels.
    /// Vector names are the label names themselves.
    pub fn computational(
        name: impl Into<String>,
        system: &SystemSpec,
        register: usize,
        labels: &[u16],
    ) -> Result<Self, BasisError> {
        let vectors = labels
            .iter()
            .map(|&l| BasisVector {
                name: system.register(register).label(l).to_string(),
                components: vec![(vec![l], RadicalScalar::one())],
            })
            .collect();
        Self::new(name, system, vec![register], vectors)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn subsystems(&self) -> &[usize] {
        &self.subsystems
    }

    pub fn vectors(&self) -> &[BasisVector] {
        &self.vectors
    }

    pub fn vector_index(&self, name: &str) -> Option<usize> {
        self.vectors.iter().position(|v| v.name == name)
    }
}
