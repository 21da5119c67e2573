//! Register declarations and the fixed register layout of a protocol run.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SystemError {
    #[error("register `{0}` has no labels")]
    EmptyLabels(String),
    #[error("register `{register}` repeats label `{label}`")]
    DuplicateLabel { register: String, label: String },
    #[error("register `{register}` declares ready label `{label}` which is not in its label set")]
    UnknownReadyLabel { register: String, label: String },
    #[error("duplicate register name `{0}`")]
    DuplicateRegister(String),
    #[error("unknown register `{0}`")]
    UnknownRegister(String),
    #[error("register `{register}` has no label `{label}`")]
    UnknownLabel { register: String, label: String },
}

/// A finite subsystem: a named register with an ordered label set and an
/// optional distinguished "ready" label for not-yet-written memories.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegisterSpec {
    name: String,
    labels: Vec<String>,
    ready: Option<usize>,
}

impl RegisterSpec {
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        ready_label: Option<&str>,
    ) -> Result<Self, SystemError> {
        let name = name.into();
        if labels.is_empty() {
            return Err(SystemError::EmptyLabels(name));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(SystemError::DuplicateLabel {
                    register: name,
                    label: l.clone(),
                });
            }
        }
        let ready = match ready_label {
            None => None,
            Some(l) => Some(labels.iter().position(|x| x == l).ok_or_else(|| {
                SystemError::UnknownReadyLabel {
                    register: name.clone(),
                    label: l.to_string(),
                }
            })?),
        };
        Ok(Self {
            name,
            labels,
            ready,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn ready(&self) -> Option<u16> {
        self.ready.map(|i| i as u16)
    }

    pub fn label(&self, index: u16) -> &str {
        &self.labels[index as usize]
    }

    pub fn label_index(&self, label: &str) -> Result<u16, SystemError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| i as u16)
            .ok_or_else(|| SystemError::UnknownLabel {
                register: self.name.clone(),
                label: label.to_string(),
            })
    }
}

/// The ordered set of registers a protocol runs over. Register order is fixed
/// for the lifetime of a run and defines term canonical ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemSpec {
    registers: Vec<RegisterSpec>,
}

impl SystemSpec {
    pub fn new(registers: Vec<RegisterSpec>) -> Result<Self, SystemError> {
        for (i, r) in registers.iter().enumerate() {
            if registers[..i].iter().any(|o| o.name == r.name) {
                return Err(SystemError::DuplicateRegister(r.name.clone()));
            }
        }
        Ok(Self { registers })
    }

    pub fn len(&self) -> usize {
        self.registers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.registers.is_empty()
    }

    pub fn registers(&self) -> &[RegisterSpec] {
        &self.registers
    }

    pub fn register(&self, index: usize) -> &RegisterSpec {
        &self.registers[index]
    }

    pub fn register_index(&self, name: &str) -> Result<usize, SystemError> {
        self.registers
            .iter()
            .position(|r| r.name == name)
            .ok_or_else(|| SystemError::UnknownRegister(name.to_string()))
    }
}

impl fmt::Display for SystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.registers {
            write!(f, "register {} {{", r.name)?;
            for l in &r.labels {
                write!(f, " {}", l)?;
            }
            write!(f, " }}")?;
            if let Some(i) = r.ready {
                write!(f, " ready {}", r.labels[i])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
