use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Ordered, named variables with positive integer weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
    weights: Vec<u32>,
    index: HashMap<String, usize>,
}

impl VarTable {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Arc<VarTable>> {
        let weights = vec![1; names.len()];
        Self::with_weights(names, &weights)
    }

    pub fn with_weights<S: AsRef<str>>(names: &[S], weights: &[u32]) -> Result<Arc<VarTable>> {
        if names.len() != weights.len() {
            return Err(Error::Table(format!(
                "{} names but {} weights",
                names.len(),
                weights.len()
            )));
        }
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            let n = n.as_ref();
            if !is_identifier(n) {
                return Err(Error::Table(format!("invalid variable name `{n}`")));
            }
            if index.insert(n.to_string(), i).is_some() {
                return Err(Error::Table(format!("duplicate variable `{n}`")));
            }
        }
        if let Some(i) = weights.iter().position(|&w| w == 0) {
            return Err(Error::Table(format!(
                "weight of `{}` must be positive",
                names[i].as_ref()
            )));
        }
        Ok(Arc::new(VarTable {
            names: names.iter().map(|n| n.as_ref().to_string()).collect(),
            weights: weights.to_vec(),
            index,
        }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn var(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownIdentifier(name.to_string()))
    }

    /// Table with `extra` appended (names already present are skipped).
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Result<Arc<VarTable>> {
        let mut names = self.names.clone();
        let mut weights = self.weights.clone();
        for e in extra {
            if self.index_of(e.as_ref()).is_none() && !names.iter().any(|n| n == e.as_ref()) {
                names.push(e.as_ref().to_string());
                weights.push(1);
            }
        }
        VarTable::with_weights(&names, &weights)
    }
}

pub fn is_identifier(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some(ch) if ch.is_ascii_alphabetic())
        && c.all(|ch| ch.is_ascii_alphanumeric() || ch == '_')
}
