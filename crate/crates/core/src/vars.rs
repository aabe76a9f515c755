//! Variable universe and total assignments.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// An ordered set of distinct variable names `Y_1..Y_k`; indices are stable
/// and 0-based internally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableSet {
    names: Vec<String>,
    by_name: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarsError {
    Empty,
    Duplicate(String),
}

impl fmt::Display for VarsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarsError::Empty => write!(f, "variable set must not be empty"),
            VarsError::Duplicate(n) => write!(f, "duplicate variable name: {n}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for VarsError {}

impl VariableSet {
    pub fn new<I, S>(names: I) -> Result<Self, VarsError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(VarsError::Empty);
        }
        let mut by_name = BTreeMap::new();
        for (i, n) in names.iter().enumerate() {
            if by_name.insert(n.clone(), i).is_some() {
                return Err(VarsError::Duplicate(n.clone()));
            }
        }
        Ok(VariableSet { names, by_name })
    }

    /// `Y1..Yk` with the given count.
    pub fn numbered(k: usize) -> Result<Self, VarsError> {
        let mut names = Vec::with_capacity(k);
        for i in 1..=k {
            names.push(alloc::format!("Y{i}"));
        }
        VariableSet::new(names)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// A total boolean assignment over a variable set; `bits[i]` is the value of
/// the variable with index `i`.
///
/// The derived ordering is lexicographic on the bit string with `0 < 1`,
/// which is the tie-break order used by every enumeration in the crate.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct State {
    bits: Vec<bool>,
}

impl State {
    pub fn new(bits: Vec<bool>) -> Self {
        State { bits }
    }

    pub fn zeros(k: usize) -> Self {
        State {
            bits: vec![false; k],
        }
    }

    /// State with exactly the given variable indices set.
    pub fn from_selected(k: usize, selected: &[usize]) -> Self {
        let mut bits = vec![false; k];
        for &i in selected {
            bits[i] = true;
        }
        State { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Number of variables set to 1.
    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn selected(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
    }
}
