//! Ledger of exact computations that contradict a published value.
//!
//! Conflicting values are never patched in place: the derived value is
//! used, the published one is recorded here, and callers decide what to
//! do with the list (print it, fail `--strict-paper` runs, ...).

use serde::{Deserialize, Serialize};

/// One conflict between a published value and the exactly derived one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Divergence {
    /// Stable identifier of where the conflict lives.
    pub location: String,
    /// The value as printed in the published analysis.
    pub paper_value: String,
    /// The value this toolkit derives exactly.
    pub derived_value: String,
}

/// Ordered, de-duplicated collection of [`Divergence`] entries.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivergenceReport {
    pub entries: Vec<Divergence>,
}

impl DivergenceReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Record an entry unless one with the same location already exists.
    pub fn push(&mut self, location: &str, paper_value: &str, derived_value: &str) {
        if self.entries.iter().any(|e| e.location == location) {
            return;
        }
        self.entries.push(Divergence {
            location: location.to_string(),
            paper_value: paper_value.to_string(),
            derived_value: derived_value.to_string(),
        });
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn contains(&self, location: &str) -> bool {
        self.entries.iter().any(|e| e.location == location)
    }

    pub fn merge(&mut self, other: &DivergenceReport) {
        for e in &other.entries {
            self.push(&e.location, &e.paper_value, &e.derived_value);
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.entries).expect("report serializes")
    }
}
