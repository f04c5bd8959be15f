//! Scenario files: the JSON input of `construct` and `search`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::places::FieldDescriptor;

pub const SCHEMA_VERSION: u32 = 1;

/// Which intermediate groups `H` to build.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum HSelection {
    /// The literal string `"all"`.
    All(AllTag),
    /// Each vector `v` selects `W = T-bar + span(v)`.
    Vectors(Vec<Vec<u64>>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AllTag {
    All,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Budgets {
    /// `O-minus` witnesses are drawn from heights up to this bound.
    pub witness_height: u64,
    pub witness_count: usize,
    /// Classification compares every element up to this height ...
    pub classify_height: u64,
    /// ... plus this many seeded random elements.
    #[serde(default)]
    pub classify_random: usize,
    #[serde(default)]
    pub classify_random_height: u64,
    pub axiom_unary_height: u64,
    pub axiom_pair_height: u64,
    #[serde(default)]
    pub axiom_random_pairs: usize,
    #[serde(default)]
    pub axiom_random_height: u64,
    pub search_height: u64,
    pub search_max_pairs: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema_version: u32,
    #[serde(default)]
    pub name: String,
    pub field: FieldDescriptor,
    pub place: String,
    pub p: u64,
    /// Basis of `T-bar` in class coordinates `(valuation, unit)`.
    pub t_basis: Vec<Vec<u64>>,
    pub h: HSelection,
    /// Candidate places for classification; the scenario place is always
    /// included.
    #[serde(default)]
    pub candidates: Vec<String>,
    pub budgets: Budgets,
    pub seed: u64,
    /// Whether hypotheses (a) and (b) are asserted to hold.
    #[serde(default)]
    pub expect_hypotheses: bool,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        let s: Scenario = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        s.validate()?;
        Ok(s)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?;
        Scenario::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Schema(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        if !self.field.is_global() {
            return Err(Error::Schema(format!("{} is not a global field", self.field)));
        }
        if self.budgets.witness_count == 0 {
            return Err(Error::Schema("witness_count must be positive".into()));
        }
        if let HSelection::Vectors(v) = &self.h {
            if v.is_empty() {
                return Err(Error::Schema("h must be \"all\" or a nonempty list".into()));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"{
        "schema_version": 1,
        "field": "Q",
        "place": "5",
        "p": 2,
        "t_basis": [],
        "h": "all",
        "budgets": {
            "witness_height": 100, "witness_count": 16,
            "classify_height": 50,
            "axiom_unary_height": 50, "axiom_pair_height": 10,
            "search_height": 50, "search_max_pairs": 1000
        },
        "seed": 1
    }"#;

    #[test]
    fn parses_all_and_vectors() {
        let s = Scenario::from_json(BASE).unwrap();
        assert_eq!(s.h, HSelection::All(AllTag::All));
        assert_eq!(s.field, FieldDescriptor::Rationals);
        let v = Scenario::from_json(&BASE.replace("\"all\"", "[[0, 1]]")).unwrap();
        assert_eq!(v.h, HSelection::Vectors(vec![vec![0, 1]]));
    }

    #[test]
    fn rejects_unknown_and_bad_fields() {
        let extra = BASE.replace("\"seed\": 1", "\"seed\": 1, \"colour\": 3");
        assert!(matches!(Scenario::from_json(&extra), Err(Error::Schema(_))));
        let version = BASE.replace("\"schema_version\": 1", "\"schema_version\": 9");
        assert!(matches!(Scenario::from_json(&version), Err(Error::Schema(_))));
        let finite = BASE.replace("\"Q\"", "\"F7\"");
        assert!(matches!(Scenario::from_json(&finite), Err(Error::Schema(_))));
        let h = BASE.replace("\"all\"", "\"some\"");
        assert!(matches!(Scenario::from_json(&h), Err(Error::Schema(_))));
        assert!(matches!(Scenario::from_json("{"), Err(Error::Schema(_))));
    }

    #[test]
    fn round_trips() {
        let s = Scenario::from_json(BASE).unwrap();
        let back = Scenario::from_json(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(s, back);
    }
}
