//! The case database: image-lattice computations and attested values.
//!
//! Each [`PhiCase`] records everything needed to rebuild the image of
//! `Phi ∘ delta_*` on `[S^3 ^ A_i, F]` and the image of a lift of the
//! Samelson product, either as explicit generator vectors or as Chern
//! characters plus a [`ClassRecipe`]. [`AttestedFact`]s carry values whose
//! derivation (Steenrod operations, representation theory) is not mechanized.
//! Every entry has a citation string.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{PPower, Prime, Rational};
use crate::chern::{ChernVector, ClassRecipe};
use crate::error::{Error, Result};
use crate::registry::LieGroup;

/// Environment variable naming an alternate case database file.
pub const CASES_ENV: &str = "GAUGE_GAMMA_CASES";

const EMBEDDED: &str = include_str!("../data/cases.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ImageSpec {
    /// Generators of the image, one vector per generator.
    Explicit { generators: Vec<Vec<Rational>> },
    /// Classes built from Chern-character data; their images generate.
    Recipes {
        bases: BTreeMap<String, ChernVector>,
        recipe: ClassRecipe,
        image_classes: Vec<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiCase {
    pub id: String,
    pub group: LieGroup,
    pub prime: Prime,
    pub index: u32,
    pub a_cell_degrees: Vec<u32>,
    pub n: u32,
    pub target_degrees: Vec<u32>,
    pub image: ImageSpec,
    /// Image of the lift; `None` when the quotient is trivial and any lift works.
    #[serde(default)]
    pub lift: Option<Vec<Rational>>,
    pub citation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttestedFact {
    pub group: LieGroup,
    pub prime: Prime,
    /// `None` for a value of `gamma(G, p)` itself rather than one factor.
    #[serde(default)]
    pub index: Option<u32>,
    pub value: u64,
    pub citation: String,
}

impl AttestedFact {
    pub fn order(&self) -> Result<PPower> {
        PPower::from_value(self.prime, &BigInt::from(self.value)).ok_or_else(|| {
            Error::Database(format!(
                "attested value {} for {} at p = {} is not a power of p",
                self.value, self.group, self.prime
            ))
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseDatabase {
    pub phi_cases: Vec<PhiCase>,
    pub attested: Vec<AttestedFact>,
}

impl CaseDatabase {
    /// The database shipped with the crate.
    pub fn embedded() -> Self {
        Self::from_json(EMBEDDED).expect("embedded case database parses")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Database(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Database(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// An explicit path, else the environment variable, else the embedded data.
    pub fn resolve(path: Option<&Path>) -> Result<Self> {
        if let Some(path) = path {
            return Self::load(path);
        }
        match std::env::var_os(CASES_ENV) {
            Some(p) if !p.is_empty() => Self::load(Path::new(&p)),
            _ => Ok(Self::embedded()),
        }
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("case database serializes")
    }

    pub fn case_by_id(&self, id: &str) -> Option<&PhiCase> {
        self.phi_cases
            .iter()
            .find(|c| c.id.eq_ignore_ascii_case(id))
    }

    pub fn phi_case(&self, group: LieGroup, prime: Prime, index: u32) -> Option<&PhiCase> {
        self.phi_cases
            .iter()
            .find(|c| c.group == group && c.prime == prime && c.index == index)
    }

    pub fn attested(
        &self,
        group: LieGroup,
        prime: Prime,
        index: Option<u32>,
    ) -> Option<&AttestedFact> {
        self.attested
            .iter()
            .find(|a| a.group == group && a.prime == prime && a.index == index)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_database_loads() {
        let db = CaseDatabase::embedded();
        assert_eq!(db.phi_cases.len(), 11);
        assert!(db.case_by_id("E8_7_5").is_some());
        assert!(db.case_by_id("e6_5_3").is_some());
        assert!(db.phi_cases.iter().all(|c| !c.citation.is_empty()));
        assert!(db.attested.iter().all(|a| !a.citation.is_empty()));
    }

    #[test]
    fn json_roundtrip() {
        let db = CaseDatabase::embedded();
        let back = CaseDatabase::from_json(&db.to_json_pretty()).unwrap();
        assert_eq!(db, back);
    }

    #[test]
    fn attested_values_are_prime_powers() {
        let db = CaseDatabase::embedded();
        for a in &db.attested {
            a.order().unwrap();
        }
        let bad = AttestedFact {
            group: LieGroup::E6,
            prime: Prime::new(7).unwrap(),
            index: Some(2),
            value: 14,
            citation: "x".into(),
        };
        assert!(bad.order().is_err());
    }

    #[test]
    fn malformed_json_is_a_database_error() {
        assert!(matches!(
            CaseDatabase::from_json("{\"phi_cases\": 3}"),
            Err(Error::Database(_))
        ));
    }
}
