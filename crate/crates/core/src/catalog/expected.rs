use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lp::{rational::serde_string, Rational};

const CATALOG_JSON: &str = include_str!("../../data/catalog.json");

/// Expected properties; `None` means the source makes no claim.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<usize>,
    #[serde(
        default,
        with = "serde_string::option",
        skip_serializing_if = "Option::is_none"
    )]
    pub size: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rigid: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equicut: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub doubling: Option<bool>,
}

/// A stated value known to be wrong, with the corrected value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Erratum {
    #[serde(
        default,
        with = "serde_string::option",
        skip_serializing_if = "Option::is_none"
    )]
    pub size: Option<Rational>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogEntry {
    pub name: String,
    /// Constructor id for [`super::families::make_graph`], or `snub24cell`
    /// for the fixture. Entries without one are documentation only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default)]
    pub params: Vec<usize>,
    pub expected: Expected,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub erratum: Option<Erratum>,
    pub note: String,
}

impl CatalogEntry {
    pub fn is_constructible(&self) -> bool {
        self.family.is_some()
    }
}

/// All catalog entries in file order.
pub fn catalog() -> &'static [CatalogEntry] {
    static ENTRIES: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    ENTRIES.get_or_init(|| serde_json::from_str(CATALOG_JSON).expect("bundled catalog parses"))
}

pub fn expected_properties(name: &str) -> Result<&'static CatalogEntry> {
    catalog()
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownEntry(name.to_string()))
}
