//! Serializable report pieces shared by the CLI and the Python bindings.

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::Result;
use crate::perm::Permutation;
use crate::witness::Certificate;

/// A permutation as it appears in reports: cycle notation plus the full
/// 1-based image list, so certificates re-verify without the tool.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermJson {
    pub cycles: String,
    pub images: Vec<u32>,
}

impl From<&Permutation> for PermJson {
    fn from(p: &Permutation) -> Self {
        PermJson {
            cycles: p.to_string(),
            images: p.images_1based(),
        }
    }
}

impl PermJson {
    pub fn to_perm(&self) -> Result<Permutation> {
        Permutation::from_images_1based(&self.images)
    }
}

pub fn perms_json(ps: &[Permutation]) -> Vec<PermJson> {
    ps.iter().map(PermJson::from).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "true")]
    True,
    #[serde(rename = "false")]
    False,
    #[serde(rename = "unknown_over_cap")]
    Unknown,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Verdict::True => Some(true),
            Verdict::False => Some(false),
            Verdict::Unknown => None,
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Unknown => "unknown_over_cap",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PredicateReport {
    pub predicate: String,
    pub verdict: Verdict,
    pub certificate: Certificate,
    pub timing_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupInfo {
    pub spec: String,
    pub degree: usize,
    pub order: u128,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: f64,
}

/// The document `check` emits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub group: GroupInfo,
    pub predicate: String,
    pub verdict: Verdict,
    /// Numeric result for value-type predicates such as `exponent`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub value: Option<u64>,
    pub certificate: Certificate,
    pub timings: Timings,
    pub tool_version: String,
    pub caps: Caps,
}

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
